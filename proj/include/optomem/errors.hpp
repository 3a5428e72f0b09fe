#pragma once

#include <stdexcept>
#include <string>

namespace optomem {

// Base of every error thrown by the library. Callers that only need to
// report a failure can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero-sized modes, mismatched operator sides, out-of-range mode indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Physical parameters outside their domain (negative rates, omega = 0 at T > 0).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Adaptive step size collapsed below the representable minimum.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

// Integration finished but violated a quality gate (trace drift).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// k_c + k_m = 0: the harmonic limit has no revival timescale.
class NoRevivalError : public Error {
 public:
  using Error::Error;
};

// Amplitude series too coarse to resolve the predicted revival.
class SamplingError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace optomem

#include "optomem/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "optomem/errors.hpp"

namespace optomem {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// 5th minus embedded 4th order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

void check_outputs(double t0, std::span<const double> outputs) {
  if (outputs.empty()) throw Error("integrator needs at least one output time");
  if (outputs.front() < t0) throw Error("output times must not precede t0");
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    if (!(outputs[i] > outputs[i - 1])) throw Error("output times must be strictly increasing");
  }
}

double rms_scaled(std::span<const double> v, std::span<const double> y, double atol, double rtol) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sk = atol + rtol * std::abs(y[i]);
    acc += (v[i] / sk) * (v[i] / sk);
  }
  return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

IntegrationStats integrate_dopri5(const OdeRhs& f, double t0, std::span<double> y,
                                  std::span<const double> output_times, const OdeObserver& observe,
                                  const Dopri5Options& opts, const OdeStepHook& hook) {
  check_outputs(t0, output_times);
  const std::size_t n = y.size();
  IntegrationStats stats;

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), ynew(n), r2(n), r3(n), r4(n), r5(n), dense(n);

  auto rhs = [&](double t, std::span<const double> in, std::vector<double>& out) {
    f(t, in, out);
    ++stats.rhs_evals;
  };

  double t = t0;
  std::size_t next_out = 0;
  const double t_end = output_times.back();

  rhs(t, y, k1);
  if (hook) hook(y, k1);
  while (next_out < output_times.size() && output_times[next_out] == t) {
    if (observe) observe(next_out, t, y);
    ++next_out;
  }
  if (next_out == output_times.size()) return stats;

  double h = opts.initial_step;
  if (h <= 0.0) {
    const double dn0 = rms_scaled(y, y, opts.atol, opts.rtol);
    const double dn1 = rms_scaled(k1, y, opts.atol, opts.rtol);
    double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 : 0.01 * dn0 / dn1;
    h0 = std::min(h0, opts.max_step);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h0 * k1[i];
    rhs(t + h0, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) k3[i] = k2[i] - k1[i];
    const double dn2 = rms_scaled(k3, y, opts.atol, opts.rtol) / h0;
    const double dmax = std::max(dn1, dn2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    h = std::min({100.0 * h0, h1, opts.max_step});
  }

  bool last_rejected = false;
  while (next_out < output_times.size()) {
    if (stats.accepted + stats.rejected >= opts.max_steps) {
      throw StiffnessError("step budget exhausted at t = " + std::to_string(t) +
                           "; loosen tolerances or reduce the truncation");
    }
    if (h < 1e-13 * std::max(1.0, std::abs(t))) {
      throw StiffnessError("step size underflow (h = " + std::to_string(h) + ") at t = " +
                           std::to_string(t) + "; loosen tolerances or reduce the truncation");
    }
    h = std::min(h, t_end - t);

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    rhs(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    }
    rhs(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(e) / sk);
    }
    if (!std::isfinite(err)) err = 1e10;

    if (err > 1.0) {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
      continue;
    }

    ++stats.accepted;
    if (hook) hook(ynew, k7);

    // Dense output coefficients for this step.
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = ynew[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      r2[i] = ydiff;
      r3[i] = bspl;
      r4[i] = ydiff - h * k7[i] - bspl;
      r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    const double t_new = (t_end - (t + h) <= 1e-14 * std::max(1.0, std::abs(t_end))) ? t_end : t + h;
    while (next_out < output_times.size() && output_times[next_out] <= t_new) {
      const double tout = output_times[next_out];
      if (tout == t_new) {
        if (observe) observe(next_out, tout, ynew);
      } else {
        const double th = (tout - t) / h;
        const double th1 = 1.0 - th;
        for (std::size_t i = 0; i < n; ++i) {
          dense[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        }
        if (observe) observe(next_out, tout, dense);
      }
      ++next_out;
    }

    std::copy(ynew.begin(), ynew.end(), y.begin());
    std::swap(k1, k7);
    t = t_new;
    stats.last_step = h;

    double fac = std::min(10.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    if (last_rejected) fac = std::min(fac, 1.0);
    last_rejected = false;
    h = std::min(h * fac, opts.max_step);
  }
  return stats;
}

IntegrationStats integrate_rk4(const OdeRhs& f, double t0, std::span<double> y,
                               std::span<const double> output_times, double dt,
                               const OdeObserver& observe, const OdeStepHook& hook) {
  check_outputs(t0, output_times);
  if (!(dt > 0.0)) throw Error("rk4 step must be positive");
  const std::size_t n = y.size();
  IntegrationStats stats;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), ytmp(n);

  auto rhs = [&](double t, std::span<const double> in, std::vector<double>& out) {
    f(t, in, out);
    ++stats.rhs_evals;
  };

  double t = t0;
  for (std::size_t idx = 0; idx < output_times.size(); ++idx) {
    const double target = output_times[idx];
    const double span = target - t;
    const auto steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
    const double h = steps > 0 ? span / static_cast<double>(steps) : 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
      const double ts = t + static_cast<double>(s) * h;
      rhs(ts, y, k1);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
      rhs(ts + 0.5 * h, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
      rhs(ts + 0.5 * h, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * k3[i];
      rhs(ts + h, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      if (hook) hook(y, k4);
      ++stats.accepted;
      stats.last_step = h;
    }
    t = target;
    if (observe) observe(idx, t, y);
  }
  return stats;
}

}  // namespace optomem

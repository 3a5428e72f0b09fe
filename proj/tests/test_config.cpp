#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "optomem/config.hpp"
#include "optomem/errors.hpp"
#include "optomem/output.hpp"

using namespace optomem;

TEST_CASE("parsing assignments, comments and lists") {
  const RunConfig c = parse_config(R"(
# a comment
name = demo
mode = combined_kerr          # trailing comment
params.k_c = 0.004
dims.combined = 24
initial.alpha_re = 0.5
initial.alpha_im = -0.25
time.horizon = 100
time.snapshots = 1, 2.5,  7
integrator.method = rk4
integrator.fixed_step = 0.01
sweep.axis = alpha
sweep.values = 0.1, 0.2
)");
  CHECK(c.name == "demo");
  CHECK(c.mode == RunMode::CombinedKerr);
  CHECK(c.params.k_c == 0.004);
  CHECK(c.params.k_m == 0.01);  // untouched default
  CHECK(c.dim_combined == 24);
  CHECK(c.alpha == cplx(0.5, -0.25));
  CHECK(c.horizon == 100.0);
  CHECK(c.snapshots == std::vector<double>{1.0, 2.5, 7.0});
  CHECK(c.stepper == Stepper::Rk4Fixed);
  REQUIRE(c.sweep);
  CHECK(c.sweep->axis == SweepAxis::Alpha);
  CHECK(c.sweep->values == std::vector<double>{0.1, 0.2});
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("grammar errors") {
  CHECK_THROWS_AS(parse_config("params.k_c = 1\nparams.k_c = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no.such.key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("params.k_c 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("params.k_c = 1x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("params.k_c = nan\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("dims.optical = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mode = three_mode\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sweep.axis = pressure\n"), ConfigError);
  try {
    parse_config("name = x\n\nbogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("resolved text round-trips exactly") {
  RunConfig c = preset("fig7");
  c.params.omega_c = 0.1 + 0.2;  // not representable in few digits
  c.alpha = cplx(std::numbers::pi, -1.0 / 3.0);
  c.horizon = 1234.5678901234567;
  const std::string text = to_config_text(c);
  const RunConfig back = parse_config(text);
  CHECK(to_config_text(back) == text);
  CHECK(back.params.omega_c == c.params.omega_c);
  CHECK(back.alpha == c.alpha);
  CHECK(back.horizon == c.horizon);
  CHECK(back.sweep->values == c.sweep->values);
  // Every known key appears exactly once.
  for (const auto& key : known_keys()) {
    const std::string needle = "\n" + key + " = ";
    CHECK(("\n" + text).find(needle) != std::string::npos);
  }
}

TEST_CASE("overrides") {
  RunConfig c = preset("fig4");
  apply_override(c, "params.gamma_m=0.002");
  apply_override(c, "time.horizon = auto");
  CHECK(c.params.gamma_m == 0.002);
  CHECK(!c.horizon);
  CHECK_THROWS_AS(apply_override(c, "params.gamma_m"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "params.nope=1"), ConfigError);
}

TEST_CASE("validation") {
  RunConfig c;
  c.horizon = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.n_samples = 99;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.alpha = cplx(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.sweep = SweepSettings{SweepAxis::Gamma, {1e-3, 1e-3}};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.sweep = SweepSettings{SweepAxis::Gamma, {}};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.params.k_c = c.params.k_m = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);  // auto horizon needs a revival time
  c.horizon = 10.0;
  CHECK_NOTHROW(c.validate());
  c.stepper = Stepper::Rk4Fixed;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.params.gamma_c = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("derived quantities") {
  const RunConfig c = preset("fig2-combined");
  REQUIRE(c.revival_prediction());
  CHECK(*c.revival_prediction() == doctest::Approx(314.1592653589793).epsilon(1e-15));
  CHECK(c.resolved_horizon() == 2.0 * *c.revival_prediction());
  const RevivalOptions r = c.revival_options();
  CHECK(r.t_rev == c.revival_prediction());
  CHECK(r.collapse_threshold == 0.15);
  CHECK(!preset("harmonic-check").revival_prediction());
}

TEST_CASE("preset values") {
  const SystemParams ref = SystemParams::reference();

  const RunConfig f2 = preset("fig2-combined");
  CHECK(f2.mode == RunMode::CombinedKerr);
  CHECK(f2.params.k_c + f2.params.k_m == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(f2.alpha == cplx(1.5, 0.0));
  CHECK(f2.params.gamma_m == 1e-5);
  CHECK(f2.params.bath_temp == 0.0);
  CHECK(f2.dim_combined == 30);
  CHECK(!f2.horizon);

  const RunConfig f4 = preset("fig4");
  CHECK(f4.mode == RunMode::TwoMode);
  CHECK(f4.storage == StorageMode::Mechanical);
  CHECK(f4.alpha == cplx(1.5, 0.0));
  CHECK(f4.params.k_c == 0.01);
  CHECK(f4.params.k_m == 0.01);
  CHECK(f4.params.gamma_c == 1e-5);
  CHECK(f4.params.gamma_m == 1e-5);
  CHECK(f4.params.bath_temp == 0.0);
  CHECK(f4.dim_optical == 10);
  CHECK(f4.dim_mechanical == 10);
  CHECK(f4.horizon == 628.0);
  CHECK(f4.params.omega_c == ref.omega_c);
  CHECK(f4.params.g0 == ref.g0);

  const RunConfig hc = preset("harmonic-check");
  CHECK(hc.params.k_c == 0.0);
  CHECK(hc.params.k_m == 0.0);
  CHECK(hc.params.gamma_c == 0.0);
  CHECK(hc.params.gamma_m == 0.0);

  auto sweep_of = [](const char* name) { return *preset(name).sweep; };
  CHECK(sweep_of("fig5").axis == SweepAxis::Gamma);
  CHECK(sweep_of("fig5").values == std::vector<double>{1e-5, 1e-4, 1e-3, 1e-2});
  CHECK(sweep_of("fig6").axis == SweepAxis::Nonlinearity);
  CHECK(sweep_of("fig6").values == std::vector<double>{0.5, 0.05, 0.005, 0.0005});
  CHECK(sweep_of("fig7").axis == SweepAxis::BathTemp);
  CHECK(sweep_of("fig7").values == std::vector<double>{30e-6, 30e-3, 0.3, 3.0});
  CHECK(sweep_of("fig8").axis == SweepAxis::Alpha);
  CHECK(sweep_of("fig8").values == std::vector<double>{0.1, 0.5, 1.0, 2.0});
  for (const char* n : {"fig5", "fig6", "fig7", "fig8"}) {
    CHECK(preset(n).mode == RunMode::CombinedKerr);
    CHECK(preset(n).dim_combined == 30);
  }
  CHECK_THROWS_AS(preset("fig9"), ConfigError);
}

TEST_CASE("preset snapshots match the checked-in files") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const std::string golden = io::read_file(std::string(OPTOMEM_GOLDEN_DIR) + "/presets/" + name + ".txt");
    CHECK(to_config_text(preset(name)) == golden);
  }
}

TEST_CASE("sweep values are applied to the right fields") {
  const RunConfig base = preset("fig5");
  const RunConfig g = with_sweep_value(base, SweepAxis::Gamma, 1e-3);
  CHECK(g.params.gamma_c == 1e-3);
  CHECK(g.params.gamma_m == 1e-3);
  CHECK(!g.sweep);
  const RunConfig k = with_sweep_value(base, SweepAxis::Nonlinearity, 0.05);
  CHECK(k.params.k_c == 0.05);
  CHECK(k.params.k_m == 0.05);
  CHECK(with_sweep_value(base, SweepAxis::BathTemp, 0.3).params.bath_temp == 0.3);
  CHECK(with_sweep_value(base, SweepAxis::Alpha, 2.0).alpha == cplx(2.0, 0.0));
}

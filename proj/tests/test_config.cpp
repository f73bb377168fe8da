#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parscale/config.hpp"

using namespace parscale;

TEST_CASE("sections, comments and key-value parsing") {
  const ConfigFile cfg = ConfigFile::parse_string(
      "# leading comment\n"
      "[machine]\n"
      "p_single = 2e9   # trailing comment\n"
      "t_fix = 0\n"
      "\n"
      "[workload]\n"
      "kind = hpcg\n"
      "iterations = 25\n");
  REQUIRE(cfg.sections.size() == 2);
  CHECK(cfg.sections[0].name == "machine");
  CHECK(*cfg.find("machine")->find("p_single") == "2e9");
  CHECK(cfg.find("nope") == nullptr);

  const MachineSpec m = machine_from_config(cfg);
  CHECK(m.p_single == 2e9);
  CHECK(m.t_fix == 0.0);
  CHECK(m.t_addr == 1e-6);  // untouched default

  const WorkloadSpec w = workload_from_config(cfg);
  CHECK(w.kind == WorkloadKind::hpcg_like);
  CHECK(w.hpcg.iterations == 25.0);
}

TEST_CASE("malformed input is rejected with context") {
  CHECK_THROWS_AS(ConfigFile::parse_string("[machine\n"), ConfigError);
  CHECK_THROWS_AS(ConfigFile::parse_string("p = 1\n"), ConfigError);
  CHECK_THROWS_AS(ConfigFile::parse_string("[machine]\nnonsense line\n"), ConfigError);
  CHECK_THROWS_WITH(
      machine_from_config(ConfigFile::parse_string("[machine]\nt_fixx = 1\n")),
      "unknown key 't_fixx' in [machine]");
  CHECK_THROWS_WITH(
      machine_from_config(ConfigFile::parse_string("[machine]\nt_fix = fast\n")),
      "bad numeric value for [machine] t_fix: 'fast'");
  // invariant violations name the field
  CHECK_THROWS_WITH(
      machine_from_config(ConfigFile::parse_string("[machine]\nt_addr = -1\n")),
      "[machine] t_addr must be >= 0");
  CHECK_THROWS_AS(
      workload_from_config(ConfigFile::parse_string("[workload]\nkind = magic\n")),
      ConfigError);
}

TEST_CASE("timeline section with per-worker arrays and broadcast") {
  const ConfigFile cfg = ConfigFile::parse_string(
      "[timeline]\n"
      "n_workers = 3\n"
      "t_addr = 0.25\n"
      "t_compute = 1.0 2.0 3.0\n"
      "pd_out = 0.5\n"
      "dispatch = blocking\n");
  const TimelineConfig c = timeline_from_config(cfg);
  CHECK(c.n_workers == 3);
  CHECK(c.t_compute == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(c.pd_out == std::vector<double>{0.5, 0.5, 0.5});  // broadcast
  CHECK(c.pd_back == std::vector<double>{0.0, 0.0, 0.0});  // default
  CHECK(c.dispatch_mode == DispatchMode::blocking);

  CHECK_THROWS_AS(timeline_from_config(ConfigFile::parse_string(
                      "[timeline]\nn_workers = 3\nt_compute = 1 2\n")),
                  ConfigError);
  CHECK_THROWS_AS(timeline_from_config(ConfigFile::parse_string("[machine]\n")),
                  ConfigError);
}

TEST_CASE("sweep grid and options") {
  const ConfigFile cfg = ConfigFile::parse_string(
      "[sweep]\n"
      "n_min = 10\n"
      "n_max = 1000\n"
      "points_per_decade = 2\n"
      "mode = fixed_time\n"
      "payload_seconds = 50\n");
  const std::vector<double> grid = sweep_grid_from_config(cfg);
  CHECK(grid.front() == 10.0);
  CHECK(grid.back() == 1000.0);
  const SweepOptions opts = sweep_options_from_config(cfg);
  CHECK(opts.scaling == SweepOptions::Scaling::fixed_time);
  CHECK(opts.payload_seconds == 50.0);

  const ConfigFile explicit_cfg =
      ConfigFile::parse_string("[sweep]\nn_values = 4, 16, 256\n");
  CHECK(sweep_grid_from_config(explicit_cfg) == std::vector<double>{4.0, 16.0, 256.0});
}

TEST_CASE("modifier stanzas apply in declaration order") {
  const ConfigFile cfg = ConfigFile::parse_string(
      "[modifier.cooperative]\n"
      "msg_scale = 0.5\n"
      "[modifier.accelerator]\n"
      "compute_speedup = 2\n"
      "t_copy = 1e-6\n"
      "[modifier.precision]\n"
      "compute_scale = 0.25\n");
  const std::vector<ModifierStep> steps = modifiers_from_config(cfg);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].kind == ModifierStep::Kind::cooperative);
  CHECK(steps[1].kind == ModifierStep::Kind::accelerator);
  CHECK(steps[2].kind == ModifierStep::Kind::precision);

  const MachineSpec m;
  const WorkloadSpec w = WorkloadSpec::hpcg_like();
  const auto [mm, ww] = apply_modifiers(m, w, steps);
  CHECK(mm.t_msg == doctest::Approx(5e-7).epsilon(1e-12));
  CHECK(mm.p_single == doctest::Approx(8e9).epsilon(1e-12));  // 2x then 4x
  CHECK(mm.t_addr == doctest::Approx(2e-6).epsilon(1e-12));
  // recompute sped up by the accelerator, slowed share-wise by precision
  CHECK(ww.hpcg.recompute_factor == doctest::Approx(0.1 / 2.0 * 0.25).epsilon(1e-12));

  CHECK_THROWS_AS(modifiers_from_config(
                      ConfigFile::parse_string("[modifier.quantum]\nx = 1\n")),
                  ConfigError);
}

TEST_CASE("shipped example configs parse") {
  for (const char* name :
       {"fictive_hpl.conf", "fictive_hpcg.conf", "fictive_grid5000.conf",
        "saturation_fixed_time.conf", "accelerator_demo.conf"}) {
    const ConfigFile cfg =
        ConfigFile::parse_file(std::string(PARSCALE_SOURCE_DIR "/configs/") + name);
    CHECK(machine_from_config(cfg).p_single == 1e9);
    workload_from_config(cfg);
    sweep_grid_from_config(cfg);
  }
  const ConfigFile t =
      ConfigFile::parse_file(PARSCALE_SOURCE_DIR "/configs/timeline_demo.conf");
  CHECK(timeline_from_config(t).n_workers == 2);
}

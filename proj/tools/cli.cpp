#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "parscale/amdahl.hpp"
#include "parscale/comm.hpp"
#include "parscale/config.hpp"
#include "parscale/dataio.hpp"
#include "parscale/ledger.hpp"
#include "parscale/modifiers.hpp"
#include "parscale/timeline.hpp"

namespace parscale {

namespace {

std::string num(double v, int precision = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

void print_kv(std::ostream& out, const char* key, const std::string& value) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%-22s %s", key, value.c_str());
  out << buf << '\n';
}

struct SweepColumns {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

SweepColumns sweep_columns(const std::vector<SerialLedger>& points) {
  SweepColumns t;
  t.headers = {"n", "nominal", "r_max", "efficiency", "alpha_eff", "one_minus_alpha"};
  for (const auto& [kind, share] : points.front().entries) {
    t.headers.push_back(std::string("s_") + contribution_name(kind));
  }
  t.headers.push_back("beyond_model");
  for (const auto& p : points) {
    std::vector<std::string> row = {num(p.n),          num(p.nominal),
                                    num(p.r_max),      num(p.efficiency),
                                    num(p.alpha_eff),  num(p.one_minus_alpha_total)};
    for (const auto& [kind, share] : p.entries) {
      row.push_back(num(share.one_minus_alpha_share));
    }
    row.push_back(p.beyond_model ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  return t;
}

void emit_plotdata(std::ostream& out, const SweepColumns& t) {
  out << '#';
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    out << (i == 0 ? " " : "\t") << t.headers[i];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << '\t';
      out << row[i];
    }
    out << '\n';
  }
}

void emit_table(std::ostream& out, const SweepColumns& t) {
  std::vector<std::size_t> width(t.headers.size());
  for (std::size_t i = 0; i < t.headers.size(); ++i) width[i] = t.headers[i].size();
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << "  ";
      out << cells[i];
      for (std::size_t pad = cells[i].size(); pad < width[i]; ++pad) out << ' ';
    }
    out << '\n';
  };
  line(t.headers);
  for (const auto& row : t.rows) line(row);
}

void render(std::ostream& out, const SweepColumns& t, const std::string& mode) {
  if (mode == "plotdata") {
    emit_plotdata(out, t);
  } else {
    emit_table(out, t);
  }
}

int run_model(std::ostream& out, double alpha, std::optional<double> serial_fraction,
              double n, const std::string& output) {
  const AmdahlPoint p = serial_fraction
                            ? AmdahlPoint::from_serial_fraction(*serial_fraction, n)
                            : AmdahlPoint(alpha, n);
  const double s = speedup(p);
  const double e = efficiency(p);
  const std::string limit =
      p.serial_fraction() > 0.0 ? num(perf_gain_limit_from_serial(p.serial_fraction()))
                                : "inf";
  if (output == "plotdata") {
    out << "# alpha\tserial_fraction\tn\tspeedup\tefficiency\tgain_limit\n";
    out << num(p.alpha()) << '\t' << num(p.serial_fraction()) << '\t' << num(p.units())
        << '\t' << num(s) << '\t' << num(e) << '\t' << limit << '\n';
  } else {
    print_kv(out, "alpha", num(p.alpha()));
    print_kv(out, "serial_fraction", num(p.serial_fraction()));
    print_kv(out, "n", num(p.units()));
    print_kv(out, "speedup", num(s));
    print_kv(out, "efficiency", num(e));
    print_kv(out, "gain_limit", limit);
  }
  return 0;
}

int run_sweep(std::ostream& out, const std::string& config_path, const std::string& output) {
  const ConfigFile cfg = ConfigFile::parse_file(config_path);
  const MachineSpec m = machine_from_config(cfg);
  const WorkloadSpec w = workload_from_config(cfg);
  const std::vector<double> grid = sweep_grid_from_config(cfg);
  const SweepOptions opts = sweep_options_from_config(cfg);
  render(out, sweep_columns(sweep(m, w, grid, opts)), output);
  return 0;
}

int run_simulate(std::ostream& out, const std::string& config_path, bool with_trace,
                 const std::string& output) {
  const ConfigFile cfg = ConfigFile::parse_file(config_path);
  const TimelineConfig c = timeline_from_config(cfg);
  std::vector<TraceEvent> trace;
  const TimelineResult r = simulate(c, with_trace ? &trace : nullptr);

  if (output == "plotdata") {
    out << "# worker\tidle\n";
    for (std::size_t i = 0; i < r.per_worker_idle.size(); ++i) {
      out << i << '\t' << num(r.per_worker_idle[i]) << '\n';
    }
  } else {
    print_kv(out, "workers", std::to_string(c.n_workers));
    print_kv(out, "total_time", num(r.total_time));
    print_kv(out, "payload_time_sum", num(r.payload_time_sum));
    print_kv(out, "speedup", num(r.speedup));
    print_kv(out, "utilization", num(r.utilization));
    print_kv(out, "empirical_alpha",
             r.empirical_alpha ? num(*r.empirical_alpha)
                               : std::string("undefined (single worker)"));
    const auto [lo, hi] = std::minmax_element(r.per_worker_idle.begin(),
                                              r.per_worker_idle.end());
    print_kv(out, "idle_min", num(*lo));
    print_kv(out, "idle_max", num(*hi));
  }
  if (with_trace) out << format_trace(trace);
  return 0;
}

int run_comm(std::ostream& out, const std::string& cls, std::uint64_t workers,
             std::uint64_t iterations, AnnTopology topo, const std::string& bus_kind,
             double t_msg, double t_arb, BrainParams brain, double hierarchic_factor,
             const std::string& config_path, const std::string& output) {
  BusModel bus;
  bus.kind = bus_kind == "per_layer" ? BusKind::per_layer : BusKind::shared;
  bus.t_msg = t_msg;
  bus.t_arb = t_arb;
  if (!config_path.empty()) {
    const ConfigFile cfg = ConfigFile::parse_file(config_path);
    topo = ann_from_config(cfg);
    bus = bus_from_config(cfg);
    brain = brain_from_config(cfg);
  }

  const auto emit_profile = [&](const char* name, std::uint64_t count, double time) {
    out << "# class\tmessage_count\tserialized_time\n";
    out << name << '\t' << count << '\t' << num(time) << '\n';
  };

  if (cls == "hpl" || cls == "hpcg") {
    const std::uint64_t count =
        cls == "hpl" ? messages_hpl(workers) : messages_hpcg(workers, iterations);
    const double time = serialized_comm_time({count}, bus);
    if (output == "plotdata") {
      emit_profile(cls.c_str(), count, time);
      return 0;
    }
    print_kv(out, "class", cls);
    print_kv(out, "message_count", std::to_string(count));
    print_kv(out, "serialized_time", num(time));
    return 0;
  }
  if (cls == "ann") {
    const AnnMessageBreakdown b = messages_ann(topo);
    const double time = serialized_comm_time(ann_stage_counts(topo), bus);
    if (output == "plotdata") {
      emit_profile("ann", b.total, time);
      return 0;
    }
    print_kv(out, "class", "ann");
    print_kv(out, "input_to_hidden", std::to_string(b.input_to_hidden));
    print_kv(out, "hidden_to_hidden", std::to_string(b.hidden_to_hidden));
    print_kv(out, "hidden_to_output", std::to_string(b.hidden_to_output));
    print_kv(out, "message_count", std::to_string(b.total));
    print_kv(out, "compute_ops", std::to_string(ann_compute_ops(topo)));
    print_kv(out, "bus", bus.kind == BusKind::shared ? "shared" : "per_layer");
    print_kv(out, "serialized_time", num(time));
    return 0;
  }
  // brain
  const BrainProfile p = brain_profile(brain);
  if (output == "plotdata") {
    emit_profile("brain", p.profile.message_count, p.profile.serialized_time);
    return 0;
  }
  print_kv(out, "class", "brain");
  print_kv(out, "messages_per_period", std::to_string(p.profile.message_count));
  print_kv(out, "efficiency_ratio", num(p.efficiency_ratio));
  print_kv(out, "implied_gain", num(p.implied_gain));
  if (hierarchic_factor > 1.0) {
    const BrainProfile h = hierarchic_reduction(p, hierarchic_factor);
    print_kv(out, "hierarchic_factor", num(hierarchic_factor));
    print_kv(out, "hierarchic_efficiency_ratio", num(h.efficiency_ratio));
    print_kv(out, "hierarchic_implied_gain", num(h.implied_gain));
    print_kv(out, "gain_improvement", num(h.implied_gain / p.implied_gain));
  }
  return 0;
}

int run_ingest(std::ostream& out, std::ostream& err, const std::string& csv_path,
               const std::string& units, const std::string& output) {
  CsvOptions opts;
  if (units == "tflops") {
    opts.unit_scale = 1e12;
  } else if (units == "gflops") {
    opts.unit_scale = 1e9;
  } else if (units == "flops") {
    opts.unit_scale = 1.0;
  } else {
    throw ConfigError("units must be tflops, gflops or flops");
  }
  const ParseReport report = parse_csv_file(csv_path, opts);
  for (const auto& issue : report.issues) {
    err << csv_path << ':' << issue.line << ": rejected: " << issue.message << '\n';
  }
  if (report.records.empty()) {
    throw DataError("no valid rows in " + csv_path);
  }
  if (output == "plotdata") {
    out << scatter_data(report.records);
    return 0;
  }
  SweepColumns t;
  t.headers = {"rank", "name",  "cores",    "e_hpl", "e_hpcg",
               "gain", "alpha", "1-alpha", "hpl/hpcg"};
  for (const auto& r : report.records) {
    const DerivedMetrics d = derive(r);
    std::vector<std::string> row;
    row.push_back(std::to_string(r.rank));
    row.push_back(r.name);
    row.push_back(std::to_string(r.cores));
    row.push_back(num(d.e_hpl, 6));
    row.push_back(d.e_hpcg ? num(*d.e_hpcg, 6) : "");
    row.push_back(num(d.gain_hpl, 6));
    row.push_back(d.alpha_hpl ? num(*d.alpha_hpl) : "(" + *d.alpha_note + ")");
    row.push_back(d.one_minus_alpha_hpl ? num(*d.one_minus_alpha_hpl, 6) : "");
    row.push_back(d.hpl_hpcg_ratio ? num(*d.hpl_hpcg_ratio, 6) : "");
    t.rows.push_back(std::move(row));
  }
  emit_table(out, t);
  return 0;
}

int run_roofline(std::ostream& out, const RooflineCalibration& cal,
                 const std::string& output) {
  SweepColumns t;
  t.headers = {"class", "serial_fraction", "gain"};
  for (const ClassRoofline& r : class_rooflines(cal)) {
    t.rows.push_back({workload_class_name(r.workload_class), num(r.serial_fraction),
                      num(r.gain)});
  }
  render(out, t, output);
  return 0;
}

int run_modify(std::ostream& out, const std::string& config_path, const std::string& output) {
  const ConfigFile cfg = ConfigFile::parse_file(config_path);
  const MachineSpec m = machine_from_config(cfg);
  const WorkloadSpec w = workload_from_config(cfg);
  const std::vector<ModifierStep> steps = modifiers_from_config(cfg);
  if (steps.empty()) {
    throw ConfigError("no modifier.* sections in " + config_path);
  }
  const auto [mm, ww] = apply_modifiers(m, w, steps);
  const std::vector<double> grid = sweep_grid_from_config(cfg);
  const SweepOptions opts = sweep_options_from_config(cfg);
  const std::vector<SerialLedger> base = sweep(m, w, grid, opts);
  const std::vector<SerialLedger> mod = sweep(mm, ww, grid, opts);

  SweepColumns t;
  t.headers = {"n",        "nominal_base", "r_max_base", "eff_base",
               "r_max_mod", "eff_mod",     "gain_ratio"};
  for (std::size_t i = 0; i < base.size(); ++i) {
    t.rows.push_back({num(base[i].n), num(base[i].nominal), num(base[i].r_max),
                      num(base[i].efficiency), num(mod[i].r_max), num(mod[i].efficiency),
                      num(mod[i].r_max / base[i].r_max)});
  }
  render(out, t, output);
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Performance-limit modeling of parallelized sequential computing"};
  // --h is a model flag (hidden-layer count), so help stays long-form only
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  const auto add_sub = [&](const char* name, const char* description) {
    CLI::App* cmd = app.add_subcommand(name, description);
    cmd->set_help_flag("--help", "print usage");
    return cmd;
  };

  std::string output = "table";
  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "table or plotdata")
        ->check(CLI::IsMember({"table", "plotdata"}));
  };

  std::function<int()> action;

  // model
  double alpha = 0.0;
  std::optional<double> serial_fraction;
  double n_units = 2.0;
  {
    CLI::App* cmd = add_sub("model", "speedup/efficiency of one (alpha, n) point");
    CLI::Option* alpha_opt =
        cmd->add_option("--alpha", alpha, "parallel fraction in [0,1]")
            ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--serial-fraction", serial_fraction,
                    "serial-only fraction 1-alpha (full precision for tiny values)")
        ->excludes(alpha_opt)
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--n", n_units, "number of processing units, >= 1")
        ->required()
        ->check(CLI::Range(1.0, 1e18));
    add_output(cmd);
    cmd->callback([&] {
      action = [&] { return run_model(out, alpha, serial_fraction, n_units, output); };
    });
  }

  // sweep
  std::string config_path;
  {
    CLI::App* cmd = add_sub("sweep", "ledger sweep over unit counts");
    cmd->add_option("--config", config_path, "run configuration file")->required();
    add_output(cmd);
    cmd->callback([&] {
      action = [&] { return run_sweep(out, config_path, output); };
    });
  }

  // simulate
  bool with_trace = false;
  {
    CLI::App* cmd = add_sub("simulate", "dispatch/compute/collect timeline");
    cmd->add_option("--config", config_path, "run configuration file")->required();
    cmd->add_flag("--trace", with_trace, "emit per-event trace");
    add_output(cmd);
    cmd->callback([&] {
      action = [&] { return run_simulate(out, config_path, with_trace, output); };
    });
  }

  // comm
  std::string comm_class;
  std::uint64_t workers = 1;
  std::uint64_t iterations = 1;
  AnnTopology topo;
  std::string bus_kind = "shared";
  double t_msg = 1e-6;
  double t_arb = 0.0;
  BrainParams brain;
  double hierarchic_factor = 1.0;
  {
    CLI::App* cmd = add_sub("comm", "communication profile of a workload class");
    cmd->add_option("--class", comm_class, "hpl, hpcg, ann or brain")
        ->required()
        ->check(CLI::IsMember({"hpl", "hpcg", "ann", "brain"}));
    cmd->add_option("--workers", workers, "worker count (hpl/hpcg)");
    cmd->add_option("--iterations", iterations, "iteration count (hpcg)");
    cmd->add_option("--n-in", topo.n_in, "input nodes (ann)");
    cmd->add_option("--m", topo.m, "nodes per hidden layer (ann)");
    cmd->add_option("--h", topo.h, "hidden layers (ann)");
    cmd->add_option("--k", topo.k_out, "output nodes (ann)");
    cmd->add_option("--bus", bus_kind, "shared or per_layer")
        ->check(CLI::IsMember({"shared", "per_layer"}));
    cmd->add_option("--t-msg", t_msg, "seconds per message");
    cmd->add_option("--t-arb", t_arb, "arbitration seconds per message");
    cmd->add_option("--neurons", brain.neurons, "simulated neurons (brain)");
    cmd->add_option("--fanout", brain.fanout, "fellow neurons per period (brain)");
    cmd->add_option("--grid-period", brain.grid_period, "synchronization quantum, s (brain)");
    cmd->add_option("--t-comp", brain.t_comp, "per-neuron compute per period, s (brain)");
    cmd->add_option("--t-comm", brain.t_comm, "per-message time, s (brain)");
    cmd->add_option("--hierarchic-factor", hierarchic_factor,
                    "also report the hierarchically reduced profile");
    cmd->add_option("--config", config_path,
                    "read [ann], [bus] and [brain] sections instead of flags");
    add_output(cmd);
    cmd->callback([&] {
      action = [&] {
        return run_comm(out, comm_class, workers, iterations, topo, bus_kind, t_msg, t_arb,
                        brain, hierarchic_factor, config_path, output);
      };
    });
  }

  // ingest
  std::string csv_path;
  std::string units = "tflops";
  {
    CLI::App* cmd = add_sub("ingest", "derive metrics from a machine-list CSV");
    cmd->add_option("--csv", csv_path, "CSV export with a header row")->required();
    cmd->add_option("--units", units, "benchmark column unit: tflops, gflops or flops")
        ->check(CLI::IsMember({"tflops", "gflops", "flops"}));
    add_output(cmd);
    cmd->callback([&] {
      action = [&] { return run_ingest(out, err, csv_path, units, output); };
    });
  }

  // roofline
  RooflineCalibration cal;
  {
    CLI::App* cmd = add_sub("roofline", "per-class performance-gain rooflines");
    cmd->add_option("--hpl-serial-fraction", cal.hpl_serial_fraction,
                    "HPL-class serial fraction");
    cmd->add_option("--hpl-hpcg-ratio", cal.hpl_hpcg_gain_ratio, "HPL/HPCG gain ratio");
    cmd->add_option("--brain-cap", cal.brain_gain_cap, "brain-class gain cap");
    cmd->add_option("--msg-scale", cal.msg_scale,
                    "cooperative-transfer message-time scaling");
    add_output(cmd);
    cmd->callback([&] {
      action = [&] { return run_roofline(out, cal, output); };
    });
  }

  // modify
  {
    CLI::App* cmd = add_sub("modify", "apply modifier stanzas, then sweep");
    cmd->add_option("--config", config_path, "run configuration file with modifier.* sections")
        ->required();
    add_output(cmd);
    cmd->callback([&] {
      action = [&] { return run_modify(out, config_path, output); };
    });
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    err << "run with --help for usage\n";
    return 1;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid value: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace parscale

#include "parscale/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace parscale {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double_or_throw(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw ConfigError("bad numeric value for " + where + ": '" + text + "'");
  }
  return v;
}

}  // namespace

const std::string* ConfigSection::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

ConfigFile ConfigFile::parse(std::istream& in) {
  ConfigFile cfg;
  std::string line;
  std::size_t line_no = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ConfigError("unterminated section header at line " + std::to_string(line_no));
      }
      cfg.sections.push_back(ConfigSection{trim(s.substr(1, s.size() - 2)), {}});
      current = &cfg.sections.back();
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value at line " + std::to_string(line_no));
    }
    if (!current) {
      throw ConfigError("entry before any [section] at line " + std::to_string(line_no));
    }
    current->entries.emplace_back(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return cfg;
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return parse(in);
}

const ConfigSection* ConfigFile::find(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

double get_double(const ConfigSection& s, const std::string& key, double fallback) {
  const std::string* v = s.find(key);
  if (!v) return fallback;
  return parse_double_or_throw("[" + s.name + "] " + key, *v);
}

std::string get_string(const ConfigSection& s, const std::string& key,
                       const std::string& fallback) {
  const std::string* v = s.find(key);
  return v ? *v : fallback;
}

std::vector<double> get_double_list(const ConfigSection& s, const std::string& key) {
  const std::string* v = s.find(key);
  if (!v) return {};
  std::string text = *v;
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    out.push_back(parse_double_or_throw("[" + s.name + "] " + key, token));
  }
  return out;
}

void check_known_keys(const ConfigSection& s, const std::vector<std::string>& known) {
  for (const auto& [k, v] : s.entries) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ConfigError("unknown key '" + k + "' in [" + s.name + "]");
    }
  }
}

MachineSpec machine_from_config(const ConfigFile& cfg) {
  MachineSpec m;
  const ConfigSection* s = cfg.find("machine");
  if (!s) return m;
  check_known_keys(*s, {"p_single", "clock_hz", "t_fix", "t_addr", "t_msg", "prop_coeff",
                        "prop_exponent"});
  m.p_single = get_double(*s, "p_single", m.p_single);
  m.clock_hz = get_double(*s, "clock_hz", m.clock_hz);
  m.t_fix = get_double(*s, "t_fix", m.t_fix);
  m.t_addr = get_double(*s, "t_addr", m.t_addr);
  m.t_msg = get_double(*s, "t_msg", m.t_msg);
  m.prop_coeff = get_double(*s, "prop_coeff", m.prop_coeff);
  m.prop_exponent = get_double(*s, "prop_exponent", m.prop_exponent);
  try {
    m.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[machine] ") + ex.what());
  }
  return m;
}

WorkloadSpec workload_from_config(const ConfigFile& cfg) {
  WorkloadSpec w;
  const ConfigSection* s = cfg.find("workload");
  if (!s) return w;
  check_known_keys(*s, {"kind", "total_flops", "iterations", "recompute_factor",
                        "grid_period", "periods", "per_period_serial_msgs"});
  const std::string kind = get_string(*s, "kind", "hpl");
  if (kind == "hpl") {
    w.kind = WorkloadKind::hpl_like;
  } else if (kind == "hpcg") {
    w.kind = WorkloadKind::hpcg_like;
  } else if (kind == "grid") {
    w.kind = WorkloadKind::grid_synced;
  } else {
    throw ConfigError("[workload] kind must be hpl, hpcg or grid");
  }
  w.total_flops = get_double(*s, "total_flops", w.total_flops);
  w.hpcg.iterations = get_double(*s, "iterations", w.hpcg.iterations);
  w.hpcg.recompute_factor = get_double(*s, "recompute_factor", w.hpcg.recompute_factor);
  w.grid.grid_period = get_double(*s, "grid_period", w.grid.grid_period);
  w.grid.periods = get_double(*s, "periods", w.grid.periods);
  w.grid.per_period_serial_msgs =
      get_double(*s, "per_period_serial_msgs", w.grid.per_period_serial_msgs);
  try {
    w.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[workload] ") + ex.what());
  }
  return w;
}

SweepOptions sweep_options_from_config(const ConfigFile& cfg) {
  SweepOptions opts;
  const ConfigSection* s = cfg.find("sweep");
  if (!s) return opts;
  const std::string mode = get_string(*s, "mode", "strong");
  if (mode == "strong") {
    opts.scaling = SweepOptions::Scaling::strong;
  } else if (mode == "fixed_time") {
    opts.scaling = SweepOptions::Scaling::fixed_time;
  } else {
    throw ConfigError("[sweep] mode must be strong or fixed_time");
  }
  opts.payload_seconds = get_double(*s, "payload_seconds", opts.payload_seconds);
  if (!(opts.payload_seconds > 0.0)) {
    throw ConfigError("[sweep] payload_seconds must be > 0");
  }
  return opts;
}

std::vector<double> sweep_grid_from_config(const ConfigFile& cfg) {
  const ConfigSection* s = cfg.find("sweep");
  if (!s) return make_log_grid(2.0, 1e10, 8);
  check_known_keys(*s, {"mode", "payload_seconds", "n_min", "n_max", "points_per_decade",
                        "n_values"});
  const std::vector<double> explicit_values = get_double_list(*s, "n_values");
  if (!explicit_values.empty()) return explicit_values;
  const double n_min = get_double(*s, "n_min", 2.0);
  const double n_max = get_double(*s, "n_max", 1e10);
  const double ppd = get_double(*s, "points_per_decade", 8.0);
  try {
    return make_log_grid(n_min, n_max, static_cast<int>(ppd));
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[sweep] ") + ex.what());
  }
}

TimelineConfig timeline_from_config(const ConfigFile& cfg) {
  const ConfigSection* s = cfg.find("timeline");
  if (!s) throw ConfigError("missing [timeline] section");
  check_known_keys(*s, {"n_workers", "t_init_sw", "t_init_os", "t_addr", "pd_out",
                        "pd_back", "t_compute", "t_collect", "dispatch", "quantum"});
  TimelineConfig c;
  const double n = get_double(*s, "n_workers", 1.0);
  if (!(n >= 1.0)) throw ConfigError("[timeline] n_workers must be >= 1");
  c.n_workers = static_cast<std::size_t>(n);
  c.t_init_sw = get_double(*s, "t_init_sw", 0.0);
  c.t_init_os = get_double(*s, "t_init_os", 0.0);
  c.t_addr = get_double(*s, "t_addr", 0.0);
  c.t_collect = get_double(*s, "t_collect", 0.0);
  c.clock_quantum = get_double(*s, "quantum", 0.0);
  const std::string dispatch = get_string(*s, "dispatch", "pipelined");
  if (dispatch == "pipelined") {
    c.dispatch_mode = DispatchMode::pipelined;
  } else if (dispatch == "blocking") {
    c.dispatch_mode = DispatchMode::blocking;
  } else {
    throw ConfigError("[timeline] dispatch must be pipelined or blocking");
  }

  // Single values broadcast to all workers.
  const auto per_worker = [&](const char* key, double fallback) {
    std::vector<double> v = get_double_list(*s, key);
    if (v.empty()) v.assign(c.n_workers, fallback);
    if (v.size() == 1) v.assign(c.n_workers, v.front());
    if (v.size() != c.n_workers) {
      throw ConfigError(std::string("[timeline] ") + key +
                        " must hold 1 or n_workers values");
    }
    return v;
  };
  c.pd_out = per_worker("pd_out", 0.0);
  c.pd_back = per_worker("pd_back", 0.0);
  c.t_compute = per_worker("t_compute", 1.0);
  try {
    c.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[timeline] ") + ex.what());
  }
  return c;
}

AnnTopology ann_from_config(const ConfigFile& cfg) {
  AnnTopology t;
  const ConfigSection* s = cfg.find("ann");
  if (!s) return t;
  check_known_keys(*s, {"n_in", "m", "h", "k_out"});
  t.n_in = static_cast<std::uint64_t>(get_double(*s, "n_in", 1.0));
  t.m = static_cast<std::uint64_t>(get_double(*s, "m", 1.0));
  t.h = static_cast<std::uint64_t>(get_double(*s, "h", 1.0));
  t.k_out = static_cast<std::uint64_t>(get_double(*s, "k_out", 1.0));
  try {
    t.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[ann] ") + ex.what());
  }
  return t;
}

BusModel bus_from_config(const ConfigFile& cfg) {
  BusModel b;
  const ConfigSection* s = cfg.find("bus");
  if (!s) return b;
  check_known_keys(*s, {"kind", "t_msg", "t_arb"});
  const std::string kind = get_string(*s, "kind", "shared");
  if (kind == "shared") {
    b.kind = BusKind::shared;
  } else if (kind == "per_layer") {
    b.kind = BusKind::per_layer;
  } else {
    throw ConfigError("[bus] kind must be shared or per_layer");
  }
  b.t_msg = get_double(*s, "t_msg", b.t_msg);
  b.t_arb = get_double(*s, "t_arb", b.t_arb);
  try {
    b.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[bus] ") + ex.what());
  }
  return b;
}

BrainParams brain_from_config(const ConfigFile& cfg) {
  BrainParams p;
  const ConfigSection* s = cfg.find("brain");
  if (!s) return p;
  check_known_keys(*s, {"neurons", "fanout", "grid_period", "t_comp", "t_comm"});
  p.neurons = static_cast<std::uint64_t>(get_double(*s, "neurons", 1e10));
  p.fanout = get_double(*s, "fanout", p.fanout);
  p.grid_period = get_double(*s, "grid_period", p.grid_period);
  p.t_comp = get_double(*s, "t_comp", p.t_comp);
  p.t_comm = get_double(*s, "t_comm", p.t_comm);
  try {
    p.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[brain] ") + ex.what());
  }
  return p;
}

std::vector<ModifierStep> modifiers_from_config(const ConfigFile& cfg) {
  std::vector<ModifierStep> steps;
  for (const auto& s : cfg.sections) {
    if (s.name == "modifier.accelerator") {
      check_known_keys(s, {"compute_speedup", "t_copy", "scale_recompute"});
      ModifierStep step;
      step.kind = ModifierStep::Kind::accelerator;
      step.accelerator.compute_speedup =
          get_double(s, "compute_speedup", step.accelerator.compute_speedup);
      step.accelerator.t_copy = get_double(s, "t_copy", step.accelerator.t_copy);
      const std::string flag = get_string(s, "scale_recompute", "true");
      if (flag != "true" && flag != "false") {
        throw ConfigError("[modifier.accelerator] scale_recompute must be true or false");
      }
      step.accelerator.scale_recompute = flag == "true";
      try {
        step.accelerator.validate();
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("[modifier.accelerator] ") + ex.what());
      }
      steps.push_back(step);
    } else if (s.name == "modifier.precision") {
      check_known_keys(s, {"compute_scale"});
      ModifierStep step;
      step.kind = ModifierStep::Kind::precision;
      step.precision.compute_scale = get_double(s, "compute_scale", 0.25);
      try {
        step.precision.validate();
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("[modifier.precision] ") + ex.what());
      }
      steps.push_back(step);
    } else if (s.name == "modifier.cooperative") {
      check_known_keys(s, {"msg_scale"});
      ModifierStep step;
      step.kind = ModifierStep::Kind::cooperative;
      step.cooperative.msg_scale = get_double(s, "msg_scale", 1.0);
      try {
        step.cooperative.validate();
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("[modifier.cooperative] ") + ex.what());
      }
      steps.push_back(step);
    } else if (s.name.rfind("modifier.", 0) == 0) {
      throw ConfigError("unknown modifier section [" + s.name + "]");
    }
  }
  return steps;
}

std::pair<MachineSpec, WorkloadSpec> apply_modifiers(const MachineSpec& m,
                                                     const WorkloadSpec& w,
                                                     const std::vector<ModifierStep>& steps) {
  MachineSpec machine = m;
  WorkloadSpec workload = w;
  for (const auto& step : steps) {
    switch (step.kind) {
      case ModifierStep::Kind::accelerator: {
        auto [mm, ww] = apply_accelerator(machine, workload, step.accelerator);
        machine = mm;
        workload = ww;
        break;
      }
      case ModifierStep::Kind::precision: {
        // The per-point prediction comes from re-running the ledger; the
        // reference-point figure is not needed here.
        machine.p_single /= step.precision.compute_scale;
        if (workload.kind == WorkloadKind::hpcg_like) {
          workload.hpcg.recompute_factor *= step.precision.compute_scale;
        }
        break;
      }
      case ModifierStep::Kind::cooperative:
        machine = apply_cooperative(machine, step.cooperative);
        break;
    }
  }
  return {machine, workload};
}

}  // namespace parscale

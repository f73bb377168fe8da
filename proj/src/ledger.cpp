#include "parscale/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parscale {

void MachineSpec::validate() const {
  if (!(p_single >= 1.0)) throw std::invalid_argument("p_single must be >= 1 flop/s");
  if (!(clock_hz > 0.0)) throw std::invalid_argument("clock_hz must be > 0");
  if (!(t_fix >= 0.0)) throw std::invalid_argument("t_fix must be >= 0");
  if (!(t_addr >= 0.0)) throw std::invalid_argument("t_addr must be >= 0");
  if (!(t_msg >= 0.0)) throw std::invalid_argument("t_msg must be >= 0");
  if (!(prop_coeff >= 0.0)) throw std::invalid_argument("prop_coeff must be >= 0");
  if (!(prop_exponent >= 0.0)) throw std::invalid_argument("prop_exponent must be >= 0");
}

WorkloadSpec WorkloadSpec::hpl_like(double flops) {
  WorkloadSpec w;
  w.kind = WorkloadKind::hpl_like;
  w.total_flops = flops;
  return w;
}

WorkloadSpec WorkloadSpec::hpcg_like(double flops, double iterations, double recompute_factor) {
  WorkloadSpec w;
  w.kind = WorkloadKind::hpcg_like;
  w.total_flops = flops;
  w.hpcg.iterations = iterations;
  w.hpcg.recompute_factor = recompute_factor;
  return w;
}

WorkloadSpec WorkloadSpec::grid_synced(double flops, double grid_period, double periods,
                                       double per_period_serial_msgs) {
  WorkloadSpec w;
  w.kind = WorkloadKind::grid_synced;
  w.total_flops = flops;
  w.grid.grid_period = grid_period;
  w.grid.periods = periods;
  w.grid.per_period_serial_msgs = per_period_serial_msgs;
  return w;
}

void WorkloadSpec::validate() const {
  if (!(total_flops > 0.0)) throw std::invalid_argument("total_flops must be > 0");
  if (kind == WorkloadKind::hpcg_like) {
    if (!(hpcg.iterations >= 1.0)) throw std::invalid_argument("iterations must be >= 1");
    if (!(hpcg.recompute_factor >= 0.0))
      throw std::invalid_argument("recompute_factor must be >= 0");
  }
  if (kind == WorkloadKind::grid_synced) {
    if (!(grid.grid_period >= 0.0)) throw std::invalid_argument("grid_period must be >= 0");
    if (!(grid.periods >= 1.0)) throw std::invalid_argument("periods must be >= 1");
    if (!(grid.per_period_serial_msgs >= 0.0))
      throw std::invalid_argument("per_period_serial_msgs must be >= 0");
  }
}

const char* contribution_name(Contribution c) {
  switch (c) {
    case Contribution::sw_os_fixed: return "sw_os_fixed";
    case Contribution::looping: return "looping";
    case Contribution::propagation: return "propagation";
    case Contribution::application_iteration: return "application_iteration";
    case Contribution::grid_sync: return "grid_sync";
  }
  return "unknown";
}

double quantize_up(double t, double quantum) {
  if (quantum <= 0.0 || t <= 0.0) return t;
  // The relative guard keeps exact multiples from being bumped a full
  // quantum by the division's rounding.
  const double steps = std::ceil((t / quantum) * (1.0 - 1e-12));
  return steps * quantum;
}

SerialTimes serial_times(const MachineSpec& m, const WorkloadSpec& w, double n) {
  m.validate();
  w.validate();
  if (!(n >= 2.0)) throw std::invalid_argument("serial_times requires n >= 2");

  SerialTimes times;
  times.emplace_back(Contribution::sw_os_fixed, m.t_fix);
  times.emplace_back(Contribution::looping, n * m.t_addr);
  times.emplace_back(Contribution::propagation,
                     m.prop_coeff * std::pow(n, m.prop_exponent));
  if (w.kind == WorkloadKind::hpcg_like) {
    times.emplace_back(Contribution::application_iteration,
                       w.hpcg.iterations * n * m.t_msg * (2.0 + w.hpcg.recompute_factor));
  }
  if (w.kind == WorkloadKind::grid_synced) {
    times.emplace_back(Contribution::grid_sync,
                       w.grid.periods * w.grid.per_period_serial_msgs * n *
                           quantize_up(m.t_msg, w.grid.grid_period));
  }
  return times;
}

namespace {

SerialLedger build_ledger(const MachineSpec& m, const WorkloadSpec& w, double n,
                          double payload_time, double total_flops) {
  SerialLedger led;
  led.n = n;
  led.nominal = n * m.p_single;
  led.payload_time = payload_time;

  const SerialTimes times = serial_times(m, w, n);
  const double share_denom = payload_time * (n - 1.0);
  double share_sum = 0.0;
  double time_sum = 0.0;
  led.entries.reserve(times.size());
  for (const auto& [kind, t] : times) {
    const double share = t / share_denom;
    led.entries.push_back({kind, ContributionShare{t, share}});
    share_sum += share;
    time_sum += t;
  }
  led.serial_time_total = time_sum;
  led.one_minus_alpha_total = share_sum;
  led.alpha_eff = 1.0 - share_sum;
  led.r_max = total_flops / (payload_time + time_sum);
  led.efficiency = led.r_max / led.nominal;
  led.beyond_model = share_sum > 1.0;
  return led;
}

}  // namespace

SerialLedger ledger(const MachineSpec& m, const WorkloadSpec& w, double n) {
  if (!(n >= 2.0)) throw std::invalid_argument("ledger requires n >= 2");
  m.validate();
  w.validate();
  const double payload_time = w.total_flops / (n * m.p_single);
  return build_ledger(m, w, n, payload_time, w.total_flops);
}

SerialLedger ledger_with_payload_time(const MachineSpec& m, const WorkloadSpec& w,
                                      double n, double payload_seconds) {
  if (!(n >= 2.0)) throw std::invalid_argument("ledger requires n >= 2");
  if (!(payload_seconds > 0.0)) throw std::invalid_argument("payload time must be > 0");
  m.validate();
  w.validate();
  const double total_flops = payload_seconds * n * m.p_single;
  return build_ledger(m, w, n, payload_seconds, total_flops);
}

std::vector<SerialLedger> sweep(const MachineSpec& m, const WorkloadSpec& w,
                                const std::vector<double>& n_values,
                                const SweepOptions& options) {
  if (n_values.empty()) throw std::invalid_argument("sweep requires at least one n value");
  std::vector<SerialLedger> out;
  out.reserve(n_values.size());
  for (double n : n_values) {
    if (options.scaling == SweepOptions::Scaling::strong) {
      out.push_back(ledger(m, w, n));
    } else {
      out.push_back(ledger_with_payload_time(m, w, n, options.payload_seconds));
    }
  }
  return out;
}

PeakPoint peak_operating_point(const MachineSpec& m, const WorkloadSpec& w,
                               const std::vector<double>& n_values,
                               const SweepOptions& options) {
  if (n_values.size() < 3) {
    throw std::invalid_argument("peak search requires at least 3 grid points");
  }
  const std::vector<SerialLedger> points = sweep(m, w, n_values, options);
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].r_max > points[best].r_max) best = i;
  }
  PeakPoint peak;
  peak.n_at_peak = points[best].n;
  peak.r_max_peak = points[best].r_max;
  peak.interior = best != 0 && best != points.size() - 1;
  return peak;
}

std::vector<double> make_log_grid(double n_min, double n_max, int points_per_decade) {
  if (!(n_min > 0.0) || !(n_max >= n_min)) {
    throw std::invalid_argument("grid bounds must satisfy 0 < n_min <= n_max");
  }
  if (points_per_decade < 1) {
    throw std::invalid_argument("points_per_decade must be >= 1");
  }
  std::vector<double> grid;
  const double lo = std::log10(n_min);
  const double hi = std::log10(n_max);
  const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) * points_per_decade)));
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    const double frac = static_cast<double>(i) / steps;
    grid.push_back(std::pow(10.0, lo + frac * (hi - lo)));
  }
  grid.front() = n_min;
  grid.back() = n_max;
  return grid;
}

}  // namespace parscale

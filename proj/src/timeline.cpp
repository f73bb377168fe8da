#include "parscale/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace parscale {

TimelineConfig TimelineConfig::uniform(std::size_t n_workers, double t_compute_each) {
  TimelineConfig c;
  c.n_workers = n_workers;
  c.pd_out.assign(n_workers, 0.0);
  c.pd_back.assign(n_workers, 0.0);
  c.t_compute.assign(n_workers, t_compute_each);
  return c;
}

void TimelineConfig::validate() const {
  if (n_workers < 1) throw std::invalid_argument("n_workers must be >= 1");
  if (!(t_init_sw >= 0.0)) throw std::invalid_argument("t_init_sw must be >= 0");
  if (!(t_init_os >= 0.0)) throw std::invalid_argument("t_init_os must be >= 0");
  if (!(t_addr >= 0.0)) throw std::invalid_argument("t_addr must be >= 0");
  if (!(t_collect >= 0.0)) throw std::invalid_argument("t_collect must be >= 0");
  if (!(clock_quantum >= 0.0)) throw std::invalid_argument("clock_quantum must be >= 0");
  if (pd_out.size() != n_workers || pd_back.size() != n_workers ||
      t_compute.size() != n_workers) {
    throw std::invalid_argument("per-worker arrays must be sized n_workers");
  }
  for (double v : pd_out)
    if (!(v >= 0.0)) throw std::invalid_argument("pd_out entries must be >= 0");
  for (double v : pd_back)
    if (!(v >= 0.0)) throw std::invalid_argument("pd_back entries must be >= 0");
  for (double v : t_compute)
    if (!(v > 0.0)) throw std::invalid_argument("t_compute entries must be > 0");
}

namespace {

std::string worker_name(std::size_t i) {
  return "worker" + std::to_string(i);
}

void emit(std::vector<TraceEvent>* trace, double time, const char* actor,
          std::string event) {
  if (trace) trace->push_back(TraceEvent{time, actor, std::move(event)});
}

void emit(std::vector<TraceEvent>* trace, double time, std::size_t worker,
          std::string event) {
  if (trace) trace->push_back(TraceEvent{time, worker_name(worker), std::move(event)});
}

}  // namespace

TimelineResult simulate(const TimelineConfig& c, std::vector<TraceEvent>* trace) {
  c.validate();
  const std::size_t n = c.n_workers;
  const auto q = [&](double t) { return quantize_up(t, c.clock_quantum); };

  emit(trace, 0.0, "coordinator", "init begin");
  const double init_end = q(c.t_init_sw + c.t_init_os);
  emit(trace, init_end, "coordinator", "init end");

  std::vector<double> returned(n);
  double cursor = init_end;  // coordinator-local time inside the dispatch loop
  for (std::size_t i = 0; i < n; ++i) {
    const double depart = q(cursor + c.t_addr);
    emit(trace, depart, "coordinator", "dispatch " + worker_name(i));
    const double arrive = q(depart + c.pd_out[i]);
    emit(trace, arrive, i, "compute begin");
    const double finish = q(arrive + c.t_compute[i]);
    emit(trace, finish, i, "compute end");
    returned[i] = q(finish + c.pd_back[i]);
    cursor = c.dispatch_mode == DispatchMode::blocking ? arrive : depart;
  }
  const double loop_end = cursor;
  emit(trace, loop_end, "coordinator", "dispatch loop end");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return returned[a] < returned[b];
  });

  double collect_cursor = loop_end;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    const double start = std::max(collect_cursor, returned[i]);
    collect_cursor = q(start + c.t_collect);
    emit(trace, collect_cursor, "coordinator", "collected " + worker_name(i));
  }
  const double total = collect_cursor;
  emit(trace, total, "coordinator", "done");

  TimelineResult r;
  r.total_time = total;
  r.payload_time_sum = std::accumulate(c.t_compute.begin(), c.t_compute.end(), 0.0);
  r.per_worker_idle.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.per_worker_idle[i] = total - (c.pd_out[i] + c.t_compute[i] + c.pd_back[i]);
  }
  r.speedup = r.payload_time_sum / total;
  r.utilization = r.payload_time_sum / (static_cast<double>(n) * total);
  if (n >= 2) {
    r.empirical_alpha = empirical_alpha(r, static_cast<double>(n));
  }
  return r;
}

double empirical_alpha(const TimelineResult& r, double n) {
  if (!(n >= 2.0)) {
    throw std::invalid_argument("empirical alpha undefined for a single unit");
  }
  // Same grouping as alpha_from_speedup, but measured speedups below 1 are
  // legal here and map to negative fractions.
  return (n * (r.speedup - 1.0)) / ((n - 1.0) * r.speedup);
}

std::string format_trace(const std::vector<TraceEvent>& trace) {
  std::ostringstream out;
  out.setf(std::ios::fmtflags(0), std::ios::floatfield);
  out.precision(12);
  for (const auto& e : trace) {
    out << e.time << '\t' << e.actor << '\t' << e.event << '\n';
  }
  return out.str();
}

TimelineConfig config_from_model(const MachineSpec& m, const WorkloadSpec& w,
                                 std::size_t n) {
  m.validate();
  w.validate();
  if (n < 2) throw std::invalid_argument("model mapping requires n >= 2");

  TimelineConfig c;
  c.n_workers = n;
  c.t_init_sw = m.t_fix;
  c.t_init_os = 0.0;
  c.t_addr = m.t_addr;
  const double flight = m.prop_coeff * std::pow(static_cast<double>(n), m.prop_exponent) / 2.0;
  c.pd_out.assign(n, flight);
  c.pd_back.assign(n, flight);
  c.t_compute.assign(n, w.total_flops / (static_cast<double>(n) * m.p_single));
  switch (w.kind) {
    case WorkloadKind::hpl_like:
      c.t_collect = 0.0;
      break;
    case WorkloadKind::hpcg_like:
      c.t_collect = w.hpcg.iterations * m.t_msg * (2.0 + w.hpcg.recompute_factor);
      break;
    case WorkloadKind::grid_synced:
      c.t_collect = w.grid.periods * w.grid.per_period_serial_msgs *
                    quantize_up(m.t_msg, w.grid.grid_period);
      break;
  }
  c.dispatch_mode = DispatchMode::pipelined;
  return c;
}

CrossCheckReport compare_to_analytic(const MachineSpec& m, const WorkloadSpec& w,
                                     std::size_t n) {
  const TimelineConfig c = config_from_model(m, w, n);
  const TimelineResult sim = simulate(c);
  const SerialLedger led = ledger(m, w, static_cast<double>(n));

  CrossCheckReport rep;
  rep.simulated_efficiency = sim.utilization;
  rep.ledger_efficiency = led.efficiency;
  rep.relative_difference =
      std::abs(rep.simulated_efficiency - rep.ledger_efficiency) / rep.ledger_efficiency;
  rep.payload_dominated = led.payload_time >= 10.0 * led.serial_time_total;
  rep.within_tolerance = rep.relative_difference <= 0.05;
  return rep;
}

}  // namespace parscale

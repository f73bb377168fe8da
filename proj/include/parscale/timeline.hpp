#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parscale/ledger.hpp"

namespace parscale {

// ---------------------------------------------------------------------------
// Deterministic simulation of one dispatch/compute/collect round.
//
// Committed event semantics:
//   * The coordinator runs t_init_sw + t_init_os once, then addresses the
//     workers in index order at t_addr each.  In pipelined mode the next
//     addressing overlaps the previous message's flight; in blocking mode
//     the coordinator waits out pd_out(i) before addressing worker i+1 (the
//     last message's delivery is waited out as well, so the dispatch loop
//     costs sum(t_addr + pd_out)).
//   * Worker i computes for t_compute(i) once its message arrives, and the
//     result flies back over pd_back(i).
//   * Results are collected sequentially at t_collect each, in arrival
//     order with ties broken by worker index, never before the dispatch
//     loop has ended.
//   * With clock_quantum > 0, every event time is rounded up to the next
//     multiple of the quantum: no action can complete inside a fraction of
//     a clock period.
//
// Identical configs yield bit-identical results: the event order is fixed
// and all arithmetic is sequential.
// ---------------------------------------------------------------------------

enum class DispatchMode { pipelined, blocking };

struct TimelineConfig {
  std::size_t n_workers = 1;
  double t_init_sw = 0.0;
  double t_init_os = 0.0;
  double t_addr = 0.0;             // per-worker addressing cost
  std::vector<double> pd_out;      // per-worker propagation delay, coordinator -> worker
  std::vector<double> pd_back;     // per-worker propagation delay, worker -> coordinator
  std::vector<double> t_compute;   // per-worker payload time, > 0
  double t_collect = 0.0;          // per returned result
  DispatchMode dispatch_mode = DispatchMode::pipelined;
  double clock_quantum = 0.0;      // 0 disables quantization

  // Same value for every worker.
  static TimelineConfig uniform(std::size_t n_workers, double t_compute_each);

  void validate() const;
};

struct TraceEvent {
  double time = 0.0;
  std::string actor;
  std::string event;
};

struct TimelineResult {
  double total_time = 0.0;
  double payload_time_sum = 0.0;        // sum of t_compute
  std::vector<double> per_worker_idle;  // total_time - (flight + compute) per worker
  double speedup = 0.0;                 // payload_time_sum / total_time
  std::optional<double> empirical_alpha;  // absent for n_workers == 1
  double utilization = 0.0;             // payload_time_sum / (n * total_time)
};

TimelineResult simulate(const TimelineConfig& c, std::vector<TraceEvent>* trace = nullptr);

/// Empirical parallel fraction of a measured run (requires n >= 2).  Below-1
/// speedups yield negative values: the run lies outside the model.
double empirical_alpha(const TimelineResult& r, double n);

/// Renders a trace as `time<TAB>actor<TAB>event` lines.
std::string format_trace(const std::vector<TraceEvent>& trace);

// Cross-validation between the simulated timeline and the analytic ledger.

struct CrossCheckReport {
  double simulated_efficiency = 0.0;
  double ledger_efficiency = 0.0;
  double relative_difference = 0.0;
  // T_pp at least 10x the total serial time; the 5% agreement bound is only
  // meaningful here.
  bool payload_dominated = false;
  bool within_tolerance = false;
};

/// Timeline equivalent of a (machine, workload, n) operating point:
/// t_init_sw = t_fix, t_addr as-is, both flight delays at half the
/// propagation term, an even payload split, and the workload's per-worker
/// serialized message time as the collection cost.
TimelineConfig config_from_model(const MachineSpec& m, const WorkloadSpec& w, std::size_t n);

CrossCheckReport compare_to_analytic(const MachineSpec& m, const WorkloadSpec& w,
                                     std::size_t n);

}  // namespace parscale

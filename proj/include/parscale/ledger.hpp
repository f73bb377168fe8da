#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "parscale/amdahl.hpp"

namespace parscale {

// ---------------------------------------------------------------------------
// Serial-time ledger: decomposes the sequential-only fraction of a
// parameterized machine/workload pair into named contributions and computes
// payload performance against nominal performance.
//
// The model is the distributed dispatch/compute/collect picture: a
// coordinating core pays a one-time setup cost, addresses every fellow core
// in turn, signals cross the physical extent of the machine, and iterative
// or grid-synchronized workloads add their own serialized message traffic.
// With payload-parallel time T_pp = total_flops / (n * p_single) and serial
// times T_X, each contribution's share of the serial-only fraction is
//
//   (1 - alpha_X) = T_X / (T_pp * (n - 1))
//
// which makes the shares exactly additive and reproduces the closed-form
// efficiency E = T_pp / (T_pp + sum T_X).
// ---------------------------------------------------------------------------

struct MachineSpec {
  double p_single = 1e9;     // flop/s per core
  double clock_hz = 1e9;     // Hz
  double t_fix = 10.0;       // s, one-time SW+OS initialization + termination
  double t_addr = 1e-6;      // s, per-core addressing/dispatch on the coordinator
  double t_msg = 1e-6;       // s, one message transfer on the interconnect
  double prop_coeff = 1e-8;  // s, physical-size propagation scale
  double prop_exponent = 1.0 / 3.0;  // propagation delay ~ prop_coeff * n^exponent

  void validate() const;
};

enum class WorkloadKind { hpl_like, hpcg_like, grid_synced };

struct HpcgParams {
  double iterations = 500.0;
  // Coordinator recompute per iteration, as a fraction of the per-iteration
  // communication time n * t_msg.
  double recompute_factor = 0.1;
};

struct GridParams {
  double grid_period = 1e-3;           // s, synchronization quantum
  double periods = 2000.0;             // lockstep periods in one run
  double per_period_serial_msgs = 2.0; // serialized messages per worker per period
};

// A fixed-size workload (constant-problem-size scaling).  The default
// total_flops makes the zero-overhead run last 1000 s at the operating
// point where the default machine's dispatch loop also reaches 1000 s.
struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::hpl_like;
  double total_flops = 1e21;
  HpcgParams hpcg;
  GridParams grid;

  static WorkloadSpec hpl_like(double flops = 1e21);
  static WorkloadSpec hpcg_like(double flops = 1e21, double iterations = 500.0,
                                double recompute_factor = 0.1);
  static WorkloadSpec grid_synced(double flops = 1e21, double grid_period = 1e-3,
                                  double periods = 2000.0,
                                  double per_period_serial_msgs = 2.0);

  void validate() const;
};

enum class Contribution {
  sw_os_fixed,
  looping,
  propagation,
  application_iteration,
  grid_sync,
};

const char* contribution_name(Contribution c);

using SerialTimes = std::vector<std::pair<Contribution, double>>;

struct ContributionShare {
  double time_s = 0.0;
  double one_minus_alpha_share = 0.0;
};

struct SerialLedger {
  double n = 0.0;
  double nominal = 0.0;       // n * p_single, flop/s
  double payload_time = 0.0;  // T_pp, s
  std::vector<std::pair<Contribution, ContributionShare>> entries;
  double serial_time_total = 0.0;       // sum of entry times, s
  double one_minus_alpha_total = 0.0;   // sum of entry shares
  double alpha_eff = 0.0;
  double r_max = 0.0;      // flop/s
  double efficiency = 0.0; // r_max / nominal
  // Serial time exceeds (n-1) payload times: alpha_eff is negative and the
  // operating point lies in the communicational-collapse regime.  Values are
  // reported as-is rather than clamped.
  bool beyond_model = false;
};

/// Serial-only time of each contribution at n units:
///   sw_os_fixed            t_fix
///   looping                n * t_addr
///   propagation            prop_coeff * n^prop_exponent
///   application_iteration  iterations * n * t_msg * (2 + recompute_factor)
///   grid_sync              periods * per_period_serial_msgs * n
///                                  * (t_msg rounded up to the grid period)
/// The grid-synchronized term recurs for every worker in every period: the
/// lockstep barrier forces all per-worker traffic through the coordinator
/// each period, and no transfer can occupy less than one grid quantum.
SerialTimes serial_times(const MachineSpec& m, const WorkloadSpec& w, double n);

/// Full ledger at n units (n >= 2) under constant problem size.
SerialLedger ledger(const MachineSpec& m, const WorkloadSpec& w, double n);

/// Ledger with the payload-parallel time pinned instead of the problem size
/// (fixed-time scaling, used for saturation-style plots).
SerialLedger ledger_with_payload_time(const MachineSpec& m, const WorkloadSpec& w,
                                      double n, double payload_seconds);

struct SweepOptions {
  enum class Scaling { strong, fixed_time };
  Scaling scaling = Scaling::strong;
  double payload_seconds = 1000.0;  // used by fixed_time
};

/// Evaluates the ledger over n_values (each >= 2), in input order.
std::vector<SerialLedger> sweep(const MachineSpec& m, const WorkloadSpec& w,
                                const std::vector<double>& n_values,
                                const SweepOptions& options = {});

struct PeakPoint {
  double n_at_peak = 0.0;
  double r_max_peak = 0.0;
  // False when the maximum sits on the first or last grid point, i.e. the
  // sweep range did not bracket it.
  bool interior = false;
};

/// Argmax of r_max over the sweep grid (at least 3 points).
PeakPoint peak_operating_point(const MachineSpec& m, const WorkloadSpec& w,
                               const std::vector<double>& n_values,
                               const SweepOptions& options = {});

/// Geometric grid from n_min to n_max with the given resolution; always
/// includes both endpoints.
std::vector<double> make_log_grid(double n_min, double n_max, int points_per_decade);

/// Rounds t up to the next multiple of the quantum (t unchanged when the
/// quantum is zero).
double quantize_up(double t, double quantum);

}  // namespace parscale

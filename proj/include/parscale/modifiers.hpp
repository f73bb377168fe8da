#pragma once

#include "parscale/ledger.hpp"

namespace parscale {

// Machine/workload transformers.  Each returns modified specs; predicted
// deltas come from re-running the ledger on the result.  Transformers
// compose in application order.

// GPGPU-style acceleration: computation runs compute_speedup times faster,
// but every dispatch drags the address-space copy cost t_copy into the
// coordinator's serial loop.
struct Accelerator {
  double compute_speedup = 5.0;
  double t_copy = 0.0;  // s per dispatched data exchange
  // Also speed up the coordinator's per-iteration recompute (it is
  // computation too).
  bool scale_recompute = true;

  void validate() const;
};

// Reduced-precision arithmetic: computation time scales by compute_scale,
// communication does not.
struct PrecisionMode {
  double compute_scale = 0.25;  // FP16 vs FP64
  static constexpr double comm_scale = 1.0;

  void validate() const;
};

// Direct core-to-core transfer bypassing the global bus.
struct CooperativeTransfer {
  double msg_scale = 1.0;  // multiplies t_msg

  void validate() const;
};

MachineSpec apply_accelerator(const MachineSpec& m, const Accelerator& a);

/// Accelerates the machine and, when a.scale_recompute is set, the
/// workload's coordinator recompute.
std::pair<MachineSpec, WorkloadSpec> apply_accelerator(const MachineSpec& m,
                                                       const WorkloadSpec& w,
                                                       const Accelerator& a);

struct PrecisionOutcome {
  MachineSpec machine;
  WorkloadSpec workload;
  // Total-time speedup of the same problem at the reference operating
  // point: r_max(modified) / r_max(baseline).
  double predicted_total_speedup = 1.0;
  // Energy per computed operation relative to full precision; no watts are
  // modeled.
  double power_proxy = 1.0;
};

PrecisionOutcome apply_precision(const MachineSpec& m, const WorkloadSpec& w,
                                 const PrecisionMode& p, double n_ref);

/// Total-time speedup when computation scales and communication does not:
/// (t_compute + t_comm) / (t_compute * compute_scale + t_comm).  Bounded by
/// [1, 1/compute_scale], with the endpoints at t_compute = 0 and t_comm = 0.
double precision_speedup(double t_compute, double t_comm, double compute_scale);

MachineSpec apply_cooperative(const MachineSpec& m, const CooperativeTransfer& c);

/// Gain ratio of a mixed-precision benchmark figure over the
/// double-precision figure of the same machine.
double hpl_ai_equivalence(double r_mixed, double r_dp);

}  // namespace parscale

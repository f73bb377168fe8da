#include "parscale/modifiers.hpp"

#include <stdexcept>

namespace parscale {

void Accelerator::validate() const {
  if (!(compute_speedup > 1.0)) {
    throw std::invalid_argument("compute_speedup must be > 1");
  }
  if (!(t_copy >= 0.0)) throw std::invalid_argument("t_copy must be >= 0");
}

void PrecisionMode::validate() const {
  if (!(compute_scale > 0.0 && compute_scale <= 1.0)) {
    throw std::invalid_argument("compute_scale must lie in (0,1]");
  }
}

void CooperativeTransfer::validate() const {
  if (!(msg_scale > 0.0 && msg_scale <= 1.0)) {
    throw std::invalid_argument("msg_scale must lie in (0,1]");
  }
}

MachineSpec apply_accelerator(const MachineSpec& m, const Accelerator& a) {
  a.validate();
  m.validate();
  MachineSpec out = m;
  out.p_single *= a.compute_speedup;
  out.t_addr += a.t_copy;
  return out;
}

std::pair<MachineSpec, WorkloadSpec> apply_accelerator(const MachineSpec& m,
                                                       const WorkloadSpec& w,
                                                       const Accelerator& a) {
  WorkloadSpec out = w;
  if (a.scale_recompute && w.kind == WorkloadKind::hpcg_like) {
    out.hpcg.recompute_factor = w.hpcg.recompute_factor / a.compute_speedup;
  }
  return {apply_accelerator(m, a), out};
}

PrecisionOutcome apply_precision(const MachineSpec& m, const WorkloadSpec& w,
                                 const PrecisionMode& p, double n_ref) {
  p.validate();
  m.validate();
  w.validate();
  PrecisionOutcome out;
  out.machine = m;
  out.machine.p_single = m.p_single / p.compute_scale;
  out.workload = w;
  if (w.kind == WorkloadKind::hpcg_like) {
    out.workload.hpcg.recompute_factor = w.hpcg.recompute_factor * p.compute_scale;
  }
  out.predicted_total_speedup =
      ledger(out.machine, out.workload, n_ref).r_max / ledger(m, w, n_ref).r_max;
  out.power_proxy = p.compute_scale;
  return out;
}

double precision_speedup(double t_compute, double t_comm, double compute_scale) {
  if (!(t_compute >= 0.0) || !(t_comm >= 0.0) || !(t_compute + t_comm > 0.0)) {
    throw std::invalid_argument("times must be >= 0 and not both zero");
  }
  if (!(compute_scale > 0.0 && compute_scale <= 1.0)) {
    throw std::invalid_argument("compute_scale must lie in (0,1]");
  }
  return (t_compute + t_comm) / (t_compute * compute_scale + t_comm);
}

MachineSpec apply_cooperative(const MachineSpec& m, const CooperativeTransfer& c) {
  c.validate();
  m.validate();
  MachineSpec out = m;
  out.t_msg *= c.msg_scale;
  return out;
}

double hpl_ai_equivalence(double r_mixed, double r_dp) {
  if (!(r_mixed > 0.0) || !(r_dp > 0.0)) {
    throw std::invalid_argument("benchmark figures must be > 0");
  }
  return r_mixed / r_dp;
}

}  // namespace parscale

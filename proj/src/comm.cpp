#include "parscale/comm.hpp"

#include <algorithm>
#include <stdexcept>

namespace parscale {

const char* workload_class_name(WorkloadClass c) {
  switch (c) {
    case WorkloadClass::hpl: return "hpl";
    case WorkloadClass::hpcg: return "hpcg";
    case WorkloadClass::ann: return "ann";
    case WorkloadClass::brain: return "brain";
  }
  return "unknown";
}

void AnnTopology::validate() const {
  if (n_in < 1 || m < 1 || h < 1 || k_out < 1) {
    throw std::invalid_argument("topology counts must be >= 1");
  }
}

void BusModel::validate() const {
  if (!(t_msg > 0.0)) throw std::invalid_argument("t_msg must be > 0");
  if (!(t_arb >= 0.0)) throw std::invalid_argument("t_arb must be >= 0");
  if (queuing_stages != 3) {
    throw std::invalid_argument("ANN flows queue exactly 3 times in this model");
  }
}

std::uint64_t messages_hpl(std::uint64_t m_workers) {
  if (m_workers < 1) throw std::invalid_argument("worker count must be >= 1");
  return 2 * m_workers;
}

std::uint64_t messages_hpcg(std::uint64_t m_workers, std::uint64_t iterations) {
  if (m_workers < 1) throw std::invalid_argument("worker count must be >= 1");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  return 2 * iterations * m_workers;
}

AnnMessageBreakdown messages_ann(const AnnTopology& t) {
  t.validate();
  AnnMessageBreakdown b;
  b.input_to_hidden = t.n_in * t.m;
  b.hidden_to_hidden = (t.h - 1) * t.m * t.m;
  b.hidden_to_output = t.k_out * t.m;
  b.total = b.input_to_hidden + b.hidden_to_hidden + b.hidden_to_output;
  return b;
}

std::vector<std::uint64_t> ann_stage_counts(const AnnTopology& t) {
  t.validate();
  std::vector<std::uint64_t> stages;
  stages.reserve(t.h + 1);
  stages.push_back(t.n_in * t.m);
  for (std::uint64_t i = 1; i < t.h; ++i) {
    stages.push_back(t.m * t.m);
  }
  stages.push_back(t.k_out * t.m);
  return stages;
}

std::uint64_t ann_compute_ops(const AnnTopology& t) {
  t.validate();
  return t.h * t.m + t.k_out;
}

double serialized_comm_time(const std::vector<std::uint64_t>& stage_counts,
                            const BusModel& bus) {
  bus.validate();
  const double per_msg = bus.t_msg + bus.t_arb;
  if (bus.kind == BusKind::shared) {
    double total = 0.0;
    for (std::uint64_t c : stage_counts) total += static_cast<double>(c);
    return total * per_msg;
  }
  std::uint64_t widest = 0;
  for (std::uint64_t c : stage_counts) widest = std::max(widest, c);
  return static_cast<double>(widest) * per_msg;
}

void BrainParams::validate() const {
  if (neurons < 1) throw std::invalid_argument("neurons must be >= 1");
  if (!(fanout >= 0.0)) throw std::invalid_argument("fanout must be >= 0");
  if (!(grid_period > 0.0)) throw std::invalid_argument("grid_period must be > 0");
  if (!(t_comp > 0.0)) throw std::invalid_argument("t_comp must be > 0");
  if (!(t_comm >= 0.0)) throw std::invalid_argument("t_comm must be >= 0");
}

BrainProfile brain_profile(const BrainParams& p) {
  p.validate();
  BrainProfile b;
  b.params = p;
  b.profile.workload_class = WorkloadClass::brain;
  b.profile.message_count =
      static_cast<std::uint64_t>(static_cast<double>(p.neurons) * p.fanout);
  b.profile.serialized_time = p.fanout * p.t_comm;  // per neuron, per period
  b.efficiency_ratio = p.t_comp / (p.t_comp + p.fanout * p.t_comm);
  b.implied_gain = b.efficiency_ratio * static_cast<double>(p.neurons);
  return b;
}

BrainProfile hierarchic_reduction(const BrainProfile& b, double reduction_factor) {
  if (!(reduction_factor >= 1.0)) {
    throw std::invalid_argument("reduction_factor must be >= 1");
  }
  BrainParams reduced = b.params;
  reduced.fanout = b.params.fanout / reduction_factor;
  return brain_profile(reduced);
}

ClassRoofline roofline_for_class(WorkloadClass c, const RooflineCalibration& cal) {
  if (!(cal.hpl_serial_fraction > 0.0) || !(cal.hpl_hpcg_gain_ratio >= 1.0) ||
      !(cal.brain_gain_cap > 0.0) || !(cal.msg_scale > 0.0) || !(cal.msg_scale <= 1.0)) {
    throw std::invalid_argument("invalid roofline calibration");
  }
  ClassRoofline r;
  r.workload_class = c;
  switch (c) {
    case WorkloadClass::hpl:
      r.serial_fraction = cal.hpl_serial_fraction * cal.msg_scale;
      break;
    case WorkloadClass::hpcg:
      r.serial_fraction = cal.hpl_serial_fraction * cal.hpl_hpcg_gain_ratio * cal.msg_scale;
      break;
    case WorkloadClass::brain:
      r.serial_fraction = cal.msg_scale / cal.brain_gain_cap;
      break;
    case WorkloadClass::ann:
      throw std::invalid_argument(
          "no calibrated roofline for the ann class; it lies between hpcg and brain");
  }
  r.gain = 1.0 / r.serial_fraction;
  return r;
}

std::vector<ClassRoofline> class_rooflines(const RooflineCalibration& cal) {
  return {roofline_for_class(WorkloadClass::hpl, cal),
          roofline_for_class(WorkloadClass::hpcg, cal),
          roofline_for_class(WorkloadClass::brain, cal)};
}

}  // namespace parscale

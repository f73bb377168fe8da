#pragma once

#include <cstdint>
#include <vector>

namespace parscale {

// ---------------------------------------------------------------------------
// Message counting and serialized-communication-time modeling for the four
// workload classes: one-shot dispatch/collect (HPL), iterative refinement
// (HPCG), layered feed-forward networks, and grid-synchronized neuron
// simulation.
// ---------------------------------------------------------------------------

enum class WorkloadClass { hpl, hpcg, ann, brain };

const char* workload_class_name(WorkloadClass c);

// Layered feed-forward topology: n_in inputs, h hidden layers of m nodes,
// k_out outputs.
struct AnnTopology {
  std::uint64_t n_in = 1;
  std::uint64_t m = 1;
  std::uint64_t h = 1;
  std::uint64_t k_out = 1;

  void validate() const;
};

enum class BusKind { shared, per_layer };

struct BusModel {
  BusKind kind = BusKind::shared;
  double t_msg = 1e-6;  // s per message
  double t_arb = 0.0;   // s arbitration per message
  // Every ANN message queues three times: source send queue, bus
  // arbitration, destination receive queue.
  int queuing_stages = 3;

  void validate() const;
};

struct CommProfile {
  std::uint64_t message_count = 0;
  double serialized_time = 0.0;  // s
  WorkloadClass workload_class = WorkloadClass::hpl;
};

/// Dispatch plus collect: 2 * m_workers messages.
std::uint64_t messages_hpl(std::uint64_t m_workers);

/// Iterative dispatch/collect: 2 * iterations * m_workers messages.
std::uint64_t messages_hpcg(std::uint64_t m_workers, std::uint64_t iterations);

struct AnnMessageBreakdown {
  std::uint64_t input_to_hidden = 0;   // n_in * m
  std::uint64_t hidden_to_hidden = 0;  // (h - 1) * m^2
  std::uint64_t hidden_to_output = 0;  // k_out * m
  std::uint64_t total = 0;
};

/// Edge count of the layered graph, by stage.
AnnMessageBreakdown messages_ann(const AnnTopology& t);

/// Per-stage message counts in flow order: input->hidden, each
/// hidden->hidden step, hidden->output (h + 1 stages).
std::vector<std::uint64_t> ann_stage_counts(const AnnTopology& t);

/// Computation operations, one per non-input node: h * m + k_out.  Grows
/// linearly in m while the message count grows with m^2, so widening the
/// hidden layers raises the communication/computation ratio.
std::uint64_t ann_compute_ops(const AnnTopology& t);

/// Serialized transfer time of staged traffic.  On a shared bus every
/// message in every stage serializes; with per-layer buses the stages run
/// concurrently (stage boundaries synchronized), so the slowest stage sets
/// the pace.
double serialized_comm_time(const std::vector<std::uint64_t>& stage_counts,
                            const BusModel& bus);

struct BrainParams {
  std::uint64_t neurons = 10'000'000'000ull;
  double fanout = 1e4;        // fellow neurons told per grid period
  double grid_period = 1e-3;  // s, the biological clock period
  double t_comp = 1e-8;       // s, one neuron's computation per period
  double t_comm = 1e-6;       // s, one neuron-to-neuron message

  void validate() const;
};

struct BrainProfile {
  BrainParams params;
  CommProfile profile;      // message_count = neurons * fanout, per grid period
  double efficiency_ratio;  // t_comp / (t_comp + fanout * t_comm)
  double implied_gain;      // efficiency_ratio * neurons
};

/// Communication profile of one grid period of neuron simulation.  The
/// efficiency ratio compares efficacy with and without the per-period
/// fan-out traffic; implied_gain is the ensemble's resulting speedup over a
/// single unit.
BrainProfile brain_profile(const BrainParams& p);

/// Hierarchical communication paths divide the fan-out traffic, improving
/// the implied gain by the same factor while communication dominates.
BrainProfile hierarchic_reduction(const BrainProfile& b, double reduction_factor = 100.0);

// Calibration of the per-class performance-gain rooflines.  The absolute
// HPL level and the brain cap are pinned constants; HPCG sits a fixed gain
// ratio below HPL.
struct RooflineCalibration {
  double hpl_serial_fraction = 1e-6;  // HPL gain 1e6 at the reference machine
  double hpl_hpcg_gain_ratio = 200.0;
  double brain_gain_cap = 1e4;
  double msg_scale = 1.0;  // < 1 models cooperative (direct core-to-core) transfer
};

struct ClassRoofline {
  WorkloadClass workload_class = WorkloadClass::hpl;
  double serial_fraction = 0.0;
  double gain = 0.0;  // 1 / serial_fraction
};

ClassRoofline roofline_for_class(WorkloadClass c, const RooflineCalibration& cal = {});

/// All three class rooflines (HPL, HPCG, brain) in that order.
std::vector<ClassRoofline> class_rooflines(const RooflineCalibration& cal = {});

}  // namespace parscale

// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "parscale/amdahl.hpp"
#include "parscale/comm.hpp"
#include "parscale/dataio.hpp"
#include "parscale/ledger.hpp"
#include "parscale/modifiers.hpp"
#include "parscale/timeline.hpp"

using namespace parscale;

namespace {

struct Check {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void within(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      failures.push_back(what + ": got " + std::to_string(got) + ", want " +
                         std::to_string(want) + " +/- " + std::to_string(tol));
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion bodies -------------------------------------------------------

void algebra_roundtrips(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> alphas = {0.0, 0.1, 0.2, 0.3, 0.4,      0.5,
                                      0.6, 0.7, 0.8, 0.9, 0.999,    0.999999};
  const std::vector<double> ns = {2.0, 10.0, 1e3, 1e6, 1e7};
  int points = 0;
  for (double a : alphas) {
    for (double n : ns) {
      ++points;
      const AmdahlPoint p(a, n);
      const double s = speedup(p);
      c.require(std::abs(alpha_from_speedup(s, n) - a) <= 1e-12,
                "roundtrip alpha at alpha=" + std::to_string(a) +
                    " n=" + std::to_string(n));
      c.require(s == n * efficiency(p), "efficiency*n == speedup exactly");
    }
  }
  c.require(points == 60, "60-point grid");
  c.require(seconds_since(t0) < 1.0, "runtime < 1 s");
}

void roofline_asymptote(Check& c) {
  for (double s = 1e-6; s <= 1.0; s *= 10.0) {
    const double sp = speedup(AmdahlPoint::from_serial_fraction(s, 1e9));
    const double limit = perf_gain_limit_from_serial(s);
    c.require(std::abs(sp - limit) / limit <= 0.01,
              "speedup within 1% of 1/(1-alpha) at serial fraction " + std::to_string(s));
  }
}

void peak_then_decline(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const MachineSpec m;  // fictive 1 Gflop/s @ 1 GHz defaults
  const WorkloadSpec w = WorkloadSpec::hpl_like();
  const std::vector<double> grid = make_log_grid(1e2, 1e11, 8);
  const std::vector<SerialLedger> points = sweep(m, w, grid);
  const PeakPoint peak = peak_operating_point(m, w, grid);
  c.require(peak.interior, "interior r_max maximum");

  bool past_peak = false;
  bool strictly_declining = true;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i - 1].n == peak.n_at_peak) past_peak = true;
    if (past_peak && !(points[i].r_max < points[i - 1].r_max)) {
      strictly_declining = false;
    }
  }
  c.require(strictly_declining, "strictly decreasing beyond the peak");

  const double analytic = std::sqrt(w.total_flops / (m.p_single * m.t_addr));
  const double step = std::pow(10.0, 1.0 / 8.0);
  c.require(peak.n_at_peak / analytic < step && analytic / peak.n_at_peak < step,
            "n_at_peak within one grid step of sqrt(W/(P*t_addr))");
  c.require(seconds_since(t0) < 5.0, "runtime < 5 s");
}

void grid_time_shift(Check& c) {
  const MachineSpec m;
  const std::vector<double> grid = make_log_grid(1e2, 1e11, 24);
  const PeakPoint hpl = peak_operating_point(m, WorkloadSpec::hpl_like(), grid);
  const WorkloadSpec synced =
      WorkloadSpec::grid_synced(1e21, 5000.0 / m.clock_hz);  // 5000 clock cycles
  const PeakPoint shifted = peak_operating_point(m, synced, grid);

  c.require(hpl.n_at_peak / shifted.n_at_peak >= 100.0,
            "n_at_peak down by >= 2 orders of magnitude");
  const double nominal_hpl = hpl.n_at_peak * m.p_single;
  const double nominal_shifted = shifted.n_at_peak * m.p_single;
  c.require(nominal_hpl / nominal_shifted >= 100.0,
            "peak nominal performance down by >= 2 orders of magnitude");
}

std::uint64_t enumerate_layered_edges(std::uint64_t n_in, std::uint64_t m,
                                      std::uint64_t h, std::uint64_t k_out) {
  std::vector<std::uint64_t> layers;
  layers.push_back(n_in);
  for (std::uint64_t i = 0; i < h; ++i) layers.push_back(m);
  layers.push_back(k_out);
  std::uint64_t edges = 0;
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    edges += layers[l] * layers[l + 1];
  }
  return edges;
}

void message_counts(Check& c) {
  c.require(messages_hpl(1'000'000) == 2'000'000, "messages_hpl(1e6) == 2e6");
  for (std::uint64_t m : {1ull, 7ull, 512ull, 1'000'000ull}) {
    c.require(messages_hpcg(m, 1) == messages_hpl(m), "hpcg at 1 iteration == hpl");
  }
  c.require(messages_ann(AnnTopology{1, 1000, 2, 1}).total == 1'002'000,
            "messages_ann(1,1000,2,1) == 1,002,000");
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint64_t m = 1; m <= 6; ++m) {
      for (std::uint64_t h = 1; h <= 6; ++h) {
        for (std::uint64_t k = 1; k <= 6; ++k) {
          c.require(messages_ann(AnnTopology{n, m, h, k}).total ==
                        enumerate_layered_edges(n, m, h, k),
                    "brute-force edge enumeration");
        }
      }
    }
  }
}

void brain_degradation(Check& c) {
  BrainParams p;
  p.fanout = 1e4;
  p.t_comp = 1e-8;
  p.t_comm = 1e-6;  // 100x the computation time
  const BrainProfile full = brain_profile(p);
  c.require(full.efficiency_ratio >= 0.5e-6 && full.efficiency_ratio <= 2e-6,
            "fanout 1e4 ratio in [0.5e-6, 2e-6]");

  BrainParams q = p;
  q.fanout = 1e3;
  const double r3 = brain_profile(q).efficiency_ratio;
  c.require(r3 >= 0.5e-5 && r3 <= 2e-5, "fanout 1e3 ratio near 1e-5");

  const BrainProfile reduced = hierarchic_reduction(full, 100.0);
  const double improvement = reduced.implied_gain / full.implied_gain;
  c.within(improvement, 100.0, 1.0, "hierarchic gain improvement 100 +/- 1%");
}

void class_rooflines_calibrated(Check& c) {
  const ClassRoofline hpl = roofline_for_class(WorkloadClass::hpl);
  const ClassRoofline hpcg = roofline_for_class(WorkloadClass::hpcg);
  const ClassRoofline brain = roofline_for_class(WorkloadClass::brain);
  c.within(hpl.gain / hpcg.gain, 200.0, 2.0, "HPL/HPCG gain ratio 200 +/- 1%");
  c.require(brain.gain <= 1.1e4, "brain cap <= 1.1e4");
  c.require(hpl.gain > hpcg.gain && hpl.gain > brain.gain,
            "HPL roofline above the communication-heavier classes");
}

void mixed_precision(Check& c) {
  const double sp = precision_speedup(8.0, 1.0, 0.25);  // T_comm = T_c/8
  c.within(sp, 3.0, 0.003, "predicted total speedup 3.000 +/- 0.1%");
  c.within(hpl_ai_equivalence(445.0, 148.6), 2.994, 0.001,
           "hpl_ai_equivalence(445, 148.6) = 2.994 +/- 0.001");
}

void timeline_simulator(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n : {2ul, 64ul, 4096ul, 100000ul}) {
    const TimelineResult r = simulate(TimelineConfig::uniform(n, 0.5));
    c.require(r.speedup == static_cast<double>(n), "zero-overhead speedup exactly n");
    c.require(r.empirical_alpha && *r.empirical_alpha == 1.0,
              "zero-overhead alpha exactly 1");
  }

  TimelineConfig walk = TimelineConfig::uniform(2, 1.0);
  walk.t_addr = 0.5;
  const TimelineResult hand = simulate(walk);
  c.require(hand.total_time == 2.0, "hand-walked total_time == 2.0 exactly");
  c.require(hand.empirical_alpha && *hand.empirical_alpha == 0.0,
            "hand-walked alpha == 0 exactly");

  std::mt19937 rng(123456);
  std::uniform_int_distribution<std::size_t> n_dist(1, 32);
  std::uniform_real_distribution<double> t_dist(0.0, 1.0);
  bool pipelined_wins = true;
  for (int trial = 0; trial < 1000; ++trial) {
    TimelineConfig cfg;
    cfg.n_workers = n_dist(rng);
    cfg.t_init_sw = t_dist(rng);
    cfg.t_addr = t_dist(rng);
    cfg.t_collect = t_dist(rng);
    cfg.pd_out.resize(cfg.n_workers);
    cfg.pd_back.resize(cfg.n_workers);
    cfg.t_compute.resize(cfg.n_workers);
    for (std::size_t i = 0; i < cfg.n_workers; ++i) {
      cfg.pd_out[i] = t_dist(rng);
      cfg.pd_back[i] = t_dist(rng);
      cfg.t_compute[i] = t_dist(rng) + 0.01;
    }
    cfg.dispatch_mode = DispatchMode::pipelined;
    const double pipelined = simulate(cfg).total_time;
    cfg.dispatch_mode = DispatchMode::blocking;
    if (!(pipelined <= simulate(cfg).total_time)) pipelined_wins = false;
  }
  c.require(pipelined_wins, "pipelined <= blocking on 1000 random configs");

  const MachineSpec m;
  for (std::size_t n : {64ul, 4096ul, 100000ul}) {
    const CrossCheckReport rep = compare_to_analytic(m, WorkloadSpec::hpl_like(), n);
    c.require(rep.payload_dominated, "cross-check regime is payload dominated");
    c.require(rep.relative_difference <= 0.05, "simulated vs ledger within 5%");
  }
  c.require(seconds_since(t0) < 10.0, "runtime < 10 s");
}

void ingestion(Check& c) {
  const ParseReport fixture =
      parse_csv_file(PARSCALE_SOURCE_DIR "/data/top500_fixture_2019_11.csv");
  c.require(fixture.issues.empty(), "fixture parses clean");
  c.require(!fixture.records.empty(), "fixture has records");

  bool found_10m = false;
  for (const MachineRecord& r : fixture.records) {
    const DerivedMetrics d = derive(r);
    if (r.cores >= 10'000'000) {
      found_10m = true;
      c.require(d.one_minus_alpha_hpl && *d.one_minus_alpha_hpl >= 1e-8 &&
                    *d.one_minus_alpha_hpl <= 1e-7,
                "10M-core fixture 1-alpha in [1e-8, 1e-7]");
    }
    c.require(std::abs(d.e_hpl * r.rpeak - r.rmax) / r.rmax <= 1e-12,
              "e_hpl * rpeak == rmax");
    if (d.alpha_hpl) {
      const double e = efficiency(AmdahlPoint::from_serial_fraction(
          *d.one_minus_alpha_hpl, static_cast<double>(r.cores)));
      c.require(std::abs(e - d.e_hpl) / d.e_hpl <= 1e-9,
                "derive/efficiency roundtrip within 1e-9");
    }
  }
  c.require(found_10m, "fixture includes a 10M-core machine");

  const ParseReport mixed = parse_csv_string(
      "rank,name,cores,rmax,rpeak\n"
      "1,Good,64,1.0,2.0\n"
      "2,Bad,64,3.0,2.0\n"
      "3,Also Good,128,1.5,2.0\n");
  c.require(mixed.records.size() == 2 && mixed.issues.size() == 1 &&
                mixed.issues[0].line == 3,
            "parse-reject-parse isolation");
}

void accelerator_monotonicities(Check& c) {
  const MachineSpec m;
  const WorkloadSpec w = WorkloadSpec::hpl_like();
  Accelerator a;
  a.compute_speedup = 5.0;
  a.t_copy = 4.0 * m.t_addr;
  const auto [acc, w2] = apply_accelerator(m, w, a);

  const std::vector<double> grid = make_log_grid(1024.0, 2.5e8, 4);
  const std::vector<SerialLedger> base = sweep(m, w, grid);
  const std::vector<SerialLedger> boosted = sweep(acc, w2, grid);

  double prev_ratio = 1e300;
  bool rmax_up = true, eff_down = true, ratio_monotone = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(boosted[i].r_max > base[i].r_max)) rmax_up = false;
    if (!(boosted[i].efficiency < base[i].efficiency)) eff_down = false;
    const double ratio = boosted[i].r_max / base[i].r_max;
    if (ratio > prev_ratio * (1.0 + 1e-12)) ratio_monotone = false;
    prev_ratio = ratio;
  }
  c.require(rmax_up, "r_max strictly higher at every n");
  c.require(eff_down, "efficiency strictly lower at every n");
  c.require(ratio_monotone, "gain ratio non-increasing in n");
  c.require(boosted.front().r_max / base.front().r_max > 4.0, "gain ratio > 4 at small n");
  const double tail = boosted.back().r_max / base.back().r_max;
  c.require(tail > 1.9 && tail < 2.5, "gain ratio near 2 at large n");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "algebra roundtrips and exact efficiency/speedup identity", algebra_roundtrips},
      {2, "speedup meets the 1/(1-alpha) roofline at N=1e9", roofline_asymptote},
      {3, "strong-scaling sweep peaks then declines at the analytic point",
       peak_then_decline},
      {4, "5000-cycle grid period shifts the peak down 2+ orders", grid_time_shift},
      {5, "message counts exact, validated by edge enumeration", message_counts},
      {6, "brain fan-out degradation and hierarchic recovery", brain_degradation},
      {7, "class rooflines ordered and calibrated", class_rooflines_calibrated},
      {8, "mixed-precision speedup and HPL-AI equivalence", mixed_precision},
      {9, "timeline simulator exactness, ordering and cross-validation",
       timeline_simulator},
      {10, "ingestion of the machine-list fixture", ingestion},
      {11, "accelerator raises r_max, lowers efficiency, gain 4 -> 2",
       accelerator_monotonicities},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    cr.body(check);
    if (check.failures.empty()) {
      std::printf("PASS  %2d  %s\n", cr.id, cr.title);
    } else {
      ++failed;
      std::printf("FAIL  %2d  %s\n", cr.id, cr.title);
      for (const std::string& f : check.failures) {
        std::printf("          - %s\n", f.c_str());
      }
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

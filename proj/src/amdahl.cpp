#include "parscale/amdahl.hpp"

#include <cmath>

namespace parscale {

namespace {

void check_units(double n) {
  if (!(n >= 1.0)) {
    throw std::invalid_argument("unit count must be >= 1");
  }
}

void check_divisible_units(double n) {
  if (!(n >= 2.0)) {
    throw std::invalid_argument("empirical alpha undefined for a single unit");
  }
}

}  // namespace

AmdahlPoint::AmdahlPoint(double alpha, double n) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0,1]");
  }
  check_units(n);
  serial_ = 1.0 - alpha;
  n_ = n;
}

AmdahlPoint AmdahlPoint::from_serial_fraction(double serial_fraction, double n) {
  if (!(serial_fraction >= 0.0 && serial_fraction <= 1.0)) {
    throw std::invalid_argument("serial fraction must lie in [0,1]");
  }
  check_units(n);
  AmdahlPoint p;
  p.serial_ = serial_fraction;
  p.n_ = n;
  return p;
}

void RelativisticParams::validate() const {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (!(g > 0.0)) throw std::invalid_argument("g must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
  if (!(n_optical >= 1.0)) throw std::invalid_argument("n_optical must be >= 1");
}

double efficiency(const AmdahlPoint& p) {
  // 1 / (n(1-a) + a) rewritten as 1 / (1 + (n-1)s): exact at the corner
  // cases s = 0 and n = 1, and free of cancellation for small s.
  return 1.0 / (1.0 + (p.units() - 1.0) * p.serial_fraction());
}

double speedup(const AmdahlPoint& p) {
  return p.units() * efficiency(p);
}

double alpha_from_speedup(double measured_speedup, double n) {
  check_divisible_units(n);
  if (!(measured_speedup > 0.0)) {
    throw std::invalid_argument("speedup must be positive");
  }
  if (measured_speedup > n) {
    throw std::invalid_argument("super-linear speedup outside model");
  }
  // Grouped as integer-valued products where possible so that the ideal
  // cases S = 1 and S = n come out as exactly 0 and 1.
  return (n * (measured_speedup - 1.0)) / ((n - 1.0) * measured_speedup);
}

double alpha_from_efficiency(double eff, double n) {
  check_divisible_units(n);
  if (!(eff > 0.0 && eff <= 1.0)) {
    throw std::invalid_argument("efficiency must lie in (0,1]");
  }
  if (eff * n < 1.0) {
    throw std::invalid_argument("efficiency below serial floor");
  }
  return (n - 1.0 / eff) / (n - 1.0);
}

double serial_fraction_from_efficiency(double eff, double n) {
  check_divisible_units(n);
  if (!(eff > 0.0 && eff <= 1.0)) {
    throw std::invalid_argument("efficiency must lie in (0,1]");
  }
  if (eff * n < 1.0) {
    throw std::invalid_argument("efficiency below serial floor");
  }
  return (1.0 / eff - 1.0) / (n - 1.0);
}

PerfFigure perf_total(const AmdahlPoint& p, double p_single) {
  if (!(p_single > 0.0)) {
    throw std::invalid_argument("per-unit performance must be > 0");
  }
  return PerfFigure{p_single * speedup(p), PerfKind::payload};
}

PerfFigure perf_nominal(double n, double p_single) {
  check_units(n);
  if (!(p_single > 0.0)) {
    throw std::invalid_argument("per-unit performance must be > 0");
  }
  return PerfFigure{n * p_single, PerfKind::nominal};
}

double perf_gain_limit(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0,1]");
  }
  if (alpha == 1.0) {
    throw std::invalid_argument("unbounded gain at alpha = 1");
  }
  return 1.0 / (1.0 - alpha);
}

double perf_gain_limit_from_serial(double serial_fraction) {
  if (!(serial_fraction > 0.0 && serial_fraction <= 1.0)) {
    throw std::invalid_argument("unbounded gain at serial fraction 0");
  }
  return 1.0 / serial_fraction;
}

double relativistic_speed(const RelativisticParams& p) {
  p.validate();
  const double x = p.t * p.g;
  if (x == 0.0) return 0.0;
  const double v_max = p.c / p.n_optical;
  // x / sqrt(1 + (x/v_max)^2) = x * v_max / hypot(x, v_max)
  return v_max * (x / std::hypot(x, v_max));
}

}  // namespace parscale

#pragma once

#include <stdexcept>

namespace parscale {

// ---------------------------------------------------------------------------
// Core algebra of parallelized sequential processing: speedup, efficiency,
// empirical parallel fraction, saturating total performance and the
// performance-gain roofline.
//
// All formulas are evaluated in terms of the serial-only fraction
// s = 1 - alpha.  At large machine scales s is 1e-7 or smaller, and forming
// it by subtracting alpha from 1 destroys most of its significant digits, so
// the point type stores s and derives alpha on demand.  The unit count is
// carried as a real number: sweeps evaluate the formulas on log grids that
// do not land on integers.
// ---------------------------------------------------------------------------

class AmdahlPoint {
 public:
  // alpha in [0,1], n >= 1.
  AmdahlPoint(double alpha, double n);

  // Builds a point directly from the serial-only fraction 1 - alpha,
  // preserving its full precision.
  static AmdahlPoint from_serial_fraction(double serial_fraction, double n);

  double alpha() const { return 1.0 - serial_; }
  double serial_fraction() const { return serial_; }
  double units() const { return n_; }

 private:
  AmdahlPoint() = default;

  double serial_ = 0.0;  // 1 - alpha
  double n_ = 1.0;
};

enum class PerfKind { nominal, payload };

// A performance figure in flop/s.  `nominal` is the classic sum of the
// per-unit figures; `payload` is what the workload actually achieves.
struct PerfFigure {
  double value = 0.0;  // flop/s
  PerfKind kind = PerfKind::nominal;
};

// Inputs of the relativistic velocity-addition analogue used for
// correction-term illustration plots.
struct RelativisticParams {
  double t;                  // elapsed time, s (>= 0)
  double g;                  // acceleration, m/s^2 (> 0)
  double c;                  // limiting speed, m/s (> 0)
  double n_optical = 1.0;    // refractive index (>= 1); saturation is c/n

  void validate() const;
};

/// Efficiency E(n, alpha) = 1 / (1 + (n-1)(1-alpha)), the ratio of payload
/// to nominal performance.  Equals 1 at alpha = 1 and 1/n at alpha = 0.
double efficiency(const AmdahlPoint& p);

/// Speedup S(n, alpha) = n * E(n, alpha); defined as exactly that product so
/// the pair of functions stays consistent to the last bit.
double speedup(const AmdahlPoint& p);

/// Empirical parallel fraction recovered from a measured speedup:
///   alpha = n (S - 1) / ((n - 1) S).
/// Requires n >= 2 (the expression divides by n - 1) and S <= n.  A speedup
/// below 1 yields a negative alpha: the measurement lies outside the model's
/// validity, which callers may want to report rather than hide.
double alpha_from_speedup(double measured_speedup, double n);

/// Parallel fraction implied by an efficiency: alpha = (n - 1/E) / (n - 1).
/// Requires 1/n <= E <= 1 and n >= 2.
double alpha_from_efficiency(double eff, double n);

/// Serial-only fraction implied by an efficiency, in the cancellation-free
/// form (1/E - 1) / (n - 1).  Preferred over 1 - alpha_from_efficiency()
/// whenever the result is small.
double serial_fraction_from_efficiency(double eff, double n);

/// Payload performance of n units of p_single flop/s each:
///   n * p_single / (n (1-alpha) + alpha) = p_single * S(n, alpha).
/// Bounded above by p_single / (1-alpha) for alpha < 1.
PerfFigure perf_total(const AmdahlPoint& p, double p_single);

/// Classic (uncorrected) addition of performance: n * p_single.
PerfFigure perf_nominal(double n, double p_single);

/// Asymptotic roofline of the speedup, 1 / (1-alpha).  alpha = 1 is an
/// error: the gain is unbounded.
double perf_gain_limit(double alpha);

/// Roofline expressed through the serial fraction directly: 1 / s.
double perf_gain_limit_from_serial(double serial_fraction);

/// v(t) = t*g / sqrt(1 + (t*g / (c/n))^2): the classic t*g for small t,
/// saturating below c/n as t grows.  Evaluated overflow-safely via hypot.
double relativistic_speed(const RelativisticParams& p);

}  // namespace parscale

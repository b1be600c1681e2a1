// Correlation and error aggregation.
//
// The two-tailed p-value for Pearson's r uses the exact Student-t route:
// p = I_x(df/2, 1/2) with x = df/(df + t^2), where I is the regularized
// incomplete beta function evaluated by continued fraction to an absolute
// error below 1e-9. No statistics dependency is involved; tests validate
// the kernel against a numeric integration oracle of the t density.

#ifndef LCEVAL_STATS_HPP
#define LCEVAL_STATS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lceval::stats {

inline constexpr double kSignificanceLevel = 0.05;

struct CorrelationResult {
  double r = 0.0;
  double p_two_tailed = 1.0;
  long n = 0;
  double t_statistic = 0.0;

  bool significant() const { return p_two_tailed < kSignificanceLevel; }
};

/// Throws Error(InsufficientData) for n < 3 and Error(ZeroVariance) when
/// either input is constant. p = 0 is declared when |r| = 1 and n > 2.
CorrelationResult pearson(std::span<const double> xs,
                          std::span<const double> ys);

/// Two-tailed survival probability of the Student-t distribution.
/// Monotone decreasing in |t|; exactly 1 at t = 0.
double student_t_two_tailed_p(double t, int df);

/// Regularized incomplete beta I_x(a, b); exposed for the oracle tests.
double regularized_incomplete_beta(double a, double b, double x);

struct MaeResult {
  double mae = 0.0;
  long pairs_used = 0;
  long excluded = 0;  // pairwise deletion count
};

/// Throws Error(NoPairs) when no pair survives.
MaeResult mean_abs_error(std::span<const double> truth,
                         std::span<const double> reported);

/// Pairwise deletion: a pair is excluded when either side is missing.
MaeResult mean_abs_error(std::span<const std::optional<double>> truth,
                         std::span<const std::optional<double>> reported);

}  // namespace lceval::stats

#endif  // LCEVAL_STATS_HPP

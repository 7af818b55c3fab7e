#pragma once

#include <span>
#include <vector>

namespace qaoapca {

/// Largest effective sample size for which p-values come from the exact null
/// distribution; above it a tie- and continuity-corrected normal approximation
/// is used.
inline constexpr int kExactSignedRankLimit = 25;

/// Significance threshold used in reports.
inline constexpr double kSignificanceLevel = 0.01;

/// Index-aligned measurements of two methods on the same instances.
struct PairedSample {
  std::vector<double> a;
  std::vector<double> b;

  void validate() const;
};

enum class PValueMethod { automatic, exact, normal };

struct SignedRankResult {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double w_statistic = 0.0;  ///< min(w_plus, w_minus)
  double p_value = 1.0;      ///< two-tailed
  double rbc = 0.0;          ///< (w_plus - w_minus) / (w_plus + w_minus)
  int n_effective = 0;       ///< pairs left after dropping zero differences
  bool exact = false;
  bool degenerate = false;   ///< no nonzero differences
};

/// Two-tailed Wilcoxon signed-rank test on d = a - b. Zero differences are
/// dropped and tied |d| receive average ranks.
SignedRankResult wilcoxon_signed_rank(const PairedSample& s,
                                      PValueMethod method = PValueMethod::automatic);

/// Matched-pairs rank-biserial correlation; 0 when every difference is zero.
double rank_biserial(const PairedSample& s);

/// Midpoint median. Throws ValidationError on empty input.
double median(std::span<const double> v);

}  // namespace qaoapca

#include "qaoapca/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "qaoapca/error.hpp"

namespace qaoapca {

void PairedSample::validate() const {
  if (a.size() != b.size()) {
    throw ValidationError("paired sample sizes differ (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw ValidationError("paired sample is empty");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw ValidationError("paired sample has a non-finite entry at index " + std::to_string(i));
    }
  }
}

namespace {

struct SignedRanks {
  // Ranks are kept doubled so that average ranks of ties stay integral.
  std::vector<std::int64_t> doubled;
  std::vector<bool> positive;
  std::int64_t doubled_plus = 0;
  std::int64_t doubled_minus = 0;
  double tie_term = 0.0;  // sum over tie groups of t^3 - t
};

SignedRanks rank_differences(const PairedSample& s) {
  std::vector<double> d;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    const double diff = s.a[i] - s.b[i];
    if (diff != 0.0) d.push_back(diff);
  }
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return std::abs(d[x]) < std::abs(d[y]); });

  SignedRanks r;
  r.doubled.assign(d.size(), 0);
  r.positive.assign(d.size(), false);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
    // 1-based positions i+1 .. j+1 share the average rank (i + j + 2) / 2.
    const auto doubled_rank = static_cast<std::int64_t>(i + j + 2);
    const auto t = static_cast<double>(j - i + 1);
    r.tie_term += t * t * t - t;
    for (std::size_t k = i; k <= j; ++k) {
      const std::size_t idx = order[k];
      r.doubled[idx] = doubled_rank;
      r.positive[idx] = d[idx] > 0.0;
      (d[idx] > 0.0 ? r.doubled_plus : r.doubled_minus) += doubled_rank;
    }
    i = j + 1;
  }
  return r;
}

// P(T <= w) * 2 under the null, by counting sign patterns with a subset-sum
// table over doubled ranks.
double exact_two_tailed(const SignedRanks& r, std::int64_t doubled_w) {
  const std::int64_t total = std::accumulate(r.doubled.begin(), r.doubled.end(), std::int64_t{0});
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(total) + 1, 0);
  ways[0] = 1;
  std::int64_t reach = 0;
  for (const std::int64_t rank : r.doubled) {
    for (std::int64_t s = reach; s >= 0; --s) {
      ways[static_cast<std::size_t>(s + rank)] += ways[static_cast<std::size_t>(s)];
    }
    reach += rank;
  }
  std::uint64_t at_most = 0;
  for (std::int64_t s = 0; s <= doubled_w; ++s) at_most += ways[static_cast<std::size_t>(s)];
  const double patterns = std::ldexp(1.0, static_cast<int>(r.doubled.size()));
  return std::min(1.0, 2.0 * static_cast<double>(at_most) / patterns);
}

double normal_two_tailed(const SignedRanks& r, double w) {
  const auto n = static_cast<double>(r.doubled.size());
  const double mean = n * (n + 1.0) / 4.0;
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - r.tie_term / 48.0;
  if (!(var > 0.0)) return 1.0;
  const double z = std::max(0.0, std::abs(w - mean) - 0.5) / std::sqrt(var);
  return std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

}  // namespace

SignedRankResult wilcoxon_signed_rank(const PairedSample& s, PValueMethod method) {
  s.validate();
  const SignedRanks r = rank_differences(s);

  SignedRankResult out;
  out.n_effective = static_cast<int>(r.doubled.size());
  if (out.n_effective == 0) {
    out.degenerate = true;
    out.p_value = 1.0;
    out.rbc = 0.0;
    return out;
  }
  out.w_plus = static_cast<double>(r.doubled_plus) / 2.0;
  out.w_minus = static_cast<double>(r.doubled_minus) / 2.0;
  out.w_statistic = std::min(out.w_plus, out.w_minus);
  out.rbc = (out.w_plus - out.w_minus) / (out.w_plus + out.w_minus);

  const bool exact = method == PValueMethod::exact ||
                     (method == PValueMethod::automatic && out.n_effective <= kExactSignedRankLimit);
  out.exact = exact;
  if (exact && out.n_effective > 60) {
    throw ValidationError("exact signed-rank p-values support at most 60 nonzero differences");
  }
  out.p_value = exact ? exact_two_tailed(r, std::min(r.doubled_plus, r.doubled_minus))
                      : normal_two_tailed(r, out.w_statistic);
  return out;
}

double rank_biserial(const PairedSample& s) { return wilcoxon_signed_rank(s, PValueMethod::normal).rbc; }

double median(std::span<const double> v) {
  if (v.empty()) throw ValidationError("median of an empty sequence");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return sorted[mid];
  return (sorted[mid - 1] + sorted[mid]) / 2.0;
}

}  // namespace qaoapca

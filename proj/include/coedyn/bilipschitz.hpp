#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "coedyn/errors.hpp"

namespace coedyn {

/// Window classification of an injective map f: Z -> Z against the affine
/// dichotomy f(x) = sign*x + const + r(x).  The report certifies behaviour on
/// the sampled window only; it is a finite witness, not a proof about the
/// full map.
struct BiLipschitzReport {
  int sign = +1;                 // +1 or -1
  std::int64_t constant = 0;     // median of f(x) - sign*x over the window
  std::int64_t defect_bound = 0; // max |f(x) - sign*x - constant|

  friend bool operator==(const BiLipschitzReport&, const BiLipschitzReport&) = default;
};

struct BiLipschitzOptions {
  // Both orientations exceeding this deviation range while differing by less
  // than 1 is reported as ambiguous rather than guessed.
  std::int64_t ambiguity_threshold = 8;
};

/// samples[i] = f(i - N) for i = 0..2N.
inline BiLipschitzReport bilipschitz_classify(std::span<const std::int64_t> samples,
                                              std::int64_t window,
                                              BiLipschitzOptions opts = {}) {
  if (window < 1) throw std::invalid_argument("bilipschitz_classify: window must be >= 1");
  if (samples.size() != static_cast<std::size_t>(2 * window + 1))
    throw std::invalid_argument("bilipschitz_classify: samples must cover [-N, N]");
  {
    std::vector<std::int64_t> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("bilipschitz_classify: samples are not injective");
  }

  auto residuals = [&](int sign) {
    std::vector<std::int64_t> r(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const std::int64_t x = static_cast<std::int64_t>(i) - window;
      r[i] = samples[i] - sign * x;
    }
    return r;
  };
  auto range_of = [](const std::vector<std::int64_t>& r) {
    auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    return *hi - *lo;
  };

  std::vector<std::int64_t> r_plus = residuals(+1);
  std::vector<std::int64_t> r_minus = residuals(-1);
  const std::int64_t range_plus = range_of(r_plus);
  const std::int64_t range_minus = range_of(r_minus);

  if (std::min(range_plus, range_minus) > opts.ambiguity_threshold &&
      range_plus == range_minus) {
    throw AmbiguousOrientation("both orientations exceed the deviation threshold " +
                               std::to_string(opts.ambiguity_threshold) +
                               " with equal range " + std::to_string(range_plus));
  }

  const int sign = range_plus <= range_minus ? +1 : -1;
  std::vector<std::int64_t>& r = sign > 0 ? r_plus : r_minus;
  std::vector<std::int64_t> sorted = r;
  std::sort(sorted.begin(), sorted.end());
  const std::int64_t constant = sorted[(sorted.size() - 1) / 2];  // lower median
  std::int64_t defect = 0;
  for (std::int64_t v : r) defect = std::max(defect, std::abs(v - constant));
  return {sign, constant, defect};
}

}  // namespace coedyn

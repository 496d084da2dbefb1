#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace coedyn {

using BigInt = boost::multiprecision::cpp_int;

/// A divisibility chain n_1 | n_2 | ... encoded by its base n_1 and the
/// multiplier sequence m_i (n_{i+1} = n_i * m_i), which walks a finite prefix
/// and then cycles a nonempty tail forever.  All multipliers are >= 2, so the
/// chain is strictly increasing; the eventually periodic tail makes
/// sup-over-levels questions decidable.
class DivisibilityChain {
 public:
  DivisibilityChain(std::uint64_t base, std::vector<std::uint64_t> prefix,
                    std::vector<std::uint64_t> tail)
      : base_(base), prefix_(std::move(prefix)), tail_(std::move(tail)) {
    if (base_ == 0) throw std::invalid_argument("chain base must be positive");
    if (tail_.empty()) throw std::invalid_argument("chain tail must be nonempty");
    for (auto m : prefix_)
      if (m < 2) throw std::invalid_argument("chain multipliers must be >= 2");
    for (auto m : tail_)
      if (m < 2) throw std::invalid_argument("chain multipliers must be >= 2");
  }

  std::uint64_t base() const { return base_; }
  const std::vector<std::uint64_t>& prefix() const { return prefix_; }
  const std::vector<std::uint64_t>& tail() const { return tail_; }

  /// m_i for i >= 1: prefix first, then the tail cyclically.
  std::uint64_t multiplier(int i) const {
    if (i < 1) throw std::invalid_argument("multiplier index starts at 1");
    const std::size_t idx = static_cast<std::size_t>(i) - 1;
    if (idx < prefix_.size()) return prefix_[idx];
    return tail_[(idx - prefix_.size()) % tail_.size()];
  }

  /// n_i as an exact integer.
  BigInt nth_modulus(int i) const {
    if (i < 1) throw std::invalid_argument("modulus index starts at 1");
    BigInt n = base_;
    for (int j = 1; j < i; ++j) n *= multiplier(j);
    return n;
  }

  /// Exact p-adic valuation of n_i.
  std::int64_t ord_p(int p, int i) const {
    std::int64_t v = valuation(base_, p);
    for (int j = 1; j < i; ++j) v += valuation(multiplier(j), p);
    return v;
  }

  /// sup_i ord(p, n_i) = infinity iff p divides some tail multiplier;
  /// otherwise the valuation is eventually constant.
  bool sup_ord_infinite(int p) const {
    for (auto m : tail_)
      if (m % static_cast<std::uint64_t>(p) == 0) return true;
    return false;
  }

  /// Total p-adic growth available strictly above level j, i.e.
  /// sup_k ord(p, n_k) - ord(p, n_j).  nullopt means unbounded.
  std::optional<std::int64_t> ord_growth_above(int p, int j) const {
    if (sup_ord_infinite(p)) return std::nullopt;
    std::int64_t v = 0;
    for (std::size_t idx = static_cast<std::size_t>(j); idx <= prefix_.size(); ++idx)
      v += valuation(multiplier(static_cast<int>(idx)), p);
    return v;
  }

  friend bool operator==(const DivisibilityChain&, const DivisibilityChain&) = default;

  static std::int64_t valuation(std::uint64_t n, int p) {
    std::int64_t v = 0;
    while (n % static_cast<std::uint64_t>(p) == 0) {
      n /= static_cast<std::uint64_t>(p);
      ++v;
    }
    return v;
  }

 private:
  std::uint64_t base_;
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> tail_;
};

inline DivisibilityChain dyadic_chain() { return DivisibilityChain(2, {}, {2}); }
inline DivisibilityChain power_chain(std::uint64_t q) { return DivisibilityChain(q, {}, {q}); }

}  // namespace coedyn

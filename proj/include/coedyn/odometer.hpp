#pragma once

#include <cstdint>
#include <stdexcept>

#include "coedyn/chain.hpp"

namespace coedyn {

/// Finite truncation of the odometer at level L of a divisibility chain: the
/// state space is Z/n_L and the generator acts by x -> x + 1.  Moduli grow
/// exponentially in L, so construction requires n_L to fit a machine word;
/// exact chain arithmetic at arbitrary levels stays on DivisibilityChain.
class OdometerModel {
 public:
  OdometerModel(DivisibilityChain chain, int level)
      : chain_(std::move(chain)), level_(level) {
    if (level_ < 1) throw std::invalid_argument("model level starts at 1");
    const BigInt m = chain_.nth_modulus(level_);
    if (m > BigInt(kMaxModulus))
      throw std::invalid_argument("model modulus exceeds the enumerable bound");
    modulus_ = m.convert_to<std::uint64_t>();
  }

  const DivisibilityChain& chain() const { return chain_; }
  int level() const { return level_; }
  std::uint64_t modulus() const { return modulus_; }

  /// n_i as a machine word, for i <= level.
  std::uint64_t level_modulus(int i) const {
    if (i < 1 || i > level_) throw std::invalid_argument("level index out of range");
    return chain_.nth_modulus(i).convert_to<std::uint64_t>();
  }

  /// x -> (x + n) mod n_L; a bijection for each n, with
  /// step(step(x, a), b) = step(x, a + b).
  std::uint64_t step(std::uint64_t x, std::int64_t n) const {
    const std::int64_t m = static_cast<std::int64_t>(modulus_);
    const std::uint64_t shift = static_cast<std::uint64_t>(((n % m) + m) % m);
    return (x + shift) % modulus_;
  }

  /// Projection onto the level-i quotient: x mod n_i.  Commutes with step.
  std::uint64_t project(std::uint64_t x, int i) const { return x % level_modulus(i); }

  friend bool operator==(const OdometerModel&, const OdometerModel&) = default;

 private:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  DivisibilityChain chain_;
  int level_;
  std::uint64_t modulus_ = 0;
};

}  // namespace coedyn

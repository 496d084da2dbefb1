#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "coedyn/chain.hpp"
#include "coedyn/dihedral.hpp"
#include "coedyn/errors.hpp"
#include "coedyn/odometer.hpp"

namespace coedyn {

enum class Coset { Z, TZ };

/// The coset cocycle of the induced action for the lift L(Z) = e, L(tZ) = t:
/// delta(g, g'Z) = L(g g'Z)^-1 g L(g'Z).
inline DihedralElement delta_cocycle(DihedralElement g, Coset coset) {
  const DihedralElement lift_src = coset == Coset::Z ? kDihedralIdentity : kDihedralT;
  const bool dst_reflected = (coset == Coset::TZ) != g.reflection;
  const DihedralElement lift_dst = dst_reflected ? kDihedralT : kDihedralIdentity;
  return dmul(dinv(lift_dst), dmul(g, lift_src));
}

/// Finite model of a D_inf action.
///
/// Case I (reflection odometer): states Z/n_L, s acts by x -> x + 1 and t by
/// x -> -x; the sub Z-action is a single cycle.
///
/// Case II (induced action): two components (Z, x) and (tZ, x) indexed flat
/// as component * n_L + x; group elements act through the delta cocycle, so t
/// swaps the components and s moves them in opposite directions.  The base
/// forward map defaults to the odometer step and can be overridden by any
/// n_L-cycle to realize twisted second actions in tests.
class DinftyModel {
 public:
  enum class Kind { CaseI, CaseII };

  static DinftyModel case1(DivisibilityChain chain, int level) {
    OdometerModel base(std::move(chain), level);
    if (base.modulus() < 3) throw std::invalid_argument("Case I model needs n_L >= 3");
    return DinftyModel(Kind::CaseI, std::move(base), {});
  }

  static DinftyModel case2(DivisibilityChain chain, int level) {
    return DinftyModel(Kind::CaseII, OdometerModel(std::move(chain), level), {});
  }

  static DinftyModel case2_with_base_cycle(DivisibilityChain chain, int level,
                                           std::vector<std::uint64_t> forward) {
    OdometerModel base(std::move(chain), level);
    if (forward.size() != base.modulus())
      throw std::invalid_argument("base cycle must permute Z/n_L");
    return DinftyModel(Kind::CaseII, std::move(base), std::move(forward));
  }

  Kind kind() const { return kind_; }
  const OdometerModel& base() const { return base_; }
  std::uint64_t base_modulus() const { return base_.modulus(); }
  std::uint64_t state_count() const {
    return kind_ == Kind::CaseI ? base_.modulus() : 2 * base_.modulus();
  }

  int component(std::uint64_t state) const {
    return kind_ == Kind::CaseI ? 0 : static_cast<int>(state / base_.modulus());
  }
  std::uint64_t position(std::uint64_t state) const {
    return kind_ == Kind::CaseI ? state : state % base_.modulus();
  }
  std::uint64_t state_of(int component, std::uint64_t x) const {
    return kind_ == Kind::CaseI ? x : static_cast<std::uint64_t>(component) * base_.modulus() + x;
  }

  std::uint64_t base_forward(std::uint64_t x, std::int64_t n) const {
    if (forward_.empty()) return base_.step(x, n);
    std::uint64_t y = x;
    for (std::int64_t i = 0; i < (n >= 0 ? n : -n); ++i)
      y = n >= 0 ? forward_[y] : backward_[y];
    return y;
  }

  std::uint64_t act(DihedralElement g, std::uint64_t state) const {
    const std::uint64_t m = base_.modulus();
    if (kind_ == Kind::CaseI) {
      // s^k t^r sends x to k + (-1)^r x.
      const std::uint64_t y = g.reflection ? (m - state) % m : state;
      return base_.step(y, g.exponent);
    }
    const int comp = component(state);
    const Coset coset = comp == 0 ? Coset::Z : Coset::TZ;
    const DihedralElement d = delta_cocycle(g, coset);
    const int new_comp = comp ^ (g.reflection ? 1 : 0);
    return state_of(new_comp, base_forward(position(state), d.exponent));
  }

  std::uint64_t act_s(std::uint64_t state, std::int64_t n) const {
    return act({n, false}, state);
  }

  /// Elements acting trivially on every state form <s^kernel_exponent>.
  std::uint64_t kernel_exponent() const { return base_.modulus(); }

  friend bool operator==(const DinftyModel&, const DinftyModel&) = default;

 private:
  DinftyModel(Kind kind, OdometerModel base, std::vector<std::uint64_t> forward)
      : kind_(kind), base_(std::move(base)), forward_(std::move(forward)) {
    if (!forward_.empty()) {
      backward_.assign(forward_.size(), 0);
      std::vector<bool> seen(forward_.size(), false);
      for (std::uint64_t x = 0; x < forward_.size(); ++x) {
        if (forward_[x] >= forward_.size() || seen[forward_[x]])
          throw std::invalid_argument("base cycle is not a permutation");
        seen[forward_[x]] = true;
        backward_[forward_[x]] = x;
      }
      // Must be a single n_L-cycle so the per-component Z-action stays transitive.
      std::uint64_t y = 0;
      for (std::uint64_t i = 1; i < forward_.size(); ++i) {
        y = forward_[y];
        if (y == 0) throw std::invalid_argument("base cycle is not transitive");
      }
    }
    // Relation probe: t^2 = e and tst = s^-1 on every state.
    for (std::uint64_t x = 0; x < state_count(); ++x) {
      if (act(kDihedralT, act(kDihedralT, x)) != x)
        throw std::invalid_argument("model violates t^2 = e");
      const std::uint64_t lhs = act(kDihedralT, act(kDihedralS, act(kDihedralT, x)));
      if (lhs != act(dinv(kDihedralS), x))
        throw std::invalid_argument("model violates tst = s^-1");
    }
  }

  Kind kind_;
  OdometerModel base_;
  std::vector<std::uint64_t> forward_;
  std::vector<std::uint64_t> backward_;
};

inline DinftyModel build_case1_model(DivisibilityChain chain, int level) {
  return DinftyModel::case1(std::move(chain), level);
}
inline DinftyModel build_case2_model(DivisibilityChain chain, int level) {
  return DinftyModel::case2(std::move(chain), level);
}

/// Per-state stabilizer classification within the word window |exponent| <=
/// 2 n_L.  Elements of <s^{n_L}> act trivially on the truncation (the model
/// kernel) and reflections repeat mod n_L, so stabilizers are reported modulo
/// the kernel: each nontrivial one is a single reflection class {e, s^n t}.
struct FreenessReport {
  struct StateStabilizer {
    bool trivial = true;
    std::int64_t reflection_exponent = 0;  // canonical in [0, n_L)
  };

  std::vector<StateStabilizer> stabilizers;
  std::map<std::int64_t, std::vector<std::uint64_t>> fixed_states_per_reflection;
  bool free = true;  // no nontrivial stabilizer mod kernel
};

inline FreenessReport topological_freeness_sweep(const DinftyModel& model) {
  const std::uint64_t m = model.base_modulus();
  const std::int64_t window = 2 * static_cast<std::int64_t>(m);
  FreenessReport report;
  report.stabilizers.resize(model.state_count());

  for (std::uint64_t x = 0; x < model.state_count(); ++x) {
    std::vector<std::int64_t> reflections;
    for (std::int64_t a = -window; a <= window; ++a) {
      if (model.act({a, true}, x) == x) {
        const std::int64_t canonical = ((a % static_cast<std::int64_t>(m)) +
                                        static_cast<std::int64_t>(m)) %
                                       static_cast<std::int64_t>(m);
        if (std::find(reflections.begin(), reflections.end(), canonical) ==
            reflections.end())
          reflections.push_back(canonical);
      }
      // Nonzero translations fixing x must lie in the kernel <s^{n_L}>.
      if (a != 0 && model.act({a, false}, x) == x &&
          a % static_cast<std::int64_t>(m) != 0)
        throw VerificationFailed("translation outside the kernel fixes state " +
                                 std::to_string(x));
    }
    auto& entry = report.stabilizers[x];
    if (reflections.size() > 1)
      throw VerificationFailed("state " + std::to_string(x) +
                               " is fixed by more than one reflection class");
    if (!reflections.empty()) {
      entry.trivial = false;
      entry.reflection_exponent = reflections[0];
      report.fixed_states_per_reflection[reflections[0]].push_back(x);
      report.free = false;
    }
  }
  return report;
}

}  // namespace coedyn

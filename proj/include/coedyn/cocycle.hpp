#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "coedyn/chain.hpp"
#include "coedyn/errors.hpp"
#include "coedyn/finite_group.hpp"
#include "coedyn/odometer.hpp"

namespace coedyn {

/// A cocycle for the odometer Z-action with values in a finite group K,
/// represented by its generator slice f = c(1, .) as a table at level j and
/// extended to all (N, x) through the cocycle identity.
///
/// This table form is fully general: a continuous map from the profinite
/// limit into a discrete group factors through some finite quotient Z/n_j,
/// so "continuous cocycle" and "level table" coincide.  That identification
/// is the central modeling decision of the whole library.
struct LevelCocycle {
  std::shared_ptr<const FiniteGroupTable> target;
  int level = 1;
  std::vector<int> table;

  LevelCocycle(std::shared_ptr<const FiniteGroupTable> K, int j, std::vector<int> f)
      : target(std::move(K)), level(j), table(std::move(f)) {
    if (!target) throw std::invalid_argument("cocycle needs a target group");
    if (level < 1) throw std::invalid_argument("cocycle level starts at 1");
    if (table.empty()) throw std::invalid_argument("cocycle table is empty");
    for (int v : table)
      if (v < 0 || v >= target->order())
        throw std::invalid_argument("cocycle table entry out of range");
  }

  int f(std::uint64_t x) const { return table[x % table.size()]; }

  static LevelCocycle trivial(std::shared_ptr<const FiniteGroupTable> K, int j,
                              std::size_t length) {
    return LevelCocycle(K, j, std::vector<int>(length, K->identity()));
  }
};

inline void require_compatible(const LevelCocycle& c, const OdometerModel& model) {
  if (model.level() < c.level)
    throw LevelMismatch("model level " + std::to_string(model.level()) +
                        " below cocycle level " + std::to_string(c.level));
  if (model.level_modulus(c.level) != c.table.size())
    throw LevelMismatch("cocycle table length does not match the level modulus");
}

/// c(N, x) via the cocycle identity: c(0, x) = e, c(N+1, x) = f(T^N x) c(N, x),
/// c(-N, x) = c(N, T^-N x)^-1.
inline int evaluate(const LevelCocycle& c, const OdometerModel& model, std::int64_t N,
                    std::uint64_t x) {
  require_compatible(c, model);
  const FiniteGroupTable& K = *c.target;
  if (N >= 0) {
    int acc = K.identity();
    for (std::int64_t i = 0; i < N; ++i) acc = K.mul(c.f(model.step(x, i)), acc);
    return acc;
  }
  return K.inv(evaluate(c, model, -N, model.step(x, N)));
}

/// Checks c(n1 + n2, x) = c(n1, T^{n2} x) c(n2, x) for all |n1|, |n2| <= window
/// and all states, against an arbitrary evaluator.  The evaluator overload
/// exists so corrupted evaluation tables can be probed; LevelCocycle tables
/// satisfy the identity by construction.
inline bool is_cocycle_exhaustive(
    const std::function<int(std::int64_t, std::uint64_t)>& eval,
    const FiniteGroupTable& K, const OdometerModel& model, std::int64_t window) {
  for (std::int64_t n1 = -window; n1 <= window; ++n1)
    for (std::int64_t n2 = -window; n2 <= window; ++n2)
      for (std::uint64_t x = 0; x < model.modulus(); ++x)
        if (eval(n1 + n2, x) != K.mul(eval(n1, model.step(x, n2)), eval(n2, x)))
          return false;
  return true;
}

inline bool is_cocycle_exhaustive(const LevelCocycle& c, const OdometerModel& model,
                                  std::int64_t window) {
  require_compatible(c, model);
  // Memoize c(n, .) over the window; the straight recurrences keep this O(window * states).
  const std::int64_t span = 2 * window;
  std::vector<std::vector<int>> memo(2 * span + 1,
                                     std::vector<int>(model.modulus(), c.target->identity()));
  auto at = [&](std::int64_t n) -> std::vector<int>& { return memo[n + span]; };
  const FiniteGroupTable& K = *c.target;
  for (std::int64_t n = 0; n < span; ++n)
    for (std::uint64_t x = 0; x < model.modulus(); ++x)
      at(n + 1)[x] = K.mul(c.f(model.step(x, n)), at(n)[x]);
  for (std::int64_t n = 0; n > -span; --n)
    for (std::uint64_t x = 0; x < model.modulus(); ++x)
      at(n - 1)[x] = K.mul(K.inv(c.f(model.step(x, n - 1))), at(n)[x]);
  auto eval = [&](std::int64_t n, std::uint64_t x) { return at(n)[x]; };
  return is_cocycle_exhaustive(eval, K, model, window);
}

/// Transfer functions witness cohomology.  Two table orientations are in use:
///   Standard: c(n, x) = b(T^n x)^-1 c2(n, x) b(x)   (the cohomology identity)
///   Forward:  c(n, x) = b(T^n x) b(x)^-1            (the telescoping solution
///             of phi o T - phi = f; the solver's native form)
/// Verification converts Forward tables to Standard by pointwise inversion.
struct TransferFunction {
  enum class Orientation { Standard, Forward };

  int level = 1;
  std::vector<int> table;
  Orientation orientation = Orientation::Standard;

  int b(std::uint64_t x) const { return table[x % table.size()]; }

  TransferFunction as_standard(const FiniteGroupTable& K) const {
    if (orientation == Orientation::Standard) return *this;
    TransferFunction out{level, table, Orientation::Standard};
    for (int& v : out.table) v = K.inv(v);
    return out;
  }
};

/// Checks c1(n, x) = b(T^n x)^-1 c2(n, x) b(x) for all |n| <= window, all x.
inline bool cohomologous_verify(const LevelCocycle& c1, const LevelCocycle& c2,
                                const TransferFunction& transfer, const OdometerModel& model,
                                std::int64_t window) {
  if (!c1.target->same_table(*c2.target))
    throw std::invalid_argument("cohomologous_verify: cocycles must share the target group");
  require_compatible(c1, model);
  require_compatible(c2, model);
  const FiniteGroupTable& K = *c1.target;
  const TransferFunction b = transfer.as_standard(K);
  for (std::int64_t n = -window; n <= window; ++n) {
    for (std::uint64_t x = 0; x < model.modulus(); ++x) {
      const int lhs = evaluate(c1, model, n, x);
      const int rhs =
          K.mul(K.mul(K.inv(b.b(model.step(x, n))), evaluate(c2, model, n, x)), b.b(x));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

/// Given a transfer b into K untwisting a cocycle whose values lie in a
/// subgroup K0 (precondition), produces a K0-valued transfer for the same
/// cocycle.  The b-values must occupy a single coset of K0 (right coset for
/// Forward orientation, left for Standard); multiplying by the coset
/// representative cancels in the untwisting identity.  Multiple cosets signal
/// that b was not a valid transfer.
inline TransferFunction reduce_target(const LevelCocycle& c, std::span<const int> K0,
                                      const TransferFunction& b, const OdometerModel& model) {
  require_compatible(c, model);
  const FiniteGroupTable& K = *c.target;
  for (int v : c.table)
    if (std::find(K0.begin(), K0.end(), v) == K0.end())
      throw std::invalid_argument("reduce_target: cocycle values must lie in K0");

  const bool forward = b.orientation == TransferFunction::Orientation::Forward;
  auto in_K0 = [&](int v) { return std::find(K0.begin(), K0.end(), v) != K0.end(); };
  // Prefer the identity representative so a K0 = K input returns b unchanged.
  const int rep = in_K0(b.table.at(0)) ? K.identity() : b.table.at(0);
  TransferFunction out = b;
  for (std::size_t i = 0; i < b.table.size(); ++i) {
    // Forward tables move by b(x) k^-1, Standard ones by k^-1 b(x).
    const int v = forward ? K.mul(b.table[i], K.inv(rep)) : K.mul(K.inv(rep), b.table[i]);
    if (!in_K0(v)) throw NotSingleCoset("transfer values occupy more than one coset of K0");
    out.table[i] = v;
  }
  return out;
}

/// Sum of the level table in an abelian target; the single obstruction datum
/// for every coboundary question over the chain.
inline int table_sum(const LevelCocycle& c) {
  const FiniteGroupTable& K = *c.target;
  int acc = K.identity();
  for (int v : c.table) acc = K.mul(acc, v);
  return acc;
}

inline void require_abelian(const LevelCocycle& c) {
  if (!c.target->is_abelian())
    throw NonAbelianTarget("this decision procedure needs an abelian target");
}

struct CoboundarySolution {
  bool solvable = false;
  TransferFunction transfer;  // Forward orientation: c(n, x) = L(T^n x) L(x)^-1
  int obstruction = 0;        // (n_k / n_j) * S when unsolvable
};

/// Telescoping solver at level k: solvable iff (n_k/n_j) * S vanishes, in
/// which case L(0) = e, L(x+1) = L(x) + f(x) closes up around the cycle.
inline CoboundarySolution coboundary_solve_at_level(
    const LevelCocycle& c, const DivisibilityChain& chain, int k,
    TransferFunction::Orientation orientation = TransferFunction::Orientation::Forward) {
  require_abelian(c);
  if (k < c.level) throw std::invalid_argument("solve level below cocycle level");
  const FiniteGroupTable& K = *c.target;
  const BigInt ratio = chain.nth_modulus(k) / chain.nth_modulus(c.level);
  const int S = table_sum(c);
  const int obstruction =
      K.pow(S, (ratio % K.element_order(S)).convert_to<std::int64_t>());
  if (obstruction != K.identity()) return {false, {}, obstruction};

  const std::uint64_t nk = chain.nth_modulus(k).convert_to<std::uint64_t>();
  std::vector<int> L(nk, K.identity());
  for (std::uint64_t x = 0; x + 1 < nk; ++x)
    L[x + 1] = K.mul(L[x], c.table[x % c.table.size()]);
  TransferFunction out{k, std::move(L), TransferFunction::Orientation::Forward};
  if (orientation == TransferFunction::Orientation::Standard) out = out.as_standard(K);
  return {true, std::move(out), K.identity()};
}

struct EssentialValueSet {
  std::vector<int> values;  // sorted element indices, always containing e

  bool contains(int v) const {
    return std::find(values.begin(), values.end(), v) != values.end();
  }
  bool trivial(const FiniteGroupTable& K) const {
    return values.size() == 1 && values[0] == K.identity();
  }
  friend bool operator==(const EssentialValueSet&, const EssentialValueSet&) = default;
};

/// Essential values at cylinder level k by direct enumeration: returns to a
/// level-k cylinder happen exactly at multiples of n_k, and the return values
/// cycle with period at most |K|.  A value is essential iff every cylinder
/// realizes it.  The per-state return value c(n_k, x) is evaluated once by
/// summation and then slid across states (abelian window update), keeping the
/// enumeration independent of the closed-form route.
inline EssentialValueSet essential_values_bruteforce(const LevelCocycle& c,
                                                     const OdometerModel& model, int k) {
  require_abelian(c);
  require_compatible(c, model);
  if (k < c.level || k > model.level())
    throw std::invalid_argument("cylinder level out of range");
  const FiniteGroupTable& K = *c.target;
  const std::uint64_t nk = model.level_modulus(k);
  const std::int64_t span = K.order();
  const std::int64_t nk_step = static_cast<std::int64_t>(nk);

  std::vector<int> ret(model.modulus());
  ret[0] = evaluate(c, model, nk_step, 0);
  for (std::uint64_t x = 0; x + 1 < model.modulus(); ++x)
    ret[x + 1] = K.mul(K.mul(ret[x], K.inv(c.f(x))), c.f(model.step(x, nk_step)));

  std::vector<bool> essential(K.order(), true);
  std::vector<bool> seen(K.order(), false);
  for (std::uint64_t u = 0; u < nk; ++u) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint64_t x = u; x < model.modulus(); x += nk) {
      seen[K.identity()] = true;
      int acc = K.identity();
      std::uint64_t y = x;
      for (std::int64_t ell = 1; ell <= span; ++ell) {
        acc = K.mul(ret[y], acc);  // c((ell)*n_k, x) extended one return at a time
        y = model.step(y, nk_step);
        seen[acc] = true;
      }
      acc = K.identity();
      y = x;
      for (std::int64_t ell = 1; ell <= span; ++ell) {
        y = model.step(y, -nk_step);
        acc = K.mul(K.inv(ret[y]), acc);
        seen[acc] = true;
      }
    }
    for (int r = 0; r < K.order(); ++r)
      if (!seen[r]) essential[r] = false;
  }
  EssentialValueSet out;
  for (int r = 0; r < K.order(); ++r)
    if (essential[r]) out.values.push_back(r);
  return out;
}

/// Closed form: the cyclic subgroup generated by (n_k / n_j) * S.
inline EssentialValueSet essential_values_closed_form(const LevelCocycle& c,
                                                      const DivisibilityChain& chain, int k) {
  require_abelian(c);
  if (k < c.level) throw std::invalid_argument("cylinder level below cocycle level");
  const FiniteGroupTable& K = *c.target;
  const int S = table_sum(c);
  const BigInt ratio = chain.nth_modulus(k) / chain.nth_modulus(c.level);
  const int gen = K.pow(S, (ratio % K.element_order(S)).convert_to<std::int64_t>());
  return {cyclic_subgroup(K, gen)};
}

/// E(c) as the stable intersection over k of the closed-form subgroups.  The
/// generator of <(n_k/n_j) S> only depends on gcd(ord S, n_k/n_j), and the
/// achievable gcd is computable exactly from the eventually periodic tail.
inline EssentialValueSet essential_values_limit(const LevelCocycle& c,
                                                const DivisibilityChain& chain) {
  require_abelian(c);
  const FiniteGroupTable& K = *c.target;
  const int S = table_sum(c);
  const int d = K.element_order(S);
  std::int64_t achievable = 1;
  for (int p = 2; p <= d; ++p) {
    if (d % p != 0) continue;
    bool prime = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    const std::int64_t want = DivisibilityChain::valuation(static_cast<std::uint64_t>(d), p);
    const auto growth = chain.ord_growth_above(p, c.level);
    const std::int64_t got = growth ? std::min<std::int64_t>(want, *growth) : want;
    for (std::int64_t i = 0; i < got; ++i) achievable *= p;
  }
  return {cyclic_subgroup(K, K.pow(S, achievable))};
}

struct CoboundaryVerdict {
  enum class Kind { CoboundaryAtLevel, NeverCoboundary };

  Kind kind = Kind::NeverCoboundary;
  int level = 0;                  // minimal solvable level when coboundary
  EssentialValueSet obstruction;  // limit essential values; {e} iff coboundary

  bool is_coboundary() const { return kind == Kind::CoboundaryAtLevel; }
};

/// Full decision over the chain: the cocycle is a coboundary iff ord(S)
/// eventually divides n_k / n_j, decidable from the tail.  For K = Z/p and
/// S != 0 this is exactly: coboundary iff sup_i ord(p, n_i) is unbounded
/// relative to ord(p, n_j).  Minimal such k is returned.
inline CoboundaryVerdict coboundary_decide_chain(const LevelCocycle& c,
                                                 const DivisibilityChain& chain) {
  require_abelian(c);
  const FiniteGroupTable& K = *c.target;
  const int S = table_sum(c);
  const std::int64_t d = K.element_order(S);

  CoboundaryVerdict verdict;
  verdict.obstruction = essential_values_limit(c, chain);
  if (!verdict.obstruction.trivial(K)) {
    verdict.kind = CoboundaryVerdict::Kind::NeverCoboundary;
    return verdict;
  }
  // The obstruction dies; scan upward for the first level where ord(S)
  // divides the accumulated multiplier product.  Termination: every prime of
  // d gains valuation within each tail period once the deficit is growable.
  std::int64_t need = d;
  int k = c.level;
  while (need > 1) {
    const std::int64_t m = static_cast<std::int64_t>(chain.multiplier(k));
    need /= std::gcd(need, m);
    ++k;
  }
  verdict.kind = CoboundaryVerdict::Kind::CoboundaryAtLevel;
  verdict.level = k;
  return verdict;
}

}  // namespace coedyn

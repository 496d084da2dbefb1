#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coedyn/cocycle.hpp"
#include "coedyn/errors.hpp"
#include "coedyn/finite_group.hpp"
#include "coedyn/odometer.hpp"

namespace coedyn {

/// Element (f, n) of the product group F x Z.
struct FZElement {
  int f = 0;
  std::int64_t n = 0;
  friend bool operator==(const FZElement&, const FZElement&) = default;
};

struct SkewPoint {
  std::uint64_t x = 0;
  int f = 0;
  friend bool operator==(const SkewPoint&, const SkewPoint&) = default;
};

/// Skew product of the odometer with a finite group F along a cocycle c:
/// the F x Z action on (Z/n_L) x F by (f, n)(x, f') = (x + n, c(n, x) f' f^-1).
class SkewSystem {
 public:
  SkewSystem(OdometerModel base, std::shared_ptr<const FiniteGroupTable> F, LevelCocycle c)
      : base_(std::move(base)), F_(std::move(F)), c_(std::move(c)) {
    if (!F_) throw std::invalid_argument("skew system needs a fiber group");
    if (!c_.target->same_table(*F_))
      throw std::invalid_argument("cocycle target must be the fiber group");
    require_compatible(c_, base_);
    // Light action-law probe on a generator window; exhaustive checks live in tests.
    for (std::int64_t n1 = -2; n1 <= 2; ++n1)
      for (std::int64_t n2 = -2; n2 <= 2; ++n2)
        for (std::uint64_t x = 0; x < base_.modulus(); ++x)
          if (cocycle(n1 + n2, x) != F_->mul(cocycle(n1, base_.step(x, n2)), cocycle(n2, x)))
            throw std::invalid_argument("cocycle fails the action law probe");
  }

  const OdometerModel& base() const { return base_; }
  const FiniteGroupTable& fiber() const { return *F_; }
  std::shared_ptr<const FiniteGroupTable> fiber_ptr() const { return F_; }
  const LevelCocycle& c() const { return c_; }

  std::uint64_t point_count() const { return base_.modulus() * F_->order(); }

  int cocycle(std::int64_t n, std::uint64_t x) const { return evaluate(c_, base_, n, x); }

  SkewPoint act(FZElement g, SkewPoint p) const {
    return {base_.step(p.x, g.n), F_->mul(F_->mul(cocycle(g.n, p.x), p.f), F_->inv(g.f))};
  }

  bool same_base_and_fiber(const SkewSystem& other) const {
    return base_ == other.base_ && F_->same_table(*other.F_);
  }

 private:
  OdometerModel base_;
  std::shared_ptr<const FiniteGroupTable> F_;
  LevelCocycle c_;
};

/// Stabilizer found during the freeness sweep.
struct SkewStabilizerWitness {
  FZElement g;
  SkewPoint p;
};

/// Finite-model analogues: "minimal" becomes "one orbit covers the space",
/// "free" becomes "no stabilizer inside the faithful window 0 < |n| < n_L".
/// Steps n that are nonzero multiples of n_L wrap the truncated base (s^{n_L}
/// acts trivially at level L) and say nothing about the modeled action; any
/// fixes they produce are reported separately as wraparound returns.
struct TransitiveFreeReport {
  bool transitive = false;
  bool free = false;
  std::vector<SkewStabilizerWitness> genuine_stabilizers;
  std::vector<SkewStabilizerWitness> wraparound_returns;
};

inline TransitiveFreeReport transitive_and_free_check(const SkewSystem& sys) {
  const FiniteGroupTable& F = sys.fiber();
  const std::uint64_t m = sys.base().modulus();
  TransitiveFreeReport report;

  // Orbit of (0, e) under {(e, +-1)} and {(f, 0)}.
  std::vector<bool> reached(m * F.order(), false);
  auto idx = [&](SkewPoint p) { return p.x * F.order() + p.f; };
  std::vector<SkewPoint> queue = {{0, F.identity()}};
  reached[idx(queue[0])] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::vector<SkewPoint> next;
    next.push_back(sys.act({F.identity(), +1}, queue[i]));
    next.push_back(sys.act({F.identity(), -1}, queue[i]));
    for (int f = 0; f < F.order(); ++f) next.push_back(sys.act({f, 0}, queue[i]));
    for (SkewPoint p : next) {
      if (!reached[idx(p)]) {
        reached[idx(p)] = true;
        queue.push_back(p);
      }
    }
  }
  report.transitive = queue.size() == m * F.order();

  // Stabilizer sweep over |n| <= n_L * |F|.  A point (x, f') is fixed by
  // (f, n) iff n = 0 mod n_L and f = f'^-1 c(n, x) f'.
  const std::int64_t window = static_cast<std::int64_t>(m) * F.order();
  for (std::int64_t n = -window; n <= window; n += static_cast<std::int64_t>(m)) {
    for (std::uint64_t x = 0; x < m; ++x) {
      const int v = sys.cocycle(n, x);
      for (int fp = 0; fp < F.order(); ++fp) {
        const int f = F.mul(F.mul(F.inv(fp), v), fp);
        if (f == F.identity() && n == 0) continue;
        SkewStabilizerWitness w{{f, n}, {x, fp}};
        if (n == 0)
          report.genuine_stabilizers.push_back(w);
        else
          report.wraparound_returns.push_back(w);
      }
    }
  }
  report.free = report.genuine_stabilizers.empty();
  return report;
}

/// The orbit cocycle theta((t, n), (x, f)) = (t f^-1 c(n,x)^-1 c'(n,x) f, n)
/// between the skew products of c and c' over a shared base.
inline FZElement theta(const SkewSystem& sys, const SkewSystem& sys_prime, FZElement g,
                       SkewPoint p) {
  if (!sys.same_base_and_fiber(sys_prime))
    throw BaseMismatch("theta needs skew systems over the same base and fiber");
  const FiniteGroupTable& F = sys.fiber();
  const int mid = F.mul(F.mul(F.inv(p.f), F.inv(sys.cocycle(g.n, p.x))),
                        F.mul(sys_prime.cocycle(g.n, p.x), p.f));
  return {F.mul(g.f, mid), g.n};
}

/// Exhaustive orbit-equivalence verification: checks
///   act(g, p) = act'(theta(g, p), p)
/// for all group elements with |n| <= window and all points, the same with
/// the roles of the two systems swapped, and that the two theta cocycles
/// invert each other pointwise.
inline bool verify_coe(const SkewSystem& sys, const SkewSystem& sys_prime,
                       std::int64_t window = 0) {
  if (!sys.same_base_and_fiber(sys_prime))
    throw BaseMismatch("verify_coe needs skew systems over the same base and fiber");
  const FiniteGroupTable& F = sys.fiber();
  const std::uint64_t m = sys.base().modulus();
  if (window == 0) window = 2 * static_cast<std::int64_t>(m);

  for (std::int64_t n = -window; n <= window; ++n) {
    for (std::uint64_t x = 0; x < m; ++x) {
      for (int f = 0; f < F.order(); ++f) {
        const SkewPoint p{x, f};
        for (int t = 0; t < F.order(); ++t) {
          const FZElement g{t, n};
          const FZElement th = theta(sys, sys_prime, g, p);
          if (sys.act(g, p) != sys_prime.act(th, p)) return false;
          const FZElement th_back = theta(sys_prime, sys, g, p);
          if (sys_prime.act(g, p) != sys.act(th_back, p)) return false;
          if (theta(sys_prime, sys, th, p) != g) return false;
        }
      }
    }
  }
  return true;
}

/// Normal form of an automorphism of F x Z: (t, 1) -> (eps(t) g, +-1) with
/// eps in Aut(F) and g central.
struct ProductAutomorphism {
  std::vector<int> eps;
  int central = 0;
  int sign = +1;
};

inline std::vector<ProductAutomorphism> automorphism_family(const FiniteGroupTable& F) {
  std::vector<ProductAutomorphism> out;
  const std::vector<int> Z = center(F);
  for (const auto& eps : automorphisms(F))
    for (int g : Z)
      for (int sign : {+1, -1}) out.push_back({eps, g, sign});
  return out;
}

struct NonConjugacyCertificate {
  int group_order = 0;
  // For each non-central element, a partner it fails to commute with; empty
  // partner list plus trivial center set is the center witness.
  std::vector<std::pair<int, int>> noncommuting_pairs;
  std::vector<int> value_subgroup;  // K0 = <values of c>, prime cyclic
  int prime = 0;
  CoboundaryVerdict obstruction;  // NeverCoboundary for the reduced cocycle
};

struct CertificateOutcome {
  enum class Status { Issued, NontrivialCenter, Coboundary, ValuesNotPrimeCyclic };

  Status status = Status::ValuesNotPrimeCyclic;
  std::optional<NonConjugacyCertificate> certificate;

  bool issued() const { return status == Status::Issued; }
};

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

/// Certifies that the skew pair built from (c, trivial) is orbit equivalent
/// but not conjugate: needs C(F) = {e} and the cocycle, reduced to the prime
/// cyclic subgroup generated by its values, to never be a coboundary over the
/// chain.  Passing between the subgroup and F is legitimate because transfer
/// functions reduce to the value subgroup whenever its cosets separate them.
inline CertificateOutcome nonconjugacy_certificate(const FiniteGroupTable& F,
                                                   const LevelCocycle& c,
                                                   const DivisibilityChain& chain) {
  if (!c.target->same_table(F))
    throw std::invalid_argument("certificate: cocycle must take values in F");
  CertificateOutcome out;

  const std::vector<int> K0 = subgroup_generated(F, c.table);
  const int p = static_cast<int>(K0.size());
  if (!is_prime(p)) {
    out.status = CertificateOutcome::Status::ValuesNotPrimeCyclic;
    return out;
  }
  const std::vector<int> Z = center(F);
  if (Z.size() != 1) {
    out.status = CertificateOutcome::Status::NontrivialCenter;
    return out;
  }

  // Reduce to Z/p through a discrete log along a generator of K0.
  int gen = -1;
  for (int v : K0)
    if (v != F.identity()) {
      gen = v;
      break;
    }
  std::vector<int> log(F.order(), -1);
  {
    int acc = F.identity();
    for (int e = 0; e < p; ++e) {
      log[acc] = e;
      acc = F.mul(acc, gen);
    }
  }
  auto Zp = std::make_shared<const FiniteGroupTable>(FiniteGroupTable::cyclic(p));
  std::vector<int> reduced(c.table.size());
  for (std::size_t i = 0; i < c.table.size(); ++i) reduced[i] = log[c.table[i]];
  const LevelCocycle c_reduced(Zp, c.level, std::move(reduced));

  const CoboundaryVerdict verdict = coboundary_decide_chain(c_reduced, chain);
  if (verdict.is_coboundary()) {
    out.status = CertificateOutcome::Status::Coboundary;
    return out;
  }

  NonConjugacyCertificate cert;
  cert.group_order = F.order();
  for (int a = 0; a < F.order(); ++a) {
    if (a == F.identity()) continue;
    for (int b = 0; b < F.order(); ++b) {
      if (F.mul(a, b) != F.mul(b, a)) {
        cert.noncommuting_pairs.emplace_back(a, b);
        break;
      }
    }
  }
  cert.value_subgroup = K0;
  cert.prime = p;
  cert.obstruction = verdict;
  out.status = CertificateOutcome::Status::Issued;
  out.certificate = std::move(cert);
  return out;
}

struct ConjugacySearchResult {
  bool found = false;
  std::uint64_t candidates_checked = 0;
  // When found: the witnessing normal form and transfer table.
  ProductAutomorphism form;
  std::vector<int> transfer;
  std::int64_t base_shift = 0;
};

/// Exhaustive small-model corroboration: sweeps every automorphism normal
/// form (eps, g, +-), every base homeomorphism commuting with the odometer
/// (x -> sign*x + a), and every fiber transfer table psi': Z/n_L -> F, and
/// tests the conjugacy identity
///   c'(n, x) = psi'(x + n) eps(c(sign*n, phi^-1(x))) g^{sign*n} psi'(x)^-1
/// at n = 1 for all x (survivors are re-checked over |n| <= window).
inline ConjugacySearchResult exhaustive_conjugacy_search(const SkewSystem& sys,
                                                         const SkewSystem& sys_prime,
                                                         std::int64_t window = 16) {
  if (!sys.same_base_and_fiber(sys_prime))
    throw BaseMismatch("conjugacy search needs a shared base and fiber");
  const FiniteGroupTable& F = sys.fiber();
  const std::int64_t m = static_cast<std::int64_t>(sys.base().modulus());
  ConjugacySearchResult result;

  std::vector<int> cprime1(m), c1(m);
  for (std::int64_t x = 0; x < m; ++x) {
    c1[x] = sys.cocycle(1, static_cast<std::uint64_t>(x));
    cprime1[x] = sys_prime.cocycle(1, static_cast<std::uint64_t>(x));
  }

  std::vector<int> psi(m, 0);
  for (const ProductAutomorphism& form : automorphism_family(F)) {
    for (std::int64_t a = 0; a < m; ++a) {
      // phi(x) = sign*x + a; phi^-1(x) = sign*(x - a).
      auto phi_inv = [&](std::int64_t x) {
        const std::int64_t y = form.sign > 0 ? x - a : a - x;
        return static_cast<std::uint64_t>(((y % m) + m) % m);
      };
      std::fill(psi.begin(), psi.end(), 0);
      while (true) {
        ++result.candidates_checked;
        bool ok = true;
        for (std::int64_t x = 0; x < m && ok; ++x) {
          const int eps_c =
              form.eps[F.pow(c1[phi_inv(form.sign > 0 ? x : x + 1)], form.sign)];
          const int rhs = F.mul(
              F.mul(psi[(x + 1) % m], F.mul(eps_c, F.pow(form.central, form.sign))),
              F.inv(psi[x]));
          ok = cprime1[x] == rhs;
        }
        if (ok) {
          bool deep = true;
          for (std::int64_t n = -window; n <= window && deep; ++n) {
            for (std::int64_t x = 0; x < m && deep; ++x) {
              const int eps_c = form.eps[sys.cocycle(form.sign * n, phi_inv(x))];
              const int rhs = F.mul(
                  F.mul(psi[static_cast<std::uint64_t>(((x + n) % m + m) % m)],
                        F.mul(eps_c, F.pow(form.central, form.sign * n))),
                  F.inv(psi[x]));
              deep = sys_prime.cocycle(n, static_cast<std::uint64_t>(x)) == rhs;
            }
          }
          if (deep) {
            result.found = true;
            result.form = form;
            result.transfer = psi;
            result.base_shift = a;
            return result;
          }
        }
        // Advance psi odometer-style.
        std::size_t pos = 0;
        while (pos < psi.size() && ++psi[pos] == F.order()) psi[pos++] = 0;
        if (pos == psi.size()) break;
      }
    }
  }
  return result;
}

}  // namespace coedyn

#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coedyn {

/// Element of the infinite dihedral group <s, t | t^2, tsts> in normal form
/// s^k t^r.  Every element has exactly one such form; (0, 0) is the identity.
struct DihedralElement {
  std::int64_t exponent = 0;
  bool reflection = false;

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

inline constexpr DihedralElement kDihedralIdentity{0, false};
inline constexpr DihedralElement kDihedralS{1, false};
inline constexpr DihedralElement kDihedralT{0, true};

/// Product in normal form: t s^k = s^-k t.
inline DihedralElement dmul(DihedralElement a, DihedralElement b) {
  return {a.exponent + (a.reflection ? -b.exponent : b.exponent),
          a.reflection != b.reflection};
}

inline DihedralElement dinv(DihedralElement g) {
  return g.reflection ? g : DihedralElement{-g.exponent, false};
}

inline DihedralElement dpow(DihedralElement g, std::int64_t n) {
  if (!g.reflection) return {g.exponent * n, false};
  return (n % 2 == 0) ? kDihedralIdentity : g;
}

inline DihedralElement s_power(std::int64_t n) { return {n, false}; }

/// Word length w.r.t. the generating set S = {s^(+-1), t}:
/// |s^n| = |n| and |s^n t| = |n| + 1.
inline std::int64_t word_length(DihedralElement g) {
  return std::abs(g.exponent) + (g.reflection ? 1 : 0);
}

/// Right-invariant word metric d(g1, g2) = |g2 g1^-1|.
inline std::int64_t dmetric(DihedralElement g1, DihedralElement g2) {
  return word_length(dmul(g2, dinv(g1)));
}

/// The automorphism phi_i with phi_i(s) = s and phi_i(t) = s^i t.
inline DihedralElement phi_auto(std::int64_t i, DihedralElement g) {
  return {g.exponent + (g.reflection ? i : 0), g.reflection};
}

/// Full automorphism group: tau(s) = s^sign, tau(t) = s^k t.
inline DihedralElement dihedral_automorphism(std::int64_t k, int sign,
                                             DihedralElement g) {
  return {sign * g.exponent + (g.reflection ? k : 0), g.reflection};
}

/// Pairing Z <-> D_inf: pi(2n) = s^n, pi(2n+1) = t s^n.
inline DihedralElement pairing_pi(std::int64_t n) {
  if (n % 2 == 0) return {n / 2, false};
  const std::int64_t m = (n - 1) / 2;  // exact: n - 1 is even
  return {-m, true};                   // t s^m = s^-m t
}

inline std::int64_t pairing_pi_inv(DihedralElement g) {
  // s^k t = t s^-k, so the odd preimage of s^k t is 2(-k) + 1.
  return g.reflection ? -2 * g.exponent + 1 : 2 * g.exponent;
}

std::string to_string(DihedralElement g);

inline std::string to_string(DihedralElement g) {
  std::string out;
  if (g.exponent == 0 && !g.reflection) return "e";
  if (g.exponent == 1) {
    out = "s";
  } else if (g.exponent != 0) {
    out = "s^" + std::to_string(g.exponent);
  }
  if (g.reflection) out += "t";
  return out;
}

/// Canonical class of a subgroup of D_inf.  Every subgroup is one of
/// <s^k, s^i t>, <s^i t>, or <s^k>.
struct SubgroupClass {
  enum class Kind { LatticeWithReflection, PureReflection, PureTranslation };
  Kind kind;
  std::int64_t k = 0;  // translation step, 0 when no translations
  std::int64_t i = 0;  // reflection offset, canonical in [0, k) for lattices

  friend bool operator==(const SubgroupClass&, const SubgroupClass&) = default;
};

/// Classifies <gens>.  The translation subgroup is <s^k> with
/// k = gcd of the translation exponents and of the differences of the
/// reflection offsets; i is reduced into [0, k) since <s^k, s^i t> only
/// depends on i mod k.
inline SubgroupClass classify_subgroup(std::span<const DihedralElement> gens) {
  if (gens.empty()) throw std::invalid_argument("classify_subgroup: no generators");
  std::int64_t k = 0;
  bool have_reflection = false;
  std::int64_t b0 = 0;
  for (const auto& g : gens) {
    if (g.reflection) {
      if (!have_reflection) {
        have_reflection = true;
        b0 = g.exponent;
      } else {
        k = std::gcd(k, g.exponent - b0);
      }
    } else {
      k = std::gcd(k, g.exponent);
    }
  }
  k = std::abs(k);
  if (!have_reflection) {
    return {SubgroupClass::Kind::PureTranslation, k, 0};
  }
  if (k == 0) {
    return {SubgroupClass::Kind::PureReflection, 0, b0};
  }
  return {SubgroupClass::Kind::LatticeWithReflection, k, ((b0 % k) + k) % k};
}

/// Membership predicate for a classified subgroup; used to cross-check the
/// classifier against brute-force closure.
inline bool subgroup_contains(const SubgroupClass& cls, DihedralElement g) {
  switch (cls.kind) {
    case SubgroupClass::Kind::PureTranslation:
      if (g.reflection) return false;
      return cls.k == 0 ? g.exponent == 0 : g.exponent % cls.k == 0;
    case SubgroupClass::Kind::PureReflection:
      if (g.reflection) return g.exponent == cls.i;
      return g.exponent == 0;
    case SubgroupClass::Kind::LatticeWithReflection: {
      const std::int64_t off = g.reflection ? cls.i : 0;
      return ((g.exponent - off) % cls.k + cls.k) % cls.k == 0;
    }
  }
  return false;
}

}  // namespace coedyn

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "coedyn/errors.hpp"

namespace coedyn {

/// A finite group given by its multiplication table over element indices
/// 0..order-1.  The full group axioms are checked eagerly on construction:
/// identity behaviour, two-sided inverses, and associativity (exhaustive,
/// O(order^3)).
class FiniteGroupTable {
 public:
  FiniteGroupTable(int order, int identity, std::vector<int> table)
      : order_(order), identity_(identity), table_(std::move(table)) {
    if (order_ <= 0) throw std::invalid_argument("group order must be positive");
    if (identity_ < 0 || identity_ >= order_)
      throw std::invalid_argument("identity index out of range");
    if (table_.size() != static_cast<std::size_t>(order_) * order_)
      throw std::invalid_argument("multiplication table has wrong size");
    for (int v : table_) {
      if (v < 0 || v >= order_) throw std::invalid_argument("table entry out of range");
    }
    for (int a = 0; a < order_; ++a) {
      if (mul(identity_, a) != a || mul(a, identity_) != a)
        throw std::invalid_argument("identity does not behave as identity");
    }
    inverse_.assign(order_, -1);
    for (int a = 0; a < order_; ++a) {
      for (int b = 0; b < order_; ++b) {
        if (mul(a, b) == identity_ && mul(b, a) == identity_) {
          inverse_[a] = b;
          break;
        }
      }
      if (inverse_[a] < 0) throw std::invalid_argument("element lacks a two-sided inverse");
    }
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("multiplication table is not associative");
  }

  static FiniteGroupTable cyclic(int n) {
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return FiniteGroupTable(n, 0, std::move(t));
  }

  /// Symmetric group on 3 letters; elements are the permutations of {0,1,2}
  /// in lexicographic order, so index 0 is the identity.
  static FiniteGroupTable symmetric3() { return from_permutations(all_permutations(3)); }

  /// Dihedral group of order 8 as vertex permutations of the square.
  static FiniteGroupTable dihedral8() {
    std::vector<std::vector<int>> gens = {{1, 2, 3, 0}, {0, 3, 2, 1}};
    return from_permutations(permutation_closure(gens));
  }

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }

  int pow(int a, std::int64_t n) const {
    int base = n < 0 ? inv(a) : a;
    std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    int acc = identity_;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  int element_order(int a) const {
    int acc = a;
    int n = 1;
    while (acc != identity_) {
      acc = mul(acc, a);
      ++n;
    }
    return n;
  }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool same_table(const FiniteGroupTable& other) const {
    return order_ == other.order_ && identity_ == other.identity_ && table_ == other.table_;
  }

  const std::vector<int>& raw_table() const { return table_; }

  static std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }

  static std::vector<std::vector<int>> permutation_closure(
      std::vector<std::vector<int>> gens) {
    const std::size_t n = gens.at(0).size();
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems = {id};
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
          std::vector<int> prod(n);
          for (std::size_t v = 0; v < n; ++v) prod[v] = g[elems[i][v]];
          if (std::find(elems.begin(), elems.end(), prod) == elems.end()) {
            elems.push_back(prod);
            grew = true;
          }
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  static FiniteGroupTable from_permutations(const std::vector<std::vector<int>>& perms) {
    const int n = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[perms[i]] = i;
    const std::size_t deg = perms.at(0).size();
    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        std::vector<int> prod(deg);
        for (std::size_t v = 0; v < deg; ++v) prod[v] = perms[a][perms[b][v]];
        table[static_cast<std::size_t>(a) * n + b] = index.at(prod);
      }
    }
    return FiniteGroupTable(n, index.at(id), std::move(table));
  }

 private:
  int order_;
  int identity_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

/// Exact center by exhaustive commutation check.
inline std::vector<int> center(const FiniteGroupTable& F) {
  std::vector<int> out;
  for (int a = 0; a < F.order(); ++a) {
    bool central = true;
    for (int b = 0; b < F.order(); ++b) {
      if (F.mul(a, b) != F.mul(b, a)) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(a);
  }
  return out;
}

/// Smallest-index element of order exactly p.  Cauchy guarantees existence
/// whenever p divides the group order.
inline int prime_order_element(const FiniteGroupTable& F, int p) {
  if (p <= 1 || F.order() % p != 0)
    throw NoSuchElement("no element of order " + std::to_string(p) + " in a group of order " +
                        std::to_string(F.order()));
  for (int a = 0; a < F.order(); ++a) {
    if (F.element_order(a) == p) return a;
  }
  throw NoSuchElement("no element of prime order " + std::to_string(p));
}

/// Sorted element list of <gens>.
inline std::vector<int> subgroup_generated(const FiniteGroupTable& F, std::span<const int> gens) {
  std::vector<bool> in(F.order(), false);
  std::vector<int> queue = {F.identity()};
  in[F.identity()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int g : gens) {
      for (int prod : {F.mul(queue[i], g), F.mul(queue[i], F.inv(g))}) {
        if (!in[prod]) {
          in[prod] = true;
          queue.push_back(prod);
        }
      }
    }
  }
  std::vector<int> out;
  for (int a = 0; a < F.order(); ++a)
    if (in[a]) out.push_back(a);
  return out;
}

inline std::vector<int> cyclic_subgroup(const FiniteGroupTable& F, int g) {
  const int gens[] = {g};
  return subgroup_generated(F, gens);
}

namespace detail {

inline bool is_automorphism(const FiniteGroupTable& F, const std::vector<int>& phi) {
  if (phi[F.identity()] != F.identity()) return false;
  for (int a = 0; a < F.order(); ++a)
    for (int b = 0; b < F.order(); ++b)
      if (phi[F.mul(a, b)] != F.mul(phi[a], phi[b])) return false;
  std::vector<bool> hit(F.order(), false);
  for (int v : phi) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

/// Greedy minimal-ish generating sequence.
inline std::vector<int> generating_sequence(const FiniteGroupTable& F) {
  std::vector<int> gens;
  std::vector<int> generated = {F.identity()};
  while (static_cast<int>(generated.size()) < F.order()) {
    for (int a = 0; a < F.order(); ++a) {
      if (std::find(generated.begin(), generated.end(), a) == generated.end()) {
        gens.push_back(a);
        generated = subgroup_generated(F, gens);
        break;
      }
    }
  }
  return gens;
}

inline void extend_automorphism(const FiniteGroupTable& F, const std::vector<int>& gens,
                                std::size_t pos, std::vector<int>& images,
                                std::vector<std::vector<int>>& out) {
  if (pos == gens.size()) {
    // Build the full map by closing the partial assignment over products.
    std::vector<int> phi(F.order(), -1);
    phi[F.identity()] = F.identity();
    std::vector<int> known = {F.identity()};
    for (std::size_t i = 0; i < known.size(); ++i) {
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const int src = F.mul(known[i], gens[gi]);
        const int dst = F.mul(phi[known[i]], images[gi]);
        if (phi[src] == -1) {
          phi[src] = dst;
          known.push_back(src);
        } else if (phi[src] != dst) {
          return;  // inconsistent assignment
        }
      }
    }
    if (static_cast<int>(known.size()) == F.order() && is_automorphism(F, phi))
      out.push_back(phi);
    return;
  }
  const int want = F.element_order(gens[pos]);
  for (int img = 0; img < F.order(); ++img) {
    if (F.element_order(img) != want) continue;
    images.push_back(img);
    extend_automorphism(F, gens, pos + 1, images, out);
    images.pop_back();
  }
}

}  // namespace detail

/// All automorphisms of F, each as an index permutation.  Small groups are
/// swept over all bijections fixing the identity; larger ones go through a
/// generator-image search.
inline std::vector<std::vector<int>> automorphisms(const FiniteGroupTable& F) {
  std::vector<std::vector<int>> out;
  if (F.order() <= 8) {
    std::vector<int> rest;
    for (int a = 0; a < F.order(); ++a)
      if (a != F.identity()) rest.push_back(a);
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<int> phi(F.order());
      phi[F.identity()] = F.identity();
      int j = 0;
      for (int a = 0; a < F.order(); ++a)
        if (a != F.identity()) phi[a] = rest[j++];
      if (detail::is_automorphism(F, phi)) out.push_back(phi);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
  }
  const std::vector<int> gens = detail::generating_sequence(F);
  std::vector<int> images;
  detail::extend_automorphism(F, gens, 0, images, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coedyn

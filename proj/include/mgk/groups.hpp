#pragma once

// Finite groups as Mal'tsev algebras (mul, inv, e, and p(x,y,z) = x·y⁻¹·z),
// a small catalog with fixed element orderings, and the bridge between
// congruences and normal subgroups.
//
// Catalog orderings:
//   Cn / Zn       k ↦ k (addition mod n)
//   AxB           (a,b) ↦ a·|B| + b, e.g. V4 = C2xC2 = Z2xZ2 with xor
//   S3            0=id 1=(012) 2=(021) 3=(01) 4=(02) 5=(12)
//   Dn            r^k s^e ↦ k + n·e (order 2n, D4 has order 8)
//   Q8 / Dicn     a^k x^e ↦ k + 2n·e with x² = a^n (Q8 = Dic2, order 4n)
//   A4            even permutations of {0,1,2,3} in lexicographic order of
//                 their image tuples, identity first

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mgk/algebra.hpp"
#include "mgk/congruence.hpp"
#include "mgk/error.hpp"
#include "mgk/partition.hpp"

namespace mgk {

/// Validates a multiplication table and returns the group algebra.
inline FiniteAlgebra build_group(std::size_t n, std::vector<Elem> const& mul) {
  if (n == 0 || mul.size() != n * n) {
    throw ValidationError("group: multiplication table must have size² entries");
  }
  for (std::size_t i = 0; i < mul.size(); ++i) {
    if (mul[i] >= n) {
      throw ValidationError("group: entry " + std::to_string(mul[i]) + " out of range");
    }
  }
  auto m = [&](Elem a, Elem b) { return mul[a * n + b]; };
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (m(m(a, b), c) != m(a, m(b, c))) {
          throw ValidationError("group: associativity fails at ("
                                + std::to_string(a) + "," + std::to_string(b) + ","
                                + std::to_string(c) + ")");
        }
      }
    }
  }
  Elem e = static_cast<Elem>(n);
  for (Elem x = 0; x < n && e == n; ++x) {
    bool ok = true;
    for (Elem y = 0; y < n && ok; ++y) {
      ok = m(x, y) == y && m(y, x) == y;
    }
    if (ok) {
      e = x;
    }
  }
  if (e == n) {
    throw ValidationError("group: no identity element");
  }
  std::vector<Elem> inv(n, static_cast<Elem>(n));
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      if (m(x, y) == e && m(y, x) == e) {
        inv[x] = y;
        break;
      }
    }
    if (inv[x] == n) {
      throw ValidationError("group: element " + std::to_string(x) + " has no inverse");
    }
  }
  FiniteAlgebra alg;
  alg.size = n;
  alg.maltsev = "p";
  alg.operations.push_back({"mul", 2, mul, false});
  alg.operations.push_back({"inv", 1, inv, false});
  alg.operations.push_back({"e", 0, {e}, false});
  Operation p{"p", 3, {}, true};
  p.table.reserve(n * n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        p.table.push_back(m(m(x, inv[y]), z));
      }
    }
  }
  alg.operations.push_back(std::move(p));
  return alg;
}

/// Read access to the group structure of an algebra built by build_group.
class GroupView {
 public:
  explicit GroupView(FiniteAlgebra const& alg)
      : _n(alg.size), _mul(&alg.operation("mul").table), _inv(&alg.operation("inv").table),
        _e(alg.operation("e").table.at(0)) {}

  std::size_t size() const { return _n; }
  Elem mul(Elem a, Elem b) const { return (*_mul)[a * _n + b]; }
  Elem inv(Elem a) const { return (*_inv)[a]; }
  Elem identity() const { return _e; }
  Elem commutator(Elem h, Elem k) const { return mul(mul(inv(h), inv(k)), mul(h, k)); }

 private:
  std::size_t _n;
  std::vector<Elem> const* _mul;
  std::vector<Elem> const* _inv;
  Elem _e;
};

namespace groups {

  inline FiniteAlgebra cyclic(std::size_t n) {
    std::vector<Elem> mul(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        mul[a * n + b] = static_cast<Elem>((a + b) % n);
      }
    }
    return build_group(n, mul);
  }

  inline FiniteAlgebra direct_product(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    GroupView ga(a);
    GroupView gb(b);
    std::size_t const na = a.size;
    std::size_t const nb = b.size;
    std::size_t const n = na * nb;
    std::vector<Elem> mul(n * n);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        mul[x * n + y] = static_cast<Elem>(ga.mul(x / nb, y / nb) * nb + gb.mul(x % nb, y % nb));
      }
    }
    return build_group(n, mul);
  }

  inline FiniteAlgebra dihedral(std::size_t n) {
    std::size_t const size = 2 * n;
    std::vector<Elem> mul(size * size);
    for (Elem x = 0; x < size; ++x) {
      for (Elem y = 0; y < size; ++y) {
        std::size_t k1 = x % n, e1 = x / n, k2 = y % n, e2 = y / n;
        std::size_t k = e1 ? (k1 + n - k2) % n : (k1 + k2) % n;
        mul[x * size + y] = static_cast<Elem>(k + n * (e1 ^ e2));
      }
    }
    return build_group(size, mul);
  }

  inline FiniteAlgebra dicyclic(std::size_t n) {
    std::size_t const m = 2 * n;
    std::size_t const size = 2 * m;
    std::vector<Elem> mul(size * size);
    for (Elem x = 0; x < size; ++x) {
      for (Elem y = 0; y < size; ++y) {
        std::size_t k1 = x % m, e1 = x / m, k2 = y % m, e2 = y / m;
        std::size_t k = 0;
        std::size_t e = 0;
        if (e1 == 0) {
          k = (k1 + k2) % m;
          e = e2;
        } else if (e2 == 0) {
          k = (k1 + m - k2) % m;
          e = 1;
        } else {
          k = (k1 + m - k2 + n) % m;
          e = 0;
        }
        mul[x * size + y] = static_cast<Elem>(k + m * e);
      }
    }
    return build_group(size, mul);
  }

  /// Group of the given permutations (closed under composition), listed in
  /// the given order. (στ)(x) = σ(τ(x)).
  inline FiniteAlgebra permutation_group(std::vector<std::vector<Elem>> const& perms) {
    std::size_t const n = perms.size();
    std::vector<Elem> mul(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        std::vector<Elem> c(perms[a].size());
        for (std::size_t x = 0; x < c.size(); ++x) {
          c[x] = perms[a][perms[b][x]];
        }
        auto it = std::find(perms.begin(), perms.end(), c);
        if (it == perms.end()) {
          throw ValidationError("permutation group: set is not closed under composition");
        }
        mul[a * n + b] = static_cast<Elem>(it - perms.begin());
      }
    }
    return build_group(n, mul);
  }

  inline FiniteAlgebra symmetric3() {
    return permutation_group({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}});
  }

  inline FiniteAlgebra alternating4() {
    std::vector<std::vector<Elem>> perms;
    std::vector<Elem> p{0, 1, 2, 3};
    do {
      int inversions = 0;
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          inversions += p[i] > p[j];
        }
      }
      if (inversions % 2 == 0) {
        perms.push_back(p);
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return permutation_group(perms);
  }

}  // namespace groups

/// Catalog names. Products are written AxB with any catalog factors.
inline std::vector<std::string> group_catalog() {
  return {"C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2",
          "D4", "Q8", "C9", "C3xC3", "C10", "D5", "C11", "C12", "C2xC6", "D6", "Dic3", "A4"};
}

inline FiniteAlgebra catalog_group(std::string_view name) {
  auto pos = name.find('x');
  if (pos != std::string_view::npos) {
    return groups::direct_product(catalog_group(name.substr(0, pos)),
                                  catalog_group(name.substr(pos + 1)));
  }
  auto number = [&](std::string_view prefix) -> std::size_t {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) {
      return 0;
    }
    std::size_t v = 0;
    for (char ch : name.substr(prefix.size())) {
      if (ch < '0' || ch > '9') {
        return 0;
      }
      v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    return v;
  };
  if (name == "V4") {
    return catalog_group("C2xC2");
  }
  if (name == "S3") {
    return groups::symmetric3();
  }
  if (name == "A4") {
    return groups::alternating4();
  }
  if (name == "Q8") {
    return groups::dicyclic(2);
  }
  if (auto n = number("Dic"); n >= 2) {
    return groups::dicyclic(n);
  }
  if (auto n = number("C"); n >= 1 && n <= 64) {
    return groups::cyclic(n);
  }
  if (auto n = number("Z"); n >= 1 && n <= 64) {
    return groups::cyclic(n);
  }
  if (auto n = number("D"); n >= 3) {
    return groups::dihedral(n);
  }
  throw ParseError("unknown catalog group '" + std::string(name) + "'");
}

inline bool is_subgroup(FiniteAlgebra const& g, std::vector<Elem> const& h) {
  GroupView gv(g);
  std::vector<bool> in(g.size, false);
  for (Elem x : h) {
    if (x >= g.size) {
      return false;
    }
    in[x] = true;
  }
  if (!in[gv.identity()]) {
    return false;
  }
  for (Elem x : h) {
    if (!in[gv.inv(x)]) {
      return false;
    }
    for (Elem y : h) {
      if (!in[gv.mul(x, y)]) {
        return false;
      }
    }
  }
  return true;
}

inline bool is_normal_subgroup(FiniteAlgebra const& g, std::vector<Elem> const& h) {
  if (!is_subgroup(g, h)) {
    return false;
  }
  GroupView gv(g);
  std::vector<bool> in(g.size, false);
  for (Elem x : h) {
    in[x] = true;
  }
  for (Elem x = 0; x < g.size; ++x) {
    for (Elem y : h) {
      if (!in[gv.mul(gv.mul(x, y), gv.inv(x))]) {
        return false;
      }
    }
  }
  return true;
}

/// Coset partition of a normal subgroup.
inline Partition normal_subgroup_to_partition(FiniteAlgebra const& g, std::vector<Elem> const& n) {
  if (!is_normal_subgroup(g, n)) {
    throw PreconditionError("normal_subgroup_bridge: subset is not a normal subgroup");
  }
  GroupView gv(g);
  UnionFind uf(g.size);
  for (Elem x = 0; x < g.size; ++x) {
    for (Elem k : n) {
      uf.unite(x, gv.mul(x, k));
    }
  }
  return Partition::from_union_find(uf);
}

/// Block of the identity of a congruence.
inline std::vector<Elem> partition_to_normal_subgroup(FiniteAlgebra const& g, Partition const& p) {
  require_congruence(g, p, "normal_subgroup_bridge:");
  GroupView gv(g);
  std::vector<Elem> out;
  for (Elem x = 0; x < g.size; ++x) {
    if (p.related(x, gv.identity())) {
      out.push_back(x);
    }
  }
  return out;
}

/// Subgroup generated by a set of elements.
inline std::vector<Elem> generated_subgroup(FiniteAlgebra const& g, std::vector<Elem> const& gens) {
  return subalgebra_closure(g, gens);
}

/// [H,K] = ⟨h⁻¹k⁻¹hk⟩ for normal subgroups H, K.
inline std::vector<Elem> group_commutator_subgroup(FiniteAlgebra const& g,
                                                   std::vector<Elem> const& h,
                                                   std::vector<Elem> const& k) {
  if (!is_normal_subgroup(g, h) || !is_normal_subgroup(g, k)) {
    throw PreconditionError("group_commutator_subgroup: arguments must be normal subgroups");
  }
  GroupView gv(g);
  std::vector<Elem> gens;
  for (Elem x : h) {
    for (Elem y : k) {
      gens.push_back(gv.commutator(x, y));
    }
  }
  return generated_subgroup(g, gens);
}

inline std::vector<Elem> group_center(FiniteAlgebra const& g) {
  GroupView gv(g);
  std::vector<Elem> out;
  for (Elem x = 0; x < g.size; ++x) {
    bool central = true;
    for (Elem y = 0; y < g.size && central; ++y) {
      central = gv.mul(x, y) == gv.mul(y, x);
    }
    if (central) {
      out.push_back(x);
    }
  }
  return out;
}

/// All subgroups, by repeatedly adjoining single elements to known ones.
inline std::vector<std::vector<Elem>> all_subgroups(FiniteAlgebra const& g) {
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> out{generated_subgroup(g, {})};
  seen.insert(out.front());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem x = 0; x < g.size; ++x) {
      if (std::binary_search(out[i].begin(), out[i].end(), x)) {
        continue;
      }
      auto gens = out[i];
      gens.push_back(x);
      auto h = generated_subgroup(g, gens);
      if (seen.insert(h).second) {
        out.push_back(std::move(h));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

inline std::vector<std::vector<Elem>> normal_subgroups(FiniteAlgebra const& g) {
  std::vector<std::vector<Elem>> out;
  for (auto& h : all_subgroups(g)) {
    if (is_normal_subgroup(g, h)) {
      out.push_back(std::move(h));
    }
  }
  return out;
}

}  // namespace mgk

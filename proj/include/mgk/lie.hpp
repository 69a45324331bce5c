#pragma once

// Finite-dimensional Lie algebras over F_p, encoded on 0..p^d−1 by base-p
// digit vectors (digit i is the coefficient of basis vector e_i), and the
// ideal/congruence bridge.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "mgk/algebra.hpp"
#include "mgk/congruence.hpp"
#include "mgk/error.hpp"
#include "mgk/partition.hpp"

namespace mgk {

using Vec = std::vector<unsigned>;

inline bool is_prime(unsigned p) {
  if (p < 2) {
    return false;
  }
  for (unsigned q = 2; q * q <= p; ++q) {
    if (p % q == 0) {
      return false;
    }
  }
  return true;
}

/// [e_i, e_j] = Σ_k c(i,j,k) e_k.
class LieAlgebraFp {
 public:
  LieAlgebraFp() = default;
  LieAlgebraFp(unsigned p, unsigned dim, std::vector<unsigned> constants)
      : _p(p), _dim(dim), _c(std::move(constants)) {
    if (!is_prime(p)) {
      throw ValidationError("Lie algebra: " + std::to_string(p) + " is not prime");
    }
    if (_c.empty()) {
      _c.assign(std::size_t{dim} * dim * dim, 0);
    }
    if (_c.size() != std::size_t{dim} * dim * dim) {
      throw ValidationError("Lie algebra: expected dim³ structure constants");
    }
    for (auto& v : _c) {
      v %= p;
    }
    _size = ipow(p, dim);
  }

  static LieAlgebraFp abelian(unsigned p, unsigned dim) { return {p, dim, {}}; }

  unsigned p() const { return _p; }
  unsigned dim() const { return _dim; }
  std::size_t size() const { return _size; }
  unsigned constant(unsigned i, unsigned j, unsigned k) const {
    return _c[(std::size_t{i} * _dim + j) * _dim + k];
  }
  std::vector<unsigned> const& constants() const { return _c; }

  Vec decode(Elem x) const {
    Vec v(_dim);
    for (unsigned i = 0; i < _dim; ++i) {
      v[i] = x % _p;
      x /= _p;
    }
    return v;
  }

  Elem encode(Vec const& v) const {
    Elem x = 0;
    for (unsigned i = _dim; i-- > 0;) {
      x = x * _p + (v[i] % _p);
    }
    return x;
  }

  Elem basis(unsigned i) const { return static_cast<Elem>(ipow(_p, i)); }

  Vec bracket(Vec const& x, Vec const& y) const {
    Vec out(_dim, 0);
    for (unsigned i = 0; i < _dim; ++i) {
      if (x[i] == 0) {
        continue;
      }
      for (unsigned j = 0; j < _dim; ++j) {
        if (y[j] == 0) {
          continue;
        }
        unsigned const xy = x[i] * y[j] % _p;
        for (unsigned k = 0; k < _dim; ++k) {
          out[k] = (out[k] + xy * constant(i, j, k)) % _p;
        }
      }
    }
    return out;
  }

  Vec add(Vec const& x, Vec const& y) const {
    Vec out(_dim);
    for (unsigned i = 0; i < _dim; ++i) {
      out[i] = (x[i] + y[i]) % _p;
    }
    return out;
  }

  Vec scale(unsigned s, Vec const& x) const {
    Vec out(_dim);
    for (unsigned i = 0; i < _dim; ++i) {
      out[i] = s * x[i] % _p;
    }
    return out;
  }

  Elem add(Elem x, Elem y) const { return encode(add(decode(x), decode(y))); }
  Elem neg(Elem x) const { return encode(scale(_p - 1, decode(x))); }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem scale(unsigned s, Elem x) const { return encode(scale(s, decode(x))); }
  Elem bracket(Elem x, Elem y) const { return encode(bracket(decode(x), decode(y))); }

 private:
  unsigned _p = 2;
  unsigned _dim = 0;
  std::vector<unsigned> _c;
  std::size_t _size = 1;
};

/// Antisymmetry and the Jacobi identity on basis triples; bilinearity holds by
/// construction. Throws ValidationError naming the basis witness.
inline void validate_lie(LieAlgebraFp const& l) {
  unsigned const d = l.dim();
  unsigned const p = l.p();
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      for (unsigned k = 0; k < d; ++k) {
        if ((l.constant(i, j, k) + l.constant(j, i, k)) % p != 0
            || (i == j && l.constant(i, i, k) != 0)) {
          throw ValidationError("Lie algebra: antisymmetry fails for [e" + std::to_string(i)
                                + ",e" + std::to_string(j) + "]");
        }
      }
    }
  }
  auto e = [&](unsigned i) { return l.decode(l.basis(i)); };
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      for (unsigned k = 0; k < d; ++k) {
        Vec a = l.bracket(e(i), l.bracket(e(j), e(k)));
        Vec b = l.bracket(e(j), l.bracket(e(k), e(i)));
        Vec c = l.bracket(e(k), l.bracket(e(i), e(j)));
        if (l.encode(l.add(l.add(a, b), c)) != 0) {
          throw ValidationError("Lie algebra: Jacobi identity fails on (e" + std::to_string(i)
                                + ",e" + std::to_string(j) + ",e" + std::to_string(k) + ")");
        }
      }
    }
  }
}

/// Operations add, neg, zero, bracket, scale1..scale(p−1) and the derived
/// Mal'tsev term p(x,y,z) = x − y + z.
inline FiniteAlgebra build_lie_algebra(LieAlgebraFp const& l, Limits const& limits = {}) {
  validate_lie(l);
  std::size_t const n = l.size();
  if (n > limits.max_carrier) {
    throw BoundError("Lie algebra: carrier size " + std::to_string(n)
                     + " exceeds the configured bound " + std::to_string(limits.max_carrier));
  }
  std::vector<Vec> vec(n);
  for (Elem x = 0; x < n; ++x) {
    vec[x] = l.decode(x);
  }
  FiniteAlgebra alg;
  alg.size = n;
  alg.maltsev = "p";
  Operation add{"add", 2, {}, false};
  Operation bracket{"bracket", 2, {}, false};
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      add.table.push_back(l.encode(l.add(vec[x], vec[y])));
      bracket.table.push_back(l.encode(l.bracket(vec[x], vec[y])));
    }
  }
  Operation neg{"neg", 1, {}, false};
  for (Elem x = 0; x < n; ++x) {
    neg.table.push_back(l.encode(l.scale(l.p() - 1, vec[x])));
  }
  alg.operations.push_back(std::move(add));
  alg.operations.push_back(std::move(neg));
  alg.operations.push_back({"zero", 0, {0}, false});
  alg.operations.push_back(std::move(bracket));
  for (unsigned s = 1; s < l.p(); ++s) {
    Operation sc{"scale" + std::to_string(s), 1, {}, false};
    for (Elem x = 0; x < n; ++x) {
      sc.table.push_back(l.encode(l.scale(s, vec[x])));
    }
    alg.operations.push_back(std::move(sc));
  }
  Operation p{"p", 3, {}, true};
  p.table.reserve(n * n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        p.table.push_back(l.add(l.sub(x, y), z));
      }
    }
  }
  alg.operations.push_back(std::move(p));
  return alg;
}

/// Linear span of a set of elements.
inline std::vector<Elem> span(LieAlgebraFp const& l, std::vector<Elem> const& gens) {
  std::vector<bool> in(l.size(), false);
  std::vector<Elem> members{0};
  in[0] = true;
  for (Elem g : gens) {
    if (in[g]) {
      continue;
    }
    std::size_t const before = members.size();
    for (std::size_t i = 0; i < before; ++i) {
      for (unsigned s = 1; s < l.p(); ++s) {
        Elem x = l.add(members[i], l.scale(s, g));
        if (!in[x]) {
          in[x] = true;
          members.push_back(x);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

inline bool is_subspace(LieAlgebraFp const& l, std::vector<Elem> const& v) {
  std::vector<Elem> sorted(v);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return span(l, sorted) == sorted;
}

inline bool is_ideal(LieAlgebraFp const& l, std::vector<Elem> const& v) {
  if (!is_subspace(l, v)) {
    return false;
  }
  std::vector<bool> in(l.size(), false);
  for (Elem x : v) {
    in[x] = true;
  }
  for (Elem x : v) {
    for (unsigned i = 0; i < l.dim(); ++i) {
      if (!in[l.bracket(l.basis(i), x)]) {
        return false;
      }
    }
  }
  return true;
}

/// Smallest ideal containing the generators.
inline std::vector<Elem> ideal_generated(LieAlgebraFp const& l, std::vector<Elem> const& gens) {
  auto current = span(l, gens);
  while (true) {
    auto next_gens = current;
    for (Elem x : current) {
      for (unsigned i = 0; i < l.dim(); ++i) {
        next_gens.push_back(l.bracket(l.basis(i), x));
      }
    }
    auto next = span(l, next_gens);
    if (next == current) {
      return current;
    }
    current = std::move(next);
  }
}

/// Span of [x, y] for x ∈ a, y ∈ b.
inline std::vector<Elem> bracket_span(LieAlgebraFp const& l, std::vector<Elem> const& a,
                                      std::vector<Elem> const& b) {
  std::vector<Elem> gens;
  for (Elem x : a) {
    for (Elem y : b) {
      gens.push_back(l.bracket(x, y));
    }
  }
  return span(l, gens);
}

inline Partition ideal_to_partition(LieAlgebraFp const& l, std::vector<Elem> const& ideal) {
  if (!is_ideal(l, ideal)) {
    throw PreconditionError("ideal bridge: subset is not an ideal");
  }
  UnionFind uf(l.size());
  for (Elem x = 0; x < l.size(); ++x) {
    for (Elem k : ideal) {
      uf.unite(x, l.add(x, k));
    }
  }
  return Partition::from_union_find(uf);
}

/// Block of zero of a congruence.
inline std::vector<Elem> partition_to_ideal(FiniteAlgebra const& alg, Partition const& p) {
  require_congruence(alg, p, "ideal bridge:");
  std::vector<Elem> out;
  for (Elem x = 0; x < p.size(); ++x) {
    if (p.related(x, 0)) {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace mgk

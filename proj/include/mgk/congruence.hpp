#pragma once

// Congruence generation, lattice operations, kernel pairs, images and
// quotients.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <deque>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgk/algebra.hpp"
#include "mgk/error.hpp"
#include "mgk/partition.hpp"

namespace mgk {

/// Anything congruence closure can run over: a dense carrier and indexed
/// operations.
template <typename V>
concept AlgebraView = requires(V const& v, std::size_t op, std::span<Elem const> args) {
  { v.size() } -> std::convertible_to<std::size_t>;
  { v.operation_count() } -> std::convertible_to<std::size_t>;
  { v.arity(op) } -> std::convertible_to<unsigned>;
  { v.skip_in_closure(op) } -> std::convertible_to<bool>;
  { v.apply(op, args) } -> std::convertible_to<Elem>;
};

class DenseView {
 public:
  explicit DenseView(FiniteAlgebra const& alg, bool skip_derived = true)
      : _alg(&alg), _skip_derived(skip_derived) {}

  std::size_t size() const { return _alg->size; }
  std::size_t operation_count() const { return _alg->operations.size(); }
  unsigned arity(std::size_t op) const { return _alg->operations[op].arity; }
  bool skip_in_closure(std::size_t op) const {
    return _skip_derived && _alg->operations[op].derived;
  }
  Elem apply(std::size_t op, std::span<Elem const> args) const {
    return _alg->apply(_alg->operations[op], args);
  }

 private:
  FiniteAlgebra const* _alg;
  bool _skip_derived;
};

/// The subalgebra of X² on the related pairs of a congruence, without
/// materializing its tables.
class PairView {
 public:
  PairView(FiniteAlgebra const& alg, Partition const& rel, bool skip_derived = true)
      : _alg(&alg), _pairs(rel.pairs()), _skip_derived(skip_derived),
        _index(alg.size * alg.size, static_cast<Elem>(-1)) {
    for (Elem i = 0; i < _pairs.size(); ++i) {
      _index[_pairs[i].first * alg.size + _pairs[i].second] = i;
    }
  }

  std::size_t size() const { return _pairs.size(); }
  std::size_t operation_count() const { return _alg->operations.size(); }
  unsigned arity(std::size_t op) const { return _alg->operations[op].arity; }
  bool skip_in_closure(std::size_t op) const {
    return _skip_derived && _alg->operations[op].derived;
  }

  Elem apply(std::size_t op, std::span<Elem const> args) const {
    auto const& o = _alg->operations[op];
    std::size_t left = 0;
    std::size_t right = 0;
    for (Elem a : args) {
      left = left * _alg->size + _pairs[a].first;
      right = right * _alg->size + _pairs[a].second;
    }
    return index(o.table[left], o.table[right]);
  }

  Elem index(Elem a, Elem b) const {
    Elem i = _index[a * _alg->size + b];
    if (i == static_cast<Elem>(-1)) {
      throw DisagreementError("pair view: relation is not closed under the operations");
    }
    return i;
  }

  bool has(Elem a, Elem b) const { return _index[a * _alg->size + b] != static_cast<Elem>(-1); }

  std::pair<Elem, Elem> const& pair(Elem i) const { return _pairs[i]; }

 private:
  FiniteAlgebra const* _alg;
  std::vector<std::pair<Elem, Elem>> _pairs;
  bool _skip_derived;
  std::vector<Elem> _index;
};

/// Least congruence of the view containing `start` and the given pairs.
/// Only pairs that caused a union are propagated; their images under all
/// basic translations then generate everything else.
template <AlgebraView V>
Partition congruence_closure(V const& view, Partition const& start,
                             std::vector<std::pair<Elem, Elem>> const& pairs) {
  std::size_t const n = view.size();
  UnionFind uf(n);
  std::deque<std::pair<Elem, Elem>> queue;
  for (Elem i = 0; i < n; ++i) {
    if (start.representative(i) != i) {
      uf.unite(i, start.representative(i));
      queue.emplace_back(i, start.representative(i));
    }
  }
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw PreconditionError("congruence_closure: pair entry out of range");
    }
    if (uf.unite(a, b)) {
      queue.emplace_back(a, b);
    }
  }
  std::vector<Elem> args;
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (std::size_t op = 0; op < view.operation_count(); ++op) {
      unsigned const k = view.arity(op);
      if (k == 0 || view.skip_in_closure(op)) {
        continue;
      }
      args.resize(k);
      for (unsigned pos = 0; pos < k; ++pos) {
        for_each_tuple(n, k - 1, [&](std::span<Elem const> other) {
          for (unsigned j = 0, m = 0; j < k; ++j) {
            if (j != pos) {
              args[j] = other[m++];
            }
          }
          args[pos] = x;
          Elem fx = view.apply(op, args);
          args[pos] = y;
          Elem fy = view.apply(op, args);
          if (uf.unite(fx, fy)) {
            queue.emplace_back(fx, fy);
          }
        });
      }
    }
  }
  return Partition::from_union_find(uf);
}

inline void require_same_size(Partition const& p, std::size_t n, char const* what) {
  if (p.size() != n) {
    throw PreconditionError(std::string(what) + ": partition has size "
                            + std::to_string(p.size()) + ", carrier has size "
                            + std::to_string(n));
  }
}

inline Partition congruence_closure(FiniteAlgebra const& alg,
                                    std::vector<std::pair<Elem, Elem>> const& pairs) {
  return congruence_closure(DenseView(alg), Partition::discrete(alg.size), pairs);
}

/// Least congruence containing the partition `start` and the extra pairs.
inline Partition congruence_closure(FiniteAlgebra const& alg, Partition const& start,
                                    std::vector<std::pair<Elem, Elem>> const& pairs = {}) {
  require_same_size(start, alg.size, "congruence_closure");
  return congruence_closure(DenseView(alg), start, pairs);
}

/// Checks every operation, derived ones included.
inline bool is_congruence(FiniteAlgebra const& alg, Partition const& p) {
  require_same_size(p, alg.size, "is_congruence");
  std::vector<Elem> args;
  for (auto const& op : alg.operations) {
    bool ok = true;
    // Compatibility in each argument separately is enough: replace one
    // coordinate by its block representative.
    for_each_tuple(alg.size, op.arity, [&](std::span<Elem const> t) {
      if (!ok) {
        return;
      }
      args.assign(t.begin(), t.end());
      Elem base = alg.apply(op, args);
      for (unsigned pos = 0; pos < op.arity && ok; ++pos) {
        Elem keep = args[pos];
        args[pos] = p.representative(keep);
        ok = p.related(base, alg.apply(op, args));
        args[pos] = keep;
      }
    });
    if (!ok) {
      return false;
    }
  }
  return true;
}

inline void require_congruence(FiniteAlgebra const& alg, Partition const& p,
                               std::string const& what) {
  if (!is_congruence(alg, p)) {
    throw PreconditionError(what + " " + p.to_string() + " is not a congruence");
  }
}

inline Partition meet(Partition const& p, Partition const& q) {
  if (p.size() != q.size()) {
    throw PreconditionError("meet: carrier sizes differ");
  }
  std::vector<std::pair<Elem, Elem>> labels(p.size());
  for (Elem i = 0; i < p.size(); ++i) {
    labels[i] = {p.representative(i), q.representative(i)};
  }
  return Partition::from_labels(labels);
}

/// Transitive closure of the union. For congruences this is always the
/// congruence join.
inline Partition join_equivalences(Partition const& p, Partition const& q) {
  if (p.size() != q.size()) {
    throw PreconditionError("join: carrier sizes differ");
  }
  UnionFind uf(p.size());
  for (Elem i = 0; i < p.size(); ++i) {
    uf.unite(i, p.representative(i));
    uf.unite(i, q.representative(i));
  }
  return Partition::from_union_find(uf);
}

/// Whether the relational composite p∘q = {(x,z) : ∃y. x p y, y q z} equals target.
inline bool composite_equals(Partition const& p, Partition const& q, Partition const& target) {
  auto pb = p.blocks();
  auto qb = q.blocks();
  auto qidx = q.block_indices();
  std::vector<char> seen(p.size());
  for (auto const& block : pb) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem y : block) {
      for (Elem z : qb[qidx[y]]) {
        seen[z] = 1;
      }
    }
    Elem x = block.front();
    for (Elem z = 0; z < p.size(); ++z) {
      if (static_cast<bool>(seen[z]) != target.related(x, z)) {
        return false;
      }
    }
  }
  return true;
}

/// Least congruence containing both. Cross-checked against congruence
/// generation and against both relational composites, which coincide exactly
/// when congruences permute.
inline Partition join(FiniteAlgebra const& alg, Partition const& p, Partition const& q) {
  require_same_size(p, alg.size, "join");
  require_same_size(q, alg.size, "join");
  require_congruence(alg, p, "join: left argument");
  require_congruence(alg, q, "join: right argument");
  Partition j = join_equivalences(p, q);
  if (congruence_closure(alg, p, q.pairs()) != j) {
    throw DisagreementError("join: generated congruence differs from transitive closure");
  }
  if (!composite_equals(p, q, j) || !composite_equals(q, p, j)) {
    throw DisagreementError("join: congruences " + p.to_string() + " and " + q.to_string()
                            + " do not permute");
  }
  return j;
}

inline Partition kernel_pair(Homomorphism const& f) {
  return Partition::from_labels(f.map);
}

/// Image of a congruence along a surjection. Over a Mal'tsev algebra the raw
/// image relation is already transitive; anything else is reported.
inline Partition direct_image(Homomorphism const& f, Partition const& r) {
  require_same_size(r, f.source->size, "direct_image");
  if (!is_surjective(f)) {
    throw PreconditionError("direct_image: map is not surjective");
  }
  std::size_t const m = f.target->size;
  UnionFind uf(m);
  for (Elem x = 0; x < r.size(); ++x) {
    uf.unite(f.map[x], f.map[r.representative(x)]);
  }
  Partition out = Partition::from_union_find(uf);
  std::vector<char> raw(m * m, 0);
  std::size_t raw_count = 0;
  for (auto const& block : r.blocks()) {
    std::vector<Elem> images;
    for (Elem x : block) {
      images.push_back(f.map[x]);
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    for (Elem u : images) {
      for (Elem v : images) {
        if (!raw[u * m + v]) {
          raw[u * m + v] = 1;
          ++raw_count;
        }
      }
    }
  }
  if (raw_count != out.pair_count()) {
    throw DisagreementError("direct_image: image of " + r.to_string()
                            + " is not transitive");
  }
  return out;
}

inline Partition inverse_image(Homomorphism const& f, Partition const& r) {
  require_same_size(r, f.target->size, "inverse_image");
  std::vector<Elem> labels(f.map.size());
  for (Elem x = 0; x < labels.size(); ++x) {
    labels[x] = r.representative(f.map[x]);
  }
  return Partition::from_labels(labels);
}

/// Finer partitions first; ties broken by the representative array.
inline bool refinement_order(Partition const& a, Partition const& b) {
  if (a.block_count() != b.block_count()) {
    return a.block_count() > b.block_count();
  }
  return a.representatives() < b.representatives();
}

/// All congruences contained in `bound`, as the join closure of the
/// principal congruences of pairs in `bound`.
inline std::vector<Partition> congruences_below(FiniteAlgebra const& alg, Partition const& bound,
                                                Limits const& limits = {}) {
  require_within(alg, limits, "congruences_below");
  require_same_size(bound, alg.size, "congruences_below");
  DenseView view(alg);
  std::set<std::vector<Elem>> seen;
  std::vector<Partition> principal;
  for (auto [a, b] : bound.pairs()) {
    if (a < b) {
      Partition c = congruence_closure(view, Partition::discrete(alg.size), {{a, b}});
      if (!c.leq(bound)) {
        throw PreconditionError("congruences_below: bound " + bound.to_string()
                                + " is not a congruence");
      }
      if (seen.insert(c.representatives()).second) {
        principal.push_back(std::move(c));
      }
    }
  }
  std::vector<Partition> all{Partition::discrete(alg.size)};
  seen.insert(all.front().representatives());
  for (auto const& c : principal) {
    all.push_back(c);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (auto const& c : principal) {
      Partition j = join_equivalences(all[i], c);
      if (seen.insert(j.representatives()).second) {
        all.push_back(std::move(j));
      }
    }
  }
  std::sort(all.begin(), all.end(), refinement_order);
  return all;
}

inline std::vector<Partition> congruence_lattice(FiniteAlgebra const& alg,
                                                 Limits const& limits = {}) {
  if (alg.size > limits.oracle_max) {
    throw BoundError("congruence_lattice: carrier size " + std::to_string(alg.size)
                     + " exceeds the oracle bound " + std::to_string(limits.oracle_max));
  }
  return congruences_below(alg, Partition::total(alg.size), limits);
}

struct Quotient {
  AlgebraRef algebra;
  Homomorphism projection;
};

/// X/T with blocks numbered by least element.
inline Quotient quotient_algebra(AlgebraRef const& alg, Partition const& t) {
  require_same_size(t, alg->size, "quotient_algebra");
  require_congruence(*alg, t, "quotient_algebra:");
  auto index = t.block_indices();
  std::vector<Elem> reps;
  for (Elem i = 0; i < t.size(); ++i) {
    if (t.representative(i) == i) {
      reps.push_back(i);
    }
  }
  FiniteAlgebra out;
  out.size = reps.size();
  out.maltsev = alg->maltsev;
  std::vector<Elem> args;
  for (auto const& op : alg->operations) {
    Operation o{op.name, op.arity, {}, op.derived};
    o.table.reserve(ipow(out.size, op.arity));
    for_each_tuple(out.size, op.arity, [&](std::span<Elem const> blocks) {
      args.resize(blocks.size());
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        args[k] = reps[blocks[k]];
      }
      o.table.push_back(index[alg->apply(op, args)]);
    });
    out.operations.push_back(std::move(o));
  }
  auto q = share(std::move(out));
  return {q, {alg, q, std::move(index)}};
}

}  // namespace mgk

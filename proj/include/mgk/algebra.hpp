#pragma once

// Finite algebras with a designated Mal'tsev operation, homomorphisms between
// them, products, subalgebras and the small amount of generic machinery the
// congruence and commutator code runs on.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mgk/error.hpp"
#include "mgk/partition.hpp"

namespace mgk {

/// Size limits. X⁴ constructions are guarded by max_carrier, the exhaustive
/// oracles by oracle_max.
struct Limits {
  std::size_t max_carrier = 64;
  std::size_t oracle_max = 8;
};

/// A basic operation given by its dense row-major table (first argument most
/// significant). `derived` marks an operation its builder knows to be a term
/// in the remaining operations; closure computations may then skip it, since
/// anything closed under the others is closed under it.
struct Operation {
  std::string name;
  unsigned arity = 0;
  std::vector<Elem> table;
  bool derived = false;

  bool operator==(Operation const&) const = default;
};

struct FiniteAlgebra {
  std::size_t size = 0;
  std::vector<Operation> operations;
  std::string maltsev;

  Operation const* find(std::string_view name) const {
    for (auto const& op : operations) {
      if (op.name == name) {
        return &op;
      }
    }
    return nullptr;
  }

  Operation const& operation(std::string_view name) const {
    if (auto const* op = find(name)) {
      return *op;
    }
    throw PreconditionError("algebra has no operation named '" + std::string(name) + "'");
  }

  Operation const& maltsev_operation() const { return operation(maltsev); }

  Elem apply(Operation const& op, std::span<Elem const> args) const {
    std::size_t index = 0;
    for (Elem a : args) {
      index = index * size + a;
    }
    return op.table[index];
  }

  Elem apply(Operation const& op, std::initializer_list<Elem> args) const {
    return apply(op, std::span<Elem const>(args.begin(), args.size()));
  }

  Elem maltsev_term(Elem x, Elem y, Elem z) const {
    return maltsev_operation().table[(x * size + y) * size + z];
  }

  bool operator==(FiniteAlgebra const&) const = default;
};

using AlgebraRef = std::shared_ptr<FiniteAlgebra const>;

inline AlgebraRef share(FiniteAlgebra alg) {
  return std::make_shared<FiniteAlgebra const>(std::move(alg));
}

inline bool same_algebra(AlgebraRef const& a, AlgebraRef const& b) {
  return a == b || (a && b && *a == *b);
}

inline std::size_t ipow(std::size_t base, unsigned exp) {
  std::size_t r = 1;
  while (exp-- > 0) {
    r *= base;
  }
  return r;
}

inline std::string format_tuple(std::span<Elem const> args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    s += (i ? "," : "") + std::to_string(args[i]);
  }
  return s + ")";
}

/// Calls fn(args) for every tuple in 0..n-1 of the given arity, in
/// lexicographic (= table) order.
template <typename Fn>
void for_each_tuple(std::size_t n, unsigned arity, Fn&& fn) {
  std::vector<Elem> args(arity, 0);
  if (arity == 0) {
    fn(std::span<Elem const>(args));
    return;
  }
  if (n == 0) {
    return;
  }
  while (true) {
    fn(std::span<Elem const>(args));
    unsigned k = arity;
    while (k > 0) {
      --k;
      if (++args[k] < n) {
        break;
      }
      args[k] = 0;
      if (k == 0) {
        return;
      }
    }
  }
}

////////////////////////////////////////////////////////////////////////////////
// Validation
////////////////////////////////////////////////////////////////////////////////

struct Violation {
  std::string operation;
  std::vector<Elem> witness;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

inline ValidationReport validate_algebra(FiniteAlgebra const& alg) {
  ValidationReport report;
  std::size_t const n = alg.size;
  if (n == 0) {
    report.push_back({"", {}, "carrier is empty"});
    return report;
  }
  bool tables_ok = true;
  for (std::size_t i = 0; i < alg.operations.size(); ++i) {
    auto const& op = alg.operations[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (alg.operations[j].name == op.name) {
        report.push_back({op.name, {}, "duplicate operation name"});
      }
    }
    std::size_t expected = ipow(n, op.arity);
    if (op.table.size() != expected) {
      report.push_back({op.name, {},
                        "table has " + std::to_string(op.table.size())
                            + " entries, expected " + std::to_string(expected)});
      tables_ok = false;
      continue;
    }
    for_each_tuple(n, op.arity, [&](std::span<Elem const> args) {
      Elem v = alg.apply(op, args);
      if (v >= n) {
        report.push_back({op.name, {args.begin(), args.end()},
                          op.name + format_tuple(args) + "=" + std::to_string(v)
                              + " out of range"});
        tables_ok = false;
      }
    });
  }
  auto const* p = alg.find(alg.maltsev);
  if (p == nullptr) {
    report.push_back({alg.maltsev, {}, "designated Mal'tsev operation is missing"});
    return report;
  }
  if (p->arity != 3) {
    report.push_back({p->name, {}, "designated Mal'tsev operation is not ternary"});
    return report;
  }
  if (!tables_ok) {
    return report;
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      Elem a = alg.maltsev_term(x, y, y);
      if (a != x) {
        report.push_back({p->name, {x, y, y},
                          p->name + format_tuple(std::vector<Elem>{x, y, y}) + "="
                              + std::to_string(a) + "≠" + std::to_string(x)});
      }
      Elem b = alg.maltsev_term(x, x, y);
      if (b != y) {
        report.push_back({p->name, {x, x, y},
                          p->name + format_tuple(std::vector<Elem>{x, x, y}) + "="
                              + std::to_string(b) + "≠" + std::to_string(y)});
      }
    }
  }
  return report;
}

inline std::string describe(ValidationReport const& report, std::size_t max = 3) {
  std::string s;
  for (std::size_t i = 0; i < report.size() && i < max; ++i) {
    s += (i ? "; " : "") + report[i].message;
  }
  if (report.size() > max) {
    s += "; ... (" + std::to_string(report.size()) + " violations)";
  }
  return s;
}

inline void require_valid(FiniteAlgebra const& alg, std::string const& what = "algebra") {
  auto report = validate_algebra(alg);
  if (!report.empty()) {
    throw ValidationError(what + ": " + describe(report));
  }
}

inline void require_within(FiniteAlgebra const& alg, Limits const& limits,
                           std::string const& what) {
  if (alg.size > limits.max_carrier) {
    throw BoundError(what + ": carrier size " + std::to_string(alg.size)
                     + " exceeds the configured bound "
                     + std::to_string(limits.max_carrier));
  }
}

inline bool same_signature(FiniteAlgebra const& a, FiniteAlgebra const& b) {
  if (a.operations.size() != b.operations.size() || a.maltsev != b.maltsev) {
    return false;
  }
  for (auto const& op : a.operations) {
    auto const* other = b.find(op.name);
    if (other == nullptr || other->arity != op.arity) {
      return false;
    }
  }
  return true;
}

////////////////////////////////////////////////////////////////////////////////
// Homomorphisms
////////////////////////////////////////////////////////////////////////////////

struct Homomorphism {
  AlgebraRef source;
  AlgebraRef target;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }
};

enum class HomClass { not_hom, hom, surjective_hom };

inline char const* to_string(HomClass c) {
  switch (c) {
    case HomClass::not_hom:
      return "not-hom";
    case HomClass::hom:
      return "hom";
    case HomClass::surjective_hom:
      return "surjective-hom";
  }
  return "?";
}

inline bool is_surjective(Homomorphism const& f) {
  std::vector<bool> hit(f.target->size, false);
  for (Elem y : f.map) {
    if (y < hit.size()) {
      hit[y] = true;
    }
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool is_injective(Homomorphism const& f) {
  std::vector<bool> hit(f.target->size, false);
  for (Elem y : f.map) {
    if (hit[y]) {
      return false;
    }
    hit[y] = true;
  }
  return true;
}

inline HomClass check_homomorphism(Homomorphism const& f) {
  auto const& src = *f.source;
  auto const& tgt = *f.target;
  if (f.map.size() != src.size) {
    return HomClass::not_hom;
  }
  for (Elem y : f.map) {
    if (y >= tgt.size) {
      return HomClass::not_hom;
    }
  }
  if (!same_signature(src, tgt)) {
    return HomClass::not_hom;
  }
  std::vector<Elem> image;
  for (auto const& op : src.operations) {
    auto const& top = tgt.operation(op.name);
    bool ok = true;
    for_each_tuple(src.size, op.arity, [&](std::span<Elem const> args) {
      if (!ok) {
        return;
      }
      image.assign(args.size(), 0);
      for (std::size_t k = 0; k < args.size(); ++k) {
        image[k] = f.map[args[k]];
      }
      ok = f.map[src.apply(op, args)] == tgt.apply(top, image);
    });
    if (!ok) {
      return HomClass::not_hom;
    }
  }
  return is_surjective(f) ? HomClass::surjective_hom : HomClass::hom;
}

inline void require_homomorphism(Homomorphism const& f, std::string const& what = "map") {
  if (check_homomorphism(f) == HomClass::not_hom) {
    throw ValidationError(what + " is not a homomorphism");
  }
}

inline Homomorphism identity_hom(AlgebraRef const& alg) {
  std::vector<Elem> map(alg->size);
  for (Elem i = 0; i < map.size(); ++i) {
    map[i] = i;
  }
  return {alg, alg, std::move(map)};
}

/// g ∘ f.
inline Homomorphism compose(Homomorphism const& g, Homomorphism const& f) {
  if (!same_algebra(f.target, g.source)) {
    throw PreconditionError("compose: target of the first map is not the source of the second");
  }
  std::vector<Elem> map(f.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    map[i] = g.map[f.map[i]];
  }
  return {f.source, g.target, std::move(map)};
}

////////////////////////////////////////////////////////////////////////////////
// Products and subalgebras
////////////////////////////////////////////////////////////////////////////////

struct Product {
  AlgebraRef algebra;
  Homomorphism first;
  Homomorphism second;

  /// Index of the pair (a, b); pairs are ordered lexicographically.
  Elem pair(Elem a, Elem b) const {
    return static_cast<Elem>(a * second.target->size + b);
  }
};

namespace detail {

  inline void require_same_signature(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                     std::string const& what) {
    if (!same_signature(a, b)) {
      throw PreconditionError(what + ": signatures differ");
    }
  }

  /// Materializes the subalgebra of a × b on the given (sorted, closed) pairs.
  inline FiniteAlgebra pair_algebra(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                    std::vector<std::pair<Elem, Elem>> const& pairs) {
    std::vector<Elem> index(a.size * b.size, static_cast<Elem>(-1));
    for (Elem i = 0; i < pairs.size(); ++i) {
      index[pairs[i].first * b.size + pairs[i].second] = i;
    }
    FiniteAlgebra out;
    out.size = pairs.size();
    out.maltsev = a.maltsev;
    std::vector<Elem> left;
    std::vector<Elem> right;
    for (auto const& op : a.operations) {
      auto const& bop = b.operation(op.name);
      Operation o{op.name, op.arity, {}, op.derived && bop.derived};
      o.table.reserve(ipow(out.size, op.arity));
      for_each_tuple(out.size, op.arity, [&](std::span<Elem const> args) {
        left.resize(args.size());
        right.resize(args.size());
        for (std::size_t k = 0; k < args.size(); ++k) {
          left[k] = pairs[args[k]].first;
          right[k] = pairs[args[k]].second;
        }
        Elem idx = index[a.apply(op, left) * b.size + b.apply(bop, right)];
        if (idx == static_cast<Elem>(-1)) {
          throw PreconditionError("pair set is not closed under " + op.name);
        }
        o.table.push_back(idx);
      });
      out.operations.push_back(std::move(o));
    }
    return out;
  }

}  // namespace detail

inline Product product_algebra(AlgebraRef const& a, AlgebraRef const& b,
                               Limits const& limits = {}) {
  detail::require_same_signature(*a, *b, "product_algebra");
  if (a->size * b->size > limits.max_carrier) {
    throw BoundError("product_algebra: carrier size " + std::to_string(a->size * b->size)
                     + " exceeds the configured bound " + std::to_string(limits.max_carrier));
  }
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem x = 0; x < a->size; ++x) {
    for (Elem y = 0; y < b->size; ++y) {
      pairs.emplace_back(x, y);
    }
  }
  auto alg = share(detail::pair_algebra(*a, *b, pairs));
  std::vector<Elem> p1(pairs.size());
  std::vector<Elem> p2(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    p1[i] = pairs[i].first;
    p2[i] = pairs[i].second;
  }
  return {alg, {alg, a, std::move(p1)}, {alg, b, std::move(p2)}};
}

/// The map z ↦ (f(z), g(z)) into a product.
inline Homomorphism pairing(Homomorphism const& f, Homomorphism const& g,
                            Product const& product) {
  if (!same_algebra(f.source, g.source)) {
    throw PreconditionError("pairing: maps have different sources");
  }
  std::vector<Elem> map(f.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    map[i] = product.pair(f.map[i], g.map[i]);
  }
  return {f.source, product.algebra, std::move(map)};
}

/// A subalgebra of a × b on an explicit set of pairs, with both projections.
struct SubProduct {
  AlgebraRef algebra;
  std::vector<std::pair<Elem, Elem>> pairs;
  Homomorphism first;
  Homomorphism second;

  /// Index of (a, b), or nullopt-like -1 when the pair is not a member.
  Elem index_of(Elem a, Elem b) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, b));
    return (it != pairs.end() && *it == std::make_pair(a, b))
               ? static_cast<Elem>(it - pairs.begin())
               : static_cast<Elem>(-1);
  }
};

inline SubProduct sub_product(AlgebraRef const& a, AlgebraRef const& b,
                              std::vector<std::pair<Elem, Elem>> pairs,
                              Limits const& limits = {}) {
  detail::require_same_signature(*a, *b, "sub_product");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (pairs.size() > limits.max_carrier) {
    throw BoundError("sub_product: carrier size " + std::to_string(pairs.size())
                     + " exceeds the configured bound " + std::to_string(limits.max_carrier));
  }
  auto alg = share(detail::pair_algebra(*a, *b, pairs));
  std::vector<Elem> p1(pairs.size());
  std::vector<Elem> p2(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    p1[i] = pairs[i].first;
    p2[i] = pairs[i].second;
  }
  return {alg, pairs, {alg, a, std::move(p1)}, {alg, b, std::move(p2)}};
}

/// Pullback of f: A → C and g: B → C as the subalgebra {(a,b) : f(a) = g(b)}.
inline SubProduct pullback(Homomorphism const& f, Homomorphism const& g,
                           Limits const& limits = {}) {
  if (!same_algebra(f.target, g.target)) {
    throw PreconditionError("pullback: maps have different targets");
  }
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < f.map.size(); ++a) {
    for (Elem b = 0; b < g.map.size(); ++b) {
      if (f.map[a] == g.map[b]) {
        pairs.emplace_back(a, b);
      }
    }
  }
  return sub_product(f.source, g.source, std::move(pairs), limits);
}

/// Smallest subset containing seed and closed under every operation.
inline std::vector<Elem> subalgebra_closure(FiniteAlgebra const& alg,
                                            std::vector<Elem> const& seed) {
  std::vector<bool> in(alg.size, false);
  std::vector<Elem> members;
  auto add = [&](Elem x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  for (Elem x : seed) {
    if (x >= alg.size) {
      throw PreconditionError("subalgebra_closure: seed element out of range");
    }
    add(x);
  }
  std::vector<Elem> args;
  // Semi-naive fixpoint: every new tuple must involve at least one element
  // added since the previous round.
  std::size_t old_count = 0;
  bool first_round = true;
  while (first_round || old_count < members.size()) {
    std::size_t const frontier = members.size();
    for (auto const& op : alg.operations) {
      if (op.arity == 0) {
        if (first_round) {
          add(op.table[0]);
        }
        continue;
      }
      std::vector<Elem> snapshot(members.begin(), members.begin() + frontier);
      for_each_tuple(snapshot.size(), op.arity, [&](std::span<Elem const> idx) {
        bool fresh = false;
        args.resize(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
          fresh |= idx[k] >= old_count;
          args[k] = snapshot[idx[k]];
        }
        if (fresh || first_round) {
          add(alg.apply(op, args));
        }
      });
    }
    old_count = frontier;
    first_round = false;
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// Re-indexes a closed subset as an algebra of its own, with the inclusion.
struct Subalgebra {
  AlgebraRef algebra;
  Homomorphism inclusion;
};

inline Subalgebra subalgebra(AlgebraRef const& alg, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<Elem> index(alg->size, static_cast<Elem>(-1));
  for (Elem i = 0; i < elements.size(); ++i) {
    index[elements[i]] = i;
  }
  FiniteAlgebra out;
  out.size = elements.size();
  out.maltsev = alg->maltsev;
  std::vector<Elem> args;
  for (auto const& op : alg->operations) {
    Operation o{op.name, op.arity, {}, op.derived};
    for_each_tuple(out.size, op.arity, [&](std::span<Elem const> idx) {
      args.resize(idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) {
        args[k] = elements[idx[k]];
      }
      Elem v = index[alg->apply(op, args)];
      if (v == static_cast<Elem>(-1)) {
        throw PreconditionError("subalgebra: subset is not closed under " + op.name);
      }
      o.table.push_back(v);
    });
    out.operations.push_back(std::move(o));
  }
  auto sub = share(std::move(out));
  return {sub, {sub, alg, std::move(elements)}};
}

}  // namespace mgk

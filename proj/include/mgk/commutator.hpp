#pragma once

// Double relations over a pair of congruences, centralization, connectors and
// the commutator [R,S].
//
// A quadruple (a,b,d,c) is the matrix with rows (a,b) and (d,c); rows are
// R-related, columns S-related.
//
// The generated double relation W is computed without touching X⁴: viewed as
// a relation on the algebra of R-pairs, W contains the diagonal, so in a
// Mal'tsev algebra it is the congruence on that algebra generated by
// ((a,a),(c,c)) for a S c. Transposing rows and columns swaps the roles of R
// and S, so the smaller of the two pair algebras is used.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgk/algebra.hpp"
#include "mgk/congruence.hpp"
#include "mgk/error.hpp"
#include "mgk/partition.hpp"

namespace mgk {

using Quadruple = std::array<Elem, 4>;  // (a, b, d, c)

struct QuadrupleRelation {
  std::size_t base_size = 0;
  std::vector<Quadruple> members;  // sorted, unique

  bool contains(Quadruple const& q) const {
    return std::binary_search(members.begin(), members.end(), q);
  }
  std::size_t size() const { return members.size(); }
  bool operator==(QuadrupleRelation const&) const = default;
};

inline QuadrupleRelation canonical(std::size_t base_size, std::vector<Quadruple> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return {base_size, std::move(members)};
}

namespace detail {

  inline void require_pair(FiniteAlgebra const& alg, Partition const& r, Partition const& s,
                           std::string const& what, Limits const& limits) {
    require_within(alg, limits, what);
    require_congruence(alg, r, what + ": R");
    require_congruence(alg, s, what + ": S");
  }

}  // namespace detail

/// R□S: all matrices with R-related rows and S-related columns.
inline QuadrupleRelation box(FiniteAlgebra const& alg, Partition const& r, Partition const& s,
                             Limits const& limits = {}) {
  detail::require_pair(alg, r, s, "box", limits);
  auto rb = r.blocks();
  auto ri = r.block_indices();
  auto sb = s.blocks();
  auto si = s.block_indices();
  std::vector<Quadruple> out;
  for (auto [a, b] : r.pairs()) {
    for (Elem d : sb[si[a]]) {
      for (Elem c : rb[ri[d]]) {
        if (s.related(b, c)) {
          out.push_back({a, b, d, c});
        }
      }
    }
  }
  return canonical(alg.size, std::move(out));
}

/// A functional-in-d failure: (a,b,d,c) and (a,b,d',c) both lie in W with
/// a R b, b S c and d ≠ d'.
struct CentralityWitness {
  Elem a, b, c, d, d2;

  std::string to_string() const {
    return "a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(c)
           + " d=" + std::to_string(d) + " d'=" + std::to_string(d2);
  }
  bool operator==(CentralityWitness const&) const = default;
};

/// W as a partition of the smaller pair algebra.
class DoubleRelation {
 public:
  DoubleRelation(FiniteAlgebra const& alg, Partition const& r, Partition const& s,
                 bool skip_derived = true)
      : _n(alg.size), _rows(r.pair_count() <= s.pair_count()),
        _view(alg, _rows ? r : s, skip_derived) {
    // Seed pairs: ((a,a),(c,c)) for a related by the other congruence.
    Partition const& other = _rows ? s : r;
    std::vector<std::pair<Elem, Elem>> seed;
    for (Elem a = 0; a < _n; ++a) {
      if (other.representative(a) != a) {
        Elem c = other.representative(a);
        seed.emplace_back(_view.index(a, a), _view.index(c, c));
      }
    }
    _classes = congruence_closure(_view, Partition::discrete(_view.size()), seed);
  }

  /// Membership of (a,b,d,c); assumes rows R-related and columns S-related.
  bool contains(Elem a, Elem b, Elem d, Elem c) const {
    return _rows ? _classes.related(_view.index(a, b), _view.index(d, c))
                 : _classes.related(_view.index(a, d), _view.index(b, c));
  }

  /// All d with (a,b,d,c) ∈ W, given a R b and b S c.
  std::vector<Elem> completions(Elem a, Elem b, Elem c) const {
    std::vector<Elem> out;
    for (Elem d = 0; d < _n; ++d) {
      Elem const x = _rows ? d : a;
      Elem const y = _rows ? c : d;
      if (_view.has(x, y) && contains(a, b, d, c)) {
        out.push_back(d);
      }
    }
    return out;
  }

  QuadrupleRelation materialize() const {
    std::vector<Quadruple> out;
    for (auto const& block : _classes.blocks()) {
      for (Elem u : block) {
        for (Elem v : block) {
          auto [p, q] = _view.pair(u);
          auto [r, s] = _view.pair(v);
          // R-view: rows (p,q),(r,s). S-view: columns (p,q),(r,s).
          out.push_back(_rows ? Quadruple{p, q, r, s} : Quadruple{p, r, q, s});
        }
      }
    }
    return canonical(_n, std::move(out));
  }

  /// Every violation of functionality in d, as witnesses. Only the first is
  /// produced when first_only is set.
  std::vector<CentralityWitness> violations(bool first_only = false) const {
    std::vector<CentralityWitness> out;
    // Within one class, members sharing the coordinate that stays fixed must
    // agree on the other.
    for (auto const& block : _classes.blocks()) {
      std::vector<std::pair<Elem, Elem>> keyed;
      for (Elem u : block) {
        auto [p, q] = _view.pair(u);
        keyed.emplace_back(_rows ? std::make_pair(q, p) : std::make_pair(p, q));
      }
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t i = 1; i < keyed.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && keyed[j - 1].first == keyed[i].first) {
          --j;
        }
        if (j == i) {
          continue;
        }
        Elem const key = keyed[i].first;
        Elem const d0 = keyed[j].second;
        Elem const d1 = keyed[i].second;
        if (_rows) {
          // (d0,key) and (d1,key) are W-related rows: (d0,key,d1,key) ∈ W.
          out.push_back({d0, key, key, d1, d0});
        } else {
          // (key,d0) and (key,d1) are W-related columns: (key,key,d0,d1) ∈ W
          // beside the generator (key,key,d1,d1).
          out.push_back({key, key, d1, d0, d1});
        }
        if (first_only) {
          return out;
        }
      }
    }
    return out;
  }

 private:
  std::size_t _n;
  bool _rows;
  PairView _view;
  Partition _classes;
};

/// W: the double relation generated by (a,b,a,b), a R b, and (a,a,c,c), a S c.
inline QuadrupleRelation generated_double_relation(FiniteAlgebra const& alg, Partition const& r,
                                                   Partition const& s,
                                                   Limits const& limits = {}) {
  detail::require_pair(alg, r, s, "generated_double_relation", limits);
  return DoubleRelation(alg, r, s).materialize();
}

inline std::optional<CentralityWitness> centrality_witness(FiniteAlgebra const& alg,
                                                           Partition const& r,
                                                           Partition const& s,
                                                           Limits const& limits = {}) {
  detail::require_pair(alg, r, s, "centralizes", limits);
  auto v = DoubleRelation(alg, r, s).violations(true);
  if (v.empty()) {
    return std::nullopt;
  }
  return v.front();
}

inline bool centralizes(FiniteAlgebra const& alg, Partition const& r, Partition const& s,
                        Limits const& limits = {}) {
  return !centrality_witness(alg, r, s, limits).has_value();
}

////////////////////////////////////////////////////////////////////////////////
// Connectors
////////////////////////////////////////////////////////////////////////////////

/// The partial operation p(a,b,c) defined for a R b, b S c.
struct ConnectorTable {
  std::size_t size = 0;
  Partition r;
  Partition s;
  std::vector<Elem> entries;  // n³, undefined entries hold `none`

  static constexpr Elem none = static_cast<Elem>(-1);

  bool defined(Elem a, Elem b, Elem c) const { return at(a, b, c) != none; }
  Elem at(Elem a, Elem b, Elem c) const { return entries[(a * size + b) * size + c]; }
  std::size_t domain_size() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](Elem e) { return e != none; }));
  }
};

class NotCentralizingError : public PreconditionError {
 public:
  explicit NotCentralizingError(CentralityWitness w)
      : PreconditionError("relations do not centralize: " + w.to_string()), witness(w) {}
  CentralityWitness witness;
};

inline ConnectorTable connector(FiniteAlgebra const& alg, Partition const& r, Partition const& s,
                                Limits const& limits = {}) {
  detail::require_pair(alg, r, s, "connector", limits);
  DoubleRelation w(alg, r, s);
  auto v = w.violations(true);
  if (!v.empty()) {
    throw NotCentralizingError(v.front());
  }
  std::size_t const n = alg.size;
  ConnectorTable t{n, r, s, std::vector<Elem>(n * n * n, ConnectorTable::none)};
  auto sb = s.blocks();
  auto si = s.block_indices();
  for (auto [a, b] : r.pairs()) {
    for (Elem c : sb[si[b]]) {
      auto ds = w.completions(a, b, c);
      if (ds.size() != 1) {
        throw DisagreementError("connector: " + std::to_string(ds.size())
                                + " completions for a=" + std::to_string(a)
                                + " b=" + std::to_string(b) + " c=" + std::to_string(c));
      }
      if (ds.front() != alg.maltsev_term(a, b, c)) {
        throw DisagreementError("connector: completion differs from the Mal'tsev term");
      }
      t.entries[(a * n + b) * n + c] = ds.front();
    }
  }
  return t;
}

struct ConnectorLawFailure {
  std::string law;
  std::vector<Elem> witness;
};

/// Checks unit laws, side relations and associativity exhaustively on the
/// domain. Returns every failure.
inline std::vector<ConnectorLawFailure> check_connector_laws(ConnectorTable const& t) {
  std::vector<ConnectorLawFailure> out;
  auto const& r = t.r;
  auto const& s = t.s;
  auto rb = r.blocks();
  auto ri = r.block_indices();
  auto sb = s.blocks();
  auto si = s.block_indices();
  for (Elem x = 0; x < t.size; ++x) {
    for (Elem y : rb[ri[x]]) {
      if (t.at(x, y, y) != x) {
        out.push_back({"p(x,y,y)=x", {x, y}});
      }
    }
    for (Elem z : sb[si[x]]) {
      if (t.at(x, x, z) != z) {
        out.push_back({"p(y,y,z)=z", {x, z}});
      }
    }
  }
  for (auto [x, y] : r.pairs()) {
    for (Elem z : sb[si[y]]) {
      Elem w = t.at(x, y, z);
      if (w == ConnectorTable::none) {
        out.push_back({"domain", {x, y, z}});
        continue;
      }
      if (!s.related(x, w) || !r.related(z, w)) {
        out.push_back({"x S p(x,y,z) and z R p(x,y,z)", {x, y, z}});
        continue;
      }
      for (Elem u : rb[ri[z]]) {
        for (Elem v : sb[si[u]]) {
          Elem right_inner = t.at(z, u, v);
          if (!t.defined(w, u, v) || !t.defined(x, y, right_inner)) {
            continue;
          }
          if (t.at(w, u, v) != t.at(x, y, right_inner)) {
            out.push_back({"associativity", {x, y, z, u, v}});
          }
        }
      }
    }
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////////
// Commutator
////////////////////////////////////////////////////////////////////////////////

struct CommutatorRun {
  Partition value;
  std::size_t rounds = 0;
};

/// [R,S] by iterated quotienting: collect every violation of functionality in
/// X/T, lift to X, grow T, repeat.
inline CommutatorRun commutator_run(AlgebraRef const& alg, Partition const& r, Partition const& s,
                                    Limits const& limits = {}) {
  detail::require_pair(*alg, r, s, "commutator", limits);
  Partition t = Partition::discrete(alg->size);
  std::size_t rounds = 0;
  while (true) {
    ++rounds;
    auto q = quotient_algebra(alg, t);
    Partition qr = direct_image(q.projection, r);
    Partition qs = direct_image(q.projection, s);
    auto v = DoubleRelation(*q.algebra, qr, qs).violations();
    if (v.empty()) {
      return {t, rounds};
    }
    // Block i of X/T is represented by the i-th least representative.
    std::vector<Elem> reps;
    for (Elem i = 0; i < t.size(); ++i) {
      if (t.representative(i) == i) {
        reps.push_back(i);
      }
    }
    std::vector<std::pair<Elem, Elem>> lifted;
    lifted.reserve(v.size());
    for (auto const& w : v) {
      lifted.emplace_back(reps[w.d], reps[w.d2]);
    }
    Partition next = congruence_closure(*alg, t, lifted);
    if (next == t) {
      throw DisagreementError("commutator: violations did not enlarge the congruence");
    }
    t = std::move(next);
  }
}

inline Partition commutator(AlgebraRef const& alg, Partition const& r, Partition const& s,
                            Limits const& limits = {}) {
  return commutator_run(alg, r, s, limits).value;
}

inline Partition commutator(FiniteAlgebra const& alg, Partition const& r, Partition const& s,
                            Limits const& limits = {}) {
  return commutator(share(alg), r, s, limits);
}

}  // namespace mgk

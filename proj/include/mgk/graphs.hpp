#pragma once

// Reflexive graphs over a fixed base object, precrossed modules of Lie
// algebras and of groups with their semidirect-product graphs, and the
// Peiffer commutator.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgk/algebra.hpp"
#include "mgk/commutator.hpp"
#include "mgk/congruence.hpp"
#include "mgk/error.hpp"
#include "mgk/galois.hpp"
#include "mgk/groups.hpp"
#include "mgk/lie.hpp"
#include "mgk/partition.hpp"

namespace mgk {

////////////////////////////////////////////////////////////////////////////////
// Precrossed modules of Lie algebras
////////////////////////////////////////////////////////////////////////////////

/// B acts on L linearly: ^{b_i} l_j = Σ_k action[i][k·dL + j] l_k, and
/// ∂ l_j = Σ_k boundary[k·dL + j] b_k.
struct LiePrecrossedModule {
  LieAlgebraFp base;
  LieAlgebraFp module;
  std::vector<std::vector<unsigned>> action;
  std::vector<unsigned> boundary;

  unsigned p() const { return base.p(); }
  unsigned db() const { return base.dim(); }
  unsigned dl() const { return module.dim(); }

  Vec act(Vec const& b, Vec const& l) const {
    Vec out(dl(), 0);
    for (unsigned i = 0; i < db(); ++i) {
      if (b[i] == 0) {
        continue;
      }
      for (unsigned j = 0; j < dl(); ++j) {
        if (l[j] == 0) {
          continue;
        }
        unsigned const bl = b[i] * l[j] % p();
        for (unsigned k = 0; k < dl(); ++k) {
          out[k] = (out[k] + bl * action[i][k * dl() + j]) % p();
        }
      }
    }
    return out;
  }

  Vec del(Vec const& l) const {
    Vec out(db(), 0);
    for (unsigned j = 0; j < dl(); ++j) {
      for (unsigned k = 0; k < db(); ++k) {
        out[k] = (out[k] + l[j] * boundary[k * dl() + j]) % p();
      }
    }
    return out;
  }

  Elem act(Elem b, Elem l) const { return module.encode(act(base.decode(b), module.decode(l))); }
  Elem del(Elem l) const { return base.encode(del(module.decode(l))); }
};

inline LiePrecrossedModule make_lie_module(LieAlgebraFp base, LieAlgebraFp module,
                                           std::vector<std::vector<unsigned>> action,
                                           std::vector<unsigned> boundary) {
  unsigned const dl = module.dim();
  unsigned const db = base.dim();
  if (action.empty()) {
    action.assign(db, std::vector<unsigned>(std::size_t{dl} * dl, 0));
  }
  if (boundary.empty()) {
    boundary.assign(std::size_t{db} * dl, 0);
  }
  return {std::move(base), std::move(module), std::move(action), std::move(boundary)};
}

/// Lie action by derivations, ∂ a homomorphism, and ∂(^b l) = [b, ∂l], all
/// on basis elements.
inline void validate_precrossed(LiePrecrossedModule const& m) {
  auto const& b = m.base;
  auto const& l = m.module;
  if (b.p() != l.p()) {
    throw ValidationError("precrossed module: base and module are over different fields");
  }
  validate_lie(b);
  validate_lie(l);
  if (m.action.size() != m.db() || m.boundary.size() != std::size_t{m.db()} * m.dl()) {
    throw ValidationError("precrossed module: action or boundary has the wrong shape");
  }
  for (auto const& a : m.action) {
    if (a.size() != std::size_t{m.dl()} * m.dl()) {
      throw ValidationError("precrossed module: action matrix has the wrong shape");
    }
  }
  auto eb = [&](unsigned i) { return b.decode(b.basis(i)); };
  auto el = [&](unsigned i) { return l.decode(l.basis(i)); };
  auto tag = [](char const* what, std::initializer_list<unsigned> idx) {
    std::string s = std::string("precrossed module: ") + what + " fails at (";
    bool first = true;
    for (unsigned i : idx) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
    return s + ")";
  };
  for (unsigned i = 0; i < m.db(); ++i) {
    for (unsigned j = 0; j < m.db(); ++j) {
      for (unsigned k = 0; k < m.dl(); ++k) {
        Vec lhs = m.act(b.bracket(eb(i), eb(j)), el(k));
        Vec rhs = l.add(m.act(eb(i), m.act(eb(j), el(k))),
                        l.scale(l.p() - 1, m.act(eb(j), m.act(eb(i), el(k)))));
        if (lhs != rhs) {
          throw ValidationError(tag("Lie action law", {i, j, k}));
        }
      }
    }
  }
  for (unsigned i = 0; i < m.db(); ++i) {
    for (unsigned j = 0; j < m.dl(); ++j) {
      for (unsigned k = 0; k < m.dl(); ++k) {
        Vec lhs = m.act(eb(i), l.bracket(el(j), el(k)));
        Vec rhs = l.add(l.bracket(m.act(eb(i), el(j)), el(k)),
                        l.bracket(el(j), m.act(eb(i), el(k))));
        if (lhs != rhs) {
          throw ValidationError(tag("action by derivations", {i, j, k}));
        }
      }
    }
  }
  for (unsigned j = 0; j < m.dl(); ++j) {
    for (unsigned k = 0; k < m.dl(); ++k) {
      if (m.del(l.bracket(el(j), el(k))) != b.bracket(m.del(el(j)), m.del(el(k)))) {
        throw ValidationError(tag("boundary homomorphism", {j, k}));
      }
    }
  }
  for (unsigned i = 0; i < m.db(); ++i) {
    for (unsigned j = 0; j < m.dl(); ++j) {
      if (m.del(m.act(eb(i), el(j))) != b.bracket(eb(i), m.del(el(j)))) {
        throw ValidationError(tag("equivariance", {i, j}));
      }
    }
  }
}

/// ^{∂l} l' = [l, l'] on basis elements.
inline bool is_crossed_module(LiePrecrossedModule const& m) {
  auto const& l = m.module;
  for (unsigned j = 0; j < m.dl(); ++j) {
    for (unsigned k = 0; k < m.dl(); ++k) {
      Vec lj = l.decode(l.basis(j));
      Vec lk = l.decode(l.basis(k));
      if (m.act(m.del(lj), lk) != l.bracket(lj, lk)) {
        return false;
      }
    }
  }
  return true;
}

/// B ⋉ L with basis (b_1..b_dB, l_1..l_dL): index of (b, l) is b + p^dB·l.
inline LieAlgebraFp lie_semidirect(LiePrecrossedModule const& m) {
  unsigned const db = m.db();
  unsigned const dl = m.dl();
  unsigned const d = db + dl;
  unsigned const p = m.p();
  std::vector<unsigned> c(std::size_t{d} * d * d, 0);
  auto at = [&](unsigned i, unsigned j, unsigned k) -> unsigned& {
    return c[(std::size_t{i} * d + j) * d + k];
  };
  for (unsigned i = 0; i < db; ++i) {
    for (unsigned j = 0; j < db; ++j) {
      for (unsigned k = 0; k < db; ++k) {
        at(i, j, k) = m.base.constant(i, j, k);
      }
    }
    for (unsigned j = 0; j < dl; ++j) {
      for (unsigned k = 0; k < dl; ++k) {
        unsigned a = m.action[i][k * dl + j] % p;
        at(i, db + j, db + k) = a;
        at(db + j, i, db + k) = (p - a) % p;
      }
    }
  }
  for (unsigned j = 0; j < dl; ++j) {
    for (unsigned k = 0; k < dl; ++k) {
      for (unsigned r = 0; r < dl; ++r) {
        at(db + j, db + k, db + r) = m.module.constant(j, k, r);
      }
    }
  }
  return {p, d, std::move(c)};
}

/// The Peiffer commutator ⟨K, L⟩: ideal of L generated by [k,l] and ^{∂l}k.
inline std::vector<Elem> peiffer_commutator(LiePrecrossedModule const& m,
                                            std::vector<Elem> const& k) {
  auto const& l = m.module;
  if (!is_ideal(l, k)) {
    throw PreconditionError("peiffer_commutator: K is not an ideal of L");
  }
  std::vector<Elem> gens;
  for (Elem x : k) {
    for (Elem y = 0; y < l.size(); ++y) {
      gens.push_back(l.bracket(x, y));
      gens.push_back(m.act(m.del(y), x));
    }
  }
  return ideal_generated(l, gens);
}

////////////////////////////////////////////////////////////////////////////////
// Precrossed modules of groups
////////////////////////////////////////////////////////////////////////////////

/// action[b·|L| + l] = ^b l, boundary[l] = ∂l.
struct GroupPrecrossedModule {
  AlgebraRef base;
  AlgebraRef module;
  std::vector<Elem> action;
  std::vector<Elem> boundary;

  Elem act(Elem b, Elem l) const { return action[b * module->size + l]; }
};

inline void validate_precrossed(GroupPrecrossedModule const& m) {
  GroupView b(*m.base);
  GroupView l(*m.module);
  std::size_t const nb = b.size();
  std::size_t const nl = l.size();
  if (m.action.size() != nb * nl || m.boundary.size() != nl) {
    throw ValidationError("precrossed module: action or boundary has the wrong shape");
  }
  for (Elem x = 0; x < nb; ++x) {
    for (Elem u = 0; u < nl; ++u) {
      for (Elem v = 0; v < nl; ++v) {
        if (m.act(x, l.mul(u, v)) != l.mul(m.act(x, u), m.act(x, v))) {
          throw ValidationError("precrossed module: action of " + std::to_string(x)
                                + " is not multiplicative at (" + std::to_string(u) + ","
                                + std::to_string(v) + ")");
        }
      }
    }
    for (Elem y = 0; y < nb; ++y) {
      for (Elem u = 0; u < nl; ++u) {
        if (m.act(b.mul(x, y), u) != m.act(x, m.act(y, u))) {
          throw ValidationError("precrossed module: action law fails at ("
                                + std::to_string(x) + "," + std::to_string(y) + ","
                                + std::to_string(u) + ")");
        }
      }
    }
  }
  for (Elem u = 0; u < nl; ++u) {
    if (m.act(b.identity(), u) != u) {
      throw ValidationError("precrossed module: identity does not act trivially");
    }
  }
  Homomorphism del{m.module, m.base, m.boundary};
  if (check_homomorphism(del) == HomClass::not_hom) {
    throw ValidationError("precrossed module: boundary is not a homomorphism");
  }
  for (Elem x = 0; x < nb; ++x) {
    for (Elem u = 0; u < nl; ++u) {
      if (m.boundary[m.act(x, u)] != b.mul(b.mul(x, m.boundary[u]), b.inv(x))) {
        throw ValidationError("precrossed module: equivariance fails at ("
                              + std::to_string(x) + "," + std::to_string(u) + ")");
      }
    }
  }
}

/// ^{∂u} v = u v u⁻¹.
inline bool is_crossed_module(GroupPrecrossedModule const& m) {
  GroupView l(*m.module);
  for (Elem u = 0; u < l.size(); ++u) {
    for (Elem v = 0; v < l.size(); ++v) {
      if (m.act(m.boundary[u], v) != l.mul(l.mul(u, v), l.inv(u))) {
        return false;
      }
    }
  }
  return true;
}

////////////////////////////////////////////////////////////////////////////////
// Reflexive graphs
////////////////////////////////////////////////////////////////////////////////

struct ReflexiveGraph {
  AlgebraRef x1;
  AlgebraRef x0;
  Homomorphism d;
  Homomorphism c;
  Homomorphism i;
  // Present for graphs built from a Lie precrossed module; L sits inside X1
  // at indices p^dB·l.
  std::shared_ptr<LiePrecrossedModule const> lie;
};

inline void validate_graph(ReflexiveGraph const& g) {
  for (auto const* h : {&g.d, &g.c}) {
    if (!same_algebra(h->source, g.x1) || !same_algebra(h->target, g.x0)) {
      throw ValidationError("graph: d and c must map X1 to X0");
    }
    if (check_homomorphism(*h) != HomClass::surjective_hom) {
      throw ValidationError("graph: d and c must be surjective homomorphisms");
    }
  }
  if (!same_algebra(g.i.source, g.x0) || !same_algebra(g.i.target, g.x1)
      || check_homomorphism(g.i) == HomClass::not_hom) {
    throw ValidationError("graph: i must be a homomorphism X0 → X1");
  }
  for (Elem b = 0; b < g.x0->size; ++b) {
    if (g.d.map[g.i.map[b]] != b || g.c.map[g.i.map[b]] != b) {
      throw ValidationError("graph: d∘i = id = c∘i fails at " + std::to_string(b));
    }
  }
}

inline TwoEqObject graph_object(ReflexiveGraph const& g) {
  return {g.x1, kernel_pair(g.c), kernel_pair(g.d)};
}

inline ReflexiveGraph semidirect_graph(LiePrecrossedModule const& m, Limits const& limits = {}) {
  validate_precrossed(m);
  auto x1 = share(build_lie_algebra(lie_semidirect(m), limits));
  auto x0 = share(build_lie_algebra(m.base, limits));
  std::size_t const nb = m.base.size();
  std::vector<Elem> d(x1->size);
  std::vector<Elem> c(x1->size);
  std::vector<Elem> i(nb);
  for (Elem x = 0; x < x1->size; ++x) {
    Elem b = static_cast<Elem>(x % nb);
    Elem l = static_cast<Elem>(x / nb);
    d[x] = b;
    c[x] = m.base.add(b, m.del(l));
  }
  for (Elem b = 0; b < nb; ++b) {
    i[b] = b;
  }
  ReflexiveGraph g{x1, x0, {x1, x0, std::move(d)}, {x1, x0, std::move(c)}, {x0, x1, std::move(i)},
                   std::make_shared<LiePrecrossedModule const>(m)};
  if (check_homomorphism(g.c) == HomClass::not_hom) {
    throw DisagreementError("semidirect_graph: the bracket convention makes (b,l) ↦ b+∂l "
                            "fail to be a homomorphism");
  }
  validate_graph(g);
  return g;
}

/// Pairs (l, b) with (l,b)(l',b') = (l·^b l', bb'), stored at b + |B|·l.
inline ReflexiveGraph semidirect_graph(GroupPrecrossedModule const& m) {
  validate_precrossed(m);
  GroupView b(*m.base);
  GroupView l(*m.module);
  std::size_t const nb = b.size();
  std::size_t const n = nb * l.size();
  std::vector<Elem> mul(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      Elem bx = x % nb, lx = x / nb, by = y % nb, ly = y / nb;
      mul[x * n + y] = static_cast<Elem>(b.mul(bx, by) + nb * l.mul(lx, m.act(bx, ly)));
    }
  }
  auto x1 = share(build_group(n, mul));
  std::vector<Elem> d(n);
  std::vector<Elem> c(n);
  std::vector<Elem> i(nb);
  for (Elem x = 0; x < n; ++x) {
    d[x] = x % nb;
    c[x] = b.mul(m.boundary[x / nb], x % nb);
  }
  for (Elem y = 0; y < nb; ++y) {
    i[y] = static_cast<Elem>(y + nb * l.identity());
  }
  ReflexiveGraph g{x1, m.base, {x1, m.base, std::move(d)}, {x1, m.base, std::move(c)},
                   {m.base, x1, std::move(i)}, nullptr};
  validate_graph(g);
  return g;
}

/// The graph with X1 = X0 and all structure maps identities.
inline ReflexiveGraph discrete_graph(AlgebraRef const& b) {
  auto id = identity_hom(b);
  return {b, b, id, id, id, nullptr};
}

struct GraphMorphism {
  ReflexiveGraph source;
  ReflexiveGraph target;
  Homomorphism f;  // X1 → X1'
};

/// f fixes the base: f∘i = i', d'∘f = d, c'∘f = c.
inline void validate_graph_morphism(GraphMorphism const& m) {
  if (!same_algebra(m.source.x0, m.target.x0)) {
    throw PreconditionError("graph morphism: base objects differ");
  }
  if (!same_algebra(m.f.source, m.source.x1) || !same_algebra(m.f.target, m.target.x1)) {
    throw PreconditionError("graph morphism: map does not connect the graphs");
  }
  if (check_homomorphism(m.f) != HomClass::surjective_hom) {
    throw PreconditionError("graph morphism: map is not a surjective homomorphism");
  }
  for (Elem b = 0; b < m.source.x0->size; ++b) {
    if (m.f.map[m.source.i.map[b]] != m.target.i.map[b]) {
      throw PreconditionError("graph morphism: f∘i ≠ i' at " + std::to_string(b));
    }
  }
  for (Elem x = 0; x < m.source.x1->size; ++x) {
    if (m.target.d.map[m.f.map[x]] != m.source.d.map[x]
        || m.target.c.map[m.f.map[x]] != m.source.c.map[x]) {
      throw PreconditionError("graph morphism: f does not fix the base at " + std::to_string(x));
    }
  }
}

/// X1 → X1/T for a congruence T ≤ Eq[c] ∧ Eq[d].
inline GraphMorphism quotient_graph(ReflexiveGraph const& g, Partition const& t) {
  if (!t.leq(meet(kernel_pair(g.c), kernel_pair(g.d)))) {
    throw PreconditionError("quotient_graph: congruence is not below Eq[c] ∧ Eq[d]");
  }
  auto q = quotient_algebra(g.x1, t);
  std::size_t const n = q.algebra->size;
  std::vector<Elem> d(n);
  std::vector<Elem> c(n);
  for (Elem x = 0; x < g.x1->size; ++x) {
    d[q.projection.map[x]] = g.d.map[x];
    c[q.projection.map[x]] = g.c.map[x];
  }
  std::vector<Elem> i(g.x0->size);
  for (Elem b = 0; b < i.size(); ++b) {
    i[b] = q.projection.map[g.i.map[b]];
  }
  ReflexiveGraph target{q.algebra, g.x0, {q.algebra, g.x0, std::move(d)},
                        {q.algebra, g.x0, std::move(c)}, {g.x0, q.algebra, std::move(i)},
                        nullptr};
  GraphMorphism m{g, std::move(target), q.projection};
  validate_graph_morphism(m);
  return m;
}

inline GraphMorphism compose(GraphMorphism const& second, GraphMorphism const& first) {
  GraphMorphism m{first.source, second.target, compose(second.f, first.f)};
  validate_graph_morphism(m);
  return m;
}

inline TwoEqMorphism graph_two_eq(GraphMorphism const& m) {
  return {graph_object(m.source), graph_object(m.target), m.f};
}

/// Elements l ∈ L with (0, l) in the kernel of f, for Lie semidirect graphs.
inline std::vector<Elem> lie_kernel(GraphMorphism const& m) {
  auto const& lie = *m.source.lie;
  std::size_t const nb = lie.base.size();
  Elem const zero = m.f.map[0];
  std::vector<Elem> out;
  for (Elem l = 0; l < lie.module.size(); ++l) {
    if (m.f.map[l * nb] == zero) {
      out.push_back(l);
    }
  }
  return out;
}

namespace detail {

  inline bool has_group_signature(FiniteAlgebra const& a) {
    return a.find("mul") && a.find("inv") && a.find("e");
  }

  /// Elements sent to the identity (the neutral element for groups).
  inline std::vector<Elem> kernel_of(Homomorphism const& h, Elem neutral) {
    std::vector<Elem> out;
    for (Elem x = 0; x < h.map.size(); ++x) {
      if (h.map[x] == neutral) {
        out.push_back(x);
      }
    }
    return out;
  }

}  // namespace detail

struct GraphCentralityReport {
  bool central = false;
  Partition certificate;  // [Eq f, Eq c ∨ Eq d]
  std::optional<std::vector<Elem>> peiffer;  // ⟨Ker f, L⟩ for Lie graphs
  std::optional<std::vector<Elem>> group_commutator;  // [Ker f, Ker d·Ker c] for group graphs
};

inline GraphCentralityReport graph_extension_central(GraphMorphism const& m,
                                                     Limits const& limits = {}) {
  validate_graph_morphism(m);
  auto rep = is_central_extension(graph_two_eq(m), limits);
  GraphCentralityReport out{rep.central, rep.certificate, std::nullopt, std::nullopt};
  if (m.source.lie) {
    out.peiffer = peiffer_commutator(*m.source.lie, lie_kernel(m));
    if ((out.peiffer->size() == 1) != out.central) {
      throw DisagreementError("graph_extension_central: Peiffer commutator disagrees with the "
                              "commutator condition");
    }
  }
  auto const& x1 = *m.source.x1;
  if (detail::has_group_signature(x1)) {
    Elem const e0 = GroupView(*m.source.x0).identity();
    auto kf = detail::kernel_of(m.f, GroupView(*m.target.x1).identity());
    auto kd = detail::kernel_of(m.source.d, e0);
    auto kc = detail::kernel_of(m.source.c, e0);
    auto kdc = kd;
    kdc.insert(kdc.end(), kc.begin(), kc.end());
    auto prod = generated_subgroup(x1, kdc);
    out.group_commutator = group_commutator_subgroup(x1, kf, prod);
    if (normal_subgroup_to_partition(x1, *out.group_commutator) != out.certificate) {
      throw DisagreementError("graph_extension_central: group commutator disagrees with the "
                              "congruence commutator");
    }
  }
  return out;
}

struct GroupoidReport {
  bool groupoid = false;
  Partition certificate;  // [Eq c, Eq d]
};

inline GroupoidReport graph_is_internal_groupoid(ReflexiveGraph const& g,
                                                 Limits const& limits = {}) {
  validate_graph(g);
  GroupoidReport rep;
  rep.certificate = commutator(g.x1, kernel_pair(g.c), kernel_pair(g.d), limits);
  rep.groupoid = rep.certificate.is_discrete();
  auto const& x1 = *g.x1;
  if (detail::has_group_signature(x1)) {
    Elem const e0 = GroupView(*g.x0).identity();
    auto hk = group_commutator_subgroup(x1, detail::kernel_of(g.c, e0), detail::kernel_of(g.d, e0));
    if (normal_subgroup_to_partition(x1, hk) != rep.certificate) {
      throw DisagreementError("graph_is_internal_groupoid: [Ker c, Ker d] disagrees with the "
                              "congruence commutator");
    }
  }
  return rep;
}

///   G --g--> G2
///   |f       |h
///   v        v
///   G1 --j--> G3
struct GraphSquare {
  GraphMorphism top;
  GraphMorphism left;
  GraphMorphism bottom;
  GraphMorphism right;
};

/// The square of quotients by T1, T2 and T1 ∨ T2.
inline GraphSquare quotient_graph_square(ReflexiveGraph const& g, Partition const& t1,
                                         Partition const& t2) {
  auto f = quotient_graph(g, t1);
  auto gq = quotient_graph(g, t2);
  Partition const top = join_equivalences(t1, t2);
  auto j = quotient_graph(f.target, direct_image(f.f, top));
  auto h = quotient_graph(gq.target, direct_image(gq.f, top));
  // Both routes land in X1/(T1∨T2) with blocks numbered by least element, so
  // the corners agree up to reusing one algebra.
  if (!same_algebra(j.target.x1, h.target.x1)) {
    throw DisagreementError("quotient_graph_square: corner quotients differ");
  }
  h.target = j.target;
  h.f.target = j.target.x1;
  return {gq, f, j, h};
}

inline DoubleExtensionSquare graph_two_eq(GraphSquare const& sq) {
  return {graph_two_eq(sq.top), graph_two_eq(sq.left), graph_two_eq(sq.bottom),
          graph_two_eq(sq.right)};
}

struct GraphDoubleReport {
  DoubleCentralityReport conditions;
  std::optional<bool> peiffer_form;  // ⟨Ker f ∧ Ker g, L⟩ = 0 = [Ker f, Ker g]
};

inline GraphDoubleReport graph_double_central(GraphSquare const& sq, Limits const& limits = {}) {
  for (auto const* m : {&sq.top, &sq.left, &sq.bottom, &sq.right}) {
    validate_graph_morphism(*m);
  }
  GraphDoubleReport rep{is_double_central(graph_two_eq(sq), limits), std::nullopt};
  if (sq.left.source.lie) {
    auto const& lie = *sq.left.source.lie;
    auto kf = lie_kernel(sq.left);
    auto kg = lie_kernel(sq.top);
    std::vector<Elem> both;
    std::set_intersection(kf.begin(), kf.end(), kg.begin(), kg.end(), std::back_inserter(both));
    bool const peiffer_zero = peiffer_commutator(lie, both).size() == 1;
    bool const bracket_zero = bracket_span(lie.module, kf, kg).size() == 1;
    rep.peiffer_form = peiffer_zero && bracket_zero;
    if (*rep.peiffer_form != rep.conditions.double_central) {
      throw DisagreementError("graph_double_central: Peiffer form disagrees with the commutator "
                              "conditions");
    }
  }
  return rep;
}

}  // namespace mgk

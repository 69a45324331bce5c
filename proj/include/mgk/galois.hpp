#pragma once

// Objects (X,R,S) with two congruences, their morphisms, and the extension
// classifiers: trivial, central, normal, double and double central.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgk/algebra.hpp"
#include "mgk/commutator.hpp"
#include "mgk/congruence.hpp"
#include "mgk/error.hpp"
#include "mgk/partition.hpp"

namespace mgk {

struct TwoEqObject {
  AlgebraRef alg;
  Partition r;
  Partition s;

  std::size_t size() const { return alg->size; }
};

struct TwoEqMorphism {
  TwoEqObject source;
  TwoEqObject target;
  Homomorphism f;
};

inline TwoEqObject make_object(AlgebraRef alg, Partition r, Partition s) {
  require_congruence(*alg, r, "object: R");
  require_congruence(*alg, s, "object: S");
  return {std::move(alg), std::move(r), std::move(s)};
}

inline TwoEqObject nabla_object(AlgebraRef alg) {
  auto n = alg->size;
  return {std::move(alg), Partition::total(n), Partition::total(n)};
}

/// Whether a R b implies f(a) R' f(b).
inline bool preserves(Homomorphism const& f, Partition const& r, Partition const& r2) {
  for (Elem x = 0; x < r.size(); ++x) {
    if (!r2.related(f.map[x], f.map[r.representative(x)])) {
      return false;
    }
  }
  return true;
}

inline void validate_morphism(TwoEqMorphism const& m) {
  if (!same_algebra(m.f.source, m.source.alg) || !same_algebra(m.f.target, m.target.alg)) {
    throw ValidationError("morphism: map does not connect the given objects");
  }
  require_homomorphism(m.f, "morphism");
  if (!preserves(m.f, m.source.r, m.target.r) || !preserves(m.f, m.source.s, m.target.s)) {
    throw ValidationError("morphism: map does not send R into R' and S into S'");
  }
}

inline TwoEqMorphism make_morphism(TwoEqObject source, TwoEqObject target, Homomorphism f) {
  TwoEqMorphism m{std::move(source), std::move(target), std::move(f)};
  validate_morphism(m);
  return m;
}

/// The quotient of an object by a congruence, with images of R and S.
inline TwoEqMorphism quotient_morphism(TwoEqObject const& o, Partition const& t) {
  auto q = quotient_algebra(o.alg, t);
  TwoEqObject target{q.algebra, direct_image(q.projection, o.r), direct_image(q.projection, o.s)};
  return {o, std::move(target), std::move(q.projection)};
}

////////////////////////////////////////////////////////////////////////////////
// Classification
////////////////////////////////////////////////////////////////////////////////

enum class MorphismClass { morphism, regular_epi, fibration };

inline char const* to_string(MorphismClass c) {
  switch (c) {
    case MorphismClass::morphism:
      return "morphism";
    case MorphismClass::regular_epi:
      return "regular-epi";
    case MorphismClass::fibration:
      return "fibration";
  }
  return "?";
}

struct Classification {
  MorphismClass kind = MorphismClass::morphism;
  bool surjective = false;
  Partition kernel;
};

namespace detail {

  /// Whether the induced map X/R → X'/R' is injective (it is always
  /// well defined and, for surjective f, onto).
  inline bool induced_injective(Homomorphism const& f, Partition const& r, Partition const& r2) {
    std::vector<Elem> block_of_image(f.target->size, static_cast<Elem>(-1));
    for (Elem x = 0; x < r.size(); ++x) {
      Elem target_block = r2.representative(f.map[x]);
      Elem source_block = r.representative(x);
      if (block_of_image[target_block] == static_cast<Elem>(-1)) {
        block_of_image[target_block] = source_block;
      } else if (block_of_image[target_block] != source_block) {
        return false;
      }
    }
    return true;
  }

}  // namespace detail

/// Regular epis are surjections with f(R) = R', f(S) = S'. Fibrations also
/// satisfy Eq[f] ≤ R∧S; the two other formulations of that condition are
/// computed too and must agree.
inline Classification classify_morphism(TwoEqMorphism const& m) {
  validate_morphism(m);
  Classification c;
  c.kernel = kernel_pair(m.f);
  c.surjective = is_surjective(m.f);
  if (!c.surjective) {
    return c;
  }
  if (direct_image(m.f, m.source.r) != m.target.r
      || direct_image(m.f, m.source.s) != m.target.s) {
    return c;
  }
  c.kind = MorphismClass::regular_epi;
  bool const by_kernel = c.kernel.leq(meet(m.source.r, m.source.s));
  bool const by_inverse = inverse_image(m.f, m.target.r) == m.source.r
                          && inverse_image(m.f, m.target.s) == m.source.s;
  bool const by_quotients = detail::induced_injective(m.f, m.source.r, m.target.r)
                            && detail::induced_injective(m.f, m.source.s, m.target.s);
  if (by_kernel != by_inverse || by_kernel != by_quotients) {
    throw DisagreementError("classify_morphism: fibration criteria disagree");
  }
  if (by_kernel) {
    c.kind = MorphismClass::fibration;
  }
  return c;
}

inline void require_class(TwoEqMorphism const& m, MorphismClass at_least, char const* what) {
  auto c = classify_morphism(m);
  if (static_cast<int>(c.kind) < static_cast<int>(at_least)) {
    std::string msg = std::string(what) + ": morphism is a " + to_string(c.kind) + ", not a "
                      + to_string(at_least);
    if (at_least == MorphismClass::fibration) {
      msg += " (Eq[f] = " + c.kernel.to_string()
             + " is not below R∧S; outside fibrations the commutator condition does not "
               "characterize centrality)";
    }
    throw PreconditionError(msg);
  }
}

////////////////////////////////////////////////////////////////////////////////
// Reflection into centralizing objects
////////////////////////////////////////////////////////////////////////////////

struct Reflection {
  TwoEqMorphism unit;
  Partition commutator;
};

/// X → X/[R,S] with the images of R and S.
inline Reflection reflection_unit(TwoEqObject const& o, Limits const& limits = {}) {
  Partition c = commutator(o.alg, o.r, o.s, limits);
  return {quotient_morphism(o, c), c};
}

/// The map X/[R,S] → X'/[R',S'] induced by a morphism.
inline Homomorphism reflect_morphism(TwoEqMorphism const& m, Reflection const& src,
                                     Reflection const& tgt) {
  std::vector<Elem> map(src.unit.target.size(), static_cast<Elem>(-1));
  for (Elem x = 0; x < m.source.size(); ++x) {
    Elem u = src.unit.f.map[x];
    Elem v = tgt.unit.f.map[m.f.map[x]];
    if (map[u] == static_cast<Elem>(-1)) {
      map[u] = v;
    } else if (map[u] != v) {
      throw DisagreementError("reflect_morphism: morphism does not respect commutators");
    }
  }
  return {src.unit.target.alg, tgt.unit.target.alg, std::move(map)};
}

struct TrivialityReport {
  bool trivial = false;
  bool bijective = false;
  std::size_t source_size = 0;
  std::size_t pullback_size = 0;
  Partition source_commutator;
  Partition target_commutator;
};

/// The naturality square of the units is a pullback: the canonical map from X
/// into {(x',u) : η'(x') = Ī(f)(u)} is an isomorphism of objects.
inline TrivialityReport is_trivial_extension(TwoEqMorphism const& m, Limits const& limits = {}) {
  require_class(m, MorphismClass::regular_epi, "is_trivial_extension");
  auto src = reflection_unit(m.source, limits);
  auto tgt = reflection_unit(m.target, limits);
  auto reflected = reflect_morphism(m, src, tgt);
  auto const& eta_t = tgt.unit.f.map;
  std::size_t const nu = src.unit.target.size();
  // Pullback carrier, indexed densely.
  std::vector<Elem> index(m.target.size() * nu, static_cast<Elem>(-1));
  std::vector<std::pair<Elem, Elem>> carrier;
  for (Elem x = 0; x < m.target.size(); ++x) {
    for (Elem u = 0; u < nu; ++u) {
      if (eta_t[x] == reflected.map[u]) {
        index[x * nu + u] = static_cast<Elem>(carrier.size());
        carrier.emplace_back(x, u);
      }
    }
  }
  TrivialityReport rep;
  rep.source_size = m.source.size();
  rep.pullback_size = carrier.size();
  rep.source_commutator = src.commutator;
  rep.target_commutator = tgt.commutator;
  std::vector<Elem> k(m.source.size());
  std::vector<bool> hit(carrier.size(), false);
  bool injective = true;
  for (Elem x = 0; x < m.source.size(); ++x) {
    k[x] = index[m.f.map[x] * nu + src.unit.f.map[x]];
    if (hit[k[x]]) {
      injective = false;
    }
    hit[k[x]] = true;
  }
  rep.bijective = injective && carrier.size() == m.source.size();
  if (!rep.bijective) {
    return rep;
  }
  // Relations on the pullback are componentwise; the canonical bijection must
  // reflect them as well.
  auto const& ru = src.unit.target.r;
  auto const& su = src.unit.target.s;
  bool relational = true;
  for (Elem x = 0; x < m.source.size() && relational; ++x) {
    for (Elem y = 0; y < m.source.size() && relational; ++y) {
      auto [x1, u1] = carrier[k[x]];
      auto [y1, v1] = carrier[k[y]];
      bool r_pb = m.target.r.related(x1, y1) && ru.related(u1, v1);
      bool s_pb = m.target.s.related(x1, y1) && su.related(u1, v1);
      relational = r_pb == m.source.r.related(x, y) && s_pb == m.source.s.related(x, y);
    }
  }
  rep.trivial = relational;
  return rep;
}

////////////////////////////////////////////////////////////////////////////////
// Central and normal extensions
////////////////////////////////////////////////////////////////////////////////

struct CentralityReport {
  bool central = false;
  Partition kernel;
  Partition join;
  Partition certificate;  // [Eq[f], R∨S]
};

inline CentralityReport is_central_extension(TwoEqMorphism const& m, Limits const& limits = {}) {
  require_class(m, MorphismClass::fibration, "is_central_extension");
  CentralityReport rep;
  rep.kernel = kernel_pair(m.f);
  rep.join = join(*m.source.alg, m.source.r, m.source.s);
  rep.certificate = commutator(m.source.alg, rep.kernel, rep.join, limits);
  rep.central = rep.certificate.is_discrete();
  return rep;
}

/// (Eq[f], R restricted componentwise, S restricted componentwise) with its
/// first projection.
inline TwoEqMorphism kernel_pair_projection(TwoEqMorphism const& m, Limits const& limits = {}) {
  auto eq = kernel_pair(m.f);
  auto sp = sub_product(m.source.alg, m.source.alg, eq.pairs(), limits);
  std::size_t const k = sp.pairs.size();
  std::vector<std::pair<Elem, Elem>> rl(k);
  std::vector<std::pair<Elem, Elem>> sl(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto [x, y] = sp.pairs[i];
    rl[i] = {m.source.r.representative(x), m.source.r.representative(y)};
    sl[i] = {m.source.s.representative(x), m.source.s.representative(y)};
  }
  TwoEqObject kp{sp.algebra, Partition::from_labels(rl), Partition::from_labels(sl)};
  return {std::move(kp), m.source, sp.first};
}

struct NormalityReport {
  bool normal = false;
  std::size_t kernel_pair_size = 0;
  TrivialityReport projection;
};

/// Split by its own kernel pair: the first kernel-pair projection is trivial.
inline NormalityReport is_normal_extension_oracle(TwoEqMorphism const& m,
                                                  Limits const& limits = {}) {
  require_class(m, MorphismClass::fibration, "is_normal_extension_oracle");
  auto pi = kernel_pair_projection(m, limits);
  NormalityReport rep;
  rep.kernel_pair_size = pi.source.size();
  rep.projection = is_trivial_extension(pi, limits);
  rep.normal = rep.projection.trivial;
  return rep;
}

////////////////////////////////////////////////////////////////////////////////
// Double extensions
////////////////////////////////////////////////////////////////////////////////

///   X --g--> Z
///   |f       |h
///   v        v
///   Y --j--> W
struct DoubleExtensionSquare {
  TwoEqMorphism top;     // g
  TwoEqMorphism left;    // f
  TwoEqMorphism bottom;  // j
  TwoEqMorphism right;   // h

  TwoEqObject const& x() const { return top.source; }
};

/// The square of quotients of one object by T1, T2 and T1 ∨ T2.
inline DoubleExtensionSquare quotient_square(TwoEqObject const& o, Partition const& t1,
                                             Partition const& t2) {
  auto f = quotient_morphism(o, t1);
  auto g = quotient_morphism(o, t2);
  Partition const top = join(*o.alg, t1, t2);
  auto j = quotient_morphism(f.target, direct_image(f.f, top));
  auto h = quotient_morphism(g.target, direct_image(g.f, top));
  // Blocks are numbered by least element on both routes, so the two copies
  // of X/(T1∨T2) coincide; share one.
  if (!same_algebra(j.target.alg, h.target.alg) || j.target.r != h.target.r
      || j.target.s != h.target.s) {
    throw DisagreementError("quotient_square: the two routes give different corners");
  }
  h.target = j.target;
  h.f.target = j.target.alg;
  return {std::move(g), std::move(f), std::move(j), std::move(h)};
}

struct DoubleExtensionReport {
  bool double_extension = false;
  bool fibrations = false;  // all four arrows are fibrations
  std::array<MorphismClass, 4> classes{};  // g, f, j, h
  bool comparison_surjective = false;
  bool comparison_regular = false;
  std::size_t pullback_size = 0;
};

inline void require_commutes(DoubleExtensionSquare const& sq) {
  if (!same_algebra(sq.top.source.alg, sq.left.source.alg)
      || !same_algebra(sq.top.target.alg, sq.right.source.alg)
      || !same_algebra(sq.left.target.alg, sq.bottom.source.alg)
      || !same_algebra(sq.right.target.alg, sq.bottom.target.alg)) {
    throw PreconditionError("square: corners do not match");
  }
  if (sq.top.source.r != sq.left.source.r || sq.top.source.s != sq.left.source.s) {
    throw PreconditionError("square: the two arrows out of X carry different relations");
  }
  for (Elem x = 0; x < sq.x().size(); ++x) {
    if (sq.right.f.map[sq.top.f.map[x]] != sq.bottom.f.map[sq.left.f.map[x]]) {
      throw PreconditionError("square does not commute at x=" + std::to_string(x));
    }
  }
}

inline DoubleExtensionReport is_double_extension(DoubleExtensionSquare const& sq) {
  require_commutes(sq);
  DoubleExtensionReport rep;
  TwoEqMorphism const* arrows[4] = {&sq.top, &sq.left, &sq.bottom, &sq.right};
  bool all_regular = true;
  rep.fibrations = true;
  for (int i = 0; i < 4; ++i) {
    rep.classes[i] = classify_morphism(*arrows[i]).kind;
    all_regular &= rep.classes[i] != MorphismClass::morphism;
    rep.fibrations &= rep.classes[i] == MorphismClass::fibration;
  }
  auto const& f = sq.left.f;
  auto const& g = sq.top.f;
  auto const& y = sq.left.target;
  auto const& z = sq.top.target;
  std::size_t const nz = z.size();
  std::vector<Elem> index(y.size() * nz, static_cast<Elem>(-1));
  std::vector<std::pair<Elem, Elem>> carrier;
  for (Elem a = 0; a < y.size(); ++a) {
    for (Elem b = 0; b < nz; ++b) {
      if (sq.bottom.f.map[a] == sq.right.f.map[b]) {
        index[a * nz + b] = static_cast<Elem>(carrier.size());
        carrier.emplace_back(a, b);
      }
    }
  }
  rep.pullback_size = carrier.size();
  std::vector<Elem> k(sq.x().size());
  std::vector<bool> hit(carrier.size(), false);
  for (Elem x = 0; x < k.size(); ++x) {
    k[x] = index[f.map[x] * nz + g.map[x]];
    hit[k[x]] = true;
  }
  rep.comparison_surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  if (rep.comparison_surjective) {
    // Images of R and S against the componentwise relations on the pullback.
    auto image_matches = [&](Partition const& rel, Partition const& ry, Partition const& rz) {
      UnionFind uf(carrier.size());
      for (Elem x = 0; x < k.size(); ++x) {
        uf.unite(k[x], k[rel.representative(x)]);
      }
      std::vector<std::pair<Elem, Elem>> labels(carrier.size());
      for (std::size_t i = 0; i < carrier.size(); ++i) {
        labels[i] = {ry.representative(carrier[i].first), rz.representative(carrier[i].second)};
      }
      return Partition::from_union_find(uf) == Partition::from_labels(labels);
    };
    rep.comparison_regular = image_matches(sq.x().r, y.r, z.r) && image_matches(sq.x().s, y.s, z.s);
  }
  if (all_regular) {
    bool kernel_form = direct_image(f, kernel_pair(g)) == kernel_pair(sq.bottom.f);
    if (kernel_form != rep.comparison_surjective) {
      throw DisagreementError("is_double_extension: comparison surjectivity and f(Eq[g]) = Eq[j] "
                              "disagree");
    }
  }
  rep.double_extension = all_regular && rep.comparison_surjective && rep.comparison_regular;
  return rep;
}

struct DoubleCentralityReport {
  bool double_central = false;
  bool first_condition = false;   // [Eq f, Eq g] = Δ
  bool second_condition = false;  // [Eq f ∧ Eq g, R∨S] = Δ
  Partition kernels_commutator;
  Partition meet_commutator;
};

/// Both commutator conditions, without checking the square's class.
inline DoubleCentralityReport double_commutator_conditions(DoubleExtensionSquare const& sq,
                                                           Limits const& limits = {}) {
  auto const& x = sq.x();
  Partition ef = kernel_pair(sq.left.f);
  Partition eg = kernel_pair(sq.top.f);
  DoubleCentralityReport rep;
  rep.kernels_commutator = commutator(x.alg, ef, eg, limits);
  rep.meet_commutator = commutator(x.alg, meet(ef, eg), join(*x.alg, x.r, x.s), limits);
  rep.first_condition = rep.kernels_commutator.is_discrete();
  rep.second_condition = rep.meet_commutator.is_discrete();
  rep.double_central = rep.first_condition && rep.second_condition;
  return rep;
}

inline DoubleCentralityReport is_double_central(DoubleExtensionSquare const& sq,
                                                Limits const& limits = {}) {
  auto de = is_double_extension(sq);
  if (!de.double_extension) {
    throw PreconditionError("is_double_central: square is not a double extension");
  }
  if (!de.fibrations) {
    throw PreconditionError("is_double_central: not every arrow of the square is a fibration");
  }
  return double_commutator_conditions(sq, limits);
}

////////////////////////////////////////////////////////////////////////////////
// Pullback cubes
////////////////////////////////////////////////////////////////////////////////

/// A morphism of extensions (γ, δ) from h': U → V to h: Z → W.
struct ExtensionMorphism {
  TwoEqMorphism h_prime;  // U → V
  TwoEqMorphism gamma;    // U → Z
  TwoEqMorphism delta;    // V → W
};

struct PullbackCube {
  DoubleExtensionSquare base;
  DoubleExtensionSquare front;  // X' = X ×_Z U, Y' = Y ×_W V
  ExtensionMorphism along;
  Homomorphism alpha;  // X' → X
  Homomorphism beta;   // Y' → Y
};

namespace detail {

  inline TwoEqObject pullback_object(SubProduct const& sp, TwoEqObject const& a,
                                     TwoEqObject const& b) {
    std::size_t const k = sp.pairs.size();
    std::vector<std::pair<Elem, Elem>> rl(k);
    std::vector<std::pair<Elem, Elem>> sl(k);
    for (std::size_t i = 0; i < k; ++i) {
      auto [x, y] = sp.pairs[i];
      rl[i] = {a.r.representative(x), b.r.representative(y)};
      sl[i] = {a.s.representative(x), b.s.representative(y)};
    }
    return {sp.algebra, Partition::from_labels(rl), Partition::from_labels(sl)};
  }

}  // namespace detail

inline PullbackCube pullback_along(DoubleExtensionSquare const& base, ExtensionMorphism const& e,
                                   Limits const& limits = {}) {
  require_commutes(base);
  if (!same_algebra(e.gamma.target.alg, base.top.target.alg)
      || !same_algebra(e.delta.target.alg, base.bottom.target.alg)
      || !same_algebra(e.h_prime.source.alg, e.gamma.source.alg)
      || !same_algebra(e.h_prime.target.alg, e.delta.source.alg)) {
    throw PreconditionError("pullback_along: cube data inconsistent");
  }
  for (Elem u = 0; u < e.gamma.source.size(); ++u) {
    if (base.right.f.map[e.gamma.f.map[u]] != e.delta.f.map[e.h_prime.f.map[u]]) {
      throw PreconditionError("pullback_along: side face does not commute");
    }
  }
  auto xp = pullback(base.top.f, e.gamma.f, limits);
  auto yp = pullback(base.bottom.f, e.delta.f, limits);
  TwoEqObject xo = detail::pullback_object(xp, base.x(), e.gamma.source);
  TwoEqObject yo = detail::pullback_object(yp, base.left.target, e.delta.source);
  std::vector<Elem> fmap(xp.pairs.size());
  for (std::size_t i = 0; i < fmap.size(); ++i) {
    auto [x, u] = xp.pairs[i];
    Elem idx = yp.index_of(base.left.f.map[x], e.h_prime.f.map[u]);
    if (idx == static_cast<Elem>(-1)) {
      throw DisagreementError("pullback_along: induced map leaves the pullback");
    }
    fmap[i] = idx;
  }
  DoubleExtensionSquare front{
      make_morphism(xo, e.gamma.source, xp.second),
      make_morphism(xo, yo, {xp.algebra, yp.algebra, std::move(fmap)}),
      make_morphism(yo, e.delta.source, yp.second),
      e.h_prime,
  };
  return {base, std::move(front), e, xp.first, yp.first};
}

struct StabilityReport {
  bool holds = false;
  bool kernels_equation = false;  // α([Eq f', Eq g']) = [Eq f, Eq g]
  bool meet_equation = false;     // α([Eq f'∧Eq g', R'∨S']) = [Eq f∧Eq g, R∨S]
  bool verdicts_agree = false;
  DoubleCentralityReport front;
  DoubleCentralityReport base;
};

inline StabilityReport pullback_square_stability_check(PullbackCube const& cube,
                                                       Limits const& limits = {}) {
  if (!is_surjective(cube.alpha)) {
    throw PreconditionError("pullback_square_stability_check: α is not surjective");
  }
  StabilityReport rep;
  rep.front = double_commutator_conditions(cube.front, limits);
  rep.base = double_commutator_conditions(cube.base, limits);
  rep.kernels_equation = direct_image(cube.alpha, rep.front.kernels_commutator)
                         == rep.base.kernels_commutator;
  rep.meet_equation = direct_image(cube.alpha, rep.front.meet_commutator)
                      == rep.base.meet_commutator;
  rep.verdicts_agree = rep.front.double_central == rep.base.double_central;
  rep.holds = rep.kernels_equation && rep.meet_equation && rep.verdicts_agree;
  return rep;
}

}  // namespace mgk

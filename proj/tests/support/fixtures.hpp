#pragma once

// Input generators shared by the unit tests and the acceptance binary.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mgk/mgk.hpp"

namespace fixtures {

using namespace mgk;

struct NamedAlgebra {
  std::string name;
  AlgebraRef alg;
};

inline std::vector<NamedAlgebra> catalog_up_to(std::size_t max_order) {
  std::vector<NamedAlgebra> out;
  for (auto const& name : group_catalog()) {
    auto g = catalog_group(name);
    if (g.size <= max_order) {
      out.push_back({name, share(std::move(g))});
    }
  }
  return out;
}

/// Every Lie algebra structure over F_p in dimension d (brute force over the
/// constants [e_i, e_j] for i < j, Jacobi filtered). Only for p^(d·C(d,2)) small.
inline std::vector<LieAlgebraFp> all_lie_algebras(unsigned p, unsigned d) {
  std::vector<std::pair<unsigned, unsigned>> slots;
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = i + 1; j < d; ++j) {
      slots.emplace_back(i, j);
    }
  }
  std::size_t const free = slots.size() * d;
  std::size_t const total = ipow(p, static_cast<unsigned>(free));
  std::vector<LieAlgebraFp> out;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<unsigned> c(std::size_t{d} * d * d, 0);
    std::size_t x = code;
    for (auto [i, j] : slots) {
      for (unsigned k = 0; k < d; ++k) {
        unsigned v = x % p;
        x /= p;
        c[(i * d + j) * d + k] = v;
        c[(j * d + i) * d + k] = (p - v) % p;
      }
    }
    LieAlgebraFp l(p, d, std::move(c));
    try {
      validate_lie(l);
      out.push_back(std::move(l));
    } catch (ValidationError const&) {
    }
  }
  return out;
}

inline LieAlgebraFp heisenberg(unsigned p) {
  std::vector<unsigned> c(27, 0);
  c[(0 * 3 + 1) * 3 + 2] = 1;
  c[(1 * 3 + 0) * 3 + 2] = p - 1;
  return {p, 3, std::move(c)};
}

struct NamedModule {
  std::string label;
  LiePrecrossedModule module;
};

namespace detail {

  inline bool valid(LiePrecrossedModule const& m) {
    try {
      validate_precrossed(m);
      return true;
    } catch (ValidationError const&) {
      return false;
    }
  }

  /// Decodes `code` into base-p digits filling `out`.
  inline void digits(std::size_t code, unsigned p, std::vector<unsigned>& out) {
    for (auto& v : out) {
      v = code % p;
      code /= p;
    }
  }

  /// Adjoint action of a Lie algebra on itself, in the module's matrix layout.
  inline std::vector<std::vector<unsigned>> adjoint(LieAlgebraFp const& l) {
    unsigned const d = l.dim();
    std::vector<std::vector<unsigned>> action(d, std::vector<unsigned>(std::size_t{d} * d, 0));
    for (unsigned i = 0; i < d; ++i) {
      for (unsigned j = 0; j < d; ++j) {
        for (unsigned k = 0; k < d; ++k) {
          action[i][k * d + j] = l.constant(i, j, k);
        }
      }
    }
    return action;
  }

  inline std::vector<unsigned> identity_matrix(unsigned d) {
    std::vector<unsigned> m(std::size_t{d} * d, 0);
    for (unsigned i = 0; i < d; ++i) {
      m[i * d + i] = 1;
    }
    return m;
  }

}  // namespace detail

/// Every valid precrossed module with the given base and module algebras
/// lists, enumerating all action matrices and boundaries.
inline void exhaustive_modules(std::vector<LieAlgebraFp> const& bases,
                               std::vector<LieAlgebraFp> const& modules, std::string const& tag,
                               std::vector<NamedModule>& out) {
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    for (std::size_t li = 0; li < modules.size(); ++li) {
      auto const& b = bases[bi];
      auto const& l = modules[li];
      unsigned const p = b.p();
      unsigned const db = b.dim();
      unsigned const dl = l.dim();
      unsigned const action_digits = db * dl * dl;
      unsigned const boundary_digits = db * dl;
      std::size_t const actions = ipow(p, action_digits);
      std::size_t const boundaries = ipow(p, boundary_digits);
      std::vector<unsigned> a(action_digits);
      std::vector<unsigned> bd(boundary_digits);
      for (std::size_t ac = 0; ac < actions; ++ac) {
        detail::digits(ac, p, a);
        std::vector<std::vector<unsigned>> action(db);
        for (unsigned i = 0; i < db; ++i) {
          action[i].assign(a.begin() + i * dl * dl, a.begin() + (i + 1) * dl * dl);
        }
        for (std::size_t bc = 0; bc < boundaries; ++bc) {
          detail::digits(bc, p, bd);
          LiePrecrossedModule m{b, l, action, bd};
          if (detail::valid(m)) {
            out.push_back({tag + " B#" + std::to_string(bi) + " L#" + std::to_string(li) + " a"
                               + std::to_string(ac) + " d" + std::to_string(bc),
                           std::move(m)});
          }
        }
      }
    }
  }
}

/// Lie precrossed modules over F2 and F3 with |B ⋉ L| ≤ 64: exhaustive in
/// small dimensions, structured families, and a seeded random sample.
inline std::vector<NamedModule> lie_modules(unsigned seed = 20240611, std::size_t samples = 24) {
  std::vector<NamedModule> out;
  for (unsigned p : {2u, 3u}) {
    auto l1 = all_lie_algebras(p, 1);
    auto l2 = all_lie_algebras(p, 2);
    std::string const fp = "F" + std::to_string(p);
    exhaustive_modules(l1, l1, fp + " (1,1)", out);
    exhaustive_modules(l1, l2, fp + " (1,2)", out);
    exhaustive_modules(l2, l1, fp + " (2,1)", out);
  }
  exhaustive_modules(all_lie_algebras(2, 2), all_lie_algebras(2, 2), "F2 (2,2)", out);

  // Structured families over F2 up to 64 elements.
  auto l3 = all_lie_algebras(2, 3);
  std::vector<LieAlgebraFp> small;
  for (unsigned d = 1; d <= 2; ++d) {
    for (auto& l : all_lie_algebras(2, d)) {
      small.push_back(std::move(l));
    }
  }
  for (std::size_t i = 0; i < l3.size(); i += 15) {
    small.push_back(l3[i]);
  }
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto const& l = small[i];
    // ∂ = id with the adjoint action: a crossed module.
    out.push_back({"F2 adjoint #" + std::to_string(i),
                   {l, l, detail::adjoint(l), detail::identity_matrix(l.dim())}});
    // ∂ = 0, trivial action.
    for (std::size_t j = 0; j < small.size(); ++j) {
      unsigned const total = l.dim() + small[j].dim();
      if (total <= 4 || (i + j) % 4 == 0) {
        out.push_back({"F2 trivial #" + std::to_string(i) + "/" + std::to_string(j),
                       make_lie_module(l, small[j], {}, {})});
      }
    }
  }
  out.push_back({"F2 heisenberg adjoint", {heisenberg(2), heisenberg(2),
                                           detail::adjoint(heisenberg(2)),
                                           detail::identity_matrix(3)}});
  out.push_back({"F3 abelian (1,1) identity", {LieAlgebraFp::abelian(3, 1),
                                               LieAlgebraFp::abelian(3, 1), {{0}}, {1}}});
  out.push_back({"F3 heisenberg over F3 trivial",
                 make_lie_module(LieAlgebraFp::abelian(3, 0), heisenberg(3), {}, {})});
  // The non-crossed module: B = F2, L = F2², ^b e0 = e1, ∂e0 = b.
  out.push_back({"F2 twisted", {LieAlgebraFp::abelian(2, 1), LieAlgebraFp::abelian(2, 2),
                                {{0, 0, 1, 0}}, {1, 0}}});

  // Random sample: F2 modules with dB + dL ∈ {4, 5, 6}.
  std::mt19937 rng(seed);
  std::size_t kept = 0;
  for (int attempt = 0; attempt < 200000 && kept < samples; ++attempt) {
    unsigned const db = 1 + rng() % 3;
    unsigned const dl = 1 + rng() % 3;
    if (db + dl < 4) {
      continue;
    }
    auto const& bs = db == 3 ? l3 : all_lie_algebras(2, db);
    auto const& ls = dl == 3 ? l3 : all_lie_algebras(2, dl);
    auto const& b = bs[rng() % bs.size()];
    auto const& l = ls[rng() % ls.size()];
    std::vector<std::vector<unsigned>> action(db, std::vector<unsigned>(std::size_t{dl} * dl));
    // Sparse matrices give valid actions far more often than uniform ones.
    for (auto& m : action) {
      for (auto& v : m) {
        v = rng() % 4 == 0;
      }
    }
    std::vector<unsigned> boundary(std::size_t{db} * dl);
    for (auto& v : boundary) {
      v = rng() % 3 == 0;
    }
    LiePrecrossedModule m{b, l, std::move(action), std::move(boundary)};
    bool nontrivial = false;
    for (auto const& a : m.action) {
      for (unsigned v : a) {
        nontrivial |= v != 0;
      }
    }
    for (unsigned v : m.boundary) {
      nontrivial |= v != 0;
    }
    if (nontrivial && detail::valid(m)) {
      out.push_back({"F2 sample " + std::to_string(kept) + " (" + std::to_string(db) + ","
                         + std::to_string(dl) + ")",
                     std::move(m)});
      ++kept;
    }
  }
  return out;
}

/// X --> 1, f down the left, Y --> 1 along the bottom, id_1 on the right.
/// A double extension in F¹ only when R = S = ∇ on X and Y.
inline DoubleExtensionSquare terminal_square(TwoEqMorphism const& f) {
  auto one = nabla_object(share(catalog_group("C1")));
  auto to_one = [&](TwoEqObject const& o) {
    return make_morphism(o, one, {o.alg, one.alg, std::vector<Elem>(o.size(), 0)});
  };
  return {to_one(f.source), f, to_one(f.target), make_morphism(one, one, identity_hom(one.alg))};
}

/// Cubes whose front face is the pullback of a quotient square along a
/// double extension of quotients. The side square (γ, h', δ, h) is kept only
/// when it is itself a double extension, as the construction requires.
inline std::vector<PullbackCube> quotient_cubes(TwoEqObject const& o, Limits const& limits = {},
                                                std::size_t cap = 400) {
  std::vector<PullbackCube> out;
  auto below = congruences_below(*o.alg, meet(o.r, o.s), limits);
  for (auto const& t1 : below) {
    for (auto const& t2 : below) {
      auto base = quotient_square(o, t1, t2);
      Partition const top = join(*o.alg, t1, t2);
      // Identity cube.
      out.push_back(pullback_along(
          base, {base.right, make_morphism(base.top.target, base.top.target,
                                           identity_hom(base.top.target.alg)),
                 make_morphism(base.right.target, base.right.target,
                               identity_hom(base.right.target.alg))},
          limits));
      for (auto const& m : below) {
        if (!m.leq(t2)) {
          continue;
        }
        auto qm = quotient_morphism(o, m);
        auto const& u = qm.target;
        std::vector<Elem> gamma(u.size());
        for (Elem x = 0; x < o.size(); ++x) {
          gamma[qm.f.map[x]] = base.top.f.map[x];
        }
        auto gm = make_morphism(u, base.top.target, {u.alg, base.top.target.alg, gamma});
        for (auto const& k : below) {
          if (!m.leq(k) || !k.leq(top) || out.size() >= cap) {
            continue;
          }
          auto hp = quotient_morphism(u, direct_image(qm.f, k));
          auto const& v = hp.target;
          std::vector<Elem> delta(v.size());
          for (Elem x = 0; x < u.size(); ++x) {
            delta[hp.f.map[x]] = base.right.f.map[gamma[x]];
          }
          auto dm = make_morphism(v, base.right.target, {v.alg, base.right.target.alg, delta});
          DoubleExtensionSquare side{gm, hp, dm, base.right};
          if (!is_double_extension(side).double_extension) {
            continue;
          }
          out.push_back(pullback_along(base, {hp, gm, dm}, limits));
        }
      }
    }
  }
  return out;
}

struct NamedCube {
  std::string name;
  PullbackCube cube;
};

/// Every cube the unit tests build: quotient cubes over a few groups plus the
/// hand-made pullbacks of the V4 and S3 squares.
inline std::vector<NamedCube> suite_cubes() {
  std::vector<NamedCube> out;
  for (auto const* name : {"Z4", "V4", "S3", "C6", "D4"}) {
    for (auto& c : quotient_cubes(nabla_object(share(catalog_group(name))), {}, 120)) {
      out.push_back({name, std::move(c)});
    }
  }
  auto s3 = share(catalog_group("S3"));
  auto a3 = Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1});
  for (auto& c : quotient_cubes(make_object(s3, a3, Partition::total(6)))) {
    out.push_back({"S3 A3/nabla", std::move(c)});
  }
  auto id = [](TwoEqObject const& o) { return make_morphism(o, o, identity_hom(o.alg)); };

  auto v4 = nabla_object(share(catalog_group("V4")));
  auto vbase = quotient_square(v4, Partition::from_labels(std::vector<int>{0, 0, 1, 1}),
                               Partition::from_labels(std::vector<int>{0, 1, 0, 1}));
  auto u = nabla_object(share(catalog_group("C2xC4")));
  auto const& z = vbase.top.target;
  auto const& w = vbase.right.target;
  auto gamma = make_morphism(u, z, {u.alg, z.alg, {0, 1, 0, 1, 0, 1, 0, 1}});
  auto h_prime = make_morphism(u, w, {u.alg, w.alg, std::vector<Elem>(8, 0)});
  out.push_back({"V4 along C2xC4", pullback_along(vbase, {h_prime, gamma, id(w)})});
  out.push_back({"V4 identity", pullback_along(vbase, {vbase.right, id(z), id(w)})});

  auto sbase = quotient_square(nabla_object(s3), a3, a3);
  auto c6 = nabla_object(share(catalog_group("C6")));
  auto const& sz = sbase.top.target;
  auto sgamma = make_morphism(c6, sz, {c6.alg, sz.alg, {0, 1, 0, 1, 0, 1}});
  auto sh = make_morphism(c6, sbase.right.target, compose(sbase.right.f, sgamma.f));
  out.push_back({"S3 along C6", pullback_along(sbase, {sh, sgamma, id(sbase.right.target)})});
  return out;
}

}  // namespace fixtures

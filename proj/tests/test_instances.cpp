#include <catch_amalgamated.hpp>

#include <set>

#include "mgk/mgk.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mgk;

namespace {

Partition labels(std::vector<int> const& l) { return Partition::from_labels(l); }

std::vector<fixtures::NamedModule> small_modules() {
  std::vector<fixtures::NamedModule> out;
  for (auto& m : fixtures::lie_modules()) {
    if (m.module.base.size() * m.module.module.size() <= 16) out.push_back(std::move(m));
  }
  return out;
}

GroupPrecrossedModule z2_on_z3() {
  auto z2 = share(catalog_group("Z2"));
  auto z3 = share(catalog_group("Z3"));
  return {z2, z3, {0, 1, 2, 0, 2, 1}, {0, 0, 0}};
}

}  // namespace

TEST_CASE("catalog groups validate with their documented orders") {
  std::map<std::string, std::size_t> orders{{"C2", 2},   {"C3", 3},    {"C4", 4},
                                            {"V4", 4},   {"C6", 6},    {"S3", 6},
                                            {"C8", 8},   {"D4", 8},    {"Q8", 8},
                                            {"C2xC4", 8}, {"A4", 12}};
  for (auto const& [name, n] : orders) {
    auto g = catalog_group(name);
    INFO(name);
    CHECK(g.size == n);
    CHECK(validate_algebra(g).empty());
  }
  for (auto const& name : group_catalog()) {
    CHECK(validate_algebra(catalog_group(name)).empty());
  }
  CHECK_THROWS_AS(catalog_group("nope"), ParseError);
}

TEST_CASE("catalog orderings") {
  auto z4 = catalog_group("Z4");
  CHECK(z4.maltsev_term(1, 3, 2) == 0);
  auto s3 = catalog_group("S3");
  GroupView g(s3);
  CHECK(g.identity() == 0);
  CHECK(g.mul(1, 1) == 2);
  CHECK(g.inv(1) == 2);
  for (Elem t : {3u, 4u, 5u}) CHECK(g.mul(t, t) == 0);
  auto v4 = catalog_group("V4");
  GroupView v(v4);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) CHECK(v.mul(a, b) == (a ^ b));
  auto d4 = catalog_group("D4");
  GroupView d(d4);
  CHECK(d.mul(1, 1) == 2);          // r·r
  CHECK(d.mul(4, 4) == 0);          // s·s
  CHECK(d.mul(4, 1) == d.mul(3, 4));  // s r = r⁻¹ s
  auto q8 = catalog_group("Q8");
  GroupView q(q8);
  CHECK(q.mul(4, 4) == 2);  // x² = a²
  CHECK(group_center(q8) == std::vector<Elem>{0, 2});
}

TEST_CASE("group tables are validated") {
  // 0 is an identity but (1·1)·2 ≠ 1·(1·2).
  std::vector<Elem> bad{0, 1, 2, 1, 2, 0, 2, 1, 0};
  try {
    build_group(3, bad);
    FAIL("accepted a non-associative table");
  } catch (ValidationError const& e) {
    CHECK(std::string(e.what()).find("associativity fails at") != std::string::npos);
  }
  CHECK_THROWS_AS(build_group(2, {0, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(build_group(2, {0, 1, 1}), ValidationError);
}

TEST_CASE("normal subgroup bridge") {
  auto z4 = catalog_group("Z4");
  CHECK(normal_subgroup_to_partition(z4, {0, 2}) == labels({0, 1, 0, 1}));
  auto s3 = catalog_group("S3");
  auto a3 = normal_subgroup_to_partition(s3, {0, 1, 2});
  CHECK(a3.block_count() == 2);
  CHECK(a3 == labels({0, 0, 0, 1, 1, 1}));
  CHECK(partition_to_normal_subgroup(s3, Partition::total(6)).size() == 6);
  CHECK_THROWS_AS(normal_subgroup_to_partition(s3, {0, 3}), PreconditionError);
  for (auto const& [name, g] : fixtures::catalog_up_to(12)) {
    auto normals = normal_subgroups(*g);
    Limits wide{64, 12};
    CHECK(normals.size() == congruence_lattice(*g, wide).size());
    for (auto const& n : normals) {
      auto p = normal_subgroup_to_partition(*g, n);
      CHECK(is_congruence(*g, p));
      CHECK(partition_to_normal_subgroup(*g, p) == n);
    }
  }
}

TEST_CASE("subgroup commutators") {
  auto s3 = catalog_group("S3");
  std::vector<Elem> all6{0, 1, 2, 3, 4, 5};
  CHECK(group_commutator_subgroup(s3, all6, all6) == std::vector<Elem>{0, 1, 2});
  auto z4 = catalog_group("Z4");
  CHECK(group_commutator_subgroup(z4, {0, 1, 2, 3}, {0, 1, 2, 3}) == std::vector<Elem>{0});
  auto q8 = catalog_group("Q8");
  std::vector<Elem> all8{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(group_commutator_subgroup(q8, all8, all8) == std::vector<Elem>{0, 2});
  CHECK_THROWS_AS(group_commutator_subgroup(s3, {0, 3}, all6), PreconditionError);
}

TEST_CASE("congruence commutators match subgroup commutators on every catalog group") {
  Limits wide{64, 12};
  for (auto const& [name, g] : fixtures::catalog_up_to(12)) {
    auto normals = normal_subgroups(*g);
    for (auto const& h : normals) {
      for (auto const& k : normals) {
        INFO(name);
        CHECK(commutator(g, normal_subgroup_to_partition(*g, h), normal_subgroup_to_partition(*g, k),
                         wide)
              == normal_subgroup_to_partition(*g, group_commutator_subgroup(*g, h, k)));
      }
    }
  }
}

TEST_CASE("with nabla relations centrality means a central kernel") {
  for (auto const& [name, g] : fixtures::catalog_up_to(8)) {
    auto o = nabla_object(g);
    auto center = group_center(*g);
    for (auto const& t : congruence_lattice(*g)) {
      auto m = quotient_morphism(o, t);
      auto kernel = partition_to_normal_subgroup(*g, t);
      bool in_center = std::includes(center.begin(), center.end(), kernel.begin(), kernel.end());
      INFO(name << " " << t.to_string());
      bool central = is_central_extension(m).central;
      CHECK(central == in_center);
      CHECK(central == commutator(g, t, Partition::total(g->size)).is_discrete());
    }
  }
}

TEST_CASE("Lie algebra construction") {
  auto ab = build_lie_algebra(LieAlgebraFp::abelian(2, 2));
  CHECK(ab.size == 4);
  CHECK(validate_algebra(ab).empty());
  for (auto const* op : {"add", "neg", "zero", "bracket", "scale1"}) {
    CHECK(ab.find(op) != nullptr);
  }
  auto f3 = build_lie_algebra(LieAlgebraFp::abelian(3, 1));
  CHECK(f3.find("scale2") != nullptr);
  CHECK(f3.maltsev_term(2, 1, 0) == 1);

  auto h = fixtures::heisenberg(2);
  CHECK_NOTHROW(validate_lie(h));
  auto hb = build_lie_algebra(h);
  CHECK(hb.size == 8);
  CHECK(validate_algebra(hb).empty());
  CHECK(h.bracket(h.basis(0), h.basis(1)) == h.basis(2));

  std::vector<unsigned> c(8, 0);
  c[(0 * 2 + 1) * 2 + 0] = 1;  // [e0,e1] = e0
  c[(1 * 2 + 0) * 2 + 0] = 1;  // [e1,e0] = e0, not -e0 over F3
  CHECK_THROWS_AS(validate_lie(LieAlgebraFp(3, 2, c)), ValidationError);
  CHECK_THROWS_AS(LieAlgebraFp(4, 1, {}), ValidationError);

  // [e0,[e1,e2]] + ... ≠ 0 for these constants over F2.
  std::vector<unsigned> j(27, 0);
  auto set = [&](unsigned a, unsigned b, unsigned k) {
    j[(a * 3 + b) * 3 + k] = 1;
    j[(b * 3 + a) * 3 + k] = 1;
  };
  set(0, 1, 1);
  set(1, 2, 0);
  CHECK_THROWS_AS(validate_lie(LieAlgebraFp(2, 3, j)), ValidationError);
}

TEST_CASE("Lie congruences are exactly the ideals") {
  std::vector<LieAlgebraFp> algebras{LieAlgebraFp::abelian(2, 2), fixtures::heisenberg(2),
                                     LieAlgebraFp::abelian(3, 1)};
  for (auto const& l : fixtures::all_lie_algebras(2, 2)) algebras.push_back(l);
  for (auto const& l : algebras) {
    auto alg = build_lie_algebra(l);
    std::size_t ideals = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << l.size()); ++mask) {
      if (!(mask & 1)) continue;
      std::vector<Elem> s;
      for (Elem x = 0; x < l.size(); ++x)
        if (mask >> x & 1) s.push_back(x);
      std::set<Elem> closed = oracle::naive_ideal(l, {s.begin(), s.end()});
      if (closed.size() == s.size()) {
        ++ideals;
        CHECK(is_ideal(l, s));
        auto p = ideal_to_partition(l, s);
        CHECK(is_congruence(alg, p));
        CHECK(partition_to_ideal(alg, p) == s);
      }
    }
    auto lattice = congruence_lattice(alg);
    CHECK(lattice.size() == ideals);
    for (auto const& p : lattice) {
      CHECK(ideal_to_partition(l, partition_to_ideal(alg, p)) == p);
    }
  }
  CHECK_THROWS_AS(ideal_to_partition(fixtures::heisenberg(2), {0, 1}), PreconditionError);
}

TEST_CASE("semidirect graph examples") {
  auto f2 = LieAlgebraFp::abelian(2, 1);
  auto g0 = semidirect_graph(make_lie_module(f2, f2, {}, {}));
  CHECK(g0.c.map == g0.d.map);
  CHECK(g0.x1->size == 4);

  auto g = semidirect_graph(make_lie_module(f2, f2, {}, {1}));
  // (b, l) at b + 2l.
  CHECK(g.d.map == std::vector<Elem>{0, 1, 0, 1});
  CHECK(g.c.map == std::vector<Elem>{0, 1, 1, 0});
  CHECK(g.i.map == std::vector<Elem>{0, 1});

  auto sg = semidirect_graph(z2_on_z3());
  CHECK(sg.x1->size == 6);
  CHECK(validate_algebra(*sg.x1).empty());
  std::vector<Elem> all6{0, 1, 2, 3, 4, 5};
  CHECK(group_commutator_subgroup(*sg.x1, all6, all6).size() == 3);
  CHECK(group_center(*sg.x1).size() == 1);

  // ∂ not equivariant: B acts nontrivially, ∂ = id on abelian algebras of dim 2.
  auto f2sq = LieAlgebraFp::abelian(2, 2);
  LiePrecrossedModule bad{f2, f2sq, {{0, 0, 1, 0}}, {1, 1}};
  CHECK_THROWS_AS(semidirect_graph(bad), ValidationError);
}

TEST_CASE("every generated module gives a graph with homomorphic structure maps") {
  auto modules = small_modules();
  CHECK(modules.size() > 200);
  for (auto const& [label, m] : modules) {
    auto g = semidirect_graph(m);
    INFO(label);
    CHECK(check_homomorphism(g.c) == HomClass::surjective_hom);
    CHECK(check_homomorphism(g.d) == HomClass::surjective_hom);
    CHECK(validate_algebra(*g.x1).empty());
  }
}

TEST_CASE("Peiffer commutator examples") {
  auto f2 = LieAlgebraFp::abelian(2, 1);
  auto f2sq = LieAlgebraFp::abelian(2, 2);
  auto triv = make_lie_module(f2, f2sq, {}, {});
  for (auto const& k : std::vector<std::vector<Elem>>{{0}, {0, 1}, {0, 2}, {0, 3}, {0, 1, 2, 3}}) {
    CHECK(peiffer_commutator(triv, k) == std::vector<Elem>{0});
  }
  auto h = fixtures::heisenberg(2);
  auto hz = make_lie_module(LieAlgebraFp::abelian(2, 0), h, {}, {});
  CHECK(peiffer_commutator(hz, {0, 4}) == std::vector<Elem>{0});
  CHECK(peiffer_commutator(hz, {0}) == std::vector<Elem>{0});
  auto all8 = std::vector<Elem>{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(peiffer_commutator(hz, all8) == std::vector<Elem>{0, 4});

  LiePrecrossedModule twisted{f2, f2sq, {{0, 0, 1, 0}}, {1, 0}};
  CHECK(peiffer_commutator(twisted, {0, 1, 2, 3}) == std::vector<Elem>{0, 2});
  CHECK(peiffer_commutator(twisted, {0, 2}) == std::vector<Elem>{0});
  CHECK_THROWS_AS(peiffer_commutator(hz, {0, 1}), PreconditionError);
}

TEST_CASE("Peiffer commutators match the element-wise closure") {
  for (auto const& [label, m] : small_modules()) {
    auto const& l = m.module;
    for (auto const& p : congruence_lattice(build_lie_algebra(l))) {
      auto k = partition_to_ideal(build_lie_algebra(l), p);
      auto got = peiffer_commutator(m, k);
      auto want = oracle::naive_peiffer(m, k);
      INFO(label);
      CHECK(std::set<Elem>(got.begin(), got.end()) == want);
    }
  }
}

TEST_CASE("internal groupoids are the crossed modules") {
  auto f2 = LieAlgebraFp::abelian(2, 1);
  CHECK(graph_is_internal_groupoid(discrete_graph(share(build_lie_algebra(f2)))).groupoid);
  CHECK(graph_is_internal_groupoid(discrete_graph(share(catalog_group("S3")))).groupoid);
  auto h = fixtures::heisenberg(2);
  LiePrecrossedModule adj{h, h, fixtures::detail::adjoint(h), fixtures::detail::identity_matrix(3)};
  CHECK(is_crossed_module(adj));
  CHECK(graph_is_internal_groupoid(semidirect_graph(adj)).groupoid);
  LiePrecrossedModule twisted{f2, LieAlgebraFp::abelian(2, 2), {{0, 0, 1, 0}}, {1, 0}};
  CHECK_FALSE(is_crossed_module(twisted));
  auto tg = graph_is_internal_groupoid(semidirect_graph(twisted));
  CHECK_FALSE(tg.groupoid);
  CHECK(tg.certificate == labels({0, 1, 2, 3, 0, 1, 2, 3}));

  std::size_t crossed = 0;
  for (auto const& [label, m] : small_modules()) {
    INFO(label);
    bool want = oracle::naive_crossed(m);
    crossed += want;
    CHECK(is_crossed_module(m) == want);
    CHECK(graph_is_internal_groupoid(semidirect_graph(m)).groupoid == want);
  }
  CHECK(crossed > 0);

  auto sg = z2_on_z3();
  CHECK(is_crossed_module(sg));
  CHECK(graph_is_internal_groupoid(semidirect_graph(sg)).groupoid);
  // Trivial action with ∂ = id is not equivariant on a non-abelian group.
  auto s3 = share(catalog_group("S3"));
  std::vector<Elem> trivial_action(36);
  for (Elem b = 0; b < 6; ++b)
    for (Elem u = 0; u < 6; ++u) trivial_action[b * 6 + u] = u;
  GroupPrecrossedModule bad_eq{s3, s3, trivial_action, {0, 1, 2, 3, 4, 5}};
  CHECK_THROWS_AS(validate_precrossed(bad_eq), ValidationError);
}

TEST_CASE("graph centrality equals a vanishing Peiffer commutator") {
  std::size_t checked = 0;
  std::size_t central = 0;
  for (auto const& [label, m] : small_modules()) {
    auto g = semidirect_graph(m);
    Partition const bound = meet(kernel_pair(g.c), kernel_pair(g.d));
    for (auto const& t : congruences_below(*g.x1, bound)) {
      auto f = quotient_graph(g, t);
      auto rep = graph_extension_central(f);
      auto k = oracle::naive_kernel(f, m.base.size(), m.module.size());
      CHECK(lie_kernel(f) == k);
      INFO(label << " " << t.to_string());
      bool vanishes = oracle::naive_peiffer(m, k).size() == 1;
      CHECK(rep.central == vanishes);
      ++checked;
      central += rep.central;
    }
  }
  CHECK(checked > 500);
  CHECK(central < checked);
}

TEST_CASE("graph double centrality equals its Peiffer form") {
  std::size_t squares = 0;
  for (auto const& [label, m] : small_modules()) {
    auto g = semidirect_graph(m);
    Partition const bound = meet(kernel_pair(g.c), kernel_pair(g.d));
    auto below = congruences_below(*g.x1, bound);
    for (auto const& t1 : below) {
      for (auto const& t2 : below) {
        auto sq = quotient_graph_square(g, t1, t2);
        auto rep = graph_double_central(sq);
        auto kf = oracle::naive_kernel(sq.left, m.base.size(), m.module.size());
        auto kg = oracle::naive_kernel(sq.top, m.base.size(), m.module.size());
        std::vector<Elem> both;
        std::set_intersection(kf.begin(), kf.end(), kg.begin(), kg.end(), std::back_inserter(both));
        bool form = oracle::naive_peiffer(m, both).size() == 1
                    && oracle::naive_bracket_ideal(m.module, kf, kg).size() == 1;
        INFO(label << " " << t1.to_string() << " " << t2.to_string());
        CHECK(rep.conditions.double_central == form);
        REQUIRE(rep.peiffer_form.has_value());
        CHECK(*rep.peiffer_form == form);
        ++squares;
      }
    }
  }
  CHECK(squares > 1000);
}

TEST_CASE("abelian modules with zero boundary give double central squares") {
  auto f2 = LieAlgebraFp::abelian(2, 1);
  auto g = semidirect_graph(make_lie_module(f2, LieAlgebraFp::abelian(2, 2), {}, {}));
  auto below = congruences_below(*g.x1, meet(kernel_pair(g.c), kernel_pair(g.d)));
  for (auto const& t1 : below)
    for (auto const& t2 : below)
      CHECK(graph_double_central(quotient_graph_square(g, t1, t2)).conditions.double_central);
}

TEST_CASE("group graph centrality matches subgroup commutators") {
  auto g = semidirect_graph(z2_on_z3());
  auto collapse = quotient_graph(g, labels({0, 1, 0, 1, 0, 1}));
  auto rep = graph_extension_central(collapse);
  CHECK(rep.central);
  REQUIRE(rep.group_commutator.has_value());
  CHECK(*rep.group_commutator == std::vector<Elem>{0});
  CHECK(graph_extension_central(quotient_graph(g, Partition::discrete(6))).central);

  auto sq = quotient_graph_square(g, labels({0, 1, 0, 1, 0, 1}), labels({0, 1, 0, 1, 0, 1}));
  auto dc = graph_double_central(sq);
  // Eq f = Eq g = the Z3 cosets: [Z3, Z3] = 1, and [Z3, Ker c · Ker d] = [Z3, Z3] = 1.
  CHECK(dc.conditions.double_central);
  CHECK_FALSE(dc.peiffer_form.has_value());

  CHECK_THROWS_AS(quotient_graph(g, Partition::total(6)), PreconditionError);
}

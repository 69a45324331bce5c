// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "mgk/mgk.hpp"
#include "mgk/sweep.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mgk;

namespace {

// Every comparison below is exact equality of partitions, subsets or
// booleans; there is no numeric tolerance. The limits are pinned here.
Limits const kDefault{64, 8};
Limits const kTwelve{64, 12};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::size_t failures = 0;

  void expect(bool ok, std::string const& what) {
    if (!ok) {
      if (failures < 5) detail << "\n    mismatch: " << what;
      ++failures;
      pass = false;
    }
  }
};

Partition labels(std::vector<int> const& l) { return Partition::from_labels(l); }

std::vector<fixtures::NamedAlgebra> criterion1_algebras() {
  std::vector<fixtures::NamedAlgebra> out;
  for (auto const* name : {"Z2", "Z3", "Z4", "V4", "C6", "S3"}) {
    out.push_back({name, share(catalog_group(name))});
  }
  out.push_back({"F2^2", share(build_lie_algebra(LieAlgebraFp::abelian(2, 2)))});
  return out;
}

void oracle_equivalence(Outcome& o) {
  std::size_t pairs = 0;
  for (auto const& [name, alg] : criterion1_algebras()) {
    auto lattice = congruence_lattice(*alg);
    for (auto const& r : lattice) {
      for (auto const& s : lattice) {
        ++pairs;
        o.expect(commutator(alg, r, s) == oracle::commutator_oracle(alg, r, s),
                 name + " " + r.to_string() + " " + s.to_string());
      }
    }
  }
  o.detail << pairs << " ordered pairs";
}

std::size_t index_of(std::vector<Partition> const& lattice, Partition const& p) {
  return std::find(lattice.begin(), lattice.end(), p) - lattice.begin();
}

void commutator_laws(Outcome& o) {
  std::size_t triples = 0;
  std::size_t images = 0;
  for (auto const& [name, alg] : fixtures::catalog_up_to(12)) {
    auto lattice = congruence_lattice(*alg, kTwelve);
    std::size_t const n = lattice.size();
    std::vector<std::vector<Partition>> c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c[i].push_back(commutator(alg, lattice[i], lattice[j], kTwelve));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const tag = name + " " + lattice[i].to_string() + " " + lattice[j].to_string();
        o.expect(c[i][j] == c[j][i], "symmetry " + tag);
        o.expect(c[i][j].leq(meet(lattice[i], lattice[j])), "bound " + tag);
        for (std::size_t k = 0; k < n; ++k) {
          ++triples;
          if (lattice[j].leq(lattice[k])) o.expect(c[i][j].leq(c[i][k]), "monotone " + tag);
          std::size_t jk = index_of(lattice, join(*alg, lattice[j], lattice[k]));
          o.expect(jk < n && c[i][jk] == join(*alg, c[i][j], c[i][k]), "join " + tag);
        }
      }
    }
    for (auto const& t : lattice) {
      auto q = quotient_algebra(alg, t);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          ++images;
          auto lhs = commutator(q.algebra, direct_image(q.projection, lattice[i]),
                                direct_image(q.projection, lattice[j]), kTwelve);
          o.expect(lhs == direct_image(q.projection, c[i][j]), "image " + name + " " + t.to_string());
        }
      }
    }
  }
  o.detail << triples << " triples, " << images << " image checks";
}

void group_bridge(Outcome& o) {
  std::size_t pairs = 0;
  for (auto const& [name, g] : fixtures::catalog_up_to(12)) {
    auto normals = normal_subgroups(*g);
    for (auto const& h : normals) {
      for (auto const& k : normals) {
        ++pairs;
        auto got = commutator(g, normal_subgroup_to_partition(*g, h),
                              normal_subgroup_to_partition(*g, k), kTwelve);
        auto want = normal_subgroup_to_partition(*g, group_commutator_subgroup(*g, h, k));
        o.expect(got == want, name);
      }
    }
  }
  for (auto const* name : {"Q8", "D4"}) {
    auto g = catalog_group(name);
    Partition nab = Partition::total(g.size);
    o.expect(partition_to_normal_subgroup(g, commutator(g, nab, nab)).size() == 2,
             std::string(name) + " derived subgroup order");
  }
  o.detail << pairs << " normal subgroup pairs";
}

void central_normal_sweep(Outcome& o) {
  std::size_t fibrations = 0;
  std::size_t central = 0;
  for (auto const& [name, g] : fixtures::catalog_up_to(8)) {
    auto lattice = congruence_lattice(*g);
    for (auto const& r : lattice) {
      for (auto const& s : lattice) {
        TwoEqObject obj{g, r, s};
        for (auto const& t : lattice) {
          auto m = quotient_morphism(obj, t);
          if (classify_morphism(m).kind != MorphismClass::fibration) continue;
          ++fibrations;
          bool c = is_central_extension(m).central;
          central += c;
          o.expect(c == is_normal_extension_oracle(m).normal,
                   name + " R=" + r.to_string() + " S=" + s.to_string() + " T=" + t.to_string());
        }
      }
    }
  }
  std::vector<std::string> names;
  for (auto const& [name, g] : fixtures::catalog_up_to(8)) names.push_back(name);
  auto table = enumerate_and_classify(names, SweepRelations::all, kDefault);
  o.expect(table.summary.disagreements == 0, "sweep disagreements");
  o.expect(fibrations > 0 && central < fibrations, "enumeration is non-degenerate");
  o.detail << fibrations << " fibrations (" << central << " central), sweep rows "
           << table.summary.rows << ", disagreements " << table.summary.disagreements;
}

void named_verdicts(Outcome& o) {
  auto z4 = nabla_object(share(catalog_group("Z4")));
  o.expect(is_central_extension(quotient_morphism(z4, labels({0, 1, 0, 1}))).central, "Z4 -> Z2");
  auto s3 = nabla_object(share(catalog_group("S3")));
  auto sign = is_central_extension(quotient_morphism(s3, labels({0, 0, 0, 1, 1, 1})));
  o.expect(!sign.central, "S3 sign central");
  o.expect(sign.certificate == labels({0, 0, 0, 1, 1, 1}), "S3 sign certificate");
  auto q8 = nabla_object(share(catalog_group("Q8")));
  auto center = normal_subgroup_to_partition(*q8.alg, {0, 2});
  o.expect(is_central_extension(quotient_morphism(q8, center)).central, "Q8 -> Q8/center");
  o.detail << "Z4->Z2 central, S3 sign not central with A3 certificate, Q8/center central";
}

void double_consistency(Outcome& o) {
  auto s3 = nabla_object(share(catalog_group("S3")));
  auto a3 = labels({0, 0, 0, 1, 1, 1});
  auto sq = quotient_square(s3, a3, a3);
  o.expect(is_double_extension(sq).double_extension, "S3 square is a double extension");
  auto sd = is_double_central(sq);
  o.expect(sd.first_condition && !sd.second_condition, "S3 square fails only the second condition");
  auto v4 = nabla_object(share(catalog_group("V4")));
  auto vd = is_double_central(quotient_square(v4, labels({0, 0, 1, 1}), labels({0, 1, 0, 1})));
  o.expect(vd.double_central, "V4 projections");
  std::size_t cubes = 0;
  for (auto const& [name, cube] : fixtures::suite_cubes()) {
    ++cubes;
    auto rep = pullback_square_stability_check(cube);
    o.expect(rep.holds && rep.kernels_equation && rep.meet_equation, "cube over " + name);
  }
  o.detail << "S3 square, V4 square, " << cubes << " cubes";
}

void peiffer_equivalence(Outcome& o) {
  std::size_t modules = 0;
  std::size_t extensions = 0;
  std::size_t squares = 0;
  for (auto const& [label, m] : fixtures::lie_modules()) {
    ++modules;
    auto g = semidirect_graph(m);
    auto below = congruences_below(*g.x1, meet(kernel_pair(g.c), kernel_pair(g.d)), kDefault);
    std::size_t const nb = m.base.size();
    std::size_t const nl = m.module.size();
    for (auto const& t : below) {
      ++extensions;
      auto f = quotient_graph(g, t);
      try {
        bool central = graph_extension_central(f, kDefault).central;
        bool zero = oracle::naive_peiffer(m, oracle::naive_kernel(f, nb, nl)).size() == 1;
        o.expect(central == zero, label + " " + t.to_string());
      } catch (DisagreementError const& e) {
        o.expect(false, label + ": " + e.what());
      }
    }
    for (auto const& t1 : below) {
      for (auto const& t2 : below) {
        ++squares;
        auto sq = quotient_graph_square(g, t1, t2);
        try {
          bool dc = graph_double_central(sq, kDefault).conditions.double_central;
          auto kf = oracle::naive_kernel(sq.left, nb, nl);
          auto kg = oracle::naive_kernel(sq.top, nb, nl);
          std::vector<Elem> both;
          std::set_intersection(kf.begin(), kf.end(), kg.begin(), kg.end(), std::back_inserter(both));
          bool form = oracle::naive_peiffer(m, both).size() == 1
                      && oracle::naive_bracket_ideal(m.module, kf, kg).size() == 1;
          o.expect(dc == form, label + " square " + t1.to_string() + " " + t2.to_string());
        } catch (DisagreementError const& e) {
          o.expect(false, label + ": " + e.what());
        }
      }
    }
  }
  o.detail << modules << " modules, " << extensions << " extensions, " << squares << " squares, "
           << o.failures << " disagreements";
}

void degenerate_reductions(Outcome& o) {
  std::size_t quotients = 0;
  for (auto const& [name, g] : fixtures::catalog_up_to(12)) {
    auto obj = nabla_object(g);
    auto center = group_center(*g);
    Partition const nab = Partition::total(g->size);
    for (auto const& t : congruence_lattice(*g, kTwelve)) {
      ++quotients;
      auto f = quotient_morphism(obj, t);
      bool central = is_central_extension(f, kTwelve).central;
      o.expect(central == commutator(g, t, nab, kTwelve).is_discrete(), "abelianization " + name);
      auto kernel = partition_to_normal_subgroup(*g, t);
      bool in_center = std::includes(center.begin(), center.end(), kernel.begin(), kernel.end());
      o.expect(central == in_center, "center " + name + " " + t.to_string());
      if (g->size <= 8) {
        o.expect(is_double_central(fixtures::terminal_square(f)).double_central == central,
                 "terminal square " + name + " " + t.to_string());
      }
    }
  }
  // g and h invertible force f invertible, and then both sides hold.
  std::size_t iso_squares = 0;
  for (auto const& [name, g] : fixtures::catalog_up_to(8)) {
    auto lattice = congruence_lattice(*g);
    for (auto const& r : lattice) {
      for (auto const& s : lattice) {
        TwoEqObject obj{g, r, s};
        Partition const delta = Partition::discrete(g->size);
        auto sq = quotient_square(obj, delta, delta);
        ++iso_squares;
        o.expect(is_double_central(sq).double_central == is_central_extension(sq.left).central,
                 "isomorphic square " + name);
      }
    }
  }
  o.detail << quotients << " nabla quotients, " << iso_squares << " squares with invertible g, h";
}

void connector_laws(Outcome& o) {
  auto algebras = fixtures::catalog_up_to(8);
  algebras.push_back({"F2^2", share(build_lie_algebra(LieAlgebraFp::abelian(2, 2)))});
  algebras.push_back({"F3", share(build_lie_algebra(LieAlgebraFp::abelian(3, 1)))});
  algebras.push_back({"heis2", share(build_lie_algebra(fixtures::heisenberg(2)))});
  std::size_t tables = 0;
  std::size_t entries = 0;
  for (auto const& [name, alg] : algebras) {
    auto lattice = congruence_lattice(*alg);
    for (auto const& r : lattice) {
      for (auto const& s : lattice) {
        if (!centralizes(*alg, r, s)) continue;
        auto t = connector(*alg, r, s);
        ++tables;
        entries += t.domain_size();
        o.expect(check_connector_laws(t).empty(), name + " " + r.to_string() + " " + s.to_string());
      }
    }
  }
  o.detail << tables << " connector tables, " << entries << " defined entries";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    char const* title;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> const criteria{
      {1, "commutator equals the exhaustive oracle", oracle_equivalence},
      {2, "commutator laws on catalog algebras up to order 12", commutator_laws},
      {3, "congruence commutators match subgroup commutators", group_bridge},
      {4, "central equals normal on every fibration up to order 8", central_normal_sweep},
      {5, "named extension verdicts", named_verdicts},
      {6, "double extension squares and pullback cubes", double_consistency},
      {7, "graph centrality equals its Peiffer form", peiffer_equivalence},
      {8, "degenerate reductions", degenerate_reductions},
      {9, "connector laws", connector_laws},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (std::exception const& e) {
      o.pass = false;
      o.detail << "\n    exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%s; %.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}

#include <fstream>
#include <functional>
#include <sstream>

#include "mgk/cli.hpp"

namespace mgk::cli {

using nlohmann::json;

std::size_t Bundle::object_count() const {
  return algebras.size() + partitions.size() + subsets.size() + homomorphisms.size()
         + objects.size() + morphisms.size() + squares.size() + precrossed.size() + graphs.size()
         + graph_morphisms.size() + graph_squares.size();
}

namespace {

// Rethrows any failure inside `fn` with the section and entry name prefixed,
// keeping its kind.
template <typename Fn>
auto named(std::string const& section, std::string const& name, Fn&& fn) -> decltype(fn()) {
  std::string const where = section + " '" + name + "': ";
  try {
    return fn();
  } catch (ParseError const& e) {
    throw ParseError(where + e.what());
  } catch (ValidationError const& e) {
    throw ValidationError(where + e.what());
  } catch (BoundError const& e) {
    throw BoundError(where + e.what());
  } catch (PreconditionError const& e) {
    throw PreconditionError(where + e.what());
  } catch (DisagreementError const& e) {
    throw DisagreementError(where + e.what());
  } catch (json::exception const& e) {
    throw ParseError(where + e.what());
  }
}

json const& field(json const& j, char const* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename Map>
auto const& lookup(Map const& map, std::string const& name, char const* kind) {
  auto it = map.find(name);
  if (it == map.end()) {
    throw ParseError(std::string("unresolved ") + kind + " reference '" + name + "'");
  }
  return it->second;
}

std::vector<Elem> elems(json const& j, char const* what) {
  if (!j.is_array()) {
    throw ParseError(std::string(what) + " must be an array of integers");
  }
  std::vector<Elem> out;
  out.reserve(j.size());
  for (auto const& v : j) {
    if (!v.is_number_unsigned()) {
      throw ParseError(std::string(what) + " must contain non-negative integers");
    }
    out.push_back(v.get<Elem>());
  }
  return out;
}

std::vector<unsigned> coefficients(json const& j, char const* what) {
  auto v = elems(j, what);
  return {v.begin(), v.end()};
}

/// Row-major matrix given as nested arrays, flattened.
std::vector<unsigned> matrix(json const& j, std::size_t rows, std::size_t cols, char const* what) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError(std::string(what) + " must have " + std::to_string(rows) + " rows");
  }
  std::vector<unsigned> out;
  for (auto const& row : j) {
    auto r = coefficients(row, what);
    if (r.size() != cols) {
      throw ParseError(std::string(what) + " rows must have " + std::to_string(cols) + " entries");
    }
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

FiniteAlgebra explicit_algebra(json const& j) {
  FiniteAlgebra alg;
  alg.size = field(j, "size").get<std::size_t>();
  alg.maltsev = field(j, "maltsev").get<std::string>();
  for (auto const& op : field(j, "operations")) {
    Operation o;
    o.name = field(op, "name").get<std::string>();
    o.arity = field(op, "arity").get<unsigned>();
    o.table = elems(field(op, "table"), "operation table");
    alg.operations.push_back(std::move(o));
  }
  require_valid(alg);
  return alg;
}

/// {"p", "dim", "brackets": [[i, j, [coefficients]]...]}. An entry for (i,j)
/// without one for (j,i) also sets [e_j,e_i] = −[e_i,e_j].
LieAlgebraFp lie_algebra(json const& j) {
  unsigned const p = field(j, "p").get<unsigned>();
  unsigned const d = field(j, "dim").get<unsigned>();
  if (!is_prime(p)) {
    throw ValidationError(std::to_string(p) + " is not prime");
  }
  std::vector<unsigned> c(std::size_t{d} * d * d, 0);
  std::vector<bool> given(std::size_t{d} * d, false);
  std::vector<std::tuple<unsigned, unsigned, std::vector<unsigned>>> entries;
  if (j.contains("brackets")) {
    for (auto const& b : j.at("brackets")) {
      if (!b.is_array() || b.size() != 3) {
        throw ParseError("bracket entries are [i, j, [coefficients]]");
      }
      unsigned const i = b[0].get<unsigned>();
      unsigned const k = b[1].get<unsigned>();
      auto v = coefficients(b[2], "bracket coefficients");
      if (i >= d || k >= d || v.size() != d) {
        throw ParseError("bracket entry out of range");
      }
      given[i * d + k] = true;
      entries.emplace_back(i, k, std::move(v));
    }
  }
  for (auto const& [i, k, v] : entries) {
    for (unsigned x = 0; x < d; ++x) {
      c[(std::size_t{i} * d + k) * d + x] = v[x] % p;
      if (!given[k * d + i]) {
        c[(std::size_t{k} * d + i) * d + x] = (p - v[x] % p) % p;
      }
    }
  }
  LieAlgebraFp l(p, d, std::move(c));
  validate_lie(l);
  return l;
}

Partition partition_ref(Bundle const& b, json const& j, std::size_t n) {
  Partition p;
  if (j.is_string()) {
    auto name = j.get<std::string>();
    if (name == "delta") {
      return Partition::discrete(n);
    }
    if (name == "nabla") {
      return Partition::total(n);
    }
    p = lookup(b.partitions, name, "partition");
  } else {
    p = Partition::from_labels(elems(j, "partition"));
  }
  if (p.size() != n) {
    throw ValidationError("partition has " + std::to_string(p.size()) + " entries, expected "
                          + std::to_string(n));
  }
  return p;
}

Homomorphism hom_ref(Bundle const& b, json const& j, AlgebraRef const& source,
                     AlgebraRef const& target) {
  Homomorphism h;
  if (j.is_string()) {
    h = lookup(b.homomorphisms, j.get<std::string>(), "homomorphism");
    if (!same_algebra(h.source, source) || !same_algebra(h.target, target)) {
      throw ValidationError("homomorphism '" + j.get<std::string>()
                            + "' does not connect the expected algebras");
    }
  } else {
    h = {source, target, elems(j, "map")};
    require_homomorphism(h);
  }
  return h;
}

std::string name_of(json const& j, char const* key) { return field(j, key).get<std::string>(); }

void load_precrossed(Bundle& b, std::string const& name, json const& j) {
  if (j.contains("lie")) {
    auto const& l = j.at("lie");
    auto base = lookup(b.lie_algebras, name_of(l, "base"), "Lie algebra");
    auto module = lookup(b.lie_algebras, name_of(l, "module"), "Lie algebra");
    std::size_t const dl = module.dim();
    std::vector<std::vector<unsigned>> action;
    if (l.contains("action")) {
      if (!l.at("action").is_array() || l.at("action").size() != base.dim()) {
        throw ParseError("action needs one matrix per basis vector of the base");
      }
      for (auto const& m : l.at("action")) {
        action.push_back(matrix(m, dl, dl, "action matrix"));
      }
    }
    std::vector<unsigned> boundary;
    if (l.contains("boundary")) {
      boundary = matrix(l.at("boundary"), base.dim(), dl, "boundary matrix");
    }
    auto m = make_lie_module(std::move(base), std::move(module), std::move(action),
                             std::move(boundary));
    validate_precrossed(m);
    b.precrossed.emplace(name, std::move(m));
  } else if (j.contains("group")) {
    auto const& g = j.at("group");
    GroupPrecrossedModule m{lookup(b.algebras, name_of(g, "base"), "algebra"),
                            lookup(b.algebras, name_of(g, "module"), "algebra"), {}, {}};
    auto const& act = field(g, "action");
    if (!act.is_array() || act.size() != m.base->size) {
      throw ParseError("action needs one row per element of the base");
    }
    for (auto const& row : act) {
      auto r = elems(row, "action row");
      m.action.insert(m.action.end(), r.begin(), r.end());
    }
    m.boundary = elems(field(g, "boundary"), "boundary");
    validate_precrossed(m);
    b.precrossed.emplace(name, std::move(m));
  } else {
    throw ParseError("precrossed module needs a 'lie' or 'group' description");
  }
}

ReflexiveGraph graph_entry(Bundle const& b, json const& j, Limits const& limits) {
  if (j.contains("precrossed")) {
    auto const& m = lookup(b.precrossed, name_of(j, "precrossed"), "precrossed module");
    return std::visit(
        [&](auto const& pm) -> ReflexiveGraph {
          if constexpr (std::is_same_v<std::decay_t<decltype(pm)>, LiePrecrossedModule>) {
            return semidirect_graph(pm, limits);
          } else {
            return semidirect_graph(pm);
          }
        },
        m);
  }
  if (j.contains("discrete")) {
    return discrete_graph(lookup(b.algebras, name_of(j, "discrete"), "algebra"));
  }
  auto x1 = lookup(b.algebras, name_of(j, "x1"), "algebra");
  auto x0 = lookup(b.algebras, name_of(j, "x0"), "algebra");
  ReflexiveGraph g{x1,
                   x0,
                   hom_ref(b, field(j, "d"), x1, x0),
                   hom_ref(b, field(j, "c"), x1, x0),
                   hom_ref(b, field(j, "i"), x0, x1),
                   nullptr};
  validate_graph(g);
  return g;
}

template <typename Fn>
void each(json const& doc, char const* section, Fn&& fn) {
  if (!doc.contains(section)) {
    return;
  }
  auto const& s = doc.at(section);
  if (!s.is_object()) {
    throw ParseError(std::string("section '") + section + "' must be an object");
  }
  for (auto const& [name, value] : s.items()) {
    named(section, name, [&] { fn(name, value); });
  }
}

}  // namespace

Bundle parse_bundle(json const& doc, Limits const& limits) {
  if (!doc.is_object()) {
    throw ParseError("bundle must be a JSON object");
  }
  static char const* const known[] = {"algebras", "partitions",     "subsets",      "homomorphisms",
                                      "objects",  "morphisms",      "squares",      "precrossed",
                                      "graphs",   "graph_morphisms", "graph_squares"};
  for (auto const& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ParseError("unknown section '" + key + "'");
    }
  }
  Bundle b;

  each(doc, "algebras", [&](std::string const& name, json const& j) {
    FiniteAlgebra alg;
    if (j.contains("catalog")) {
      alg = catalog_group(j.at("catalog").get<std::string>());
    } else if (j.contains("lie")) {
      auto l = lie_algebra(j.at("lie"));
      alg = build_lie_algebra(l, limits);
      b.lie_algebras.emplace(name, std::move(l));
    } else {
      alg = explicit_algebra(j);
    }
    require_within(alg, limits, "algebra");
    b.algebras.emplace(name, share(std::move(alg)));
  });

  // Partitions and subsets carry their algebra so they can be checked here.
  each(doc, "partitions", [&](std::string const& name, json const& j) {
    auto alg = lookup(b.algebras, name_of(j, "algebra"), "algebra");
    auto p = Partition::from_labels(elems(field(j, "labels"), "labels"));
    if (p.size() != alg->size) {
      throw ValidationError("partition size differs from the algebra");
    }
    require_congruence(*alg, p, "partition:");
    b.partitions.emplace(name, std::move(p));
  });

  each(doc, "subsets", [&](std::string const& name, json const& j) {
    auto alg = lookup(b.algebras, name_of(j, "algebra"), "algebra");
    auto v = elems(field(j, "elements"), "elements");
    for (Elem x : v) {
      if (x >= alg->size) {
        throw ValidationError("element " + std::to_string(x) + " out of range");
      }
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    b.subsets.emplace(name, std::move(v));
  });

  each(doc, "homomorphisms", [&](std::string const& name, json const& j) {
    auto src = lookup(b.algebras, name_of(j, "source"), "algebra");
    auto tgt = lookup(b.algebras, name_of(j, "target"), "algebra");
    Homomorphism h{src, tgt, elems(field(j, "map"), "map")};
    require_homomorphism(h);
    b.homomorphisms.emplace(name, std::move(h));
  });

  each(doc, "objects", [&](std::string const& name, json const& j) {
    auto alg = lookup(b.algebras, name_of(j, "algebra"), "algebra");
    auto r = partition_ref(b, j.value("R", json("nabla")), alg->size);
    auto s = partition_ref(b, j.value("S", json("nabla")), alg->size);
    b.objects.emplace(name, make_object(alg, std::move(r), std::move(s)));
  });

  each(doc, "morphisms", [&](std::string const& name, json const& j) {
    if (j.contains("quotient")) {
      auto const& o = lookup(b.objects, name_of(j, "object"), "object");
      b.morphisms.emplace(name, quotient_morphism(o, partition_ref(b, j.at("quotient"), o.size())));
      return;
    }
    auto const& src = lookup(b.objects, name_of(j, "source"), "object");
    auto const& tgt = lookup(b.objects, name_of(j, "target"), "object");
    auto f = hom_ref(b, field(j, "map"), src.alg, tgt.alg);
    b.morphisms.emplace(name, make_morphism(src, tgt, std::move(f)));
  });

  each(doc, "squares", [&](std::string const& name, json const& j) {
    if (j.contains("kernels")) {
      auto const& o = lookup(b.objects, name_of(j, "object"), "object");
      auto const& k = j.at("kernels");
      if (!k.is_array() || k.size() != 2) {
        throw ParseError("kernels must list two partitions");
      }
      b.squares.emplace(name, quotient_square(o, partition_ref(b, k[0], o.size()),
                                              partition_ref(b, k[1], o.size())));
      return;
    }
    DoubleExtensionSquare sq{lookup(b.morphisms, name_of(j, "top"), "morphism"),
                             lookup(b.morphisms, name_of(j, "left"), "morphism"),
                             lookup(b.morphisms, name_of(j, "bottom"), "morphism"),
                             lookup(b.morphisms, name_of(j, "right"), "morphism")};
    require_commutes(sq);
    b.squares.emplace(name, std::move(sq));
  });

  each(doc, "precrossed",
       [&](std::string const& name, json const& j) { load_precrossed(b, name, j); });

  each(doc, "graphs", [&](std::string const& name, json const& j) {
    b.graphs.emplace(name, graph_entry(b, j, limits));
  });

  each(doc, "graph_morphisms", [&](std::string const& name, json const& j) {
    if (j.contains("quotient")) {
      auto const& g = lookup(b.graphs, name_of(j, "graph"), "graph");
      b.graph_morphisms.emplace(name,
                                quotient_graph(g, partition_ref(b, j.at("quotient"), g.x1->size)));
      return;
    }
    auto const& src = lookup(b.graphs, name_of(j, "source"), "graph");
    auto const& tgt = lookup(b.graphs, name_of(j, "target"), "graph");
    GraphMorphism m{src, tgt, hom_ref(b, field(j, "map"), src.x1, tgt.x1)};
    validate_graph_morphism(m);
    b.graph_morphisms.emplace(name, std::move(m));
  });

  each(doc, "graph_squares", [&](std::string const& name, json const& j) {
    auto const& g = lookup(b.graphs, name_of(j, "graph"), "graph");
    auto const& k = field(j, "kernels");
    if (!k.is_array() || k.size() != 2) {
      throw ParseError("kernels must list two partitions");
    }
    b.graph_squares.emplace(name, quotient_graph_square(g, partition_ref(b, k[0], g.x1->size),
                                                        partition_ref(b, k[1], g.x1->size)));
  });

  return b;
}

Bundle load_bundle(std::string const& path, Limits const& limits) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open bundle '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (json::parse_error const& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_bundle(doc, limits);
}

}  // namespace mgk::cli

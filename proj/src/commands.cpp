#include <algorithm>
#include <functional>
#include <sstream>

#include "mgk/cli.hpp"
#include "mgk/sweep.hpp"

namespace mgk::cli {

using nlohmann::json;

namespace {

Report part(Partition const& p) { return p.representatives(); }

Report witness(CentralityWitness const& w) {
  return {{"a", w.a}, {"b", w.b}, {"c", w.c}, {"d", w.d}, {"d'", w.d2}};
}

Bundle const& need(Bundle const* b, std::string const& command) {
  if (b == nullptr) {
    throw ParseError(command + ": --bundle is required");
  }
  return *b;
}

void need_args(CommandArgs const& args, std::size_t lo, std::size_t hi, std::string const& command,
               char const* usage) {
  if (args.objects.size() < lo || args.objects.size() > hi) {
    throw ParseError(command + ": expected --object " + usage);
  }
}

template <typename Map>
auto const& lookup(Map const& map, std::string const& name, char const* kind) {
  auto it = map.find(name);
  if (it == map.end()) {
    throw ParseError(std::string("unresolved ") + kind + " reference '" + name + "'");
  }
  return it->second;
}

/// A bundle partition name, delta, nabla, or an inline label list "[0,1,0,1]".
Partition partition_arg(Bundle const& b, std::string const& text, FiniteAlgebra const& alg) {
  Partition p;
  if (text == "delta") {
    p = Partition::discrete(alg.size);
  } else if (text == "nabla") {
    p = Partition::total(alg.size);
  } else if (!text.empty() && text.front() == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (json::parse_error const&) {
      throw ParseError("cannot parse partition '" + text + "'");
    }
    if (!j.is_array()
        || !std::all_of(j.begin(), j.end(), [](json const& v) { return v.is_number_unsigned(); })) {
      throw ParseError("partition '" + text + "' must list non-negative labels");
    }
    p = Partition::from_labels(j.get<std::vector<Elem>>());
  } else {
    p = lookup(b.partitions, text, "partition");
  }
  if (p.size() != alg.size) {
    throw ValidationError("partition '" + text + "' has the wrong size");
  }
  require_congruence(alg, p, ("partition '" + text + "':").c_str());
  return p;
}

struct PairArgs {
  std::string algebra_name;
  AlgebraRef alg;
  Partition r;
  Partition s;
};

/// Either <object> or <algebra> <R> <S>.
PairArgs pair_args(Bundle const& b, CommandArgs const& args, std::string const& command) {
  need_args(args, 1, 3, command, "<object> | <algebra> <R> <S>");
  if (args.objects.size() == 1) {
    auto const& o = lookup(b.objects, args.objects[0], "object");
    return {args.objects[0], o.alg, o.r, o.s};
  }
  need_args(args, 3, 3, command, "<object> | <algebra> <R> <S>");
  auto alg = lookup(b.algebras, args.objects[0], "algebra");
  return {args.objects[0], alg, partition_arg(b, args.objects[1], *alg),
          partition_arg(b, args.objects[2], *alg)};
}

Report header(std::string const& command, std::vector<std::string> const& objects) {
  Report r;
  r["command"] = command;
  r["objects"] = objects;
  return r;
}

TwoEqMorphism morphism_arg(Bundle const& b, std::string const& name) {
  if (auto it = b.morphisms.find(name); it != b.morphisms.end()) {
    return it->second;
  }
  if (auto it = b.graph_morphisms.find(name); it != b.graph_morphisms.end()) {
    return graph_two_eq(it->second);
  }
  throw ParseError("unresolved morphism reference '" + name + "'");
}

DoubleExtensionSquare square_arg(Bundle const& b, std::string const& name) {
  if (auto it = b.squares.find(name); it != b.squares.end()) {
    return it->second;
  }
  if (auto it = b.graph_squares.find(name); it != b.graph_squares.end()) {
    return graph_two_eq(it->second);
  }
  throw ParseError("unresolved square reference '" + name + "'");
}

Report object_summary(TwoEqObject const& o) {
  return {{"size", o.size()}, {"R", part(o.r)}, {"S", part(o.s)}};
}

Report cmd_validate(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "validate");
  Report r = header("validate", args.objects);
  r["verdict"] = "valid";
  r["object_count"] = b.object_count();
  auto names = [](auto const& map) {
    std::vector<std::string> out;
    for (auto const& [k, v] : map) {
      out.push_back(k);
    }
    return out;
  };
  Report sections;
  sections["algebras"] = names(b.algebras);
  sections["partitions"] = names(b.partitions);
  sections["subsets"] = names(b.subsets);
  sections["homomorphisms"] = names(b.homomorphisms);
  sections["objects"] = names(b.objects);
  sections["morphisms"] = names(b.morphisms);
  sections["squares"] = names(b.squares);
  sections["precrossed"] = names(b.precrossed);
  sections["graphs"] = names(b.graphs);
  sections["graph_morphisms"] = names(b.graph_morphisms);
  sections["graph_squares"] = names(b.graph_squares);
  r["sections"] = sections;
  Report sizes;
  for (auto const& [k, v] : b.algebras) {
    sizes[k] = v->size;
  }
  r["algebra_sizes"] = sizes;
  for (auto const& name : args.objects) {
    bool found = false;
    for (auto const& [section, list] : sections.items()) {
      auto const& l = list.get_ref<Report::array_t const&>();
      found = found || std::find(l.begin(), l.end(), Report(name)) != l.end();
    }
    if (!found) {
      throw ParseError("unresolved reference '" + name + "'");
    }
  }
  return r;
}

Report cmd_lattice(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "lattice");
  need_args(args, 1, 1, "lattice", "<algebra>");
  auto const& alg = lookup(b.algebras, args.objects[0], "algebra");
  auto lattice = congruence_lattice(*alg, args.limits);
  Report r = header("lattice", args.objects);
  r["size"] = alg->size;
  r["count"] = lattice.size();
  Report list = Report::array();
  for (auto const& p : lattice) {
    list.push_back(part(p));
  }
  r["congruences"] = list;
  return r;
}

Report cmd_commutator(Bundle const* bp, CommandArgs const& args) {
  auto a = pair_args(need(bp, "commutator"), args, "commutator");
  auto run = commutator_run(a.alg, a.r, a.s, args.limits);
  Report r = header("commutator", args.objects);
  r["R"] = part(a.r);
  r["S"] = part(a.s);
  r["commutator"] = part(run.value);
  r["blocks"] = run.value.block_count();
  r["discrete"] = run.value.is_discrete();
  r["rounds"] = run.rounds;
  return r;
}

Report cmd_centralizes(Bundle const* bp, CommandArgs const& args) {
  auto a = pair_args(need(bp, "centralizes"), args, "centralizes");
  auto w = centrality_witness(*a.alg, a.r, a.s, args.limits);
  Report r = header("centralizes", args.objects);
  r["verdict"] = w ? "does not centralize" : "centralizes";
  r["R"] = part(a.r);
  r["S"] = part(a.s);
  r["commutator"] = part(commutator(a.alg, a.r, a.s, args.limits));
  if (w) {
    r["witness"] = witness(*w);
  }
  return r;
}

Report cmd_connector(Bundle const* bp, CommandArgs const& args) {
  auto a = pair_args(need(bp, "connector"), args, "connector");
  auto t = connector(*a.alg, a.r, a.s, args.limits);
  auto failures = check_connector_laws(t);
  if (!failures.empty()) {
    auto const& f = failures.front();
    std::string w;
    for (Elem x : f.witness) {
      w += (w.empty() ? "" : ",") + std::to_string(x);
    }
    throw DisagreementError("connector: " + std::to_string(failures.size())
                            + " law failures, first " + f.law + " at (" + w + ")");
  }
  Report r = header("connector", args.objects);
  r["verdict"] = "connector";
  r["R"] = part(a.r);
  r["S"] = part(a.s);
  r["domain_size"] = t.domain_size();
  Report entries = Report::array();
  std::size_t const n = t.size;
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        if (t.defined(x, y, z)) {
          entries.push_back({x, y, z, t.at(x, y, z)});
        }
      }
    }
  }
  r["entries"] = entries;
  r["laws_checked"] = true;
  return r;
}

Report cmd_classify(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "classify-morphism");
  need_args(args, 1, 1, "classify-morphism", "<morphism>");
  auto m = morphism_arg(b, args.objects[0]);
  auto c = classify_morphism(m);
  Report r = header("classify-morphism", args.objects);
  r["class"] = to_string(c.kind);
  r["surjective"] = c.surjective;
  r["kernel"] = part(c.kernel);
  r["meet"] = part(meet(m.source.r, m.source.s));
  r["source"] = object_summary(m.source);
  r["target"] = object_summary(m.target);
  return r;
}

Report cmd_trivial(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "check-trivial");
  need_args(args, 1, 1, "check-trivial", "<morphism>");
  auto rep = is_trivial_extension(morphism_arg(b, args.objects[0]), args.limits);
  Report r = header("check-trivial", args.objects);
  r["verdict"] = rep.trivial ? "trivial" : "not trivial";
  r["bijective"] = rep.bijective;
  r["source_size"] = rep.source_size;
  r["pullback_size"] = rep.pullback_size;
  r["source_commutator"] = part(rep.source_commutator);
  r["target_commutator"] = part(rep.target_commutator);
  return r;
}

Report cmd_central(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "check-central");
  need_args(args, 1, 1, "check-central", "<morphism>");
  auto rep = is_central_extension(morphism_arg(b, args.objects[0]), args.limits);
  Report r = header("check-central", args.objects);
  r["verdict"] = rep.central ? "central" : "not central";
  r["kernel"] = part(rep.kernel);
  r["join"] = part(rep.join);
  r["certificate"] = part(rep.certificate);
  return r;
}

Report cmd_normal(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "check-normal");
  need_args(args, 1, 1, "check-normal", "<morphism>");
  auto m = morphism_arg(b, args.objects[0]);
  auto rep = is_normal_extension_oracle(m, args.limits);
  Report r = header("check-normal", args.objects);
  r["verdict"] = rep.normal ? "normal" : "not normal";
  r["kernel_pair_size"] = rep.kernel_pair_size;
  r["projection_bijective"] = rep.projection.bijective;
  r["pullback_size"] = rep.projection.pullback_size;
  r["kernel_pair_commutator"] = part(rep.projection.source_commutator);
  r["certificate"] = part(is_central_extension(m, args.limits).certificate);
  return r;
}

Report square_classes(DoubleExtensionReport const& rep) {
  static char const* const names[] = {"top", "left", "bottom", "right"};
  Report c;
  for (std::size_t i = 0; i < 4; ++i) {
    c[names[i]] = to_string(rep.classes[i]);
  }
  return c;
}

Report cmd_double(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "check-double");
  need_args(args, 1, 1, "check-double", "<square>");
  auto rep = is_double_extension(square_arg(b, args.objects[0]));
  Report r = header("check-double", args.objects);
  r["verdict"] = rep.double_extension ? "double extension" : "not a double extension";
  r["classes"] = square_classes(rep);
  r["fibrations"] = rep.fibrations;
  r["comparison_surjective"] = rep.comparison_surjective;
  r["comparison_regular"] = rep.comparison_regular;
  r["pullback_size"] = rep.pullback_size;
  return r;
}

Report double_central_fields(Report r, DoubleCentralityReport const& rep) {
  r["verdict"] = rep.double_central ? "double central" : "not double central";
  r["first_condition"] = rep.first_condition;
  r["second_condition"] = rep.second_condition;
  r["kernels_commutator"] = part(rep.kernels_commutator);
  r["meet_commutator"] = part(rep.meet_commutator);
  return r;
}

Report cmd_double_central(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "check-double-central");
  need_args(args, 1, 1, "check-double-central", "<square>");
  auto rep = is_double_central(square_arg(b, args.objects[0]), args.limits);
  return double_central_fields(header("check-double-central", args.objects), rep);
}

Report cmd_graph_central(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "graph-central");
  need_args(args, 1, 1, "graph-central", "<graph-morphism>");
  auto const& m = lookup(b.graph_morphisms, args.objects[0], "graph morphism");
  auto rep = graph_extension_central(m, args.limits);
  Report r = header("graph-central", args.objects);
  r["verdict"] = rep.central ? "central" : "not central";
  r["certificate"] = part(rep.certificate);
  if (rep.peiffer) {
    r["lie_kernel"] = lie_kernel(m);
    r["peiffer_commutator"] = *rep.peiffer;
  }
  if (rep.group_commutator) {
    r["group_commutator"] = *rep.group_commutator;
  }
  return r;
}

Report cmd_graph_groupoid(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "graph-groupoid");
  need_args(args, 1, 1, "graph-groupoid", "<graph>");
  auto const& g = lookup(b.graphs, args.objects[0], "graph");
  auto rep = graph_is_internal_groupoid(g, args.limits);
  Report r = header("graph-groupoid", args.objects);
  r["verdict"] = rep.groupoid ? "groupoid" : "not a groupoid";
  r["size"] = g.x1->size;
  r["certificate"] = part(rep.certificate);
  if (g.lie) {
    r["crossed_module"] = is_crossed_module(*g.lie);
  }
  return r;
}

Report cmd_graph_double_central(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "graph-double-central");
  need_args(args, 1, 1, "graph-double-central", "<graph-square>");
  auto rep = graph_double_central(lookup(b.graph_squares, args.objects[0], "graph square"),
                                  args.limits);
  Report r = double_central_fields(header("graph-double-central", args.objects), rep.conditions);
  if (rep.peiffer_form) {
    r["peiffer_form"] = *rep.peiffer_form;
  }
  return r;
}

/// <precrossed> [<subset>]; without a subset K is the whole module, so the
/// verdict is the Peiffer identity.
Report cmd_peiffer(Bundle const* bp, CommandArgs const& args) {
  auto const& b = need(bp, "peiffer");
  need_args(args, 1, 2, "peiffer", "<precrossed> [<subset>]");
  auto const& entry = lookup(b.precrossed, args.objects[0], "precrossed module");
  auto const* m = std::get_if<LiePrecrossedModule>(&entry);
  if (m == nullptr) {
    throw PreconditionError("peiffer: '" + args.objects[0] + "' is not a Lie precrossed module");
  }
  std::vector<Elem> k;
  if (args.objects.size() == 2) {
    k = lookup(b.subsets, args.objects[1], "subset");
  } else {
    for (Elem x = 0; x < m->module.size(); ++x) {
      k.push_back(x);
    }
  }
  for (Elem x : k) {
    if (x >= m->module.size()) {
      throw ValidationError("peiffer: element " + std::to_string(x) + " is outside the module");
    }
  }
  auto pc = peiffer_commutator(*m, k);
  Report r = header("peiffer", args.objects);
  r["verdict"] = pc.size() == 1 ? "zero" : "nonzero";
  r["K"] = k;
  r["peiffer_commutator"] = pc;
  r["crossed_module"] = is_crossed_module(*m);
  return r;
}

Report cmd_sweep(Bundle const*, CommandArgs const& args) {
  std::vector<std::string> names = args.objects;
  if (names.empty()) {
    for (auto const& n : group_catalog()) {
      if (catalog_group(n).size <= args.limits.oracle_max) {
        names.push_back(n);
      }
    }
  }
  SweepRelations rel;
  if (args.relations == "all") {
    rel = SweepRelations::all;
  } else if (args.relations == "nabla") {
    rel = SweepRelations::nabla;
  } else {
    throw ParseError("sweep: --relations must be all or nabla");
  }
  auto table = enumerate_and_classify(names, rel, args.limits);
  Report r = header("sweep", names);
  r["relations"] = args.relations;
  auto opt = [](auto const& v) { return v ? Report(*v) : Report(nullptr); };
  Report rows = Report::array();
  for (auto const& row : table.rows) {
    Report x;
    x["group"] = row.group;
    x["R"] = part(row.r);
    x["S"] = part(row.s);
    x["kernel"] = part(row.kernel);
    x["class"] = row.skipped() ? std::string("skipped (not in F: ") + to_string(row.kind) + ")"
                               : std::string(to_string(row.kind));
    x["trivial"] = opt(row.trivial);
    x["central"] = opt(row.central);
    x["normal"] = opt(row.normal);
    x["certificate"] = row.certificate ? part(*row.certificate) : Report(nullptr);
    x["agree"] = row.agrees();
    rows.push_back(x);
  }
  r["rows"] = rows;
  Report squares = Report::array();
  for (auto const& sq : table.squares) {
    Report x;
    x["group"] = sq.group;
    x["T1"] = part(sq.t1);
    x["T2"] = part(sq.t2);
    x["double_extension"] = sq.double_extension;
    x["double_central"] = opt(sq.double_central);
    x["kernels_commutator"] =
        sq.kernels_commutator ? part(*sq.kernels_commutator) : Report(nullptr);
    x["meet_commutator"] = sq.meet_commutator ? part(*sq.meet_commutator) : Report(nullptr);
    squares.push_back(x);
  }
  r["squares"] = squares;
  auto const& s = table.summary;
  r["summary"] = {{"rows", s.rows},
                  {"fibrations", s.fibrations},
                  {"skipped", s.skipped},
                  {"trivial", s.trivial},
                  {"central", s.central},
                  {"normal", s.normal},
                  {"disagreements", s.disagreements},
                  {"squares", s.squares},
                  {"double_extensions", s.double_extensions},
                  {"double_central", s.double_central}};
  r["verdict"] = s.disagreements == 0 ? "agree" : "disagreement";
  return r;
}

using Handler = std::function<Report(Bundle const*, CommandArgs const&)>;

std::vector<std::pair<std::string, Handler>> const& handlers() {
  static std::vector<std::pair<std::string, Handler>> const table{
      {"validate", cmd_validate},
      {"lattice", cmd_lattice},
      {"commutator", cmd_commutator},
      {"centralizes", cmd_centralizes},
      {"connector", cmd_connector},
      {"classify-morphism", cmd_classify},
      {"check-trivial", cmd_trivial},
      {"check-central", cmd_central},
      {"check-normal", cmd_normal},
      {"check-double", cmd_double},
      {"check-double-central", cmd_double_central},
      {"graph-central", cmd_graph_central},
      {"graph-groupoid", cmd_graph_groupoid},
      {"graph-double-central", cmd_graph_double_central},
      {"peiffer", cmd_peiffer},
      {"sweep", cmd_sweep},
  };
  return table;
}

bool scalar_like(Report const& v) {
  if (v.is_primitive()) {
    return true;
  }
  return v.is_array() && std::all_of(v.begin(), v.end(), [](Report const& e) {
           return e.is_primitive() || (e.is_array() && scalar_like(e));
         });
}

std::string scalar_text(Report const& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_null()) {
    return "-";
  }
  return v.dump();
}

void render(std::ostringstream& out, Report const& obj, std::string const& indent) {
  for (auto const& [key, value] : obj.items()) {
    if (scalar_like(value)) {
      out << indent << key << ": " << scalar_text(value) << '\n';
    } else if (value.is_object()) {
      out << indent << key << ":\n";
      render(out, value, indent + "  ");
    } else {
      out << indent << key << ":\n";
      for (auto const& item : value) {
        if (item.is_object()
            && std::all_of(item.begin(), item.end(), [](Report const& e) { return scalar_like(e); })) {
          out << indent << "  -";
          for (auto const& [k, v] : item.items()) {
            out << ' ' << k << '=' << (v.is_string() ? v.dump() : scalar_text(v));
          }
          out << '\n';
        } else if (item.is_object()) {
          out << indent << "  -\n";
          render(out, item, indent + "    ");
        } else {
          out << indent << "  - " << scalar_text(item) << '\n';
        }
      }
    }
  }
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (auto const& [name, h] : handlers()) {
    out.push_back(name);
  }
  return out;
}

Report run_command(Bundle const* bundle, std::string const& command, CommandArgs const& args) {
  for (auto const& [name, h] : handlers()) {
    if (name == command) {
      return h(bundle, args);
    }
  }
  throw ParseError("unknown command '" + command + "'");
}

std::string render_text(Report const& report) {
  std::ostringstream out;
  render(out, report, "");
  return out.str();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
      return 2;
    case ErrorKind::validation:
      return 3;
    case ErrorKind::precondition:
      return 4;
    case ErrorKind::disagreement:
      return 5;
  }
  return 5;
}

int report_status(Report const& report) {
  return report.value("verdict", "") == "disagreement" ? 5 : 0;
}

}  // namespace mgk::cli

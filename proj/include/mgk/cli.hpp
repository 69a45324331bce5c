#pragma once

// Bundle documents, command dispatch and report rendering for the mgk tool.
// Unlike the rest of include/mgk this part is compiled (src/) and needs
// nlohmann_json.

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mgk/mgk.hpp"

namespace mgk::cli {

using Report = nlohmann::ordered_json;

struct Bundle {
  std::map<std::string, AlgebraRef> algebras;
  std::map<std::string, LieAlgebraFp> lie_algebras;
  std::map<std::string, Partition> partitions;
  std::map<std::string, std::vector<Elem>> subsets;
  std::map<std::string, Homomorphism> homomorphisms;
  std::map<std::string, TwoEqObject> objects;
  std::map<std::string, TwoEqMorphism> morphisms;
  std::map<std::string, DoubleExtensionSquare> squares;
  std::map<std::string, std::variant<LiePrecrossedModule, GroupPrecrossedModule>> precrossed;
  std::map<std::string, ReflexiveGraph> graphs;
  std::map<std::string, GraphMorphism> graph_morphisms;
  std::map<std::string, GraphSquare> graph_squares;

  std::size_t object_count() const;
};

/// Parses and validates a bundle document. Failures carry the object name.
Bundle parse_bundle(nlohmann::json const& doc, Limits const& limits = {});
Bundle load_bundle(std::string const& path, Limits const& limits = {});

struct CommandArgs {
  std::vector<std::string> objects;
  Limits limits;
  std::string relations = "all";  // sweep only: all | nabla
};

std::vector<std::string> command_names();

/// The bundle may be null for commands that do not read one (sweep).
Report run_command(Bundle const* bundle, std::string const& command, CommandArgs const& args);

std::string render_text(Report const& report);

/// 5 when the report verdict is "disagreement" (sweep), else 0.
int report_status(Report const& report);

/// 2 parse, 3 validation, 4 precondition, 5 disagreement.
int exit_code(ErrorKind kind);

}  // namespace mgk::cli

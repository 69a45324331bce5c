#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mgk/cli.hpp"

namespace {

std::string join_names(std::vector<std::string> const& names) {
  std::string s;
  for (auto const& n : names) {
    s += (s.empty() ? "" : ", ") + n;
  }
  return s;
}

// CLI11 splits "[a,b,...]" into separate vector entries, which would break
// inline partitions such as --object S3 [0,0,0,1,1,1] nabla. Such tokens are
// swapped for placeholders before parsing and restored afterwards.
constexpr char const* kInlineTag = "\x01inline:";

std::vector<std::string> shield_brackets(int argc, char** argv, std::vector<std::string>& saved) {
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) {  // CLI11 wants the vector reversed
    std::string a = argv[i];
    if (!a.empty() && a.front() == '[') {
      saved.push_back(a);
      a = kInlineTag + std::to_string(saved.size() - 1);
    }
    args.push_back(a);
  }
  return args;
}

void restore_brackets(std::vector<std::string>& objects, std::vector<std::string> const& saved) {
  std::string const tag = kInlineTag;
  for (auto& o : objects) {
    if (o.rfind(tag, 0) == 0) {
      o = saved.at(std::stoul(o.substr(tag.size())));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mgk::cli;

  CLI::App app{"Commutator and extension checks for finite Mal'tsev algebras", "mgk"};
  std::string command;
  std::string bundle_path;
  CommandArgs args;
  std::optional<std::size_t> max_size;
  std::string format = "text";

  app.add_option("command", command, "One of: " + join_names(command_names()))->required();
  app.add_option("--bundle", bundle_path, "JSON bundle to load");
  app.add_option("--object", args.objects, "Named inputs, in command order")->take_all();
  app.add_option("--max-size", max_size, "Largest carrier accepted by bounded computations");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--relations", args.relations, "sweep: relation choices")
      ->check(CLI::IsMember({"all", "nabla"}));

  std::vector<std::string> saved;
  auto shielded = shield_brackets(argc, argv, saved);
  try {
    app.parse(shielded);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  restore_brackets(args.objects, saved);

  if (max_size) {
    args.limits.max_carrier = *max_size;
    args.limits.oracle_max = *max_size;
  }

  try {
    std::optional<Bundle> bundle;
    if (!bundle_path.empty()) {
      bundle = load_bundle(bundle_path, args.limits);
    }
    Report report = run_command(bundle ? &*bundle : nullptr, command, args);
    if (format == "machine") {
      std::cout << report.dump() << '\n';
    } else {
      std::cout << render_text(report);
    }
    return report_status(report);
  } catch (mgk::Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

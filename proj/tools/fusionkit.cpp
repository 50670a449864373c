// fusionkit run <group-file> --prime p [tasks...]
// fusionkit catalog <manifest> [--theorem n]

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fusionkit/errors.hpp"
#include "fusionkit/report.hpp"

namespace {

int emit(const fusionkit::Json& j, const std::string& out_path, const std::string& text = "") {
  const std::string body = text.empty() ? j.dump(2) + "\n" : text;
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << body;
  }
  return fusionkit::passed(j) ? 0 : 1;
}

void add_common(CLI::App* cmd, fusionkit::RunOptions& opt, std::string& oracle) {
  cmd->add_option("--objects", opt.objects, "Object set for transporter systems and localities")
      ->check(CLI::IsMember({"centric", "subcentric", "all-nonidentity"}));
  cmd->add_option("--oracle", oracle, "Brute-force cross-checks")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--word-length", opt.word_length, "Longest word in the partial-group axioms");
  cmd->add_option("--group-cap", opt.group_cap, "Largest group order accepted");
  cmd->add_option("--aut-cap", opt.aut_cap, "Largest |G| for Aut(G) enumeration");
  cmd->add_option("--oracle-bound", opt.oracle_bound, "Raw cochain bound for the cocycle oracle");
  cmd->add_option("--node-cap", opt.node_cap, "Node cap for rigid automorphism search");
  cmd->add_flag("--timing", opt.timing, "Add per-task wall-clock seconds (reports stop being reproducible)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fusion systems, linking systems and localities of small groups"};
  app.require_subcommand(1);

  fusionkit::RunOptions opt;
  std::string oracle = "on";
  std::string out_path;

  std::string group_file;
  unsigned prime = 0;
  std::vector<std::string> tasks;
  auto* run = app.add_subcommand("run", "Run tasks on one group");
  run->add_option("group-file", group_file, "Group generators file")->required();
  run->add_option("--prime,-p", prime, "The prime p")->required();
  run->add_option("tasks", tasks,
                  "classify | linking | locality | roundtrip | lim1 | out0 | kappa | all");
  run->add_option("--out,-o", out_path, "Write the report here instead of stdout");
  add_common(run, opt, oracle);

  std::string manifest;
  int theorem = 0;
  std::string format = "json";
  auto* catalog = app.add_subcommand("catalog", "Run every entry of a manifest");
  catalog->add_option("manifest", manifest, "Manifest of 'group-file prime' lines")->required();
  catalog->add_option("--theorem", theorem, "Restrict to the tasks behind one headline theorem")
      ->check(CLI::Range(1, 4));
  catalog->add_option("--tasks", tasks, "Tasks to run (default: all)");
  catalog->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  catalog->add_option("--out,-o", out_path, "Write the report here instead of stdout");
  add_common(catalog, opt, oracle);

  CLI11_PARSE(app, argc, argv);
  opt.oracle = oracle == "on";

  try {
    if (run->parsed()) {
      if (tasks.empty()) tasks = {"all"};
      return emit(fusionkit::run_report(group_file, prime, tasks, opt), out_path);
    }
    if (theorem != 0) tasks = fusionkit::tasks_for_theorem(theorem);
    if (tasks.empty()) tasks = {"all"};
    const fusionkit::Json j = fusionkit::catalog_report(manifest, tasks, opt);
    return emit(j, out_path, format == "table" ? fusionkit::summary_table(j) : "");
  } catch (const fusionkit::Error& e) {
    fusionkit::Json j;
    j["schema"] = fusionkit::kCatalogSchema;
    j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    j["verdict"] = "fail";
    emit(j, out_path);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fusionkit: " << e.what() << "\n";
    return 2;
  }
}

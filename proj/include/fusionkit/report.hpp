#pragma once

// Structured run reports. Field order is fixed and nothing depends on
// addresses, so without timing a report is a pure function of its inputs.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "fusionkit/group.hpp"

namespace fusionkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "fusionkit.report/1";
inline constexpr const char* kCatalogSchema = "fusionkit.catalog/1";

struct RunOptions {
  std::string objects = "centric";  // centric | subcentric | all-nonidentity
  bool oracle = true;               // brute-force cross-checks
  std::size_t word_length = 4;      // partial-group axioms
  std::size_t group_cap = FiniteGroup::kDefaultCap;
  std::size_t aut_cap = 1000;       // |G| bound for Aut(G)
  std::size_t oracle_bound = 1000000;
  std::size_t node_cap = 10000000;
  bool timing = false;              // per-task seconds; breaks byte-identical reruns
};

/// classify, linking, locality, roundtrip, lim1, out0, kappa (report order).
const std::vector<std::string>& all_tasks();
/// Expands "all", drops duplicates and sorts into report order. Throws
/// std::invalid_argument on an unknown task.
std::vector<std::string> normalize_tasks(const std::vector<std::string>& tasks);
/// 1: locality version, 2: linking-system version, 3: cohomological version,
/// 4: ker κ. Throws std::invalid_argument otherwise.
std::vector<std::string> tasks_for_theorem(int theorem);

/// Never throws for bad input: failures become an "error" block.
Json run_report(const std::string& group_file, unsigned p, const std::vector<std::string>& tasks,
                const RunOptions& opt = {});

struct ManifestEntry {
  std::string file;  // resolved against the manifest's directory
  unsigned prime = 0;
};
/// Lines "group-file prime"; '#' starts a comment. Throws ParseError.
std::vector<ManifestEntry> parse_manifest(const std::string& path);

/// One summary row and one full report per entry, in manifest order.
Json catalog_report(const std::string& manifest, const std::vector<std::string>& tasks,
                    const RunOptions& opt = {});

bool passed(const Json& report);
/// Fixed-width summary table for a catalog report.
std::string summary_table(const Json& catalog);

}  // namespace fusionkit

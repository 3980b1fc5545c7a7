// Copyright 2026 The tagdesc Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tagdesc/cli.h"

#include <charconv>
#include <filesystem>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tagdesc/bench.h"
#include "tagdesc/cluster_io.h"
#include "tagdesc/csv.h"
#include "tagdesc/filter.h"
#include "tagdesc/pipeline.h"
#include "tagdesc/report.h"
#include "tagdesc/tagging.h"

namespace tagdesc {
namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  std::string format;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  for (auto& p : parts) {
    const auto b = p.find_first_not_of(' ');
    const auto e = p.find_last_not_of(' ');
    p = b == std::string::npos ? "" : p.substr(b, e - b + 1);
  }
  return parts;
}

std::vector<std::string> SplitLists(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) {
    for (auto& p : SplitList(v)) {
      if (!p.empty()) out.push_back(std::move(p));
    }
  }
  return out;
}

std::size_t ParseCount(const std::string& s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": not a non-negative integer: '" + s + "'");
  }
  return v;
}

std::pair<std::size_t, std::size_t> ParseRange(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw ConfigError("--elbow: expected k1..k2, got '" + s + "'");
  return {ParseCount(s.substr(0, dots), "--elbow"), ParseCount(s.substr(dots + 2), "--elbow")};
}

std::uint64_t RequireSeed(const Globals& g, std::string_view command) {
  if (!g.seed) {
    throw ConfigError(std::string(command) + " needs an explicit --seed");
  }
  return *g.seed;
}

std::string FormatOr(const Globals& g, std::string fallback,
                     std::initializer_list<std::string_view> allowed) {
  const std::string f = g.format.empty() ? std::move(fallback) : g.format;
  for (auto a : allowed) {
    if (a == f) return f;
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError("--format " + f + " is not available here (expected " + list + ")");
}

void Emit(const Globals& g, const std::string& text, std::ostream& out) {
  if (g.out.empty() || g.out == "-") {
    out << text;
  } else {
    WriteFileAtomic(g.out, text);
  }
}

// --- tag -------------------------------------------------------------------

struct TagArgs {
  std::string data, schema, labels, label_column, id_column;
  std::string complement_map_out, schema_out;
};

std::vector<std::string> ReadLabels(const std::string& path) {
  const DataTable t = ReadCsvFile(path);
  std::size_t col = 0;
  if (auto c = t.FindColumn("cluster")) {
    col = *c;
  } else if (t.column_count() != 1) {
    throw DataError(path + ": expected a 'cluster' column");
  }
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < t.row_count(); ++r) labels.push_back(t.cell(r, col));
  return labels;
}

void RunTag(const Globals& g, const TagArgs& a, std::ostream& out, std::ostream& err) {
  const std::string format = FormatOr(g, "json", {"json", "csv"});
  if (a.labels.empty() == a.label_column.empty()) {
    throw ConfigError("tag: give exactly one of --labels or --label-column");
  }
  const DataTable table = ReadCsvFile(a.data);
  const std::vector<TagRule> rules = ResolveTagSchema(LoadTagSchema(a.schema), table);
  // --labels names a file, or failing that a column of the data.
  std::vector<std::string> labels;
  if (!a.label_column.empty()) {
    labels = table.Column(a.label_column);
  } else if (!std::filesystem::exists(a.labels) && table.FindColumn(a.labels)) {
    labels = table.Column(a.labels);
  } else {
    labels = ReadLabels(a.labels);
  }
  std::optional<std::string> id_col;
  if (!a.id_column.empty()) id_col = a.id_column;
  const ClusterSet set = ApplyTags(table, labels, rules, id_col);

  std::size_t untagged = 0;
  for (const auto& c : set.clusters) untagged += c.UntaggedItems().size();
  if (untagged > 0) {
    err << "tagdesc: warning: " << untagged
        << " items carry no tag; solvers will reject their clusters\n";
  }
  if (!a.schema_out.empty()) WriteFileAtomic(a.schema_out, TagSchemaToJson(rules));
  if (!a.complement_map_out.empty()) {
    WriteFileAtomic(a.complement_map_out,
                    ComplementMapToJson(SchemaComplementMap(rules, *set.universe), *set.universe));
  }
  Emit(g, format == "json" ? ClusterSetToJson(set) : ClusterSetToBinaryMatrix(set), out);
}

// --- cluster ---------------------------------------------------------------

struct ClusterArgs {
  std::string data;
  std::optional<std::size_t> k;
  std::string elbow, elbow_out, standardized_out;
  std::vector<std::string> columns, exclude, one_hot;
  bool no_standardize = false;
  std::size_t max_iter = 300;
  std::size_t restarts = 1;
};

std::string MatrixCsv(const NumericMatrix& m) {
  std::string out;
  for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? "," : "") + CsvEscape(m.column_names()[c]);
  out += "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), m.at(r, c));
      out += (c ? "," : "") + std::string(buf, ptr);
    }
    out += "\n";
  }
  return out;
}

std::string ElbowJson(const std::vector<ElbowPoint>& curve) {
  Json j = Json::array();
  for (const auto& p : curve) j.push_back(Json{{"k", p.k}, {"sse", p.sse}});
  return j.dump(2) + "\n";
}

void RunCluster(const Globals& g, const ClusterArgs& a, std::ostream& out, std::ostream& err) {
  const std::string format = FormatOr(g, "csv", {"csv", "json"});
  const std::uint64_t seed = RequireSeed(g, "cluster");
  if (!a.k && a.elbow.empty()) throw ConfigError("cluster: give --k, --elbow or both");
  if (a.k && !a.elbow.empty() && a.elbow_out.empty()) {
    throw ConfigError("cluster: with both --k and --elbow, --elbow-out names the elbow file");
  }

  IngestOptions ingest{SplitLists(a.columns), SplitLists(a.exclude), SplitLists(a.one_hot)};
  NumericMatrix data = ToNumericMatrix(ReadCsvFile(a.data), ingest);
  if (!a.no_standardize) data = Standardize(data);
  if (!a.standardized_out.empty()) WriteFileAtomic(a.standardized_out, MatrixCsv(data));

  std::string elbow_text;
  if (!a.elbow.empty()) {
    auto [k1, k2] = ParseRange(a.elbow);
    const auto curve = ElbowCurve(data, k1, k2, seed, a.max_iter, a.restarts);
    elbow_text = format == "json" ? ElbowJson(curve) : ElbowCsv(curve);
  }
  if (!a.k) {
    if (a.elbow_out.empty()) {
      Emit(g, elbow_text, out);
    } else {
      WriteFileAtomic(a.elbow_out, elbow_text);
    }
    return;
  }

  const KMeansResult result = KMeansBestOf(data, *a.k, seed, a.max_iter, a.restarts);
  std::string text;
  if (format == "json") {
    Json j;
    j["k"] = *a.k;
    j["seed"] = seed;
    j["sse"] = result.sse;
    j["iterations"] = result.iterations;
    Json labels = Json::array();
    for (std::size_t l : result.labels) labels.push_back(std::to_string(l + 1));
    j["labels"] = std::move(labels);
    text = j.dump(2) + "\n";
  } else {
    text = "row,cluster\n";
    for (std::size_t r = 0; r < result.labels.size(); ++r) {
      text += std::to_string(r) + "," + std::to_string(result.labels[r] + 1) + "\n";
    }
  }
  if (!elbow_text.empty()) WriteFileAtomic(a.elbow_out, elbow_text);
  Emit(g, text, out);
  err << "tagdesc: k=" << *a.k << " sse=" << result.sse << " iterations=" << result.iterations
      << "\n";
}

// --- filter / explain ------------------------------------------------------

struct FilterArgs {
  std::string clusters, complement_map, masks;
  std::vector<std::string> filter_pairs;
  double shared_threshold = 50.0;
};

FilterSettings BuildFilterSettings(const FilterArgs& a, const ClusterSet& set) {
  FilterSettings s;
  if (!a.complement_map.empty()) {
    s.complements = LoadComplementMap(a.complement_map, *set.universe);
  }
  for (const auto& p : a.filter_pairs) {
    const auto parts = SplitList(p);
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      throw ConfigError("--filter-pair: expected clusterA,clusterB, got '" + p + "'");
    }
    s.cross_pairs.emplace_back(parts[0], parts[1]);
  }
  s.shared_threshold = a.shared_threshold;
  return s;
}

void RunFilter(const Globals& g, const FilterArgs& a, std::ostream& out) {
  FormatOr(g, "json", {"json"});
  const ClusterSet set = LoadClusterSet(a.clusters);
  const auto masks = ComputeMasks(set, BuildFilterSettings(a, set));
  Emit(g, MasksToJson(masks, *set.universe), out);
}

struct ExplainArgs {
  FilterArgs filter;
  std::vector<std::string> methods = {"greedy,exact,cnf"};
  std::string cnf_clauses = "greedy,greedy";
  std::string cnf_preprocess = "strict";
  std::uint64_t node_budget = SolverConfig::kDefaultNodeBudget;
  std::size_t threads = 1;
  std::vector<std::string> cluster_ids;
};

void RunExplainCommand(const Globals& g, const ExplainArgs& a, std::ostream& out,
                       std::ostream& err) {
  const ReportFormat format = ParseReportFormat(FormatOr(g, "json", {"json", "text", "text-table", "csv"}));
  ExplainOptions options;
  options.methods.clear();
  for (const auto& m : SplitLists(a.methods)) options.methods.push_back(ParseMethod(m));
  const auto clauses = SplitList(a.cnf_clauses);
  if (clauses.size() != 2) throw ConfigError("--cnf-clauses: expected two solvers, e.g. greedy,exact");
  options.solver.clause_solvers = {ParseClauseSolver(clauses[0]), ParseClauseSolver(clauses[1])};
  options.solver.cnf_preprocess = ParseCnfPreprocess(a.cnf_preprocess);
  options.solver.node_budget = a.node_budget;
  options.threads = a.threads;
  options.cluster_ids = SplitLists(a.cluster_ids);

  const ClusterSet set = LoadClusterSet(a.filter.clusters);
  if (!a.filter.masks.empty()) {
    if (!a.filter.complement_map.empty() || !a.filter.filter_pairs.empty()) {
      throw ConfigError("explain: --masks cannot be combined with --complement-map or --filter-pair");
    }
    options.masks = ParseMasksJson(ReadFile(a.filter.masks), *set.universe);
  } else {
    options.filters = BuildFilterSettings(a.filter, set);
  }
  const ExplainReport report = RunExplain(set, options);
  for (const auto& c : report.clusters) {
    for (const auto& d : c.descriptors) {
      if (d.method == "exact" && !d.optimal) {
        err << "tagdesc: warning: cluster " << c.cluster_id
            << ": exact search hit the node budget; reporting the best descriptor found\n";
      }
      if (!d.removed_items.empty()) {
        err << "tagdesc: cluster " << c.cluster_id << ": cnf dropped " << d.removed_items.size()
            << " items\n";
      }
    }
  }
  Emit(g, RenderReport(report, format), out);
}

// --- bench / report --------------------------------------------------------

struct BenchArgs {
  std::string sizes = "200,2000,20000";
  std::size_t tags = 50;
  double density = 0.2;
  std::size_t repeats = 10;
  std::uint64_t node_budget = BenchOptions{}.node_budget;
  std::string solvers = "greedy,exact,cnf-greedy";
};

void RunBench(const Globals& g, const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const std::string format = FormatOr(g, "csv", {"csv", "json"});
  BenchOptions options;
  options.seed = RequireSeed(g, "bench");
  options.sizes.clear();
  for (const auto& s : SplitList(a.sizes)) options.sizes.push_back(ParseCount(s, "--sizes"));
  options.n_tags = a.tags;
  options.density = a.density;
  options.repeats = a.repeats;
  options.node_budget = a.node_budget;
  options.solvers.clear();
  for (const auto& s : SplitList(a.solvers)) options.solvers.push_back(ParseBenchSolver(s));

  const auto rows = TimeSolvers(options);
  for (const auto& r : rows) {
    if (r.budget_exhausted > 0) {
      err << "tagdesc: n_items=" << r.n_items << ": exact hit the node budget in "
          << r.budget_exhausted << " of " << r.runs << " runs\n";
    }
  }
  if (format == "csv") {
    Emit(g, BenchCsv(rows), out);
    return;
  }
  Json j = Json::array();
  for (const auto& r : rows) {
    Json jr{{"n_items", r.n_items},
            {"solver", BenchSolverName(r.solver)},
            {"mean_seconds", r.mean_seconds},
            {"std_seconds", r.std_seconds}};
    jr["optimal_fraction"] = r.optimal_fraction ? Json(*r.optimal_fraction) : Json(nullptr);
    jr["budget_exhausted"] = r.budget_exhausted;
    j.push_back(std::move(jr));
  }
  Emit(g, j.dump(2) + "\n", out);
}

void RunReport(const Globals& g, const std::string& in, std::ostream& out) {
  const ReportFormat format =
      ParseReportFormat(FormatOr(g, "text", {"json", "text", "text-table", "csv"}));
  ExplainReport report;
  try {
    report = ParseReportJson(ReadFile(in));
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), in + ": " + e.what());
  }
  Emit(g, RenderReport(report, format), out);
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return kExitUsage;
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kInvalidData:
      return kExitInvalidData;
    case ErrorKind::kInfeasible:
      return kExitInfeasible;
    case ErrorKind::kBudget:
      return kExitBudget;
    case ErrorKind::kInternal:
      return kExitInternal;
  }
  return kExitInternal;
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explain clusters with tag descriptors."};
  app.name("tagdesc");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format (json, text, csv; default per command)");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--out", g.out, "Output file (default: standard output)");

  TagArgs tag;
  auto* tag_cmd = app.add_subcommand("tag", "Turn feature columns into tagged clusters");
  tag_cmd->add_option("--data", tag.data, "Feature CSV")->required();
  tag_cmd->add_option("--schema", tag.schema, "Tag schema JSON")->required();
  tag_cmd->add_option("--labels", tag.labels, "Labels CSV (a 'cluster' column) or a data column name");
  tag_cmd->add_option("--label-column", tag.label_column, "Data column holding cluster labels");
  tag_cmd->add_option("--id-column", tag.id_column, "Data column holding item ids");
  tag_cmd->add_option("--complement-map-out", tag.complement_map_out,
                      "Write the schema's complement pairs here");
  tag_cmd->add_option("--schema-out", tag.schema_out, "Write the resolved schema here");

  ClusterArgs cl;
  auto* cluster_cmd = app.add_subcommand("cluster", "k-means clustering and elbow curve");
  cluster_cmd->add_option("--data", cl.data, "Feature CSV")->required();
  cluster_cmd->add_option("--k", cl.k, "Number of clusters");
  cluster_cmd->add_option("--elbow", cl.elbow, "SSE for every k in k1..k2");
  cluster_cmd->add_option("--elbow-out", cl.elbow_out, "Elbow output file");
  cluster_cmd->add_option("--columns", cl.columns, "Columns to use (comma separated)");
  cluster_cmd->add_option("--exclude", cl.exclude, "Columns to ignore");
  cluster_cmd->add_option("--one-hot", cl.one_hot, "Categorical columns to expand into dummies");
  cluster_cmd->add_flag("--no-standardize", cl.no_standardize, "Skip column standardization");
  cluster_cmd->add_option("--max-iter", cl.max_iter, "Lloyd iteration cap")->capture_default_str();
  cluster_cmd->add_option("--restarts", cl.restarts, "Keep the best of this many runs")
      ->capture_default_str();
  cluster_cmd->add_option("--standardized-out", cl.standardized_out,
                          "Write the matrix fed to k-means here");

  FilterArgs filter;
  auto add_filter_flags = [](CLI::App* cmd, FilterArgs& f) {
    cmd->add_option("--clusters", f.clusters, "Tagged clusters (JSON or binary-matrix CSV)")
        ->required();
    cmd->add_option("--complement-map", f.complement_map, "Complement pairs JSON");
    cmd->add_option("--filter-pair", f.filter_pairs, "Two cluster ids, comma separated")
        ->take_all();
    cmd->add_option("--shared-threshold", f.shared_threshold,
                    "Cross-cluster threshold in percent")
        ->capture_default_str();
  };
  auto* filter_cmd = app.add_subcommand("filter", "Compute candidate masks");
  add_filter_flags(filter_cmd, filter);

  ExplainArgs ex;
  auto* explain_cmd = app.add_subcommand("explain", "Solve descriptors and report");
  add_filter_flags(explain_cmd, ex.filter);
  explain_cmd->add_option("--masks", ex.filter.masks, "Masks from the filter command");
  explain_cmd->add_option("--methods", ex.methods, "greedy, exact, cnf")->capture_default_str();
  explain_cmd->add_option("--cnf-clauses", ex.cnf_clauses, "Solvers for the two CNF clauses")
      ->capture_default_str();
  explain_cmd->add_option("--cnf-preprocess", ex.cnf_preprocess, "strict or drop-and-report")
      ->capture_default_str();
  explain_cmd->add_option("--node-budget", ex.node_budget, "Exact search node budget")
      ->capture_default_str();
  explain_cmd->add_option("--threads", ex.threads, "Clusters solved in parallel")
      ->capture_default_str();
  explain_cmd->add_option("--cluster", ex.cluster_ids, "Only these clusters");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the solvers on synthetic data");
  bench_cmd->add_option("--sizes", bench.sizes, "Item counts")->capture_default_str();
  bench_cmd->add_option("--tags", bench.tags, "Tag universe size")->capture_default_str();
  bench_cmd->add_option("--density", bench.density, "Tag inclusion probability")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Instances per size")->capture_default_str();
  bench_cmd->add_option("--node-budget", bench.node_budget, "Exact search node budget")
      ->capture_default_str();
  bench_cmd->add_option("--solvers", bench.solvers, "greedy, exact, cnf-greedy")
      ->capture_default_str();

  std::string report_in;
  auto* report_cmd = app.add_subcommand("report", "Re-render an explain report");
  report_cmd->add_option("--in", report_in, "Report JSON")->required();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tag_cmd) RunTag(g, tag, out, err);
    if (*cluster_cmd) RunCluster(g, cl, out, err);
    if (*filter_cmd) RunFilter(g, filter, out);
    if (*explain_cmd) RunExplainCommand(g, ex, out, err);
    if (*bench_cmd) RunBench(g, bench, out, err);
    if (*report_cmd) RunReport(g, report_in, out);
  } catch (const Error& e) {
    err << "tagdesc: " << ErrorKindName(e.kind()) << " error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "tagdesc: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace tagdesc

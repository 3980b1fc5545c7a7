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


#include "tagdesc/report.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "json.hpp"
#include "tagdesc/cluster_io.h"
#include "tagdesc/csv.h"
#include "tagdesc/error.h"

namespace tagdesc {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> Names(const TagUniverse& universe, std::span<const TagId> ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (TagId t : ids) out.push_back(universe.name(t));
  return out;
}

std::vector<std::string> ExcludedNames(const TagUniverse& universe, const CandidateMask& mask) {
  std::vector<std::string> out;
  for (TagId t = 0; t < universe.size(); ++t) {
    if (!mask.admissible(t)) out.push_back(universe.name(t));
  }
  return out;
}

Json FilterToJson(const FilterRecord& f) {
  Json j;
  j["kind"] = f.kind;
  if (!f.partner.empty()) j["partner"] = f.partner;
  if (f.threshold) j["threshold"] = *f.threshold;
  j["excluded"] = f.excluded;
  return j;
}

FilterRecord FilterFromJson(const Json& j) {
  FilterRecord f;
  f.kind = j.at("kind").get<std::string>();
  if (j.contains("partner")) f.partner = j.at("partner").get<std::string>();
  if (j.contains("threshold")) f.threshold = j.at("threshold").get<double>();
  f.excluded = j.at("excluded").get<std::vector<std::string>>();
  return f;
}

// Parses with nlohmann, turning its exceptions into data errors.
template <typename Fn>
auto WithJsonErrors(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw DataError(std::string(what) + ": " + e.what());
  }
}

[[noreturn]] void Rethrow(const Error& e, const std::string& stage) {
  throw Error(e.kind(), e.code(), stage + ": " + e.what());
}

ClusterReport ExplainCluster(const TaggedCluster& cluster, const ClusterMask& cm,
                             const ExplainOptions& options) {
  const TagUniverse& universe = cluster.universe();
  ClusterReport report;
  report.cluster_id = cluster.id();
  report.size = cluster.size();
  report.filters = cm.filters;

  SolverConfig config = options.solver;
  config.candidate_mask = cm.mask;
  for (Method method : options.methods) {
    const std::string stage =
        "solve " + std::string(MethodName(method)) + ", cluster " + cluster.id();
    ReportDescriptor d;
    d.method = std::string(MethodName(method));
    try {
      switch (method) {
        case Method::kGreedy: {
          DisjunctiveDescriptor g = GreedyHittingSet(cluster, config);
          d.tags = Names(universe, g.tags);
          d.size = g.size();
          break;
        }
        case Method::kExact: {
          ExactResult r = SolveMinimumHittingSet(cluster, config);
          d.tags = Names(universe, r.descriptor.tags);
          d.size = r.descriptor.size();
          d.optimal = r.optimal;
          break;
        }
        case Method::kCnf: {
          CnfResult r = BuildCnfDescriptor(cluster, config);
          d.clauses = {Names(universe, r.descriptor.clause1.tags),
                       Names(universe, r.descriptor.clause2.tags)};
          d.size = r.descriptor.size();
          d.optimal = r.clause_optimal[0] && r.clause_optimal[1];
          d.removed_items = std::move(r.removed_items);
          break;
        }
      }
    } catch (const Error& e) {
      Rethrow(e, stage);
    }
    report.descriptors.push_back(std::move(d));
  }

  const TagStats stats = TagCoveragePercentages(cluster);
  for (const TagCoverage& c : stats.per_tag) {
    report.tag_percentages.push_back({universe.name(c.tag), c.count, c.rounded_thousandths()});
  }
  return report;
}

std::string DescriptorCell(const ReportDescriptor& d) {
  auto list = [](const std::vector<std::string>& tags) {
    std::string s = "[";
    for (std::size_t i = 0; i < tags.size(); ++i) s += (i ? ", " : "") + tags[i];
    return s + "]";
  };
  std::string cell;
  if (d.method == MethodName(Method::kCnf)) {
    cell = "(";
    for (std::size_t i = 0; i < d.clauses.size(); ++i) cell += (i ? ", " : "") + list(d.clauses[i]);
    cell += ")";
  } else {
    cell = list(d.tags);
  }
  if (d.method == MethodName(Method::kExact) && !d.optimal) cell += " (not proven)";
  if (!d.removed_items.empty()) {
    cell += " -" + std::to_string(d.removed_items.size()) + " items";
  }
  return cell;
}

std::string RenderText(const ExplainReport& report) {
  std::vector<std::string> methods;
  for (const auto& c : report.clusters) {
    for (const auto& d : c.descriptors) {
      if (std::find(methods.begin(), methods.end(), d.method) == methods.end()) {
        methods.push_back(d.method);
      }
    }
  }
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"method"});
  for (const auto& c : report.clusters) grid[0].push_back("cluster " + c.cluster_id);
  for (const auto& m : methods) {
    std::vector<std::string> row = {m};
    for (const auto& c : report.clusters) {
      auto it = std::find_if(c.descriptors.begin(), c.descriptors.end(),
                             [&](const ReportDescriptor& d) { return d.method == m; });
      row.push_back(it == c.descriptors.end() ? "-" : DescriptorCell(*it));
    }
    grid.push_back(std::move(row));
  }
  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string RenderCsv(const ExplainReport& report) {
  std::string out = "cluster_id,section,method,clause,tag,value\n";
  auto row = [&](const std::string& cluster, std::string_view section, std::string_view method,
                 std::string_view clause, std::string_view tag, std::string_view value) {
    out += CsvEscape(cluster) + "," + std::string(section) + "," + CsvEscape(method) + "," +
           std::string(clause) + "," + CsvEscape(tag) + "," + CsvEscape(value) + "\n";
  };
  for (const auto& c : report.clusters) {
    for (const auto& d : c.descriptors) {
      if (d.method == MethodName(Method::kCnf)) {
        for (std::size_t k = 0; k < d.clauses.size(); ++k) {
          for (const auto& t : d.clauses[k]) {
            row(c.cluster_id, "descriptor", d.method, std::to_string(k + 1), t, "");
          }
        }
      } else {
        for (const auto& t : d.tags) row(c.cluster_id, "descriptor", d.method, "", t, "");
      }
      for (const auto& r : d.removed_items) {
        row(c.cluster_id, "removed", d.method, "", r.item_id, RemovalReasonName(r.reason));
      }
    }
    for (const auto& p : c.tag_percentages) {
      row(c.cluster_id, "percentage", "", "", p.tag, FormatThousandths(p.thousandths));
    }
  }
  return out;
}

std::string RenderJson(const ExplainReport& report) {
  Json clusters = Json::array();
  for (const auto& c : report.clusters) {
    Json jc;
    jc["cluster_id"] = c.cluster_id;
    jc["size"] = c.size;
    jc["filters"] = Json::array();
    for (const auto& f : c.filters) jc["filters"].push_back(FilterToJson(f));
    jc["descriptors"] = Json::array();
    for (const auto& d : c.descriptors) {
      Json jd;
      jd["cluster_id"] = c.cluster_id;
      jd["method"] = d.method;
      if (d.method == MethodName(Method::kCnf)) {
        jd["clauses"] = d.clauses;
      } else {
        jd["tags"] = d.tags;
      }
      jd["size"] = d.size;
      jd["optimal"] = d.optimal;
      jd["removed_items"] = Json::array();
      for (const auto& r : d.removed_items) {
        jd["removed_items"].push_back(
            Json{{"item_id", r.item_id}, {"reason", RemovalReasonName(r.reason)}});
      }
      jc["descriptors"].push_back(std::move(jd));
    }
    jc["tag_percentages"] = Json::array();
    for (const auto& p : c.tag_percentages) {
      jc["tag_percentages"].push_back(
          Json{{"tag", p.tag},
               {"count", p.count},
               {"percentage", static_cast<double>(p.thousandths) / 1000.0}});
    }
    clusters.push_back(std::move(jc));
  }
  return Json{{"clusters", std::move(clusters)}}.dump(2) + "\n";
}

}  // namespace

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kGreedy:
      return "greedy";
    case Method::kExact:
      return "exact";
    case Method::kCnf:
      return "cnf";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kGreedy, Method::kExact, Method::kCnf}) {
    if (MethodName(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected greedy, exact or cnf)");
}

std::vector<ClusterMask> ComputeMasks(const ClusterSet& set, const FilterSettings& settings) {
  const TagUniverse& universe = *set.universe;
  std::vector<ClusterMask> masks;
  for (const auto& c : set.clusters) {
    masks.push_back({c.id(), CandidateMask::All(universe.size()), {}});
  }
  auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < set.clusters.size(); ++i) {
      if (set.clusters[i].id() == id) return i;
    }
    throw ConfigError("filter: unknown cluster '" + id + "'");
  };

  try {
    if (settings.complements) {
      for (std::size_t i = 0; i < set.clusters.size(); ++i) {
        CandidateMask m = NonComplementarityFilter(set.clusters[i], *settings.complements);
        masks[i].filters.push_back({"non-complementarity", "", std::nullopt,
                                    ExcludedNames(universe, m)});
        masks[i].mask = masks[i].mask & m;
      }
    }
    std::set<std::string> paired;
    for (const auto& [a, b] : settings.cross_pairs) {
      const std::size_t ia = index_of(a);
      const std::size_t ib = index_of(b);
      if (ia == ib) throw ConfigError("filter: cluster '" + a + "' paired with itself");
      for (const auto& id : {a, b}) {
        if (!paired.insert(id).second) {
          throw ConfigError("filter: cluster '" + id + "' appears in more than one filter pair");
        }
      }
      auto [ma, mb] = CrossClusterFilter(set.clusters[ia], set.clusters[ib],
                                         settings.shared_threshold);
      masks[ia].filters.push_back(
          {"cross-cluster", b, settings.shared_threshold, ExcludedNames(universe, ma)});
      masks[ib].filters.push_back(
          {"cross-cluster", a, settings.shared_threshold, ExcludedNames(universe, mb)});
      masks[ia].mask = masks[ia].mask & ma;
      masks[ib].mask = masks[ib].mask & mb;
    }
  } catch (const Error& e) {
    Rethrow(e, "filter");
  }
  return masks;
}

std::string MasksToJson(const std::vector<ClusterMask>& masks, const TagUniverse& universe) {
  Json clusters = Json::array();
  for (const auto& m : masks) {
    Json j;
    j["cluster_id"] = m.cluster_id;
    j["excluded"] = ExcludedNames(universe, m.mask);
    j["filters"] = Json::array();
    for (const auto& f : m.filters) j["filters"].push_back(FilterToJson(f));
    clusters.push_back(std::move(j));
  }
  return Json{{"clusters", std::move(clusters)}}.dump(2) + "\n";
}

std::vector<ClusterMask> ParseMasksJson(std::string_view text, const TagUniverse& universe) {
  return WithJsonErrors("mask file", [&] {
    const Json doc = Json::parse(text);
    std::vector<ClusterMask> out;
    for (const auto& j : doc.at("clusters")) {
      CandidateMask mask = CandidateMask::All(universe.size());
      for (const auto& name : j.at("excluded")) {
        const std::string tag = name.get<std::string>();
        const auto id = universe.Find(tag);
        if (!id) throw DataError("mask file: unknown tag '" + tag + "'");
        mask.Exclude(*id);
      }
      ClusterMask cm{j.at("cluster_id").get<std::string>(), std::move(mask), {}};
      if (j.contains("filters")) {
        for (const auto& f : j.at("filters")) cm.filters.push_back(FilterFromJson(f));
      }
      out.push_back(std::move(cm));
    }
    return out;
  });
}

ExplainReport RunExplain(const ClusterSet& set, const ExplainOptions& options) {
  if (options.methods.empty()) throw ConfigError("explain: no methods given");
  if (options.threads < 1) throw ConfigError("explain: threads must be at least 1");
  options.solver.Validate();

  std::vector<const TaggedCluster*> selected;
  if (options.cluster_ids.empty()) {
    for (const auto& c : set.clusters) selected.push_back(&c);
  } else {
    for (const auto& id : options.cluster_ids) {
      try {
        selected.push_back(&set.Find(id));
      } catch (const Error& e) {
        Rethrow(e, "explain");
      }
    }
  }
  std::sort(selected.begin(), selected.end(), [](const TaggedCluster* a, const TaggedCluster* b) {
    return ClusterIdLess(a->id(), b->id());
  });

  const std::vector<ClusterMask> all_masks =
      options.masks ? *options.masks : ComputeMasks(set, options.filters);
  std::vector<const ClusterMask*> masks;
  std::vector<ClusterMask> defaults;
  defaults.reserve(selected.size());
  for (const TaggedCluster* c : selected) {
    auto it = std::find_if(all_masks.begin(), all_masks.end(),
                           [&](const ClusterMask& m) { return m.cluster_id == c->id(); });
    if (it != all_masks.end()) {
      if (it->mask.size() != set.universe->size()) {
        throw ConfigError("explain: mask for cluster " + c->id() + " has the wrong width");
      }
      masks.push_back(&*it);
    } else {
      defaults.push_back({c->id(), CandidateMask::All(set.universe->size()), {}});
      masks.push_back(&defaults.back());
    }
  }

  ExplainReport report;
  report.clusters.resize(selected.size());
  std::vector<std::exception_ptr> errors(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      try {
        report.clusters[i] = ExplainCluster(*selected[i], *masks[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(options.threads, selected.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "text" || name == "text-table") return ReportFormat::kText;
  if (name == "csv") return ReportFormat::kCsv;
  throw ConfigError("unknown format '" + std::string(name) + "' (expected json, text or csv)");
}

std::string RenderReport(const ExplainReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return RenderJson(report);
    case ReportFormat::kText:
      return RenderText(report);
    case ReportFormat::kCsv:
      return RenderCsv(report);
  }
  throw ConfigError("unknown report format");
}

ExplainReport ParseReportJson(std::string_view text) {
  return WithJsonErrors("report", [&] {
    const Json doc = Json::parse(text);
    ExplainReport report;
    for (const auto& jc : doc.at("clusters")) {
      ClusterReport c;
      c.cluster_id = jc.at("cluster_id").get<std::string>();
      c.size = jc.at("size").get<std::size_t>();
      for (const auto& f : jc.at("filters")) c.filters.push_back(FilterFromJson(f));
      for (const auto& jd : jc.at("descriptors")) {
        ReportDescriptor d;
        d.method = jd.at("method").get<std::string>();
        ParseMethod(d.method);
        if (jd.contains("tags")) d.tags = jd.at("tags").get<std::vector<std::string>>();
        if (jd.contains("clauses")) {
          d.clauses = jd.at("clauses").get<std::vector<std::vector<std::string>>>();
        }
        d.size = jd.at("size").get<std::size_t>();
        d.optimal = jd.at("optimal").get<bool>();
        for (const auto& r : jd.at("removed_items")) {
          d.removed_items.push_back({r.at("item_id").get<std::string>(),
                                     ParseRemovalReason(r.at("reason").get<std::string>())});
        }
        c.descriptors.push_back(std::move(d));
      }
      for (const auto& jp : jc.at("tag_percentages")) {
        c.tag_percentages.push_back(
            {jp.at("tag").get<std::string>(), jp.at("count").get<std::size_t>(),
             std::llround(jp.at("percentage").get<double>() * 1000.0)});
      }
      report.clusters.push_back(std::move(c));
    }
    return report;
  });
}

}  // namespace tagdesc

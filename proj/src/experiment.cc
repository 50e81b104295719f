// Copyright 2026 The Clustertest Authors.
//
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

#include "clustertest/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "clustertest/noisy_parities_game.h"
#include "clustertest/random.h"
#include "json.hpp"

namespace clustertest {
namespace {

using nlohmann::json;

// Value of x after a %.12g round trip.
double Canonical(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string CsvField(absl::string_view s) {
  if (s.find_first_of(",\"\r\n") == absl::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

absl::StatusOr<uint64_t> GetCount(const ExperimentConfig& c,
                                  absl::string_view key, int64_t fallback) {
  absl::StatusOr<int64_t> v = c.GetInt(key, fallback);
  if (!v.ok()) return v.status();
  if (*v < 0) {
    return absl::InvalidArgumentError(absl::StrCat(key, " must be >= 0"));
  }
  return static_cast<uint64_t>(*v);
}

#define CT_ASSIGN(lhs, expr)             \
  do {                                   \
    auto _v = (expr);                    \
    if (!_v.ok()) return _v.status();    \
    lhs = *std::move(_v);                \
  } while (0)

std::string TesterEcho(const TesterParams& p) {
  return absl::StrCat("k=", p.k, ";phi_in=", FormatNumber(p.phi_in),
                      ";phi_out=", FormatNumber(p.phi_out),
                      ";beta=", FormatNumber(p.beta),
                      ";profile=", ProfileName(p.profile),
                      ";s=", p.sample_count, ";t=", p.walk_length,
                      ";R=", p.walks_per_source, ";r=", p.norm_walks);
}

ResultRow VerdictRow(absl::string_view task, int64_t trial, uint64_t seed,
                     const TestVerdict& v, std::string truth,
                     std::string params) {
  ResultRow row;
  row.task = std::string(task);
  row.trial = trial;
  row.seed = seed;
  row.verdict = v.accept ? "accept" : "reject";
  row.truth = std::move(truth);
  row.statistic = Canonical(v.statistic);
  row.threshold = Canonical(v.threshold);
  row.vertex_queries = v.queries.vertex_queries;
  row.degree_queries = v.queries.degree_queries;
  row.neighbor_queries = v.queries.neighbor_queries;
  row.total_queries = v.queries.total();
  row.params = std::move(params);
  return row;
}

ResultRow RefusedRow(absl::string_view task, int64_t trial, uint64_t seed,
                     std::string truth, std::string params) {
  ResultRow row;
  row.task = std::string(task);
  row.trial = trial;
  row.seed = seed;
  row.verdict = "refused";
  row.truth = std::move(truth);
  row.params = std::move(params);
  return row;
}

void FillAdvantage(std::vector<ResultRow>& rows) {
  int64_t correct = 0, seen = 0;
  for (ResultRow& row : rows) {
    if (row.truth.empty() || row.verdict == "refused") continue;
    ++seen;
    correct += row.verdict == row.truth;
    row.advantage = Canonical(2.0 * correct / seen - 1.0);
  }
}

struct TrialJob {
  const PartitionTester* tester;
  int64_t trial;
  uint64_t seed;
  std::string truth;
  std::string params;
};

absl::StatusOr<std::vector<ResultRow>> RunJobs(absl::string_view task,
                                               const std::vector<TrialJob>& jobs,
                                               int repetitions, size_t workers) {
  std::vector<absl::StatusOr<ResultRow>> slots(jobs.size(),
                                               absl::UnknownError("not run"));
  ParallelFor(jobs.size(), workers, [&](size_t i) {
    const TrialJob& job = jobs[i];
    const auto start = std::chrono::steady_clock::now();
    absl::StatusOr<TestVerdict> v =
        repetitions > 1 ? job.tester->RunMajority(job.seed, repetitions)
                        : job.tester->Run(job.seed);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (!v.ok()) {
      slots[i] = v.status();
      return;
    }
    ResultRow row = VerdictRow(task, job.trial, job.seed, *v, job.truth, job.params);
    row.wall_time_ms = ms;
    slots[i] = std::move(row);
  });
  std::vector<ResultRow> rows;
  rows.reserve(slots.size());
  for (auto& s : slots) {
    if (!s.ok()) return s.status();
    rows.push_back(*std::move(s));
  }
  return rows;
}

absl::StatusOr<std::vector<ResultRow>> RunTestTask(const ExperimentConfig& c) {
  BuiltInstance inst;
  CT_ASSIGN(inst, BuildInstance(c));
  TesterSetup setup;
  CT_ASSIGN(setup, ReadTesterSetup(c, inst.certified_phi_in));
  uint64_t trials, seed, workers;
  CT_ASSIGN(trials, GetCount(c, "trials", 1));
  CT_ASSIGN(seed, GetCount(c, "seed", 0));
  CT_ASSIGN(workers, GetCount(c, "workers", 1));

  TesterParams params;
  CT_ASSIGN(params, ComputeParams(inst.graph, setup.k, setup.phi_in,
                                  setup.phi_out, setup.beta, setup.profile,
                                  setup.overrides));
  const std::string echo = TesterEcho(params);
  absl::StatusOr<std::unique_ptr<PartitionTester>> tester =
      PartitionTester::Create(inst.graph, params, setup.mode, setup.options);
  std::vector<ResultRow> rows;
  if (absl::IsResourceExhausted(tester.status())) {
    for (uint64_t i = 0; i < trials; ++i) {
      rows.push_back(RefusedRow("test", i, DeriveSeed(seed, {kTagTrial, i}),
                                inst.truth, echo));
    }
    FillAdvantage(rows);
    return rows;
  }
  if (!tester.ok()) return tester.status();

  std::vector<TrialJob> jobs;
  for (uint64_t i = 0; i < trials; ++i) {
    jobs.push_back({tester->get(), static_cast<int64_t>(i),
                    DeriveSeed(seed, {kTagTrial, i}), inst.truth, echo});
  }
  CT_ASSIGN(rows, RunJobs("test", jobs, setup.repetitions, workers));
  FillAdvantage(rows);
  return rows;
}

// Fixed YES/NO pair; the tester's phi_out varies. Trial seeds repeat across
// phi_out values so that rows differ only through the threshold.
absl::StatusOr<std::vector<ResultRow>> RunSweepTask(const ExperimentConfig& c) {
  int64_t k, cluster_size, d, inst_seed;
  double inst_phi_out;
  CT_ASSIGN(k, c.GetInt("instance.k", 1));
  CT_ASSIGN(cluster_size, c.GetInt("instance.cluster_size", 200));
  CT_ASSIGN(d, c.GetInt("instance.d", 12));
  CT_ASSIGN(inst_seed, c.GetInt("instance.seed", 1));
  CT_ASSIGN(inst_phi_out, c.GetDouble("instance.phi_out", 0.0));
  if (k < 1 || cluster_size < 1 || d < 1) {
    return absl::InvalidArgumentError("instance.k, cluster_size, d must be >= 1");
  }
  std::vector<double> sweep;
  CT_ASSIGN(sweep, c.GetDoubleList("sweep.phi_out"));
  if (sweep.empty()) return absl::InvalidArgumentError("sweep.phi_out is empty");
  uint64_t trials, seed, workers;
  CT_ASSIGN(trials, GetCount(c, "trials", 1));
  CT_ASSIGN(seed, GetCount(c, "seed", 0));
  CT_ASSIGN(workers, GetCount(c, "workers", 1));

  PlantedInstance yes, no;
  CT_ASSIGN(yes, GenerateClusterable(k, cluster_size, d, inst_seed));
  // The NO instance splits the same vertex count into k+1 clusters.
  const int64_t no_cluster_size = std::max<int64_t>(1, cluster_size * k / (k + 1));
  CT_ASSIGN(no, GenerateUnclusterable(k, no_cluster_size, d, inst_phi_out,
                                      inst_seed + 1));
  TesterSetup setup;
  CT_ASSIGN(setup, ReadTesterSetup(c, yes.certified_phi_in));

  std::vector<std::unique_ptr<PartitionTester>> testers;
  std::vector<TrialJob> jobs;
  std::vector<ResultRow> refused;
  const Graph* graphs[2] = {&yes.graph, &no.graph};
  const char* truths[2] = {"accept", "reject"};
  for (double phi_out : sweep) {
    for (int which = 0; which < 2; ++which) {
      TesterParams params;
      CT_ASSIGN(params, ComputeParams(*graphs[which], k, setup.phi_in, phi_out,
                                      setup.beta, setup.profile,
                                      setup.overrides));
      const std::string echo =
          absl::StrCat(TesterEcho(params), ";instance=", which ? "no" : "yes");
      auto tester =
          PartitionTester::Create(*graphs[which], params, setup.mode, setup.options);
      if (absl::IsResourceExhausted(tester.status())) {
        for (uint64_t i = 0; i < trials; ++i) {
          refused.push_back(RefusedRow(
              "sweep", i, DeriveSeed(seed, {kTagTrial, uint64_t(which), i}),
              truths[which], echo));
        }
        continue;
      }
      if (!tester.ok()) return tester.status();
      for (uint64_t i = 0; i < trials; ++i) {
        jobs.push_back({tester->get(), static_cast<int64_t>(i),
                        DeriveSeed(seed, {kTagTrial, uint64_t(which), i}),
                        truths[which], echo});
      }
      testers.push_back(*std::move(tester));
    }
  }
  std::vector<ResultRow> rows;
  CT_ASSIGN(rows, RunJobs("sweep", jobs, setup.repetitions, workers));
  rows.insert(rows.end(), refused.begin(), refused.end());
  FillAdvantage(rows);
  return rows;
}

absl::StatusOr<std::vector<ResultRow>> RunNoisyParitiesTask(
    const ExperimentConfig& c) {
  uint64_t n, d, trials, seed, workers;
  CT_ASSIGN(n, GetCount(c, "np.n", 10000));
  CT_ASSIGN(d, GetCount(c, "np.d", 3));
  CT_ASSIGN(trials, GetCount(c, "trials", 1));
  CT_ASSIGN(seed, GetCount(c, "seed", 0));
  CT_ASSIGN(workers, GetCount(c, "workers", 1));
  double eps;
  CT_ASSIGN(eps, c.GetDouble("np.eps", 0.05));
  bool closure;
  CT_ASSIGN(closure, c.GetBool("np.closure", false));
  CycleSumConfig player;
  uint64_t v;
  CT_ASSIGN(v, GetCount(c, "np.num_seeds", player.num_seeds));
  player.num_seeds = v;
  CT_ASSIGN(v, GetCount(c, "np.walks_per_seed", player.walks_per_seed));
  player.walks_per_seed = v;
  CT_ASSIGN(v, GetCount(c, "np.walk_len", player.walk_len));
  player.walk_len = v;
  CT_ASSIGN(player.max_queries, GetCount(c, "np.max_queries", 0));
  // Query budget T = n^{1/2 + exponent}; ignored when np.max_queries is set.
  if (c.Has("np.query_exponent") && !c.Has("np.max_queries")) {
    double exponent;
    CT_ASSIGN(exponent, c.GetDouble("np.query_exponent", 0.0));
    player.max_queries = static_cast<uint64_t>(
        std::floor(std::pow(static_cast<double>(n), 0.5 + exponent)));
  }
  std::optional<ParityCase> forced;
  const std::string forced_case = c.GetString("np.case", "random");
  if (forced_case == "yes") {
    forced = ParityCase::kYes;
  } else if (forced_case == "no") {
    forced = ParityCase::kNo;
  } else if (forced_case != "random") {
    return absl::InvalidArgumentError("np.case must be yes, no or random");
  }
  const std::string echo =
      absl::StrCat("n=", n, ";d=", d, ";eps=", FormatNumber(eps),
                   ";closure=", closure ? 1 : 0, ";seeds=", player.num_seeds,
                   ";walks=", player.walks_per_seed, ";len=", player.walk_len,
                   ";max_queries=", player.max_queries);

  std::vector<absl::StatusOr<ResultRow>> slots(trials,
                                               absl::UnknownError("not run"));
  ParallelFor(trials, workers, [&](size_t i) {
    const auto start = std::chrono::steady_clock::now();
    SessionOptions opt;
    opt.n = n;
    opt.d = d;
    opt.eps = eps;
    opt.parity_case = forced;
    opt.seed = DeriveSeed(seed, {kTagTrial, i});
    opt.closure = closure;
    absl::StatusOr<InteractionSession> session = InteractionSession::Open(opt);
    if (!session.ok()) {
      slots[i] = session.status();
      return;
    }
    CycleSumConfig cfg = player;
    cfg.player_seed = DeriveSeed(seed, {kTagPlayer, i});
    absl::StatusOr<CycleSumResult> r = RunCycleSumDistinguisher(*session, cfg);
    if (!r.ok()) {
      slots[i] = r.status();
      return;
    }
    ResultRow row;
    row.task = "noisy-parities";
    row.trial = static_cast<int64_t>(i);
    row.seed = opt.seed;
    row.verdict = ParityCaseName(r->guess);
    row.truth = ParityCaseName(session->hidden_case());
    row.statistic = Canonical(r->zero_fraction);
    row.threshold = Canonical(r->threshold);
    row.total_queries = r->queries;
    row.cycles_found = static_cast<int64_t>(r->cycles.size());
    row.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    row.params = echo;
    slots[i] = std::move(row);
  });
  std::vector<ResultRow> rows;
  for (auto& s : slots) {
    if (!s.ok()) return s.status();
    rows.push_back(*std::move(s));
  }
  FillAdvantage(rows);
  return rows;
}

}  // namespace

absl::StatusOr<ExperimentConfig> ExperimentConfig::Parse(absl::string_view text) {
  ExperimentConfig c;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": expected key = value"));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": empty key"));
    }
    if (c.values_.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": duplicate key ", key));
    }
    c.values_.emplace(std::move(key), std::move(value));
  }
  return c;
}

absl::StatusOr<ExperimentConfig> ExperimentConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

std::string ExperimentConfig::Format() const {
  std::string out;
  for (const auto& [k, v] : values_) absl::StrAppend(&out, k, " = ", v, "\n");
  return out;
}

std::string ExperimentConfig::GetString(absl::string_view key,
                                        absl::string_view fallback) const {
  auto it = values_.find(std::string(key));
  return it == values_.end() ? std::string(fallback) : it->second;
}

absl::StatusOr<double> ExperimentConfig::GetDouble(absl::string_view key,
                                                   double fallback) const {
  auto it = values_.find(std::string(key));
  if (it == values_.end()) return fallback;
  double v;
  if (!absl::SimpleAtod(it->second, &v)) {
    return absl::InvalidArgumentError(absl::StrCat(key, ": not a number"));
  }
  return v;
}

absl::StatusOr<int64_t> ExperimentConfig::GetInt(absl::string_view key,
                                                 int64_t fallback) const {
  auto it = values_.find(std::string(key));
  if (it == values_.end()) return fallback;
  int64_t v;
  if (!absl::SimpleAtoi(it->second, &v)) {
    return absl::InvalidArgumentError(absl::StrCat(key, ": not an integer"));
  }
  return v;
}

absl::StatusOr<bool> ExperimentConfig::GetBool(absl::string_view key,
                                               bool fallback) const {
  auto it = values_.find(std::string(key));
  if (it == values_.end()) return fallback;
  bool v;
  if (!absl::SimpleAtob(it->second, &v)) {
    return absl::InvalidArgumentError(absl::StrCat(key, ": not a boolean"));
  }
  return v;
}

absl::StatusOr<std::vector<double>> ExperimentConfig::GetDoubleList(
    absl::string_view key) const {
  std::vector<double> out;
  auto it = values_.find(std::string(key));
  if (it == values_.end()) return out;
  for (absl::string_view part :
       absl::StrSplit(it->second, ',', absl::SkipWhitespace())) {
    double v;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(part), &v)) {
      return absl::InvalidArgumentError(absl::StrCat(key, ": bad list entry"));
    }
    out.push_back(v);
  }
  return out;
}

std::string FormatNumber(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string EmitCsv(const std::vector<ResultRow>& rows, bool include_timing) {
  std::string out =
      "task,trial,seed,verdict,truth,statistic,threshold,vertex_queries,"
      "degree_queries,neighbor_queries,total_queries,cycles_found,advantage,";
  if (include_timing) out += "wall_time_ms,";
  out += "params\r\n";
  for (const ResultRow& r : rows) {
    absl::StrAppend(&out, CsvField(r.task), ",", r.trial, ",", r.seed, ",",
                    CsvField(r.verdict), ",", CsvField(r.truth), ",",
                    FormatNumber(r.statistic), ",", FormatNumber(r.threshold),
                    ",", r.vertex_queries, ",", r.degree_queries, ",",
                    r.neighbor_queries, ",", r.total_queries, ",",
                    r.cycles_found, ",", FormatNumber(r.advantage), ",");
    if (include_timing) absl::StrAppend(&out, FormatNumber(r.wall_time_ms), ",");
    absl::StrAppend(&out, CsvField(r.params), "\r\n");
  }
  return out;
}

namespace {

json NumberJson(double x) {
  if (!std::isfinite(x)) return FormatNumber(x);
  return Canonical(x);
}

absl::StatusOr<double> NumberFromJson(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  return absl::InvalidArgumentError("expected a number");
}

}  // namespace

std::string EmitJson(const std::vector<ResultRow>& rows, bool include_timing) {
  json arr = json::array();
  for (const ResultRow& r : rows) {
    json o = {{"task", r.task},
              {"trial", r.trial},
              {"seed", r.seed},
              {"verdict", r.verdict},
              {"truth", r.truth},
              {"statistic", NumberJson(r.statistic)},
              {"threshold", NumberJson(r.threshold)},
              {"vertex_queries", r.vertex_queries},
              {"degree_queries", r.degree_queries},
              {"neighbor_queries", r.neighbor_queries},
              {"total_queries", r.total_queries},
              {"cycles_found", r.cycles_found},
              {"advantage", NumberJson(r.advantage)},
              {"params", r.params}};
    if (include_timing) o["wall_time_ms"] = NumberJson(r.wall_time_ms);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

absl::StatusOr<std::vector<ResultRow>> ParseJsonRows(absl::string_view text) {
  json arr = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (arr.is_discarded() || !arr.is_array()) {
    return absl::InvalidArgumentError("expected a JSON array of rows");
  }
  std::vector<ResultRow> rows;
  try {
    for (const json& o : arr) {
      ResultRow r;
      r.task = o.at("task").get<std::string>();
      r.trial = o.at("trial").get<int64_t>();
      r.seed = o.at("seed").get<uint64_t>();
      r.verdict = o.at("verdict").get<std::string>();
      r.truth = o.at("truth").get<std::string>();
      CT_ASSIGN(r.statistic, NumberFromJson(o.at("statistic")));
      CT_ASSIGN(r.threshold, NumberFromJson(o.at("threshold")));
      r.vertex_queries = o.at("vertex_queries").get<uint64_t>();
      r.degree_queries = o.at("degree_queries").get<uint64_t>();
      r.neighbor_queries = o.at("neighbor_queries").get<uint64_t>();
      r.total_queries = o.at("total_queries").get<uint64_t>();
      r.cycles_found = o.at("cycles_found").get<int64_t>();
      CT_ASSIGN(r.advantage, NumberFromJson(o.at("advantage")));
      if (o.contains("wall_time_ms")) {
        CT_ASSIGN(r.wall_time_ms, NumberFromJson(o.at("wall_time_ms")));
      }
      r.params = o.at("params").get<std::string>();
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad row: ", e.what()));
  }
  return rows;
}

void ParallelFor(size_t count, size_t workers,
                 const std::function<void(size_t)>& fn) {
  workers = std::max<size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

absl::StatusOr<BuiltInstance> BuildInstance(const ExperimentConfig& c) {
  const std::string kind = c.GetString("instance.kind", "clusterable");
  BuiltInstance out;
  if (kind == "file") {
    const std::string path = c.GetString("instance.path", "");
    if (path.empty()) return absl::InvalidArgumentError("instance.path is required");
    CT_ASSIGN(out.graph, LoadEdgeList(path));
    return out;
  }
  int64_t k, cluster_size, d, seed;
  double phi_out;
  CT_ASSIGN(k, c.GetInt("instance.k", 1));
  CT_ASSIGN(cluster_size, c.GetInt("instance.cluster_size", 200));
  CT_ASSIGN(d, c.GetInt("instance.d", 12));
  CT_ASSIGN(seed, c.GetInt("instance.seed", 1));
  CT_ASSIGN(phi_out, c.GetDouble("instance.phi_out", 0.0));
  if (k < 1 || cluster_size < 1 || d < 1) {
    return absl::InvalidArgumentError("instance.k, cluster_size, d must be >= 1");
  }
  if (kind == "configuration") {
    CT_ASSIGN(out.graph, GenerateConfigurationModel(cluster_size, d, seed));
    return out;
  }
  PlantedInstance planted;
  if (kind == "clusterable") {
    BridgeOptions bridge;
    bridge.phi_out = phi_out;
    CT_ASSIGN(planted, GenerateClusterable(k, cluster_size, d, seed, bridge));
    out.truth = "accept";
  } else if (kind == "unclusterable") {
    CT_ASSIGN(planted,
              GenerateUnclusterable(k, cluster_size, d, phi_out, seed));
    out.truth = "reject";
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "instance.kind must be clusterable, unclusterable, configuration or "
        "file; got ",
        kind));
  }
  out.certified_phi_in = planted.certified_phi_in;
  out.measured_phi_out = planted.measured_phi_out;
  out.graph = std::move(planted.graph);
  return out;
}

absl::StatusOr<TesterSetup> ReadTesterSetup(const ExperimentConfig& c,
                                            double default_phi_in) {
  TesterSetup s;
  int64_t k;
  CT_ASSIGN(k, c.GetInt("tester.k", c.GetInt("instance.k", 1).value_or(1)));
  s.k = static_cast<int>(k);
  CT_ASSIGN(s.phi_in, c.GetDouble("tester.phi_in", default_phi_in));
  CT_ASSIGN(s.phi_out, c.GetDouble("tester.phi_out", 0.0));
  CT_ASSIGN(s.beta, c.GetDouble("tester.beta", 1.0));
  CT_ASSIGN(s.mode, ParseMode(c.GetString("tester.mode", "oracle")));
  CT_ASSIGN(s.profile, ParseProfile(c.GetString("tester.profile", "calibrated")));
  CT_ASSIGN(s.overrides.s_scale, c.GetDouble("tester.s_scale", s.overrides.s_scale));
  CT_ASSIGN(s.overrides.t_scale, c.GetDouble("tester.t_scale", s.overrides.t_scale));
  CT_ASSIGN(s.overrides.R_scale, c.GetDouble("tester.R_scale", s.overrides.R_scale));
  CT_ASSIGN(s.overrides.delta, c.GetDouble("tester.delta", s.overrides.delta));
  if (c.Has("tester.sample_count")) {
    CT_ASSIGN(s.overrides.sample_count, GetCount(c, "tester.sample_count", 0));
  }
  if (c.Has("tester.walk_length")) {
    CT_ASSIGN(s.overrides.walk_length, c.GetInt("tester.walk_length", 0));
  }
  if (c.Has("tester.walks_per_source")) {
    CT_ASSIGN(s.overrides.walks_per_source,
              GetCount(c, "tester.walks_per_source", 0));
  }
  if (c.Has("tester.norm_walks")) {
    CT_ASSIGN(s.overrides.norm_walks, GetCount(c, "tester.norm_walks", 0));
  }
  CT_ASSIGN(s.options.walk_budget,
            c.GetDouble("tester.walk_budget", s.options.walk_budget));
  int64_t reps;
  CT_ASSIGN(reps, c.GetInt("tester.repetitions", 1));
  if (reps < 1 || reps % 2 == 0) {
    return absl::InvalidArgumentError("tester.repetitions must be odd and >= 1");
  }
  s.repetitions = static_cast<int>(reps);
  return s;
}

absl::Status WriteFile(const std::string& path, absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResultRow>> RunExperiment(const ExperimentConfig& c) {
  const std::string task = c.GetString("task", "test");
  std::vector<ResultRow> rows;
  if (task == "test") {
    CT_ASSIGN(rows, RunTestTask(c));
  } else if (task == "sweep") {
    CT_ASSIGN(rows, RunSweepTask(c));
  } else if (task == "noisy-parities") {
    CT_ASSIGN(rows, RunNoisyParitiesTask(c));
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "task ", task, " produces no trial rows; use the matching subcommand"));
  }
  bool timing;
  CT_ASSIGN(timing, c.GetBool("record_timing", false));
  if (c.Has("output.csv")) {
    absl::Status st = WriteFile(c.GetString("output.csv", ""), EmitCsv(rows, timing));
    if (!st.ok()) return st;
  }
  if (c.Has("output.json")) {
    absl::Status st =
        WriteFile(c.GetString("output.json", ""), EmitJson(rows, timing));
    if (!st.ok()) return st;
  }
  return rows;
}

}  // namespace clustertest

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

// Command-line front end. Exit codes: 0 success, 1 error, 2 budget refusal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "clustertest/experiment.h"
#include "clustertest/generators.h"
#include "clustertest/graph.h"
#include "clustertest/reductions.h"
#include "clustertest/spectral.h"
#include "json.hpp"

namespace clustertest {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefused = 2;

int Fail(const absl::Status& st) {
  std::cerr << "error: " << st << "\n";
  return absl::IsResourceExhausted(st) ? kExitRefused : kExitError;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout when path is empty or "-".
absl::Status Emit(const std::string& path, absl::string_view contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return absl::OkStatus();
  }
  return WriteFile(path, contents);
}

// Instance flags shared by generate, test and sweep.
struct InstanceFlags {
  std::string kind = "clusterable";
  int k = 1;
  size_t cluster_size = 200;
  uint32_t d = 12;
  double phi_out = 0.0;
  uint64_t seed = 1;
  std::string graph;

  void Register(CLI::App* app, bool allow_file) {
    app->add_option("--kind", kind,
                    "clusterable | unclusterable | configuration")
        ->capture_default_str();
    app->add_option("--instance-k", k, "planted clusters (k, or k+1 for NO)")
        ->capture_default_str();
    app->add_option("--cluster-size", cluster_size,
                    "vertices per cluster; n for configuration")
        ->capture_default_str();
    app->add_option("--d", d, "degree")->capture_default_str();
    app->add_option("--instance-phi-out", phi_out,
                    "planted external conductance")
        ->capture_default_str();
    app->add_option("--instance-seed", seed)->capture_default_str();
    if (allow_file) {
      app->add_option("--graph", graph, "edge-list file; overrides --kind");
    }
  }

  void Store(ExperimentConfig& c) const {
    if (!graph.empty()) {
      c.Set("instance.kind", "file");
      c.Set("instance.path", graph);
      return;
    }
    c.Set("instance.kind", kind);
    c.Set("instance.k", absl::StrCat(k));
    c.Set("instance.cluster_size", absl::StrCat(cluster_size));
    c.Set("instance.d", absl::StrCat(d));
    c.Set("instance.phi_out", FormatNumber(phi_out));
    c.Set("instance.seed", absl::StrCat(seed));
  }
};

// Tester flags shared by test and sweep. Unset optional flags stay out of the
// config so library defaults apply.
struct TesterFlags {
  int k = 1;
  std::optional<double> phi_in;
  double phi_out = 0.0;
  double beta = 1.0;
  std::string mode = "oracle";
  std::string profile = "calibrated";
  std::optional<double> s_scale, t_scale, R_scale, delta, walk_budget;
  std::optional<uint64_t> sample_count, walks_per_source, norm_walks;
  std::optional<int64_t> walk_length;
  int repetitions = 1;

  void Register(CLI::App* app, bool with_phi_out) {
    app->add_option("--k", k)->capture_default_str();
    app->add_option("--phi-in", phi_in,
                    "default: certified bound of a generated instance");
    if (with_phi_out) app->add_option("--phi-out", phi_out)->capture_default_str();
    app->add_option("--beta", beta)->capture_default_str();
    app->add_option("--mode", mode)
        ->check(CLI::IsMember({"oracle", "query"}))
        ->capture_default_str();
    app->add_option("--profile", profile)
        ->check(CLI::IsMember({"paper", "calibrated"}))
        ->capture_default_str();
    app->add_option("--s-scale", s_scale);
    app->add_option("--t-scale", t_scale);
    app->add_option("--R-scale", R_scale);
    app->add_option("--delta", delta);
    app->add_option("--walk-budget", walk_budget, "query-mode walk-step cap");
    app->add_option("--sample-count", sample_count);
    app->add_option("--walk-length", walk_length);
    app->add_option("--walks-per-source", walks_per_source);
    app->add_option("--norm-walks", norm_walks);
    app->add_option("--repetitions", repetitions, "odd majority-vote count")
        ->capture_default_str();
  }

  void Store(ExperimentConfig& c) const {
    c.Set("tester.k", absl::StrCat(k));
    if (phi_in) c.Set("tester.phi_in", FormatNumber(*phi_in));
    c.Set("tester.phi_out", FormatNumber(phi_out));
    c.Set("tester.beta", FormatNumber(beta));
    c.Set("tester.mode", mode);
    c.Set("tester.profile", profile);
    if (s_scale) c.Set("tester.s_scale", FormatNumber(*s_scale));
    if (t_scale) c.Set("tester.t_scale", FormatNumber(*t_scale));
    if (R_scale) c.Set("tester.R_scale", FormatNumber(*R_scale));
    if (delta) c.Set("tester.delta", FormatNumber(*delta));
    if (walk_budget) c.Set("tester.walk_budget", FormatNumber(*walk_budget));
    if (sample_count) c.Set("tester.sample_count", absl::StrCat(*sample_count));
    if (walk_length) c.Set("tester.walk_length", absl::StrCat(*walk_length));
    if (walks_per_source) {
      c.Set("tester.walks_per_source", absl::StrCat(*walks_per_source));
    }
    if (norm_walks) c.Set("tester.norm_walks", absl::StrCat(*norm_walks));
    c.Set("tester.repetitions", absl::StrCat(repetitions));
  }
};

struct RunFlags {
  uint64_t trials = 1;
  uint64_t seed = 0;
  size_t workers = 1;
  bool record_timing = false;
  std::string save_config;

  void Register(CLI::App* app, const char* trials_name = "--trials") {
    app->add_option(trials_name, trials)->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
    app->add_option("--workers", workers)->capture_default_str();
    app->add_flag("--record-timing", record_timing, "add wall_time_ms");
    app->add_option("--save-config", save_config,
                    "write the equivalent config file for `run`");
  }

  void Store(ExperimentConfig& c) const {
    c.Set("trials", absl::StrCat(trials));
    c.Set("seed", absl::StrCat(seed));
    c.Set("workers", absl::StrCat(workers));
    c.Set("record_timing", record_timing ? "true" : "false");
  }
};

bool AnyRefused(const std::vector<ResultRow>& rows) {
  for (const ResultRow& r : rows) {
    if (r.verdict == "refused") return true;
  }
  return false;
}

absl::StatusOr<std::vector<ResultRow>> RunConfig(const ExperimentConfig& c,
                                                 const std::string& save) {
  if (!save.empty()) {
    absl::Status st = WriteFile(save, c.Format());
    if (!st.ok()) return st;
  }
  return RunExperiment(c);
}

// ---- generate ----

int Generate(const InstanceFlags& f, const std::string& out, double eps,
             const std::string& parity_case, size_t n) {
  json truth;
  Graph g;
  if (f.kind == "noisy-parities") {
    if (parity_case != "yes" && parity_case != "no") {
      return Fail(absl::InvalidArgumentError("--case must be yes or no"));
    }
    auto inst = GenerateNoisyParities(
        n, f.d, eps, parity_case == "yes" ? ParityCase::kYes : ParityCase::kNo,
        f.seed);
    if (!inst.ok()) return Fail(inst.status());
    truth = {{"kind", "noisy-parities"}, {"n", n},        {"d", f.d},
             {"eps", eps},               {"case", parity_case},
             {"x", inst->x},             {"z", inst->z},  {"y", inst->y}};
    g = std::move(inst->graph);
  } else if (f.kind == "configuration") {
    auto cm = GenerateConfigurationModel(f.cluster_size, f.d, f.seed);
    if (!cm.ok()) return Fail(cm.status());
    truth = {{"kind", "configuration"}, {"n", f.cluster_size}, {"d", f.d}};
    g = *std::move(cm);
  } else {
    absl::StatusOr<PlantedInstance> p;
    if (f.kind == "clusterable") {
      BridgeOptions bridge;
      bridge.phi_out = f.phi_out;
      p = GenerateClusterable(f.k, f.cluster_size, f.d, f.seed, bridge);
    } else if (f.kind == "unclusterable") {
      p = GenerateUnclusterable(f.k, f.cluster_size, f.d, f.phi_out, f.seed);
    } else {
      return Fail(absl::InvalidArgumentError(absl::StrCat("unknown kind ", f.kind)));
    }
    if (!p.ok()) return Fail(p.status());
    json certs = json::array();
    for (const ClusterCertificate& cert : p->certificates) {
      certs.push_back(
          {{"method", cert.method == ClusterCertificate::Method::kExact ? "exact"
                                                                        : "cheeger"},
           {"internal_lower_bound", cert.internal_lower_bound},
           {"external_conductance", cert.external_conductance},
           {"volume", cert.volume}});
    }
    truth = {{"kind", f.kind},
             {"num_clusters", p->num_clusters},
             {"cluster_of", p->cluster_of},
             {"certificates", certs},
             {"certified_phi_in", p->certified_phi_in},
             {"measured_phi_out", p->measured_phi_out},
             {"beta", p->beta},
             {"cross_swaps_per_pair", p->cross_swaps_per_pair}};
    g = std::move(p->graph);
  }
  truth["seed"] = f.seed;
  absl::Status st = Emit(out.empty() ? "" : out + ".edges", FormatEdgeList(g));
  if (!st.ok()) return Fail(st);
  if (!out.empty()) {
    st = WriteFile(out + ".json", truth.dump(2) + "\n");
    if (!st.ok()) return Fail(st);
  }
  return kExitOk;
}

// ---- reduce ----

int Reduce(const std::string& instance, const std::string& to,
           const std::string& out) {
  auto edges_text = ReadFile(instance + ".edges");
  if (!edges_text.ok()) return Fail(edges_text.status());
  auto sidecar = ReadFile(instance + ".json");
  if (!sidecar.ok()) return Fail(sidecar.status());
  auto g = ParseEdgeList(*edges_text);
  if (!g.ok()) return Fail(g.status());
  json truth = json::parse(*sidecar, nullptr, false);
  if (truth.is_discarded() || !truth.contains("y")) {
    return Fail(absl::InvalidArgumentError(
        "sidecar must be a noisy-parities instance with a y array"));
  }
  NoisyParitiesInstance inst;
  inst.y = truth["y"].get<std::vector<uint8_t>>();
  if (inst.y.size() != g->num_edges()) {
    return Fail(absl::InvalidArgumentError("y length differs from edge count"));
  }
  inst.eps = truth.value("eps", 0.0);
  inst.d = truth.value("d", 0u);
  inst.graph = *std::move(g);

  json provenance;
  Graph result;
  if (to == "partition") {
    ReducedGraph r = ReduceToPartitionTesting(inst);
    json rows = json::array();
    for (const EdgeProvenance& p : r.provenance) {
      rows.push_back({{"source_edge", p.source_edge}, {"label", p.label}});
    }
    provenance = {{"to", "partition"},
                  {"vertex_encoding", "2v+b"},
                  {"edges", rows}};
    result = std::move(r.graph);
  } else {
    result = ReduceToMaxCut(inst);
    json kept = json::array();
    for (size_t e = 0; e < inst.y.size(); ++e) {
      if (inst.y[e] == 1) kept.push_back(e);
    }
    provenance = {{"to", "maxcut"}, {"source_edges", kept}};
  }
  absl::Status st = Emit(out.empty() ? "" : out + ".edges", FormatEdgeList(result));
  if (!st.ok()) return Fail(st);
  if (!out.empty()) {
    st = WriteFile(out + ".json", provenance.dump(2) + "\n");
    if (!st.ok()) return Fail(st);
  }
  return kExitOk;
}

// ---- spectrum ----

int Spectrum(const std::string& path, size_t count) {
  auto g = LoadEdgeList(path);
  if (!g.ok()) return Fail(g.status());
  auto spec = LaplacianSpectrum(*g, count);
  if (!spec.ok()) return Fail(spec.status());
  for (double x : *spec) std::cout << FormatNumber(x) << "\n";
  return kExitOk;
}

// ---- test / sweep / noisy-parities / run ----

int FinishRows(const absl::StatusOr<std::vector<ResultRow>>& rows,
               const std::string& json_path, const std::string& csv_path,
               bool timing) {
  if (!rows.ok()) return Fail(rows.status());
  absl::Status st = Emit(json_path, EmitJson(*rows, timing));
  if (st.ok() && !csv_path.empty()) st = WriteFile(csv_path, EmitCsv(*rows, timing));
  if (!st.ok()) return Fail(st);
  if (AnyRefused(*rows)) {
    std::cerr << "refused: walk budget exceeded\n";
    return kExitRefused;
  }
  return kExitOk;
}

std::string NoisyParitiesCsv(const std::vector<ResultRow>& rows) {
  std::string out = "session,case,guess,queries,cycles_found,advantage\r\n";
  for (const ResultRow& r : rows) {
    absl::StrAppend(&out, r.trial, ",", r.truth, ",", r.verdict, ",",
                    r.total_queries, ",", r.cycles_found, ",",
                    FormatNumber(r.advantage), "\r\n");
  }
  return out;
}

// Rejection rate per (phi_out, instance) in input order.
std::string SweepSummary(const std::vector<ResultRow>& rows) {
  std::vector<std::string> keys;
  std::map<std::string, std::pair<int, int>> counts;
  for (const ResultRow& r : rows) {
    if (!counts.contains(r.params)) keys.push_back(r.params);
    auto& [rejects, total] = counts[r.params];
    rejects += r.verdict == "reject";
    total += 1;
  }
  std::string out = "params,trials,rejection_rate\r\n";
  for (const std::string& k : keys) {
    const auto [rejects, total] = counts[k];
    absl::StrAppend(&out, "\"", k, "\",", total, ",",
                    FormatNumber(static_cast<double>(rejects) / total), "\r\n");
  }
  return out;
}

}  // namespace
}  // namespace clustertest

int main(int argc, char** argv) {
  using namespace clustertest;
  CLI::App app{"Cluster-structure property testing toolkit"};
  app.require_subcommand(1);

  // generate
  InstanceFlags gen;
  std::string gen_out, gen_case = "no";
  double gen_eps = 0.05;
  size_t gen_n = 1000;
  CLI::App* generate = app.add_subcommand("generate", "write an instance");
  gen.Register(generate, false);
  generate->add_option("--eps", gen_eps, "noisy-parities noise")
      ->capture_default_str();
  generate->add_option("--case", gen_case, "noisy-parities case yes|no")
      ->capture_default_str();
  generate->add_option("--n", gen_n, "noisy-parities vertex count")
      ->capture_default_str();
  generate->add_option("--out", gen_out,
                       "prefix for PREFIX.edges and PREFIX.json; stdout if empty");
  generate->add_option("--seed", gen.seed, "alias of --instance-seed");

  // test
  InstanceFlags test_inst;
  TesterFlags test_tester;
  RunFlags test_run;
  std::string test_json, test_csv;
  CLI::App* test = app.add_subcommand("test", "partition test on one instance");
  test_inst.Register(test, true);
  test_tester.Register(test, true);
  test_run.Register(test);
  test->add_option("--json", test_json, "verdict array; stdout if empty");
  test->add_option("--csv", test_csv, "CSV summary");

  // sweep
  InstanceFlags sweep_inst;
  TesterFlags sweep_tester;
  RunFlags sweep_run;
  std::vector<double> sweep_values = {0.001, 0.005, 0.01, 0.015, 0.02};
  std::string sweep_json, sweep_csv;
  CLI::App* sweep =
      app.add_subcommand("sweep", "tester phi_out sweep over a YES/NO pair");
  sweep_inst.Register(sweep, false);
  sweep_tester.Register(sweep, false);
  sweep_run.Register(sweep);
  sweep->add_option("--phi-out-values", sweep_values)->delimiter(',');
  sweep->add_option("--json", sweep_json, "row array");
  sweep->add_option("--csv", sweep_csv, "per-trial CSV");

  // noisy-parities
  uint64_t np_n = 10000, np_d = 3;
  double np_eps = 0.05;
  std::string np_strategy = "cycle-sum", np_case = "random", np_csv;
  bool np_closure = false;
  std::optional<uint64_t> np_max_queries, np_num_seeds, np_walks, np_len;
  std::optional<double> np_exponent;
  RunFlags np_run;
  CLI::App* np = app.add_subcommand("noisy-parities", "lower-bound game runs");
  np->add_option("--n", np_n)->capture_default_str();
  np->add_option("--d", np_d)->capture_default_str();
  np->add_option("--eps", np_eps)->capture_default_str();
  np->add_option("--strategy", np_strategy)
      ->check(CLI::IsMember({"cycle-sum"}))
      ->capture_default_str();
  np->add_option("--case", np_case, "yes | no | random")->capture_default_str();
  np->add_flag("--closure", np_closure, "ball generation and Err tracking");
  np->add_option("--max-queries", np_max_queries);
  np->add_option("--query-exponent", np_exponent,
                 "budget n^(1/2 + x) when --max-queries is unset");
  np->add_option("--num-seeds", np_num_seeds);
  np->add_option("--walks-per-seed", np_walks);
  np->add_option("--walk-len", np_len);
  np->add_option("--csv", np_csv, "stdout if empty");
  np_run.Register(np, "--sessions");

  // reduce
  std::string red_instance, red_to = "partition", red_out;
  CLI::App* reduce = app.add_subcommand("reduce", "lift a noisy-parities instance");
  reduce->add_option("--instance", red_instance, "PREFIX of a generated instance")
      ->required();
  reduce->add_option("--to", red_to)
      ->check(CLI::IsMember({"partition", "maxcut"}))
      ->capture_default_str();
  reduce->add_option("--out", red_out, "output PREFIX; stdout if empty");

  // spectrum
  std::string spec_graph;
  size_t spec_count = 0;
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "normalized Laplacian eigenvalues");
  spectrum->add_option("--graph", spec_graph)->required();
  spectrum->add_option("--count", spec_count, "smallest count; 0 for all")
      ->capture_default_str();

  // run
  std::string run_config, run_json, run_csv;
  CLI::App* run = app.add_subcommand("run", "execute a config file");
  run->add_option("--config", run_config)->required();
  run->add_option("--json", run_json, "overrides output.json");
  run->add_option("--csv", run_csv, "overrides output.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors collapse to 1.
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (generate->parsed()) {
    return Generate(gen, gen_out, gen_eps, gen_case, gen_n);
  }
  if (reduce->parsed()) return Reduce(red_instance, red_to, red_out);
  if (spectrum->parsed()) return Spectrum(spec_graph, spec_count);

  if (test->parsed()) {
    ExperimentConfig c;
    c.Set("task", "test");
    test_inst.Store(c);
    test_tester.Store(c);
    test_run.Store(c);
    return FinishRows(RunConfig(c, test_run.save_config), test_json, test_csv,
                      test_run.record_timing);
  }
  if (sweep->parsed()) {
    ExperimentConfig c;
    c.Set("task", "sweep");
    sweep_inst.Store(c);
    sweep_tester.Store(c);
    sweep_run.Store(c);
    std::vector<std::string> parts;
    for (double v : sweep_values) parts.push_back(FormatNumber(v));
    c.Set("sweep.phi_out", absl::StrJoin(parts, ","));
    auto rows = RunConfig(c, sweep_run.save_config);
    if (rows.ok()) std::cout << SweepSummary(*rows);
    if (!rows.ok()) return Fail(rows.status());
    absl::Status st;
    if (!sweep_json.empty()) st = WriteFile(sweep_json, EmitJson(*rows, sweep_run.record_timing));
    if (st.ok() && !sweep_csv.empty()) {
      st = WriteFile(sweep_csv, EmitCsv(*rows, sweep_run.record_timing));
    }
    if (!st.ok()) return Fail(st);
    return AnyRefused(*rows) ? kExitRefused : kExitOk;
  }
  if (np->parsed()) {
    ExperimentConfig c;
    c.Set("task", "noisy-parities");
    c.Set("np.n", absl::StrCat(np_n));
    c.Set("np.d", absl::StrCat(np_d));
    c.Set("np.eps", FormatNumber(np_eps));
    c.Set("np.case", np_case);
    c.Set("np.closure", np_closure ? "true" : "false");
    if (np_max_queries) c.Set("np.max_queries", absl::StrCat(*np_max_queries));
    if (np_exponent) c.Set("np.query_exponent", FormatNumber(*np_exponent));
    if (np_num_seeds) c.Set("np.num_seeds", absl::StrCat(*np_num_seeds));
    if (np_walks) c.Set("np.walks_per_seed", absl::StrCat(*np_walks));
    if (np_len) c.Set("np.walk_len", absl::StrCat(*np_len));
    np_run.Store(c);
    auto rows = RunConfig(c, np_run.save_config);
    if (!rows.ok()) return Fail(rows.status());
    absl::Status st = Emit(np_csv, NoisyParitiesCsv(*rows));
    return st.ok() ? kExitOk : Fail(st);
  }
  if (run->parsed()) {
    auto c = ExperimentConfig::Load(run_config);
    if (!c.ok()) return Fail(c.status());
    if (!run_json.empty()) c->Set("output.json", run_json);
    if (!run_csv.empty()) c->Set("output.csv", run_csv);
    auto rows = RunExperiment(*c);
    if (!rows.ok()) return Fail(rows.status());
    if (!c->Has("output.json") && !c->Has("output.csv")) {
      std::cout << EmitCsv(*rows, c->GetBool("record_timing", false).value_or(false));
    }
    return AnyRefused(*rows) ? kExitRefused : kExitOk;
  }
  return kExitError;
}

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

#include "clustertest/tester.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "clustertest/generators.h"
#include "clustertest/random.h"

namespace clustertest {
namespace {

constexpr double kMaxCount = 1.8e19;

uint64_t ToCount(double x) {
  if (!(x < kMaxCount)) return std::numeric_limits<uint64_t>::max();
  return static_cast<uint64_t>(std::ceil(x));
}

}  // namespace

const char* ProfileName(Profile p) {
  return p == Profile::kPaper ? "paper" : "calibrated";
}

const char* ModeName(Mode m) { return m == Mode::kOracle ? "oracle" : "query"; }

absl::StatusOr<Profile> ParseProfile(absl::string_view s) {
  if (s == "paper") return Profile::kPaper;
  if (s == "calibrated") return Profile::kCalibrated;
  return absl::InvalidArgumentError(absl::StrCat("unknown profile '", s, "'"));
}

absl::StatusOr<Mode> ParseMode(absl::string_view s) {
  if (s == "oracle") return Mode::kOracle;
  if (s == "query") return Mode::kQuery;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode '", s, "'"));
}

absl::StatusOr<TesterParams> ComputeParams(uint64_t vol, uint32_t min_degree,
                                           int k, double phi_in,
                                           double phi_out, double beta,
                                           Profile profile,
                                           const Overrides& overrides,
                                           double eta) {
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  if (vol < 2) return absl::InvalidArgumentError("volume must be at least 2");
  if (min_degree < 1) {
    return absl::FailedPreconditionError("minimum degree must be at least 1");
  }
  if (!(phi_in > 0.0 && phi_in <= 1.0)) {
    return absl::InvalidArgumentError("phi_in must lie in (0, 1]");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1]");
  }
  if (!(phi_out >= 0.0 && phi_out < 1.0)) {
    return absl::InvalidArgumentError("phi_out must lie in [0, 1)");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    return absl::InvalidArgumentError("eta must lie in (0, 1)");
  }

  TesterParams p;
  p.profile = profile;
  p.k = k;
  p.phi_in = phi_in;
  p.phi_out = phi_out;
  p.beta = beta;
  p.eta = eta;
  p.vol = vol;
  p.gap_condition = phi_in * phi_in > 480.0 * phi_out;
  if (profile == Profile::kPaper && !p.gap_condition) {
    return absl::FailedPreconditionError(absl::StrCat(
        "paper profile needs phi_in^2 > 480 phi_out; got phi_in^2=",
        phi_in * phi_in, ", 480 phi_out=", 480.0 * phi_out));
  }

  const double kp1 = k + 1.0;
  const double v = static_cast<double>(vol);
  const double paper_s = 1600.0 * kp1 * kp1 * std::log(12.0 * kp1) *
                         std::log(v) / (beta * (1.0 - eta));
  const double base = 8.0 * kp1 * std::log(12.0 * kp1) / (beta * (1.0 - eta));

  if (profile == Profile::kPaper) {
    p.s = paper_s;
    p.c = 20.0 / (phi_in * phi_in);
    p.t = p.c * std::log(v);
    p.sigma = 192.0 * p.s * k * (1.0 + eta) / v;
    p.mu_thres = 0.5 * base * std::pow(v, -1.0 - 120.0 * p.c * phi_out);
    p.mu_err = (1.0 / 3.0) * base * std::pow(v, -1.0 - 120.0 * p.c * phi_out);
    p.R = std::max(100.0 * p.s * p.s * std::sqrt(p.sigma) / p.mu_err,
                   200.0 * std::pow(p.s, 4) * std::pow(p.sigma, 1.5) /
                       (p.mu_err * p.mu_err));
    p.r = 192.0 * p.s * std::sqrt(v);
    p.delta = 1.0 / (12.0 * p.s);
  } else {
    if (!(overrides.s_scale > 0 && overrides.t_scale > 0 &&
          overrides.R_scale > 0)) {
      return absl::InvalidArgumentError("scale factors must be positive");
    }
    if (!(overrides.delta > 0.0 && overrides.delta < 1.0)) {
      return absl::InvalidArgumentError("delta must lie in (0, 1)");
    }
    p.s = overrides.s_scale * paper_s;
    p.c = overrides.t_scale * 20.0 / (phi_in * phi_in);
    p.t = p.c * std::log(v);
    p.sigma = 192.0 * p.s * k * (1.0 + eta) / v;
    p.delta = overrides.delta;
    p.r = 16.0 * std::sqrt(v) / p.delta;
  }

  p.sample_count = overrides.sample_count.value_or(ToCount(p.s));
  p.walk_length = overrides.walk_length.value_or(
      static_cast<int64_t>(std::ceil(p.t)));
  const double s_used = static_cast<double>(p.sample_count);
  const double two_t = 2.0 * static_cast<double>(p.walk_length);
  p.yes_bound = s_used * std::pow(1.0 - phi_in * phi_in / 4.0, two_t);
  p.no_bound = base / v * std::pow(std::max(0.0, 1.0 - 30.0 * phi_out), two_t);

  if (profile == Profile::kCalibrated) {
    p.mu_thres = std::sqrt(p.yes_bound * p.no_bound);
    p.mu_err = (2.0 / 3.0) * p.mu_thres;
    p.R = overrides.R_scale / (p.mu_err * min_degree);
  }
  p.walks_per_source = overrides.walks_per_source.value_or(ToCount(p.R));
  p.norm_walks = overrides.norm_walks.value_or(ToCount(p.r));
  return p;
}

absl::StatusOr<TesterParams> ComputeParams(const Graph& g, int k,
                                           double phi_in, double phi_out,
                                           double beta, Profile profile,
                                           const Overrides& overrides,
                                           double eta) {
  return ComputeParams(g.volume(), g.min_degree(), k, phi_in, phi_out, beta,
                       profile, overrides, eta);
}

std::vector<Vertex> SampleSources(const DegreeSampler& sampler, uint64_t s,
                                  uint64_t seed, QueryLedger& ledger) {
  Rng rng(seed, {kTagSampler});
  std::vector<Vertex> out(s);
  for (Vertex& v : out) v = sampler.Sample(rng, ledger);
  return out;
}

absl::StatusOr<double> OracleStatistic(const WalkKernel& kernel,
                                       std::span<const Vertex> sources, int k,
                                       EigenBackend backend) {
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  if (sources.size() <= static_cast<size_t>(k)) return 0.0;
  std::vector<Vertex> sorted(sources.begin(), sources.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Vertex> distinct;
  std::vector<double> weight;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    distinct.push_back(sorted[i]);
    weight.push_back(std::sqrt(static_cast<double>(j - i)));
    i = j;
  }
  if (distinct.size() < static_cast<size_t>(k) + 1) return 0.0;
  Eigen::Map<const Eigen::VectorXd> w(weight.data(), weight.size());
  Eigen::MatrixXd gram = w.asDiagonal() * kernel.GramOf(distinct) * w.asDiagonal();
  absl::StatusOr<double> mu = KthLargestEigenvalue(gram, k + 1, backend);
  if (!mu.ok()) return mu.status();
  // The Gram matrix is PSD; negative values are rounding.
  return std::max(0.0, *mu);
}

absl::StatusOr<double> QueryStatistic(QueryAccess& g,
                                      std::span<const Vertex> sources,
                                      const QueryStatisticArgs& args,
                                      uint64_t seed) {
  if (args.k < 1) return absl::InvalidArgumentError("k must be at least 1");
  for (size_t j = 0; j < sources.size(); ++j) {
    absl::StatusOr<NormTestResult> norm =
        L2NormTest(g, sources[j], args.sigma, args.r, args.t, args.delta, seed, j);
    if (!norm.ok()) return norm.status();
    if (!norm->accept) return kRejectSentinel;
  }
  if (sources.size() <= static_cast<size_t>(args.k)) return 0.0;
  Eigen::MatrixXd gram =
      EstimateGram(g, sources, args.t, args.R, seed, args.diagonal);
  return KthLargestEigenvalue(gram, args.k + 1, args.backend);
}

absl::StatusOr<std::unique_ptr<PartitionTester>> PartitionTester::Create(
    const Graph& g, const TesterParams& params, Mode mode,
    const TesterOptions& options) {
  if (g.volume() != params.vol) {
    return absl::InvalidArgumentError("params were computed for another graph");
  }
  if (mode == Mode::kQuery) {
    const double steps = static_cast<double>(params.sample_count) *
                         (static_cast<double>(params.walks_per_source) +
                          2.0 * static_cast<double>(params.norm_walks)) *
                         static_cast<double>(params.walk_length);
    if (steps > options.walk_budget) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "query mode needs ", steps, " walk steps (s=", params.sample_count,
          ", R=", params.R, ", r=", params.r, ", t=", params.walk_length,
          "), over the budget of ", options.walk_budget));
    }
  }
  std::unique_ptr<PartitionTester> tester(
      new PartitionTester(g, params, mode, options));
  absl::StatusOr<DegreeSampler> sampler =
      DegreeSampler::Create(g, options.sampler);
  if (!sampler.ok()) return sampler.status();
  tester->sampler_ = std::make_unique<DegreeSampler>(std::move(*sampler));
  if (mode == Mode::kOracle) {
    absl::StatusOr<WalkKernel> kernel = WalkKernel::Create(g, params.walk_length);
    if (!kernel.ok()) return kernel.status();
    tester->kernel_ = std::make_unique<WalkKernel>(std::move(*kernel));
  }
  return tester;
}

absl::StatusOr<TestVerdict> PartitionTester::Run(uint64_t seed) const {
  TestVerdict verdict;
  verdict.seed = seed;
  verdict.mode = mode_;
  verdict.threshold = params_.mu_thres;
  verdict.sample_count = params_.sample_count;
  std::vector<Vertex> sources =
      SampleSources(*sampler_, params_.sample_count, seed, verdict.queries);
  absl::StatusOr<double> stat;
  if (mode_ == Mode::kOracle) {
    stat = OracleStatistic(*kernel_, sources, params_.k, options_.backend);
  } else {
    GraphOracle access(g_);
    QueryStatisticArgs args;
    args.k = params_.k;
    args.t = params_.walk_length;
    args.sigma = params_.sigma;
    args.R = params_.walks_per_source;
    args.r = params_.norm_walks;
    args.delta = params_.delta;
    args.diagonal = options_.diagonal;
    args.backend = options_.backend;
    stat = QueryStatistic(access, sources, args, seed);
    verdict.queries.Merge(access.ledger());
  }
  if (!stat.ok()) return stat.status();
  verdict.statistic = *stat;
  verdict.accept = verdict.statistic <= verdict.threshold;
  return verdict;
}

absl::StatusOr<TestVerdict> PartitionTester::RunMajority(uint64_t seed,
                                                         int repetitions) const {
  if (repetitions < 1 || repetitions % 2 == 0) {
    return absl::InvalidArgumentError("repetitions must be a positive odd number");
  }
  if (repetitions == 1) return Run(seed);
  TestVerdict out;
  out.seed = seed;
  out.mode = mode_;
  out.threshold = params_.mu_thres;
  out.sample_count = params_.sample_count;
  int accepts = 0;
  std::vector<double> stats;
  for (int i = 0; i < repetitions; ++i) {
    absl::StatusOr<TestVerdict> v =
        Run(DeriveSeed(seed, {kTagTrial, static_cast<uint64_t>(i)}));
    if (!v.ok()) return v.status();
    accepts += v->accept;
    stats.push_back(v->statistic);
    out.queries.Merge(v->queries);
  }
  std::nth_element(stats.begin(), stats.begin() + repetitions / 2, stats.end());
  out.statistic = stats[repetitions / 2];
  out.accept = 2 * accepts > repetitions;
  return out;
}

absl::StatusOr<TestVerdict> PartitionTest(const Graph& g, int k, double phi_in,
                                          double phi_out, double beta,
                                          Mode mode, Profile profile,
                                          uint64_t seed,
                                          const Overrides& overrides,
                                          const TesterOptions& options) {
  absl::StatusOr<TesterParams> params =
      ComputeParams(g, k, phi_in, phi_out, beta, profile, overrides);
  if (!params.ok()) return params.status();
  absl::StatusOr<std::unique_ptr<PartitionTester>> tester =
      PartitionTester::Create(g, *params, mode, options);
  if (!tester.ok()) return tester.status();
  return (*tester)->Run(seed);
}

absl::StatusOr<ClusterabilityMapping> MapClusterabilityParams(
    const ClusterabilityArgs& args, Profile profile) {
  if (args.k < 1) return absl::InvalidArgumentError("k must be at least 1");
  if (!(args.eps > 0.0 && args.eps <= 1.0)) {
    return absl::InvalidArgumentError("eps must lie in (0, 1]");
  }
  if (!(args.phi > 0.0 && args.phi <= 1.0)) {
    return absl::InvalidArgumentError("phi must lie in (0, 1]");
  }
  if (!(args.phi_prime >= 0.0)) {
    return absl::InvalidArgumentError("phi' must be non-negative");
  }
  if (args.d < 1) return absl::InvalidArgumentError("d must be positive");
  ClusterabilityMapping m;
  const double eps2 = args.eps * args.eps;
  m.beta = eps2 / 1152.0;
  m.phi_in = args.phi;
  if (args.variant == ClusterabilityVariant::kKK) {
    m.phi_out = args.mapping_c * args.k * args.k * args.phi_prime / eps2;
  } else {
    if (profile == Profile::kPaper) {
      if (args.eps > 0.5) {
        return absl::FailedPreconditionError("(k, 2k) variant needs eps <= 1/2");
      }
      const double alpha = std::min(
          args.c_exp / (150.0 * args.d),
          args.c_exp * args.eps / (1400.0 * std::log(16.0 * args.k / args.eps)));
      if (args.phi_prime > alpha) {
        return absl::FailedPreconditionError(
            absl::StrCat("phi'=", args.phi_prime, " exceeds alpha=", alpha));
      }
    }
    m.phi_out = (4.0 * 1152.0 / eps2) * (700.0 / args.c_exp) * args.phi_prime *
                std::log(32.0 * args.k / args.eps);
  }
  return m;
}

absl::StatusOr<TestVerdict> ClusterabilityTest(const Graph& g,
                                               const ClusterabilityArgs& args,
                                               Mode mode, Profile profile,
                                               uint64_t seed,
                                               const Overrides& overrides,
                                               const TesterOptions& options) {
  absl::StatusOr<ClusterabilityMapping> m = MapClusterabilityParams(args, profile);
  if (!m.ok()) return m.status();
  absl::StatusOr<Graph> padded = AddSelfLoopsToDegree(g, args.d);
  if (!padded.ok()) return padded.status();
  return PartitionTest(*padded, args.k, m->phi_in, m->phi_out, m->beta, mode,
                       profile, seed, overrides, options);
}

}  // namespace clustertest

// Copyright 2026 The Erasure Cost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "erasure/erasure_sim.h"
#include "erasure/errors.h"
#include "erasure/instance_io.h"
#include "erasure/reference_instances.h"
#include "erasure/solver.h"
#include "erasure/weak_independence.h"
#include "json.hpp"

namespace erasure::cli {
namespace {

using json = nlohmann::json;

constexpr char kThreadsEnv[] = "ERASURE_COST_THREADS";

// Shortest round-trip decimal, independent of the C locale.
std::string FormatDouble(double v) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

int ReportError(std::ostream& err, const absl::Status& status) {
  const std::string kind = ErrorKindOf(status);
  absl::string_view message = status.message();
  absl::ConsumePrefix(&message, absl::StrCat(kind, ": "));
  json line = {{"error", kind}, {"message", std::string(message)}};
  err << line.dump() << "\n";
  return kExitValidation;
}

json MatrixJson(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json ConfigJson(const SolverConfig& cfg) {
  return {{"optimality_tol", cfg.optimality_tol},
          {"lp_tol", cfg.lp_tol},
          {"max_iters", cfg.max_iters}};
}

json ResultJson(const SolverResult& r) {
  return {{"min_cost", r.min_cost},
          {"channel", MatrixJson(r.channel.matrix())},
          {"leakage", r.leakage},
          {"status", std::string(SolverStatusName(r.status))},
          {"iterations", r.iterations},
          {"duality_gap", r.duality_gap},
          {"lambda", r.lambda}};
}

int DefaultThreads() {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* cap = std::getenv(kThreadsEnv)) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(cap, cap + std::strlen(cap), value);
    if (ec == std::errc() && value >= 1) threads = std::min(threads, value);
  }
  return threads;
}

struct LoadedInstance {
  InstanceFile file;
  ErasureInstance instance;
};

absl::StatusOr<LoadedInstance> Load(const std::string& path) {
  absl::StatusOr<InstanceFile> file = ReadInstanceFile(path);
  if (!file.ok()) return file.status();
  absl::StatusOr<ErasureInstance> inst = ToInstance(*file);
  if (!inst.ok()) return inst.status();
  return LoadedInstance{*std::move(file), *std::move(inst)};
}

struct EpsGrid {
  double start;
  double stop;
  int points;
};

absl::StatusOr<EpsGrid> ParseEpsGrid(const std::string& text) {
  std::vector<std::string> parts = absl::StrSplit(text, ':');
  if (parts.size() != 3) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("eps grid \"", text, "\" is not A:B:STEPS"));
  }
  absl::StatusOr<double> a = ParseProbability(parts[0]);
  absl::StatusOr<double> b = ParseProbability(parts[1]);
  int steps = 0;
  auto [ptr, ec] = std::from_chars(parts[2].data(),
                                   parts[2].data() + parts[2].size(), steps);
  if (!a.ok() || !b.ok() || ec != std::errc() ||
      ptr != parts[2].data() + parts[2].size() || steps < 1 || *a < 0.0 ||
      *b < *a) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("eps grid \"", text,
                                  "\" needs 0 <= A <= B and STEPS >= 1"));
  }
  return EpsGrid{*a, *b, steps};
}

int RunSolve(const std::string& path, double eps, int n,
             const SolverConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::StatusOr<LoadedInstance> loaded = Load(path);
  if (!loaded.ok()) return ReportError(err, loaded.status());
  if (n < 1 || !(eps >= 0.0)) {
    return ReportError(err, MakeError(ErrorKind::kDomainError,
                                      "need --eps >= 0 and --n >= 1"));
  }
  const double per_letter = eps / n;
  absl::StatusOr<SolverResult> r =
      SolveMinCost(loaded->instance, per_letter, cfg);
  if (!r.ok()) return ReportError(err, r.status());
  json doc = ResultJson(*r);
  doc["command"] = "solve";
  doc["version"] = kVersion;
  doc["instance"] = path;
  doc["eps"] = eps;
  doc["n"] = n;
  doc["eps_per_letter"] = per_letter;
  doc["config"] = ConfigJson(cfg);
  out << doc.dump(2) << "\n";
  return r->status == SolverStatus::kIterationCap ? kExitIterationCap
                                                  : kExitOk;
}

int RunCheck(const std::string& path, double tol, double eps, std::ostream& out,
             std::ostream& err) {
  absl::StatusOr<LoadedInstance> loaded = Load(path);
  if (!loaded.ok()) return ReportError(err, loaded.status());
  absl::StatusOr<WeakIndependenceReport> report =
      IsWeaklyIndependent(loaded->instance.source(), tol);
  if (!report.ok()) return ReportError(err, report.status());
  absl::StatusOr<RepeatedSymbolVerdict> verdict =
      ClassifyRepeatedSymbol(loaded->instance, eps, tol);
  if (!verdict.ok()) return ReportError(err, verdict.status());
  absl::StatusOr<GammaMin> gamma =
      ComputeGammaMin(loaded->instance.p_x(), loaded->instance.cost());
  if (!gamma.ok()) return ReportError(err, gamma.status());
  json doc = {
      {"command", "check"},
      {"version", kVersion},
      {"instance", path},
      {"weakly_independent", report->weakly_independent},
      {"row_rank", report->row_rank},
      {"row_count", report->row_count},
      {"singular_values", report->singular_values},
      {"tolerance", report->tolerance},
      {"excluded_massless_rows", report->excluded_massless_rows},
      {"eps", eps},
      {"verdict", std::string(RepeatedSymbolVerdictName(*verdict))},
      {"gamma_min", {{"value", gamma->value}, {"symbol", gamma->symbol}}}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string path;
  std::string encoder;
  bool channel_from_solve = false;
  double eps = 0.0;
  int n = 1;
  int trials = 1;
  uint64_t seed = 0;
  int threads = 0;
};

int RunSimulate(const SimulateArgs& args, const SolverConfig& cfg,
                std::ostream& out, std::ostream& err) {
  absl::StatusOr<LoadedInstance> loaded = Load(args.path);
  if (!loaded.ok()) return ReportError(err, loaded.status());
  const ErasureInstance& inst = loaded->instance;

  std::optional<Channel> channel;
  std::optional<SolverResult> solved;
  if (args.channel_from_solve) {
    absl::StatusOr<SolverResult> r = SolveMinCost(inst, args.eps, cfg);
    if (!r.ok()) return ReportError(err, r.status());
    channel = r->channel;
    solved = *std::move(r);
  } else if (loaded->file.channel) {
    absl::StatusOr<Channel> w = Channel::Create(*loaded->file.channel);
    if (!w.ok()) return ReportError(err, w.status());
    channel = *std::move(w);
  }

  absl::StatusOr<Encoder> enc = MakeError(
      ErrorKind::kConfigError,
      absl::StrCat("unknown encoder \"", args.encoder,
                   "\"; use repeated, product or finite:M"));
  if (args.encoder == "repeated") {
    enc = BuildRepeatedEncoder(inst);
  } else if (args.encoder == "product" ||
             args.encoder.rfind("finite:", 0) == 0) {
    if (!channel) {
      return ReportError(
          err, MakeError(ErrorKind::kConfigError,
                         "this encoder needs --channel-from-solve or a "
                         "\"channel\" in the instance file"));
    }
    if (args.encoder == "product") {
      enc = BuildProductEncoder(*channel);
    } else {
      const std::string count = args.encoder.substr(7);
      int m = 0;
      auto [ptr, ec] =
          std::from_chars(count.data(), count.data() + count.size(), m);
      if (ec != std::errc() || ptr != count.data() + count.size() || m < 1) {
        return ReportError(err, MakeError(ErrorKind::kParseError,
                                          "finite:M needs a positive M"));
      }
      enc = BuildFiniteRandomnessEncoder(*channel, m, args.seed);
    }
  }
  if (!enc.ok()) return ReportError(err, enc.status());

  SimulationOptions opts;
  opts.threads = args.threads > 0 ? args.threads : DefaultThreads();
  absl::StatusOr<SimulationReport> report =
      Simulate(inst, *enc, args.n, args.trials, args.seed, opts);
  if (!report.ok()) return ReportError(err, report.status());

  json quantiles = json::object();
  for (const auto& [level, value] : report->cost_quantiles) {
    quantiles[FormatDouble(level)] = value;
  }
  json doc = {
      {"command", "simulate"},
      {"version", kVersion},
      {"instance", args.path},
      {"encoder", args.encoder},
      {"n", report->n},
      {"trials", report->trials},
      {"seed", report->seed},
      {"threads", opts.threads},
      {"avg_cost", report->avg_cost},
      {"cost_std_error", report->cost_std_error},
      {"cost_quantiles", quantiles},
      {"plugin_leakage_per_letter", report->plugin_leakage_per_letter},
      {"leakage_exact", report->leakage_exact},
      {"miller_madow_leakage_per_letter",
       report->miller_madow_leakage_per_letter},
      {"spectrum_histogram",
       {{"lo", report->spectrum_histogram.lo},
        {"bin_width", report->spectrum_histogram.bin_width},
        {"mass", report->spectrum_histogram.mass}}},
      {"spectrum_mean", report->spectrum_mean},
      {"spectrum_quantile", report->spectrum_quantile}};
  if (channel) doc["channel"] = MatrixJson(channel->matrix());
  if (solved) {
    doc["solve"] = ResultJson(*solved);
    doc["solve"]["eps_per_letter"] = args.eps;
    doc["solve"]["config"] = ConfigJson(cfg);
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int RunSweep(const std::string& path, const std::string& grid_text, int n,
             const std::string& out_path, const SolverConfig& cfg,
             std::ostream& out, std::ostream& err) {
  absl::StatusOr<LoadedInstance> loaded = Load(path);
  if (!loaded.ok()) return ReportError(err, loaded.status());
  absl::StatusOr<EpsGrid> grid = ParseEpsGrid(grid_text);
  if (!grid.ok()) return ReportError(err, grid.status());
  if (n < 1) {
    return ReportError(err,
                       MakeError(ErrorKind::kDomainError, "--n must be >= 1"));
  }

  std::string csv = "eps,min_cost,leakage,status\n";
  bool capped = false;
  for (int i = 0; i < grid->points; ++i) {
    const double eps =
        grid->points == 1
            ? grid->start
            : grid->start + (grid->stop - grid->start) * i / (grid->points - 1);
    absl::StatusOr<SolverResult> r = SolveMinCost(loaded->instance, eps / n, cfg);
    if (!r.ok()) return ReportError(err, r.status());
    capped |= r->status == SolverStatus::kIterationCap;
    absl::StrAppend(&csv, FormatDouble(eps), ",", FormatDouble(r->min_cost),
                    ",", FormatDouble(r->leakage), ",",
                    SolverStatusName(r->status), "\n");
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file || !(file << csv)) {
    return ReportError(err, MakeError(ErrorKind::kParseError,
                                      absl::StrCat("cannot write ", out_path)));
  }
  json doc = {{"command", "sweep"},     {"version", kVersion},
              {"instance", path},       {"eps_grid", grid_text},
              {"n", n},                 {"rows", grid->points},
              {"out", out_path},        {"config", ConfigJson(cfg)}};
  out << doc.dump(2) << "\n";
  return capped ? kExitIterationCap : kExitOk;
}

int RunFixture(const std::string& kind, double p, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  InstanceFile file;
  if (kind == "binary") {
    absl::StatusOr<ErasureInstance> inst = BinaryIdentityInstance(p);
    if (!inst.ok()) return ReportError(err, inst.status());
    file.p_xy = inst->source().matrix();
    file.cost = inst->cost().matrix();
  } else if (kind == "weakly-independent") {
    ErasureInstance inst = WeaklyIndependentTernaryInstance();
    file.p_xy = inst.source().matrix();
    file.cost = inst.cost().matrix();
    file.channel = SixthsChannel().matrix();
  } else {
    return ReportError(err, MakeError(ErrorKind::kConfigError,
                                      absl::StrCat("unknown fixture \"", kind,
                                                   "\"")));
  }
  if (absl::Status s = WriteInstanceFile(out_path, file); !s.ok()) {
    return ReportError(err, s);
  }
  json doc = {{"command", "fixture"}, {"version", kVersion},
              {"kind", kind},         {"out", out_path}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Minimum-cost information erasure under leakage constraints",
               "erasure_cost"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SolverConfig cfg;
  std::string instance_path;
  double eps = 0.0;
  int n = 1;

  CLI::App* solve = app.add_subcommand("solve", "Minimum cost at a budget");
  solve->add_option("--instance", instance_path, "Instance JSON")->required();
  solve->add_option("--eps", eps, "Total leakage budget (nats)")->required();
  solve->add_option("--n", n, "Blocklength; budget per letter is eps/n");
  solve->add_option("--tol", cfg.optimality_tol, "Optimality tolerance");
  solve->add_option("--max-iters", cfg.max_iters, "Iterations per subproblem");

  double rank_tol = 1e-9;
  CLI::App* check = app.add_subcommand(
      "check", "Weak independence and the repeated-symbol verdict");
  check->add_option("--instance", instance_path, "Instance JSON")->required();
  check->add_option("--tol", rank_tol, "Relative singular-value threshold");
  check->add_option("--eps", eps, "Leakage budget for the verdict");

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo erasure experiment");
  simulate->add_option("--instance", sim.path, "Instance JSON")->required();
  simulate->add_option("--encoder", sim.encoder, "repeated | product | finite:M")
      ->required();
  simulate->add_flag("--channel-from-solve", sim.channel_from_solve,
                     "Use the solver's optimal channel at --eps");
  simulate->add_option("--eps", sim.eps, "Per-letter budget for the solve");
  simulate->add_option("--n", sim.n, "Blocklength")->required();
  simulate->add_option("--trials", sim.trials, "Number of blocks")->required();
  simulate->add_option("--seed", sim.seed, "Random seed")->required();
  simulate->add_option("--threads", sim.threads,
                       "Worker threads (default: hardware, capped by "
                       "ERASURE_COST_THREADS)");

  std::string grid_text, csv_path;
  CLI::App* sweep = app.add_subcommand("sweep", "Cost curve over a budget grid");
  sweep->add_option("--instance", instance_path, "Instance JSON")->required();
  sweep->add_option("--eps-grid", grid_text,
                    "A:B:STEPS, STEPS evenly spaced points from A to B")
      ->required();
  sweep->add_option("--out", csv_path, "CSV output path")->required();
  sweep->add_option("--n", n, "Blocklength; budget per letter is eps/n");
  sweep->add_option("--tol", cfg.optimality_tol, "Optimality tolerance");

  CLI::App* verify =
      app.add_subcommand("verify-paper", "Check the reference claims");

  std::string fixture_kind, fixture_out;
  double fixture_p = 0.3;
  CLI::App* fixture =
      app.add_subcommand("fixture", "Write a reference instance file");
  fixture->add_option("--kind", fixture_kind, "binary | weakly-independent")
      ->required();
  fixture->add_option("--p", fixture_p, "P_X(1) for the binary fixture");
  fixture->add_option("--out", fixture_out, "Output path")->required();

  std::vector<const char*> argv{"erasure_cost"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    json line = {{"error", "UsageError"}, {"message", e.what()}};
    err << line.dump() << "\n";
    return kExitValidation;
  }

  if (*solve) return RunSolve(instance_path, eps, n, cfg, out, err);
  if (*check) return RunCheck(instance_path, rank_tol, eps, out, err);
  if (*simulate) return RunSimulate(sim, cfg, out, err);
  if (*sweep) return RunSweep(instance_path, grid_text, n, csv_path, cfg, out, err);
  if (*verify) return VerifyClaims(out) == 0 ? kExitOk : kExitValidation;
  if (*fixture) return RunFixture(fixture_kind, fixture_p, fixture_out, out, err);
  return kExitValidation;
}

}  // namespace erasure::cli

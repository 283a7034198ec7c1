// Copyright 2026 The Erasure Bound Authors
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

#include "erasure/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "erasure/bounds.hpp"
#include "erasure/experiments.hpp"
#include "erasure/io.hpp"
#include "erasure/oracle.hpp"

namespace erasure::cli {
namespace {

using nlohmann::ordered_json;

constexpr double kBoundSlack = 1e-9;
constexpr double kSubfidelityRouteTol = 1e-9;
constexpr double kDim3RouteTol = 1e-8;
constexpr double kAttainmentTol = 1e-4;
constexpr int kOracleBudget = 400;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return kExitParse;
    case ErrorCode::kNoConvergence: return kExitNoConvergence;
    case ErrorCode::kInsufficientPoints: return kExitInsufficientData;
    default: return kExitInvariant;
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return read_text_file(path);
}

std::uint64_t resolve_seed(const std::vector<std::uint64_t>& flag) {
  if (!flag.empty()) return flag.front();
  if (const char* env = std::getenv("ERASURE_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorCode::kParse, "ERASURE_SEED is not an unsigned integer");
  }
  return 1;
}

// Coherence through the dimension-specific closed form where one exists.
struct RouteCheck {
  std::string route;
  double value = 0.0;
  double delta = 0.0;
  double tol = 0.0;
};

RouteCheck check_route(const ConditionalBlocks& blocks) {
  const double general = coherence_bound(blocks);
  RouteCheck out{"general", general, 0.0, 0.0};
  if (blocks.rho_b0.dim() == 2) {
    out = {"subfidelity", coherence_bound_subfidelity(blocks), 0.0, kSubfidelityRouteTol};
  } else if (blocks.rho_b0.dim() == 3) {
    out = {"dim3", coherence_bound_dim3(blocks), 0.0, kDim3RouteTol};
  }
  out.delta = std::abs(out.value - general);
  return out;
}

class Verifier {
 public:
  VerifyReport report;

  void expect(bool ok, const std::string& what) {
    ++report.checks_run;
    if (!ok) report.failures.push_back(what);
  }

  void expect_near(double got, double want, double tol, const std::string& what) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, msg.str());
  }

  void route(const ConditionalBlocks& blocks, const std::string& label) {
    const RouteCheck rc = check_route(blocks);
    if (rc.route == "general") return;
    report.max_route_delta = std::max(report.max_route_delta, rc.delta);
    expect(rc.delta <= rc.tol, label + ": " + rc.route + " route differs by " + std::to_string(rc.delta));
  }

  void hierarchy(const TripartitePureState& state, const Pom& pom, const std::string& label) {
    const ConditionalBlocks blocks = conditional_blocks(state);
    const DensityMatrix qubit = partial_trace(state, kSubsystemA);
    const double v = visibility(qubit);
    const double p = predictability(qubit);
    const double vbar = avg_visibility(blocks, pom);
    const double pbar = avg_predictability(blocks, pom);
    const double c_ab = coherence_bound(blocks);
    const double d_ab = distinguishability_bound(blocks);
    const ConditionalBlocks whole = conditional_blocks(state.merged_environment());
    expect(v <= vbar + kBoundSlack && vbar <= c_ab + kBoundSlack, label + ": V <= Vbar <= C_AB");
    expect(p <= pbar + kBoundSlack && pbar <= d_ab + kBoundSlack, label + ": P <= Pbar <= D_AB");
    expect(vbar * vbar + pbar * pbar <= 1.0 + kBoundSlack, label + ": Vbar^2 + Pbar^2 <= 1");
    expect(c_ab <= coherence_bound(whole) + kBoundSlack, label + ": C_AB <= C_full");
    expect(d_ab <= distinguishability_bound(whole) + kBoundSlack, label + ": D_AB <= D_full");
  }

  void attainment(const TripartitePureState& state, SeededStream stream, const std::string& label) {
    const ConditionalBlocks blocks = conditional_blocks(state);
    const double c_ab = coherence_bound(blocks);
    const double d_ab = distinguishability_bound(blocks);
    const OptimizationTrace er = optimize_erasure_projective(state, kOracleBudget, stream);
    const OptimizationTrace wa =
        optimize_which_alternative_projective(state, kOracleBudget, {stream.master_seed, stream.stream_index + 1});
    const double gap = std::max(c_ab - er.best_value, d_ab - wa.best_value);
    report.max_attainment_gap = std::max(report.max_attainment_gap, gap);
    expect(er.best_value <= c_ab + kBoundSlack, label + ": erasure optimizer exceeds C_AB");
    expect(wa.best_value <= d_ab + kBoundSlack, label + ": which-alternative optimizer exceeds D_AB");
    expect(c_ab - er.best_value <= kAttainmentTol, label + ": C_AB not attained");
    expect(d_ab - wa.best_value <= kAttainmentTol, label + ": D_AB not attained");
  }
};

void verify_builtin(Verifier& v, std::uint64_t seed) {
  const double s = 1.0 / std::sqrt(2.0);
  struct Expect {
    std::string name;
    TripartitePureState state;
    double c_ab, d_ab, c_full, d_full;
  };
  ComplexVector plus(2);
  plus << s, s;
  ComplexVector env(4);
  env << 0.6, Complex(0.0, 0.8), 0.0, 0.0;
  // (|0>|e0> + |1>|e1>)/sqrt(2) with <e0|e1> = cos(pi/3) on B, C trivial.
  ComplexVector partial = ComplexVector::Zero(4);
  partial << s, 0.0, s * std::cos(std::numbers::pi / 3), s * std::sin(std::numbers::pi / 3);
  const double overlap = std::cos(std::numbers::pi / 3);

  const std::vector<Expect> corpus{
      {"bell_ab", make_bell_ab(), 1.0, 1.0, 1.0, 1.0},
      {"ghz", make_ghz(), 0.0, 1.0, 1.0, 1.0},
      {"product_plus", make_product(plus, 2, 2, env), 1.0, 0.0, 1.0, 0.0},
      {"bell_ab_in_3x1", make_bell_ab(3, 1), 1.0, 1.0, 1.0, 1.0},
      {"bell_ab_in_2x3", make_bell_ab(2, 3), 1.0, 1.0, 1.0, 1.0},
      {"ghz_in_3x2", make_ghz(3, 2), 0.0, 1.0, 1.0, 1.0},
      // p0 = p1 keeps C at 1; the overlap only limits D.
      {"partial_overlap", TripartitePureState(2, 1, partial), 1.0, std::sqrt(1.0 - overlap * overlap),
       1.0, std::sqrt(1.0 - overlap * overlap)},
  };

  std::uint64_t stream = 0;
  for (const auto& e : corpus) {
    const ConditionalBlocks blocks = conditional_blocks(e.state);
    const BoundReport r = full_bounds(e.state);
    v.expect_near(r.C_AB, e.c_ab, 1e-12, e.name + " C_AB");
    v.expect_near(r.D_AB, e.d_ab, 1e-12, e.name + " D_AB");
    v.expect_near(r.C_full, e.c_full, 1e-12, e.name + " C_full");
    v.expect_near(r.D_full, e.d_full, 1e-12, e.name + " D_full");
    if (blocks.rho_b0.dim() == 2) {
      v.expect_near(distinguishability_bound_piecewise(blocks), r.D_AB, 1e-9, e.name + " piecewise D");
    }
    v.route(blocks, e.name);
    v.hierarchy(e.state, Pom::trivial(e.state.d_b()), e.name);
    if (e.state.d_b() <= 3) v.attainment(e.state, {seed, stream += 2}, e.name);
  }
  // C_full^2 + D_full^2 may exceed one.
  const BoundReport bell = full_bounds(make_bell_ab());
  v.expect(bell.C_full * bell.C_full + bell.D_full * bell.D_full > 1.0,
           "witness: C_full^2 + D_full^2 > 1 for bell_ab");
}

void verify_random(Verifier& v, int n, std::uint64_t seed, int attainment_n) {
  Rng rng(SeededStream{seed, 0});
  for (int i = 0; i < n; ++i) {
    const bool dim3 = (i % 2) == 1;
    const int d_b = dim3 ? 3 : 2;
    const int d_c = dim3 ? 1 + (i / 2) % 4 : 1 + (i / 2) % 8;
    const TripartitePureState state = random_tripartite(d_b, d_c, rng);
    const std::string label = "random#" + std::to_string(i);
    v.route(conditional_blocks(state), label);
    v.hierarchy(state, random_pom(d_b, 2 + i % 3, rng), label);
  }
  Rng arng(SeededStream{seed, 1});
  for (int i = 0; i < attainment_n; ++i) {
    v.attainment(random_tripartite(2, 2, arng), {seed, 100 + 2 * static_cast<std::uint64_t>(i)},
                 "attainment#" + std::to_string(i));
  }
}

ordered_json report_json(const BoundReport& r) {
  return {{"V", r.V}, {"P", r.P}, {"C_AB", r.C_AB}, {"D_AB", r.D_AB}, {"C_full", r.C_full}, {"D_full", r.D_full}};
}

int cmd_bound(const std::string& path, std::ostream& out, std::ostream& err, bool quiet) {
  const LoadedState loaded = parse_state_json(read_input(path));
  if (loaded.renormalized && !quiet) {
    err << "warning: state norm off by " << loaded.norm_deviation << "; renormalized\n";
  }
  const TripartitePureState& state = loaded.state;
  const BoundReport r = full_bounds(state);
  const ConditionalBlocks blocks = conditional_blocks(state);
  const RouteCheck rc = check_route(blocks);

  std::vector<std::string> violations;
  if (!(r.V <= r.C_AB + kBoundSlack && r.C_AB <= r.C_full + kBoundSlack)) violations.push_back("V <= C_AB <= C_full");
  if (!(r.P <= r.D_AB + kBoundSlack && r.D_AB <= r.D_full + kBoundSlack)) violations.push_back("P <= D_AB <= D_full");
  if (rc.delta > rc.tol) violations.push_back("route equality (" + rc.route + ")");
  double d_delta = 0.0;
  if (state.d_b() == 2) {
    d_delta = std::abs(distinguishability_bound_piecewise(blocks) - distinguishability_bound(blocks));
    if (d_delta > kSubfidelityRouteTol) violations.push_back("piecewise D_AB equality");
  }

  ordered_json j = report_json(r);
  j["route_used"] = rc.route;
  j["route_crosscheck_delta"] = rc.delta;
  if (state.d_b() == 2) j["D_crosscheck_delta"] = d_delta;
  out << j.dump(2) << "\n";
  if (!violations.empty()) {
    for (const auto& v : violations) err << "invariant violated: " << v << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int cmd_subfidelity(const std::string& x_path, const std::string& y_path, std::ostream& out,
                    std::ostream& err) {
  const DensityMatrix x = parse_density_json(read_input(x_path));
  const DensityMatrix y = parse_density_json(read_input(y_path));
  if (x.dim() != y.dim()) throw Error(ErrorCode::kDimensionMismatch, "operands differ in dimension");
  const double e = sub_fidelity(x, y);
  const double f = uhlmann_fidelity(x, y);
  ordered_json j{{"E", e}, {"F", f}, {"F_squared", f * f}};
  out << j.dump(2) << "\n";
  if (e > f * f + kBoundSlack) {
    err << "invariant violated: E <= F^2\n";
    return kExitInvariant;
  }
  return kExitOk;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(cell, &used);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "bad integer in list: " + cell);
    }
    if (used != cell.size()) throw Error(ErrorCode::kParse, "bad integer in list: " + cell);
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string verify_report_json(const VerifyReport& report) {
  ordered_json j{{"checks_run", report.checks_run},
                 {"max_route_delta", report.max_route_delta},
                 {"max_attainment_gap", report.max_attainment_gap},
                 {"failures", report.failures}};
  return j.dump(2) + "\n";
}

VerifyReport run_verification(const std::string& corpus, int n, std::uint64_t seed, int attainment_n) {
  Verifier v;
  if (corpus == "builtin") {
    verify_builtin(v, seed);
  } else if (corpus == "random") {
    verify_random(v, n, seed, attainment_n);
  } else {
    throw Error(ErrorCode::kParse, "unknown corpus " + corpus);
  }
  return v.report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal quantum-erasure bounds with a split environment"};
  app.require_subcommand(1);
  bool quiet = false;
  int threads = 0;
  app.add_flag("--quiet", quiet, "Suppress progress and warnings on stderr");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* bound = app.add_subcommand("bound", "Compute V, P, C_AB, D_AB, C_full, D_full for a state file");
  std::string state_path;
  bound->add_option("state_file", state_path, "State JSON ('-' for stdin)")->required();

  auto* subfid = app.add_subcommand("subfidelity", "Sub-fidelity and Uhlmann fidelity of two density matrices");
  std::string x_path, y_path;
  subfid->add_option("file_x", x_path)->required();
  subfid->add_option("file_y", y_path)->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo average of C_AB over d_C");
  std::string dc_list;
  long long samples = 10000;
  std::vector<std::uint64_t> seed_flag;
  std::string format = "csv";
  std::string output;
  std::string path = "ginibre";
  std::vector<double> band{0.25, 0.75};
  sweep_cmd->add_option("--dc-list", dc_list, "Comma-separated d_C values")->required();
  sweep_cmd->add_option("--samples", samples, "Samples per point");
  sweep_cmd->add_option("--seed", seed_flag, "Master seed (fallback: $ERASURE_SEED, then 1)")->expected(1);
  sweep_cmd->add_option("--out", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--output", output, "Write to this file instead of stdout");
  sweep_cmd->add_option("--path", path, "Sampling pipeline")->check(CLI::IsMember({"ginibre", "full"}));
  sweep_cmd->add_option("--band", band, "Percentile band low,high")->expected(2)->delimiter(',');

  auto* fit = app.add_subcommand("fit", "Fit <C> = c <V> to a sweep CSV");
  std::string csv_path;
  fit->add_option("sweep_csv", csv_path, "Sweep CSV ('-' for stdin)")->required();

  auto* verify = app.add_subcommand("verify", "Run route-equality, hierarchy and attainment checks");
  std::string corpus = "builtin";
  int n = 1000;
  int attainment_n = 100;
  std::vector<std::uint64_t> verify_seed;
  verify->add_option("--corpus", corpus)->check(CLI::IsMember({"builtin", "random"}));
  verify->add_option("--n", n, "Random corpus size")->check(CLI::NonNegativeNumber);
  verify->add_option("--attainment-n", attainment_n, "Random states for the optimizer sweep")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_seed)->expected(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (*bound) return cmd_bound(state_path, out, err, quiet);
    if (*subfid) return cmd_subfidelity(x_path, y_path, out, err);
    if (*sweep_cmd) {
      SweepConfig config;
      config.dc_values = parse_int_list(dc_list);
      config.samples_per_point = samples;
      config.master_seed = resolve_seed(seed_flag);
      config.percentile_band = {band[0], band[1]};
      config.path = path == "full" ? CoherencePath::kFullState : CoherencePath::kGinibreFactored;
      const SweepResult result = sweep(config, threads, [&](const PointRecord& p) {
        if (!quiet) err << "dC=" << p.dc << " mean_C=" << p.mean_c << " stderr=" << p.std_error << "\n";
      });
      const std::string text = format == "json" ? sweep_to_json(result) : sweep_to_csv(result);
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) throw Error(ErrorCode::kParse, "cannot write " + output);
        file << text;
      }
      return kExitOk;
    }
    if (*fit) {
      const auto records = parse_sweep_csv(read_input(csv_path));
      std::vector<FitPoint> points;
      for (const auto& p : records) points.push_back({p.dc, p.avg_v_analytic, p.mean_c, p.std_error});
      out << fit_to_json(fit_proportional(points));
      return kExitOk;
    }
    if (*verify) {
      const VerifyReport report = run_verification(corpus, n, resolve_seed(verify_seed), attainment_n);
      out << verify_report_json(report);
      return report.failures.empty() ? kExitOk : kExitVerificationFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitParse;
}

}  // namespace erasure::cli

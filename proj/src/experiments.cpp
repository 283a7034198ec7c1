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

#include "erasure/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include "json.hpp"

namespace erasure {
namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

const char* path_name(CoherencePath path) {
  return path == CoherencePath::kFullState ? "full_state" : "ginibre_factored";
}

}  // namespace

double avg_visibility_analytic(int env_dim) {
  if (env_dim < 1) throw Error(ErrorCode::kUnsupportedK, "env_dim must be >= 1");
  const double k = env_dim;
  const double log_ratio = std::lgamma(2.0 * k) - 2.0 * std::lgamma(k) - k * std::log(4.0);
  return std::numbers::pi * std::exp(log_ratio) / k;
}

double avg_coherence_k1_analytic() { return 9.0 * std::numbers::pi / 32.0; }

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

McEstimate mc_estimate(long long samples, SeededStream stream, const McOptions& options,
                       const std::function<double(Rng&)>& draw) {
  if (samples < 1) throw Error(ErrorCode::kInvalidConfig, "samples must be positive");
  std::vector<double> values(static_cast<std::size_t>(samples));
  const long long chunks = (samples + kChunkSize - 1) / kChunkSize;

  auto run_chunk = [&](long long chunk) {
    Rng rng(stream, static_cast<std::uint64_t>(chunk) * kChunkBlockStride);
    const long long begin = chunk * kChunkSize;
    const long long end = std::min(samples, begin + kChunkSize);
    for (long long i = begin; i < end; ++i) values[static_cast<std::size_t>(i)] = draw(rng);
  };

  const int workers = std::min<long long>(resolve_threads(options.threads), chunks);
  if (workers <= 1) {
    for (long long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (long long c = w; c < chunks; c += workers) run_chunk(c);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Summation in index order keeps the result independent of scheduling.
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = samples > 1 ? ss / (n - 1.0) : 0.0;

  std::sort(values.begin(), values.end());
  McEstimate out;
  out.mean = mean;
  out.std_error = std::sqrt(var / n);
  out.band_low = percentile_sorted(values, options.band.first);
  out.band_high = percentile_sorted(values, options.band.second);
  out.n = samples;
  return out;
}

double sample_coherence(int d_c, CoherencePath path, Rng& rng) {
  if (path == CoherencePath::kFullState) {
    return coherence_bound_subfidelity(random_tripartite(2, d_c, rng));
  }
  // Rows are (a, b) in the same order as the tripartite amplitudes, so this
  // consumes the draws exactly as haar_pure(4 d_c) would.
  ComplexMatrix mu = ginibre(4, d_c, rng);
  mu /= mu.norm();
  const double e = sub_fidelity_factored(mu.topRows(2), mu.bottomRows(2));
  return 2.0 * std::sqrt(clamp_radicand(e));
}

McEstimate mc_avg_coherence(int d_c, long long samples, SeededStream stream,
                            const McOptions& options) {
  if (d_c < 1) throw Error(ErrorCode::kInvalidConfig, "d_C must be >= 1");
  if (options.state_override) {
    return mc_estimate(samples, stream, options, [&](Rng& rng) {
      return coherence_bound_subfidelity(options.state_override(rng));
    });
  }
  return mc_estimate(samples, stream, options,
                     [d_c, path = options.path](Rng& rng) { return sample_coherence(d_c, path, rng); });
}

McEstimate mc_avg_visibility(int env_dim, long long samples, SeededStream stream,
                             const McOptions& options) {
  if (env_dim < 1) throw Error(ErrorCode::kInvalidConfig, "env_dim must be >= 1");
  return mc_estimate(samples, stream, options,
                     [env_dim](Rng& rng) { return visibility(induced_density(2, env_dim, rng)); });
}

double ks_distance_to_trace_density(std::span<const double> sorted, int env_dim) {
  using Rule = boost::math::quadrature::gauss<double, 15>;
  auto pdf = [env_dim](double x) { return eig_pdf_trace(env_dim, x); };
  const double n = static_cast<double>(sorted.size());
  double cdf = 0.0;
  double prev = 0.0;
  double dist = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = std::clamp(sorted[i], 0.0, 1.0);
    if (x > prev) cdf += Rule::integrate(pdf, prev, x);
    prev = x;
    dist = std::max({dist, std::abs(static_cast<double>(i + 1) / n - cdf),
                     std::abs(cdf - static_cast<double>(i) / n)});
  }
  return dist;
}

void SweepConfig::validate() const {
  if (dc_values.empty()) throw Error(ErrorCode::kInvalidConfig, "dc_values is empty");
  for (std::size_t i = 0; i < dc_values.size(); ++i) {
    if (dc_values[i] < 1) throw Error(ErrorCode::kInvalidConfig, "d_C must be >= 1");
    if (i > 0 && dc_values[i] <= dc_values[i - 1]) {
      throw Error(ErrorCode::kInvalidConfig, "dc_values must be strictly increasing");
    }
  }
  if (samples_per_point < 100) {
    throw Error(ErrorCode::kInvalidConfig, "samples_per_point must be >= 100");
  }
  const auto [lo, hi] = percentile_band;
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "percentile band must satisfy 0 <= low <= high <= 1");
  }
}

SweepResult sweep(const SweepConfig& config, int threads,
                  const std::function<void(const PointRecord&)>& on_point) {
  config.validate();
  McOptions options;
  options.band = config.percentile_band;
  options.path = config.path;
  options.threads = threads;

  SweepResult result{config, {}};
  for (std::size_t i = 0; i < config.dc_values.size(); ++i) {
    const int dc = config.dc_values[i];
    const McEstimate est = mc_avg_coherence(dc, config.samples_per_point,
                                            SeededStream{config.master_seed, i}, options);
    result.points.push_back(PointRecord{dc, 2 * dc, est.mean, est.std_error, est.band_low,
                                        est.band_high, est.n, avg_visibility_analytic(2 * dc)});
    if (on_point) on_point(result.points.back());
  }
  return result;
}

FitResult fit_proportional(std::span<const FitPoint> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::kInsufficientPoints,
                "need at least 3 points, got " + std::to_string(points.size()));
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& p : points) {
    if (!(p.se > 0.0)) throw Error(ErrorCode::kInvalidConfig, "standard errors must be positive");
    const double w = 1.0 / (p.se * p.se);
    sxy += w * p.x * p.y;
    sxx += w * p.x * p.x;
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::kInvalidConfig, "all abscissae vanish");

  FitResult fit;
  fit.c_hat = sxy / sxx;
  fit.c_stderr = 1.0 / std::sqrt(sxx);
  fit.k_range = {points.front().dc, points.front().dc};
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    fit.residuals.push_back(p.y - fit.c_hat * p.x);
    fit.k_range.first = std::min(fit.k_range.first, p.dc);
    fit.k_range.second = std::max(fit.k_range.second, p.dc);
    mx += p.x;
    my += p.y;
  }
  const double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double cov = 0.0;
  double var = 0.0;
  for (const auto& p : points) {
    cov += (p.x - mx) * (p.y - my);
    var += (p.x - mx) * (p.x - mx);
  }
  fit.affine_slope = var > 0.0 ? cov / var : 0.0;
  fit.affine_intercept = my - fit.affine_slope * mx;
  return fit;
}

std::vector<FitPoint> fit_points(const SweepResult& result) {
  std::vector<FitPoint> out;
  for (const auto& p : result.points) out.push_back({p.dc, p.avg_v_analytic, p.mean_c, p.std_error});
  return out;
}

FitResult fit_constant_c(const SweepConfig& config, int threads) {
  config.validate();
  for (int dc : config.dc_values) {
    if (dc < 10) throw Error(ErrorCode::kInvalidConfig, "fit requires every d_C >= 10");
  }
  if (config.dc_values.size() < 3) {
    throw Error(ErrorCode::kInsufficientPoints, "need at least 3 d_C values");
  }
  const auto points = fit_points(sweep(config, threads));
  return fit_proportional(points);
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const auto& p : result.points) {
    out << p.dc << ',' << p.env_dim << ',' << fmt17(p.mean_c) << ',' << fmt17(p.std_error) << ','
        << fmt17(p.band_low) << ',' << fmt17(p.band_high) << ',' << p.n << ','
        << fmt17(p.avg_v_analytic) << '\n';
  }
  return out.str();
}

std::string sweep_to_json(const SweepResult& result) {
  nlohmann::ordered_json j;
  const auto& c = result.config;
  j["config"] = {{"dc_values", c.dc_values},
                 {"samples_per_point", c.samples_per_point},
                 {"master_seed", c.master_seed},
                 {"percentile_band", {c.percentile_band.first, c.percentile_band.second}},
                 {"path", path_name(c.path)}};
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : result.points) {
    j["points"].push_back({{"dC", p.dc},
                           {"env_dim", p.env_dim},
                           {"mean_C", p.mean_c},
                           {"stderr", p.std_error},
                           {"band_low", p.band_low},
                           {"band_high", p.band_high},
                           {"n", p.n},
                           {"avg_V_analytic", p.avg_v_analytic}});
  }
  return j.dump(2) + "\n";
}

std::string fit_to_json(const FitResult& fit) {
  nlohmann::ordered_json j;
  j["c_hat"] = fit.c_hat;
  j["c_stderr"] = fit.c_stderr;
  j["residuals"] = fit.residuals;
  j["k_range"] = {fit.k_range.first, fit.k_range.second};
  j["affine"] = {{"slope", fit.affine_slope}, {"intercept", fit.affine_intercept}};
  return j.dump(2) + "\n";
}

std::vector<PointRecord> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepCsvHeader) throw Error(ErrorCode::kParse, "unexpected header: " + line);

  std::vector<PointRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected 8 columns");
    }
    try {
      std::size_t used = 0;
      auto num = [&](const std::string& s) {
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      auto integer = [&](const std::string& s) {
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      PointRecord p;
      p.dc = static_cast<int>(integer(cells[0]));
      p.env_dim = static_cast<int>(integer(cells[1]));
      p.mean_c = num(cells[2]);
      p.std_error = num(cells[3]);
      p.band_low = num(cells[4]);
      p.band_high = num(cells[5]);
      p.n = integer(cells[6]);
      p.avg_v_analytic = num(cells[7]);
      out.push_back(p);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad number");
    }
  }
  return out;
}

}  // namespace erasure

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

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "erasure/sampling.hpp"

namespace erasure {

/// <V>_K = pi / 4^K * Gamma(2K) / (K Gamma(K)^2): mean visibility of a qubit
/// marginal when a K-dimensional environment is traced out. Evaluated in
/// log-Gamma space.
double avg_visibility_analytic(int env_dim);

/// Mean of 2 sqrt(p0 p1) over Haar-random two-qubit pure states: 9 pi / 32.
double avg_coherence_k1_analytic();

/// Monte Carlo summary of one sample batch.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double band_low = 0.0;
  double band_high = 0.0;
  long long n = 0;
};

/// How each coherence sample is produced.
enum class CoherencePath {
  /// Ginibre 4 x d_C matrix, normalized, with the sub-fidelity taken in
  /// factored form; O(d_C) per sample.
  kGinibreFactored,
  /// haar_pure(4 d_C) -> TripartitePureState -> conditional blocks ->
  /// coherence_bound_subfidelity on the full d_C x d_C operators.
  kFullState,
};

struct McOptions {
  std::pair<double, double> band{0.25, 0.75};
  CoherencePath path = CoherencePath::kGinibreFactored;
  int threads = 1;  // 0 = hardware concurrency
  /// Replaces the random state draw (kFullState semantics); tests only.
  std::function<TripartitePureState(Rng&)> state_override;
};

/// Samples are split into fixed chunks of this size; chunk j of a stream
/// draws from cipher block j * kChunkBlockStride onward, so results do not
/// depend on the thread count.
inline constexpr long long kChunkSize = 4096;
inline constexpr std::uint64_t kChunkBlockStride = std::uint64_t{1} << 40;

/// Mean / stderr / percentile band of `samples` values produced by
/// draw(rng) with chunked deterministic streams.
McEstimate mc_estimate(long long samples, SeededStream stream, const McOptions& options,
                       const std::function<double(Rng&)>& draw);

/// One coherence sample C_{A|B} for a random (2, 2, d_c) state.
double sample_coherence(int d_c, CoherencePath path, Rng& rng);

McEstimate mc_avg_coherence(int d_c, long long samples, SeededStream stream,
                            const McOptions& options = {});

/// Mean visibility of induced_density(2, env_dim).
McEstimate mc_avg_visibility(int env_dim, long long samples, SeededStream stream,
                             const McOptions& options = {});

/// Linear-interpolated percentile (q in [0, 1]) of sorted data.
double percentile_sorted(std::span<const double> sorted, double q);

/// Kolmogorov-Smirnov distance between sorted samples in [0, 1] and the
/// distribution with density eig_pdf_trace(env_dim, .).
double ks_distance_to_trace_density(std::span<const double> sorted, int env_dim);

struct SweepConfig {
  std::vector<int> dc_values;
  long long samples_per_point = 10000;
  std::uint64_t master_seed = 0;
  std::pair<double, double> percentile_band{0.25, 0.75};
  CoherencePath path = CoherencePath::kGinibreFactored;

  /// Throws kInvalidConfig: dc_values nonempty, positive, strictly
  /// increasing; samples >= 100; 0 <= low <= high <= 1.
  void validate() const;
};

struct PointRecord {
  int dc = 0;
  int env_dim = 0;  // 2 * dc
  double mean_c = 0.0;
  double std_error = 0.0;
  double band_low = 0.0;
  double band_high = 0.0;
  long long n = 0;
  double avg_v_analytic = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<PointRecord> points;
};

/// One point per d_C; point i uses stream_index i. on_point, when set, is
/// called after each point completes.
SweepResult sweep(const SweepConfig& config, int threads = 1,
                  const std::function<void(const PointRecord&)>& on_point = {});

struct FitPoint {
  int dc = 0;
  double x = 0.0;   // analytic <V>_{2 dc}
  double y = 0.0;   // mean coherence
  double se = 0.0;  // stderr of y
};

struct FitResult {
  double c_hat = 0.0;
  double c_stderr = 0.0;
  std::vector<double> residuals;  // y - c_hat x, per point
  std::pair<int, int> k_range{0, 0};  // smallest / largest d_C fitted
  // Unweighted affine fit y = slope x + intercept, for diagnostics only.
  double affine_slope = 0.0;
  double affine_intercept = 0.0;
};

/// Weighted (1 / se^2) least squares through the origin. Throws
/// kInsufficientPoints below 3 points and kInvalidConfig for se <= 0.
FitResult fit_proportional(std::span<const FitPoint> points);

std::vector<FitPoint> fit_points(const SweepResult& result);

/// Runs the sweep and fits <C> = c <V>. All d_C must be >= 10.
FitResult fit_constant_c(const SweepConfig& config, int threads = 1);

// Serialization. Column order is fixed:
//   dC,env_dim,mean_C,stderr,band_low,band_high,n,avg_V_analytic
inline constexpr const char* kSweepCsvHeader =
    "dC,env_dim,mean_C,stderr,band_low,band_high,n,avg_V_analytic";

std::string sweep_to_csv(const SweepResult& result);
std::string sweep_to_json(const SweepResult& result);
std::string fit_to_json(const FitResult& fit);

/// Parses the pinned CSV layout; throws kParse on any deviation.
std::vector<PointRecord> parse_sweep_csv(const std::string& text);

}  // namespace erasure

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "splithalf/score_matrix.hpp"
#include "splithalf/splitter.hpp"

namespace splithalf {

/// Seedable generator with a fixed, documented output mapping:
/// std::mt19937_64 bits, 53-bit uniforms on [0, 1), and cosine-branch
/// Box-Muller normals. Independent child streams come from SplitMix64
/// mixing of (seed, stream).
class Rng {
 public:
  static constexpr std::string_view kAlgorithm =
      "mt19937_64+splitmix64-streams/u53/box-muller-cos";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// [0, 1).
  double uniform();
  double normal(double mean, double sd);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

enum class ModelKind {
  /// Per-examinee p ~ Uniform[0, 1].
  D1,
  /// Per-item p ~ Uniform[0, 1].
  D2,
  /// Per-examinee p ~ Normal(0.5, 0.2), clamped to [0, 1].
  D3,
  /// Per-item p ~ Normal(0.5, 0.2), clamped to [0, 1].
  D4,
};

std::string_view to_string(ModelKind k);
/// Accepts "D1".."D4" (case-insensitive); throws RangeError otherwise.
ModelKind parse_model_kind(std::string_view s);

struct SimModel {
  ModelKind kind = ModelKind::D1;
  std::size_t N = 999;
  std::size_t n = 50;
  std::uint64_t seed = 0;
};

enum class ProbabilityAxis { PerExaminee, PerItem };

ProbabilityAxis axis_of(ModelKind k);

/// Draws the model's response probabilities (N of them for per-examinee
/// models, n for per-item ones) from the parameter stream of `seed`.
std::vector<double> draw_probabilities(const SimModel& model);

/// Independent Bernoulli entries, row-major, from the entry stream of
/// `seed`.
ScoreMatrix generate_from_probabilities(ProbabilityAxis axis,
                                        const std::vector<double>& p,
                                        std::size_t N, std::size_t n,
                                        std::uint64_t seed);

/// Deterministic in the model, seed included.
ScoreMatrix generate(const SimModel& model);

struct ScalingRow {
  std::size_t N = 0;
  std::size_t n = 0;
  double r_tt = 0.0;
  std::int64_t abs_S = 0;
  std::size_t iterations = 0;
  double generate_seconds = 0.0;
  double split_seconds = 0.0;
  /// Item totals, split, sub-test scores and reliability.
  double analysis_seconds = 0.0;
};

struct ScalingSize {
  std::size_t N = 0;
  std::size_t n = 0;
};

std::vector<ScalingRow> scaling_suite(const std::vector<ScalingSize>& sizes,
                                      ModelKind kind, std::uint64_t seed,
                                      const SplitOptions& options = {});

}  // namespace splithalf

#include "splithalf/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "splithalf/errors.hpp"
#include "splithalf/reliability.hpp"

namespace splithalf {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal(double mean, double sd) {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double z =
      std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + sd * z;
}

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::D1: return "D1";
    case ModelKind::D2: return "D2";
    case ModelKind::D3: return "D3";
    case ModelKind::D4: return "D4";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view s) {
  std::string up(s);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "D1") return ModelKind::D1;
  if (up == "D2") return ModelKind::D2;
  if (up == "D3") return ModelKind::D3;
  if (up == "D4") return ModelKind::D4;
  throw Error(ErrorKind::RangeError, "unknown model '" + std::string(s) + "'");
}

ProbabilityAxis axis_of(ModelKind k) {
  return k == ModelKind::D1 || k == ModelKind::D3 ? ProbabilityAxis::PerExaminee
                                                  : ProbabilityAxis::PerItem;
}

namespace {

constexpr std::uint64_t kParameterStream = 0;
constexpr std::uint64_t kEntryStream = 1;

void check_sizes(std::size_t N, std::size_t n) {
  if (N < 2 || n < 2) {
    throw Error(ErrorKind::TooSmall, "simulation needs N >= 2 and n >= 2");
  }
}

}  // namespace

std::vector<double> draw_probabilities(const SimModel& model) {
  check_sizes(model.N, model.n);
  const auto axis = axis_of(model.kind);
  const std::size_t count = axis == ProbabilityAxis::PerExaminee ? model.N : model.n;
  const bool uniform = model.kind == ModelKind::D1 || model.kind == ModelKind::D2;

  Rng rng = Rng(model.seed).split(kParameterStream);
  std::vector<double> p(count);
  for (auto& v : p) {
    v = uniform ? rng.uniform() : std::clamp(rng.normal(0.5, 0.2), 0.0, 1.0);
  }
  return p;
}

ScoreMatrix generate_from_probabilities(ProbabilityAxis axis,
                                        const std::vector<double>& p,
                                        std::size_t N, std::size_t n,
                                        std::uint64_t seed) {
  check_sizes(N, n);
  const std::size_t expected = axis == ProbabilityAxis::PerExaminee ? N : n;
  if (p.size() != expected) {
    throw Error(ErrorKind::ShapeError, "probability vector has wrong length");
  }
  Rng rng = Rng(seed).split(kEntryStream);
  std::vector<std::uint8_t> entries(N * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double prob = axis == ProbabilityAxis::PerExaminee ? p[i] : p[j];
      entries[k++] = rng.bernoulli(prob) ? 1 : 0;
    }
  }
  return ScoreMatrix(N, n, std::move(entries));
}

ScoreMatrix generate(const SimModel& model) {
  return generate_from_probabilities(axis_of(model.kind),
                                     draw_probabilities(model), model.N,
                                     model.n, model.seed);
}

std::vector<ScalingRow> scaling_suite(const std::vector<ScalingSize>& sizes,
                                      ModelKind kind, std::uint64_t seed,
                                      const SplitOptions& options) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::duration d) {
    return std::chrono::duration<double>(d).count();
  };
  if (sizes.empty()) throw Error(ErrorKind::TooSmall, "no sizes requested");

  std::vector<ScalingRow> rows;
  for (const auto& size : sizes) {
    ScalingRow row;
    row.N = size.N;
    row.n = size.n;

    const auto t0 = clock::now();
    const auto m = generate({kind, size.N, size.n, seed});
    const auto t1 = clock::now();

    const auto tau = item_totals(m);
    const auto t2 = clock::now();
    const auto s = split(tau, options);
    const auto t3 = clock::now();
    const auto halves = sub_test_scores(m, s.assignment);
    const auto stats =
        descriptive_stats(paired_totals(halves), 2 * s.assignment.rows());
    const auto rel = classical_reliability(halves, stats);
    const auto t4 = clock::now();

    row.r_tt = rel.r_tt;
    row.abs_S = s.abs_S;
    row.iterations = s.iterations;
    row.generate_seconds = seconds(t1 - t0);
    row.split_seconds = seconds(t3 - t2);
    row.analysis_seconds = seconds(t4 - t1);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace splithalf

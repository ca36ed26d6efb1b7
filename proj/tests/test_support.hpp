#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "splithalf/score_matrix.hpp"

namespace test_support {

inline splithalf::ScoreMatrix random_matrix(std::size_t N, std::size_t n,
                                            std::uint32_t seed,
                                            double p = 0.5) {
  std::mt19937 gen(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::uint8_t> e(N * n);
  for (auto& v : e) v = coin(gen) ? 1 : 0;
  return splithalf::ScoreMatrix(N, n, std::move(e));
}

/// Matrix whose responses follow examinee abilities, so halves correlate.
inline splithalf::ScoreMatrix ability_matrix(std::size_t N, std::size_t n,
                                             std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> ability(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::uint8_t> e(N * n);
  for (std::size_t i = 0; i < N; ++i) {
    const double p = ability(gen);
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = u(gen) < p ? 1 : 0;
  }
  return splithalf::ScoreMatrix(N, n, std::move(e));
}

/// Item scores of a matrix in which item j is answered correctly by the
/// first tau[j] of N examinees.
inline splithalf::ScoreMatrix matrix_with_item_totals(
    const std::vector<std::int64_t>& tau, std::size_t N) {
  const std::size_t n = tau.size();
  std::vector<std::uint8_t> e(N * n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < tau[j]; ++i)
      e[static_cast<std::size_t>(i) * n + j] = 1;
  return splithalf::ScoreMatrix(N, n, std::move(e));
}

inline std::vector<std::int64_t> reference_item_totals() {
  return {75,  284, 135, 144, 112, 230, 172, 128, 96,  294, 256, 263, 393,
          196, 337, 405, 285, 134, 193, 100, 190, 292, 309, 90,  75,  129,
          239, 205, 151, 221, 106, 124, 131, 103, 483, 127, 195, 453, 84,
          488, 113, 376, 85,  102, 115, 80,  199, 178, 236, 111};
}

}  // namespace test_support

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "splithalf/battery.hpp"
#include "splithalf/reliability.hpp"
#include "splithalf/splitter.hpp"
#include "splithalf/truescore.hpp"

namespace splithalf {

/// Bin counts of examinee scores for the full test and both halves, bins
/// [lower, lower + width).
struct HistogramBin {
  double lower = 0.0;
  std::size_t full = 0;
  std::size_t g = 0;
  std::size_t h = 0;
};

struct ScoreHistograms {
  double bin_width = 1.0;
  std::vector<HistogramBin> bins;
};

ScoreHistograms score_histograms(const TestAnalysis& analysis,
                                 double bin_width = 1.0);

/// Split table: one entry per row with (g item, g score, h item, h score,
/// difference), item numbers 1-based, plus sums and the iteration history.
nlohmann::json split_to_json(const SplitResult& s, const ItemScores& tau,
                             const std::vector<std::string>& item_ids = {});

nlohmann::json stats_to_json(const TestStats& s);
nlohmann::json reliability_to_json(const ReliabilityReport& r);
nlohmann::json histograms_to_json(const ScoreHistograms& h);
nlohmann::json true_scores_to_json(const TrueScoreTable& t);
nlohmann::json bins_to_json(const TrueScoreTable& t, double width = 1.0);
nlohmann::json weights_to_json(const WeightVector& w);
nlohmann::json battery_to_json(const CovMatrix& d, std::span<const double> r_tt,
                               double summative, const BatteryReport& weighted);

}  // namespace splithalf

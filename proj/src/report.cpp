#include "splithalf/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "splithalf/errors.hpp"

namespace splithalf {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

ScoreHistograms score_histograms(const TestAnalysis& analysis,
                                 double bin_width) {
  if (!(bin_width > 0.0)) {
    throw Error(ErrorKind::RangeError, "histogram bin width must be positive");
  }
  std::map<long long, HistogramBin> bins;
  auto add = [&](std::int64_t score, std::size_t HistogramBin::*field) {
    const auto k = static_cast<long long>(
        std::floor(static_cast<double>(score) / bin_width));
    auto& bin = bins[k];
    bin.lower = static_cast<double>(k) * bin_width;
    ++(bin.*field);
  };
  for (auto x : analysis.totals.totals) add(x, &HistogramBin::full);
  for (auto x : analysis.halves.g) add(x, &HistogramBin::g);
  for (auto x : analysis.halves.h) add(x, &HistogramBin::h);

  ScoreHistograms out;
  out.bin_width = bin_width;
  for (auto& [k, bin] : bins) out.bins.push_back(bin);
  return out;
}

json split_to_json(const SplitResult& s, const ItemScores& tau,
                   const std::vector<std::string>& item_ids) {
  auto label = [&](std::size_t j) -> json {
    if (item_ids.empty()) return j + 1;
    return item_ids[j];
  };
  json rows = json::array();
  const auto& a = s.assignment;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto g = a.g_items[r];
    const auto h = a.h_items[r];
    rows.push_back({{"g_item", label(g)},
                    {"g_score", tau[g]},
                    {"h_item", label(h)},
                    {"h_score", tau[h]},
                    {"difference", tau[g] - tau[h]}});
  }
  json g_items = json::array();
  json h_items = json::array();
  for (auto j : a.g_items) g_items.push_back(label(j));
  for (auto j : a.h_items) h_items.push_back(label(j));

  return {{"criterion", std::string(to_string(s.criterion))},
          {"g_items", g_items},
          {"h_items", h_items},
          {"dropped_item", a.dropped_item ? label(*a.dropped_item) : json(nullptr)},
          {"rows", rows},
          {"sum_g", s.sum_g},
          {"sum_h", s.sum_h},
          {"S", s.S},
          {"abs_S", s.abs_S},
          {"S_sq", s.S_sq},
          {"iterations", s.iterations},
          {"history", s.history}};
}

json stats_to_json(const TestStats& s) {
  return {{"N", s.N},
          {"n", s.n},
          {"mean", s.mean},
          {"variance", s.variance},
          {"norm_X", s.norm_X},
          {"norm_I", s.norm_I},
          {"cos_theta_X", s.angle_defined ? json(s.cos_theta_X) : json(nullptr)}};
}

json reliability_to_json(const ReliabilityReport& r) {
  json f = nullptr;
  if (r.f_test) {
    f = {{"f_stat", r.f_test->f_stat},
         {"p_value", r.f_test->p_value},
         {"dof", {r.f_test->dof, r.f_test->dof}},
         {"basis", "observed sub-test score variances (approximation)"}};
  }
  json geometry = nullptr;
  if (r.geometry) {
    geometry = {{"S_T_sq", r.geometry->S_T_sq},
                {"norm_T", r.geometry->norm_T},
                {"cos_theta_T", r.geometry->cos_theta_T}};
  }
  return {{"r_tt", r.r_tt},
          {"r_tt_equal_norm", r.r_tt_equal_norm},
          {"r_gh", optional_number(r.r_gh)},
          {"r_XT", optional_number(r.r_XT)},
          {"error_variance", r.error_variance},
          {"S_X_sq", r.S_X_sq},
          {"S_T_sq", r.S_T_sq},
          {"mean_g", r.mean_g},
          {"mean_h", r.mean_h},
          {"variance_g", r.variance_g},
          {"variance_h", r.variance_h},
          {"f_test", f},
          {"true_score_geometry", geometry},
          {"warnings", r.warnings}};
}

json histograms_to_json(const ScoreHistograms& h) {
  json bins = json::array();
  for (const auto& b : h.bins) {
    bins.push_back({{"lower", b.lower}, {"full", b.full}, {"g", b.g}, {"h", b.h}});
  }
  return {{"bin_width", h.bin_width}, {"bins", bins}};
}

json true_scores_to_json(const TrueScoreTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"examinee_id", r.examinee_id},
                    {"observed", r.observed},
                    {"estimate", r.estimate},
                    {"low", r.low},
                    {"high", r.high},
                    {"prediction_error", r.prediction_error},
                    {"out_of_range", r.out_of_range}});
  }
  return {{"reliability_kind", std::string(to_string(t.reliability_kind))},
          {"alpha1", t.alpha1},
          {"beta1", t.beta1},
          {"S_E", t.S_E},
          {"prediction_error_variance", t.prediction_error_variance},
          {"prediction_gap", t.prediction_gap},
          {"rows", rows}};
}

json bins_to_json(const TrueScoreTable& t, double width) {
  json out = json::object();
  for (const auto& [lower, ids] : estimate_bins(t, width)) {
    json key = lower;
    out[key.dump()] = ids;
  }
  return out;
}

json weights_to_json(const WeightVector& w) {
  return {{"method", std::string(to_string(w.method))},
          {"w", w.w},
          {"lambda", optional_number(w.lambda)},
          {"warnings", w.warnings}};
}

json battery_to_json(const CovMatrix& d, std::span<const double> r_tt,
                     double summative, const BatteryReport& weighted) {
  json matrix = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < d.size(); ++j) row.push_back(d(i, j));
    matrix.push_back(row);
  }
  return {{"D", matrix},
          {"r_tt", std::vector<double>(r_tt.begin(), r_tt.end())},
          {"weights", weights_to_json(weighted.weights)},
          {"r_battery_summative", summative},
          {"r_battery_weighted", weighted.r_battery},
          {"variance_Y", weighted.variance_Y},
          {"true_variance_Y", weighted.true_variance_Y},
          {"warnings", weighted.warnings}};
}

}  // namespace splithalf

// splithalf command-line front end.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "splithalf/battery.hpp"
#include "splithalf/errors.hpp"
#include "splithalf/reliability.hpp"
#include "splithalf/report.hpp"
#include "splithalf/simulate.hpp"
#include "splithalf/splitter.hpp"
#include "splithalf/truescore.hpp"

using nlohmann::json;
using namespace splithalf;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitComputation = 2;

struct Config {
  std::string input;
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "json";
  std::string criterion = "abs";
  std::string swap_policy = "single";
  std::optional<std::size_t> max_iter;
  std::string kind = "classical";
  double bins = 1.0;
  std::string histogram;
  bool header = false;
  bool row_ids = false;
  char delimiter = ',';
  std::string weights = "optimal";
  std::string model = "D1";
  std::size_t N = 999;
  std::size_t n = 50;
  std::uint64_t seed = 0;
  std::string sizes = "1000:50,2000:50";
  std::string metadata;
};

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ShapeError, "cannot open '" + path + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

CsvOptions csv_options(const Config& c) {
  return CsvOptions{c.header, c.row_ids, c.delimiter};
}

SplitOptions split_options(const Config& c) {
  SplitOptions o;
  o.criterion = c.criterion == "product" ? SplitCriterion::Product
                                         : SplitCriterion::AbsoluteSum;
  o.policy = c.swap_policy == "simultaneous" ? SwapPolicy::Simultaneous
                                             : SwapPolicy::SingleBest;
  o.max_iter = c.max_iter;
  return o;
}

json input_digests(const std::vector<std::string>& paths) {
  json out = json::array();
  for (const auto& p : paths) out.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  return out;
}

json envelope(const std::string& command, json parameters, json inputs, json result) {
  return {{"tool", "splithalf"},
          {"version", SPLITHALF_VERSION},
          {"command", command},
          {"parameters", std::move(parameters)},
          {"inputs", std::move(inputs)},
          {"result", std::move(result)}};
}

json csv_parameters(const Config& c) {
  return {{"header", c.header},
          {"row_ids", c.row_ids},
          {"delimiter", std::string(1, c.delimiter)}};
}

json split_parameters(const Config& c) {
  const auto o = split_options(c);
  return {{"criterion", std::string(to_string(o.criterion))},
          {"swap_policy", std::string(to_string(o.policy))},
          {"max_iter", o.max_iter ? json(*o.max_iter) : json("10n")}};
}

// Writes to --output when given, stdout otherwise.
void emit(const Config& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorKind::ShapeError, "cannot write '" + c.output + "'");
  out << text;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> examinee_labels(const ScoreMatrix& m) {
  std::vector<std::string> ids;
  ids.reserve(m.examinees());
  for (std::size_t i = 0; i < m.examinees(); ++i) ids.push_back(m.examinee_label(i));
  return ids;
}

std::string histogram_csv(const ScoreHistograms& h, char d) {
  std::ostringstream out;
  out << "lower" << d << "full" << d << "g" << d << "h\n";
  for (const auto& b : h.bins)
    out << b.lower << d << b.full << d << b.g << d << b.h << "\n";
  return out.str();
}

int run_split(const Config& c) {
  const auto m = load_score_matrix_file(c.input, csv_options(c));
  const auto tau = item_totals(m);
  const auto s = split(tau, split_options(c));
  if (c.format == "csv") {
    const char d = c.delimiter;
    std::ostringstream out;
    out << "row" << d << "g_item" << d << "g_score" << d << "h_item" << d
        << "h_score" << d << "difference\n";
    for (std::size_t r = 0; r < s.assignment.rows(); ++r) {
      const auto g = s.assignment.g_items[r], h = s.assignment.h_items[r];
      out << r + 1 << d << m.item_label(g) << d << tau[g] << d << m.item_label(h)
          << d << tau[h] << d << tau[g] - tau[h] << "\n";
    }
    emit(c, out.str());
    return 0;
  }
  json params = split_parameters(c);
  params["csv"] = csv_parameters(c);
  emit(c, json_text(envelope("split", params, input_digests({c.input}),
                             split_to_json(s, tau, m.item_ids()))));
  return 0;
}

int run_reliability(const Config& c) {
  const auto m = load_score_matrix_file(c.input, csv_options(c));
  const auto a = analyze_test(m, split_options(c));
  const auto hist = score_histograms(a, c.bins);
  if (!c.histogram.empty()) {
    std::ofstream out(c.histogram, std::ios::binary);
    if (!out) throw Error(ErrorKind::ShapeError, "cannot write '" + c.histogram + "'");
    out << histogram_csv(hist, c.delimiter);
  }
  if (c.format == "csv") {
    emit(c, histogram_csv(hist, c.delimiter));
    return 0;
  }
  json params = split_parameters(c);
  params["csv"] = csv_parameters(c);
  params["bin_width"] = c.bins;
  json result = {{"stats", stats_to_json(a.stats)},
                 {"reliability", reliability_to_json(a.reliability)},
                 {"split", split_to_json(a.split, item_totals(m), m.item_ids())},
                 {"histograms", histograms_to_json(hist)}};
  emit(c, json_text(envelope("reliability", params, input_digests({c.input}), result)));
  return 0;
}

int run_truescore(const Config& c) {
  const auto m = load_score_matrix_file(c.input, csv_options(c));
  const auto a = analyze_test(m, split_options(c));
  const bool split_half = c.kind == "split-half";
  if (split_half && !a.reliability.r_gh) {
    throw Error(ErrorKind::ZeroVariance,
                "split-half correlation undefined: a sub-test has zero variance");
  }
  const double r = split_half ? *a.reliability.r_gh : a.reliability.r_tt;
  const auto table = estimate_true_scores(
      a.totals, a.stats, r,
      split_half ? ReliabilityKind::SplitHalf : ReliabilityKind::Classical,
      examinee_labels(m));

  if (c.format == "csv") {
    const char d = c.delimiter;
    std::ostringstream out;
    out << std::setprecision(17);
    out << "examinee" << d << "observed" << d << "estimate" << d << "low" << d
        << "high" << d << "percentile_rank\n";
    for (const auto& row : table.rows)
      out << row.examinee_id << d << row.observed << d << row.estimate << d
          << row.low << d << row.high << d << percentile_rank(table, row.estimate)
          << "\n";
    emit(c, out.str());
    return 0;
  }

  json result = true_scores_to_json(table);
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    result["rows"][i]["percentile_rank"] = percentile_rank(table, table.rows[i].estimate);
  result["bins"] = bins_to_json(table, c.bins);
  result["r_tt"] = a.reliability.r_tt;
  result["r_gh"] = a.reliability.r_gh ? json(*a.reliability.r_gh) : json(nullptr);
  if (a.reliability.r_gh) {
    const auto cmp = compare_estimators(a.totals, a.stats, a.reliability.r_tt,
                                        *a.reliability.r_gh);
    result["estimators_reversed"] = cmp.reversed;
    result["warnings"] = cmp.warnings;
  }
  json params = split_parameters(c);
  params["csv"] = csv_parameters(c);
  params["kind"] = c.kind;
  params["bin_width"] = c.bins;
  emit(c, json_text(envelope("truescore", params, input_digests({c.input}), result)));
  return 0;
}

WeightVector choose_weights(const std::string& method, const CovMatrix& d) {
  if (method == "optimal") return optimal_weights(d);
  if (method == "nonneg") return nonnegative_weights(d);
  if (method == "eigen-cov") return eigen_weights(d, EigenVariant::CovProportional);
  if (method == "eigen-corr") return eigen_weights(d, EigenVariant::CorrScaled);
  return equal_weights(d.size());
}

int run_battery(const Config& c) {
  BatteryInput b;
  json components = json::array();
  for (const auto& path : c.inputs) {
    const auto m = load_score_matrix_file(path, csv_options(c));
    const auto a = analyze_test(m, split_options(c));
    b.tests.push_back({path, a.totals, a.reliability.r_tt});
    components.push_back({{"path", path},
                          {"N", m.examinees()},
                          {"n", m.items()},
                          {"r_tt", a.reliability.r_tt}});
  }
  const auto d = covariance_matrix(b);
  const auto r = b.reliabilities();
  const auto w = choose_weights(c.weights, d);
  const auto rep = weighted_reliability(r, d, w);
  json result = battery_to_json(d, r, summative_reliability(r, d), rep);
  result["components"] = components;

  if (c.format == "csv") {
    const char dl = c.delimiter;
    std::ostringstream out;
    out << std::setprecision(17);
    out << "test" << dl << "r_tt" << dl << "variance" << dl << "weight\n";
    for (std::size_t i = 0; i < b.size(); ++i)
      out << b.tests[i].name << dl << r[i] << dl << d(i, i) << dl << w.w[i] << "\n";
    emit(c, out.str());
    return 0;
  }
  json params = split_parameters(c);
  params["csv"] = csv_parameters(c);
  params["weights"] = c.weights;
  emit(c, json_text(envelope("battery", params, input_digests(c.inputs), result)));
  return 0;
}

json model_json(const SimModel& m) {
  return {{"model", std::string(to_string(m.kind))},
          {"N", m.N},
          {"n", m.n},
          {"seed", m.seed},
          {"generator", std::string(Rng::kAlgorithm)}};
}

int run_simulate(const Config& c) {
  const SimModel model{parse_model_kind(c.model), c.N, c.n, c.seed};
  const auto m = generate(model);
  std::ostringstream csv;
  write_score_matrix(csv, m, csv_options(c));
  emit(c, csv.str());

  std::string sidecar = c.metadata;
  if (sidecar.empty() && !c.output.empty() && c.output != "-") sidecar = c.output + ".json";
  if (!sidecar.empty()) {
    json meta = envelope("simulate", model_json(model), json::array(),
                         {{"sha256", c.output.empty() || c.output == "-"
                                         ? json(nullptr)
                                         : json(sha256_file(c.output))}});
    std::ofstream out(sidecar, std::ios::binary);
    if (!out) throw Error(ErrorKind::ShapeError, "cannot write '" + sidecar + "'");
    out << json_text(meta);
  }
  return 0;
}

std::vector<ScalingSize> parse_sizes(const std::string& text) {
  std::vector<ScalingSize> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      const auto N = std::stoull(item.substr(0, colon));
      const auto n = std::stoull(item.substr(colon + 1));
      sizes.push_back({N, n});
    } catch (const std::exception&) {
      throw Error(ErrorKind::DomainViolation,
                  "size '" + item + "' is not of the form N:n");
    }
  }
  return sizes;
}

int run_scale(const Config& c) {
  const auto kind = parse_model_kind(c.model);
  const auto rows = scaling_suite(parse_sizes(c.sizes), kind, c.seed, split_options(c));
  if (c.format == "csv") {
    const char d = c.delimiter;
    std::ostringstream out;
    out << std::setprecision(17);
    out << "N" << d << "n" << d << "r_tt" << d << "abs_S" << d << "iterations" << d
        << "generate_seconds" << d << "split_seconds" << d << "analysis_seconds\n";
    for (const auto& r : rows)
      out << r.N << d << r.n << d << r.r_tt << d << r.abs_S << d << r.iterations << d
          << r.generate_seconds << d << r.split_seconds << d << r.analysis_seconds
          << "\n";
    emit(c, out.str());
    return 0;
  }
  json table = json::array();
  for (const auto& r : rows)
    table.push_back({{"N", r.N},
                     {"n", r.n},
                     {"r_tt", r.r_tt},
                     {"abs_S", r.abs_S},
                     {"iterations", r.iterations},
                     {"generate_seconds", r.generate_seconds},
                     {"split_seconds", r.split_seconds},
                     {"analysis_seconds", r.analysis_seconds}});
  json params = split_parameters(c);
  params["model"] = std::string(to_string(kind));
  params["seed"] = c.seed;
  params["sizes"] = c.sizes;
  params["generator"] = std::string(Rng::kAlgorithm);
  emit(c, json_text(envelope("scale", params, json::array(), {{"rows", table}})));
  return 0;
}

void add_csv_flags(CLI::App* app, Config& c) {
  app->add_flag("--header", c.header, "First line holds item ids");
  app->add_flag("--row-ids", c.row_ids, "First column holds examinee ids");
  app->add_option("--delimiter", c.delimiter, "Field delimiter");
}

void add_split_flags(CLI::App* app, Config& c) {
  app->add_option("--criterion", c.criterion, "Split criterion")
      ->check(CLI::IsMember({"abs", "product"}));
  app->add_option("--swap-policy", c.swap_policy, "Row swap policy")
      ->check(CLI::IsMember({"single", "simultaneous"}));
  app->add_option("--max-iter", c.max_iter, "Refinement iteration cap (default 10n)");
}

void add_output_flags(CLI::App* app, Config& c) {
  app->add_option("-o,--output", c.output, "Output path (default stdout)");
  app->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-half reliability toolkit"};
  app.set_version_flag("--version", SPLITHALF_VERSION);
  app.require_subcommand(1);
  Config c;

  auto* split_cmd = app.add_subcommand("split", "Split a test into two halves");
  split_cmd->add_option("-i,--input", c.input, "Score matrix CSV")->required();
  add_split_flags(split_cmd, c);
  add_csv_flags(split_cmd, c);
  add_output_flags(split_cmd, c);

  auto* rel_cmd = app.add_subcommand("reliability", "Split-half reliability report");
  rel_cmd->add_option("-i,--input", c.input, "Score matrix CSV")->required();
  rel_cmd->add_option("--bins", c.bins, "Histogram bin width")->check(CLI::PositiveNumber);
  rel_cmd->add_option("--histogram", c.histogram, "Also write histogram counts as CSV");
  add_split_flags(rel_cmd, c);
  add_csv_flags(rel_cmd, c);
  add_output_flags(rel_cmd, c);

  auto* ts_cmd = app.add_subcommand("truescore", "Estimate true scores");
  ts_cmd->add_option("-i,--input", c.input, "Score matrix CSV")->required();
  ts_cmd->add_option("--kind", c.kind, "Reliability used by the estimator")
      ->check(CLI::IsMember({"classical", "split-half"}));
  ts_cmd->add_option("--bins", c.bins, "Estimate bin width")->check(CLI::PositiveNumber);
  add_split_flags(ts_cmd, c);
  add_csv_flags(ts_cmd, c);
  add_output_flags(ts_cmd, c);

  auto* bat_cmd = app.add_subcommand("battery", "Reliability of a test battery");
  bat_cmd->add_option("--inputs", c.inputs, "One score matrix CSV per component test")
      ->required();
  bat_cmd->add_option("--weights", c.weights, "Weighting scheme")
      ->check(CLI::IsMember({"optimal", "nonneg", "eigen-cov", "eigen-corr", "equal"}));
  add_split_flags(bat_cmd, c);
  add_csv_flags(bat_cmd, c);
  add_output_flags(bat_cmd, c);

  auto* sim_cmd = app.add_subcommand("simulate", "Generate a Bernoulli score matrix");
  sim_cmd->add_option("--model", c.model, "D1, D2, D3 or D4");
  sim_cmd->add_option("--N", c.N, "Examinees");
  sim_cmd->add_option("--n", c.n, "Items");
  sim_cmd->add_option("--seed", c.seed, "Random seed");
  sim_cmd->add_option("-o,--output", c.output, "Matrix CSV path (default stdout)");
  sim_cmd->add_option("--metadata", c.metadata,
                      "Metadata sidecar path (default <output>.json)");
  add_csv_flags(sim_cmd, c);

  auto* scale_cmd = app.add_subcommand("scale", "Timing and reliability over sizes");
  scale_cmd->add_option("--sizes", c.sizes, "Comma-separated N:n pairs");
  scale_cmd->add_option("--model", c.model, "D1, D2, D3 or D4");
  scale_cmd->add_option("--seed", c.seed, "Random seed");
  add_split_flags(scale_cmd, c);
  add_output_flags(scale_cmd, c);
  scale_cmd->add_option("--delimiter", c.delimiter, "CSV field delimiter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*split_cmd) return run_split(c);
    if (*rel_cmd) return run_reliability(c);
    if (*ts_cmd) return run_truescore(c);
    if (*bat_cmd) return run_battery(c);
    if (*sim_cmd) return run_simulate(c);
    if (*scale_cmd) return run_scale(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return is_validation_error(e.kind()) ? kExitValidation : kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

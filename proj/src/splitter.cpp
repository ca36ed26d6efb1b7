#include "splithalf/splitter.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "splithalf/errors.hpp"

namespace splithalf {

std::string_view to_string(SplitCriterion c) {
  return c == SplitCriterion::AbsoluteSum ? "abs_S" : "product";
}

std::string_view to_string(SwapPolicy p) {
  return p == SwapPolicy::SingleBest ? "single" : "simultaneous";
}

UInt128 SplitResult::product() const {
  const auto abs_sq = static_cast<UInt128>(S_sq < 0 ? -S_sq : S_sq);
  return static_cast<UInt128>(abs_S) * abs_sq;
}

namespace {

void validate(const Assignment& a, const ItemScores& tau) {
  const std::size_t n = tau.size();
  if (a.g_items.size() != a.h_items.size()) {
    throw Error(ErrorKind::ShapeError, "sub-tests have unequal item counts");
  }
  std::vector<bool> seen(n, false);
  auto mark = [&](std::size_t j) {
    if (j >= n) {
      throw Error(ErrorKind::ShapeError,
                  "item index " + std::to_string(j + 1) + " out of range");
    }
    if (seen[j]) {
      throw Error(ErrorKind::ShapeError,
                  "item " + std::to_string(j + 1) + " assigned twice");
    }
    seen[j] = true;
  };
  for (auto j : a.g_items) mark(j);
  for (auto j : a.h_items) mark(j);
  if (a.dropped_item) mark(*a.dropped_item);
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::ShapeError, "assignment does not cover every item");
  }
}

std::int64_t column_sum(const std::vector<std::size_t>& items,
                        const ItemScores& tau) {
  std::int64_t s = 0;
  for (auto j : items) s += tau[j];
  return s;
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

UInt128 product_of(std::int64_t s, std::int64_t s_sq) {
  return static_cast<UInt128>(abs64(s)) *
         static_cast<UInt128>(abs64(s_sq));
}

double criterion_value(const SplitResult& r) {
  return r.criterion == SplitCriterion::AbsoluteSum
             ? static_cast<double>(r.abs_S)
             : static_cast<double>(r.product());
}

}  // namespace

SplitResult evaluate_assignment(const Assignment& a, const ItemScores& tau,
                                SplitCriterion criterion) {
  validate(a, tau);
  SplitResult r;
  r.assignment = a;
  r.criterion = criterion;
  std::int64_t sq_g = 0;
  std::int64_t sq_h = 0;
  for (auto j : a.g_items) {
    r.sum_g += tau[j];
    sq_g += tau[j] * tau[j];
  }
  for (auto j : a.h_items) {
    r.sum_h += tau[j];
    sq_h += tau[j] * tau[j];
  }
  r.S = r.sum_g - r.sum_h;
  r.abs_S = abs64(r.S);
  r.S_sq = sq_g - sq_h;
  r.history = {criterion_value(r)};
  return r;
}

Assignment seed_allocation(const ItemScores& tau) {
  const std::size_t n = tau.size();
  if (n < 2) {
    throw Error(ErrorKind::TooSmall, "splitting needs at least 2 items");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tau[a] > tau[b]; });

  Assignment out;
  if (n % 2 == 1) {
    out.dropped_item = order.back();
    order.pop_back();
  }
  const std::size_t rows = order.size() / 2;
  out.g_items.reserve(rows);
  out.h_items.reserve(rows);
  for (std::size_t p = 0; p < rows; ++p) {
    const auto first = order[2 * p];
    const auto second = order[2 * p + 1];
    if (p % 2 == 0) {
      out.g_items.push_back(first);
      out.h_items.push_back(second);
    } else {
      out.h_items.push_back(first);
      out.g_items.push_back(second);
    }
  }
  return out;
}

SplitResult swap_refine(const Assignment& a, const ItemScores& tau,
                        std::size_t max_iter, SwapPolicy policy) {
  SplitResult result = evaluate_assignment(a, tau);
  Assignment& cur = result.assignment;
  const std::size_t rows = cur.rows();

  auto current_gap = [&] {
    return abs64(column_sum(cur.g_items, tau) - column_sum(cur.h_items, tau));
  };

  std::vector<std::size_t> improving;
  while (result.iterations < max_iter && result.abs_S != 0) {
    improving.clear();
    std::int64_t best_gap = result.abs_S;
    std::optional<std::size_t> best_row;
    for (std::size_t r = 0; r < rows; ++r) {
      std::swap(cur.g_items[r], cur.h_items[r]);
      const auto gap = current_gap();
      std::swap(cur.g_items[r], cur.h_items[r]);
      if (gap < result.abs_S) improving.push_back(r);
      if (gap < best_gap) {
        best_gap = gap;
        best_row = r;
      }
    }
    if (!best_row) break;

    bool applied = false;
    if (policy == SwapPolicy::Simultaneous && improving.size() > 1) {
      for (auto r : improving) std::swap(cur.g_items[r], cur.h_items[r]);
      if (current_gap() < result.abs_S) {
        applied = true;
      } else {
        for (auto r : improving) std::swap(cur.g_items[r], cur.h_items[r]);
      }
    }
    if (!applied) std::swap(cur.g_items[*best_row], cur.h_items[*best_row]);

    auto history = std::move(result.history);
    const auto iterations = result.iterations + 1;
    result = evaluate_assignment(cur, tau);
    result.iterations = iterations;
    history.push_back(static_cast<double>(result.abs_S));
    result.history = std::move(history);
  }
  return result;
}

SplitResult product_refine(const Assignment& a, const ItemScores& tau,
                           std::size_t max_iter) {
  SplitResult result = evaluate_assignment(a, tau, SplitCriterion::Product);
  Assignment& cur = result.assignment;
  const std::size_t rows = cur.rows();

  while (result.iterations < max_iter && result.product() != 0) {
    auto best = result.product();
    std::optional<std::pair<std::size_t, std::size_t>> best_pair;
    for (std::size_t r1 = 0; r1 < rows; ++r1) {
      const std::int64_t tg = tau[cur.g_items[r1]];
      for (std::size_t r2 = 0; r2 < rows; ++r2) {
        const std::int64_t th = tau[cur.h_items[r2]];
        const auto s = result.S - 2 * (tg - th);
        const auto s_sq = result.S_sq - 2 * (tg * tg - th * th);
        const auto p = product_of(s, s_sq);
        if (p < best) {
          best = p;
          best_pair = {r1, r2};
        }
      }
    }
    if (!best_pair) break;
    std::swap(cur.g_items[best_pair->first], cur.h_items[best_pair->second]);

    auto history = std::move(result.history);
    const auto iterations = result.iterations + 1;
    result = evaluate_assignment(cur, tau, SplitCriterion::Product);
    result.iterations = iterations;
    history.push_back(static_cast<double>(result.product()));
    result.history = std::move(history);
  }
  return result;
}

SplitResult split(const ItemScores& tau, const SplitOptions& options) {
  const auto seed = seed_allocation(tau);
  const std::size_t max_iter = options.max_iter.value_or(10 * tau.size());
  if (options.criterion == SplitCriterion::Product) {
    return product_refine(seed, tau, max_iter);
  }
  return swap_refine(seed, tau, max_iter, options.policy);
}

SplitResult split(const ScoreMatrix& m, const SplitOptions& options) {
  return split(item_totals(m), options);
}

SplitResult brute_force_split(const ItemScores& tau) {
  const std::size_t n = tau.size();
  if (n < 2 || n % 2 != 0 || n > kBruteForceMaxItems) {
    throw Error(ErrorKind::Unsupported,
                "exhaustive split needs an even item count in [2, " +
                    std::to_string(kBruteForceMaxItems) + "], got " +
                    std::to_string(n));
  }
  const std::size_t half = n / 2;
  const std::int64_t total = std::accumulate(tau.totals.begin(),
                                             tau.totals.end(), std::int64_t{0});

  // Combinations of size n/2 in lexicographic order; the set holding item 0
  // is always the lexicographically smaller side of a bipartition.
  std::vector<std::size_t> comb(half);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  std::vector<std::size_t> best_comb = comb;
  std::int64_t best_gap = -1;
  while (comb[0] == 0) {
    std::int64_t sum = 0;
    for (auto j : comb) sum += tau[j];
    const auto gap = abs64(2 * sum - total);
    if (best_gap < 0 || gap < best_gap) {
      best_gap = gap;
      best_comb = comb;
      if (gap == 0) break;
    }
    std::size_t k = half;
    while (k > 0 && comb[k - 1] == n - half + (k - 1)) --k;
    if (k == 0) break;
    ++comb[k - 1];
    for (std::size_t m = k; m < half; ++m) comb[m] = comb[m - 1] + 1;
  }

  Assignment a;
  a.g_items = best_comb;
  std::vector<bool> in_g(n, false);
  for (auto j : best_comb) in_g[j] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!in_g[j]) a.h_items.push_back(j);
  return evaluate_assignment(a, tau);
}

}  // namespace splithalf

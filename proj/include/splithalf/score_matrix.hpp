#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace splithalf {

/// Dichotomously scored administration record: one row per examinee, one
/// column per item, every entry 0 or 1. Immutable once constructed.
class ScoreMatrix {
 public:
  /// `entries` is row-major with `examinees * items` cells. Throws
  /// DomainViolation for a non-binary cell, ShapeError for a size or id
  /// mismatch and TooSmall when either dimension is below 2.
  ScoreMatrix(std::size_t examinees, std::size_t items,
              std::vector<std::uint8_t> entries,
              std::vector<std::string> examinee_ids = {},
              std::vector<std::string> item_ids = {});

  std::size_t examinees() const noexcept { return examinees_; }
  std::size_t items() const noexcept { return items_; }

  std::uint8_t operator()(std::size_t examinee, std::size_t item) const {
    return entries_[examinee * items_ + item];
  }

  std::span<const std::uint8_t> row(std::size_t examinee) const {
    return {entries_.data() + examinee * items_, items_};
  }

  std::span<const std::uint8_t> entries() const noexcept { return entries_; }

  const std::vector<std::string>& examinee_ids() const noexcept {
    return examinee_ids_;
  }
  const std::vector<std::string>& item_ids() const noexcept {
    return item_ids_;
  }

  /// Label for examinee `i`: its id when present, else the 1-based index.
  std::string examinee_label(std::size_t i) const;
  std::string item_label(std::size_t j) const;

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

 private:
  std::size_t examinees_;
  std::size_t items_;
  std::vector<std::uint8_t> entries_;
  std::vector<std::string> examinee_ids_;
  std::vector<std::string> item_ids_;
};

/// Per-item count of correct responses.
struct ItemScores {
  std::vector<std::int64_t> totals;

  std::size_t size() const noexcept { return totals.size(); }
  std::int64_t operator[](std::size_t j) const { return totals[j]; }
};

/// Per-examinee observed test score.
struct ExamineeScores {
  std::vector<std::int64_t> totals;

  std::size_t size() const noexcept { return totals.size(); }
  std::int64_t operator[](std::size_t i) const { return totals[i]; }
};

ItemScores item_totals(const ScoreMatrix& m);
ExamineeScores examinee_totals(const ScoreMatrix& m);

/// Scores restricted to a subset of items.
ExamineeScores examinee_totals(const ScoreMatrix& m,
                               std::span<const std::size_t> items);

struct CsvOptions {
  bool has_header = false;
  /// First column carries examinee ids instead of a score.
  bool has_row_ids = false;
  char delimiter = ',';
};

/// Parses a delimited 0/1 table. Cells are whitespace-trimmed and must be
/// exactly "0" or "1"; blank lines are skipped. Errors carry 1-based
/// row/column positions counted over data rows and score columns.
ScoreMatrix load_score_matrix(std::istream& in, const CsvOptions& options = {});
ScoreMatrix load_score_matrix_file(const std::string& path,
                                   const CsvOptions& options = {});

/// Writes a table readable by load_score_matrix with the same options. The
/// header row is written only when `options.has_header` is set; missing
/// item ids fall back to "item<j>".
void write_score_matrix(std::ostream& out, const ScoreMatrix& m,
                        const CsvOptions& options = {});

}  // namespace splithalf

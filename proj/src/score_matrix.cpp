#include "splithalf/score_matrix.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "splithalf/errors.hpp"

namespace splithalf {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

}  // namespace

ScoreMatrix::ScoreMatrix(std::size_t examinees, std::size_t items,
                         std::vector<std::uint8_t> entries,
                         std::vector<std::string> examinee_ids,
                         std::vector<std::string> item_ids)
    : examinees_(examinees),
      items_(items),
      entries_(std::move(entries)),
      examinee_ids_(std::move(examinee_ids)),
      item_ids_(std::move(item_ids)) {
  if (examinees_ < 2 || items_ < 2) {
    throw Error(ErrorKind::TooSmall,
                "score matrix needs at least 2 examinees and 2 items, got " +
                    std::to_string(examinees_) + "x" + std::to_string(items_));
  }
  if (entries_.size() != examinees_ * items_) {
    throw Error(ErrorKind::ShapeError, "entry count " +
                                           std::to_string(entries_.size()) +
                                           " does not match " +
                                           std::to_string(examinees_) + "x" +
                                           std::to_string(items_));
  }
  if (!examinee_ids_.empty() && examinee_ids_.size() != examinees_) {
    throw Error(ErrorKind::ShapeError, "examinee id count mismatch");
  }
  if (!item_ids_.empty() && item_ids_.size() != items_) {
    throw Error(ErrorKind::ShapeError, "item id count mismatch");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k] > 1) {
      throw Error(ErrorKind::DomainViolation,
                  "non-binary score at row " + std::to_string(k / items_ + 1) +
                      ", column " + std::to_string(k % items_ + 1));
    }
  }
}

std::string ScoreMatrix::examinee_label(std::size_t i) const {
  return examinee_ids_.empty() ? std::to_string(i + 1) : examinee_ids_[i];
}

std::string ScoreMatrix::item_label(std::size_t j) const {
  return item_ids_.empty() ? std::to_string(j + 1) : item_ids_[j];
}

ItemScores item_totals(const ScoreMatrix& m) {
  ItemScores out{std::vector<std::int64_t>(m.items(), 0)};
  for (std::size_t i = 0; i < m.examinees(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out.totals[j] += row[j];
  }
  return out;
}

ExamineeScores examinee_totals(const ScoreMatrix& m) {
  ExamineeScores out{std::vector<std::int64_t>(m.examinees(), 0)};
  for (std::size_t i = 0; i < m.examinees(); ++i) {
    std::int64_t sum = 0;
    for (auto v : m.row(i)) sum += v;
    out.totals[i] = sum;
  }
  return out;
}

ExamineeScores examinee_totals(const ScoreMatrix& m,
                               std::span<const std::size_t> items) {
  ExamineeScores out{std::vector<std::int64_t>(m.examinees(), 0)};
  for (std::size_t i = 0; i < m.examinees(); ++i) {
    const auto row = m.row(i);
    std::int64_t sum = 0;
    for (auto j : items) sum += row[j];
    out.totals[i] = sum;
  }
  return out;
}

ScoreMatrix load_score_matrix(std::istream& in, const CsvOptions& options) {
  std::vector<std::uint8_t> entries;
  std::vector<std::string> examinee_ids;
  std::vector<std::string> item_ids;
  std::size_t items = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = options.has_header;
  const std::size_t skip = options.has_row_ids ? 1 : 0;

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_cells(line, options.delimiter);

    if (header_pending) {
      header_pending = false;
      if (cells.size() <= skip) {
        throw Error(ErrorKind::ShapeError, "header on line " +
                                               std::to_string(line_no) +
                                               " has no item columns");
      }
      for (std::size_t c = skip; c < cells.size(); ++c)
        item_ids.emplace_back(cells[c]);
      items = item_ids.size();
      continue;
    }

    if (cells.size() <= skip) {
      throw Error(ErrorKind::ShapeError,
                  "line " + std::to_string(line_no) + " has no score columns");
    }
    const std::size_t width = cells.size() - skip;
    if (items == 0) items = width;
    if (width != items) {
      throw Error(ErrorKind::ShapeError,
                  "ragged row " + std::to_string(rows + 1) + " (line " +
                      std::to_string(line_no) + "): expected " +
                      std::to_string(items) + " columns, got " +
                      std::to_string(width));
    }
    if (options.has_row_ids) examinee_ids.emplace_back(cells[0]);
    for (std::size_t c = skip; c < cells.size(); ++c) {
      const auto cell = cells[c];
      if (cell != "0" && cell != "1") {
        throw Error(ErrorKind::DomainViolation,
                    "non-binary score '" + std::string(cell) + "' at row " +
                        std::to_string(rows + 1) + ", column " +
                        std::to_string(c - skip + 1) + " (line " +
                        std::to_string(line_no) + ")");
      }
      entries.push_back(cell == "1" ? 1 : 0);
    }
    ++rows;
  }

  if (rows < 2 || items < 2) {
    throw Error(ErrorKind::TooSmall,
                "score table needs at least 2 examinees and 2 items, got " +
                    std::to_string(rows) + "x" + std::to_string(items));
  }
  return ScoreMatrix(rows, items, std::move(entries), std::move(examinee_ids),
                     std::move(item_ids));
}

ScoreMatrix load_score_matrix_file(const std::string& path,
                                   const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ShapeError, "cannot open score file '" + path + "'");
  }
  try {
    return load_score_matrix(in, options);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void write_score_matrix(std::ostream& out, const ScoreMatrix& m,
                        const CsvOptions& options) {
  const char d = options.delimiter;
  if (options.has_header) {
    if (options.has_row_ids) out << "id" << d;
    for (std::size_t j = 0; j < m.items(); ++j) {
      if (j) out << d;
      out << (m.item_ids().empty() ? "item" + std::to_string(j + 1)
                                   : m.item_ids()[j]);
    }
    out << '\n';
  }
  std::string buf;
  for (std::size_t i = 0; i < m.examinees(); ++i) {
    buf.clear();
    if (options.has_row_ids) {
      buf += m.examinee_label(i);
      buf += d;
    }
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) buf += d;
      buf += static_cast<char>('0' + row[j]);
    }
    buf += '\n';
    out << buf;
  }
}

}  // namespace splithalf

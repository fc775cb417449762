#include "pls/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pls::ingest {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

bool parse_cell(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin || !std::isfinite(out)) {
    return false;
  }
  while (*end == ' ' || *end == '\r' || *end == '\t') {
    ++end;
  }
  return *end == '\0';
}

}  // namespace

RawTable load_csv(const std::string& path, const std::string& response_column) {
  std::ifstream file(path);
  if (!file) {
    throw MissingFile("load_csv: cannot open " + path);
  }
  std::string line;
  if (!std::getline(file, line)) {
    throw EmptyTable("load_csv: empty file " + path);
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  std::vector<std::string> header = split_csv_line(line);
  const auto response_it = std::find(header.begin(), header.end(), response_column);
  if (response_it == header.end()) {
    throw MissingColumn("load_csv: no column named '" + response_column + "' in " + path);
  }
  const size_t response_idx = static_cast<size_t>(response_it - header.begin());
  const size_t width = header.size();

  std::vector<std::vector<double>> rows;
  int dropped = 0;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != width) {
      ++dropped;
      continue;
    }
    std::vector<double> row(width);
    bool ok = true;
    for (size_t j = 0; j < width; ++j) {
      if (!parse_cell(cells[j], row[j])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++dropped;
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw EmptyTable("load_csv: no valid data rows in " + path);
  }

  RawTable table;
  table.response_column = response_column;
  table.dropped_rows = dropped;
  for (size_t j = 0; j < width; ++j) {
    if (j != response_idx) {
      table.header.push_back(header[j]);
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(width - 1);
  table.features.resize(n, d);
  table.response.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index col = 0;
    for (size_t j = 0; j < width; ++j) {
      if (j == response_idx) {
        table.response(i) = rows[static_cast<size_t>(i)][j];
      } else {
        table.features(i, col++) = rows[static_cast<size_t>(i)][j];
      }
    }
  }
  return table;
}

model::Dataset preprocess(const RawTable& table, std::optional<double> drop_response_at_or_above) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < table.response.size(); ++i) {
    if (!drop_response_at_or_above || table.response(i) < *drop_response_at_or_above) {
      keep.push_back(i);
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index d = table.features.cols();
  if (n < d + 2) {
    throw EmptyTable("preprocess: fewer than D + 2 rows after filtering");
  }
  Matrix x(n, d);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = table.features.row(keep[static_cast<size_t>(i)]);
    y(i) = table.response(keep[static_cast<size_t>(i)]);
  }

  x.rowwise() -= x.colwise().mean();
  y.array() -= y.mean();

  Vector scales(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var = x.col(j).squaredNorm() / static_cast<double>(n - 1);
    if (var <= 0.0) {
      throw DegenerateColumn("preprocess: zero-variance column '" +
                             table.header[static_cast<size_t>(j)] + "'");
    }
    scales(j) = std::sqrt(var);
    x.col(j) /= scales(j);
  }
  return model::Dataset{std::move(x), std::move(y), true, scales};
}

}  // namespace pls::ingest

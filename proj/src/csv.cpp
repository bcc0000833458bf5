#include "hindep/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace hindep {

namespace {

bool parse_cell(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (*(last - 1) == ' ' || *(last - 1) == '\t' || *(last - 1) == '\r'))
    --last;
  if (first == last) return false;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Eigen::MatrixXd load_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const std::vector<std::string> cells = split_line(line);
    std::vector<double> row(cells.size());
    bool ok = true;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_cell(cells[c], row[c])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      if (rows.empty() && line_no == 1) continue;  // header row
      throw parse_error(path + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw parse_error(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(width) + " columns, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error(path + ": no data rows");

  Eigen::MatrixXd m(static_cast<int>(rows.size()), static_cast<int>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c) m(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  return m;
}

PairedDataset load_csv_pair(const std::string& path_x, const std::string& path_y) {
  Eigen::MatrixXd x = load_csv_matrix(path_x);
  Eigen::MatrixXd y = load_csv_matrix(path_y);
  if (x.rows() != y.rows())
    throw parse_error("row counts differ: " + path_x + " has " + std::to_string(x.rows()) +
                      ", " + path_y + " has " + std::to_string(y.rows()));
  if (x.cols() != y.cols())
    throw parse_error("column counts differ: " + path_x + " has " + std::to_string(x.cols()) +
                      ", " + path_y + " has " + std::to_string(y.cols()));
  const int d = static_cast<int>(x.cols());
  return PairedDataset::create(std::move(x), std::move(y), SampleGrid::uniform(d));
}

void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  char buf[64];
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << buf;
      if (c + 1 < m.cols()) out << ',';
    }
    out << '\n';
  }
  if (!out) throw io_error("write failed for " + path);
}

}  // namespace hindep

#pragma once

#include <string>

#include <Eigen/Core>

#include "hindep/grid.hpp"

namespace hindep {

// Reads a numeric CSV (rows = samples, columns = grid points). A single
// leading header row is skipped when its cells do not parse as numbers.
Eigen::MatrixXd load_csv_matrix(const std::string& path);

// Two matrices with matching shapes become a paired dataset on the
// equispaced [0,1] grid implied by the column count.
PairedDataset load_csv_pair(const std::string& path_x, const std::string& path_y);

// Round-trip safe: values are written with enough digits to reparse exactly.
void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace hindep

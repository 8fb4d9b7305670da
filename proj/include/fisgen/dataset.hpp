#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fisgen/errors.hpp"

namespace fisgen {

/// Tabular numeric data with named columns and designated predictor/target
/// columns. Rectangular, all cells finite.
struct Dataset {
  std::vector<std::string> column_names;
  Eigen::MatrixXd rows;  // n x c
  std::vector<std::string> row_ids;  // optional, empty when absent

  std::vector<std::string> predictors;
  std::string target;  // empty when no target column was designated

  int column_index(const std::string& name) const;
  Eigen::VectorXd column(const std::string& name) const;
  /// Predictor columns followed by the target column, the layout the
  /// clustering and inference operations expect.
  Eigen::MatrixXd variable_matrix() const;
};

/// Parses a comma-separated numeric file with a header row, checking the
/// designated columns exist. Pass an empty target to load predictor-only
/// data (e.g. for prediction without actuals).
Dataset load_dataset(const std::string& path,
                     const std::vector<std::string>& predictors,
                     const std::string& target);

/// Writes the dataset as CSV with round-trip precision.
void write_dataset_csv(const Dataset& dataset, std::ostream& out);
void save_dataset(const Dataset& dataset, const std::string& path);

/// Specification for the synthetic stand-in data: rows are drawn around the
/// given centers (row i uses center i mod center count) with seeded Gaussian
/// noise of sigma = noise * column range. Centers monotone in every column
/// give the correlated predictor/target structure of interest.
struct SyntheticSpec {
  int n = 70;
  std::vector<std::string> column_names = {"Attrib", "Nonmenu", "Size"};
  Eigen::MatrixXd centers;  // center count x column count
  double noise = 0.12;
  std::uint64_t seed = 7;
};

/// The spec behind the bundled demo dataset (data/synthetic.csv).
SyntheticSpec default_synthetic_spec();

Dataset generate_synthetic(const SyntheticSpec& spec);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<16 hex digits>".
std::string file_digest(const std::string& path);

}  // namespace fisgen

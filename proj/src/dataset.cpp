#include "fisgen/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "fisgen/csv.hpp"
#include "fisgen/random.hpp"

namespace fisgen {

int Dataset::column_index(const std::string& name) const {
  const auto found = std::find(column_names.begin(), column_names.end(), name);
  if (found == column_names.end())
    throw MissingColumn("missing column: " + name);
  return static_cast<int>(found - column_names.begin());
}

Eigen::VectorXd Dataset::column(const std::string& name) const {
  return rows.col(column_index(name));
}

Eigen::MatrixXd Dataset::variable_matrix() const {
  if (target.empty()) throw MissingColumn("no target column designated");
  Eigen::MatrixXd variables(rows.rows(), predictors.size() + 1);
  for (std::size_t v = 0; v < predictors.size(); ++v)
    variables.col(v) = rows.col(column_index(predictors[v]));
  variables.col(predictors.size()) = rows.col(column_index(target));
  return variables;
}

Dataset load_dataset(const std::string& path,
                     const std::vector<std::string>& predictors,
                     const std::string& target) {
  std::ifstream file(path);
  if (!file) throw EmptyFile("cannot open file: " + path);

  const std::vector<std::vector<std::string>> records = read_csv(file);
  if (records.empty()) throw EmptyFile("empty file: " + path);
  if (records.size() < 2) throw EmptyFile("no data rows after header: " + path);

  Dataset dataset;
  dataset.column_names = records[0];
  {
    std::unordered_set<std::string> seen;
    for (const std::string& name : dataset.column_names)
      if (!seen.insert(name).second)
        throw DataError("duplicate column name: " + name);
  }
  dataset.predictors = predictors;
  dataset.target = target;
  for (const std::string& name : predictors) dataset.column_index(name);
  if (!target.empty()) dataset.column_index(target);

  const std::size_t width = dataset.column_names.size();
  const std::size_t n = records.size() - 1;
  dataset.rows.resize(n, width);
  for (std::size_t r = 0; r < n; ++r) {
    const std::vector<std::string>& record = records[r + 1];
    if (record.size() != width) {
      std::ostringstream msg;
      msg << "row " << r + 1 << " has " << record.size() << " fields, expected "
          << width;
      throw RaggedRow(msg.str());
    }
    for (std::size_t c = 0; c < width; ++c) {
      double value;
      if (!parse_double(record[c], value)) {
        std::ostringstream msg;
        msg << "non-numeric cell at row " << r + 1 << ", column '"
            << dataset.column_names[c] << "'";
        throw NonNumericCell(msg.str());
      }
      dataset.rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          value;
    }
  }
  return dataset;
}

void write_dataset_csv(const Dataset& dataset, std::ostream& out) {
  write_csv_row(out, dataset.column_names);
  for (Eigen::Index r = 0; r < dataset.rows.rows(); ++r) {
    std::vector<std::string> fields;
    fields.reserve(dataset.rows.cols());
    for (Eigen::Index c = 0; c < dataset.rows.cols(); ++c) {
      std::ostringstream cell;
      cell << std::setprecision(17) << dataset.rows(r, c);
      fields.push_back(cell.str());
    }
    write_csv_row(out, fields);
  }
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw EmptyFile("cannot write file: " + path);
  write_dataset_csv(dataset, file);
}

SyntheticSpec default_synthetic_spec() {
  SyntheticSpec spec;
  spec.n = 70;
  spec.noise = 0.12;
  spec.seed = 7;
  spec.centers.resize(7, 3);
  // Monotone in every column: larger specifications produce larger systems.
  spec.centers << 12, 6, 250,
                  22, 10, 480,
                  32, 15, 760,
                  45, 21, 1100,
                  58, 28, 1500,
                  72, 36, 1980,
                  88, 45, 2550;
  return spec;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1) throw InvalidSpec("generate_synthetic: n must be >= 1");
  if (spec.centers.rows() < 1)
    throw InvalidSpec("generate_synthetic: at least one center required");
  if (static_cast<std::size_t>(spec.centers.cols()) != spec.column_names.size())
    throw InvalidSpec("generate_synthetic: center width != column count");
  if (!spec.centers.allFinite() || !(spec.noise >= 0.0))
    throw InvalidSpec("generate_synthetic: non-finite centers or negative noise");

  const Eigen::Index k = spec.centers.rows();
  const Eigen::Index d = spec.centers.cols();
  Eigen::VectorXd sigma(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const double range =
        spec.centers.col(c).maxCoeff() - spec.centers.col(c).minCoeff();
    sigma(c) = spec.noise * (range > 0.0 ? range : 1.0);
  }

  Dataset dataset;
  dataset.column_names = spec.column_names;
  dataset.rows.resize(spec.n, d);
  Rng rng(spec.seed);
  for (int i = 0; i < spec.n; ++i) {
    const Eigen::Index center = i % k;
    for (Eigen::Index c = 0; c < d; ++c)
      dataset.rows(i, c) = spec.centers(center, c) + sigma(c) * gaussian(rng);
  }
  if (d >= 2) {
    dataset.predictors.assign(spec.column_names.begin(),
                              spec.column_names.end() - 1);
    dataset.target = spec.column_names.back();
  }
  return dataset;
}

std::string file_digest(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw EmptyFile("cannot open file: " + path);
  std::uint64_t hash = 0xCBF29CE484222325ull;
  char byte;
  while (file.get(byte)) {
    hash ^= static_cast<unsigned char>(byte);
    hash *= 0x100000001B3ull;
  }
  std::ostringstream digest;
  digest << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
  return digest.str();
}

}  // namespace fisgen

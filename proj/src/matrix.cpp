#include "embalign/matrix.hpp"

#include <cmath>

namespace embalign {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw Error("matrix: expected " + std::to_string(rows_ * cols_) + " values, got " +
                std::to_string(values_.size()));
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error("matrix: ragged rows");
    values.insert(values.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(values));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

EmbeddingMatrix::EmbeddingMatrix(Matrix values) : m_(std::move(values)) {
  if (m_.rows() == 0 || m_.cols() == 0) {
    throw Error("embedding matrix must have at least one row and one column");
  }
  for (double v : m_.values()) {
    if (!std::isfinite(v)) throw Error("embedding matrix contains a non-finite value");
  }
}

SimilarityMatrix::SimilarityMatrix(Matrix values) : m_(std::move(values)) {
  for (double v : m_.values()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error("similarity matrix entry outside [0,1]: " + std::to_string(v));
    }
  }
}

}  // namespace embalign

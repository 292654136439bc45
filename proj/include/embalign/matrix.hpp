#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace embalign {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }

  const std::vector<double>& values() const { return values_; }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// One embedding vector per token. At least one row and one column, all
/// values finite.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  explicit EmbeddingMatrix(Matrix values);
  EmbeddingMatrix(std::size_t rows, std::size_t dim, std::vector<double> values)
      : EmbeddingMatrix(Matrix(rows, dim, std::move(values))) {}

  std::size_t rows() const { return m_.rows(); }
  std::size_t dim() const { return m_.cols(); }
  double operator()(std::size_t i, std::size_t k) const { return m_(i, k); }
  std::span<const double> row(std::size_t i) const { return m_.row(i); }
  const Matrix& matrix() const { return m_; }

  bool operator==(const EmbeddingMatrix&) const = default;

 private:
  Matrix m_;
};

/// l_e x l_f matrix of similarities, every entry in [0,1].
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(Matrix values);

  static SimilarityMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows) {
    return SimilarityMatrix(Matrix::from_rows(rows));
  }

  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  std::span<const double> row(std::size_t i) const { return m_.row(i); }
  const Matrix& matrix() const { return m_; }

  SimilarityMatrix transposed() const { return SimilarityMatrix(m_.transposed()); }

  bool operator==(const SimilarityMatrix&) const = default;

 private:
  Matrix m_;
};

}  // namespace embalign

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "soergel/scalar.hpp"

namespace soergel {

// Dense matrix over a Field. F_p entries live in doubles (exact integers in [0,p)) so
// that elimination can use the vector row kernels; rationals use GMP.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, Field f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);
  bool is_zero(std::size_t r, std::size_t c) const;

  // Appends the rows of other (same column count).
  void append_rows(const Mat& other);
  Mat transpose() const;
  std::vector<Scalar> column(std::size_t c) const;
  std::vector<Scalar> row(std::size_t r) const;

  // In-place reduced row echelon form; returns pivot columns. Rows beyond the rank are zero.
  std::vector<std::size_t> rref();

  friend Mat operator*(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Field field_;
  std::vector<double> mod_;     // p != 0
  std::vector<mpq_class> rat_;  // p == 0
};

Mat identity_mat(std::size_t n, Field f);
std::size_t rank(Mat a);
// Columns form a basis of {x : a x = 0}; free variables get unit vectors.
Mat kernel(Mat a);
// Particular solution of a x = b with free variables zero, or nullopt.
std::optional<std::vector<Scalar>> solve(Mat a, const std::vector<Scalar>& b);
// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(const Mat& a);
// Columns of a that form a basis of its column space (first-found, left to right).
std::vector<std::size_t> independent_columns(Mat a);

}  // namespace soergel

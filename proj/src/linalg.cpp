#include "soergel/linalg.hpp"

#include <utility>

#include "soergel/errors.hpp"
#include "soergel/simd/mod_kernels.hpp"

namespace soergel {

Mat::Mat(std::size_t rows, std::size_t cols, Field f) : rows_(rows), cols_(cols), field_(f) {
  if (f.p) mod_.assign(rows * cols, 0.0);
  else rat_.assign(rows * cols, mpq_class(0));
}

Scalar Mat::get(std::size_t r, std::size_t c) const {
  if (field_.p) return Scalar::modp(field_.p, static_cast<std::uint64_t>(mod_[r * cols_ + c]));
  return Scalar(rat_[r * cols_ + c]);
}

void Mat::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (field_.p) mod_[r * cols_ + c] = static_cast<double>(v.in_field(field_.p).residue());
  else rat_[r * cols_ + c] = v.rational();
}

void Mat::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (field_.p) {
    std::uint64_t s = static_cast<std::uint64_t>(mod_[r * cols_ + c]) + v.in_field(field_.p).residue();
    if (s >= field_.p) s -= field_.p;
    mod_[r * cols_ + c] = static_cast<double>(s);
  } else {
    rat_[r * cols_ + c] += v.rational();
  }
}

bool Mat::is_zero(std::size_t r, std::size_t c) const {
  return field_.p ? mod_[r * cols_ + c] == 0.0 : sgn(rat_[r * cols_ + c]) == 0;
}

void Mat::append_rows(const Mat& other) {
  if (other.rows_ == 0) return;
  if (rows_ == 0 && cols_ == 0) {
    *this = other;
    return;
  }
  if (other.cols_ != cols_ || !(other.field_ == field_)) fail(ErrorCode::Unsupported, "append_rows shape mismatch");
  if (field_.p) mod_.insert(mod_.end(), other.mod_.begin(), other.mod_.end());
  else rat_.insert(rat_.end(), other.rat_.begin(), other.rat_.end());
  rows_ += other.rows_;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (field_.p) t.mod_[c * rows_ + r] = mod_[r * cols_ + c];
      else t.rat_[c * rows_ + r] = rat_[r * cols_ + c];
    }
  return t;
}

std::vector<Scalar> Mat::column(std::size_t c) const {
  std::vector<Scalar> v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(get(r, c));
  return v;
}

std::vector<Scalar> Mat::row(std::size_t r) const {
  std::vector<Scalar> v;
  v.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v.push_back(get(r, c));
  return v;
}

std::vector<std::size_t> Mat::rref() {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  if (field_.p) {
    const std::uint32_t p = field_.p;
    const simd::ModKernels& k = simd::kernels_for(p);
    for (std::size_t c = 0; c < cols_ && prow < rows_; ++c) {
      std::size_t sel = rows_;
      for (std::size_t r = prow; r < rows_; ++r)
        if (mod_[r * cols_ + c] != 0.0) {
          sel = r;
          break;
        }
      if (sel == rows_) continue;
      double* pr = &mod_[prow * cols_];
      if (sel != prow) std::swap_ranges(pr, pr + cols_, &mod_[sel * cols_]);
      auto inv = pow_mod(static_cast<std::uint64_t>(pr[c]), p - 2, p);
      k.scale(pr + c, static_cast<double>(inv), cols_ - c, p);
      // eliminate below only; the back pass below clears entries above pivots
      for (std::size_t r = prow + 1; r < rows_; ++r) {
        double* row = &mod_[r * cols_];
        if (row[c] == 0.0) continue;
        k.axpy(row + c, pr + c, static_cast<double>(p - static_cast<std::uint64_t>(row[c])), cols_ - c, p);
      }
      pivots.push_back(c);
      ++prow;
    }
    for (std::size_t i = pivots.size(); i-- > 0;) {
      std::size_t c = pivots[i];
      const double* pr = &mod_[i * cols_];
      for (std::size_t r = 0; r < i; ++r) {
        double* row = &mod_[r * cols_];
        if (row[c] == 0.0) continue;
        k.axpy(row + c, pr + c, static_cast<double>(p - static_cast<std::uint64_t>(row[c])), cols_ - c, p);
      }
    }
    return pivots;
  }
  for (std::size_t c = 0; c < cols_ && prow < rows_; ++c) {
    std::size_t sel = rows_;
    for (std::size_t r = prow; r < rows_; ++r)
      if (sgn(rat_[r * cols_ + c]) != 0) {
        sel = r;
        break;
      }
    if (sel == rows_) continue;
    if (sel != prow)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(rat_[prow * cols_ + j], rat_[sel * cols_ + j]);
    mpq_class inv = 1 / rat_[prow * cols_ + c];
    for (std::size_t j = c; j < cols_; ++j) rat_[prow * cols_ + j] *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == prow || sgn(rat_[r * cols_ + c]) == 0) continue;
      mpq_class f = rat_[r * cols_ + c];
      for (std::size_t j = c; j < cols_; ++j)
        if (sgn(rat_[prow * cols_ + j]) != 0) rat_[r * cols_ + j] -= f * rat_[prow * cols_ + j];
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::Unsupported, "matrix product shape mismatch");
  Mat out(a.rows_, b.cols_, a.field_);
  if (a.field_.p) {
    const simd::ModKernels& k = simd::kernels_for(a.field_.p);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        double f = a.mod_[i * a.cols_ + l];
        if (f == 0.0) continue;
        k.axpy(&out.mod_[i * b.cols_], &b.mod_[l * b.cols_], f, b.cols_, a.field_.p);
      }
    return out;
  }
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const mpq_class& f = a.rat_[i * a.cols_ + l];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b.rat_[l * b.cols_ + j]) != 0) out.rat_[i * b.cols_ + j] += f * b.rat_[l * b.cols_ + j];
    }
  return out;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.mod_ == b.mod_ && a.rat_ == b.rat_;
}

Mat identity_mat(std::size_t n, Field f) {
  Mat m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, f.one());
  return m;
}

std::size_t rank(Mat a) { return a.rref().size(); }

Mat kernel(Mat a) {
  const std::size_t n = a.cols();
  std::vector<std::size_t> piv = a.rref();
  std::vector<char> is_pivot(n, 0);
  for (auto c : piv) is_pivot[c] = 1;
  Mat k(n, n - piv.size(), a.field());
  std::size_t col = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k.set(f, col, a.field().one());
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!a.is_zero(i, f)) k.set(piv[i], col, -a.get(i, f));
    ++col;
  }
  return k;
}

std::optional<std::vector<Scalar>> solve(Mat a, const std::vector<Scalar>& b) {
  const std::size_t n = a.cols();
  Mat aug(a.rows(), n + 1, a.field());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (!a.is_zero(r, c)) aug.set(r, c, a.get(r, c));
    aug.set(r, n, b[r]);
  }
  std::vector<std::size_t> piv = aug.rref();
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  std::vector<Scalar> x(n, a.field().zero());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.get(i, n);
  return x;
}

std::vector<std::size_t> independent_columns(Mat a) { return a.rref(); }

std::optional<Mat> inverse(const Mat& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) return std::nullopt;
  Mat aug(n, 2 * n, a.field());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (!a.is_zero(r, c)) aug.set(r, c, a.get(r, c));
    aug.set(r, n + r, a.field().one());
  }
  auto piv = aug.rref();
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n, a.field());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!aug.is_zero(r, n + c)) inv.set(r, c, aug.get(r, n + c));
  return inv;
}

}  // namespace soergel

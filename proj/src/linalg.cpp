#include "fcmono/linalg.hpp"

#include <sstream>

#include "fcmono/error.hpp"

namespace fcmono {

CycMatrix::CycMatrix(const CycField& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), a_(rows * cols, CycNum(field)) {}

CycMatrix CycMatrix::identity(const CycField& field, std::size_t n) {
  CycMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycNum::from_int(field, 1);
  return m;
}

CycMatrix CycMatrix::from_rows(const CycField& field, const std::vector<std::vector<CycNum>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  CycMatrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::dimension_mismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (&rows[i][j].field() != &field) throw Error(ErrorCode::field_mismatch, "entry outside matrix field");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

bool CycMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

bool CycMatrix::is_integral() const {
  for (const auto& x : a_)
    if (!x.is_integral()) return false;
  return true;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
  if (field_ != o.field_) throw Error(ErrorCode::field_mismatch, field_->name() + " vs " + o.field_->name());
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b) {
  if (&a.field() != &b.field()) throw Error(ErrorCode::field_mismatch, a.field().name() + " vs " + b.field().name());
  if (a.cols() != b.rows()) throw Error(ErrorCode::dimension_mismatch, "inner dimensions differ");
  CycMatrix r(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const CycNum& x = a(i, k);
      if (x.is_zero()) continue;
      bool one = x.is_one();
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const CycNum& y = b(k, j);
        if (y.is_zero()) continue;
        if (one)
          r(i, j) += y;
        else
          r(i, j) += x * y;
      }
    }
  return r;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const { return mat_mul(*this, o); }

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::dimension_mismatch, "shape mismatch in sum");
  CycMatrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::dimension_mismatch, "shape mismatch in difference");
  CycMatrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix r(*field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CycMatrix CycMatrix::column(std::size_t j) const {
  CycMatrix r(*field_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
  return r;
}

CycMatrix CycMatrix::embed(const CycField& target) const {
  CycMatrix r(target, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].embed(target);
  return r;
}

std::string CycMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

CycMatrix kron_blocks(const CycMatrix& a, const CycMatrix& b) {
  if (&a.field() != &b.field()) throw Error(ErrorCode::field_mismatch, a.field().name() + " vs " + b.field().name());
  CycMatrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t bi = 0; bi < b.rows(); ++bi)
    for (std::size_t bj = 0; bj < b.cols(); ++bj) {
      const CycNum& s = b(bi, bj);
      if (s.is_zero()) continue;
      for (std::size_t ai = 0; ai < a.rows(); ++ai)
        for (std::size_t aj = 0; aj < a.cols(); ++aj) {
          if (a(ai, aj).is_zero()) continue;
          r(bi * a.rows() + ai, bj * a.cols() + aj) = s * a(ai, aj);
        }
    }
  return r;
}

namespace {

// Row-reduces m in place; returns pivot columns. Gauss-Jordan when full is set.
std::vector<std::size_t> row_reduce(CycMatrix& m, std::size_t ncols, bool full, CycNum* det_out) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  CycNum det = CycNum::from_int(m.field(), 1);
  for (std::size_t c = 0; c < ncols && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) {
      det = CycNum::zero(m.field());
      continue;
    }
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
      det = -det;
    }
    CycNum p = m(row, c);
    det *= p;
    CycNum pinv = p.inv();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) *= pinv;
    for (std::size_t i = full ? 0 : row + 1; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      CycNum f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  if (det_out) *det_out = pivots.size() == ncols && ncols == m.rows() ? det : CycNum::zero(m.field());
  return pivots;
}

}  // namespace

CycMatrix hconcat(const std::vector<CycMatrix>& blocks) {
  if (blocks.empty()) throw Error(ErrorCode::dimension_mismatch, "no blocks");
  std::size_t rows = blocks[0].rows(), cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error(ErrorCode::dimension_mismatch, "row counts differ");
    if (&b.field() != &blocks[0].field()) throw Error(ErrorCode::field_mismatch, "blocks over different fields");
    cols += b.cols();
  }
  CycMatrix r(blocks[0].field(), rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, off + j) = b(i, j);
    off += b.cols();
  }
  return r;
}

CycMatrix mat_inv(const CycMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "inverse of non-square matrix");
  std::size_t n = a.rows();
  CycMatrix aug = hconcat({a, CycMatrix::identity(a.field(), n)});
  auto piv = row_reduce(aug, n, true, nullptr);
  if (piv.size() != n) throw Error(ErrorCode::singular_matrix, "matrix is singular");
  CycMatrix r(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

std::size_t mat_rank(const CycMatrix& a) {
  CycMatrix m = a;
  return row_reduce(m, m.cols(), false, nullptr).size();
}

CycNum mat_det(const CycMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "determinant of non-square matrix");
  CycMatrix m = a;
  CycNum det(a.field());
  row_reduce(m, m.cols(), false, &det);
  return det;
}

CycMatrix mat_pow(const CycMatrix& a, std::int64_t e) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "power of non-square matrix");
  if (e < 0) return mat_pow(mat_inv(a), -e);
  CycMatrix result = CycMatrix::identity(a.field(), a.rows());
  CycMatrix base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

CycMatrix solve_in_span(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::dimension_mismatch, "row counts differ");
  std::size_t k = a.cols();
  CycMatrix aug = hconcat({a, b});
  auto piv = row_reduce(aug, k, true, nullptr);
  if (piv.size() != k) throw Error(ErrorCode::dimension_mismatch, "basis is not linearly independent");
  for (std::size_t i = k; i < aug.rows(); ++i)
    for (std::size_t j = k; j < aug.cols(); ++j)
      if (!aug(i, j).is_zero()) throw Error(ErrorCode::not_invariant, "image leaves the span");
  CycMatrix x(a.field(), k, b.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, k + j);
  return x;
}

std::size_t hash_canonical(const CycMatrix& a) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ (a.rows() * 1315423911ULL + a.cols());
  for (const auto& x : a.entries()) h = (h ^ x.hash()) * 0x100000001b3ULL;
  return static_cast<std::size_t>(h);
}

}  // namespace fcmono

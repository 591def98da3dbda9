#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fcmono/cyclotomic.hpp"

namespace fcmono {

// Dense matrix over Q(zeta_N), row-major.
class CycMatrix {
 public:
  CycMatrix(const CycField& field, std::size_t rows, std::size_t cols);
  static CycMatrix identity(const CycField& field, std::size_t n);
  static CycMatrix from_rows(const CycField& field, const std::vector<std::vector<CycNum>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const CycField& field() const { return *field_; }

  CycNum& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const CycNum& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<CycNum>& entries() const { return a_; }

  bool is_identity() const;
  bool is_integral() const;
  bool operator==(const CycMatrix& o) const;
  bool operator!=(const CycMatrix& o) const { return !(*this == o); }
  CycMatrix operator*(const CycMatrix& o) const;
  CycMatrix operator+(const CycMatrix& o) const;
  CycMatrix operator-(const CycMatrix& o) const;

  CycMatrix transpose() const;
  CycMatrix column(std::size_t j) const;
  CycMatrix embed(const CycField& target) const;
  std::string to_string() const;

 private:
  const CycField* field_;
  std::size_t rows_, cols_;
  std::vector<CycNum> a_;
};

CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b);
// Block (i, j) of the result is b(i, j) * a, so the left factor's index varies fastest.
CycMatrix kron_blocks(const CycMatrix& a, const CycMatrix& b);
CycMatrix mat_inv(const CycMatrix& a);
std::size_t mat_rank(const CycMatrix& a);
CycNum mat_det(const CycMatrix& a);
CycMatrix mat_pow(const CycMatrix& a, std::int64_t e);
// Horizontal concatenation.
CycMatrix hconcat(const std::vector<CycMatrix>& blocks);
// X with a * X == b for a of full column rank; throws not_invariant when b leaves the column span.
CycMatrix solve_in_span(const CycMatrix& a, const CycMatrix& b);
std::size_t hash_canonical(const CycMatrix& a);

struct CycMatrixHash {
  std::size_t operator()(const CycMatrix& m) const { return hash_canonical(m); }
};

}  // namespace fcmono

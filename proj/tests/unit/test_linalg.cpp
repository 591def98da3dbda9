#include <doctest.h>

#include "fcmono/error.hpp"
#include "fcmono/linalg.hpp"
#include "fcmono/monodromy.hpp"
#include "oracle.hpp"

using namespace fcmono;

namespace {

// Conventional Kronecker product: block (i, j) is a(i, j) * b.
CycMatrix kron_conventional(const CycMatrix& a, const CycMatrix& b) {
  CycMatrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

oracle::cd numeric_det(oracle::CMat m) {
  std::size_t n = m.size();
  oracle::cd det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
    if (std::abs(m[p][c]) < 1e-12) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      oracle::cd f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("spec examples") {
  const CycField& f = CycField::get(6);
  CycMatrix e2 = CycMatrix::identity(f, 2);
  CHECK(e2 * e2 == e2);
  CycMatrix gm1 = g_block(CycNum::from_int(f, -1));
  CHECK(gm1 == CycMatrix::from_rows(f, {{CycNum::from_int(f, 1), CycNum::from_int(f, 1)},
                                        {CycNum::zero(f), CycNum::from_int(f, -1)}}));
  CHECK((gm1 * gm1).is_identity());
  CycNum z3 = CycNum::root_power(f, 2);
  CHECK(mat_pow(g_block(z3), 3).is_identity());
  CHECK(!mat_pow(g_block(z3), 1).is_identity());
  CycMatrix ginv = mat_inv(g_block(z3));
  CHECK(ginv == CycMatrix::from_rows(f, {{CycNum::from_int(f, 1), CycNum::from_int(f, 1)}, {CycNum::zero(f), z3}}));
  CHECK(mat_det(g_block(z3)) == z3.inv());
  CHECK_THROWS_AS(mat_inv(CycMatrix(f, 2, 2)), Error);
  CHECK(mat_rank(CycMatrix(f, 4, 4)) == 0);
  CHECK(mat_rank(CycMatrix::identity(f, 4)) == 4);
  CHECK(mat_det(CycMatrix::identity(f, 8)).is_one());
  CHECK(kron_blocks(e2, e2) == CycMatrix::identity(f, 4));
  CHECK(mat_pow(g_block(z3), 0).is_identity());
  CHECK(mat_pow(g_block(z3), -1) == ginv);
}

TEST_CASE("kron_blocks against the displayed n=2 generators") {
  const CycField& f = CycField::get(12);
  CycNum g1 = CycNum::root_power(f, 4), g2 = CycNum::root_power(f, 3);
  CycNum zero = CycNum::zero(f), one = CycNum::from_int(f, 1);
  CycMatrix e2 = CycMatrix::identity(f, 2);
  CycNum a = -g1.inv(), b = g1.inv();
  CHECK(kron_blocks(g_block(g1), e2) ==
        CycMatrix::from_rows(f, {{one, a, zero, zero}, {zero, b, zero, zero}, {zero, zero, one, a}, {zero, zero, zero, b}}));
  CycNum c = -g2.inv(), d = g2.inv();
  CHECK(kron_blocks(e2, g_block(g2)) ==
        CycMatrix::from_rows(f, {{one, zero, c, zero}, {zero, one, zero, c}, {zero, zero, d, zero}, {zero, zero, zero, d}}));
}

TEST_CASE("kron_blocks properties") {
  std::mt19937 rng(21);
  const CycField& f = CycField::get(5);
  for (int t = 0; t < 5; ++t) {
    CycMatrix a = oracle::random_matrix(f, 2, 2, rng), b = oracle::random_matrix(f, 2, 3, rng);
    CycMatrix c = oracle::random_matrix(f, 3, 2, rng), a2 = oracle::random_matrix(f, 2, 2, rng);
    CHECK(kron_blocks(kron_blocks(a, b), c) == kron_blocks(a, kron_blocks(b, c)));
    CHECK(kron_blocks(a + a2, b) == kron_blocks(a, b) + kron_blocks(a2, b));
    CHECK(kron_blocks(a, b) == kron_conventional(b, a));
    // Shuffle conjugate of the conventional a (x) b.
    CycMatrix conv = kron_conventional(a, b), paper = kron_blocks(a, b);
    bool ok = true;
    for (std::size_t i = 0; i < paper.rows(); ++i)
      for (std::size_t j = 0; j < paper.cols(); ++j) {
        std::size_t ai = i % a.rows(), bi = i / a.rows(), aj = j % a.cols(), bj = j / a.cols();
        ok = ok && paper(i, j) == conv(ai * b.rows() + bi, aj * b.cols() + bj);
      }
    CHECK(ok);
  }
}

TEST_CASE("inverse, determinant and rank properties") {
  std::mt19937 rng(4);
  const CycField& f = CycField::get(12);
  for (int t = 0; t < 6; ++t) {
    CycMatrix a = oracle::random_matrix(f, 3, 3, rng), b = oracle::random_matrix(f, 3, 3, rng);
    CHECK(mat_det(a * b) == mat_det(a) * mat_det(b));
    CHECK(oracle::close(oracle::eval(mat_det(a)), numeric_det(oracle::eval(a)), 1e-6));
    if (!mat_det(a).is_zero()) {
      CHECK((a * mat_inv(a)).is_identity());
      CHECK((mat_inv(a) * a).is_identity());
      CHECK(mat_rank(a) == 3);
    }
  }
  CycMatrix r1 = oracle::random_matrix(f, 3, 1, rng) * oracle::random_matrix(f, 1, 4, rng);
  CHECK(mat_rank(r1) <= 1);
  CHECK_THROWS_AS(oracle::random_matrix(f, 2, 3, rng) * oracle::random_matrix(f, 2, 3, rng), Error);
  CHECK_THROWS_AS(CycMatrix::identity(f, 2) * CycMatrix::identity(CycField::get(4), 2), Error);
}

TEST_CASE("solve_in_span") {
  std::mt19937 rng(8);
  const CycField& f = CycField::get(3);
  CycMatrix basis = oracle::random_matrix(f, 4, 2, rng);
  CycMatrix coeff = oracle::random_matrix(f, 2, 3, rng);
  CHECK(solve_in_span(basis, basis * coeff) == coeff);
  CycMatrix outside = CycMatrix::identity(f, 4);
  CHECK_THROWS_AS(solve_in_span(basis, outside), Error);
}

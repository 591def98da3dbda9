#pragma once

// Floating-point oracles: cyclotomic numbers evaluated at primitive roots.

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "fcmono/cyclotomic.hpp"
#include "fcmono/linalg.hpp"

namespace oracle {

using cd = std::complex<double>;

inline cd root(long num, long den) {
  double t = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(t), std::sin(t)};
}

// Value of x under z -> exp(2 pi i k / N).
inline cd eval(const fcmono::CycNum& x, long k = 1) {
  long n = x.field().order();
  cd s = 0;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) s += x.coeffs()[i].get_d() * root(k * static_cast<long>(i), n);
  return s;
}

inline std::vector<long> units(long n) {
  std::vector<long> u;
  for (long k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) u.push_back(k);
  return u;
}

inline bool close(cd a, cd b, double tol = 1e-8) { return std::abs(a - b) <= tol * (1 + std::abs(a) + std::abs(b)); }

// Conventional matrix product of the floating images.
using CMat = std::vector<std::vector<cd>>;

inline CMat eval(const fcmono::CycMatrix& m, long k = 1) {
  CMat r(m.rows(), std::vector<cd>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = eval(m(i, j), k);
  return r;
}

inline fcmono::CycNum random_num(const fcmono::CycField& f, std::mt19937& rng, int span = 4, int den = 3) {
  std::uniform_int_distribution<int> num(-span, span), dd(1, den);
  std::vector<fcmono::Rational> c;
  for (std::size_t i = 0; i < f.degree(); ++i) {
    fcmono::Rational q(num(rng), dd(rng));
    q.canonicalize();
    c.push_back(q);
  }
  return fcmono::CycNum(f, c);
}

inline fcmono::CycMatrix random_matrix(const fcmono::CycField& f, std::size_t r, std::size_t c, std::mt19937& rng) {
  fcmono::CycMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_num(f, rng, 2, 2);
  return m;
}

}  // namespace oracle

#include <doctest.h>

#include "fcmono/error.hpp"
#include "fcmono/monodromy.hpp"
#include "oracle.hpp"

using namespace fcmono;

namespace {

// Floating-point generators built entry by entry from index bits.
struct NumericRep {
  unsigned n;
  oracle::cd alpha, beta;
  std::vector<oracle::cd> gamma;

  explicit NumericRep(const ParamSet& p) : n(p.n) {
    alpha = std::polar(1.0, 2 * M_PI * p.a.get_d());
    beta = std::polar(1.0, 2 * M_PI * p.b.get_d());
    for (const auto& c : p.c) gamma.push_back(std::polar(1.0, 2 * M_PI * c.get_d()));
  }
  oracle::cd v(unsigned idx) const {
    oracle::cd ab = alpha * beta, all = 1, sel = 1, rest = 1;
    unsigned w = 0;
    for (unsigned k = 0; k < n; ++k) {
      all *= gamma[k];
      if ((idx >> k) & 1U) {
        sel *= gamma[k];
        ++w;
      } else {
        rest *= gamma[k];
      }
    }
    if (idx == 0) return std::pow(-1.0, n) * (alpha - 1.0) * (beta - 1.0) * all / ab;
    return std::pow(-1.0, n + w) * (ab + std::pow(-1.0, w) * sel) * rest / ab;
  }
  oracle::CMat mk(unsigned k) const {
    std::size_t d = std::size_t{1} << n;
    oracle::CMat m(d, std::vector<oracle::cd>(d));
    oracle::cd gi = 1.0 / gamma[k - 1];
    oracle::cd g[2][2] = {{1, -gi}, {0, gi}};
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        oracle::cd x = 1;
        for (unsigned t = 0; t < n; ++t) {
          unsigned bi = (i >> t) & 1U, bj = (j >> t) & 1U;
          x *= t == k - 1 ? g[bi][bj] : oracle::cd(bi == bj ? 1.0 : 0.0);
        }
        m[i][j] = x;
      }
    return m;
  }
  oracle::CMat m0() const {
    std::size_t d = std::size_t{1} << n;
    oracle::CMat m(d, std::vector<oracle::cd>(d));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
    for (std::size_t j = 0; j < d; ++j) m[d - 1][j] -= v(static_cast<unsigned>(j));
    return m;
  }
};

bool close_mat(const oracle::CMat& a, const oracle::CMat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!oracle::close(a[i][j], b[i][j], 1e-9)) return false;
  return true;
}

ParamSet random_params(std::mt19937& rng, unsigned n, int maxden = 6) {
  std::uniform_int_distribution<int> den(1, maxden);
  auto pick = [&] {
    int q = den(rng);
    return Rational(std::uniform_int_distribution<int>(0, q - 1)(rng), q);
  };
  std::vector<Rational> c;
  for (unsigned k = 0; k < n; ++k) c.push_back(pick());
  Rational a = pick(), b = pick();
  return params_create(n, a, b, c);
}

}  // namespace

TEST_CASE("parameter sets") {
  ParamSet p = parse_params_text("n=3 a=1/6 b=5/6 c=1/2,1/2,1/2");
  CHECK(p.n == 3);
  CHECK(p.field->order() == 6);
  CHECK(p.alpha == CycNum::root_power(*p.field, 1));
  CHECK(p.gamma[2] == CycNum::from_int(*p.field, -1));
  CHECK(params_create(1, Rational(1, 4), Rational(-1, 5), {Rational(7, 3)}).field->order() == 60);
  CHECK(params_create(1, Rational(1, 4), Rational(-1, 5), {Rational(7, 3)}).b == Rational(4, 5));
  CHECK_THROWS_AS(parse_params_text("n=3 a=1/6 b=5/6 c=1/2,1/2"), Error);
  try {
    params_create(2, 0, 0, {Rational(1, 2)});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::wrong_arity);
  }
  CHECK_THROWS_AS(parse_params_text("n=2 a=x b=1 c=1,1"), Error);
  CHECK(params_in_field(p, 12).field->order() == 12);
  CHECK(p.permuted({2, 0, 1}).c == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("v entries and delta0 for n=2") {
  ParamSet p = params_create(2, Rational(1, 5), Rational(1, 3), {Rational(1, 4), Rational(2, 3)});
  const CycNum &al = p.alpha, &be = p.beta, &g1 = p.gamma[0], &g2 = p.gamma[1];
  CycNum one = CycNum::from_int(p.F(), 1), ab = al * be;
  CHECK(v_entry(p, 0) == (al - one) * (be - one) * g1 * g2 / ab);
  CHECK(v_entry(p, 1) == -(ab - g1) * g2 / ab);
  CHECK(v_entry(p, 2) == -(ab - g2) * g1 / ab);
  CHECK(one - v_entry(p, 3) == -g1 * g2 / ab);
  CHECK(delta0(p) == -g1 * g2 / ab);
  CHECK_THROWS_AS(v_entry(p, 4), Error);
}

TEST_CASE("Gauss case M0 from the structure lemma") {
  // beta = -alpha, gamma = alpha^2.
  ParamSet p = params_create(1, Rational(1, 6), Rational(2, 3), {Rational(1, 3)});
  CycMatrix m0 = build_m0(p);
  const CycField& f = p.F();
  CHECK(m0 == CycMatrix::from_rows(f, {{CycNum::from_int(f, 1), CycNum::zero(f)},
                                       {p.gamma[0] - CycNum::from_int(f, 1), CycNum::from_int(f, -1)}}));
}

TEST_CASE("generators match an entrywise floating construction") {
  std::mt19937 rng(17);
  for (unsigned n = 1; n <= 3; ++n)
    for (int t = 0; t < 5; ++t) {
      ParamSet p = random_params(rng, n);
      NumericRep num(p);
      CHECK(close_mat(oracle::eval(build_m0(p)), num.m0()));
      for (unsigned k = 1; k <= n; ++k) CHECK(close_mat(oracle::eval(build_mk(p, k)), num.mk(k)));
      for (unsigned i = 0; i < (1U << n); ++i) CHECK(oracle::close(oracle::eval(v_entry(p, i)), num.v(i)));
    }
}

TEST_CASE("M0 is a reflection with special eigenvalue delta0") {
  std::mt19937 rng(23);
  for (unsigned n = 1; n <= 3; ++n)
    for (int t = 0; t < 6; ++t) {
      ParamSet p = random_params(rng, n);
      CycMatrix m0 = build_m0(p);
      std::size_t d = m0.rows();
      CycMatrix e = CycMatrix::identity(p.F(), d);
      CHECK(mat_det(m0) == delta0(p));
      CHECK(mat_rank(m0 - e) == (delta0(p).is_one() && v_entry(p, 0).is_zero() ? mat_rank(m0 - e) : 1));
      CycMatrix last(p.F(), d, 1);
      last(d - 1, 0) = CycNum::from_int(p.F(), 1);
      CycMatrix image = m0 * last;
      CHECK(image(d - 1, 0) == delta0(p));
      for (std::size_t i = 0; i + 1 < d; ++i) CHECK(image(i, 0).is_zero());
    }
}

TEST_CASE("fundamental group relations") {
  std::mt19937 rng(29);
  for (unsigned n = 1; n <= 3; ++n)
    for (int t = 0; t < 4; ++t) {
      MonodromyRep rep = build_rep(random_params(rng, n, 4));
      RelationReport r = check_relations(rep);
      CHECK(r.all_pass());
      if (n == 1) CHECK(r.checks.empty());
      if (n == 3) CHECK(r.checks.size() == 3 + 3 + 3);
    }
}

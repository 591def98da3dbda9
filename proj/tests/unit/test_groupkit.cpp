#include <doctest.h>

#include <random>
#include <set>

#include "fcmono/error.hpp"
#include "fcmono/groupkit.hpp"
#include "fcmono/monodromy.hpp"

using namespace fcmono;

namespace {

// Naive closure keyed by the printed matrix.
std::size_t naive_order(const std::vector<CycMatrix>& gens, std::size_t cap) {
  std::set<std::string> seen;
  std::vector<CycMatrix> queue{CycMatrix::identity(gens[0].field(), gens[0].rows())};
  seen.insert(queue[0].to_string());
  for (std::size_t i = 0; i < queue.size() && seen.size() <= cap; ++i)
    for (const auto& g : gens) {
      CycMatrix x = queue[i] * g;
      if (seen.insert(x.to_string()).second) queue.push_back(x);
    }
  return seen.size();
}

MonodromyRep rep_of(const char* text) { return build_rep(parse_params_text(text)); }

}  // namespace

TEST_CASE("closure examples") {
  const CycField& f = CycField::get(2);
  CHECK(closure({CycMatrix::identity(f, 2)}).cardinality() == 1);
  // Table f4-check-1, row (zeta_3, zeta_3): |<M1,M2>| = 6, |Mon| = 1152, |Ref| = 192.
  MonodromyRep rep = rep_of("n=2 a=1/4 b=7/12 c=1/3,1/2");
  CHECK(closure({rep.gens[1], rep.gens[2]}).cardinality() == 6);
  MatrixGroupEnum mon = closure(rep.gens);
  CHECK(mon.complete());
  CHECK(mon.cardinality() == 1152);
  MatrixGroupEnum ref = normal_closure(rep.gens, rep.gens[0]);
  CHECK(ref.cardinality() == 192);
  CHECK(normal_closure(rep.gens, CycMatrix::identity(rep.params.F(), 4)).cardinality() == 1);
  // Table f4-check-2, row (zeta_3, zeta_4).
  MonodromyRep rep2 = rep_of("n=2 a=13/24 b=1/24 c=1/3,1/4");
  CHECK(normal_closure(rep2.gens, rep2.gens[0]).cardinality() == 1152);
  CHECK(closure(rep2.gens).cardinality() == 13824);
}

TEST_CASE("closure agrees with a naive enumeration") {
  for (const char* text : {"n=1 a=1/4 b=3/4 c=1/3", "n=1 a=1/3 b=5/6 c=1/2", "n=2 a=1/4 b=7/12 c=1/3,1/2",
                           "n=2 a=1/3 b=5/6 c=1/2,1/2"}) {
    MonodromyRep rep = rep_of(text);
    MatrixGroupEnum g = closure(rep.gens);
    CHECK(g.complete());
    CHECK(g.cardinality() == naive_order(rep.gens, 5000));
    CHECK(modular_image_closure(rep.gens).cardinality == g.cardinality());
  }
}

TEST_CASE("generic engine for non-integral generators") {
  MonodromyRep rep = rep_of("n=2 a=1/4 b=7/12 c=1/3,1/2");
  const CycField& f = rep.params.F();
  CycMatrix s = CycMatrix::identity(f, 4);
  s(0, 0) = CycNum::from_int(f, 3);
  s(1, 0) = CycNum::from_int(f, 1);
  CycMatrix si = mat_inv(s);
  std::vector<CycMatrix> conj;
  for (const auto& g : rep.gens) conj.push_back(s * g * si);
  CHECK(!conj[0].is_integral());
  CHECK(closure(conj).cardinality() == 1152);
}

TEST_CASE("cap handling") {
  // gamma_1 = 1 gives M1 = G(1) of infinite order.
  MonodromyRep rep = rep_of("n=1 a=1/3 b=1/5 c=0");
  MatrixGroupEnum g = closure(rep.gens, 1000);
  CHECK(!g.complete());
  CHECK(g.cardinality() > 1000);
  CHECK_THROWS_AS(is_member(g, rep.gens[0]), Error);
  CHECK_THROWS_AS(g.elements(), Error);
  CHECK(modular_image_closure(rep.gens, 1000).exceeded_cap);
  const CycField& f = CycField::get(2);
  CHECK_THROWS_AS(closure({CycMatrix(f, 2, 2)}), Error);
}

TEST_CASE("element orders") {
  const CycField& f = CycField::get(2);
  CHECK(element_order(CycMatrix::identity(f, 3)) == 1);
  CHECK(!element_order(g_block(CycNum::from_int(f, 1)), 1000).has_value());
  for (int q : {3, 5, 7}) {
    MonodromyRep rep = build_rep(params_create(1, Rational(1, q), Rational(q - 1, q), {Rational(1, 2)}));
    CHECK(element_order(rep.gens[1] * rep.gens[0]) == static_cast<std::uint64_t>(q));
  }
  MonodromyRep rep = rep_of("n=2 a=3/4 b=1/4 c=1/3,2/3");
  CHECK(element_order(rep.gens[1] * rep.gens[2] * rep.gens[0]) == 4);
  CHECK(element_order(rep.gens[1], 2) == std::nullopt);
  CHECK(element_order(rep.gens[1], 3) == 3);
}

TEST_CASE("membership examples") {
  MonodromyRep r1 = rep_of("n=1 a=1/3 b=2/3 c=1/2");
  MatrixGroupEnum ref1 = normal_closure(r1.gens, r1.gens[0]);
  CHECK(is_member(ref1, CycMatrix::identity(r1.params.F(), 2)));
  CHECK(is_member(ref1, r1.gens[1]));
  MonodromyRep r2 = rep_of("n=1 a=1/3 b=5/6 c=1/2");
  CHECK(!is_member(normal_closure(r2.gens, r2.gens[0]), r2.gens[1]));
}

TEST_CASE("intersections") {
  MonodromyRep rep = rep_of("n=2 a=3/4 b=1/4 c=1/3,2/3");
  MatrixGroupEnum ref = normal_closure(rep.gens, rep.gens[0]);
  MatrixGroupEnum mk = closure({rep.gens[1], rep.gens[2]});
  MatrixGroupEnum cap = subgroup_intersection(ref, mk);
  CHECK(cap.cardinality() == 3);
  MatrixGroupEnum cyc = closure({rep.gens[1] * rep.gens[2]});
  CHECK(cyc.cardinality() == 3);
  for (const auto& x : cyc.elements()) CHECK(is_member(cap, x));
  CHECK(subgroup_intersection(mk, mk).cardinality() == mk.cardinality());

  MonodromyRep rep1 = rep_of("n=2 a=1/4 b=7/12 c=1/3,1/2");
  CHECK(subgroup_intersection(normal_closure(rep1.gens, rep1.gens[0]), closure({rep1.gens[1], rep1.gens[2]}))
            .cardinality() == 1);
}

TEST_CASE("order certificate") {
  MonodromyRep rep = rep_of("n=2 a=3/4 b=1/4 c=1/3,2/3");
  const auto& m = rep.gens;
  CycMatrix e = CycMatrix::identity(rep.params.F(), 4);
  CHECK(str_order_check(e, m[0], 1, 0, 0));
  // With r = 0 the certificate reduces to M0^j = E.
  std::uint64_t o0 = *element_order(m[0]);
  CHECK(str_order_check(e, m[0], 1, static_cast<std::int64_t>(o0), 0));
  if (o0 > 1) CHECK(!str_order_check(e, m[0], 1, 1, 0));
  CHECK(str_order_check(m[1] * m[2], m[0], 3, 1, 1));
  CHECK_THROWS_AS(str_order_check(m[1], m[0], 2, 1, 1), Error);
  MonodromyRep rep5 = rep_of("n=2 a=11/20 b=1/20 c=1/5,2/5");
  const auto& g = rep5.gens;
  CHECK(str_order_check(mat_pow(g[1], 3) * g[2], g[0], 5, 1, 1));
  // The certificate never contradicts enumeration.
  MatrixGroupEnum ref = normal_closure(g, g[0]);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      CycMatrix q = mat_pow(g[1], a) * mat_pow(g[2], b);
      for (int j = 1; j <= 2; ++j)
        for (int r = -1; r <= 2; ++r)
          if (str_order_check(q, g[0], 5, j, r)) CHECK(is_member(ref, q));
    }
}

TEST_CASE("Lagrange and normality") {
  std::mt19937 rng(5);
  for (const char* text : {"n=2 a=1/4 b=7/12 c=1/3,1/2", "n=2 a=13/24 b=1/24 c=1/3,1/4", "n=1 a=1/4 b=3/4 c=1/3"}) {
    MonodromyRep rep = rep_of(text);
    MatrixGroupEnum mon = closure(rep.gens);
    MatrixGroupEnum ref = normal_closure(rep.gens, rep.gens[0]);
    CHECK(mon.cardinality() % ref.cardinality() == 0);
    for (int t = 0; t < 100; ++t) {
      CycMatrix x = ref.element(std::uniform_int_distribution<std::size_t>(0, ref.cardinality() - 1)(rng));
      std::size_t k = std::uniform_int_distribution<std::size_t>(0, rep.gens.size() - 1)(rng);
      CHECK(is_member(ref, rep.gens[k] * x * rep.inverses[k]));
    }
  }
}

TEST_CASE("closure does not depend on generator order") {
  MonodromyRep rep = rep_of("n=2 a=1/4 b=7/12 c=1/3,1/2");
  std::vector<CycMatrix> rev(rep.gens.rbegin(), rep.gens.rend());
  MatrixGroupEnum a = closure(rep.gens), b = closure(rev);
  CHECK(a.cardinality() == b.cardinality());
  for (std::size_t i = 0; i < a.cardinality(); i += 37) CHECK(is_member(b, a.element(i)));
}

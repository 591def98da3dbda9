#include <doctest.h>

#include "fcmono/tables.hpp"

using namespace fcmono;

TEST_CASE("table rows expand every instance") {
  std::size_t one = 0, two = 0;
  for (const auto& r : table_rows(TableId::f4_check_1)) one += r.instances.size();
  for (const auto& r : table_rows(TableId::f4_check_2)) two += r.instances.size();
  CHECK(one == 18);
  CHECK(two == 3);
  CHECK(parse_table_name("f4-check-1") == TableId::f4_check_1);
  CHECK_FALSE(parse_table_name("f4-check-3").has_value());
}

TEST_CASE("table parameters satisfy the reconstruction formulas") {
  for (auto t : {TableId::f4_check_1, TableId::f4_check_2})
    for (const auto& row : table_rows(t))
      for (const auto& [x, y] : row.instances)
        for (int sign = 0; sign < 2; ++sign) {
          ParamSet p = table_params(t, x, y, sign);
          const CycField& f = p.F();
          CycNum minus = CycNum::from_int(f, -1);
          CycNum g1 = CycNum::root_of_unity(f, x), second = CycNum::root_of_unity(f, y);
          CHECK(p.gamma[0] == g1);
          if (t == TableId::f4_check_1) {
            CHECK(p.alpha * p.alpha == minus * g1 * second.inv());
            CHECK(p.beta == second * p.alpha);
          } else {
            CHECK(p.alpha * p.alpha == minus * g1 * second);
            CHECK(p.beta == minus * p.alpha);
          }
        }
  // The two signs give alpha and -alpha.
  ParamSet p0 = table_params(TableId::f4_check_2, Rational(1, 3), Rational(1, 3), 0);
  ParamSet p1 = table_params(TableId::f4_check_2, Rational(1, 3), Rational(1, 3), 1);
  CHECK(p1.alpha == -p0.alpha);
}

TEST_CASE("table row reproduction") {
  auto rows = run_table(TableId::f4_check_2, true, kDefaultCap, 2);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    INFO(r.row << " sign " << r.sign << " " << r.error);
    CHECK(r.match());
  }
}

#include "fcmono/tables.hpp"

#include <atomic>
#include <thread>

#include "fcmono/error.hpp"

namespace fcmono {

namespace {

const Rational kHalf(1, 2);

std::string root_label(const Rational& e) {
  Rational f = frac_part(e);
  std::string q = f.get_den().get_str(), k = f.get_num().get_str();
  if (f == kHalf) return "-1";
  return "zeta_" + q + (k == "1" ? "" : "^" + k);
}

std::vector<std::pair<Rational, Rational>> grid(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& x : xs)
    for (const auto& y : ys) out.emplace_back(x, y);
  return out;
}

Rational r(long n, long d) { return Rational(n, d); }

TableResult run_one(TableId t, const TableRowSpec& row, const std::pair<Rational, Rational>& inst, int sign,
                    std::size_t cap) {
  TableResult out;
  out.row = row.label;
  out.instance = "(" + root_label(inst.first) + ", " + root_label(inst.second) + ")";
  out.sign = sign;
  out.expected_mon = row.mon;
  out.expected_ref = row.ref;
  out.expected_ratio = row.ratio;
  out.expected_cyclic = row.cyclic;
  try {
    ParamSet p = table_params(t, inst.first, inst.second, sign);
    out.params = p.to_string();
    MonodromyRep rep = build_rep(p);
    MatrixGroupEnum mon = closure(rep.gens, cap);
    MatrixGroupEnum ref = normal_closure(rep.gens, rep.gens[0], cap);
    MatrixGroupEnum cyc = closure({rep.gens[1], rep.gens[2]}, cap);
    if (!mon.complete() || !ref.complete() || !cyc.complete()) {
      out.error = "enumeration exceeded cap";
      return out;
    }
    out.mon = mon.cardinality();
    out.ref = ref.cardinality();
    out.ratio = out.mon % out.ref == 0 ? out.mon / out.ref : 0;
    out.cyclic = cyc.cardinality();
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

const char* table_name(TableId t) { return t == TableId::f4_check_1 ? "f4-check-1" : "f4-check-2"; }

std::optional<TableId> parse_table_name(const std::string& name) {
  if (name == "f4-check-1") return TableId::f4_check_1;
  if (name == "f4-check-2") return TableId::f4_check_2;
  return std::nullopt;
}

const std::vector<TableRowSpec>& table_rows(TableId t) {
  static const std::vector<TableRowSpec> one{
      {"(zeta_3, zeta_3^j)", grid({r(1, 3)}, {r(1, 3), r(2, 3)}), 1152, 192, 6, 6},
      {"(zeta_3, zeta_4^(2j-1))", grid({r(1, 3)}, {r(1, 4), r(3, 4)}), 6912, 1152, 6, 6},
      {"(zeta_3, zeta_5^k)", grid({r(1, 3)}, {r(1, 5), r(2, 5), r(3, 5), r(4, 5)}), 86400, 14400, 6, 6},
      {"(zeta_4, zeta_3^j)", grid({r(1, 4)}, {r(1, 3), r(2, 3)}), 9216, 1152, 8, 8},
      {"(zeta_5^i, zeta_3^j)", grid({r(1, 5), r(2, 5)}, {r(1, 3), r(2, 3)}), 144000, 14400, 10, 10},
      {"(zeta_5, zeta_5^2)", grid({r(1, 5)}, {r(2, 5)}), 144000, 14400, 10, 10},
      {"(zeta_5, zeta_5^3)", grid({r(1, 5)}, {r(3, 5)}), 144000, 14400, 10, 10},
      {"(zeta_5^2, zeta_5)", grid({r(2, 5)}, {r(1, 5)}), 144000, 14400, 10, 10},
      {"(zeta_5^2, zeta_5^4)", grid({r(2, 5)}, {r(4, 5)}), 144000, 14400, 10, 10},
  };
  static const std::vector<TableRowSpec> two{
      {"(zeta_3, zeta_4)", grid({r(1, 3)}, {r(1, 4)}), 13824, 1152, 12, 12},
      {"(zeta_3^2, zeta_4)", grid({r(2, 3)}, {r(1, 4)}), 13824, 1152, 12, 12},
      {"(zeta_3, zeta_3)", grid({r(1, 3)}, {r(1, 3)}), 1728, 192, 9, 9},
  };
  return t == TableId::f4_check_1 ? one : two;
}

ParamSet table_params(TableId t, const Rational& first, const Rational& second, int sign) {
  Rational shift = sign ? kHalf : Rational(0);
  ParamSet p;
  if (t == TableId::f4_check_1) {
    // 2a = 1/2 + c_1 - (b - a), b = a + (b - a).
    Rational a = (kHalf + first - second) / 2 + shift;
    p = params_create(2, a, a + second, {first, kHalf});
  } else {
    // 2a = 1/2 + c_1 + c_2, b = a + 1/2.
    Rational a = (kHalf + first + second) / 2 + shift;
    p = params_create(2, a, a + kHalf, {first, second});
  }
  const CycField& f = p.F();
  CycNum minus = CycNum::from_int(f, -1);
  CycNum ratio = p.beta * p.alpha.inv();
  bool ok = delta0(p) == minus;
  if (t == TableId::f4_check_1)
    ok = ok && p.gamma[1] == minus && ratio == CycNum::root_of_unity(f, second) && ratio != minus;
  else
    ok = ok && ratio == minus && p.gamma[1] == CycNum::root_of_unity(f, second);
  if (!ok) throw Error(ErrorCode::invalid_parameters, "table row constraints do not hold");
  return p;
}

bool TableResult::match() const {
  return ok && mon == expected_mon && ref == expected_ref && ratio == expected_ratio && cyclic == expected_cyclic;
}

std::vector<TableResult> run_table(TableId t, bool both_signs, std::size_t cap, unsigned threads) {
  struct Job {
    const TableRowSpec* row;
    std::pair<Rational, Rational> inst;
    int sign;
  };
  std::vector<Job> jobs;
  for (const auto& row : table_rows(t))
    for (const auto& inst : row.instances)
      for (int sign = 0; sign < (both_signs ? 2 : 1); ++sign) jobs.push_back({&row, inst, sign});
  std::vector<TableResult> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) out[i] = run_one(t, *jobs[i].row, jobs[i].inst, jobs[i].sign, cap);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < std::max(1u, threads); ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace fcmono

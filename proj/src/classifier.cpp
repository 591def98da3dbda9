#include "fcmono/classifier.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "fcmono/decomposition.hpp"
#include "fcmono/error.hpp"

namespace fcmono {

namespace {

const Rational kHalf(1, 2);

bool is_integer(const Rational& q) { return q.get_den() == 1; }
bool is_half_odd(const Rational& q) { return frac_part(q) == kHalf; }
bool is_minus_one(const Rational& c) { return frac_part(c) == kHalf; }

// Order of e(c) as a root of unity.
std::uint64_t root_order_of(const Rational& c) { return frac_part(c).get_den().get_ui(); }

Rational sum_c(const ParamSet& p) { return std::accumulate(p.c.begin(), p.c.end(), Rational(0)); }

// delta_0 = (-1)^(n+1) prod gamma / (alpha beta) in exponent form.
bool delta0_minus_one(const ParamSet& p) {
  return is_half_odd(Rational(p.n + 1, 2) + sum_c(p) - p.a - p.b);
}
bool ratio_minus_one(const ParamSet& p) { return is_half_odd(p.b - p.a); }

bool in_row_orbit(const std::array<Rational, 3>& t, const SchwarzRow& row) {
  std::array<Rational, 3> r{row.lambda, row.mu, row.nu};
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Rational total(0);
      bool integral = true;
      for (int i = 0; i < 3 && integral; ++i) {
        Rational s = (signs >> i) & 1 ? -t[perm[i]] : t[perm[i]];
        Rational d = r[i] - s;
        integral = is_integer(d);
        total += d;
      }
      if (integral && total.get_num() % 2 == 0) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool match_case(CaseB tag, const std::vector<bool>& h, bool ratio, bool delta) {
  auto all_from = [&](std::size_t k) { return std::all_of(h.begin() + k, h.end(), [](bool x) { return x; }); };
  switch (tag) {
    case CaseB::b_a: return all_from(0);
    case CaseB::b_b: return all_from(1) && ratio;
    case CaseB::b_c: return all_from(1) && delta;
    case CaseB::b_d: return all_from(2) && ratio && delta;
    default: return false;
  }
}

IntersectionSpec spec_of(unsigned n, std::vector<std::int64_t> head) {
  IntersectionSpec s;
  s.exponents.assign(n, 0);
  std::copy(head.begin(), head.end(), s.exponents.begin());
  return s;
}

}  // namespace

GaussTriple gauss_triple(const Rational& a, const Rational& b, const Rational& c) {
  return {Rational(1) - c, c - a - b, b - a};
}

const std::vector<SchwarzRow>& schwarz_table() {
  static const std::vector<SchwarzRow> table = [] {
    auto q = [](long n, long d) { return Rational(n, d); };
    std::vector<SchwarzRow> t{
        {1, q(1, 2), q(1, 2), q(0, 1)},   {2, q(1, 2), q(1, 3), q(1, 3)},  {3, q(2, 3), q(1, 3), q(1, 3)},
        {4, q(1, 2), q(1, 3), q(1, 4)},   {5, q(2, 3), q(1, 4), q(1, 4)},  {6, q(1, 2), q(1, 3), q(1, 5)},
        {7, q(2, 5), q(1, 3), q(1, 3)},   {8, q(2, 3), q(1, 5), q(1, 5)},  {9, q(1, 2), q(2, 5), q(1, 5)},
        {10, q(3, 5), q(1, 3), q(1, 5)},  {11, q(2, 5), q(2, 5), q(2, 5)}, {12, q(2, 3), q(1, 3), q(1, 5)},
        {13, q(4, 5), q(1, 5), q(1, 5)},  {14, q(1, 2), q(2, 5), q(1, 3)}, {15, q(3, 5), q(2, 5), q(1, 3)},
    };
    for (auto& r : t) {
      r.lambda.canonicalize();
      r.mu.canonicalize();
      r.nu.canonicalize();
    }
    return t;
  }();
  return table;
}

std::optional<int> schwarz_row(const GaussTriple& g) {
  std::array<Rational, 3> t{g.lambda, g.mu, g.nu};
  int halves = 0;
  for (const auto& x : t) halves += is_half_odd(x) ? 1 : 0;
  if (halves >= 2) return 1;
  for (const auto& row : schwarz_table())
    if (row.index > 1 && in_row_orbit(t, row)) return row.index;
  return std::nullopt;
}

GaussVerdict gauss_finite_irreducible(const Rational& a, const Rational& b, const Rational& c) {
  GaussVerdict v;
  v.irreducible = !is_integer(a) && !is_integer(a - c) && !is_integer(b) && !is_integer(b - c);
  // gamma = 1 makes M_1 = G(1) unipotent of infinite order.
  if (v.irreducible && !is_integer(c)) v.row = schwarz_row(gauss_triple(a, b, c));
  return v;
}

bool irreducible(const ParamSet& p) {
  for (std::uint32_t mask = 0; mask < (1u << p.n); ++mask) {
    Rational s(0);
    for (unsigned k = 0; k < p.n; ++k)
      if ((mask >> k) & 1) s += p.c[k];
    if (is_integer(p.a - s) || is_integer(p.b - s)) return false;
  }
  return true;
}

std::vector<bool> condition_a(const ParamSet& p) {
  std::vector<bool> out;
  for (const auto& c : p.c) out.push_back(gauss_finite_irreducible(p.a, p.b, c).finite_irreducible());
  return out;
}

unsigned ConditionB::count() const {
  unsigned k = static_cast<unsigned>(std::count(gamma_minus_one.begin(), gamma_minus_one.end(), true));
  return k + (ratio_minus_one ? 1 : 0) + (delta0_minus_one ? 1 : 0);
}

ConditionB condition_b(const ParamSet& p) {
  if (p.n < 3) throw Error(ErrorCode::wrong_arity, "condition (B) needs n >= 3");
  ConditionB b;
  for (const auto& c : p.c) b.gamma_minus_one.push_back(is_minus_one(c));
  b.ratio_minus_one = ratio_minus_one(p);
  b.delta0_minus_one = delta0_minus_one(p);
  b.holds = b.count() >= p.n;
  return b;
}

bool kato_condition(const ParamSet& p) {
  if (p.n != 2) throw Error(ErrorCode::wrong_arity, "the two-variable condition needs n = 2");
  int minus = (is_minus_one(p.c[0]) ? 1 : 0) + (is_minus_one(p.c[1]) ? 1 : 0) + (ratio_minus_one(p) ? 1 : 0);
  return delta0_minus_one(p) || minus >= 2;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::finite: return "Finite";
    case Verdict::infinite: return "Infinite";
    default: return "Undecided";
  }
}

const char* case_name(CaseB c) {
  switch (c) {
    case CaseB::b_a: return "B-a";
    case CaseB::b_b: return "B-b";
    case CaseB::b_c: return "B-c";
    case CaseB::b_d: return "B-d";
    default: return "none";
  }
}

CaseDetection case_b_detect(const ParamSet& p) {
  if (p.n < 3) throw Error(ErrorCode::wrong_arity, "case detection needs n >= 3");
  bool ratio = ratio_minus_one(p), delta = delta0_minus_one(p);
  for (CaseB tag : {CaseB::b_a, CaseB::b_b, CaseB::b_c, CaseB::b_d}) {
    std::vector<unsigned> perm(p.n);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
      std::vector<bool> h;
      for (unsigned i : perm) h.push_back(is_minus_one(p.c[i]));
      if (match_case(tag, h, ratio, delta)) return {tag, perm};
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  throw Error(ErrorCode::no_case, "condition (B) does not hold");
}

bool IntersectionSpec::trivial() const {
  return std::all_of(exponents.begin(), exponents.end(), [](std::int64_t e) { return e == 0; });
}

std::string IntersectionSpec::word() const {
  std::string out;
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += "M" + std::to_string(k + 1);
    if (exponents[k] != 1) out += "^" + std::to_string(exponents[k]);
  }
  return out.empty() ? "E" : out;
}

CycMatrix IntersectionSpec::matrix(const MonodromyRep& rep) const {
  CycMatrix m = CycMatrix::identity(rep.params.F(), rep.dim());
  for (std::size_t k = 0; k < exponents.size(); ++k)
    if (exponents[k] != 0) m = m * mat_pow(rep.gens[k + 1], exponents[k]);
  return m;
}

GaussCase str_gauss_case(const CycNum& alpha, const CycNum& beta, const CycNum& gamma) {
  const CycField& f = alpha.field();
  CycNum minus = CycNum::from_int(f, -1);
  CycNum ratio = beta * alpha.inv(), g = gamma * alpha.inv() * beta.inv();
  bool gm = gamma == minus, rm = ratio == minus, g_m = g == minus;
  if (gm && rm) return {"I-1", false};
  if (gm) return g_m && alpha.root_order() % 2 == 1 ? GaussCase{"I-2-1", true} : GaussCase{"I-2-2", false};
  if (!rm) throw Error(ErrorCode::out_of_scope, "neither gamma nor beta/alpha is -1");
  if (g_m) return {"I-3", false};
  if (gamma == g && gamma.root_order() == 3) return {"I-4-1", true};
  if (gamma.root_order() == 5 && g.root_order() == 5) return {"I-4-2", true};
  return {"I-4-3", false};
}

F4Case str_f4_case(const ParamSet& p) {
  if (p.n != 2) throw Error(ErrorCode::wrong_arity, "the two-variable lemma needs n = 2");
  if (!delta0_minus_one(p) || is_minus_one(p.c[0]))
    throw Error(ErrorCode::out_of_scope, "needs delta_0 = -1 and gamma_1 != -1");
  bool g2 = is_minus_one(p.c[1]), rm = ratio_minus_one(p);
  if (g2 == rm) throw Error(ErrorCode::out_of_scope, "exactly one of gamma_2, beta/alpha must be -1");
  if (g2) return {"II-1", spec_of(2, {}), 0};
  std::uint64_t q1 = root_order_of(p.c[0]), q2 = root_order_of(p.c[1]);
  if (q1 != q2) return {"II-2-1", spec_of(2, {}), 0};
  if (q1 == 3) {
    if (frac_part(p.c[1] - p.c[0]) == 0) return {"II-2-2", spec_of(2, {}), 0};
    return {"II-2-3", spec_of(2, {1, 1}), 0};
  }
  if (q1 == 5) {
    std::int64_t j = 0;
    while (frac_part(p.c[0] + j * p.c[1]) != 0) ++j;
    return {"II-2-4", spec_of(2, {1, j}), j};
  }
  throw Error(ErrorCode::out_of_scope, "q1 = q2 outside {3, 5}");
}

IntersectionCheck check_intersection(const ParamSet& p, const IntersectionSpec& predicted, std::size_t cap) {
  MonodromyRep rep = build_rep(p);
  std::vector<CycMatrix> mk(rep.gens.begin() + 1, rep.gens.end());
  MatrixGroupEnum a = closure(mk, cap);
  if (!a.complete()) throw Error(ErrorCode::incomplete_enumeration, "<M1..Mn> exceeds cap");
  IntersectionCheck out;
  std::optional<SplitRef> split;
  MatrixGroupEnum ref;
  if (split_lemma(p)) {
    split = split_ref(p, cap);
    if (!split->complete()) throw Error(ErrorCode::incomplete_enumeration, "Ref factors exceed cap");
    out.ref_order = split->order();
  } else {
    ref = normal_closure(rep.gens, rep.gens[0], cap);
    if (!ref.complete()) throw Error(ErrorCode::incomplete_enumeration, "Ref exceeds cap");
    out.ref_order = ref.cardinality();
  }
  auto in_ref = [&](const CycMatrix& m) { return split ? split->contains(m) : is_member(ref, m); };
  for (const auto& g : a.elements())
    if (in_ref(g)) ++out.intersection_order;
  CycMatrix w = predicted.matrix(rep);
  out.predicted_order = closure({w}, cap).cardinality();
  out.matches = out.intersection_order == out.predicted_order && in_ref(w);
  return out;
}

StructureReport structure_classify(const ParamSet& p, bool verify, std::size_t cap) {
  if (p.n < 3) throw Error(ErrorCode::wrong_arity, "the structure theorem needs n >= 3");
  ClassificationReport c = classify(p);
  if (c.finite != Verdict::finite) throw Error(ErrorCode::not_finite, "the group is not finite irreducible");
  StructureReport r;
  r.detection = c.detection;
  r.permuted = p.permuted(c.detection.perm);
  const ParamSet& q = r.permuted;
  unsigned n = q.n;
  const CycNum& a = q.alpha;
  const CycNum& b = q.beta;
  const CycNum& g1 = q.gamma[0];
  const CycField& f = q.F();
  CycNum minus = CycNum::from_int(f, -1);
  std::uint64_t q1 = root_order_of(q.c[0]), q2 = root_order_of(q.c[1]);
  r.intersection = spec_of(n, {});
  switch (r.detection.tag) {
    case CaseB::b_a:
      if (b * a.inv() != minus && (a * b).is_one() && a.root_order() % 2 == 1) {
        r.clause = "B-a-1";
        r.type = 2;
        r.intersection.exponents.assign(n, 1);
      } else {
        r.clause = "B-a-2";
        r.type = 1;
      }
      break;
    case CaseB::b_b: {
      CycNum g = g1 * a.inv() * b.inv();
      if (g != minus && g == g1 && q1 == 3) {
        r.clause = "B-b-1";
        r.type = 2;
        r.intersection = spec_of(n, {1});
      } else if (g != minus && g1.root_order() == 5 && g.root_order() == 5) {
        r.clause = "B-b-2";
        r.type = 2;
        r.intersection = spec_of(n, {1});
      } else {
        r.clause = "B-b-3";
        r.type = 1;
      }
      break;
    }
    case CaseB::b_c:
      r.clause = "B-c";
      r.type = 3;
      break;
    case CaseB::b_d:
      if (q1 == 3 && q2 == 3 && frac_part(q.c[1] - 2 * q.c[0]) == 0) {
        r.clause = "B-d-1";
        r.type = 4;
        r.intersection = spec_of(n, {1, 1});
      } else if (q1 == 5 && q2 == 5) {
        r.clause = "B-d-2";
        r.type = 4;
        while (frac_part(q.c[0] + r.j * q.c[1]) != 0) ++r.j;
        r.intersection = spec_of(n, {1, r.j});
      } else {
        r.clause = "B-d-3";
        r.type = 3;
      }
      break;
    default: throw Error(ErrorCode::no_case, "no case of condition (B) applies");
  }
  if (verify) {
    IntersectionCheck chk = check_intersection(q, r.intersection, cap);
    r.verified = true;
    r.matches = chk.matches;
    r.intersection_order = chk.intersection_order;
    r.predicted_order = chk.predicted_order;
    r.ref_order = chk.ref_order;
  }
  return r;
}

Cardinalities enumerate_cardinalities(const ParamSet& p, std::size_t cap) {
  Cardinalities out;
  if (auto s = split_census(p, cap)) {
    out.method = "split";
    out.complete = s->complete;
    out.ref = s->ref;
    out.mon = s->mon;
    if (s->complete) out.quotient = s->mon / s->ref;
    return out;
  }
  out.method = "closure";
  MonodromyRep rep = build_rep(p);
  MatrixGroupEnum mon = closure(rep.gens, cap);
  out.mon = mon.cardinality();
  if (!mon.complete()) return out;
  MatrixGroupEnum ref = normal_closure(rep.gens, rep.gens[0], cap);
  out.ref = ref.cardinality();
  out.quotient = out.mon / out.ref;
  out.complete = true;
  return out;
}

ClassificationReport classify(const ParamSet& p, ClassifyMode mode, bool with_cardinalities, std::size_t cap) {
  ClassificationReport r;
  r.params = p;
  r.irreducible = irreducible(p);
  r.condition_a = condition_a(p);
  if (p.n >= 3) r.condition_b = condition_b(p);
  if (p.n == 2) r.kato = kato_condition(p);
  if (p.n == 1) r.schwarz_row = gauss_finite_irreducible(p.a, p.b, p.c[0]).row;

  if (mode == ClassifyMode::enumeration) {
    MonodromyRep rep = build_rep(p);
    MatrixGroupEnum mon = closure(rep.gens, cap);
    r.finite = mon.complete() ? Verdict::finite : Verdict::undecided;
    r.reason = mon.complete() ? "enumeration terminated" : "enumeration exceeded cap";
  } else if (std::any_of(p.c.begin(), p.c.end(), [](const Rational& c) { return is_integer(c); })) {
    r.finite = Verdict::infinite;
    r.reason = "some gamma_k = 1, so M_k has infinite order";
  } else if (!r.irreducible) {
    r.finite = Verdict::undecided;
    r.reason = "reducible";
  } else {
    bool a_all = std::all_of(r.condition_a.begin(), r.condition_a.end(), [](bool x) { return x; });
    bool fin = p.n == 1 ? r.schwarz_row.has_value() : p.n == 2 ? a_all && *r.kato : a_all && r.condition_b->holds;
    r.finite = fin ? Verdict::finite : Verdict::infinite;
    r.reason = p.n == 1 ? "Schwarz list" : p.n == 2 ? "conditions (A) and (B')" : "conditions (A) and (B)";
  }
  if (r.finite == Verdict::finite && p.n >= 3 && r.condition_b && r.condition_b->holds) r.detection = case_b_detect(p);
  if (with_cardinalities) r.cardinalities = enumerate_cardinalities(p, cap);
  return r;
}

}  // namespace fcmono

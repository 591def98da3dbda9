#include "fcmono/decomposition.hpp"

#include <numeric>
#include <tuple>
#include <unordered_set>

#include "fcmono/error.hpp"

namespace fcmono {

namespace {

const Rational kHalf(1, 2);

// Tensor product of 2-vectors, factor k at bit k of the index.
CycMatrix tensor(const CycField& f, const std::vector<std::pair<long, long>>& factors) {
  std::size_t dim = std::size_t{1} << factors.size();
  CycMatrix v(f, dim, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    long prod = 1;
    for (std::size_t k = 0; k < factors.size(); ++k)
      prod *= ((i >> k) & 1) ? factors[k].second : factors[k].first;
    v(i, 0) = CycNum::from_int(f, prod);
  }
  return v;
}

// e_{bits} on the low positions followed by the given trailing factors.
CycMatrix tensor_tail(const CycField& f, unsigned low_count, std::uint32_t low_bits,
                      const std::vector<std::pair<long, long>>& tail) {
  std::vector<std::pair<long, long>> factors;
  for (unsigned k = 0; k < low_count; ++k)
    factors.push_back(((low_bits >> k) & 1) ? std::pair<long, long>{0, 1} : std::pair<long, long>{1, 0});
  factors.insert(factors.end(), tail.begin(), tail.end());
  return tensor(f, factors);
}

const std::pair<long, long> kE0{1, 0};
const std::pair<long, long> kShift{-1, 2};  // 2 e_1 - e_0

CycMatrix scale(const CycMatrix& m, const Rational& q) {
  CycMatrix r = m;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = r(i, j).scaled(q);
  return r;
}

bool is_minus_one(const Rational& c) { return c == kHalf; }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::precondition_violated, what);
}

SubspaceBasis make_basis(std::size_t ambient, std::vector<CycMatrix> cols, const char* label) {
  return SubspaceBasis{ambient, hconcat(cols), label};
}

bool acts_trivially(const CycMatrix& m, const SubspaceBasis& b) { return m * b.vectors == b.vectors; }

class Builder {
 public:
  explicit Builder(DecompositionReport& r) : r_(r) {}
  void add(std::string name, bool pass, std::string detail = {}) {
    r_.checks.push_back({std::move(name), pass, std::move(detail)});
  }
  // Restricts m and compares with expected; records not_invariant as a failure.
  void restricted_equals(const std::string& name, const CycMatrix& m, const SubspaceBasis& b,
                         const CycMatrix& expected) {
    try {
      CycMatrix r = restrict_action(m, b);
      add(name, r == expected, r == expected ? "" : "got " + r.to_string() + ", expected " + expected.to_string());
    } catch (const Error& e) {
      add(name, false, e.what());
    }
  }
  void invariant(const std::string& name, const CycMatrix& m, const SubspaceBasis& plus, const SubspaceBasis& minus) {
    try {
      restrict_action(m, plus);
      restrict_action(m, minus);
      add(name, true);
    } catch (const Error&) {
      add(name, false, "moves a basis vector out of its summand: " + m.to_string());
    }
  }
  void trivial(const std::string& name, const CycMatrix& m, const SubspaceBasis& b) {
    bool ok = acts_trivially(m, b);
    add(name, ok, ok ? "" : m.to_string());
  }

 private:
  DecompositionReport& r_;
};

CycMatrix conj(const CycMatrix& g, const CycMatrix& m) { return g * m * mat_inv(g); }

std::string card(const MatrixGroupEnum& g) {
  return g.complete() ? std::to_string(g.cardinality()) : ">" + std::to_string(g.cap());
}

// Generators a M0 a^-1 of Ref, a running over <M1..Mn>.
std::vector<CycMatrix> ref_generators(const MonodromyRep& rep, std::size_t cap, std::uint64_t* a_order,
                                      MatrixGroupEnum* a_out) {
  std::vector<CycMatrix> mk(rep.gens.begin() + 1, rep.gens.end());
  MatrixGroupEnum a = closure(mk, cap);
  if (!a.complete()) throw Error(ErrorCode::incomplete_enumeration, "<M1..Mn> exceeds cap");
  std::unordered_set<CycMatrix, CycMatrixHash> seen;
  std::vector<CycMatrix> out;
  for (const auto& g : a.elements()) {
    CycMatrix s = conj(g, rep.gens[0]);
    if (seen.insert(s).second) out.push_back(s);
  }
  if (a_order) *a_order = a.cardinality();
  if (a_out) *a_out = a;
  return out;
}

struct Split {
  std::vector<CycMatrix> plus, minus;  // restrictions to W+ and W-
  bool ok = true;
  std::string detail;
};

Split split_generators(const std::vector<CycMatrix>& gens, const SubspaceBasis& wp, const SubspaceBasis& wm) {
  Split s;
  for (const auto& g : gens) {
    try {
      CycMatrix rp = restrict_action(g, wp), rm = restrict_action(g, wm);
      if (rm.is_identity())
        s.plus.push_back(rp);
      else if (rp.is_identity())
        s.minus.push_back(rm);
      else {
        s.ok = false;
        s.detail = "generator acts nontrivially on both summands: " + g.to_string();
        return s;
      }
    } catch (const Error&) {
      s.ok = false;
      s.detail = "generator does not preserve the summands: " + g.to_string();
      return s;
    }
  }
  return s;
}

MatrixGroupEnum restricted_group(const std::vector<CycMatrix>& gens, const CycField& f, std::size_t dim,
                                 std::size_t cap) {
  if (gens.empty()) return closure({CycMatrix::identity(f, dim)}, cap);
  return closure(gens, cap);
}

// Shared tail of both verifications: direct-product witness and cardinalities.
void product_checks(Builder& b, DecompositionReport& rep, const MonodromyRep& mon, const ParamSet& reduced,
                    const SubspaceBasis& wp, const SubspaceBasis& wm, std::size_t cap) {
  std::vector<CycMatrix> gens;
  try {
    gens = ref_generators(mon, cap, nullptr, nullptr);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::incomplete_enumeration) throw;
    b.add("|Ref(n)| = |Ref(n-1)|^2", false, "not verified: <M1..Mn> exceeds cap");
    return;
  }
  Split s = split_generators(gens, wp, wm);
  b.add("Ref generators split into W+ and W- factors", s.ok, s.detail);
  if (!s.ok) return;
  const CycField& f = mon.params.F();
  std::size_t half = wp.dim();
  // Lifts act blockwise, so commuting lifts reduce to the split itself; check it on the full matrices.
  bool commute = true;
  std::size_t checked = 0;
  for (const auto& g : gens)
    for (const auto& h : gens) {
      if (checked >= 400) break;
      if (acts_trivially(g, wm) && acts_trivially(h, wp)) {
        ++checked;
        if (g * h != h * g) commute = false;
      }
    }
  b.add("R+ and R- generators commute", commute);

  MonodromyRep low = build_rep(reduced);
  MatrixGroupEnum ref_low = normal_closure(low.gens, low.gens[0], cap);
  MatrixGroupEnum rp = restricted_group(s.plus, f, half, cap);
  MatrixGroupEnum rm = restricted_group(s.minus, f, half, cap);
  rep.cardinalities.push_back({"Ref(n-1)", card(ref_low)});
  rep.cardinalities.push_back({"R+", card(rp)});
  rep.cardinalities.push_back({"R-", card(rm)});
  if (!ref_low.complete() || !rp.complete() || !rm.complete()) {
    b.add("|Ref(n)| = |Ref(n-1)|^2", false, "not verified: enumeration exceeds cap");
    return;
  }
  std::uint64_t lo = ref_low.cardinality();
  MatrixGroupEnum ref = normal_closure(mon.gens, mon.gens[0], cap);
  rep.cardinalities.push_back({"Ref(n)", ref.complete() ? std::to_string(ref.cardinality())
                                                        : std::to_string(rp.cardinality() * rm.cardinality())});
  bool factors = rp.cardinality() == lo && rm.cardinality() == lo;
  if (ref.complete()) {
    bool ok = factors && ref.cardinality() == lo * lo;
    b.add("|Ref(n)| = |Ref(n-1)|^2", ok,
          "|Ref(n)| = " + std::to_string(ref.cardinality()) + ", |Ref(n-1)| = " + std::to_string(lo));
  } else {
    b.add("|Ref(n)| = |Ref(n-1)|^2", factors,
          "via factors: |R+| = " + std::to_string(rp.cardinality()) + ", |R-| = " + std::to_string(rm.cardinality()) +
              ", |Ref(n-1)| = " + std::to_string(lo));
  }
}

}  // namespace

const char* reduction_name(Reduction r) { return r == Reduction::red1 ? "red1" : "red2"; }

bool DecompositionReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::pair<SubspaceBasis, SubspaceBasis> basis_red1(const ParamSet& p) {
  require(p.n >= 2, "red1 needs n >= 2");
  require(is_minus_one(p.c[p.n - 2]) && is_minus_one(p.c[p.n - 1]), "red1 needs gamma_{n-1} = gamma_n = -1");
  const CycField& f = p.F();
  unsigned low = p.n - 2;
  std::size_t ambient = std::size_t{1} << p.n;
  std::vector<CycMatrix> plus, minus;
  // f~ with i_{n-1} = 0 first, then i_{n-1} = 1: the top bit of the (n-1)-index.
  for (unsigned top = 0; top < 2; ++top)
    for (std::uint32_t bits = 0; bits < (1u << low); ++bits) {
      CycMatrix g00 = tensor_tail(f, low, bits, {kE0, kE0});
      CycMatrix g11 = tensor_tail(f, low, bits, {kShift, kShift});
      CycMatrix g10 = tensor_tail(f, low, bits, {kShift, kE0});
      CycMatrix g01 = tensor_tail(f, low, bits, {kE0, kShift});
      for (int sign : {1, -1}) {
        CycMatrix f14 = sign > 0 ? g00 + g11 : g00 - g11;
        CycMatrix f23 = sign > 0 ? g10 + g01 : g10 - g01;
        CycMatrix v = top == 0 ? f14 : scale(f14 + f23, kHalf);
        (sign > 0 ? plus : minus).push_back(v);
      }
    }
  return {make_basis(ambient, plus, "W+"), make_basis(ambient, minus, "W-")};
}

std::pair<SubspaceBasis, SubspaceBasis> basis_red2(const ParamSet& p) {
  require(p.n >= 2, "red2 needs n >= 2");
  require(is_minus_one(p.c[p.n - 1]), "red2 needs gamma_n = -1");
  require(frac_part(p.b - p.a) == kHalf, "red2 needs beta/alpha = -1");
  const CycField& f = p.F();
  unsigned low = p.n - 1;
  std::vector<CycMatrix> plus, minus;
  for (std::uint32_t bits = 0; bits < (1u << low); ++bits) {
    CycMatrix h0 = tensor_tail(f, low, bits, {kE0});
    CycMatrix h1 = tensor_tail(f, low, bits, {kShift});
    plus.push_back(h0 + h1);
    minus.push_back(h0 - h1);
  }
  std::size_t ambient = std::size_t{1} << p.n;
  return {make_basis(ambient, plus, "W+"), make_basis(ambient, minus, "W-")};
}

CycMatrix restrict_action(const CycMatrix& m, const SubspaceBasis& basis) {
  if (m.rows() != basis.ambient_dim || m.cols() != basis.ambient_dim)
    throw Error(ErrorCode::dimension_mismatch, "matrix and subspace dimensions differ");
  return solve_in_span(basis.vectors, m * basis.vectors);
}

ParamSet reduced_params(const ParamSet& p, Reduction r) {
  require(p.n >= 2, "reduction needs n >= 2");
  std::vector<Rational> c(p.c.begin(), p.c.end() - 1);
  if (r == Reduction::red1) c.back() = kHalf;
  return params_create(p.n - 1, p.a, p.b, c, p.F().order());
}

DecompositionReport verify_red1(const ParamSet& p, std::size_t cap) {
  auto [wp, wm] = basis_red1(p);
  DecompositionReport rep;
  rep.lemma = Reduction::red1;
  Builder b(rep);
  MonodromyRep mon = build_rep(p);
  const auto& m = mon.gens;
  unsigned n = p.n;
  const CycField& f = p.F();

  b.add("W+ + W- spans the whole space", mat_rank(hconcat({wp.vectors, wm.vectors})) == wp.ambient_dim);
  CycMatrix e_top(f, wp.ambient_dim, 1);
  e_top(wp.ambient_dim - 1, 0) = CycNum::from_int(f, 2);
  b.add("f~+_{1..1} = 2 e_{1..1}", wp.vectors.column(wp.dim() - 1) == e_top);

  CycMatrix pair = m[n - 1] * m[n];
  CycMatrix c_n = conj(m[n], m[0]), c_n1 = conj(m[n - 1], m[0]), c_pair = conj(pair, m[0]);
  b.add("M_n swaps W+ and W-", m[n] * wp.vectors == wm.vectors && m[n] * wm.vectors == wp.vectors);
  b.invariant("M_0 preserves W+ and W-", m[0], wp, wm);
  b.invariant("M_{n-1}M_n preserves W+ and W-", pair, wp, wm);
  for (unsigned k = 1; k + 2 <= n; ++k)
    b.invariant("M_" + std::to_string(k) + " preserves W+ and W-", m[k], wp, wm);
  b.invariant("M_nM_0M_n^-1 preserves W+ and W-", c_n, wp, wm);
  b.invariant("M_{n-1}M_0M_{n-1}^-1 preserves W+ and W-", c_n1, wp, wm);
  b.invariant("(M_{n-1}M_n)M_0(M_{n-1}M_n)^-1 preserves W+ and W-", c_pair, wp, wm);

  b.trivial("M_0 acts trivially on W-", m[0], wm);
  b.trivial("(M_{n-1}M_n)M_0(M_{n-1}M_n)^-1 acts trivially on W-", c_pair, wm);
  b.trivial("M_nM_0M_n^-1 acts trivially on W+", c_n, wp);
  b.trivial("M_{n-1}M_0M_{n-1}^-1 acts trivially on W+", c_n1, wp);

  ParamSet low = reduced_params(p, Reduction::red1);
  for (unsigned k = 1; k + 2 <= n; ++k) {
    CycMatrix expect = build_mk(low, k);
    b.restricted_equals("M_" + std::to_string(k) + " on W+ is M_" + std::to_string(k) + "^(n-1)", m[k], wp, expect);
    b.restricted_equals("M_" + std::to_string(k) + " on W- is M_" + std::to_string(k) + "^(n-1)", m[k], wm, expect);
  }
  CycMatrix low_last = build_mk(low, n - 1), low_m0 = build_m0(low);
  b.restricted_equals("M_{n-1}M_n on W+ is M_{n-1}^(n-1)", pair, wp, low_last);
  b.restricted_equals("M_{n-1}M_n on W- is M_{n-1}^(n-1)", pair, wm, low_last);
  b.restricted_equals("M_0 on W+ is M_0^(n-1)", m[0], wp, low_m0);
  b.restricted_equals("M_nM_0M_n^-1 on W- is M_0^(n-1)", c_n, wm, low_m0);

  product_checks(b, rep, mon, low, wp, wm, cap);
  return rep;
}

DecompositionReport verify_red2(const ParamSet& p, std::size_t cap) {
  auto [wp, wm] = basis_red2(p);
  DecompositionReport rep;
  rep.lemma = Reduction::red2;
  Builder b(rep);
  MonodromyRep mon = build_rep(p);
  const auto& m = mon.gens;
  unsigned n = p.n;
  const CycField& f = p.F();

  b.add("W+ + W- spans the whole space", mat_rank(hconcat({wp.vectors, wm.vectors})) == wp.ambient_dim);
  CycMatrix e_top(f, wp.ambient_dim, 1);
  e_top(wp.ambient_dim - 1, 0) = CycNum::from_int(f, 2);
  b.add("f+_{12;1..1} = 2 e_{1..1}", wp.vectors.column(wp.dim() - 1) == e_top);
  b.add("alpha + beta = 0", (p.alpha + p.beta).is_zero());

  CycMatrix c_n = conj(m[n], m[0]);
  b.add("M_n swaps W+ and W-", m[n] * wp.vectors == wm.vectors && m[n] * wm.vectors == wp.vectors);
  b.invariant("M_0 preserves W+ and W-", m[0], wp, wm);
  for (unsigned k = 1; k + 1 <= n; ++k)
    b.invariant("M_" + std::to_string(k) + " preserves W+ and W-", m[k], wp, wm);
  b.invariant("M_nM_0M_n^-1 preserves W+ and W-", c_n, wp, wm);
  b.trivial("M_0 acts trivially on W-", m[0], wm);
  b.trivial("M_nM_0M_n^-1 acts trivially on W+", c_n, wp);

  ParamSet low = reduced_params(p, Reduction::red2);
  // -lambda_{0..0} = (-1)^(n-1) (alpha beta + 1) prod gamma_k / (alpha beta), k < n.
  CycNum ab = p.alpha * p.beta, prod = CycNum::from_int(f, 1);
  for (unsigned k = 0; k + 1 < n; ++k) prod *= p.gamma[k];
  CycNum neg_lambda0 = (ab + CycNum::from_int(f, 1)) * prod / ab;
  if (n % 2 == 0) neg_lambda0 = -neg_lambda0;
  CycNum v0 = v_entry(low, 0);
  b.add("-lambda_{0..0} = v^(n-1)_{0..0}", neg_lambda0 == v0,
        neg_lambda0 == v0 ? "" : neg_lambda0.to_string() + " vs " + v0.to_string());

  for (unsigned k = 1; k + 1 <= n; ++k) {
    CycMatrix expect = build_mk(low, k);
    b.restricted_equals("M_" + std::to_string(k) + " on W+ is M_" + std::to_string(k) + "^(n-1)", m[k], wp, expect);
    b.restricted_equals("M_" + std::to_string(k) + " on W- is M_" + std::to_string(k) + "^(n-1)", m[k], wm, expect);
  }
  CycMatrix low_m0 = build_m0(low);
  b.restricted_equals("M_0 on W+ is M_0^(n-1)", m[0], wp, low_m0);
  b.restricted_equals("M_nM_0M_n^-1 on W- is M_0^(n-1)", c_n, wm, low_m0);

  product_checks(b, rep, mon, low, wp, wm, cap);
  return rep;
}

std::optional<Reduction> split_lemma(const ParamSet& p) {
  if (p.n < 2 || !is_minus_one(p.c[p.n - 1])) return std::nullopt;
  if (is_minus_one(p.c[p.n - 2])) return Reduction::red1;
  if (frac_part(p.b - p.a) == kHalf) return Reduction::red2;
  return std::nullopt;
}

bool SplitRef::contains(const CycMatrix& m) const {
  if (!complete()) throw Error(ErrorCode::incomplete_enumeration, "split factors exceed cap");
  try {
    return is_member(r_plus, restrict_action(m, w_plus)) && is_member(r_minus, restrict_action(m, w_minus));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::not_invariant) throw;
    return false;
  }
}

SplitRef split_ref(const ParamSet& p, std::size_t cap) {
  auto lemma = split_lemma(p);
  require(lemma.has_value(), "no reduction applies to the last coordinates");
  SplitRef out;
  out.lemma = *lemma;
  std::tie(out.w_plus, out.w_minus) = *lemma == Reduction::red1 ? basis_red1(p) : basis_red2(p);
  MonodromyRep rep = build_rep(p);
  std::vector<CycMatrix> gens = ref_generators(rep, cap, nullptr, nullptr);
  Split s = split_generators(gens, out.w_plus, out.w_minus);
  if (!s.ok) throw Error(ErrorCode::not_invariant, s.detail);
  out.r_plus = restricted_group(s.plus, p.F(), out.w_plus.dim(), cap);
  out.r_minus = restricted_group(s.minus, p.F(), out.w_minus.dim(), cap);
  return out;
}

std::optional<SplitCensus> split_census(const ParamSet& p, std::size_t cap) {
  if (p.n < 2) return std::nullopt;
  std::vector<unsigned> half, rest;
  for (unsigned k = 0; k < p.n; ++k) (is_minus_one(p.c[k]) ? half : rest).push_back(k);
  SplitCensus out;
  out.perm = rest;
  out.perm.insert(out.perm.end(), half.begin(), half.end());
  ParamSet q = p.permuted(out.perm);
  auto lemma = split_lemma(q);
  if (!lemma) return std::nullopt;
  out.lemma = *lemma;
  MonodromyRep rep = build_rep(q);
  std::vector<CycMatrix> mk(rep.gens.begin() + 1, rep.gens.end());
  MatrixGroupEnum a = closure(mk, cap);
  if (!a.complete()) return out;
  out.a_order = a.cardinality();
  SplitRef ref = split_ref(q, cap);
  out.r_plus = ref.r_plus.cardinality();
  out.r_minus = ref.r_minus.cardinality();
  out.ref = ref.order();
  if (!ref.complete()) return out;
  // Mon = Ref <M1..Mn>, so [Mon : Ref] = |A| / |A n Ref|.
  for (const auto& g : a.elements())
    if (ref.contains(g)) ++out.a_in_ref;
  out.mon = out.ref * (out.a_order / out.a_in_ref);
  out.complete = true;
  return out;
}

}  // namespace fcmono

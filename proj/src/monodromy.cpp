#include "fcmono/monodromy.hpp"

#include <numeric>
#include <sstream>

#include "fcmono/error.hpp"

namespace fcmono {

namespace {

std::uint32_t den_u32(const Rational& q) {
  if (!q.get_den().fits_uint_p()) throw Error(ErrorCode::invalid_parameters, "denominator too large");
  return static_cast<std::uint32_t>(q.get_den().get_ui());
}

}  // namespace

ParamSet params_create(unsigned n, const Rational& a, const Rational& b, const std::vector<Rational>& c,
                       std::uint32_t min_order) {
  if (n == 0) throw Error(ErrorCode::invalid_parameters, "n must be at least 1");
  if (c.size() != n)
    throw Error(ErrorCode::wrong_arity,
                "expected " + std::to_string(n) + " c-values, got " + std::to_string(c.size()));
  ParamSet p;
  p.n = n;
  p.a = frac_part(a);
  p.b = frac_part(b);
  for (const auto& ck : c) p.c.push_back(frac_part(ck));
  std::uint64_t order = std::lcm<std::uint64_t>(2, std::max<std::uint32_t>(min_order, 1));
  order = std::lcm<std::uint64_t>(order, den_u32(p.a));
  order = std::lcm<std::uint64_t>(order, den_u32(p.b));
  for (const auto& ck : p.c) order = std::lcm<std::uint64_t>(order, den_u32(ck));
  if (order > 100000) throw Error(ErrorCode::invalid_parameters, "field order too large");
  p.field = &CycField::get(static_cast<std::uint32_t>(order));
  p.alpha = CycNum::root_of_unity(*p.field, p.a);
  p.beta = CycNum::root_of_unity(*p.field, p.b);
  for (const auto& ck : p.c) p.gamma.push_back(CycNum::root_of_unity(*p.field, ck));
  return p;
}

ParamSet params_in_field(const ParamSet& p, std::uint32_t order) {
  if (order % p.field->order() != 0)
    throw Error(ErrorCode::not_a_subfield, p.field->name() + " is not contained in Q(zeta_" + std::to_string(order) + ")");
  return params_create(p.n, p.a, p.b, p.c, order);
}

ParamSet ParamSet::permuted(const std::vector<unsigned>& perm) const {
  if (perm.size() != n) throw Error(ErrorCode::wrong_arity, "permutation length differs from n");
  std::vector<Rational> cc;
  for (unsigned i : perm) cc.push_back(c.at(i));
  return params_create(n, a, b, cc, field->order());
}

std::string ParamSet::to_string() const {
  std::ostringstream os;
  os << "n=" << n << " a=" << a.get_str() << " b=" << b.get_str() << " c=";
  for (unsigned k = 0; k < n; ++k) os << (k ? "," : "") << c[k].get_str();
  return os.str();
}

ParamSet parse_params_text(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  long n = -1;
  Rational a, b;
  bool has_a = false, has_b = false, has_c = false;
  std::vector<Rational> c;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::parse_error, "expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "n") {
      try {
        n = std::stol(val);
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, "bad n '" + val + "'");
      }
    } else if (key == "a") {
      a = parse_rational(val);
      has_a = true;
    } else if (key == "b") {
      b = parse_rational(val);
      has_b = true;
    } else if (key == "c") {
      std::size_t start = 0;
      while (true) {
        auto comma = val.find(',', start);
        c.push_back(parse_rational(val.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      has_c = true;
    } else {
      throw Error(ErrorCode::parse_error, "unknown key '" + key + "'");
    }
  }
  if (!has_a || !has_b || !has_c) throw Error(ErrorCode::parse_error, "a, b and c are required");
  if (n < 0) n = static_cast<long>(c.size());
  if (n < 1) throw Error(ErrorCode::invalid_parameters, "n must be at least 1");
  return params_create(static_cast<unsigned>(n), a, b, c);
}

std::string index_label(IndexI i, unsigned n) {
  std::string s;
  for (unsigned k = 0; k < n; ++k) s += ((i >> k) & 1U) ? '1' : '0';
  return s;
}

CycNum v_entry(const ParamSet& p, IndexI idx) {
  const CycField& f = p.F();
  if (idx >> p.n) throw Error(ErrorCode::invalid_parameters, "index outside {0,1}^n");
  CycNum ab = p.alpha * p.beta;
  CycNum one = CycNum::from_int(f, 1);
  if (idx == 0) {
    CycNum prod = one;
    for (const auto& g : p.gamma) prod *= g;
    CycNum r = (p.alpha - one) * (p.beta - one) * prod / ab;
    return p.n % 2 ? -r : r;
  }
  unsigned w = index_weight(idx);
  CycNum sel = one, rest = one;
  for (unsigned k = 0; k < p.n; ++k) {
    if ((idx >> k) & 1U)
      sel *= p.gamma[k];
    else
      rest *= p.gamma[k];
  }
  CycNum r = (w % 2 ? ab - sel : ab + sel) * rest / ab;
  return (p.n + w) % 2 ? -r : r;
}

CycNum delta0(const ParamSet& p) {
  CycNum prod = CycNum::from_int(p.F(), 1);
  for (const auto& g : p.gamma) prod *= g;
  CycNum r = prod / (p.alpha * p.beta);
  return (p.n + 1) % 2 ? -r : r;
}

CycMatrix g_block(const CycNum& gamma) {
  const CycField& f = gamma.field();
  CycNum gi = gamma.inv();
  return CycMatrix::from_rows(f, {{CycNum::from_int(f, 1), -gi}, {CycNum::zero(f), gi}});
}

CycMatrix build_mk(const ParamSet& p, unsigned k) {
  if (k < 1 || k > p.n) throw Error(ErrorCode::invalid_parameters, "generator index out of range");
  const CycField& f = p.F();
  CycMatrix e2 = CycMatrix::identity(f, 2);
  CycMatrix r = k == 1 ? g_block(p.gamma[0]) : e2;
  for (unsigned j = 2; j <= p.n; ++j) r = kron_blocks(r, j == k ? g_block(p.gamma[j - 1]) : e2);
  return r;
}

CycMatrix build_m0(const ParamSet& p) {
  std::size_t d = std::size_t{1} << p.n;
  CycMatrix m = CycMatrix::identity(p.F(), d);
  for (std::size_t i = 0; i < d; ++i) m(d - 1, i) -= v_entry(p, static_cast<IndexI>(i));
  return m;
}

MonodromyRep build_rep(const ParamSet& p) {
  MonodromyRep rep{p, {}, {}};
  rep.gens.push_back(build_m0(p));
  for (unsigned k = 1; k <= p.n; ++k) rep.gens.push_back(build_mk(p, k));
  for (const auto& g : rep.gens) rep.inverses.push_back(mat_inv(g));
  return rep;
}

bool RelationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

CycMatrix mask_product(const MonodromyRep& rep, IndexI mask, bool inverse) {
  CycMatrix r = CycMatrix::identity(rep.params.F(), rep.dim());
  for (unsigned k = 1; k <= rep.params.n; ++k)
    if ((mask >> (k - 1)) & 1U) r = r * (inverse ? rep.inverses[k] : rep.gens[k]);
  return r;
}

namespace {

std::string mask_name(IndexI mask, unsigned n) {
  std::string s = "{";
  bool first = true;
  for (unsigned k = 1; k <= n; ++k)
    if ((mask >> (k - 1)) & 1U) {
      s += (first ? "" : ",") + std::to_string(k);
      first = false;
    }
  return s + "}";
}

}  // namespace

RelationReport check_relations(const MonodromyRep& rep) {
  RelationReport out;
  unsigned n = rep.params.n;
  const auto& m = rep.gens;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j)
      out.checks.push_back({"M" + std::to_string(i) + "M" + std::to_string(j) + "=M" + std::to_string(j) + "M" +
                                std::to_string(i),
                            m[i] * m[j] == m[j] * m[i]});
  // The fundamental group of the complement is free when n = 1.
  for (unsigned k = 1; k <= n && n >= 2; ++k) {
    CycMatrix x = m[0] * m[k], y = m[k] * m[0];
    out.checks.push_back({"(M0M" + std::to_string(k) + ")^2=(M" + std::to_string(k) + "M0)^2", x * x == y * y});
  }
  if (n >= 3) {
    IndexI full = (IndexI{1} << n) - 1;
    std::vector<CycMatrix> conj;
    std::vector<bool> have(full + 1, false);
    conj.reserve(full + 1);
    for (IndexI s = 0; s <= full; ++s) conj.push_back(CycMatrix(rep.params.F(), 0, 0));
    auto get = [&](IndexI s) -> const CycMatrix& {
      if (!have[s]) {
        conj[s] = mask_product(rep, s) * m[0] * mask_product(rep, s, true);
        have[s] = true;
      }
      return conj[s];
    };
    for (IndexI i = 1; i <= full; ++i)
      for (IndexI j = i + 1; j <= full; ++j) {
        if (i & j) continue;
        if (index_weight(i) + index_weight(j) > n - 1) continue;
        const CycMatrix& ci = get(i);
        const CycMatrix& cj = get(j);
        out.checks.push_back({"conj" + mask_name(i, n) + " commutes with conj" + mask_name(j, n), ci * cj == cj * ci});
      }
  }
  return out;
}

}  // namespace fcmono

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fcmono/cyclotomic.hpp"
#include "fcmono/linalg.hpp"

namespace fcmono {

// Parameters (a, b, c_1..c_n) modulo Z together with the exact roots of unity
// alpha = e(a), beta = e(b), gamma_k = e(c_k) in Q(zeta_N).
struct ParamSet {
  unsigned n = 0;
  Rational a, b;
  std::vector<Rational> c;
  const CycField* field = nullptr;
  CycNum alpha, beta;
  std::vector<CycNum> gamma;

  const CycField& F() const { return *field; }
  std::string to_string() const;
  // Same parameters with the c-coordinates reordered: new c_i = old c_{perm[i]} (0-based).
  ParamSet permuted(const std::vector<unsigned>& perm) const;
};

// lcm of the denominators of a, b, c_k and 2, times a multiple of min_order if given.
ParamSet params_create(unsigned n, const Rational& a, const Rational& b, const std::vector<Rational>& c,
                       std::uint32_t min_order = 1);
// Same parameters over a larger field Q(zeta_M); M must be a multiple of the natural order.
ParamSet params_in_field(const ParamSet& p, std::uint32_t order);
// Parses "n=3 a=1/6 b=5/6 c=1/2,1/2,1/2".
ParamSet parse_params_text(const std::string& text);

// Multi-index I in {0,1}^n stored as a bit mask, bit k-1 = i_k; the mask is the rank of I.
using IndexI = std::uint32_t;
inline unsigned index_weight(IndexI i) { return static_cast<unsigned>(__builtin_popcount(i)); }
// "i1i2...in", e.g. "100" for e_{1,0,0}.
std::string index_label(IndexI i, unsigned n);

CycNum v_entry(const ParamSet& p, IndexI i);
// (-1)^(n+1) gamma_1...gamma_n / (alpha beta).
CycNum delta0(const ParamSet& p);
// G(gamma) = [[1, -gamma^-1], [0, gamma^-1]].
CycMatrix g_block(const CycNum& gamma);
CycMatrix build_mk(const ParamSet& p, unsigned k);
CycMatrix build_m0(const ParamSet& p);

struct MonodromyRep {
  ParamSet params;
  std::vector<CycMatrix> gens;      // M_0, M_1, ..., M_n
  std::vector<CycMatrix> inverses;  // their inverses
  std::size_t dim() const { return gens[0].rows(); }
};

MonodromyRep build_rep(const ParamSet& p);

struct RelationCheck {
  std::string name;
  bool pass = false;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool all_pass() const;
};

// For n >= 2: M_iM_j = M_jM_i (1 <= i, j <= n), (M_0M_k)^2 = (M_kM_0)^2, and for n >= 3 the conjugates
// M_I M_0 M_I^-1 and M_J M_0 M_J^-1 commute for disjoint nonempty I, J with |I| + |J| <= n - 1.
RelationReport check_relations(const MonodromyRep& rep);

// Product M_{k_1} M_{k_2} ... over the ones of a mask (k ascending).
CycMatrix mask_product(const MonodromyRep& rep, IndexI mask, bool inverse = false);

}  // namespace fcmono

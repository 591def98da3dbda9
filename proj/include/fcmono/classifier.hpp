#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcmono/groupkit.hpp"
#include "fcmono/monodromy.hpp"

namespace fcmono {

// Exponent differences (1 - c, c - a - b, b - a).
struct GaussTriple {
  Rational lambda, mu, nu;
};
GaussTriple gauss_triple(const Rational& a, const Rational& b, const Rational& c);

// Finite irreducible exponent-difference triples for the one-variable equation.
// Row 1 stands for (1/2, 1/2, nu) with nu arbitrary.
struct SchwarzRow {
  int index;
  Rational lambda, mu, nu;
};
const std::vector<SchwarzRow>& schwarz_table();
// Row whose orbit under permutations, sign changes and integer shifts with even sum
// contains the triple; nullopt if none.
std::optional<int> schwarz_row(const GaussTriple& t);

struct GaussVerdict {
  bool irreducible = false;  // alpha, beta not in {1, gamma}
  std::optional<int> row;    // Schwarz row when irreducible and on the list
  bool finite_irreducible() const { return irreducible && row.has_value(); }
};
GaussVerdict gauss_finite_irreducible(const Rational& a, const Rational& b, const Rational& c);

// alpha and beta differ from every product of a subset of the gamma_k.
bool irreducible(const ParamSet& p);
std::vector<bool> condition_a(const ParamSet& p);

// Which of gamma_1..gamma_n, beta/alpha, delta_0 equal -1.
struct ConditionB {
  std::vector<bool> gamma_minus_one;
  bool ratio_minus_one = false;
  bool delta0_minus_one = false;
  unsigned count() const;
  bool holds = false;
};
ConditionB condition_b(const ParamSet& p);  // n >= 3
bool kato_condition(const ParamSet& p);     // n = 2

enum class Verdict { finite, infinite, undecided };
const char* verdict_name(Verdict v);

enum class CaseB { none, b_a, b_b, b_c, b_d };
const char* case_name(CaseB c);

struct CaseDetection {
  CaseB tag = CaseB::none;
  std::vector<unsigned> perm;  // new c_i = old c_{perm[i]}
};
// Priority B-a > B-b > B-c > B-d, then the lexicographically smallest permutation.
CaseDetection case_b_detect(const ParamSet& p);

// Ref n <M1..Mn> predicted as <M1^e1 ... Mn^en>; empty exponents mean trivial.
struct IntersectionSpec {
  std::vector<std::int64_t> exponents;
  bool trivial() const;
  std::string word() const;  // "E", "M1", "M1*M2^2", ...
  CycMatrix matrix(const MonodromyRep& rep) const;
};

struct GaussCase {
  std::string tag;  // I-1 .. I-4-3
  bool full = false;
};
GaussCase str_gauss_case(const CycNum& alpha, const CycNum& beta, const CycNum& gamma);

struct F4Case {
  std::string tag;  // II-1 .. II-2-4
  IntersectionSpec intersection;
  std::int64_t j = 0;  // II-2-4 only
};
F4Case str_f4_case(const ParamSet& p);

struct StructureReport {
  CaseDetection detection;
  ParamSet permuted;
  std::string clause;  // B-a-1 .. B-d-3
  int type = 0;
  IntersectionSpec intersection;
  std::int64_t j = 0;
  // Filled when verified by enumeration.
  bool verified = false;
  bool matches = false;
  std::uint64_t intersection_order = 0;
  std::uint64_t predicted_order = 0;
  std::uint64_t ref_order = 0;
};
// Requires a finite irreducible group with n >= 3 (throws not_finite otherwise).
StructureReport structure_classify(const ParamSet& p, bool verify, std::size_t cap = kDefaultCap);

// Enumerated Ref n <M1..Mn> for p as given, checked against a predicted generator.
struct IntersectionCheck {
  std::uint64_t intersection_order = 0;
  std::uint64_t predicted_order = 0;
  std::uint64_t ref_order = 0;
  bool matches = false;
};
IntersectionCheck check_intersection(const ParamSet& p, const IntersectionSpec& predicted,
                                     std::size_t cap = kDefaultCap);

struct Cardinalities {
  bool complete = false;
  std::uint64_t mon = 0, ref = 0, quotient = 0;
  std::string method;  // "closure" or "split"
};
Cardinalities enumerate_cardinalities(const ParamSet& p, std::size_t cap = kDefaultCap);

enum class ClassifyMode { theorem, enumeration };

struct ClassificationReport {
  ParamSet params;
  bool irreducible = false;
  Verdict finite = Verdict::undecided;
  std::string reason;
  std::vector<bool> condition_a;
  std::optional<ConditionB> condition_b;
  std::optional<bool> kato;
  std::optional<int> schwarz_row;  // n = 1
  CaseDetection detection;
  std::optional<StructureReport> structure;
  std::optional<Cardinalities> cardinalities;
};
ClassificationReport classify(const ParamSet& p, ClassifyMode mode = ClassifyMode::theorem,
                              bool with_cardinalities = false, std::size_t cap = kDefaultCap);

}  // namespace fcmono

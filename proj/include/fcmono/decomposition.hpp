#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcmono/groupkit.hpp"
#include "fcmono/monodromy.hpp"

namespace fcmono {

enum class Reduction { red1, red2 };
const char* reduction_name(Reduction r);

// Columns of `vectors` span a subspace of Q(zeta_N)^ambient_dim.
struct SubspaceBasis {
  std::size_t ambient_dim = 0;
  CycMatrix vectors{CycField::get(1), 0, 0};
  std::string label;  // "W+" or "W-"
  std::size_t dim() const { return vectors.cols(); }
};

// gamma_{n-1} = gamma_n = -1, n >= 2. Basis f~_{i_1..i_{n-1}}, with i_{n-1} the top bit.
std::pair<SubspaceBasis, SubspaceBasis> basis_red1(const ParamSet& p);
// gamma_n = -1 and beta/alpha = -1, n >= 2. Basis f_{12; i_1..i_{n-1}}.
std::pair<SubspaceBasis, SubspaceBasis> basis_red2(const ParamSet& p);
// R with m * basis = basis * R; throws not_invariant when m leaves the span.
CycMatrix restrict_action(const CycMatrix& m, const SubspaceBasis& basis);
// The (n-1)-variable parameters the restricted actions are compared with, over p's field.
ParamSet reduced_params(const ParamSet& p, Reduction r);

struct DecompositionCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct DecompositionReport {
  Reduction lemma = Reduction::red1;
  std::vector<DecompositionCheck> checks;
  std::vector<std::pair<std::string, std::string>> cardinalities;
  bool all_pass() const;
};

DecompositionReport verify_red1(const ParamSet& p, std::size_t cap = kDefaultCap);
DecompositionReport verify_red2(const ParamSet& p, std::size_t cap = kDefaultCap);

// Which reduction applies in place: red1 needs gamma_{n-1} = gamma_n = -1, red2 needs
// gamma_n = -1 and beta/alpha = -1. red1 is preferred.
std::optional<Reduction> split_lemma(const ParamSet& p);

// Ref = R+ x R-, each factor enumerated through its restriction to W+ or W-.
struct SplitRef {
  Reduction lemma = Reduction::red1;
  SubspaceBasis w_plus, w_minus;
  MatrixGroupEnum r_plus, r_minus;
  bool complete() const { return r_plus.complete() && r_minus.complete(); }
  std::uint64_t order() const { return std::uint64_t{r_plus.cardinality()} * r_minus.cardinality(); }
  // Exact membership in Ref; requires complete().
  bool contains(const CycMatrix& m) const;
};
// Throws precondition_violated when split_lemma(p) is empty and incomplete_enumeration
// when <M1..Mn> exceeds cap.
SplitRef split_ref(const ParamSet& p, std::size_t cap = kDefaultCap);

// Orders of Ref and Mon from the splitting Ref = R+ x R-, where R+ (R-) is generated
// by the conjugates a M0 a^-1 (a in <M1..Mn>) acting trivially on W- (W+).
// Each factor is enumerated through its restriction to W+ (W-).
struct SplitCensus {
  Reduction lemma = Reduction::red1;
  std::vector<unsigned> perm;  // applied to the c-coordinates before splitting
  bool complete = false;
  std::uint64_t r_plus = 0, r_minus = 0, ref = 0;
  std::uint64_t a_order = 0, a_in_ref = 0, mon = 0;
};
// nullopt when neither reduction applies after reordering the c-coordinates.
std::optional<SplitCensus> split_census(const ParamSet& p, std::size_t cap = kDefaultCap);

}  // namespace fcmono

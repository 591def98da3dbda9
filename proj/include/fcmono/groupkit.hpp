#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fcmono/linalg.hpp"

namespace fcmono {

inline constexpr std::size_t kDefaultCap = 2000000;

enum class EnumStatus { complete, exceeded_cap };

class GroupStore {
 public:
  virtual ~GroupStore() = default;
  virtual std::size_t size() const = 0;
  virtual CycMatrix element(std::size_t i) const = 0;
  virtual bool contains(const CycMatrix& m) const = 0;
};

class MatrixGroupEnum {
 public:
  MatrixGroupEnum() = default;
  MatrixGroupEnum(std::vector<CycMatrix> gens, EnumStatus status, std::size_t cardinality, std::size_t cap,
                  std::shared_ptr<const GroupStore> store)
      : gens_(std::move(gens)), status_(status), cardinality_(cardinality), cap_(cap), store_(std::move(store)) {}

  const std::vector<CycMatrix>& generators() const { return gens_; }
  EnumStatus status() const { return status_; }
  bool complete() const { return status_ == EnumStatus::complete; }
  // Exact on Complete; on ExceededCap a lower bound larger than cap().
  std::size_t cardinality() const { return cardinality_; }
  std::size_t cap() const { return cap_; }
  // Elements in discovery order; Complete only.
  std::vector<CycMatrix> elements() const;
  CycMatrix element(std::size_t i) const;

 private:
  friend bool is_member(const MatrixGroupEnum& g, const CycMatrix& m);
  std::vector<CycMatrix> gens_;
  EnumStatus status_ = EnumStatus::complete;
  std::size_t cardinality_ = 0;
  std::size_t cap_ = 0;
  std::shared_ptr<const GroupStore> store_;
};

MatrixGroupEnum closure(const std::vector<CycMatrix>& gens, std::size_t cap = kDefaultCap);
// Smallest normal subgroup of <ambient_gens> containing seed.
MatrixGroupEnum normal_closure(const std::vector<CycMatrix>& ambient_gens, const CycMatrix& seed,
                               std::size_t cap = kDefaultCap);
// Least q >= 1 with m^q = E, or nullopt when the order exceeds cap.
std::optional<std::uint64_t> element_order(const CycMatrix& m, std::uint64_t cap = kDefaultCap);
bool is_member(const MatrixGroupEnum& g, const CycMatrix& m);
MatrixGroupEnum subgroup_intersection(const MatrixGroupEnum& a, const MatrixGroupEnum& b);
// True iff (Q M0^j)^(qr+1) = E; requires Q^q = E.
bool str_order_check(const CycMatrix& q_mat, const CycMatrix& m0, std::int64_t q, std::int64_t j, std::int64_t r);

// Closure of the generators' images modulo a prime ideal of degree one above
// p = 1 mod N. Reduction is multiplicative, so the image of the forward closure
// has at most as many elements as the closure itself: exceeded_cap here proves
// that closure() would exceed the same cap.
struct ImageEnum {
  std::uint64_t prime = 0;
  std::size_t cardinality = 0;
  bool exceeded_cap = false;
};
ImageEnum modular_image_closure(const std::vector<CycMatrix>& gens, std::size_t cap = kDefaultCap);

}  // namespace fcmono

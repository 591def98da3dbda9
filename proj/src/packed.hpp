#pragma once

// Packed closure engines. ExactRing stores matrices over Z[zeta_N] as int64
// coefficient arrays; ModRing stores their images modulo a prime ideal of
// degree one. Generators act by right multiplication through Ops.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "fcmono/cyclotomic.hpp"
#include "fcmono/linalg.hpp"

namespace fcmono::detail {

// Thrown when an exact product could leave the int64-safe range.
struct CoefficientOverflow : std::runtime_error {
  CoefficientOverflow() : std::runtime_error("coefficient bound exceeded") {}
};

struct ModPrime {
  std::uint64_t p = 0;
  std::uint64_t root = 0;  // image of zeta_N, a primitive N-th root of unity mod p
  std::uint32_t order = 0;
};

// Largest prime p < 2^31 with p = 1 mod N, with a primitive N-th root.
const ModPrime& mod_prime_for(std::uint32_t order);
// Image of x in F_p; throws precondition_violated if p divides a denominator.
std::uint64_t reduce_mod(const CycNum& x, const ModPrime& mp);

// Hash set of fixed-length int64 words, stored with the narrowest byte width
// that holds every coefficient seen so far.
class WordSet {
 public:
  explicit WordSet(std::size_t len);
  std::size_t size() const { return hashes_.size(); }
  std::size_t len() const { return len_; }
  // Index of x, inserting it if absent; second is true on insertion.
  std::pair<std::size_t, bool> insert(const std::int64_t* x, std::uint64_t h);
  long find(const std::int64_t* x, std::uint64_t h) const;
  void get(std::size_t i, std::int64_t* out) const;
  std::int64_t max_abs() const { return max_abs_; }
  // Inserting a coefficient that needs more bytes throws CoefficientOverflow.
  void set_max_width(int w) { max_width_ = w; }
  static std::uint64_t hash(const std::int64_t* x, std::size_t len);

 private:
  bool equal(std::size_t i, const std::int64_t* x) const;
  void widen(int width);
  void rehash(std::size_t slots);
  std::size_t len_;
  int width_ = 1;
  int max_width_ = 8;
  std::int64_t max_abs_ = 0;
  std::vector<unsigned char> data_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;
};

struct Op {
  enum class Kind { identity, sparse, rank_one } kind = Kind::identity;
  std::size_t d = 0;
  // sparse: cols[j] lists (i, scalar) with x(i, j) = scalar.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> cols;
  // rank_one: x = E + u w^T, scalar ids or -1 for zero.
  std::vector<int> u, w;
  long double growth = 1;
};

class ExactRing {
 public:
  ExactRing(const CycField& field, std::size_t d);
  std::size_t unit() const { return phi_; }
  std::size_t words() const { return d_ * d_ * phi_; }
  std::size_t dim() const { return d_; }
  const CycField& field() const { return *field_; }
  bool encode(const CycMatrix& m, std::int64_t* out) const;
  CycMatrix decode(const std::int64_t* x) const;
  // Interned scalar id, -1 for zero, -2 if the scalar is not in Z[zeta_N] or too large.
  int scalar_id(const CycNum& s);
  long double scalar_norm(int id) const;
  long double scalar_cost(int id) const;
  void identity(std::int64_t* out) const;
  inline void mul_add(int id, const std::int64_t* x, std::int64_t* out) const;
  inline void add(const std::int64_t* x, std::int64_t* out) const {
    for (std::size_t t = 0; t < phi_; ++t) out[t] += x[t];
  }
  void normalize(std::int64_t*) const {}
  // Largest coefficient allowed in stored elements for the given growth factor.
  static std::int64_t safe_bound(long double growth);

 private:
  struct Scalar {
    int kind = 0;  // 1 one, 2 minus one, 3 sparse map, 4 dense map
    std::vector<std::int64_t> dense;
    std::vector<std::uint32_t> sp_r, sp_c;
    std::vector<std::int64_t> sp_v;
    long double norm = 0;
    std::vector<Rational> key;
  };
  const CycField* field_;
  std::size_t d_, phi_;
  std::vector<Scalar> scalars_;
};

class ModRing {
 public:
  ModRing(const CycField& field, std::size_t d);
  std::size_t unit() const { return 1; }
  std::size_t words() const { return d_ * d_; }
  std::size_t dim() const { return d_; }
  std::uint64_t prime() const { return mp_->p; }
  bool encode(const CycMatrix& m, std::int64_t* out) const;
  int scalar_id(const CycNum& s);
  long double scalar_norm(int) const { return 1; }
  long double scalar_cost(int) const { return 1; }
  void identity(std::int64_t* out) const;
  inline void mul_add(int id, const std::int64_t* x, std::int64_t* out) const {
    if (x[0] == 0) return;
    out[0] = static_cast<std::int64_t>((static_cast<std::uint64_t>(out[0]) +
                                        values_[id] * static_cast<std::uint64_t>(x[0])) % mp_->p);
  }
  inline void add(const std::int64_t* x, std::int64_t* out) const {
    out[0] = static_cast<std::int64_t>((static_cast<std::uint64_t>(out[0]) + static_cast<std::uint64_t>(x[0])) % mp_->p);
  }
  void normalize(std::int64_t*) const {}
  static std::int64_t safe_bound(long double) { return INT64_MAX; }

 private:
  const CycField* field_;
  std::size_t d_;
  const ModPrime* mp_;
  std::vector<std::uint64_t> values_;
};

inline void ExactRing::mul_add(int id, const std::int64_t* x, std::int64_t* out) const {
  const Scalar& s = scalars_[id];
  switch (s.kind) {
    case 1:
      for (std::size_t t = 0; t < phi_; ++t) out[t] += x[t];
      return;
    case 2:
      for (std::size_t t = 0; t < phi_; ++t) out[t] -= x[t];
      return;
    case 3:
      for (std::size_t k = 0; k < s.sp_v.size(); ++k) out[s.sp_r[k]] += s.sp_v[k] * x[s.sp_c[k]];
      return;
    default: {
      const std::int64_t* m = s.dense.data();
      for (std::size_t r = 0; r < phi_; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < phi_; ++c) acc += m[r * phi_ + c] * x[c];
        out[r] += acc;
      }
    }
  }
}

// Breadth-first closure under right multiplication by a growing generator list.
template <class Ring>
class Closure {
 public:
  Closure(Ring ring, int max_width = 8)
      : ring_(std::move(ring)), set_(ring_.words()), buf_(ring_.words()), tmp_(ring_.words()) {
    set_.set_max_width(max_width);
    std::vector<std::int64_t> id(ring_.words());
    ring_.identity(id.data());
    set_.insert(id.data(), WordSet::hash(id.data(), id.size()));
  }

  Ring& ring() { return ring_; }
  const Ring& ring() const { return ring_; }
  std::size_t size() const { return set_.size(); }
  const WordSet& set() const { return set_; }

  // Returns false when x cannot be represented in the ring.
  bool add_generator(const CycMatrix& x);
  // Runs to a fixpoint or until size() > cap; returns true on fixpoint.
  bool run(std::size_t cap);
  bool contains(const CycMatrix& m) const;

 private:
  bool build_op(const CycMatrix& x, Op& op);
  void apply(const Op& op, const std::int64_t* g, std::int64_t* out);
  bool insert_product(std::size_t cap);

  Ring ring_;
  WordSet set_;
  std::vector<Op> ops_;
  std::size_t head_ = 0;
  std::int64_t bound_ = INT64_MAX;
  std::vector<std::int64_t> buf_, tmp_, y_;
};

}  // namespace fcmono::detail

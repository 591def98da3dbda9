#include "fcmono/groupkit.hpp"

#include <unordered_map>

#include "fcmono/error.hpp"
#include "packed.hpp"

namespace fcmono {

using detail::Closure;
using detail::CoefficientOverflow;
using detail::ExactRing;
using detail::ModRing;

std::vector<CycMatrix> MatrixGroupEnum::elements() const {
  if (!complete()) throw Error(ErrorCode::incomplete_enumeration, "elements of an incomplete enumeration");
  std::vector<CycMatrix> out;
  out.reserve(store_->size());
  for (std::size_t i = 0; i < store_->size(); ++i) out.push_back(store_->element(i));
  return out;
}

CycMatrix MatrixGroupEnum::element(std::size_t i) const {
  if (!complete()) throw Error(ErrorCode::incomplete_enumeration, "elements of an incomplete enumeration");
  return store_->element(i);
}

namespace {

class Engine {
 public:
  virtual ~Engine() = default;
  virtual bool add_generator(const CycMatrix& x) = 0;
  virtual bool run(std::size_t cap) = 0;
  virtual bool contains(const CycMatrix& m) const = 0;
  virtual std::size_t size() const = 0;
  virtual std::shared_ptr<const GroupStore> store() = 0;
};

class ExactStore : public GroupStore {
 public:
  explicit ExactStore(std::shared_ptr<Closure<ExactRing>> c) : c_(std::move(c)) {}
  std::size_t size() const override { return c_->size(); }
  CycMatrix element(std::size_t i) const override {
    std::vector<std::int64_t> x(c_->ring().words());
    c_->set().get(i, x.data());
    return c_->ring().decode(x.data());
  }
  bool contains(const CycMatrix& m) const override { return c_->contains(m); }

 private:
  std::shared_ptr<Closure<ExactRing>> c_;
};

class ExactEngine : public Engine {
 public:
  // Coefficients beyond 32 bits are left to the generic engine.
  ExactEngine(const CycField& f, std::size_t d) : c_(std::make_shared<Closure<ExactRing>>(ExactRing(f, d), 4)) {}
  bool add_generator(const CycMatrix& x) override { return c_->add_generator(x); }
  bool run(std::size_t cap) override { return c_->run(cap); }
  bool contains(const CycMatrix& m) const override { return c_->contains(m); }
  std::size_t size() const override { return c_->size(); }
  std::shared_ptr<const GroupStore> store() override { return std::make_shared<ExactStore>(c_); }

 private:
  std::shared_ptr<Closure<ExactRing>> c_;
};

class ModEngine : public Engine {
 public:
  ModEngine(const CycField& f, std::size_t d) : c_(ModRing(f, d)) {}
  bool add_generator(const CycMatrix& x) override { return c_.add_generator(x); }
  bool run(std::size_t cap) override { return c_.run(cap); }
  bool contains(const CycMatrix& m) const override { return c_.contains(m); }
  std::size_t size() const override { return c_.size(); }
  std::shared_ptr<const GroupStore> store() override { return nullptr; }

 private:
  Closure<ModRing> c_;
};

class GenericStore : public GroupStore {
 public:
  std::size_t size() const override { return elems_.size(); }
  CycMatrix element(std::size_t i) const override { return elems_[i]; }
  bool contains(const CycMatrix& m) const override { return find(m) >= 0; }
  long find(const CycMatrix& m) const {
    if (!elems_.empty() && (&m.field() != &elems_[0].field() || m.rows() != elems_[0].rows())) return -1;
    auto range = index_.equal_range(hash_canonical(m));
    for (auto it = range.first; it != range.second; ++it)
      if (elems_[it->second] == m) return static_cast<long>(it->second);
    return -1;
  }
  bool insert(CycMatrix m) {
    if (find(m) >= 0) return false;
    index_.emplace(hash_canonical(m), elems_.size());
    elems_.push_back(std::move(m));
    return true;
  }

 private:
  std::vector<CycMatrix> elems_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

class GenericEngine : public Engine {
 public:
  GenericEngine(const CycField& f, std::size_t d) : s_(std::make_shared<GenericStore>()) {
    s_->insert(CycMatrix::identity(f, d));
  }
  bool add_generator(const CycMatrix& x) override {
    gens_.push_back(x);
    for (std::size_t i = 0; i < head_; ++i) s_->insert(s_->element(i) * x);
    return true;
  }
  bool run(std::size_t cap) override {
    if (s_->size() > cap) return false;
    while (head_ < s_->size()) {
      CycMatrix g = s_->element(head_);
      for (const auto& x : gens_) {
        s_->insert(g * x);
        if (s_->size() > cap) return false;
      }
      ++head_;
    }
    return true;
  }
  bool contains(const CycMatrix& m) const override { return s_->contains(m); }
  std::size_t size() const override { return s_->size(); }
  std::shared_ptr<const GroupStore> store() override { return s_; }

 private:
  std::shared_ptr<GenericStore> s_;
  std::vector<CycMatrix> gens_;
  std::size_t head_ = 0;
};

void validate(const std::vector<CycMatrix>& gens) {
  if (gens.empty()) throw Error(ErrorCode::dimension_mismatch, "at least one generator is required");
  for (const auto& g : gens) {
    if (g.rows() != g.cols() || g.rows() != gens[0].rows())
      throw Error(ErrorCode::dimension_mismatch, "generators must be square of one size");
    if (&g.field() != &gens[0].field()) throw Error(ErrorCode::field_mismatch, "generators over different fields");
    if (mat_det(g).is_zero()) throw Error(ErrorCode::singular_matrix, "generator is singular");
  }
}

bool all_integral(const std::vector<CycMatrix>& gens) {
  for (const auto& g : gens)
    if (!g.is_integral()) return false;
  return true;
}

// Runs body on the modular image first: an image beyond the cap proves the
// exact result exceeds it too. Otherwise runs the exact packed engine, falling
// back to generic arithmetic.
template <class Body>
MatrixGroupEnum with_engines(const std::vector<CycMatrix>& gens, const std::vector<CycMatrix>& reported, Body body) {
  const CycField& f = gens[0].field();
  std::size_t d = gens[0].rows();
  try {
    ModEngine m(f, d);
    std::optional<MatrixGroupEnum> r = body(m);
    if (r && !r->complete())
      return MatrixGroupEnum(reported, EnumStatus::exceeded_cap, r->cardinality(), r->cap(), nullptr);
  } catch (const Error&) {
    // A denominator divisible by the prime; skip the shortcut.
  }
  if (all_integral(gens)) {
    try {
      ExactEngine e(f, d);
      std::optional<MatrixGroupEnum> r = body(e);
      if (r) return *r;
    } catch (const CoefficientOverflow&) {
    }
  }
  GenericEngine g(f, d);
  std::optional<MatrixGroupEnum> r = body(g);
  if (!r) throw Error(ErrorCode::precondition_violated, "generic engine rejected a generator");
  return *r;
}

}  // namespace

MatrixGroupEnum closure(const std::vector<CycMatrix>& gens, std::size_t cap) {
  validate(gens);
  auto body = [&](Engine& e) -> std::optional<MatrixGroupEnum> {
    for (const auto& g : gens)
      if (!e.add_generator(g)) return std::nullopt;
    bool done = e.run(cap);
    return MatrixGroupEnum(gens, done ? EnumStatus::complete : EnumStatus::exceeded_cap, e.size(), cap,
                           done ? e.store() : nullptr);
  };
  return with_engines(gens, gens, body);
}

MatrixGroupEnum normal_closure(const std::vector<CycMatrix>& ambient_gens, const CycMatrix& seed, std::size_t cap) {
  validate(ambient_gens);
  validate({ambient_gens[0], seed});
  std::vector<CycMatrix> inverses;
  for (const auto& g : ambient_gens) inverses.push_back(mat_inv(g));
  std::vector<CycMatrix> all = ambient_gens;
  all.push_back(seed);
  auto body = [&](Engine& e) -> std::optional<MatrixGroupEnum> {
    std::vector<CycMatrix> t{seed};
    if (!e.add_generator(seed)) return std::nullopt;
    if (!e.run(cap)) return MatrixGroupEnum(t, EnumStatus::exceeded_cap, e.size(), cap, nullptr);
    for (std::size_t idx = 0; idx < t.size(); ++idx)
      for (std::size_t k = 0; k < ambient_gens.size(); ++k) {
        CycMatrix c = ambient_gens[k] * t[idx] * inverses[k];
        if (e.contains(c)) continue;
        t.push_back(c);
        if (!e.add_generator(c)) return std::nullopt;
        if (!e.run(cap)) return MatrixGroupEnum(t, EnumStatus::exceeded_cap, e.size(), cap, nullptr);
      }
    return MatrixGroupEnum(t, EnumStatus::complete, e.size(), cap, e.store());
  };
  return with_engines(all, {seed}, body);
}

bool is_member(const MatrixGroupEnum& g, const CycMatrix& m) {
  if (!g.complete()) throw Error(ErrorCode::incomplete_enumeration, "membership in an incomplete enumeration");
  return g.store_->contains(m);
}

MatrixGroupEnum subgroup_intersection(const MatrixGroupEnum& a, const MatrixGroupEnum& b) {
  if (!a.complete() || !b.complete())
    throw Error(ErrorCode::incomplete_enumeration, "intersection of an incomplete enumeration");
  const MatrixGroupEnum& small = a.cardinality() <= b.cardinality() ? a : b;
  const MatrixGroupEnum& large = a.cardinality() <= b.cardinality() ? b : a;
  auto store = std::make_shared<GenericStore>();
  std::vector<CycMatrix> common;
  for (std::size_t i = 0; i < small.cardinality(); ++i) {
    CycMatrix m = small.element(i);
    if (is_member(large, m)) {
      common.push_back(m);
      store->insert(m);
    }
  }
  std::size_t n = common.size();
  return MatrixGroupEnum(std::move(common), EnumStatus::complete, n, std::max(a.cap(), b.cap()), store);
}

ImageEnum modular_image_closure(const std::vector<CycMatrix>& gens, std::size_t cap) {
  validate(gens);
  Closure<ModRing> c(ModRing(gens[0].field(), gens[0].rows()));
  for (const auto& g : gens)
    if (!c.add_generator(g))
      throw Error(ErrorCode::precondition_violated, "generator does not reduce modulo the chosen prime");
  ImageEnum out;
  out.prime = c.ring().prime();
  out.exceeded_cap = !c.run(cap);
  out.cardinality = c.size();
  return out;
}

std::optional<std::uint64_t> element_order(const CycMatrix& m, std::uint64_t cap) {
  validate({m});
  std::size_t d = m.rows();
  const auto& mp = detail::mod_prime_for(m.field().order());
  std::vector<std::uint64_t> x(d * d), pw(d * d), tmp(d * d);
  bool reducible = true;
  try {
    for (std::size_t e = 0; e < d * d; ++e) x[e] = detail::reduce_mod(m.entries()[e], mp);
  } catch (const Error&) {
    reducible = false;
  }
  if (reducible) {
    // Order of the image; it divides the order of m when that is finite.
    pw = x;
    std::uint64_t o = 1;
    auto is_id = [&](const std::vector<std::uint64_t>& a) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (a[i * d + j] != (i == j ? 1u : 0u)) return false;
      return true;
    };
    while (!is_id(pw)) {
      if (++o > cap) return std::nullopt;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          std::uint64_t acc = 0;
          for (std::size_t k = 0; k < d; ++k) acc = (acc + pw[i * d + k] * x[k * d + j]) % mp.p;
          tmp[i * d + j] = acc;
        }
      pw.swap(tmp);
    }
    if (mat_pow(m, static_cast<std::int64_t>(o)).is_identity()) return o;
    // m^o lies in the kernel of reduction at an unramified prime above p > 2,
    // which contains no nontrivial element of finite order; so m has infinite order.
    return std::nullopt;
  }
  CycMatrix p = m;
  for (std::uint64_t q = 1; q <= cap; ++q) {
    if (p.is_identity()) return q;
    p = p * m;
  }
  return std::nullopt;
}

bool str_order_check(const CycMatrix& q_mat, const CycMatrix& m0, std::int64_t q, std::int64_t j, std::int64_t r) {
  if (q < 1) throw Error(ErrorCode::precondition_violated, "q must be positive");
  if (!mat_pow(q_mat, q).is_identity()) throw Error(ErrorCode::precondition_violated, "Q^q is not the identity");
  return mat_pow(q_mat * mat_pow(m0, j), q * r + 1).is_identity();
}

}  // namespace fcmono

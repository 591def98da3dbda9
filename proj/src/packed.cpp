#include "packed.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include "fcmono/error.hpp"

namespace fcmono::detail {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      f.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) f.push_back(n);
  return f;
}

}  // namespace

const ModPrime& mod_prime_for(std::uint32_t order) {
  static std::mutex mutex;
  static std::map<std::uint32_t, ModPrime> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  std::uint64_t limit = (std::uint64_t{1} << 31) - 1;
  std::uint64_t p = limit - (limit - 1) % order;
  while (!is_prime_u32(p)) p -= order;
  auto factors = prime_factors(order);
  ModPrime mp;
  mp.p = p;
  mp.order = order;
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t r = pow_mod(g, (p - 1) / order, p);
    bool primitive = true;
    for (auto q : factors)
      if (pow_mod(r, order / q, p) == 1) primitive = false;
    if (order == 1 || primitive) {
      mp.root = r;
      break;
    }
  }
  return cache.emplace(order, mp).first->second;
}

std::uint64_t reduce_mod(const CycNum& x, const ModPrime& mp) {
  std::uint64_t acc = 0, zp = 1;
  mpz_class pz(static_cast<unsigned long>(mp.p));
  for (const auto& c : x.coeffs()) {
    if (sgn(c) != 0) {
      mpz_class den = c.get_den() % pz;
      if (den == 0) throw Error(ErrorCode::precondition_violated, "prime divides a denominator");
      mpz_class num = c.get_num() % pz;
      if (num < 0) num += pz;
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
      std::uint64_t v = mpz_class(num * inv % pz).get_ui();
      acc = (acc + v * zp) % mp.p;
    }
    zp = zp * mp.root % mp.p;
  }
  return acc;
}

// WordSet

WordSet::WordSet(std::size_t len) : len_(len) {}

std::uint64_t WordSet::hash(const std::int64_t* x, std::size_t len) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h = (h ^ static_cast<std::uint64_t>(x[i])) * 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
  }
  h ^= h >> 32;
  return h;
}

bool WordSet::equal(std::size_t i, const std::int64_t* x) const {
  const unsigned char* base = data_.data() + i * len_ * width_;
  switch (width_) {
    case 1: {
      auto p = reinterpret_cast<const std::int8_t*>(base);
      for (std::size_t k = 0; k < len_; ++k)
        if (p[k] != x[k]) return false;
      return true;
    }
    case 2: {
      auto p = reinterpret_cast<const std::int16_t*>(base);
      for (std::size_t k = 0; k < len_; ++k)
        if (p[k] != x[k]) return false;
      return true;
    }
    case 4: {
      auto p = reinterpret_cast<const std::int32_t*>(base);
      for (std::size_t k = 0; k < len_; ++k)
        if (p[k] != x[k]) return false;
      return true;
    }
    default:
      return std::memcmp(base, x, len_ * 8) == 0;
  }
}

void WordSet::get(std::size_t i, std::int64_t* out) const {
  const unsigned char* base = data_.data() + i * len_ * width_;
  switch (width_) {
    case 1:
      for (std::size_t k = 0; k < len_; ++k) out[k] = reinterpret_cast<const std::int8_t*>(base)[k];
      break;
    case 2:
      for (std::size_t k = 0; k < len_; ++k) out[k] = reinterpret_cast<const std::int16_t*>(base)[k];
      break;
    case 4:
      for (std::size_t k = 0; k < len_; ++k) out[k] = reinterpret_cast<const std::int32_t*>(base)[k];
      break;
    default:
      std::memcpy(out, base, len_ * 8);
  }
}

void WordSet::widen(int width) {
  std::vector<unsigned char> fresh(size() * len_ * width);
  std::vector<std::int64_t> tmp(len_);
  for (std::size_t i = 0; i < size(); ++i) {
    get(i, tmp.data());
    unsigned char* base = fresh.data() + i * len_ * width;
    for (std::size_t k = 0; k < len_; ++k) {
      switch (width) {
        case 2: reinterpret_cast<std::int16_t*>(base)[k] = static_cast<std::int16_t>(tmp[k]); break;
        case 4: reinterpret_cast<std::int32_t*>(base)[k] = static_cast<std::int32_t>(tmp[k]); break;
        default: reinterpret_cast<std::int64_t*>(base)[k] = tmp[k];
      }
    }
  }
  data_.swap(fresh);
  width_ = width;
}

void WordSet::rehash(std::size_t nslots) {
  slots_.assign(nslots, 0);
  std::size_t mask = nslots - 1;
  for (std::size_t idx = 0; idx < hashes_.size(); ++idx) {
    std::size_t i = hashes_[idx] & mask;
    while (slots_[i]) i = (i + 1) & mask;
    slots_[i] = static_cast<std::uint32_t>(idx + 1);
  }
}

long WordSet::find(const std::int64_t* x, std::uint64_t h) const {
  if (slots_.empty()) return -1;
  std::size_t mask = slots_.size() - 1;
  for (std::size_t i = h & mask; slots_[i]; i = (i + 1) & mask) {
    std::size_t idx = slots_[i] - 1;
    if (hashes_[idx] == h && equal(idx, x)) return static_cast<long>(idx);
  }
  return -1;
}

std::pair<std::size_t, bool> WordSet::insert(const std::int64_t* x, std::uint64_t h) {
  if (slots_.empty()) rehash(1024);
  std::size_t mask = slots_.size() - 1;
  std::size_t i = h & mask;
  for (; slots_[i]; i = (i + 1) & mask) {
    std::size_t idx = slots_[i] - 1;
    if (hashes_[idx] == h && equal(idx, x)) return {idx, false};
  }
  if (size() >= 0xfffffff0u) throw Error(ErrorCode::precondition_violated, "element store full");
  std::int64_t m = 0;
  for (std::size_t k = 0; k < len_; ++k) m = std::max(m, x[k] < 0 ? -x[k] : x[k]);
  max_abs_ = std::max(max_abs_, m);
  int need = m < 128 ? 1 : m < 32768 ? 2 : m < 2147483648LL ? 4 : 8;
  if (need > max_width_) throw CoefficientOverflow();
  if (need > width_) widen(need);
  std::size_t off = data_.size();
  data_.resize(off + len_ * width_);
  unsigned char* base = data_.data() + off;
  for (std::size_t k = 0; k < len_; ++k) {
    switch (width_) {
      case 1: reinterpret_cast<std::int8_t*>(base)[k] = static_cast<std::int8_t>(x[k]); break;
      case 2: reinterpret_cast<std::int16_t*>(base)[k] = static_cast<std::int16_t>(x[k]); break;
      case 4: reinterpret_cast<std::int32_t*>(base)[k] = static_cast<std::int32_t>(x[k]); break;
      default: reinterpret_cast<std::int64_t*>(base)[k] = x[k];
    }
  }
  hashes_.push_back(h);
  std::size_t idx = hashes_.size() - 1;
  slots_[i] = static_cast<std::uint32_t>(idx + 1);
  if (hashes_.size() * 2 > slots_.size()) rehash(slots_.size() * 2);
  return {idx, true};
}

// ExactRing

ExactRing::ExactRing(const CycField& field, std::size_t d) : field_(&field), d_(d), phi_(field.degree()) {}

std::int64_t ExactRing::safe_bound(long double growth) {
  long double b = std::ldexp(1.0L, 61) / std::max(growth, 1.0L);
  if (b >= 9.2e18L) return INT64_MAX;
  return static_cast<std::int64_t>(std::floor(b));
}

bool ExactRing::encode(const CycMatrix& m, std::int64_t* out) const {
  if (&m.field() != field_ || m.rows() != d_ || m.cols() != d_) return false;
  for (std::size_t e = 0; e < d_ * d_; ++e) {
    const auto& c = m.entries()[e].coeffs();
    for (std::size_t t = 0; t < phi_; ++t) {
      if (c[t].get_den() != 1 || !c[t].get_num().fits_slong_p()) return false;
      long v = c[t].get_num().get_si();
      if (v > (INT64_MAX >> 1) || v < -(INT64_MAX >> 1)) return false;
      out[e * phi_ + t] = v;
    }
  }
  return true;
}

CycMatrix ExactRing::decode(const std::int64_t* x) const {
  CycMatrix m(*field_, d_, d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) {
      std::vector<Rational> c(phi_);
      const std::int64_t* p = x + (i * d_ + j) * phi_;
      for (std::size_t t = 0; t < phi_; ++t) c[t] = static_cast<long>(p[t]);
      m(i, j) = CycNum(*field_, std::move(c));
    }
  return m;
}

void ExactRing::identity(std::int64_t* out) const {
  std::fill(out, out + words(), 0);
  for (std::size_t i = 0; i < d_; ++i) out[(i * d_ + i) * phi_] = 1;
}

int ExactRing::scalar_id(const CycNum& s) {
  if (s.is_zero()) return -1;
  if (!s.is_integral()) return -2;
  for (std::size_t i = 0; i < scalars_.size(); ++i)
    if (scalars_[i].key == s.coeffs()) return static_cast<int>(i);
  Scalar sc;
  sc.key = s.coeffs();
  if (s.is_one()) {
    sc.kind = 1;
    sc.norm = 1;
  } else if ((-s).is_one()) {
    sc.kind = 2;
    sc.norm = 1;
  } else {
    sc.dense.assign(phi_ * phi_, 0);
    std::vector<long double> rowsum(phi_, 0);
    std::size_t nnz = 0;
    for (std::size_t c = 0; c < phi_; ++c) {
      CycNum col = s * CycNum::root_power(*field_, static_cast<std::int64_t>(c));
      for (std::size_t r = 0; r < phi_; ++r) {
        const Rational& v = col.coeffs()[r];
        if (!v.get_num().fits_slong_p()) return -2;
        long x = v.get_num().get_si();
        if (x > (1L << 40) || x < -(1L << 40)) return -2;
        sc.dense[r * phi_ + c] = x;
        if (x != 0) {
          ++nnz;
          rowsum[r] += std::fabs(static_cast<long double>(x));
          sc.sp_r.push_back(static_cast<std::uint32_t>(r));
          sc.sp_c.push_back(static_cast<std::uint32_t>(c));
          sc.sp_v.push_back(x);
        }
      }
    }
    for (auto v : rowsum) sc.norm = std::max(sc.norm, v);
    sc.kind = nnz * 4 <= phi_ * phi_ ? 3 : 4;
  }
  scalars_.push_back(std::move(sc));
  return static_cast<int>(scalars_.size() - 1);
}

long double ExactRing::scalar_norm(int id) const { return id < 0 ? 0 : scalars_[id].norm; }

long double ExactRing::scalar_cost(int id) const {
  if (id < 0) return 0;
  const Scalar& s = scalars_[id];
  if (s.kind <= 2) return static_cast<long double>(phi_);
  if (s.kind == 3) return static_cast<long double>(s.sp_v.size());
  return static_cast<long double>(phi_ * phi_);
}

// ModRing

ModRing::ModRing(const CycField& field, std::size_t d) : field_(&field), d_(d), mp_(&mod_prime_for(field.order())) {}

bool ModRing::encode(const CycMatrix& m, std::int64_t* out) const {
  if (&m.field() != field_ || m.rows() != d_ || m.cols() != d_) return false;
  try {
    for (std::size_t e = 0; e < d_ * d_; ++e) out[e] = static_cast<std::int64_t>(reduce_mod(m.entries()[e], *mp_));
  } catch (const Error&) {
    return false;
  }
  return true;
}

int ModRing::scalar_id(const CycNum& s) {
  std::uint64_t v;
  try {
    v = reduce_mod(s, *mp_);
  } catch (const Error&) {
    return -2;
  }
  if (v == 0) return s.is_zero() ? -1 : -2;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] == v) return static_cast<int>(i);
  values_.push_back(v);
  return static_cast<int>(values_.size() - 1);
}

void ModRing::identity(std::int64_t* out) const {
  std::fill(out, out + words(), 0);
  for (std::size_t i = 0; i < d_; ++i) out[i * d_ + i] = 1;
}

// Closure

template <class Ring>
bool Closure<Ring>::build_op(const CycMatrix& x, Op& op) {
  std::size_t d = ring_.dim();
  if (x.rows() != d || x.cols() != d) return false;
  op = Op();
  op.d = d;
  CycMatrix r = x - CycMatrix::identity(x.field(), d);
  bool zero = true;
  for (const auto& e : r.entries()) zero = zero && e.is_zero();
  if (zero) return true;

  Op sparse;
  sparse.kind = Op::Kind::sparse;
  sparse.d = d;
  sparse.cols.resize(d);
  long double sparse_cost = 0, sparse_growth = 0;
  bool sparse_ok = true;
  for (std::size_t j = 0; j < d && sparse_ok; ++j) {
    long double g = 0;
    for (std::size_t i = 0; i < d; ++i) {
      int id = ring_.scalar_id(x(i, j));
      if (id == -2) {
        sparse_ok = false;
        break;
      }
      if (id < 0) continue;
      sparse.cols[j].push_back({static_cast<std::uint32_t>(i), id});
      g += ring_.scalar_norm(id);
      sparse_cost += ring_.scalar_cost(id) * d;
    }
    sparse_growth = std::max(sparse_growth, g);
  }
  sparse.growth = sparse_growth;

  Op rank1;
  bool rank1_ok = false;
  long double rank1_cost = 0;
  std::size_t j0 = 0;
  while (j0 < d) {
    bool nz = false;
    for (std::size_t i = 0; i < d; ++i) nz = nz || !r(i, j0).is_zero();
    if (nz) break;
    ++j0;
  }
  for (std::size_t p = 0; p < d && !rank1_ok && j0 < d; ++p) {
    if (r(p, j0).is_zero()) continue;
    CycNum pinv = r(p, j0).inv();
    std::vector<CycNum> w(d, CycNum(x.field()));
    for (std::size_t j = 0; j < d; ++j) w[j] = r(p, j) * pinv;
    bool match = true;
    for (std::size_t i = 0; i < d && match; ++i)
      for (std::size_t j = 0; j < d && match; ++j) match = r(i, j) == r(i, j0) * w[j];
    if (!match) break;  // rank above one
    Op cand;
    cand.kind = Op::Kind::rank_one;
    cand.d = d;
    bool ok = true;
    long double su = 0, sw = 0, cost = static_cast<long double>(d * d * ring_.unit());
    for (std::size_t i = 0; i < d && ok; ++i) {
      int id = ring_.scalar_id(r(i, j0));
      ok = id != -2;
      cand.u.push_back(id);
      su += ring_.scalar_norm(id);
      cost += ring_.scalar_cost(id) * d;
    }
    for (std::size_t j = 0; j < d && ok; ++j) {
      int id = ring_.scalar_id(w[j]);
      ok = id != -2;
      cand.w.push_back(id);
      sw = std::max(sw, ring_.scalar_norm(id));
      cost += ring_.scalar_cost(id) * d;
    }
    if (!ok) continue;
    cand.growth = 1 + sw * su;
    rank1 = std::move(cand);
    rank1_cost = cost;
    rank1_ok = true;
  }
  if (!sparse_ok && !rank1_ok) return false;
  if (rank1_ok && (!sparse_ok || rank1_cost < sparse_cost))
    op = std::move(rank1);
  else
    op = std::move(sparse);
  return true;
}

template <class Ring>
void Closure<Ring>::apply(const Op& op, const std::int64_t* g, std::int64_t* out) {
  std::size_t d = op.d, u = ring_.unit();
  switch (op.kind) {
    case Op::Kind::identity:
      std::copy(g, g + ring_.words(), out);
      return;
    case Op::Kind::sparse:
      std::fill(out, out + ring_.words(), 0);
      for (std::size_t j = 0; j < d; ++j)
        for (const auto& [i, s] : op.cols[j])
          for (std::size_t r = 0; r < d; ++r) {
            const std::int64_t* src = g + (r * d + i) * u;
            bool nz = false;
            for (std::size_t t = 0; t < u && !nz; ++t) nz = src[t] != 0;
            if (nz) ring_.mul_add(s, src, out + (r * d + j) * u);
          }
      return;
    case Op::Kind::rank_one: {
      std::copy(g, g + ring_.words(), out);
      y_.assign(d * u, 0);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i < d; ++i) {
          if (op.u[i] < 0) continue;
          const std::int64_t* src = g + (r * d + i) * u;
          bool nz = false;
          for (std::size_t t = 0; t < u && !nz; ++t) nz = src[t] != 0;
          if (nz) ring_.mul_add(op.u[i], src, y_.data() + r * u);
        }
      for (std::size_t r = 0; r < d; ++r) {
        const std::int64_t* yr = y_.data() + r * u;
        bool nz = false;
        for (std::size_t t = 0; t < u && !nz; ++t) nz = yr[t] != 0;
        if (!nz) continue;
        for (std::size_t j = 0; j < d; ++j)
          if (op.w[j] >= 0) ring_.mul_add(op.w[j], yr, out + (r * d + j) * u);
      }
      return;
    }
  }
}

template <class Ring>
bool Closure<Ring>::insert_product(std::size_t cap) {
  if (bound_ != INT64_MAX) {
    for (std::int64_t v : tmp_)
      if (v > bound_ || v < -bound_) throw CoefficientOverflow();
  }
  set_.insert(tmp_.data(), WordSet::hash(tmp_.data(), tmp_.size()));
  return set_.size() <= cap;
}

template <class Ring>
bool Closure<Ring>::add_generator(const CycMatrix& x) {
  Op op;
  if (!build_op(x, op)) return false;
  long double growth = op.growth;
  for (const auto& o : ops_) growth = std::max(growth, o.growth);
  bound_ = Ring::safe_bound(growth);
  if (set_.max_abs() > bound_) throw CoefficientOverflow();
  ops_.push_back(std::move(op));
  for (std::size_t i = 0; i < head_; ++i) {
    set_.get(i, buf_.data());
    apply(ops_.back(), buf_.data(), tmp_.data());
    insert_product(SIZE_MAX);
  }
  return true;
}

template <class Ring>
bool Closure<Ring>::run(std::size_t cap) {
  if (set_.size() > cap) return false;
  while (head_ < set_.size()) {
    set_.get(head_, buf_.data());
    for (const auto& op : ops_) {
      apply(op, buf_.data(), tmp_.data());
      if (!insert_product(cap)) return false;
    }
    ++head_;
  }
  return true;
}

template <class Ring>
bool Closure<Ring>::contains(const CycMatrix& m) const {
  std::vector<std::int64_t> x(ring_.words());
  if (!ring_.encode(m, x.data())) return false;
  return set_.find(x.data(), WordSet::hash(x.data(), x.size())) >= 0;
}

template class Closure<ExactRing>;
template class Closure<ModRing>;

}  // namespace fcmono::detail

#include "fcmono/cyclotomic.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "fcmono/error.hpp"

namespace fcmono {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw Error(ErrorCode::parse_error, "empty rational");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  std::size_t slash = t.find('/');
  auto digits = [&](std::size_t b, std::size_t e) {
    if (b >= e) return false;
    for (std::size_t i = b; i < e; ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  bool ok = slash == std::string::npos ? digits(start, t.size())
                                       : digits(start, slash) && digits(slash + 1, t.size());
  if (!ok) throw Error(ErrorCode::parse_error, "malformed rational '" + text + "'");
  if (t[0] == '+') t.erase(0, 1);
  Rational q;
  if (slash == std::string::npos) {
    q = mpz_class(t);
  } else {
    std::size_t sl = t.find('/');
    mpz_class den(t.substr(sl + 1));
    if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + text + "'");
    q = Rational(mpz_class(t.substr(0, sl)), den);
    q.canonicalize();
  }
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational frac_part(const Rational& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

std::mutex g_poly_mutex;

std::vector<std::int64_t> divide_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  // den monic.
  std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw Error(ErrorCode::precondition_violated, "inexact polynomial division");
  return quot;
}

const std::vector<std::int64_t>& cyclotomic_cached(std::uint32_t n,
                                                   std::map<std::uint32_t, std::vector<std::int64_t>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::int64_t> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d)
    if (n % d == 0) poly = divide_exact(poly, cyclotomic_cached(d, cache));
  return cache.emplace(n, std::move(poly)).first->second;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_parameters, "cyclotomic order must be positive");
  static std::map<std::uint32_t, std::vector<std::int64_t>> cache;
  std::lock_guard<std::mutex> lock(g_poly_mutex);
  return cyclotomic_cached(n, cache);
}

CycField::CycField(std::uint32_t order) : order_(order) {
  min_poly_ = cyclotomic_polynomial(order);
  degree_ = min_poly_.size() - 1;
  powers_.assign(order, std::vector<std::int64_t>(degree_, 0));
  std::vector<std::int64_t> cur(degree_, 0);
  cur[0] = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    powers_[k] = cur;
    std::int64_t top = cur[degree_ - 1];
    for (std::size_t i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < degree_; ++i) cur[i] -= top * min_poly_[i];
  }
}

const CycField& CycField::get(std::uint32_t order) {
  if (order == 0) throw Error(ErrorCode::invalid_parameters, "field order must be positive");
  static std::mutex mutex;
  static std::map<std::uint32_t, std::unique_ptr<CycField>> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = registry[order];
  if (!slot) slot.reset(new CycField(order));
  return *slot;
}

const std::vector<std::int64_t>& CycField::power(std::int64_t k) const {
  std::int64_t n = order_;
  return powers_[static_cast<std::size_t>(((k % n) + n) % n)];
}

std::string CycField::name() const { return "Q(zeta_" + std::to_string(order_) + ")"; }

CycNum::CycNum(const CycField& field) : field_(&field), coeffs_(field.degree()) {}

CycNum::CycNum(const CycField& field, std::vector<Rational> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != field.degree())
    throw Error(ErrorCode::dimension_mismatch, "coefficient vector length differs from field degree");
}

CycNum CycNum::from_rational(const CycField& field, const Rational& q) {
  CycNum r(field);
  r.coeffs_[0] = q;
  return r;
}

CycNum CycNum::root_power(const CycField& field, std::int64_t k) {
  CycNum r(field);
  const auto& p = field.power(k);
  for (std::size_t i = 0; i < p.size(); ++i) r.coeffs_[i] = p[i];
  return r;
}

CycNum CycNum::root_of_unity(const CycField& field, const Rational& q) {
  Rational k = q * field.order();
  k.canonicalize();
  if (k.get_den() != 1)
    throw Error(ErrorCode::not_a_subfield,
                "exp(2 pi i * " + q.get_str() + ") does not lie in " + field.name());
  mpz_class kn = k.get_num() % static_cast<unsigned long>(field.order());
  return root_power(field, kn.get_si());
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

bool CycNum::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return false;
  return true;
}

bool CycNum::is_integral() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

void CycNum::check_same(const CycNum& o) const {
  if (field_ != o.field_)
    throw Error(ErrorCode::field_mismatch, field_->name() + " vs " + o.field_->name());
}

CycNum CycNum::operator+(const CycNum& o) const {
  CycNum r(*this);
  r += o;
  return r;
}

CycNum CycNum::operator-(const CycNum& o) const {
  CycNum r(*this);
  r -= o;
  return r;
}

CycNum CycNum::operator-() const {
  CycNum r(*field_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
  return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(o.coeffs_[i]) != 0) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(o.coeffs_[i]) != 0) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycNum CycNum::operator*(const CycNum& o) const {
  check_same(o);
  std::size_t d = coeffs_.size();
  std::vector<Rational> raw(2 * d - 1);
  Rational t;
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(o.coeffs_[j]) == 0) continue;
      t = coeffs_[i] * o.coeffs_[j];
      raw[i + j] += t;
    }
  }
  CycNum r(*field_);
  for (std::size_t i = 0; i < d; ++i) r.coeffs_[i] = raw[i];
  for (std::size_t m = d; m < raw.size(); ++m) {
    if (sgn(raw[m]) == 0) continue;
    const auto& p = field_->power(static_cast<std::int64_t>(m));
    for (std::size_t i = 0; i < d; ++i)
      if (p[i] != 0) r.coeffs_[i] += raw[m] * p[i];
  }
  return r;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  *this = *this * o;
  return *this;
}

CycNum CycNum::operator/(const CycNum& o) const { return *this * o.inv(); }

bool CycNum::operator==(const CycNum& o) const {
  check_same(o);
  return coeffs_ == o.coeffs_;
}

CycNum CycNum::inv() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of zero in " + field_->name());
  std::int64_t k = root_exponent();
  if (k >= 0) return root_power(*field_, -k);
  // Solve (multiplication by *this) y = 1 over Q.
  std::size_t d = coeffs_.size();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1));
  for (std::size_t j = 0; j < d; ++j) {
    CycNum col = *this * root_power(*field_, static_cast<std::int64_t>(j));
    for (std::size_t i = 0; i < d; ++i) a[i][j] = col.coeffs_[i];
  }
  a[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && sgn(a[piv][c]) == 0) ++piv;
    if (piv == d) throw Error(ErrorCode::division_by_zero, "singular multiplication map");
    std::swap(a[piv], a[c]);
    Rational inv = 1 / a[c][c];
    for (std::size_t j = c; j <= d; ++j) a[c][j] *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j <= d; ++j) a[i][j] -= f * a[c][j];
    }
  }
  CycNum r(*field_);
  for (std::size_t i = 0; i < d; ++i) r.coeffs_[i] = a[i][d];
  return r;
}

CycNum CycNum::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  CycNum result = from_int(*field_, 1);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycNum CycNum::scaled(const Rational& q) const {
  CycNum r(*this);
  for (auto& c : r.coeffs_) c *= q;
  return r;
}

CycNum CycNum::embed(const CycField& target) const {
  if (target.order() % field_->order() != 0)
    throw Error(ErrorCode::not_a_subfield, field_->name() + " is not contained in " + target.name());
  std::int64_t step = target.order() / field_->order();
  CycNum r(target);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    const auto& p = target.power(static_cast<std::int64_t>(i) * step);
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] != 0) r.coeffs_[j] += coeffs_[i] * p[j];
  }
  return r;
}

std::int64_t CycNum::root_exponent() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return -1;
  std::uint32_t n = field_->order();
  for (std::uint32_t k = 0; k < n; ++k) {
    const auto& p = field_->power(k);
    bool eq = true;
    for (std::size_t i = 0; i < p.size() && eq; ++i) eq = coeffs_[i] == p[i];
    if (eq) return k;
  }
  return -1;
}

std::uint32_t CycNum::root_order() const {
  std::int64_t k = root_exponent();
  if (k < 0) throw Error(ErrorCode::precondition_violated, to_string() + " is not a root of unity");
  std::uint32_t n = field_->order();
  return n / std::gcd(n, static_cast<std::uint32_t>(k));
}

std::string CycNum::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    std::string term;
    if (k == 0) {
      term = a.get_str();
    } else {
      if (a != 1) term = a.get_str() + "*";
      term += "z";
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

CycNum CycNum::parse(const CycField& field, const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw Error(ErrorCode::parse_error, "empty cyclotomic number");
  CycNum result(field);
  std::size_t pos = 0;
  while (pos < t.size()) {
    int sign = 1;
    if (t[pos] == '+' || t[pos] == '-') {
      sign = t[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < t.size() && t[end] != '+' && t[end] != '-') ++end;
    std::string term = t.substr(pos, end - pos);
    if (term.empty()) throw Error(ErrorCode::parse_error, "dangling sign in '" + text + "'");
    Rational coeff = 1;
    std::int64_t k = 0;
    std::size_t zpos = term.find('z');
    if (zpos == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      std::string head = term.substr(0, zpos);
      if (!head.empty()) {
        if (head.back() != '*') throw Error(ErrorCode::parse_error, "expected '*' in '" + term + "'");
        head.pop_back();
        coeff = parse_rational(head);
      }
      std::string tail = term.substr(zpos + 1);
      if (tail.empty()) {
        k = 1;
      } else {
        if (tail[0] != '^' || tail.size() == 1) throw Error(ErrorCode::parse_error, "bad exponent in '" + term + "'");
        for (std::size_t i = 1; i < tail.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(tail[i])))
            throw Error(ErrorCode::parse_error, "bad exponent in '" + term + "'");
        k = std::stoll(tail.substr(1));
      }
    }
    result += root_power(field, k).scaled(coeff * sign);
    pos = end;
  }
  return result;
}

std::size_t CycNum::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ field_->order();
  for (const auto& c : coeffs_) {
    std::uint64_t v = static_cast<std::uint64_t>(mpz_get_si(c.get_num_mpz_t())) * 0x100000001b3ULL +
                      static_cast<std::uint64_t>(mpz_get_si(c.get_den_mpz_t()));
    h = (h ^ v) * 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace fcmono

#include "qac/exactfield.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qac/error.hpp"

namespace qac {

// ---------------------------------------------------------------- rationals

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw DivisionByZero("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) { return r.get_str(10); }

int totient(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

using IntPoly = std::vector<long>;

// Exact division of monic integer polynomials.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return quot;
}

std::mutex& poly_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, IntPoly>& poly_cache() {
  static std::map<int, IntPoly> cache;
  return cache;
}

const IntPoly& cyclotomic_locked(int n) {
  auto& cache = poly_cache();
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(std::move(p), cyclotomic_locked(d));
  }
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw Error("conductor must be positive");
  std::lock_guard lock(poly_mutex());
  return cyclotomic_locked(n);
}

// ------------------------------------------------------------- field tables

class CyclotomicField {
 public:
  explicit CyclotomicField(int n) : n_(n), phi_(totient(n)), poly_(cyclotomic_polynomial(n)) {
    // z^k mod Phi_n for k in [0, n), stored sparsely.
    powers_.resize(n);
    std::vector<long> cur(phi_, 0);
    cur[0] = 1;
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < phi_; ++j)
        if (cur[j] != 0) powers_[k].push_back({j, cur[j]});
      // multiply by z: shift and fold the top coefficient back through Phi.
      const long top = cur[phi_ - 1];
      for (int j = phi_ - 1; j > 0; --j) cur[j] = cur[j - 1] - top * poly_[j];
      cur[0] = -top * poly_[0];
    }
  }

  int conductor() const { return n_; }
  int phi() const { return phi_; }
  const IntPoly& poly() const { return poly_; }

  struct Term {
    int index;
    long coeff;
  };
  const std::vector<Term>& power(long k) const {
    long r = k % n_;
    if (r < 0) r += n_;
    return powers_[static_cast<std::size_t>(r)];
  }

  static const CyclotomicField* get(int n) {
    if (n < 1) throw Error("conductor must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CyclotomicField>> registry;
    std::lock_guard lock(mutex);
    auto& slot = registry[n];
    if (!slot) slot = std::make_unique<CyclotomicField>(n);
    return slot.get();
  }

  // Folds an arbitrary-length polynomial in z into the power basis.
  std::vector<Rational> reduce(std::span<const Rational> poly) const {
    std::vector<Rational> out(phi_);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (sgn(poly[k]) == 0) continue;
      if (static_cast<int>(k) < phi_) {
        out[k] += poly[k];
        continue;
      }
      for (const Term& t : power(static_cast<long>(k))) out[t.index] += poly[k] * t.coeff;
    }
    return out;
  }

 private:
  int n_;
  int phi_;
  IntPoly poly_;
  std::vector<std::vector<Term>> powers_;
};

// ------------------------------------------------------- rational polynomials

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Returns (quotient, remainder); b must be nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const Rational& top = a[shift + b.size() - 1];
    if (sgn(top) == 0) continue;
    const Rational c = top / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

// ------------------------------------------------------------------ CycNum

CycNum::CycNum() : field_(CyclotomicField::get(1)), coeffs_(1) {}

CycNum::CycNum(const CyclotomicField* field, std::vector<Rational> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {}

CycNum CycNum::from_rational(int conductor, const Rational& r) {
  const CyclotomicField* f = CyclotomicField::get(conductor);
  std::vector<Rational> c(f->phi());
  c[0] = r;
  c[0].canonicalize();  // mpq_class(5, 10) is not reduced on construction
  return CycNum(f, std::move(c));
}

CycNum CycNum::root(int conductor, long k) {
  const CyclotomicField* f = CyclotomicField::get(conductor);
  std::vector<Rational> c(f->phi());
  for (const auto& t : f->power(k)) c[t.index] = t.coeff;
  return CycNum(f, std::move(c));
}

CycNum CycNum::from_poly(int conductor, std::span<const Rational> coeffs) {
  const CyclotomicField* f = CyclotomicField::get(conductor);
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  for (auto& q : c) q.canonicalize();
  return CycNum(f, f->reduce(c));
}

int CycNum::conductor() const { return field_->conductor(); }

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (sgn(coeffs_[j]) != 0) return false;
  return true;
}

bool CycNum::is_one() const { return is_rational() && coeffs_[0] == 1; }

void CycNum::require_same_field(const CycNum& other, const char* what) const {
  if (field_ != other.field_) {
    throw ConductorMismatch(std::string(what) + ": conductors " + std::to_string(conductor()) +
                            " and " + std::to_string(other.conductor()) +
                            " differ; lift to a common conductor first");
  }
}

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycNum& CycNum::operator+=(const CycNum& other) {
  require_same_field(other, "add");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& other) {
  require_same_field(other, "sub");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

CycNum& CycNum::operator*=(const Rational& r) {
  Rational s = r;
  s.canonicalize();
  for (auto& c : coeffs_) c *= s;
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& other) {
  *this = *this * other;
  return *this;
}

CycNum operator*(const CycNum& a, const CycNum& b) {
  a.require_same_field(b, "mul");
  const std::size_t phi = a.coeffs_.size();
  if (phi == 1) return CycNum(a.field_, {a.coeffs_[0] * b.coeffs_[0]});
  std::vector<Rational> prod(2 * phi - 1);
  for (std::size_t i = 0; i < phi; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return CycNum(a.field_, a.field_->reduce(prod));
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (is_rational()) return from_rational(conductor(), 1 / coeffs_[0]);
  // Roots of unity, Gaussian rationals and most catalog entries have a
  // rational |a|^2, and then a^-1 = conj(a) / |a|^2 without any gcd.
  {
    CycNum c = conj();
    const CycNum n = *this * c;
    if (n.is_rational()) return c *= Rational(1 / n.coeffs_[0]);
  }

  QPoly modulus(field_->poly().begin(), field_->poly().end());
  QPoly r0 = modulus;
  QPoly r1(coeffs_.begin(), coeffs_.end());
  trim(r1);
  QPoly s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // Phi_N is irreducible, so the gcd r0 is a nonzero constant.
  const Rational g = r0.at(0);
  for (auto& c : s0) c /= g;
  return CycNum(field_, field_->reduce(s0));
}

CycNum CycNum::conj() const {
  std::vector<Rational> out(coeffs_.size());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    for (const auto& t : field_->power(-static_cast<long>(j))) out[t.index] += coeffs_[j] * t.coeff;
  }
  return CycNum(field_, std::move(out));
}

CycNum CycNum::lift(int new_conductor) const {
  if (new_conductor == conductor()) return *this;
  if (new_conductor % conductor() != 0) {
    throw ConductorMismatch("cannot lift conductor " + std::to_string(conductor()) + " to " +
                            std::to_string(new_conductor));
  }
  const CyclotomicField* target = CyclotomicField::get(new_conductor);
  const long step = new_conductor / conductor();
  std::vector<Rational> out(target->phi());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    for (const auto& t : target->power(static_cast<long>(j) * step)) out[t.index] += coeffs_[j] * t.coeff;
  }
  return CycNum(target, std::move(out));
}

bool operator==(const CycNum& a, const CycNum& b) {
  a.require_same_field(b, "compare");
  return a.coeffs_ == b.coeffs_;
}

bool operator<(const CycNum& a, const CycNum& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) {
    const int c = cmp(a.coeffs_[j], b.coeffs_[j]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t CycNum::hash() const {
  std::size_t h = static_cast<std::size_t>(conductor());
  for (const auto& c : coeffs_) {
    const mpz_srcptr num = c.get_num_mpz_t();
    const mpz_srcptr den = c.get_den_mpz_t();
    h = hash_combine(h, static_cast<std::size_t>(mpz_get_ui(num)) * 31 +
                            static_cast<std::size_t>(mpz_sgn(num) + 1));
    h = hash_combine(h, static_cast<std::size_t>(mpz_get_ui(den)));
  }
  return h;
}

namespace {

// Appends "sign|coef|unit" for a term, e.g. "+3/4i", "-i", "+z8^3".
void append_term(std::string& out, const Rational& c, const std::string& unit) {
  const int s = sgn(c);
  if (s == 0) return;
  const Rational mag = abs(c);
  if (s < 0) {
    out += '-';
  } else if (!out.empty()) {
    out += '+';
  }
  if (unit.empty()) {
    out += format_rational(mag);
  } else {
    if (mag != 1) out += format_rational(mag) + (unit[0] == 'i' ? "" : "*");
    out += unit;
  }
}

}  // namespace

std::string CycNum::to_string() const {
  std::string out;
  const int n = conductor();
  if (n == 4) {
    append_term(out, coeffs_[0], "");
    append_term(out, coeffs_[1], "i");
  } else {
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      std::string unit;
      if (j == 1) unit = "z" + std::to_string(n);
      if (j > 1) unit = "z" + std::to_string(n) + "^" + std::to_string(j);
      append_term(out, coeffs_[j], unit);
    }
  }
  return out.empty() ? "0" : out;
}

std::pair<double, double> CycNum::to_complex() const {
  double re = 0.0, im = 0.0;
  const double n = conductor();
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const double c = coeffs_[j].get_d();
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / n;
    re += c * std::cos(angle);
    im += c * std::sin(angle);
  }
  return {re, im};
}

CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op) {
  switch (op) {
    case CycOp::add:
      return a + b;
    case CycOp::sub:
      return a - b;
    case CycOp::mul:
      return a * b;
  }
  throw Error("unknown op");
}

}  // namespace qac

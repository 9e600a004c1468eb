#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element is stored in the power basis 1, z, ..., z^{phi(N)-1} reduced
// modulo the N-th cyclotomic polynomial, so equality is coefficient-wise.
// Values of different conductors never mix implicitly; use lift().

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qac {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws qac::Error.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

/// Euler's totient.
int totient(int n);

/// Integer coefficients of Phi_n, lowest degree first (monic, length phi(n)+1).
const std::vector<long>& cyclotomic_polynomial(int n);

class CyclotomicField;

class CycNum {
 public:
  /// Zero of Q (conductor 1).
  CycNum();

  static CycNum from_rational(int conductor, const Rational& r);
  static CycNum from_int(int conductor, long value) {
    return from_rational(conductor, Rational(value));
  }
  /// zeta_N^k, with k reduced mod N.
  static CycNum root(int conductor, long k);
  /// Builds sum coeffs[j] z^j for any number of coefficients and reduces.
  static CycNum from_poly(int conductor, std::span<const Rational> coeffs);

  int conductor() const;
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the value lies in Q (only the constant coefficient is set).
  bool is_rational() const;
  const Rational& constant() const { return coeffs_[0]; }

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& other);
  CycNum& operator-=(const CycNum& other);
  CycNum& operator*=(const CycNum& other);
  CycNum& operator*=(const Rational& r);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator*(CycNum a, const Rational& r) { return a *= r; }
  friend CycNum operator*(const Rational& r, CycNum a) { return a *= r; }

  /// Multiplicative inverse; throws DivisionByZero on zero.
  CycNum inverse() const;
  /// Complex conjugation, the automorphism z -> z^{-1}.
  CycNum conj() const;
  /// Re-expresses the value in Q(zeta_M); requires conductor() | M.
  CycNum lift(int new_conductor) const;

  /// |a|^2 = a * conj(a). Always a real element, not necessarily rational.
  CycNum norm_squared() const { return *this * conj(); }

  /// Throws ConductorMismatch when conductors differ.
  friend bool operator==(const CycNum& a, const CycNum& b);
  /// Strict weak order used for deterministic sorting: (conductor, coeffs).
  friend bool operator<(const CycNum& a, const CycNum& b);

  std::size_t hash() const;

  /// Human rendering: Gaussian form "a+bi" at conductors 1, 2 and 4,
  /// otherwise a sum of powers of z_N.
  std::string to_string() const;

  /// Numeric value under z_N = exp(2 pi i / N).
  std::pair<double, double> to_complex() const;

 private:
  CycNum(const CyclotomicField* field, std::vector<Rational> coeffs);
  void require_same_field(const CycNum& other, const char* what) const;

  const CyclotomicField* field_;
  std::vector<Rational> coeffs_;

  friend class CyclotomicField;
};

/// Explicit arithmetic entry points mirroring the operators.
enum class CycOp { add, sub, mul };
CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op);

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace qac

template <>
struct std::hash<qac::CycNum> {
  std::size_t operator()(const qac::CycNum& c) const { return c.hash(); }
};

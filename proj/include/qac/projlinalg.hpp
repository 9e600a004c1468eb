#pragma once

// Small exact matrices over a cyclotomic field, and the projective
// quotients used throughout: a ProjMatrix is a matrix up to nonzero scalar,
// a ProjPoint a ray in C^n. Both are stored in canonical form (first nonzero
// entry in row-major order equal to 1), so projective equality is plain
// entry-wise equality and both types hash.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "qac/exactfield.hpp"

namespace qac {

using Vector = std::vector<CycNum>;

class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix.
  Matrix(std::size_t dim, int conductor);

  static Matrix identity(std::size_t dim, int conductor);
  /// Rows must be square and share one conductor.
  static Matrix from_rows(std::initializer_list<std::initializer_list<CycNum>> rows);
  static Matrix from_rows(const std::vector<std::vector<CycNum>>& rows);

  std::size_t dim() const { return dim_; }
  int conductor() const { return conductor_; }

  const CycNum& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  /// Replaces one entry; the conductor must match.
  void set(std::size_t r, std::size_t c, CycNum value);
  const std::vector<CycNum>& entries() const { return entries_; }

  bool is_zero() const;
  CycNum trace() const;
  CycNum determinant() const;
  /// Throws DivisionByZero for singular input.
  Matrix inverse() const;
  Matrix dagger() const;
  Matrix scaled(const CycNum& s) const;
  Matrix scaled(const Rational& s) const;
  Matrix lift(int new_conductor) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  /// Lexicographic on entries; used for deterministic orderings.
  friend bool operator<(const Matrix& a, const Matrix& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  int conductor_ = 1;
  std::vector<CycNum> entries_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_dagger(const Matrix& a);

struct UnitaryScale {
  bool unitary = false;
  /// c with dagger(a) a = c I; meaningful only when unitary is true.
  Rational scale;
};

/// Checks dagger(a) a = c I for a positive rational c.
UnitaryScale is_scaled_unitary(const Matrix& a);

class ProjMatrix {
 public:
  ProjMatrix() = default;
  /// Canonicalizes; throws Error on the zero matrix.
  explicit ProjMatrix(const Matrix& m);

  const Matrix& rep() const { return rep_; }
  std::size_t dim() const { return rep_.dim(); }
  int conductor() const { return rep_.conductor(); }

  friend ProjMatrix operator*(const ProjMatrix& a, const ProjMatrix& b) {
    return ProjMatrix(a.rep_ * b.rep_);
  }
  friend bool operator==(const ProjMatrix& a, const ProjMatrix& b) { return a.rep_ == b.rep_; }
  std::size_t hash() const { return rep_.hash(); }

 private:
  Matrix rep_;
};

/// Scales m so its first nonzero row-major entry is 1.
ProjMatrix proj_canonical(const Matrix& m);

class ProjPoint {
 public:
  ProjPoint() = default;
  /// Canonicalizes; throws Error on the zero vector.
  explicit ProjPoint(Vector coords);

  /// The ray through e_j (0-based j).
  static ProjPoint basis(std::size_t dim, std::size_t j, int conductor);
  /// The ray through a rational vector, e.g. [1:2].
  static ProjPoint from_rationals(const std::vector<Rational>& coords, int conductor);

  std::size_t dim() const { return coords_.size(); }
  int conductor() const { return coords_.empty() ? 1 : coords_[0].conductor(); }
  const Vector& coords() const { return coords_; }

  /// For dim 2: "inf" for [0:1] (rendered as the infinity sign), else the
  /// affine coordinate a of [1:a].
  std::string affine_label() const;
  /// The affine coordinate of [1:a], empty for the point at infinity.
  std::optional<CycNum> affine() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);
  std::size_t hash() const;
  std::string to_string() const;

 private:
  Vector coords_;
};

/// Projective equality; throws DimensionMismatch on differing dims.
bool proj_eq(const ProjPoint& p, const ProjPoint& q);

/// Canonical form of m p. Throws Error if m p = 0 (singular m).
ProjPoint apply(const Matrix& m, const ProjPoint& p);
inline ProjPoint apply(const ProjMatrix& m, const ProjPoint& p) { return apply(m.rep(), p); }

/// Hermitian inner product <u, v> = sum conj(u_i) v_i.
CycNum inner(const Vector& u, const Vector& v);

}  // namespace qac

template <>
struct std::hash<qac::Matrix> {
  std::size_t operator()(const qac::Matrix& m) const { return m.hash(); }
};
template <>
struct std::hash<qac::ProjMatrix> {
  std::size_t operator()(const qac::ProjMatrix& m) const { return m.hash(); }
};
template <>
struct std::hash<qac::ProjPoint> {
  std::size_t operator()(const qac::ProjPoint& p) const { return p.hash(); }
};

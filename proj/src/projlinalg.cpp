#include "qac/projlinalg.hpp"

#include <algorithm>

#include "qac/error.hpp"

namespace qac {

Matrix::Matrix(std::size_t dim, int conductor)
    : dim_(dim), conductor_(conductor), entries_(dim * dim, CycNum::from_int(conductor, 0)) {}

Matrix Matrix::identity(std::size_t dim, int conductor) {
  Matrix m(dim, conductor);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = CycNum::from_int(conductor, 1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<CycNum>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw DimensionMismatch("empty matrix");
  Matrix m(n, rows[0].at(0).conductor());
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw DimensionMismatch("matrix rows must be square");
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<CycNum>> rows) {
  std::vector<std::vector<CycNum>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

void Matrix::set(std::size_t r, std::size_t c, CycNum value) {
  if (value.conductor() != conductor_) {
    throw ConductorMismatch("matrix entry conductor " + std::to_string(value.conductor()) +
                            " differs from matrix conductor " + std::to_string(conductor_));
  }
  entries_[r * dim_ + c] = std::move(value);
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CycNum& c) { return c.is_zero(); });
}

CycNum Matrix::trace() const {
  CycNum t = CycNum::from_int(conductor_, 0);
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

// Row-reduces `work` in place, mirroring row operations onto `aug` when given.
// Returns the determinant of the original `work`.
CycNum eliminate(std::vector<CycNum>& work, std::vector<CycNum>* aug, std::size_t n, int conductor) {
  CycNum det = CycNum::from_int(conductor, 1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot * n + col].is_zero()) ++pivot;
    if (pivot == n) return CycNum::from_int(conductor, 0);
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(work[pivot * n + k], work[col * n + k]);
        if (aug) std::swap((*aug)[pivot * n + k], (*aug)[col * n + k]);
      }
      det = -det;
    }
    const CycNum p = work[col * n + col];
    det *= p;
    const CycNum pinv = p.inverse();
    for (std::size_t k = 0; k < n; ++k) {
      work[col * n + k] *= pinv;
      if (aug) (*aug)[col * n + k] *= pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r * n + col].is_zero()) continue;
      const CycNum f = work[r * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        work[r * n + k] -= f * work[col * n + k];
        if (aug) (*aug)[r * n + k] -= f * (*aug)[col * n + k];
      }
    }
  }
  return det;
}

}  // namespace

CycNum Matrix::determinant() const {
  if (dim_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
  std::vector<CycNum> work = entries_;
  return eliminate(work, nullptr, dim_, conductor_);
}

Matrix Matrix::inverse() const {
  std::vector<CycNum> work = entries_;
  Matrix out = identity(dim_, conductor_);
  const CycNum det = eliminate(work, &out.entries_, dim_, conductor_);
  if (det.is_zero()) throw DivisionByZero("singular matrix has no inverse");
  return out;
}

Matrix Matrix::dagger() const {
  Matrix out(dim_, conductor_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out.entries_[c * dim_ + r] = (*this)(r, c).conj();
  return out;
}

Matrix Matrix::scaled(const CycNum& s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e = e * s;
  return out;
}

Matrix Matrix::scaled(const Rational& s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

Matrix Matrix::lift(int new_conductor) const {
  Matrix out(dim_, new_conductor);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].lift(new_conductor);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix product of differing dimensions");
  if (a.conductor_ != b.conductor_) throw ConductorMismatch("matrix product across conductors");
  const std::size_t n = a.dim_;
  Matrix out(n, a.conductor_);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const CycNum& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const CycNum& y = b(k, c);
        if (y.is_zero()) continue;
        if (x.is_one()) {
          out.entries_[r * n + c] += y;
        } else if (y.is_one()) {
          out.entries_[r * n + c] += x;
        } else {
          out.entries_[r * n + c] += x * y;
        }
      }
    }
  }
  return out;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.dim_ != v.size()) throw DimensionMismatch("matrix-vector product of differing dimensions");
  Vector out(a.dim_, CycNum::from_int(a.conductor_, 0));
  for (std::size_t r = 0; r < a.dim_; ++r) {
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const CycNum& x = a(r, k);
      if (x.is_zero() || v[k].is_zero()) continue;
      out[r] += x * v[k];
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix sum of differing dimensions");
  Matrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] += b.entries_[k];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix difference of differing dimensions");
  Matrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] -= b.entries_[k];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) return false;
  return a.entries_ == b.entries_;
}

bool operator<(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                      b.entries_.end());
}

std::size_t Matrix::hash() const {
  std::size_t h = dim_;
  for (const auto& e : entries_) h = hash_combine(h, e.hash());
  return h;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < dim_; ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < dim_; ++c) {
      if (c) out += ", ";
      out += (*this)(r, c).to_string();
    }
    out += "]";
  }
  return out + "]";
}

Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }
Matrix mat_dagger(const Matrix& a) { return a.dagger(); }

UnitaryScale is_scaled_unitary(const Matrix& a) {
  const Matrix g = a.dagger() * a;
  const CycNum& c = g(0, 0);
  if (!c.is_rational() || sgn(c.constant()) <= 0) return {};
  for (std::size_t r = 0; r < g.dim(); ++r) {
    for (std::size_t col = 0; col < g.dim(); ++col) {
      if (r == col ? !(g(r, col) == c) : !g(r, col).is_zero()) return {};
    }
  }
  return {true, c.constant()};
}

namespace {

// Index of the first nonzero entry; the caller guarantees one exists.
std::size_t first_nonzero(const std::vector<CycNum>& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) return k;
  return v.size();
}

void normalize_by_first(std::vector<CycNum>& v, std::size_t k) {
  const CycNum& lead = v[k];
  if (lead.is_one()) return;
  if (lead.is_rational()) {
    const Rational inv = 1 / lead.constant();
    for (std::size_t j = k; j < v.size(); ++j) v[j] *= inv;
    return;
  }
  const CycNum inv = lead.inverse();
  for (std::size_t j = k; j < v.size(); ++j) v[j] = v[j] * inv;
}

}  // namespace

ProjMatrix::ProjMatrix(const Matrix& m) : rep_(m) {
  std::vector<CycNum> entries = m.entries();
  const std::size_t k = first_nonzero(entries);
  if (k == entries.size()) throw Error("zero matrix has no projective class");
  normalize_by_first(entries, k);
  Matrix out(m.dim(), m.conductor());
  for (std::size_t j = 0; j < entries.size(); ++j) out.set(j / m.dim(), j % m.dim(), entries[j]);
  rep_ = std::move(out);
}

ProjMatrix proj_canonical(const Matrix& m) { return ProjMatrix(m); }

ProjPoint::ProjPoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionMismatch("empty projective point");
  const int n = coords_[0].conductor();
  for (const auto& c : coords_)
    if (c.conductor() != n) throw ConductorMismatch("point coordinates across conductors");
  const std::size_t k = first_nonzero(coords_);
  if (k == coords_.size()) throw Error("zero vector has no projective class");
  normalize_by_first(coords_, k);
}

ProjPoint ProjPoint::basis(std::size_t dim, std::size_t j, int conductor) {
  Vector v(dim, CycNum::from_int(conductor, 0));
  v.at(j) = CycNum::from_int(conductor, 1);
  return ProjPoint(std::move(v));
}

ProjPoint ProjPoint::from_rationals(const std::vector<Rational>& coords, int conductor) {
  Vector v;
  for (const auto& c : coords) v.push_back(CycNum::from_rational(conductor, c));
  return ProjPoint(std::move(v));
}

std::optional<CycNum> ProjPoint::affine() const {
  if (dim() != 2) throw DimensionMismatch("affine labels need a point of CP^1");
  if (coords_[0].is_zero()) return std::nullopt;
  return coords_[1];
}

std::string ProjPoint::affine_label() const {
  const auto a = affine();
  return a ? a->to_string() : "∞";
}

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                      b.coords_.end());
}

std::size_t ProjPoint::hash() const {
  std::size_t h = coords_.size();
  for (const auto& c : coords_) h = hash_combine(h, c.hash());
  return h;
}

std::string ProjPoint::to_string() const {
  std::string out = "[";
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (k) out += ":";
    out += coords_[k].to_string();
  }
  return out + "]";
}

bool proj_eq(const ProjPoint& p, const ProjPoint& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("points of differing dimension");
  return p == q;
}

ProjPoint apply(const Matrix& m, const ProjPoint& p) {
  Vector image = m * p.coords();
  bool all_zero = std::all_of(image.begin(), image.end(), [](const CycNum& c) { return c.is_zero(); });
  if (all_zero) throw Error("matrix maps the point to zero (singular)");
  return ProjPoint(std::move(image));
}

CycNum inner(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw DimensionMismatch("inner product of differing dimensions");
  CycNum s = CycNum::from_int(u.at(0).conductor(), 0);
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k].conj() * v[k];
  return s;
}

}  // namespace qac

#pragma once

// Finite matrix groups: closure of a generating set, the catalog of finite
// subgroups of U(2) used by the searches, the commuting exponent that drives
// the 0^m 1^m / 1^m 0^m collision, and Cayley-graph export.
//
// Elements are indexed 0..order-1 in breadth-first discovery order (index 0 is
// the identity). All multiplication after closure runs on integer tables.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qac/projlinalg.hpp"

namespace qac {

inline constexpr std::size_t kDefaultClosureCap = 2000;

/// w + x i + y j + z k as a 2x2 complex matrix.
Matrix quaternion(const CycNum& w, const CycNum& x, const CycNum& y, const CycNum& z);

class FiniteMatrixGroup {
 public:
  using Index = std::uint32_t;

  /// Breadth-first closure under right multiplication by the generators.
  /// With `projective` set, elements are identified up to scalars (PU(n)).
  /// Throws CapExceeded once more than `cap` elements are found.
  static FiniteMatrixGroup closure(std::span<const Matrix> generators, bool projective,
                                   std::size_t cap = kDefaultClosureCap);

  std::size_t order() const { return reps_.size(); }
  bool projective() const { return projective_; }
  std::size_t dim() const { return reps_.front().dim(); }
  int conductor() const { return reps_.front().conductor(); }

  static constexpr Index identity() { return 0; }
  /// Indices of the generators, in the order given to closure().
  std::span<const Index> generators() const { return generators_; }

  /// A representative matrix: the product of generators that reached this
  /// element first, so it is unitary whenever the generators are.
  const Matrix& element(Index g) const { return reps_[g]; }
  /// The equality key: the projective canonical form, or the matrix itself.
  const Matrix& key(Index g) const { return keys_[g]; }
  std::optional<Index> find(const Matrix& m) const;

  Index mul(Index a, Index b) const { return table_[static_cast<std::size_t>(a) * order() + b]; }
  Index inverse(Index a) const { return inverses_[a]; }
  Index power(Index a, std::size_t m) const;
  /// Word product for a string over {0,1} with the given letter images.
  Index word(Index letter0, Index letter1, std::string_view x) const;

  std::size_t element_order(Index a) const;
  /// Least common multiple of element orders.
  std::size_t exponent() const;
  bool is_abelian() const;

  /// Breadth-first parent and last generator slot; parent(0) == 0.
  Index parent(Index g) const { return parent_[g]; }
  std::size_t last_generator(Index g) const { return last_gen_[g]; }

 private:
  bool projective_ = false;
  std::vector<Matrix> reps_;
  std::vector<Matrix> keys_;
  std::unordered_map<Matrix, Index> index_;
  std::vector<Index> generators_;
  std::vector<Index> parent_;
  std::vector<std::size_t> last_gen_;
  std::vector<Index> table_;
  std::vector<Index> inverses_;
};

/// Orbit of a point of CP^{n-1} under a finite group, with the full action
/// table act(g, p) computed on integers.
class GroupOrbit {
 public:
  using Index = std::uint32_t;

  GroupOrbit(const FiniteMatrixGroup& group, const ProjPoint& start);

  std::size_t size() const { return points_.size(); }
  const ProjPoint& point(Index p) const { return points_[p]; }
  std::span<const ProjPoint> points() const { return points_; }
  std::optional<Index> find(const ProjPoint& p) const;
  /// Image of orbit point p under group element g.
  Index act(FiniteMatrixGroup::Index g, Index p) const { return act_[static_cast<std::size_t>(g) * size() + p]; }
  /// The permutation of the orbit induced by g.
  std::span<const Index> row(FiniteMatrixGroup::Index g) const {
    return {act_.data() + static_cast<std::size_t>(g) * size(), size()};
  }

 private:
  std::vector<ProjPoint> points_;
  std::unordered_map<ProjPoint, Index> index_;
  std::vector<Index> act_;
};

enum class GroupFamily { cyclic, binary_dihedral, binary_tetrahedral, binary_octahedral, binary_icosahedral };

struct GroupCatalogEntry {
  GroupFamily family;
  int param = 0;
  int conductor = 1;
  std::vector<Matrix> generators;

  /// e.g. "cyclic:7", "binary_tetrahedral".
  std::string name() const;
  /// Order of the linear group generated in U(2).
  std::size_t linear_order() const;
  /// Order of its image in PU(2).
  std::size_t projective_order() const;
};

/// cyclic(k) is generated by diag(z_k, 1); binary_dihedral(k) by
/// diag(z_2k, z_2k^-1) and j; the binary polyhedral groups by quaternions.
GroupCatalogEntry catalog(GroupFamily family, int param = 0);
/// Parses "cyclic:7", "binary_dihedral:3", "binary_tetrahedral" (or "2T"),
/// "binary_octahedral" ("2O"), "binary_icosahedral" ("2I").
GroupCatalogEntry catalog(std::string_view spec);

/// The binary tetrahedral generators a = (1+i+j-k)/2 and b = (1+i+j+k)/2.
Matrix tetrahedral_a();
Matrix tetrahedral_b();

/// Catalog entries whose projective order is at most max_order, sorted by
/// (projective order, family, parameter).
std::vector<GroupCatalogEntry> catalog_up_to(std::size_t max_order, bool include_polyhedral = true);

FiniteMatrixGroup closure(std::span<const Matrix> generators, std::size_t cap = kDefaultClosureCap);
FiniteMatrixGroup projective_closure(std::span<const Matrix> generators,
                                     std::size_t cap = kDefaultClosureCap);

/// Least m >= 1 with u^m v^m = v^m u^m for all u, v in the group.
std::size_t commuting_exponent(const FiniteMatrixGroup& group);

/// True iff every ordered pair (d0, d1) in the group has d0^m d1^m = d1^m d0^m,
/// i.e. the words 0^m 1^m and 1^m 0^m always act identically.
bool collision_check(const FiniteMatrixGroup& group, std::size_t m);

/// Shortest words over {a, b} for each element, found breadth-first by left
/// multiplication (so word "ab" labels a*b). The identity is "1".
std::vector<std::string> shortest_words(const FiniteMatrixGroup& group, FiniteMatrixGroup::Index a,
                                        FiniteMatrixGroup::Index b);

/// Cayley digraph of left multiplication: g -> a g dashed, g -> b g solid.
std::string cayley_dot(const FiniteMatrixGroup& group, FiniteMatrixGroup::Index a,
                       FiniteMatrixGroup::Index b);

}  // namespace qac

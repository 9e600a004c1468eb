#pragma once

// Quantum DFAs over projective space and the classical automata extracted
// from them.
//
// Word convention: for x = x(1)...x(n) the word acts as the matrix product
// U_x = U_{x(1)} U_{x(2)} ... U_{x(n)} on column vectors, so the LAST letter
// is applied first. Permutation automata follow the same rule, so
// embed_permutation() is a homomorphism and witnesses transfer verbatim.

#include <array>
#include <chrono>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qac/groups.hpp"
#include "qac/projlinalg.hpp"

namespace qac {

inline constexpr std::size_t kDefaultOrbitCap = 2000;
inline constexpr std::size_t kBruteForceMaxLength = 20;
inline constexpr std::size_t kFloatMaxLength = 14;

/// Throws Error unless x is a string over {0,1}.
void require_binary(std::string_view x);

/// Expands "0^4 1^4", "0^120" or plain "0011" into a binary string.
std::string expand_word(std::string_view text);

/// Start and accept rays plus two transitions. Only the projective classes
/// of delta0/delta1 matter; the stored matrices are the representatives
/// that get printed (e.g. the exactly unitary conjugates).
struct QuantumDFA {
  Matrix delta0;
  Matrix delta1;
  ProjPoint start;
  ProjPoint accept;

  std::size_t dim() const { return delta0.dim(); }
};

/// U_x as a linear product (identity for the empty word).
Matrix word_matrix(const Matrix& delta0, const Matrix& delta1, std::string_view x);
/// U_x up to scalars.
ProjMatrix word_product(const Matrix& delta0, const Matrix& delta1, std::string_view x);
/// U_x p, evaluated letter by letter from the right.
ProjPoint run_word(const QuantumDFA& m, std::string_view x);
inline bool accepts(const QuantumDFA& m, std::string_view x) { return run_word(m, x) == m.accept; }

struct OrbitDFA {
  std::vector<ProjPoint> states;
  std::vector<std::uint32_t> t0;
  std::vector<std::uint32_t> t1;
  std::uint32_t start_index = 0;
  std::optional<std::uint32_t> accept_index;

  std::size_t size() const { return states.size(); }
};

/// Breadth-first orbit of the start ray under delta0, delta1 (delta0 first).
/// Throws CapExceeded when more than `cap` states appear.
OrbitDFA build_orbit_dfa(const QuantumDFA& m, std::size_t cap = kDefaultOrbitCap);

/// DOT digraph of the orbit: vertices labeled by affine coordinate, delta0
/// edges dashed, delta1 edges solid.
std::string orbit_dot(const OrbitDFA& dfa);

enum class Multiplicity : std::uint8_t { zero = 0, one = 1, many = 2 };

struct AcceptCount {
  Multiplicity count = Multiplicity::zero;
  /// The accepted word when count == one.
  std::optional<std::string> word;
};

/// Number of length-n words y with t_y(start) = accept, saturated at "many";
/// t0/t1 are total transition maps on 0..size-1.
AcceptCount count_words(std::span<const std::uint32_t> t0, std::span<const std::uint32_t> t1,
                        std::uint32_t start, std::uint32_t accept, std::size_t length);
AcceptCount count_accepting(const OrbitDFA& dfa, std::size_t length);

struct UniquenessCertificate {
  std::string method;  ///< "orbit" or "brute_force"
  bool accepts_x = false;
  std::size_t orbit_size = 0;  ///< 0 when the orbit cap forced brute force
  AcceptCount count;
};

struct UniqueCheck {
  bool unique = false;
  UniquenessCertificate certificate;
};

/// Decides whether x is the only word of its length accepted by m, via the
/// orbit DFA; falls back to brute force (|x| <= 20) if the orbit passes cap.
UniqueCheck unique_witness_check(const QuantumDFA& m, std::string_view x,
                                 std::size_t orbit_cap = kDefaultOrbitCap);

/// Independent oracle: evaluates all 2^|x| words directly. Returns the
/// number of accepted words of length |x|. Throws Error when |x| > 20.
std::uint64_t brute_force_accepting(const QuantumDFA& m, std::size_t length);
bool brute_force_check(const QuantumDFA& m, std::string_view x);

using RationalVector2 = std::array<Rational, 2>;

/// Conjugates (E0, E1) by D = [v | E_x v] so that the result maps e_1 to
/// e_2 along x. Requires <v, E_x v> = 0 and D scaled-unitary; throws
/// RecipeInapplicable otherwise. Uniqueness is not checked here.
QuantumDFA conjugate_witness(const Matrix& e0, const Matrix& e1, std::string_view x,
                             const RationalVector2& v);

/// Primitive integer directions ordered by height, then as listed:
/// (1,0), (0,1), (1,1), (1,-1), (1,2), (2,1), (1,-2), (2,-1), (1,3), ...
std::vector<RationalVector2> conjugation_vectors(int max_height);

/// Lexicographic (n, q) with q = nullopt standing for infinity.
struct ComplexityPair {
  std::size_t n = 0;
  std::optional<std::size_t> q;
  friend bool operator<(const ComplexityPair& a, const ComplexityPair& b);
  friend bool operator==(const ComplexityPair& a, const ComplexityPair& b) = default;
};

struct WitnessResult {
  std::string word;
  ComplexityPair pair;
  std::string group;
  std::uint32_t delta0_index = 0;  ///< element indices inside the group
  std::uint32_t delta1_index = 0;
  RationalVector2 v;
  QuantumDFA automaton;
  UniqueCheck check;
};

struct GroupScan {
  std::string group;
  std::size_t order = 0;
  std::size_t pairs = 0;             ///< ordered (delta0, delta1) pairs examined
  std::size_t orthogonal = 0;        ///< (pair, v) candidates passing <v, E_x v> = 0
  bool exhausted = false;
};

struct SearchOptions {
  std::size_t workers = 1;
  std::size_t orbit_cap = kDefaultOrbitCap;
};

struct SearchReport {
  std::optional<WitnessResult> witness;
  std::vector<GroupScan> groups;
  bool exhausted = false;  ///< every candidate scanned and none worked
};

/// Scans projective images of the catalog groups in the given order, every
/// ordered generator pair and conjugation vector, and returns the first
/// witness under the (group, delta0, delta1, v) order, re-verified exactly.
SearchReport qsf_search(std::string_view x, std::span<const GroupCatalogEntry> groups,
                        std::span<const RationalVector2> vectors, const SearchOptions& options = {});

// ------------------------------------------------------ permutation automata

struct PermAutomaton {
  std::vector<std::uint32_t> pi0;  ///< 0-based images
  std::vector<std::uint32_t> pi1;
  std::uint32_t start = 0;
  std::uint32_t final_state = 0;

  std::size_t states() const { return pi0.size(); }
};

/// pi_x(start) with the last letter applied first.
std::uint32_t run_word(const PermAutomaton& a, std::string_view x);
bool perm_unique_check(const PermAutomaton& a, std::string_view x);

/// Integer partitions of q in decreasing lexicographic order, e.g. 3: {3}, {2,1}, {1,1,1}.
std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t q);
/// The permutation with the given cycle lengths on consecutive points.
std::vector<std::uint32_t> cycle_type_representative(std::span<const std::uint32_t> lengths);

struct ApermFrontier {
  std::uint32_t q = 1;           ///< first state count not yet exhausted
  std::uint32_t type_index = 0;  ///< first cycle type at q not yet exhausted
};

struct ApermOptions {
  std::size_t workers = 1;
  std::optional<std::chrono::duration<double>> budget;
  ApermFrontier resume;
};

struct ApermResult {
  std::optional<std::uint32_t> value;  ///< least q with a witness
  std::optional<PermAutomaton> witness;
  bool completed = true;  ///< false when the budget ran out
  ApermFrontier frontier;  ///< where a budgeted run stopped
};

/// Least q <= q_max admitting a permutation witness for x.
ApermResult aperm(std::string_view x, std::uint32_t q_max, const ApermOptions& options = {});

/// 0-1 matrix with M e_j = e_{p(j)}, over Q(zeta_conductor).
Matrix embed_permutation(std::span<const std::uint32_t> p, int conductor = 1);
/// delta_b = embed(pi_b), start = e_start, accept = e_final.
QuantumDFA embed_automaton(const PermAutomaton& a);

// -------------------------------------------------------- float experiment

struct FloatCheckResult {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double fraction() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

/// Haar-random pairs in U(2): success when no other word of length |x|
/// lands within Fubini-Study distance tol of U_x e_1. With force_equal the
/// two unitaries coincide (degenerate control).
FloatCheckResult float_generic_check(std::string_view x, std::size_t trials, double tol,
                                     std::uint64_t seed, bool force_equal = false);

/// sin of the Fubini-Study angle between two rays of C^2.
double projective_distance(const std::array<std::complex<double>, 2>& u,
                           const std::array<std::complex<double>, 2>& v);

}  // namespace qac

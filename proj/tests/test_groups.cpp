#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <regex>
#include <set>

#include "qac/error.hpp"
#include "qac/groups.hpp"

using namespace qac;
using Index = FiniteMatrixGroup::Index;

namespace {

const Matrix A = tetrahedral_a();
const Matrix B = tetrahedral_b();
const Matrix I2 = Matrix::identity(2, 4);
const Matrix Qj = Matrix::from_rows({{CycNum::from_int(4, 0), CycNum::from_int(4, 1)},
                                     {CycNum::from_int(4, -1), CycNum::from_int(4, 0)}});

Matrix mpow(const Matrix& m, std::size_t k) {
  Matrix r = Matrix::identity(m.dim(), m.conductor());
  for (std::size_t j = 0; j < k; ++j) r = r * m;
  return r;
}

bool same(const Matrix& x, const Matrix& y, bool projective) {
  return projective ? proj_canonical(x) == proj_canonical(y) : x == y;
}

// Independent oracle: exact matrix powers and commutators, no tables.
std::size_t commuting_exponent_oracle(const FiniteMatrixGroup& g) {
  for (std::size_t m = 1; m <= g.order(); ++m) {
    std::vector<Matrix> powers;
    for (Index e = 0; e < g.order(); ++e) powers.push_back(mpow(g.element(e), m));
    bool ok = true;
    for (const auto& u : powers)
      for (const auto& v : powers)
        if (ok && !same(u * v, v * u, g.projective())) ok = false;
    if (ok) return m;
  }
  return 0;
}

void check_group_axioms(const FiniteMatrixGroup& g) {
  CHECK(g.key(FiniteMatrixGroup::identity()) == (g.projective()
                                                     ? proj_canonical(Matrix::identity(g.dim(), g.conductor())).rep()
                                                     : Matrix::identity(g.dim(), g.conductor())));
  for (Index x = 0; x < g.order(); ++x) {
    CHECK(g.mul(x, g.inverse(x)) == FiniteMatrixGroup::identity());
    CHECK(g.mul(g.inverse(x), x) == FiniteMatrixGroup::identity());
    for (Index y = 0; y < g.order(); ++y) {
      // The table must agree with exact multiplication.
      const auto found = g.find(g.element(x) * g.element(y));
      REQUIRE(found.has_value());
      CHECK(*found == g.mul(x, y));
    }
  }
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("closure of the binary tetrahedral generators") {
  const std::vector<Matrix> gens{A, B};
  const auto linear = closure(gens, 100);
  CHECK(linear.order() == 24);
  const auto proj = projective_closure(gens, 100);
  CHECK(proj.order() == 12);
  const std::vector<Matrix> id{I2};
  CHECK(closure(id, 10).order() == 1);
  check_group_axioms(linear);
  check_group_axioms(proj);
  // Every representative of the projective group is exactly unitary.
  for (Index g = 0; g < proj.order(); ++g) {
    const auto u = is_scaled_unitary(proj.element(g));
    CHECK(u.unitary);
    CHECK(u.scale == 1);
  }
}

TEST_CASE("closure cap signals a possibly infinite group") {
  // diag(3/5 + 4/5 i, 1) has infinite order.
  Matrix g = Matrix::identity(2, 4);
  g.set(0, 0, CycNum::from_rational(4, Rational(3, 5)) + CycNum::root(4, 1) * Rational(4, 5));
  const std::vector<Matrix> gens{g};
  CHECK_THROWS_AS(closure(gens, 50), CapExceeded);
  const std::vector<Matrix> tet{A, B};
  CHECK_THROWS_AS(closure(tet, 23), CapExceeded);
}

TEST_CASE("SL(2,3) relations") {
  const Matrix a3 = A * A * A;
  CHECK(a3 == B * B * B);
  CHECK(a3 == A * B * A * B);
  CHECK(a3 == B * A * B * A);
  CHECK(a3 == I2.scaled(CycNum::from_int(4, -1)));
  CHECK(proj_canonical(a3) == proj_canonical(I2));
}

TEST_CASE("aabb = -j is unique among length-4 words") {
  const Matrix minus_j = Qj.scaled(CycNum::from_int(4, -1));
  int hits = 0;
  std::string hit;
  for (int w = 0; w < 16; ++w) {
    Matrix m = I2;
    std::string word;
    for (int k = 3; k >= 0; --k) {
      const bool one = (w >> k) & 1;
      m = m * (one ? B : A);
      word += one ? 'b' : 'a';
    }
    if (m == minus_j) {
      ++hits;
      hit = word;
    }
  }
  CHECK(hits == 1);
  CHECK(hit == "aabb");
}

TEST_CASE("words of length at most 2 are distinct") {
  const std::vector<Matrix> len1{A, B};
  const std::vector<Matrix> len2{A * A, A * B, B * A, B * B};
  for (bool projective : {false, true}) {
    for (const auto* words : {&len1, &len2}) {
      for (std::size_t i = 0; i < words->size(); ++i)
        for (std::size_t j = i + 1; j < words->size(); ++j) CHECK_FALSE(same((*words)[i], (*words)[j], projective));
    }
  }
}

TEST_CASE("catalog orders") {
  for (int k = 1; k <= 12; ++k) {
    const auto e = catalog(GroupFamily::cyclic, k);
    CHECK(closure(e.generators).order() == static_cast<std::size_t>(k));
    CHECK(projective_closure(e.generators).order() == static_cast<std::size_t>(k));
    CHECK(e.projective_order() == static_cast<std::size_t>(k));
  }
  for (int k = 1; k <= 6; ++k) {
    const auto e = catalog(GroupFamily::binary_dihedral, k);
    CHECK(closure(e.generators).order() == 4U * k);
    CHECK(projective_closure(e.generators).order() == 2U * k);
  }
  for (auto [family, order] : {std::pair{GroupFamily::binary_tetrahedral, 24U},
                               std::pair{GroupFamily::binary_octahedral, 48U},
                               std::pair{GroupFamily::binary_icosahedral, 120U}}) {
    const auto e = catalog(family);
    CAPTURE(e.name());
    for (const auto& g : e.generators) {
      const auto u = is_scaled_unitary(g);
      CHECK(u.unitary);
      CHECK(u.scale == 1);
      CHECK(g.conductor() == e.conductor);
    }
    const auto linear = closure(e.generators, 200);
    CHECK(linear.order() == order);
    CHECK(linear.order() == e.linear_order());
    CHECK(projective_closure(e.generators, 200).order() == order / 2);
    if (order <= 48) check_group_axioms(linear);
  }
}

TEST_CASE("catalog parsing") {
  CHECK(catalog("cyclic:7").name() == "cyclic:7");
  CHECK(catalog("2T").name() == "binary_tetrahedral");
  CHECK(catalog("BD:3").family == GroupFamily::binary_dihedral);
  CHECK_THROWS_AS(catalog("cyclic"), Error);
  CHECK_THROWS_AS(catalog("sporadic"), Error);
  CHECK_THROWS_AS(catalog("cyclic:x"), Error);
  const auto list = catalog_up_to(12);
  CHECK(std::is_sorted(list.begin(), list.end(), [](const auto& a, const auto& b) {
    return a.projective_order() < b.projective_order();
  }));
  CHECK(list.back().name() == "binary_tetrahedral");
}

TEST_CASE("commuting exponent") {
  const auto c5 = projective_closure(catalog(GroupFamily::cyclic, 5).generators);
  CHECK(commuting_exponent(c5) == 1);
  CHECK(collision_check(c5, 1));

  const std::vector<Matrix> gens{A, B};
  const auto alt4 = projective_closure(gens);
  const auto m_alt4 = commuting_exponent(alt4);
  CHECK(m_alt4 == commuting_exponent_oracle(alt4));
  CHECK(m_alt4 == 3);
  CHECK(collision_check(alt4, m_alt4));
  CHECK_FALSE(collision_check(alt4, 2));

  const auto sl23 = closure(gens);
  CHECK(commuting_exponent(sl23) == commuting_exponent_oracle(sl23));

  // Alt(5): element orders 1, 2, 3, 5, so only m divisible by 30 kills all of them.
  const auto alt5 = projective_closure(catalog(GroupFamily::binary_icosahedral).generators);
  std::set<std::size_t> orders;
  for (Index g = 0; g < alt5.order(); ++g) orders.insert(alt5.element_order(g));
  CHECK(orders == std::set<std::size_t>{1, 2, 3, 5});
  CHECK(commuting_exponent(alt5) == 30);
  CHECK_FALSE(collision_check(alt5, 15));
}

TEST_CASE("every catalog group collides at its commuting exponent") {
  for (const auto& e : catalog_up_to(60)) {
    if (e.projective_order() > 24 && e.family != GroupFamily::binary_icosahedral) continue;
    for (bool projective : {false, true}) {
      const auto g = FiniteMatrixGroup::closure(e.generators, projective);
      const auto m = commuting_exponent(g);
      CAPTURE(e.name());
      CHECK(collision_check(g, m));
      CHECK(m <= g.exponent());
      if (m > 1) CHECK_FALSE(collision_check(g, m - 1));
    }
  }
}

TEST_CASE("group orbit action table matches exact application") {
  const std::vector<Matrix> gens{A, B};
  const auto g = projective_closure(gens);
  const auto start = ProjPoint::from_rationals({1, 2}, 4);
  const GroupOrbit orbit(g, start);
  CHECK(orbit.size() <= g.order());
  for (Index x = 0; x < g.order(); ++x) {
    for (GroupOrbit::Index p = 0; p < orbit.size(); ++p) {
      CHECK(orbit.point(orbit.act(x, p)) == apply(g.element(x), orbit.point(p)));
    }
  }
}

TEST_CASE("cayley_dot") {
  const std::vector<Matrix> gens{A, B};
  const auto alt4 = projective_closure(gens);
  const auto a = alt4.generators()[0], b = alt4.generators()[1];
  const auto dot = cayley_dot(alt4, a, b);
  CHECK(count(dot, "[label=") == 12);
  CHECK(count(dot, " -> ") == 24);
  CHECK(count(dot, "style=dashed") == 12);
  CHECK(dot.find("label=\"1\"") != std::string::npos);
  // Labels are words whose product is the vertex.
  const auto words = shortest_words(alt4, a, b);
  for (Index g = 1; g < alt4.order(); ++g) {
    std::string bits = words[g];
    std::replace(bits.begin(), bits.end(), 'a', '0');
    std::replace(bits.begin(), bits.end(), 'b', '1');
    CHECK(alt4.word(a, b, bits) == g);
    CHECK(words[g].size() <= 4);
  }
  CHECK(cayley_dot(alt4, a, b) == dot);

  const auto c3 = projective_closure(catalog(GroupFamily::cyclic, 3).generators);
  const auto g = c3.generators()[0];
  const auto dot3 = cayley_dot(c3, g, g);
  CHECK(count(dot3, "[label=") == 3);
  // Each vertex has one outgoing edge of each style, all along the 3-cycle.
  for (Index v = 0; v < 3; ++v) {
    const std::string edge = "v" + std::to_string(v) + " -> v" + std::to_string(c3.mul(g, v));
    CHECK(count(dot3, edge) == 2);
  }

  const std::vector<Matrix> id{I2};
  const auto trivial = closure(id);
  const auto dot1 = cayley_dot(trivial, 0, 0);
  CHECK(count(dot1, "[label=") == 1);
  CHECK(count(dot1, "v0 -> v0") == 2);
}

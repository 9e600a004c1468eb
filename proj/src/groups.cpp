#include "qac/groups.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <tuple>

#include "qac/error.hpp"

namespace qac {

Matrix quaternion(const CycNum& w, const CycNum& x, const CycNum& y, const CycNum& z) {
  if (w.conductor() % 4 != 0) throw ConductorMismatch("quaternion matrices need i, i.e. 4 | N");
  const CycNum i = CycNum::root(w.conductor(), w.conductor() / 4);
  return Matrix::from_rows({{w + x * i, y + z * i}, {-y + z * i, w - x * i}});
}

// ------------------------------------------------------------------ closure

FiniteMatrixGroup FiniteMatrixGroup::closure(std::span<const Matrix> generators, bool projective,
                                             std::size_t cap) {
  if (generators.empty()) throw Error("closure needs at least one generator");
  const std::size_t n = generators[0].dim();
  const int conductor = generators[0].conductor();
  for (const auto& g : generators) {
    if (g.dim() != n) throw DimensionMismatch("generators of differing dimension");
    if (g.conductor() != conductor) throw ConductorMismatch("generators across conductors");
    if (g.determinant().is_zero()) throw Error("closure generator is singular");
  }

  FiniteMatrixGroup out;
  out.projective_ = projective;
  auto key_of = [projective](const Matrix& m) { return projective ? ProjMatrix(m).rep() : m; };

  std::vector<std::vector<Index>> right;  // right[g][s] = g * generator s
  auto add = [&](Matrix rep, Index parent, std::size_t gen) -> Index {
    Matrix key = key_of(rep);
    if (auto it = out.index_.find(key); it != out.index_.end()) return it->second;
    if (out.reps_.size() >= cap) {
      throw CapExceeded("group closure exceeded " + std::to_string(cap) +
                        " elements; the generated group may be infinite");
    }
    const auto idx = static_cast<Index>(out.reps_.size());
    out.index_.emplace(key, idx);
    out.keys_.push_back(std::move(key));
    out.reps_.push_back(std::move(rep));
    out.parent_.push_back(parent);
    out.last_gen_.push_back(gen);
    right.emplace_back(generators.size(), 0);
    return idx;
  };

  add(Matrix::identity(n, conductor), 0, 0);
  for (std::size_t g = 0; g < out.reps_.size(); ++g) {
    for (std::size_t s = 0; s < generators.size(); ++s) {
      Matrix prod = out.reps_[g] * generators[s];
      right[g][s] = add(std::move(prod), static_cast<Index>(g), s);
    }
  }
  for (std::size_t s = 0; s < generators.size(); ++s) out.generators_.push_back(right[0][s]);

  // g * h = (g * parent(h)) * s where h = parent(h) * s, and parent(h) < h.
  const std::size_t order = out.reps_.size();
  out.table_.assign(order * order, 0);
  for (std::size_t g = 0; g < order; ++g) {
    Index* row = &out.table_[g * order];
    row[0] = static_cast<Index>(g);
    for (std::size_t h = 1; h < order; ++h) row[h] = right[row[out.parent_[h]]][out.last_gen_[h]];
  }
  out.inverses_.assign(order, 0);
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t h = 0; h < order; ++h) {
      if (out.table_[g * order + h] == identity()) {
        out.inverses_[g] = static_cast<Index>(h);
        break;
      }
    }
  }
  return out;
}

std::optional<FiniteMatrixGroup::Index> FiniteMatrixGroup::find(const Matrix& m) const {
  const Matrix key = projective_ ? ProjMatrix(m).rep() : m;
  if (key.dim() != dim() || key.conductor() != conductor()) return std::nullopt;
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  return std::nullopt;
}

FiniteMatrixGroup::Index FiniteMatrixGroup::power(Index a, std::size_t m) const {
  Index result = identity();
  Index base = a;
  while (m > 0) {
    if (m & 1U) result = mul(result, base);
    base = mul(base, base);
    m >>= 1U;
  }
  return result;
}

FiniteMatrixGroup::Index FiniteMatrixGroup::word(Index letter0, Index letter1, std::string_view x) const {
  Index acc = identity();
  for (char c : x) acc = mul(acc, c == '0' ? letter0 : letter1);
  return acc;
}

std::size_t FiniteMatrixGroup::element_order(Index a) const {
  std::size_t k = 1;
  for (Index p = a; p != identity(); p = mul(p, a)) ++k;
  return k;
}

std::size_t FiniteMatrixGroup::exponent() const {
  std::size_t e = 1;
  for (Index g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
  return e;
}

bool FiniteMatrixGroup::is_abelian() const {
  for (Index a : generators_)
    for (Index b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteMatrixGroup closure(std::span<const Matrix> generators, std::size_t cap) {
  return FiniteMatrixGroup::closure(generators, false, cap);
}

FiniteMatrixGroup projective_closure(std::span<const Matrix> generators, std::size_t cap) {
  return FiniteMatrixGroup::closure(generators, true, cap);
}

// -------------------------------------------------------------------- orbits

GroupOrbit::GroupOrbit(const FiniteMatrixGroup& group, const ProjPoint& start) {
  const auto gens = group.generators();
  std::vector<std::vector<Index>> gen_act(gens.size());
  auto add = [&](ProjPoint p) -> Index {
    if (auto it = index_.find(p); it != index_.end()) return it->second;
    const auto idx = static_cast<Index>(points_.size());
    index_.emplace(p, idx);
    points_.push_back(std::move(p));
    return idx;
  };
  add(start);
  for (std::size_t p = 0; p < points_.size(); ++p) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      ProjPoint image = apply(group.element(gens[s]), points_[p]);
      const Index q = add(std::move(image));
      gen_act[s].push_back(q);
    }
  }
  const std::size_t m = points_.size();
  act_.assign(group.order() * m, 0);
  for (std::size_t p = 0; p < m; ++p) act_[p] = static_cast<Index>(p);
  for (FiniteMatrixGroup::Index g = 1; g < group.order(); ++g) {
    const auto parent = group.parent(g);
    const auto& step = gen_act[group.last_generator(g)];
    for (std::size_t p = 0; p < m; ++p) act_[g * m + p] = act_[parent * m + step[p]];
  }
}

std::optional<GroupOrbit::Index> GroupOrbit::find(const ProjPoint& p) const {
  if (auto it = index_.find(p); it != index_.end()) return it->second;
  return std::nullopt;
}

// ------------------------------------------------------------------- catalog

namespace {

CycNum num(int conductor, long p, long q = 1) { return CycNum::from_rational(conductor, Rational(p, q)); }

}  // namespace

Matrix tetrahedral_a() {
  const auto h = num(4, 1, 2);
  return quaternion(h, h, h, -h);
}

Matrix tetrahedral_b() {
  const auto h = num(4, 1, 2);
  return quaternion(h, h, h, h);
}

std::string GroupCatalogEntry::name() const {
  switch (family) {
    case GroupFamily::cyclic:
      return "cyclic:" + std::to_string(param);
    case GroupFamily::binary_dihedral:
      return "binary_dihedral:" + std::to_string(param);
    case GroupFamily::binary_tetrahedral:
      return "binary_tetrahedral";
    case GroupFamily::binary_octahedral:
      return "binary_octahedral";
    case GroupFamily::binary_icosahedral:
      return "binary_icosahedral";
  }
  return "?";
}

std::size_t GroupCatalogEntry::linear_order() const {
  switch (family) {
    case GroupFamily::cyclic:
      return static_cast<std::size_t>(param);
    case GroupFamily::binary_dihedral:
      return 4 * static_cast<std::size_t>(param);
    case GroupFamily::binary_tetrahedral:
      return 24;
    case GroupFamily::binary_octahedral:
      return 48;
    case GroupFamily::binary_icosahedral:
      return 120;
  }
  return 0;
}

std::size_t GroupCatalogEntry::projective_order() const {
  return family == GroupFamily::cyclic ? linear_order() : linear_order() / 2;
}

GroupCatalogEntry catalog(GroupFamily family, int param) {
  GroupCatalogEntry e{family, param, 1, {}};
  switch (family) {
    case GroupFamily::cyclic: {
      if (param < 1) throw Error("cyclic(k) needs k >= 1");
      e.conductor = param;
      Matrix g = Matrix::identity(2, param);
      g.set(0, 0, CycNum::root(param, 1));
      e.generators = {g};
      break;
    }
    case GroupFamily::binary_dihedral: {
      if (param < 1) throw Error("binary_dihedral(k) needs k >= 1");
      const int n = 2 * param;
      e.conductor = n;
      Matrix r(2, n);
      r.set(0, 0, CycNum::root(n, 1));
      r.set(1, 1, CycNum::root(n, -1));
      Matrix j(2, n);
      j.set(0, 1, num(n, 1));
      j.set(1, 0, num(n, -1));
      e.generators = {r, j};
      break;
    }
    case GroupFamily::binary_tetrahedral:
      e.param = 0;
      e.conductor = 4;
      e.generators = {tetrahedral_a(), tetrahedral_b()};
      break;
    case GroupFamily::binary_octahedral: {
      // a from 2T together with (1 + i)/sqrt(2) = diag(z8, z8^-1).
      e.param = 0;
      e.conductor = 8;
      Matrix s(2, 8);
      s.set(0, 0, CycNum::root(8, 1));
      s.set(1, 1, CycNum::root(8, -1));
      e.generators = {tetrahedral_a().lift(8), s};
      break;
    }
    case GroupFamily::binary_icosahedral: {
      // a from 2T together with (phi + phi^-1 i + j)/2, where
      // phi^-1 = z5 + z5^-1 and phi = 1 + phi^-1, inside Q(z20).
      e.param = 0;
      e.conductor = 20;
      const CycNum inv_phi = CycNum::root(20, 4) + CycNum::root(20, -4);
      const CycNum phi = num(20, 1) + inv_phi;
      const Rational half(1, 2);
      e.generators = {tetrahedral_a().lift(20),
                      quaternion(phi * half, inv_phi * half, num(20, 1, 2), num(20, 0))};
      break;
    }
  }
  return e;
}

GroupCatalogEntry catalog(std::string_view spec) {
  std::string_view name = spec;
  std::optional<int> param;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    const auto digits = spec.substr(colon + 1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error("bad group parameter in '" + std::string(spec) + "'");
    }
    param = value;
  }
  auto need_param = [&](GroupFamily f) {
    if (!param) throw Error("group '" + std::string(name) + "' needs a parameter, e.g. " +
                            std::string(name) + ":5");
    return catalog(f, *param);
  };
  if (name == "cyclic" || name == "C") return need_param(GroupFamily::cyclic);
  if (name == "binary_dihedral" || name == "BD") return need_param(GroupFamily::binary_dihedral);
  if (name == "binary_tetrahedral" || name == "2T") return catalog(GroupFamily::binary_tetrahedral);
  if (name == "binary_octahedral" || name == "2O") return catalog(GroupFamily::binary_octahedral);
  if (name == "binary_icosahedral" || name == "2I") return catalog(GroupFamily::binary_icosahedral);
  throw Error("unknown group '" + std::string(spec) + "'");
}

std::vector<GroupCatalogEntry> catalog_up_to(std::size_t max_order, bool include_polyhedral) {
  std::vector<GroupCatalogEntry> out;
  for (std::size_t k = 1; k <= max_order; ++k) out.push_back(catalog(GroupFamily::cyclic, static_cast<int>(k)));
  for (std::size_t k = 2; 2 * k <= max_order; ++k)
    out.push_back(catalog(GroupFamily::binary_dihedral, static_cast<int>(k)));
  if (include_polyhedral) {
    for (auto f : {GroupFamily::binary_tetrahedral, GroupFamily::binary_octahedral,
                   GroupFamily::binary_icosahedral}) {
      auto e = catalog(f);
      if (e.projective_order() <= max_order) out.push_back(std::move(e));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(a.projective_order(), static_cast<int>(a.family), a.param) <
           std::make_tuple(b.projective_order(), static_cast<int>(b.family), b.param);
  });
  return out;
}

// ------------------------------------------------------- commuting exponent

bool collision_check(const FiniteMatrixGroup& group, std::size_t m) {
  std::vector<FiniteMatrixGroup::Index> powers;
  powers.reserve(group.order());
  for (FiniteMatrixGroup::Index g = 0; g < group.order(); ++g) powers.push_back(group.power(g, m));
  for (auto u : powers)
    for (auto v : powers)
      if (group.mul(u, v) != group.mul(v, u)) return false;
  return true;
}

std::size_t commuting_exponent(const FiniteMatrixGroup& group) {
  const std::size_t bound = group.exponent();
  for (std::size_t m = 1; m < bound; ++m) {
    // Distinct m-th powers only; early exit on the first non-commuting pair.
    std::vector<bool> seen(group.order(), false);
    std::vector<FiniteMatrixGroup::Index> powers;
    for (FiniteMatrixGroup::Index g = 0; g < group.order(); ++g) {
      const auto p = group.power(g, m);
      if (!seen[p]) {
        seen[p] = true;
        powers.push_back(p);
      }
    }
    bool commute = true;
    for (std::size_t i = 0; i < powers.size() && commute; ++i)
      for (std::size_t j = i + 1; j < powers.size() && commute; ++j)
        commute = group.mul(powers[i], powers[j]) == group.mul(powers[j], powers[i]);
    if (commute) return m;
  }
  return bound;
}

// ---------------------------------------------------------------- cayley dot

std::vector<std::string> shortest_words(const FiniteMatrixGroup& group, FiniteMatrixGroup::Index a,
                                        FiniteMatrixGroup::Index b) {
  std::vector<std::string> words(group.order());
  std::vector<bool> seen(group.order(), false);
  std::vector<FiniteMatrixGroup::Index> queue{FiniteMatrixGroup::identity()};
  seen[FiniteMatrixGroup::identity()] = true;
  words[FiniteMatrixGroup::identity()] = "1";
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto g = queue[head];
    const std::string base = g == FiniteMatrixGroup::identity() ? "" : words[g];
    for (auto [letter, gen] : {std::pair{'a', a}, std::pair{'b', b}}) {
      const auto h = group.mul(gen, g);
      if (seen[h]) continue;
      seen[h] = true;
      words[h] = letter + base;
      queue.push_back(h);
    }
  }
  for (std::size_t g = 0; g < words.size(); ++g)
    if (!seen[g]) words[g] = "g" + std::to_string(g);
  return words;
}

std::string cayley_dot(const FiniteMatrixGroup& group, FiniteMatrixGroup::Index a,
                       FiniteMatrixGroup::Index b) {
  const auto words = shortest_words(group, a, b);
  std::string out = "digraph cayley {\n  node [shape=circle];\n";
  for (std::size_t g = 0; g < group.order(); ++g)
    out += "  v" + std::to_string(g) + " [label=\"" + words[g] + "\"];\n";
  for (FiniteMatrixGroup::Index g = 0; g < group.order(); ++g) {
    out += "  v" + std::to_string(g) + " -> v" + std::to_string(group.mul(a, g)) + " [style=dashed];\n";
    out += "  v" + std::to_string(g) + " -> v" + std::to_string(group.mul(b, g)) +
           " [style=solid, color=red];\n";
  }
  return out + "}\n";
}

}  // namespace qac

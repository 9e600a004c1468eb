#include "qac/automata.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <limits>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "qac/error.hpp"

namespace qac {

namespace {

const Matrix& letter(const Matrix& d0, const Matrix& d1, char c) { return c == '0' ? d0 : d1; }

// Saturating path counter reused across many DP runs on the same state count.
class PathCounter {
 public:
  Multiplicity count(std::span<const std::uint32_t> t0, std::span<const std::uint32_t> t1, std::uint32_t start,
                     std::uint32_t accept, std::size_t length) {
    const std::size_t n = t0.size();
    cur_.assign(n, 0);
    next_.assign(n, 0);
    cur_[start] = 1;
    for (std::size_t k = 0; k < length; ++k) {
      std::fill(next_.begin(), next_.end(), 0);
      for (std::size_t s = 0; s < n; ++s) {
        const std::uint8_t c = cur_[s];
        if (c == 0) continue;
        std::uint8_t& a = next_[t0[s]];
        a = static_cast<std::uint8_t>(std::min(2, a + c));
        std::uint8_t& b = next_[t1[s]];
        b = static_cast<std::uint8_t>(std::min(2, b + c));
      }
      cur_.swap(next_);
    }
    return static_cast<Multiplicity>(cur_[accept]);
  }

 private:
  std::vector<std::uint8_t> cur_;
  std::vector<std::uint8_t> next_;
};

}  // namespace

void require_binary(std::string_view x) {
  for (char c : x)
    if (c != '0' && c != '1') throw Error("word must be a string over {0,1}: \"" + std::string(x) + "\"");
}

std::string expand_word(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '.') {
      ++i;
      continue;
    }
    if (c != '0' && c != '1') throw Error("bad word syntax: \"" + std::string(text) + "\"");
    ++i;
    std::size_t reps = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      const std::size_t begin = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (begin == i) throw Error("missing exponent after '^' in \"" + std::string(text) + "\"");
      reps = std::stoul(std::string(text.substr(begin, i - begin)));
    }
    out.append(reps, c);
  }
  return out;
}

Matrix word_matrix(const Matrix& delta0, const Matrix& delta1, std::string_view x) {
  require_binary(x);
  if (delta0.dim() != delta1.dim()) throw DimensionMismatch("delta0 and delta1 differ in dimension");
  Matrix acc = Matrix::identity(delta0.dim(), delta0.conductor());
  for (char c : x) acc = acc * letter(delta0, delta1, c);
  return acc;
}

ProjMatrix word_product(const Matrix& delta0, const Matrix& delta1, std::string_view x) {
  return ProjMatrix(word_matrix(delta0, delta1, x));
}

ProjPoint run_word(const QuantumDFA& m, std::string_view x) {
  require_binary(x);
  ProjPoint p = m.start;
  for (auto it = x.rbegin(); it != x.rend(); ++it) p = apply(letter(m.delta0, m.delta1, *it), p);
  return p;
}

OrbitDFA build_orbit_dfa(const QuantumDFA& m, std::size_t cap) {
  OrbitDFA dfa;
  std::unordered_map<ProjPoint, std::uint32_t> index;
  auto intern = [&](ProjPoint p) {
    auto [it, fresh] = index.try_emplace(p, static_cast<std::uint32_t>(dfa.states.size()));
    if (fresh) {
      if (dfa.states.size() >= cap)
        throw CapExceeded("orbit exceeds " + std::to_string(cap) + " states");
      dfa.states.push_back(std::move(p));
    }
    return it->second;
  };
  intern(m.start);
  for (std::size_t s = 0; s < dfa.states.size(); ++s) {
    const std::uint32_t a = intern(apply(m.delta0, dfa.states[s]));
    const std::uint32_t b = intern(apply(m.delta1, dfa.states[s]));
    dfa.t0.push_back(a);
    dfa.t1.push_back(b);
  }
  if (auto it = index.find(m.accept); it != index.end()) dfa.accept_index = it->second;
  return dfa;
}

std::string orbit_dot(const OrbitDFA& dfa) {
  std::string out = "digraph orbit {\n  node [shape=circle];\n";
  for (std::size_t s = 0; s < dfa.size(); ++s) {
    out += "  v" + std::to_string(s) + " [label=\"" + dfa.states[s].affine_label() + "\"";
    if (s == dfa.start_index) out += ", shape=doublecircle";
    if (dfa.accept_index && s == *dfa.accept_index) out += ", style=bold";
    out += "];\n";
  }
  for (std::size_t s = 0; s < dfa.size(); ++s) {
    out += "  v" + std::to_string(s) + " -> v" + std::to_string(dfa.t0[s]) + " [style=dashed];\n";
    out += "  v" + std::to_string(s) + " -> v" + std::to_string(dfa.t1[s]) + " [style=solid, color=red];\n";
  }
  return out + "}\n";
}

AcceptCount count_words(std::span<const std::uint32_t> t0, std::span<const std::uint32_t> t1,
                        std::uint32_t start, std::uint32_t accept, std::size_t length) {
  const std::size_t n = t0.size();
  // layer k holds saturated counts of length-k suffixes reaching each state.
  std::vector<std::uint8_t> layers((length + 1) * n, 0);
  layers[start] = 1;
  for (std::size_t k = 0; k < length; ++k) {
    const std::uint8_t* cur = &layers[k * n];
    std::uint8_t* nxt = &layers[(k + 1) * n];
    for (std::size_t s = 0; s < n; ++s) {
      if (cur[s] == 0) continue;
      nxt[t0[s]] = static_cast<std::uint8_t>(std::min(2, nxt[t0[s]] + cur[s]));
      nxt[t1[s]] = static_cast<std::uint8_t>(std::min(2, nxt[t1[s]] + cur[s]));
    }
  }
  AcceptCount out;
  out.count = static_cast<Multiplicity>(layers[length * n + accept]);
  if (out.count != Multiplicity::one) return out;

  // Step k applies letter x(length - k + 1); walking back from accept
  // recovers x(1), x(2), ... in order.
  std::string word;
  std::uint32_t state = accept;
  for (std::size_t k = length; k > 0; --k) {
    const std::uint8_t* prev = &layers[(k - 1) * n];
    bool found = false;
    for (std::size_t s = 0; s < n && !found; ++s) {
      if (prev[s] == 0) continue;
      if (t0[s] == state) {
        word.push_back('0');
        state = static_cast<std::uint32_t>(s);
        found = true;
      } else if (t1[s] == state) {
        word.push_back('1');
        state = static_cast<std::uint32_t>(s);
        found = true;
      }
    }
    if (!found) throw Error("internal: path backtracking failed");
  }
  out.word = std::move(word);
  return out;
}

AcceptCount count_accepting(const OrbitDFA& dfa, std::size_t length) {
  if (!dfa.accept_index) return {};
  return count_words(dfa.t0, dfa.t1, dfa.start_index, *dfa.accept_index, length);
}

UniqueCheck unique_witness_check(const QuantumDFA& m, std::string_view x, std::size_t orbit_cap) {
  require_binary(x);
  UniqueCheck r;
  r.certificate.accepts_x = accepts(m, x);
  try {
    const OrbitDFA dfa = build_orbit_dfa(m, orbit_cap);
    r.certificate.method = "orbit";
    r.certificate.orbit_size = dfa.size();
    r.certificate.count = count_accepting(dfa, x.size());
  } catch (const CapExceeded&) {
    if (x.size() > kBruteForceMaxLength) throw;
    r.certificate.method = "brute_force";
    const std::uint64_t n = brute_force_accepting(m, x.size());
    r.certificate.count.count = n == 0 ? Multiplicity::zero : n == 1 ? Multiplicity::one : Multiplicity::many;
    if (n == 1 && r.certificate.accepts_x) r.certificate.count.word = std::string(x);
  }
  const auto& c = r.certificate.count;
  r.unique = r.certificate.accepts_x && c.count == Multiplicity::one && (!c.word || *c.word == x);
  return r;
}

std::uint64_t brute_force_accepting(const QuantumDFA& m, std::size_t length) {
  if (length > kBruteForceMaxLength)
    throw Error("brute force limited to length " + std::to_string(kBruteForceMaxLength));
  // Depth-first over suffixes: each node shares the image of its suffix.
  std::vector<ProjPoint> stack(length + 1);
  stack[0] = m.start;
  std::uint64_t hits = 0;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == length) {
      if (stack[depth] == m.accept) ++hits;
      return;
    }
    for (const Matrix* d : {&m.delta0, &m.delta1}) {
      stack[depth + 1] = apply(*d, stack[depth]);
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return hits;
}

bool brute_force_check(const QuantumDFA& m, std::string_view x) {
  require_binary(x);
  if (x.size() > kBruteForceMaxLength)
    throw Error("brute force limited to length " + std::to_string(kBruteForceMaxLength));
  return accepts(m, x) && brute_force_accepting(m, x.size()) == 1;
}

QuantumDFA conjugate_witness(const Matrix& e0, const Matrix& e1, std::string_view x, const RationalVector2& v) {
  require_binary(x);
  if (e0.dim() != 2 || e1.dim() != 2) throw DimensionMismatch("conjugation recipe needs 2x2 matrices");
  if (e0.conductor() != e1.conductor()) throw ConductorMismatch("E0 and E1 live in different fields");
  if (v[0] == 0 && v[1] == 0) throw RecipeInapplicable("conjugation vector is zero");
  const int n = e0.conductor();
  const Vector vv{CycNum::from_rational(n, v[0]), CycNum::from_rational(n, v[1])};
  const Matrix w = word_matrix(e0, e1, x);
  const Vector wv = w * vv;
  if (!inner(vv, wv).is_zero()) {
    throw RecipeInapplicable("conjugation recipe inapplicable for this (E0, E1, x): <v, E_x v> = " +
                             inner(vv, wv).to_string() + ", trace(E_x) = " + w.trace().to_string());
  }
  const Matrix d = Matrix::from_rows({{vv[0], wv[0]}, {vv[1], wv[1]}});
  if (!is_scaled_unitary(d).unitary)
    throw RecipeInapplicable("conjugation recipe inapplicable for this (E0, E1, x): D is not scaled-unitary");
  const Matrix dinv = d.inverse();
  return QuantumDFA{dinv * e0 * d, dinv * e1 * d, ProjPoint::basis(2, 0, n), ProjPoint::basis(2, 1, n)};
}

std::vector<RationalVector2> conjugation_vectors(int max_height) {
  std::vector<RationalVector2> out;
  if (max_height >= 1) {
    out.push_back({Rational(1), Rational(0)});
    out.push_back({Rational(0), Rational(1)});
  }
  for (int h = 1; h <= max_height; ++h) {
    // Height h: directions (a, +-b) with max(a, b) = h, a, b > 0, gcd 1.
    for (int lo = 1; lo <= h; ++lo) {
      if (std::gcd(lo, h) != 1) continue;
      for (int sign : {1, -1}) {
        out.push_back({Rational(lo), Rational(sign * h)});
        if (lo != h) out.push_back({Rational(h), Rational(sign * lo)});
      }
    }
  }
  return out;
}

bool operator<(const ComplexityPair& a, const ComplexityPair& b) {
  if (a.n != b.n) return a.n < b.n;
  if (!a.q) return false;
  if (!b.q) return true;
  return *a.q < *b.q;
}

namespace {

struct Candidate {
  std::uint32_t i = 0, j = 0, v = 0;
  friend bool operator<(const Candidate& a, const Candidate& b) {
    return std::tie(a.i, a.j, a.v) < std::tie(b.i, b.j, b.v);
  }
};

std::vector<std::pair<char, std::size_t>> runs_of(std::string_view x) {
  std::vector<std::pair<char, std::size_t>> runs;
  for (char c : x) {
    if (!runs.empty() && runs.back().first == c)
      ++runs.back().second;
    else
      runs.emplace_back(c, 1);
  }
  return runs;
}

}  // namespace

SearchReport qsf_search(std::string_view x, std::span<const GroupCatalogEntry> groups,
                        std::span<const RationalVector2> vectors, const SearchOptions& options) {
  require_binary(x);
  if (x.empty()) throw Error("witness search needs a nonempty word");
  const auto runs = runs_of(x);
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  SearchReport report;

  for (const auto& entry : groups) {
    const FiniteMatrixGroup g = projective_closure(entry.generators);
    const int n = g.conductor();
    const auto order = static_cast<std::uint32_t>(g.order());

    std::vector<GroupOrbit> orbits;
    std::vector<std::vector<std::uint8_t>> orthogonal;
    for (const auto& v : vectors) {
      const Vector vv{CycNum::from_rational(n, v[0]), CycNum::from_rational(n, v[1])};
      orbits.emplace_back(g, ProjPoint(vv));
      std::vector<std::uint8_t> ortho;
      for (const auto& p : orbits.back().points()) ortho.push_back(inner(vv, p.coords()).is_zero() ? 1 : 0);
      orthogonal.push_back(std::move(ortho));
    }

    std::atomic<std::uint32_t> best_i{std::numeric_limits<std::uint32_t>::max()};
    std::vector<std::optional<Candidate>> found(workers);
    std::vector<std::size_t> ortho_counts(workers, 0);
    auto scan = [&](std::size_t w) {
      PathCounter counter;
      for (std::uint32_t i = static_cast<std::uint32_t>(w); i < order; i += static_cast<std::uint32_t>(workers)) {
        if (i > best_i.load()) return;
        for (std::uint32_t j = 0; j < order; ++j) {
          FiniteMatrixGroup::Index ex = FiniteMatrixGroup::identity();
          for (const auto& [c, len] : runs) ex = g.mul(ex, g.power(c == '0' ? i : j, len));
          for (std::uint32_t vi = 0; vi < orbits.size(); ++vi) {
            const auto& orbit = orbits[vi];
            const auto omega = orbit.act(ex, 0);
            if (!orthogonal[vi][omega]) continue;
            ++ortho_counts[w];
            if (counter.count(orbit.row(i), orbit.row(j), 0, omega, x.size()) == Multiplicity::one) {
              found[w] = Candidate{i, j, vi};
              std::uint32_t cur = best_i.load();
              while (i < cur && !best_i.compare_exchange_weak(cur, i)) {
              }
              return;
            }
          }
        }
      }
    };
    if (workers == 1) {
      scan(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
      for (auto& t : pool) t.join();
    }

    std::optional<Candidate> best;
    for (const auto& c : found)
      if (c && (!best || *c < *best)) best = c;

    GroupScan gs{entry.name(), g.order(), static_cast<std::size_t>(order) * order, 0, !best};
    for (auto c : ortho_counts) gs.orthogonal += c;
    if (best) {
      // Statistics are partial once a worker stops early.
      gs.pairs = 0;
      gs.orthogonal = 0;
      WitnessResult wr;
      wr.word = std::string(x);
      wr.pair = ComplexityPair{2, g.order()};
      wr.group = entry.name();
      wr.delta0_index = best->i;
      wr.delta1_index = best->j;
      wr.v = vectors[best->v];
      wr.automaton = conjugate_witness(g.element(best->i), g.element(best->j), x, wr.v);
      wr.check = unique_witness_check(wr.automaton, x, options.orbit_cap);
      if (!wr.check.unique) throw Error("internal: orbit scan and exact check disagree for " + entry.name());
      report.groups.push_back(std::move(gs));
      report.witness = std::move(wr);
      return report;
    }
    report.groups.push_back(std::move(gs));
  }
  report.exhausted = true;
  return report;
}

}  // namespace qac

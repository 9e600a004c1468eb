// Permutation automata, the A_perm search, the embedding into unitary
// matrices, and the floating-point genericity experiment.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "qac/automata.hpp"
#include "qac/error.hpp"

namespace qac {

namespace {

using Perm = std::vector<std::uint32_t>;

void require_permutation(std::span<const std::uint32_t> p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) throw Error("not a permutation");
    seen[v] = true;
  }
}

std::uint32_t run_perm(const Perm& pi0, const Perm& pi1, std::uint32_t s, std::string_view x) {
  for (auto it = x.rbegin(); it != x.rend(); ++it) s = (*it == '0' ? pi0 : pi1)[s];
  return s;
}

// Saturated count of length-n words taking start to target, on q states.
Multiplicity perm_count(const Perm& pi0, const Perm& pi1, std::uint32_t start, std::uint32_t target,
                        std::size_t length, std::vector<std::uint8_t>& cur, std::vector<std::uint8_t>& nxt) {
  const std::size_t q = pi0.size();
  cur.assign(q, 0);
  nxt.assign(q, 0);
  cur[start] = 1;
  for (std::size_t k = 0; k < length; ++k) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (std::size_t s = 0; s < q; ++s) {
      if (cur[s] == 0) continue;
      nxt[pi0[s]] = static_cast<std::uint8_t>(std::min(2, nxt[pi0[s]] + cur[s]));
      nxt[pi1[s]] = static_cast<std::uint8_t>(std::min(2, nxt[pi1[s]] + cur[s]));
    }
    cur.swap(nxt);
  }
  return static_cast<Multiplicity>(cur[target]);
}

// First witness with pi0 fixed, in the order (pi1 lexicographic, start).
std::optional<PermAutomaton> scan_pi1(std::string_view x, const Perm& pi0, std::size_t workers) {
  const auto q = static_cast<std::uint32_t>(pi0.size());
  // Chunk c holds the pi1 with pi1[0] == c, itself a lexicographic block.
  std::atomic<std::uint32_t> next_chunk{0};
  std::atomic<std::uint32_t> best_chunk{std::numeric_limits<std::uint32_t>::max()};
  std::vector<std::optional<PermAutomaton>> found(q);
  auto work = [&] {
    std::vector<std::uint8_t> cur, nxt;
    for (;;) {
      const std::uint32_t c = next_chunk.fetch_add(1);
      if (c >= q || c > best_chunk.load()) return;
      Perm pi1(q);
      pi1[0] = c;
      for (std::uint32_t k = 1, v = 0; k < q; ++k, ++v) {
        if (v == c) ++v;
        pi1[k] = v;
      }
      do {
        for (std::uint32_t s = 0; s < q; ++s) {
          const std::uint32_t f = run_perm(pi0, pi1, s, x);
          if (perm_count(pi0, pi1, s, f, x.size(), cur, nxt) == Multiplicity::one) {
            found[c] = PermAutomaton{pi0, pi1, s, f};
            std::uint32_t b = best_chunk.load();
            while (c < b && !best_chunk.compare_exchange_weak(b, c)) {
            }
            break;
          }
        }
        if (found[c]) break;
      } while (std::next_permutation(pi1.begin() + 1, pi1.end()));
    }
  };
  const std::size_t n = std::min<std::size_t>(std::max<std::size_t>(1, workers), q);
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace

std::uint32_t run_word(const PermAutomaton& a, std::string_view x) {
  require_binary(x);
  return run_perm(a.pi0, a.pi1, a.start, x);
}

bool perm_unique_check(const PermAutomaton& a, std::string_view x) {
  require_binary(x);
  if (x.empty()) throw Error("permutation witness check needs a nonempty word");
  if (a.pi1.size() != a.pi0.size()) throw DimensionMismatch("pi0 and pi1 act on different state sets");
  require_permutation(a.pi0);
  require_permutation(a.pi1);
  if (a.start >= a.states() || a.final_state >= a.states()) throw Error("state out of range");
  if (run_word(a, x) != a.final_state) return false;
  std::vector<std::uint8_t> cur, nxt;
  return perm_count(a.pi0, a.pi1, a.start, a.final_state, x.size(), cur, nxt) == Multiplicity::one;
}

std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t q) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t remaining, std::uint32_t max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, q, q);
  return out;
}

std::vector<std::uint32_t> cycle_type_representative(std::span<const std::uint32_t> lengths) {
  std::vector<std::uint32_t> p;
  std::uint32_t base = 0;
  for (auto len : lengths) {
    for (std::uint32_t k = 0; k < len; ++k) p.push_back(base + (k + 1) % len);
    base += len;
  }
  return p;
}

ApermResult aperm(std::string_view x, std::uint32_t q_max, const ApermOptions& options) {
  require_binary(x);
  if (x.empty()) throw Error("A_perm needs a nonempty word");
  const auto begin = std::chrono::steady_clock::now();
  ApermResult result;
  for (std::uint32_t q = std::max<std::uint32_t>(1, options.resume.q); q <= q_max; ++q) {
    const auto types = partitions(q);
    const std::uint32_t first = q == options.resume.q ? options.resume.type_index : 0;
    for (std::uint32_t t = first; t < types.size(); ++t) {
      if (options.budget && std::chrono::steady_clock::now() - begin > *options.budget) {
        result.completed = false;
        result.frontier = {q, t};
        return result;
      }
      if (auto w = scan_pi1(x, cycle_type_representative(types[t]), options.workers)) {
        result.value = q;
        result.witness = std::move(w);
        result.frontier = {q, t};
        return result;
      }
    }
  }
  result.frontier = {q_max + 1, 0};
  return result;
}

Matrix embed_permutation(std::span<const std::uint32_t> p, int conductor) {
  require_permutation(p);
  Matrix m(p.size(), conductor);
  for (std::size_t j = 0; j < p.size(); ++j) m.set(p[j], j, CycNum::from_int(conductor, 1));
  return m;
}

QuantumDFA embed_automaton(const PermAutomaton& a) {
  return QuantumDFA{embed_permutation(a.pi0), embed_permutation(a.pi1), ProjPoint::basis(a.states(), a.start, 1),
                    ProjPoint::basis(a.states(), a.final_state, 1)};
}

// ------------------------------------------------------------------ floats

namespace {

using C = std::complex<double>;
using Mat2 = std::array<C, 4>;
using Vec2 = std::array<C, 2>;

Mat2 haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  double q[4];
  double norm = 0;
  do {
    norm = 0;
    for (double& c : q) {
      c = normal(rng);
      norm += c * c;
    }
  } while (norm < 1e-300);
  norm = std::sqrt(norm);
  const C a(q[0] / norm, q[1] / norm), b(q[2] / norm, q[3] / norm);
  return {a, b, -std::conj(b), std::conj(a)};
}

Vec2 mul(const Mat2& m, const Vec2& v) { return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]}; }

}  // namespace

double projective_distance(const Vec2& u, const Vec2& v) {
  // |u ^ v| / (|u||v|) equals sqrt(1 - |<u,v>|^2 / (|u|^2 |v|^2)) without
  // the cancellation near 0.
  const double wedge = std::abs(u[0] * v[1] - u[1] * v[0]);
  const double nu = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
  const double nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  return wedge / (nu * nv);
}

FloatCheckResult float_generic_check(std::string_view x, std::size_t trials, double tol, std::uint64_t seed,
                                     bool force_equal) {
  require_binary(x);
  if (x.size() > kFloatMaxLength) throw Error("float check limited to length " + std::to_string(kFloatMaxLength));
  if (!(tol > 0)) throw Error("tolerance must be positive");
  std::mt19937_64 rng(seed);
  const std::size_t n = x.size();
  std::uint64_t target_bits = 0;
  for (char c : x) target_bits = (target_bits << 1) | (c == '1' ? 1U : 0U);

  FloatCheckResult result;
  result.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const Mat2 u0 = haar_su2(rng);
    const Mat2 u1 = force_equal ? u0 : haar_su2(rng);
    auto image = [&](std::uint64_t bits) {
      Vec2 p{C(1), C(0)};
      // Bit 0 is the last letter, applied first.
      for (std::size_t k = 0; k < n; ++k) p = mul((bits >> k) & 1U ? u1 : u0, p);
      return p;
    };
    const Vec2 omega = image(target_bits);
    bool ok = true;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n) && ok; ++y)
      if (y != target_bits && projective_distance(image(y), omega) <= tol) ok = false;
    if (ok) ++result.successes;
  }
  return result;
}

}  // namespace qac

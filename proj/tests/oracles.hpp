// Brute-force reference computations, deliberately sharing no code with the
// library's counting and classification paths.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace oracle {

inline bool adjacent(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t x = a ^ b;
  return x != 0 && (x & (x - 1)) == 0;
}

// Undirected Hamiltonian cycles of Q_n: directed cycles through 0, halved.
inline std::uint64_t hamiltonian_cycles(int n) {
  const std::uint32_t count = 1u << n;
  std::vector<char> seen(count, 0);
  std::uint64_t directed = 0;
  auto dfs = [&](auto&& self, std::uint32_t v, std::uint32_t depth) -> void {
    if (depth == count) {
      directed += adjacent(v, 0) ? 1 : 0;
      return;
    }
    for (int d = 0; d < n; ++d) {
      const std::uint32_t w = v ^ (1u << d);
      if (seen[w]) continue;
      seen[w] = 1;
      self(self, w, depth + 1);
      seen[w] = 0;
    }
  };
  seen[0] = 1;
  dfs(dfs, 0, 1);
  return n == 1 ? 0 : directed / 2;
}

// Perfect matchings of the subgraph of Q_n induced by `mask`, by matching
// the lowest vertex every possible way.
class InducedMatchings {
 public:
  explicit InducedMatchings(int n) : n_(n) {}

  std::uint64_t operator()(std::uint64_t mask) {
    if (mask == 0) return 1;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int v = __builtin_ctzll(mask);
    const std::uint64_t rest = mask & (mask - 1);
    std::uint64_t total = 0;
    for (int d = 0; d < n_; ++d) {
      const int u = v ^ (1 << d);
      if ((rest >> u) & 1u) total += (*this)(rest & ~(std::uint64_t{1} << u));
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  int n_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

inline std::uint64_t perfect_matchings(int n) {
  InducedMatchings pm(n);
  return pm(n == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << n)) - 1);
}

// Q_{n+1} = Q_n x K_2: choose which vertices use the new direction, then
// match what is left in both copies independently.
inline std::uint64_t perfect_matchings_product(int base) {
  InducedMatchings pm(base);
  const std::uint64_t subsets = std::uint64_t{1} << (1u << base);
  std::uint64_t total = 0;
  for (std::uint64_t left = 0; left < subsets; ++left) {
    const std::uint64_t m = pm(left);
    total += m * m;
  }
  return total;
}

// Lexicographically least delta sequence over every signed permutation,
// start vertex and direction, by applying each group element to the vertex
// walk. Directions are 1-based.
inline std::vector<int> brute_canonical(const std::vector<int>& deltas, int n) {
  const std::size_t len = deltas.size();
  std::vector<std::uint32_t> walk(len);
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < len; ++i) {
    walk[i] = v;
    v ^= 1u << (deltas[i] - 1);
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    for (std::uint32_t flips = 0; flips < (1u << n); ++flips) {
      std::vector<std::uint32_t> image(len);
      for (std::size_t i = 0; i < len; ++i) {
        std::uint32_t out = 0;
        for (int b = 0; b < n; ++b) {
          if ((walk[i] >> b) & 1u) out |= 1u << perm[static_cast<std::size_t>(b)];
        }
        image[i] = out ^ flips;
      }
      for (int reverse = 0; reverse < 2; ++reverse) {
        for (std::size_t k = 0; k < len; ++k) {
          std::vector<int> cand(len);
          for (std::size_t i = 0; i < len; ++i) {
            const std::size_t a = reverse ? (k + len - i) % len : (k + i) % len;
            const std::size_t b = reverse ? (k + 2 * len - i - 1) % len : (k + i + 1) % len;
            cand[i] = __builtin_ctz(image[a] ^ image[b]) + 1;
          }
          if (best.empty() || cand < best) best = cand;
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle

#pragma once

#include <climits>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "tropkit/tropmat.hpp"

namespace th {

using namespace tropkit;

constexpr long BOT = LONG_MIN;

inline Scalar sc(Tag t, long v) { return v == BOT ? Scalar::zero(t) : Scalar::of(t, v); }
inline Scalar mp(long v) { return sc(Tag::MaxPlus, v); }
inline Scalar mp(long p, long q) { return Scalar::of(Tag::MaxPlus, frac(p, q)); }

inline Matrix mk(Tag t, const std::vector<std::vector<long>>& rows) {
  Matrix A(t, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) A(i, j) = sc(t, rows[i][j]);
  return A;
}
inline Matrix mpm(const std::vector<std::vector<long>>& rows) { return mk(Tag::MaxPlus, rows); }

inline Vec vk(Tag t, const std::vector<long>& xs) {
  Vec v;
  for (long x : xs) v.push_back(sc(t, x));
  return v;
}
inline Vec mpv(const std::vector<long>& xs) { return vk(Tag::MaxPlus, xs); }

// integer entries in [lo,hi]; bottom with probability pbot
inline Matrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c, long lo, long hi, double pbot,
                            Tag t = Tag::MaxPlus, long den = 1) {
  std::uniform_int_distribution<long> d(lo, hi);
  std::bernoulli_distribution b(pbot);
  Matrix A(t, r, c);
  for (auto& x : A.a)
    if (!b(g)) x = Scalar::of(t, frac(d(g), den));
  return A;
}

// maximal mean over simple cycles by enumeration, nullopt if acyclic
inline std::optional<Rational> brute_max_cycle_mean(const Matrix& A) {
  std::size_t n = A.rows;
  std::optional<Rational> best;
  std::vector<bool> on(n, false);
  std::function<void(std::size_t, std::size_t, Rational, long)> dfs = [&](std::size_t s, std::size_t v, Rational w, long len) {
    for (std::size_t u = s; u < n; ++u) {
      if (A(v, u).bottom) continue;
      Rational w2 = w + A(v, u).v;
      if (u == s) {
        Rational m = w2 / Rational(len + 1);
        if (!best || m > *best) best = m;
      } else if (!on[u]) {
        on[u] = true;
        dfs(s, u, w2, len + 1);
        on[u] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on[s] = true;
    dfs(s, s, Rational(0), 0);
    on[s] = false;
  }
  return best;
}

// all permutations of 0..n-1
inline void for_each_perm(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  do f(p);
  while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace th

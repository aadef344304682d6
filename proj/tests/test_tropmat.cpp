#include <doctest.h>

#include "helpers.hpp"

using namespace tropkit;
using namespace th;

TEST_CASE("matrix product") {
  Matrix A = mpm({{0, 3}, {2, 1}});
  CHECK(mat_mul(identity(Tag::MaxPlus, 2), A) == A);
  CHECK(mat_mul(A, mpm({{0}, {0}})) == mpm({{3}, {2}}));
  try {
    mat_mul(mpm({{0, 0, 0}, {0, 0, 0}}), mpm({{0, 0}, {0, 0}}));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
  CHECK_THROWS_AS(mat_mul(A, identity(Tag::MinPlus, 2)), Error);
}

TEST_CASE("left residual") {
  CHECK(mat_residual_left(mpm({{0}, {0}}), mpv({1, 3})) == mpv({1}));
  CHECK(mat_residual_left(identity(Tag::MaxPlus, 2), mpv({4, 7})) == mpv({4, 7}));
  try {
    mat_residual_left(mpm({{0, BOT}, {0, BOT}}), mpv({1, 1}));
    FAIL("expected ZeroColumn");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroColumn);
  }
}

TEST_CASE("kleene star examples") {
  try {
    kleene_star(mpm({{1}}));
    FAIL("expected Divergent");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Divergent);
  }
  Matrix A = mpm({{-1, -3}, {-2, -1}});
  Matrix S = kleene_star(A);
  CHECK(S == mpm({{0, -3}, {-2, 0}}));
  CHECK(mat_mul(S, S) == S);
  CHECK(kleene_star(mpm({{BOT, BOT}, {BOT, BOT}})) == identity(Tag::MaxPlus, 2));
  Matrix m = mk(Tag::MinPlus, {{1, 3}, {2, 1}});
  CHECK(kleene_star(m) == mk(Tag::MinPlus, {{0, 3}, {2, 0}}));
}

TEST_CASE("product associativity on random matrices") {
  std::mt19937_64 g(1);
  for (int k = 0; k < 60; ++k) {
    std::size_t n = 1 + k % 6;
    Matrix A = random_matrix(g, n, n, -5, 5, 0.2, Tag::MaxPlus, 3), B = random_matrix(g, n, n, -5, 5, 0.2, Tag::MaxPlus, 2),
           C = random_matrix(g, n, n, -5, 5, 0.2);
    CHECK(mat_mul(mat_mul(A, B), C) == mat_mul(A, mat_mul(B, C)));
  }
}

TEST_CASE("star fixed point against partial sums") {
  std::mt19937_64 g(2);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 1 + k % 6;
    Matrix A = random_matrix(g, n, n, -6, 3, 0.3);
    auto lam = brute_max_cycle_mean(A);
    if (lam && *lam > 0) {
      CHECK_THROWS_AS(kleene_star(A), Error);
      continue;
    }
    Matrix S = kleene_star(A);
    CHECK(S == mat_add(identity(Tag::MaxPlus, n), mat_mul(A, S)));
    // oracle: I + A + ... + A^{n-1}
    Matrix P = identity(Tag::MaxPlus, n), sum = P;
    for (std::size_t p = 1; p < n; ++p) {
      P = mat_mul(P, A);
      sum = mat_add(sum, P);
    }
    CHECK(S == sum);
  }
}

TEST_CASE("residual adjunction on grid lambdas") {
  std::mt19937_64 g(4);
  for (int k = 0; k < 100; ++k) {
    Matrix V = random_matrix(g, 3, 2, -3, 3, 0.2);
    bool zero_col = false;
    for (std::size_t j = 0; j < 2; ++j) zero_col = zero_col || vec_is_zero(V.column(j));
    if (zero_col) continue;
    Vec x = random_matrix(g, 3, 1, -3, 3, 0.1).a;
    Vec r = mat_residual_left(V, x);
    CHECK(vec_leq(mat_vec(V, r), x));
    for (long a = -8; a <= 8; ++a)
      for (long b = -8; b <= 8; ++b) {
        Vec lam = mpv({a, b});
        if (vec_leq(mat_vec(V, lam), x)) CHECK(vec_leq(lam, r));
      }
  }
}

TEST_CASE("interval star") {
  Matrix hi = mpm({{-1, -3}, {-2, -1}});
  Matrix lo = mpm({{BOT, BOT}, {BOT, BOT}});
  IntervalMatrix S = iv_kleene_star(IntervalMatrix(lo, hi));
  CHECK(S.lo() == identity(Tag::MaxPlus, 2));
  CHECK(S.hi() == mpm({{0, -3}, {-2, 0}}));
  IntervalMatrix P = iv_kleene_star(IntervalMatrix(hi, hi));
  CHECK(P.lo() == P.hi());
  CHECK_THROWS_AS(iv_kleene_star(IntervalMatrix(mpm({{0}}), mpm({{1}}))), Error);
  CHECK_THROWS_AS(IntervalMatrix(mpm({{1}}), mpm({{0}})), Error);
}

TEST_CASE("interval star soundness on samples") {
  std::mt19937_64 g(5);
  for (int k = 0; k < 50; ++k) {
    std::size_t n = 2 + k % 3;
    Matrix lo = random_matrix(g, n, n, -8, -3, 0.2), hi = lo;
    std::uniform_int_distribution<long> d(0, 3);
    for (auto& x : hi.a)
      if (x.bottom) {
        if (d(g) == 0) x = mp(-3);
      } else {
        x = mp(std::min<long>(-1, x.v.get_num().get_si() + d(g)));
      }
    IntervalMatrix I(lo, hi), S = iv_kleene_star(I);
    CHECK(S.lo() == kleene_star(lo));
    CHECK(S.hi() == kleene_star(hi));
    for (int s = 0; s < 20; ++s) {
      Matrix M = lo;
      for (std::size_t e = 0; e < M.a.size(); ++e) {
        const Interval& iv = I.a[e];
        if (iv.hi.bottom) continue;
        long h = iv.hi.v.get_num().get_si();
        long l = iv.lo.bottom ? h - 4 : iv.lo.v.get_num().get_si();
        std::uniform_int_distribution<long> pick(l * 2, h * 2);
        M.a[e] = mp(pick(g), 2);
      }
      CHECK(S.contains(kleene_star(M)));
    }
  }
}

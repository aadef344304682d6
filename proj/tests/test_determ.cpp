#include <doctest.h>

#include "helpers.hpp"
#include "tropkit/assign.hpp"
#include "tropkit/determ.hpp"

using namespace tropkit;
using namespace th;

namespace {

Scalar mt(long v) { return Scalar::of(Tag::MaxTimes, v); }

}  // namespace

TEST_CASE("bideterminant examples") {
  Bideterminant b = bideterminant(mk(Tag::MaxTimes, {{1, 2}, {3, 4}}));
  CHECK(b.plus == mt(4));
  CHECK(b.minus == mt(6));
  for (Tag t : {Tag::MaxPlus, Tag::MaxTimes, Tag::Boolean}) {
    Matrix A(t, 3, 3);
    long pat[3][3] = {{0, 0, 1}, {1, 1, 0}, {0, 0, 1}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) A(i, j) = pat[i][j] ? Scalar::one(t) : Scalar::zero(t);
    b = bideterminant(A);
    CHECK(b.plus.bottom);
    CHECK(b.minus.bottom);
  }
  b = bideterminant(identity(Tag::MaxPlus, 4));
  CHECK(b.plus == mp(0));
  CHECK(b.minus.bottom);
  CHECK_THROWS_AS(bideterminant(Matrix(Tag::MaxPlus, 9, 9)), Error);
  CHECK_THROWS_AS(bideterminant(Matrix(Tag::MaxPlus, 2, 3)), Error);
}

TEST_CASE("permanent and rook coefficients") {
  Matrix A = mpm({{0, 3}, {2, 1}});
  CHECK(permanent(A) == mp(5));
  CHECK(permanent(Matrix(Tag::MaxPlus, 3, 3)).bottom);
  CHECK(permanent(identity(Tag::MaxPlus, 3)) == mp(0));
  auto p = rook_coefficients(A);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == mp(0));
  CHECK(p[1] == mp(3));
  CHECK(p[2] == mp(5));
  p = rook_coefficients(mpm({{7}}));
  CHECK(p == std::vector<Scalar>{mp(0), mp(7)});
  p = rook_coefficients(Matrix(Tag::MaxPlus, 2, 3));
  CHECK(p[0] == mp(0));
  CHECK(p[1].bottom);
  CHECK(p[2].bottom);
  CHECK_THROWS_AS(rook_coefficients(Matrix(Tag::MaxPlus, 8, 2)), Error);
}

TEST_CASE("singularity") {
  CHECK(is_trop_singular(mpm({{0, 0}, {0, 0}})));
  CHECK_FALSE(is_trop_singular(mpm({{0, 3}, {2, 1}})));
  CHECK_FALSE(is_trop_singular(identity(Tag::MaxPlus, 3)));
  CHECK(is_pattern_singular(mpm({{0, 0}, {1, 1}})) == PatternSingularity::None);
  CHECK(is_pattern_singular(mpm({{BOT, BOT}, {1, 1}})) == PatternSingularity::Left);
  CHECK(is_pattern_singular(mpm({{BOT, 0}, {BOT, 1}})) == PatternSingularity::Right);
  CHECK(is_pattern_singular(mpm({{BOT, BOT}, {BOT, 1}})) == PatternSingularity::Both);
  CHECK(std::string(pattern_name(PatternSingularity::Left)) == "left");
}

TEST_CASE("balancing subsets agree with a doubly attained maximum") {
  std::mt19937_64 g(23);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 2 + k % 2;
    Matrix A = random_matrix(g, n, n, 1, 3, 0.2, Tag::MaxTimes);
    std::vector<Scalar> w;
    for_each_perm(n, [&](const std::vector<std::size_t>& p) {
      Scalar s = Scalar::one(Tag::MaxTimes);
      for (std::size_t i = 0; i < n; ++i) s = sr_mul(s, A(i, p[i]));
      w.push_back(s);
    });
    Scalar top = Scalar::zero(Tag::MaxTimes);
    for (const auto& s : w) top = sr_add(top, s);
    CHECK(is_trop_singular(A) == (std::count(w.begin(), w.end(), top) >= 2));
  }
}

TEST_CASE("standard transform examples") {
  Matrix A = mpm({{0, 3}, {2, 1}});
  StandardTransform id{{0, 1}, {0, 1}, mpv({0, 0}), mpv({0, 0}), false};
  CHECK(apply_standard_transform(A, id) == A);
  StandardTransform tr = id;
  tr.transpose = true;
  CHECK(apply_standard_transform(A, tr) == transpose(A));
  StandardTransform sw{{1, 0}, {0, 1}, mpv({1, -1}), mpv({0, 0}), false};
  // P D A with P swapping rows, D = diag(1,-1): D A = [[1,4],[1,0]], then the rows are swapped
  CHECK(apply_standard_transform(A, sw) == mpm({{1, 0}, {1, 4}}));
  StandardTransform bad = id;
  bad.D = mpv({0, BOT});
  CHECK_THROWS_AS(apply_standard_transform(A, bad), Error);
}

TEST_CASE("weak multiplicativity") {
  std::mt19937_64 g(11);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 1 + k % 4;
    Tag t = k % 3 == 0 ? Tag::MaxTimes : Tag::MaxPlus;
    Matrix A = random_matrix(g, n, n, t == Tag::MaxTimes ? 1 : -4, 4, 0.2, t);
    Matrix B = random_matrix(g, n, n, t == Tag::MaxTimes ? 1 : -4, 4, 0.2, t);
    Bideterminant a = bideterminant(A), b = bideterminant(B), ab = bideterminant(mat_mul(A, B));
    Scalar lhs = sr_add(ab.plus, sr_add(sr_mul(a.plus, b.minus), sr_mul(a.minus, b.plus)));
    Scalar rhs = sr_add(ab.minus, sr_add(sr_mul(a.plus, b.plus), sr_mul(a.minus, b.minus)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("standard transforms preserve invariants") {
  std::mt19937_64 g(13);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 2 + k % 3;
    Matrix X = random_matrix(g, n, n, -4, 4, 0.2);
    std::vector<std::size_t> P(n), Q(n);
    for (std::size_t i = 0; i < n; ++i) P[i] = Q[i] = i;
    std::shuffle(P.begin(), P.end(), g);
    std::shuffle(Q.begin(), Q.end(), g);
    // pick E so that P Q is even and D E has trivial determinant
    Matrix PQ = mat_mul(permutation_matrix(Tag::MaxPlus, P), permutation_matrix(Tag::MaxPlus, Q));
    if (!bideterminant(PQ).minus.bottom) std::swap(Q[0], Q[1]);
    Vec D = random_matrix(g, 1, n, -3, 3, 0).a, E(n, mp(0));
    Rational s = 0;
    for (const auto& d : D) s += d.v;
    E[0] = Scalar::of(Tag::MaxPlus, -s);
    StandardTransform T{P, Q, D, E, k % 2 == 1};
    Bideterminant pq = bideterminant(mat_mul(permutation_matrix(Tag::MaxPlus, P), permutation_matrix(Tag::MaxPlus, Q)));
    Bideterminant de = bideterminant(mat_mul(diagonal_matrix(D), diagonal_matrix(E)));
    REQUIRE(pq.plus == mp(0));
    REQUIRE(pq.minus.bottom);
    REQUIRE(de.plus == mp(0));
    Matrix Y = apply_standard_transform(X, T);
    Bideterminant bx = bideterminant(X), by = bideterminant(Y);
    CHECK(bx.plus == by.plus);
    CHECK(bx.minus == by.minus);
    CHECK(permanent(X) == permanent(Y));
    CHECK(is_trop_singular(X) == is_trop_singular(Y));
  }
}

TEST_CASE("rook coefficients under transforms with unit diagonal product") {
  std::mt19937_64 g(17);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = 2 + k % 3;
    Matrix X = random_matrix(g, n, n, -4, 4, 0.2);
    std::vector<std::size_t> P(n), Q(n);
    for (std::size_t i = 0; i < n; ++i) P[i] = Q[i] = i;
    std::shuffle(P.begin(), P.end(), g);
    std::shuffle(Q.begin(), Q.end(), g);
    StandardTransform T{P, Q, mpv(std::vector<long>(n, 0)), mpv(std::vector<long>(n, 0)), k % 2 == 0};
    CHECK(rook_coefficients(X) == rook_coefficients(apply_standard_transform(X, T)));
  }
}

TEST_CASE("permanent equals the optimal assignment value") {
  std::mt19937_64 g(19);
  for (int k = 0; k < 150; ++k) {
    std::size_t n = 1 + k % 5;
    Matrix A = random_matrix(g, n, n, -5, 5, 0);
    auto opt = optimal_assignments(A);
    REQUIRE(!opt.empty());
    Rational v = 0;
    for (std::size_t i = 0; i < n; ++i) v += A(i, opt[0][i]).v;
    CHECK(permanent(A) == Scalar::of(Tag::MaxPlus, v));
  }
}

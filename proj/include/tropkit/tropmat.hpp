#pragma once

#include <cstddef>
#include <vector>

#include "tropkit/semiring.hpp"

namespace tropkit {

using Vec = std::vector<Scalar>;

struct Matrix {
  Tag tag = Tag::MaxPlus;
  std::size_t rows = 0, cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(Tag t, std::size_t r, std::size_t c) : tag(t), rows(r), cols(c), a(r * c, Scalar::zero(t)) {}

  Scalar& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.tag == y.tag && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

Matrix identity(Tag t, std::size_t n);
Matrix from_columns(Tag t, std::size_t rows, const std::vector<Vec>& cols);
Matrix transpose(const Matrix& A);
Matrix to_maxplus(const Matrix& A);
Matrix from_maxplus(const Matrix& A, Tag target);

Matrix mat_add(const Matrix& A, const Matrix& B);
Matrix mat_mul(const Matrix& A, const Matrix& B);
Vec mat_vec(const Matrix& A, const Vec& x);
bool mat_leq(const Matrix& A, const Matrix& B);

Vec vec_add(const Vec& x, const Vec& y);
Vec vec_scale(const Scalar& c, const Vec& x);
bool vec_leq(const Vec& x, const Vec& y);
bool vec_is_zero(const Vec& x);

// greatest lambda with V (x) lambda <= x
Vec mat_residual_left(const Matrix& V, const Vec& x);

// A* = I (+) A (+) A^2 (+) ...; Divergent on a cycle heavier than the unit
Matrix kleene_star(const Matrix& A);
// A+ = A (x) A*
Matrix kleene_plus(const Matrix& A);

struct IntervalMatrix {
  Tag tag = Tag::MaxPlus;
  std::size_t rows = 0, cols = 0;
  std::vector<Interval> a;

  IntervalMatrix() = default;
  IntervalMatrix(const Matrix& lo, const Matrix& hi);

  Matrix lo() const;
  Matrix hi() const;
  bool contains(const Matrix& M) const;
  const Interval& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

IntervalMatrix iv_mat_mul(const IntervalMatrix& A, const IntervalMatrix& B);
IntervalMatrix iv_kleene_star(const IntervalMatrix& A);

}  // namespace tropkit

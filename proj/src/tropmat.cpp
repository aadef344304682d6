#include "tropkit/tropmat.hpp"

#include "tropkit/spectral.hpp"

namespace tropkit {

Vec Matrix::column(std::size_t j) const {
  Vec v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(a.begin() + static_cast<std::ptrdiff_t>(i * cols), a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
}

Matrix identity(Tag t, std::size_t n) {
  Matrix I(t, n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = Scalar::one(t);
  return I;
}

Matrix from_columns(Tag t, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix M(t, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(Errc::DimensionMismatch, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
  }
  return M;
}

Matrix transpose(const Matrix& A) {
  Matrix T(A.tag, A.cols, A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

Matrix to_maxplus(const Matrix& A) {
  if (A.tag != Tag::MinPlus) return A;
  Matrix M = A;
  M.tag = Tag::MaxPlus;
  for (auto& s : M.a) s = to_maxplus(s);
  return M;
}

Matrix from_maxplus(const Matrix& A, Tag target) {
  if (target != Tag::MinPlus) return A;
  Matrix M = A;
  M.tag = Tag::MinPlus;
  for (auto& s : M.a) s = from_maxplus(s, Tag::MinPlus);
  return M;
}

static void check_tags(Tag a, Tag b) {
  if (a != b) throw Error(Errc::TagMismatch, std::string("semiring tags differ: ") + tag_name(a) + " vs " + tag_name(b));
}

Matrix mat_add(const Matrix& A, const Matrix& B) {
  check_tags(A.tag, B.tag);
  if (A.rows != B.rows || A.cols != B.cols) throw Error(Errc::DimensionMismatch, "matrix sum shape mismatch");
  Matrix C(A.tag, A.rows, A.cols);
  for (std::size_t k = 0; k < A.a.size(); ++k) C.a[k] = sr_add(A.a[k], B.a[k]);
  return C;
}

static Matrix maxplus_mul(const Matrix& A, const Matrix& B) {
  Matrix C(Tag::MaxPlus, A.rows, B.cols);
  Rational s;
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < B.cols; ++k) {
      Scalar& c = C(i, k);
      for (std::size_t j = 0; j < A.cols; ++j) {
        const Scalar& x = A(i, j);
        const Scalar& y = B(j, k);
        if (x.bottom || y.bottom) continue;
        s = x.v + y.v;
        if (c.bottom || s > c.v) {
          c.bottom = false;
          c.v = s;
        }
      }
    }
  return C;
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
  check_tags(A.tag, B.tag);
  if (A.cols != B.rows)
    throw Error(Errc::DimensionMismatch, "cannot multiply " + std::to_string(A.rows) + "x" + std::to_string(A.cols) + " by " +
                                             std::to_string(B.rows) + "x" + std::to_string(B.cols));
  if (A.tag == Tag::MaxPlus) return maxplus_mul(A, B);
  if (A.tag == Tag::MinPlus) return from_maxplus(maxplus_mul(to_maxplus(A), to_maxplus(B)), Tag::MinPlus);
  Matrix C(A.tag, A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < B.cols; ++k)
      for (std::size_t j = 0; j < A.cols; ++j) C(i, k) = sr_add(C(i, k), sr_mul(A(i, j), B(j, k)));
  return C;
}

Vec mat_vec(const Matrix& A, const Vec& x) {
  if (x.size() != A.cols) throw Error(Errc::DimensionMismatch, "matrix-vector shape mismatch");
  Matrix X = from_columns(A.tag, x.size(), {x});
  return mat_mul(A, X).column(0);
}

bool mat_leq(const Matrix& A, const Matrix& B) {
  check_tags(A.tag, B.tag);
  if (A.rows != B.rows || A.cols != B.cols) throw Error(Errc::DimensionMismatch, "matrix comparison shape mismatch");
  for (std::size_t k = 0; k < A.a.size(); ++k)
    if (!sr_leq(A.a[k], B.a[k])) return false;
  return true;
}

Vec vec_add(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error(Errc::DimensionMismatch, "vector length mismatch");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = sr_add(x[i], y[i]);
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = sr_mul(c, x[i]);
  return r;
}

bool vec_leq(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error(Errc::DimensionMismatch, "vector length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!sr_leq(x[i], y[i])) return false;
  return true;
}

bool vec_is_zero(const Vec& x) {
  for (const auto& s : x)
    if (!s.bottom) return false;
  return true;
}

Vec mat_residual_left(const Matrix& V, const Vec& x) {
  if (V.rows != x.size()) throw Error(Errc::DimensionMismatch, "residual: rows of V differ from length of x");
  if (V.tag == Tag::Boolean) throw Error(Errc::InvalidArgument, "residual is not defined for the boolean semiring");
  Vec r(V.cols);
  for (std::size_t j = 0; j < V.cols; ++j) {
    bool seen = false;
    Scalar best;
    for (std::size_t i = 0; i < V.rows; ++i) {
      if (V(i, j).bottom) continue;
      Scalar q = sr_residual(x[i], V(i, j));
      // residual is the meet (canonical minimum) over the column support
      if (!seen || sr_leq(q, best)) best = q;
      seen = true;
    }
    if (!seen) throw Error(Errc::ZeroColumn, "column " + std::to_string(j) + " is identically zero");
    r[j] = best;
  }
  return r;
}

Matrix kleene_star(const Matrix& A) {
  if (A.rows != A.cols) throw Error(Errc::DimensionMismatch, "star needs a square matrix");
  if (A.tag == Tag::MaxTimes) throw Error(Errc::InvalidArgument, "star is provided for max-plus, min-plus and boolean matrices");
  if (A.tag == Tag::MinPlus) return from_maxplus(kleene_star(to_maxplus(A)), Tag::MinPlus);
  std::size_t n = A.rows;
  if (A.tag == Tag::MaxPlus && has_cycle(A)) {
    Scalar lam = max_cycle_mean(A);
    if (lam.v > 0) throw Error(Errc::Divergent, "a cycle has positive weight (max cycle mean " + lam.str() + ")");
  }
  Matrix S = mat_add(identity(A.tag, n), A);
  for (std::size_t span = 1; span + 1 < n; span *= 2) S = mat_mul(S, S);
  return S;
}

Matrix kleene_plus(const Matrix& A) { return mat_mul(A, kleene_star(A)); }

IntervalMatrix::IntervalMatrix(const Matrix& l, const Matrix& h) : tag(l.tag), rows(l.rows), cols(l.cols) {
  check_tags(l.tag, h.tag);
  if (l.rows != h.rows || l.cols != h.cols) throw Error(Errc::DimensionMismatch, "interval endpoint shapes differ");
  a.reserve(l.a.size());
  for (std::size_t k = 0; k < l.a.size(); ++k) a.push_back(make_interval(l.a[k], h.a[k]));
}

Matrix IntervalMatrix::lo() const {
  Matrix M(tag, rows, cols);
  for (std::size_t k = 0; k < a.size(); ++k) M.a[k] = a[k].lo;
  return M;
}

Matrix IntervalMatrix::hi() const {
  Matrix M(tag, rows, cols);
  for (std::size_t k = 0; k < a.size(); ++k) M.a[k] = a[k].hi;
  return M;
}

bool IntervalMatrix::contains(const Matrix& M) const {
  if (M.rows != rows || M.cols != cols || M.tag != tag) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].contains(M.a[k])) return false;
  return true;
}

IntervalMatrix iv_mat_mul(const IntervalMatrix& A, const IntervalMatrix& B) {
  return IntervalMatrix(mat_mul(A.lo(), B.lo()), mat_mul(A.hi(), B.hi()));
}

IntervalMatrix iv_kleene_star(const IntervalMatrix& A) {
  Matrix hi = kleene_star(A.hi());
  return IntervalMatrix(kleene_star(A.lo()), hi);
}

}  // namespace tropkit

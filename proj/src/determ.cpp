#include "tropkit/determ.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tropkit {

namespace {

constexpr std::size_t kPermCap = 8;
constexpr std::size_t kRookCap = 7;
constexpr std::size_t kSubsetCap = 3;

void require_square(const Matrix& A, std::size_t cap) {
  if (A.rows != A.cols) throw Error(Errc::DimensionMismatch, "matrix must be square");
  if (A.rows > cap) throw Error(Errc::TooLarge, "n = " + std::to_string(A.rows) + " exceeds the enumeration cap " + std::to_string(cap));
}

bool odd(const std::vector<std::size_t>& p) {
  std::size_t inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 == 1;
}

template <class F>
void for_each_perm(std::size_t n, F f) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do f(p);
  while (std::next_permutation(p.begin(), p.end()));
}

Scalar weight(const Matrix& A, const std::vector<std::size_t>& p) {
  Scalar w = Scalar::one(A.tag);
  for (std::size_t i = 0; i < p.size(); ++i) w = sr_mul(w, A(i, p[i]));
  return w;
}

std::vector<Scalar> all_weights(const Matrix& A) {
  std::vector<Scalar> w;
  for_each_perm(A.rows, [&](const std::vector<std::size_t>& p) { w.push_back(weight(A, p)); });
  return w;
}

}  // namespace

const char* pattern_name(PatternSingularity p) {
  switch (p) {
    case PatternSingularity::None: return "none";
    case PatternSingularity::Left: return "left";
    case PatternSingularity::Right: return "right";
    case PatternSingularity::Both: return "both";
  }
  return "?";
}

Bideterminant bideterminant(const Matrix& A) {
  require_square(A, kPermCap);
  Bideterminant d{Scalar::zero(A.tag), Scalar::zero(A.tag)};
  for_each_perm(A.rows, [&](const std::vector<std::size_t>& p) {
    Scalar& slot = odd(p) ? d.minus : d.plus;
    slot = sr_add(slot, weight(A, p));
  });
  return d;
}

Scalar permanent(const Matrix& A) {
  require_square(A, kPermCap);
  Scalar s = Scalar::zero(A.tag);
  for_each_perm(A.rows, [&](const std::vector<std::size_t>& p) { s = sr_add(s, weight(A, p)); });
  return s;
}

std::vector<Scalar> rook_coefficients(const Matrix& A) {
  if (A.rows > kRookCap || A.cols > kRookCap) throw Error(Errc::TooLarge, "rook polynomial is capped at 7x7");
  std::size_t k = std::min(A.rows, A.cols);
  std::vector<Scalar> p(k + 1, Scalar::zero(A.tag));
  p[0] = Scalar::one(A.tag);
  for (std::uint32_t rm = 1; rm < (1u << A.rows); ++rm)
    for (std::uint32_t cm = 1; cm < (1u << A.cols); ++cm) {
      std::size_t j = static_cast<std::size_t>(__builtin_popcount(rm));
      if (j != static_cast<std::size_t>(__builtin_popcount(cm))) continue;
      Matrix sub(A.tag, j, j);
      std::size_t r = 0;
      for (std::size_t i = 0; i < A.rows; ++i) {
        if (!(rm >> i & 1u)) continue;
        std::size_t c = 0;
        for (std::size_t l = 0; l < A.cols; ++l)
          if (cm >> l & 1u) sub(r, c++) = A(i, l);
        ++r;
      }
      p[j] = sr_add(p[j], permanent(sub));
    }
  return p;
}

bool is_trop_singular(const Matrix& A) {
  require_square(A, kPermCap);
  std::vector<Scalar> w = all_weights(A);
  if (A.tag != Tag::MaxPlus && A.rows <= kSubsetCap) {
    std::size_t m = w.size();
    for (std::uint32_t T = 1; T + 1 < (1u << m); ++T) {
      Scalar in = Scalar::zero(A.tag), out = Scalar::zero(A.tag);
      for (std::size_t s = 0; s < m; ++s) {
        if (T >> s & 1u)
          in = sr_add(in, w[s]);
        else
          out = sr_add(out, w[s]);
      }
      if (in == out) return true;
    }
    return false;
  }
  // selective semirings: the sum is attained at least twice
  Scalar top = Scalar::zero(A.tag);
  for (const auto& s : w) top = sr_add(top, s);
  return std::count(w.begin(), w.end(), top) >= 2;
}

PatternSingularity is_pattern_singular(const Matrix& A) {
  bool left = false, right = false;
  for (std::size_t i = 0; i < A.rows; ++i) {
    bool z = true;
    for (std::size_t j = 0; j < A.cols; ++j) z = z && A(i, j).bottom;
    left = left || z;
  }
  for (std::size_t j = 0; j < A.cols; ++j) {
    bool z = true;
    for (std::size_t i = 0; i < A.rows; ++i) z = z && A(i, j).bottom;
    right = right || z;
  }
  if (left && right) return PatternSingularity::Both;
  if (left) return PatternSingularity::Left;
  if (right) return PatternSingularity::Right;
  return PatternSingularity::None;
}

Matrix permutation_matrix(Tag t, const std::vector<std::size_t>& perm) {
  Matrix P(t, perm.size(), perm.size());
  std::vector<char> hit(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || hit[perm[i]]) throw Error(Errc::InvalidArgument, "not a permutation");
    hit[perm[i]] = 1;
    P(i, perm[i]) = Scalar::one(t);
  }
  return P;
}

Matrix diagonal_matrix(const Vec& d) {
  if (d.empty()) throw Error(Errc::InvalidArgument, "empty diagonal");
  Matrix D(d[0].tag, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].bottom) throw Error(Errc::InvalidArgument, "diagonal entries of a standard transform must be invertible");
    D(i, i) = d[i];
  }
  return D;
}

Matrix apply_standard_transform(const Matrix& A, const StandardTransform& T) {
  Matrix X = T.transpose ? transpose(A) : A;
  Matrix L = mat_mul(permutation_matrix(A.tag, T.P), diagonal_matrix(T.D));
  Matrix R = mat_mul(diagonal_matrix(T.E), permutation_matrix(A.tag, T.Q));
  return mat_mul(mat_mul(L, X), R);
}

}  // namespace tropkit

#include "tropkit/spectral.hpp"

#include <algorithm>
#include <optional>

namespace tropkit {

namespace {

using Opt = std::optional<Rational>;

// Karp table D[k][v]: heaviest walk of exactly k edges ending in v, any start
std::vector<std::vector<Opt>> karp_table(const Matrix& A) {
  std::size_t n = A.rows;
  std::vector<std::vector<Opt>> D(n + 1, std::vector<Opt>(n));
  for (std::size_t v = 0; v < n; ++v) D[0][v] = Rational(0);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      Opt best;
      for (std::size_t i = 0; i < n; ++i) {
        if (!D[k - 1][i] || A(i, j).bottom) continue;
        Rational w = *D[k - 1][i] + A(i, j).v;
        if (!best || w > *best) best = w;
      }
      D[k][j] = best;
    }
  return D;
}

void require_square(const Matrix& A) {
  if (A.rows != A.cols) throw Error(Errc::DimensionMismatch, "spectral problems need a square matrix");
  if (A.tag != Tag::MaxPlus && A.tag != Tag::MinPlus)
    throw Error(Errc::InvalidArgument, "spectral problems are provided for max-plus and min-plus matrices");
}

Matrix shifted(const Matrix& A, const Rational& lam) {
  Matrix B = A;
  for (auto& s : B.a)
    if (!s.bottom) s.v -= lam;
  return B;
}

SpectralResult maxplus_spectral(const Matrix& A, bool with_vectors) {
  SpectralResult r;
  r.eigenvalue = max_cycle_mean(A);
  std::size_t n = A.rows;
  Matrix B = shifted(A, r.eigenvalue.v);
  Matrix S = kleene_star(B);
  Matrix P = mat_mul(B, S);
  std::vector<char> crit(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (!P(i, i).bottom && P(i, i).v == 0) {
      crit[i] = 1;
      r.critical_nodes.push_back(i);
    }
  for (std::size_t i : r.critical_nodes)
    for (std::size_t j : r.critical_nodes) {
      if (B(i, j).bottom || S(j, i).bottom) continue;
      if (B(i, j).v + S(j, i).v == 0) r.critical_edges.emplace_back(i, j);
    }
  std::vector<char> placed(n, 0);
  for (std::size_t i : r.critical_nodes) {
    if (placed[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j : r.critical_nodes) {
      if (placed[j]) continue;
      bool same = (i == j) || (!S(i, j).bottom && !S(j, i).bottom && S(i, j).v + S(j, i).v == 0);
      if (same) {
        placed[j] = 1;
        cls.push_back(j);
      }
    }
    r.critical_classes.push_back(cls);
  }
  if (with_vectors)
    for (const auto& cls : r.critical_classes) r.eigenvectors.push_back(S.column(cls.front()));
  return r;
}

SpectralResult to_min_plus(SpectralResult r) {
  r.eigenvalue = from_maxplus(r.eigenvalue, Tag::MinPlus);
  for (auto& v : r.eigenvectors)
    for (auto& s : v) s = from_maxplus(s, Tag::MinPlus);
  return r;
}

}  // namespace

bool has_cycle(const Matrix& A) {
  require_square(A);
  Matrix M = to_maxplus(A);
  auto D = karp_table(M);
  for (const auto& d : D[M.rows])
    if (d) return true;
  return false;
}

Scalar max_cycle_mean(const Matrix& A) {
  require_square(A);
  if (A.tag == Tag::MinPlus) return from_maxplus(max_cycle_mean(to_maxplus(A)), Tag::MinPlus);
  std::size_t n = A.rows;
  auto D = karp_table(A);
  Opt best;
  for (std::size_t v = 0; v < n; ++v) {
    if (!D[n][v]) continue;
    Opt worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (!D[k][v]) continue;
      Rational m = (*D[n][v] - *D[k][v]) / Rational(static_cast<long>(n - k));
      if (!worst || m < *worst) worst = m;
    }
    if (worst && (!best || *worst > *best)) best = worst;
  }
  if (!best) throw Error(Errc::NoCycle, "the graph of finite entries has no cycle");
  return Scalar::of(Tag::MaxPlus, *best);
}

SpectralResult critical_graph(const Matrix& A) {
  require_square(A);
  if (A.tag == Tag::MinPlus) return to_min_plus(maxplus_spectral(to_maxplus(A), false));
  return maxplus_spectral(A, false);
}

std::vector<Vec> eigenvectors(const Matrix& A) { return spectral(A).eigenvectors; }

SpectralResult spectral(const Matrix& A) {
  require_square(A);
  if (A.tag == Tag::MinPlus) return to_min_plus(maxplus_spectral(to_maxplus(A), true));
  return maxplus_spectral(A, true);
}

CollatzWielandt collatz_wielandt(const Matrix& A) {
  require_square(A);
  if (A.tag != Tag::MaxPlus) throw Error(Errc::InvalidArgument, "Collatz-Wielandt number is provided for max-plus matrices");
  for (std::size_t i = 0; i < A.rows; ++i) {
    bool finite = false;
    for (std::size_t j = 0; j < A.cols; ++j) finite = finite || !A(i, j).bottom;
    if (!finite) throw Error(Errc::Unbounded, "row " + std::to_string(i) + " has no finite entry");
  }
  CollatzWielandt cw;
  cw.value = max_cycle_mean(A);
  Matrix S = kleene_star(shifted(A, cw.value.v));
  Vec u(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i) {
    Scalar m = Scalar::zero(Tag::MaxPlus);
    for (std::size_t j = 0; j < A.cols; ++j) m = sr_add(m, S(i, j));
    u[i] = m;
  }
  Rational top = u[0].v;
  for (const auto& s : u) top = std::max(top, s.v);
  for (auto& s : u) s.v -= top;
  cw.certificate = u;
  return cw;
}

}  // namespace tropkit

#include "tropkit/assign.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "tropkit/io.hpp"
#include "tropkit/spectral.hpp"

namespace tropkit {

namespace {

constexpr std::size_t kBruteCap = 8;

json perm_json(const Perm& F) {
  json j = json::array();
  for (auto x : F) j.push_back(x + 1);
  return j;
}

json rvec_json(const RVec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(rational_to_json(x));
  return j;
}

void check_vec(const Matrix& B, const RVec& f) {
  if (f.size() != B.rows) throw Error(Errc::DimensionMismatch, "vector length does not match the matrix");
}

// entrywise max with -inf as nullopt
void relax(std::optional<Rational>& best, const Rational& v) {
  if (!best || v > *best) best = v;
}

}  // namespace

void check_assign_matrix(const Matrix& B) {
  if (B.tag != Tag::MaxPlus) throw Error(Errc::TagMismatch, "assignment matrices are max-plus");
  if (B.rows != B.cols || B.rows == 0) throw Error(Errc::DimensionMismatch, "assignment matrix must be square and nonempty");
  for (std::size_t i = 0; i < B.rows; ++i) {
    bool row = false, col = false;
    for (std::size_t j = 0; j < B.cols; ++j) {
      row = row || !B(i, j).bottom;
      col = col || !B(j, i).bottom;
    }
    if (!row || !col)
      throw Error(Errc::InvalidArgument, "row or column " + std::to_string(i + 1) + " has no finite entry");
  }
}

RVec apply_B(const Matrix& B, const RVec& f, bool transpose) {
  check_assign_matrix(B);
  check_vec(B, f);
  std::size_t n = B.rows;
  RVec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Rational> best;
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& b = transpose ? B(j, i) : B(i, j);
      if (!b.bottom) relax(best, b.v - f[j]);
    }
    out[i] = *best;
  }
  return out;
}

Subdifferential subdifferential(const Matrix& B, const RVec& g) {
  RVec h = apply_B(B, g, true);
  std::size_t n = B.rows;
  Subdifferential s;
  s.sets.assign(n, {});
  s.inverse.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!B(i, k).bottom && B(i, k).v - g[i] == h[k]) {
        s.sets[i].push_back(k);
        s.inverse[k].push_back(i);
      }
  std::vector<int> hits(n, 0);
  for (const auto& cell : s.inverse)
    for (auto i : cell) ++hits[i];
  s.covering = std::all_of(hits.begin(), hits.end(), [](int c) { return c > 0; });
  s.minimal = s.covering;
  for (std::size_t j = 0; j < n && s.minimal; ++j)
    s.minimal = std::any_of(s.inverse[j].begin(), s.inverse[j].end(), [&](std::size_t i) { return hits[i] == 1; });
  return s;
}

std::vector<std::vector<std::size_t>> subdifferential_primal(const Matrix& B, const RVec& f) {
  RVec h = apply_B(B, f, false);
  std::size_t n = B.rows;
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (!B(k, j).bottom && B(k, j).v - f[j] == h[k]) out[j].push_back(k);
  return out;
}

std::vector<Perm> optimal_assignments(const Matrix& B, std::size_t limit) {
  check_assign_matrix(B);
  std::size_t n = B.rows;
  if (n > kBruteCap) throw Error(Errc::TooLarge, "exhaustive assignment search is capped at n = 8");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::optional<Rational> best;
  std::vector<Perm> arg;
  do {
    Rational s = 0;
    bool finite = true;
    for (std::size_t i = 0; i < n && finite; ++i) {
      if (B(i, p[i]).bottom)
        finite = false;
      else
        s += B(i, p[i]).v;
    }
    if (!finite) continue;
    if (!best || s > *best) {
      best = s;
      arg.assign(1, p);
    } else if (s == *best && arg.size() < limit) {
      arg.push_back(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return arg;
}

RegularityCertificate strong_regularity(const Matrix& B) {
  auto opt = optimal_assignments(B, 2);
  if (opt.empty()) throw Error(Errc::NotStronglyRegular, "no bijection with finite weight");
  if (opt.size() > 1)
    throw Error(Errc::NotStronglyRegular, "optimal assignment is not unique",
                json{{"first", perm_json(opt[0])}, {"second", perm_json(opt[1])}});
  std::size_t n = B.rows;
  const Perm& F = opt[0];
  // reduced costs of moving row i onto column F(j); every cycle is strictly negative
  Matrix d(Tag::MaxPlus, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !B(i, F[j]).bottom) d(i, j) = Scalar::of(Tag::MaxPlus, B(i, F[j]).v - B(i, F[i]).v);
  Rational eps = 1;
  if (has_cycle(d)) {
    Scalar lam = max_cycle_mean(d);
    if (lam.v >= 0) throw Error(Errc::NotStronglyRegular, "reduced graph has a non-negative cycle");
    eps = -lam.v / 2;
  }
  for (auto& x : d.a)
    if (!x.bottom) x.v += eps;
  // longest paths from a virtual source attached to every node with weight 0
  RVec h(n, Rational(0));
  for (std::size_t round = 0; round < n; ++round)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!d(i, j).bottom && h[i] + d(i, j).v > h[j]) h[j] = h[i] + d(i, j).v;
  RegularityCertificate c;
  c.F = F;
  c.f.assign(n, 0);
  c.g.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    c.f[F[i]] = h[i];
    c.g[i] = B(i, F[i]).v - h[i];
  }
  c.strongly_regular = true;
  return c;
}

bool is_normal(const Matrix& C) {
  for (std::size_t i = 0; i < C.rows; ++i)
    for (std::size_t j = 0; j < C.cols; ++j) {
      const Scalar& c = C(i, j);
      if (i == j && (c.bottom || c.v != 0)) return false;
      if (i != j && !c.bottom && c.v > 0) return false;
    }
  return true;
}

bool is_strongly_normal(const Matrix& C) {
  if (!is_normal(C)) return false;
  for (std::size_t i = 0; i < C.rows; ++i)
    for (std::size_t j = 0; j < C.cols; ++j)
      if (i != j && !C(i, j).bottom && C(i, j).v >= 0) return false;
  return true;
}

Matrix normal_form(const Matrix& B, const RegularityCertificate& cert) {
  check_assign_matrix(B);
  std::size_t n = B.rows;
  if (!cert.strongly_regular || cert.F.size() != n || cert.f.size() != n)
    throw Error(Errc::CertificateInvalid, "certificate does not describe a strongly regular matrix");
  std::vector<bool> seen(n, false);
  for (auto x : cert.F) {
    if (x >= n || seen[x]) throw Error(Errc::CertificateInvalid, "F is not a permutation");
    seen[x] = true;
  }
  Matrix C(Tag::MaxPlus, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar& diag = B(i, cert.F[i]);
    if (diag.bottom) throw Error(Errc::CertificateInvalid, "F uses an infinite entry");
    Rational base = diag.v - cert.f[cert.F[i]];
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& b = B(i, cert.F[j]);
      if (!b.bottom) C(i, j) = Scalar::of(Tag::MaxPlus, b.v - cert.f[cert.F[j]] - base);
    }
  }
  if (!is_strongly_normal(C))
    throw Error(Errc::CertificateInvalid, "strict dual inequalities fail", json{{"F", perm_json(cert.F)}, {"f", rvec_json(cert.f)}});
  return C;
}

DistancesPotentials distances_potentials(const Matrix& B, const Perm& F) {
  check_assign_matrix(B);
  std::size_t n = B.rows;
  if (F.size() != n) throw Error(Errc::DimensionMismatch, "F has the wrong length");
  for (std::size_t j = 0; j < n; ++j)
    if (F[j] >= n || B(j, F[j]).bottom) throw Error(Errc::InvalidArgument, "F must be a finite bijection");
  Matrix d(Tag::MaxPlus, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!B(i, F[j]).bottom) d(i, j) = Scalar::of(Tag::MaxPlus, B(i, F[j]).v - B(j, F[j]).v);
  Scalar lam = max_cycle_mean(d);
  if (lam.v > 0) throw Error(Errc::ImprovingCycle, "F is not an optimal assignment", json{{"cycle_mean", rational_to_json(lam.v)}});
  DistancesPotentials out;
  out.btilde = kleene_star(d);
  out.phi.assign(n, 0);
  out.phi_tilde.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Rational> r, c;
    for (std::size_t j = 0; j < n; ++j) {
      if (!out.btilde(i, j).bottom) relax(r, out.btilde(i, j).v);
      if (!out.btilde(j, i).bottom) relax(c, out.btilde(j, i).v);
    }
    out.phi[i] = *r;
    out.phi_tilde[i] = *c;
  }
  return out;
}

}  // namespace tropkit

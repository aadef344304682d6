#include "tropkit/twosided.hpp"

#include <optional>
#include <set>
#include <string>

#include "tropkit/projector.hpp"

namespace tropkit {

namespace {

constexpr std::size_t kPivotCap = 6;

Scalar dot(const Vec& a, const Vec& x) {
  Scalar s = Scalar::zero(Tag::MaxPlus);
  for (std::size_t j = 0; j < a.size(); ++j) s = sr_add(s, sr_mul(a[j], x[j]));
  return s;
}

Vec unit(std::size_t n, std::size_t j) {
  Vec e(n, Scalar::zero(Tag::MaxPlus));
  e[j] = Scalar::one(Tag::MaxPlus);
  return e;
}

// nodes that must vanish: they reach a forced-zero node or a positive cycle
std::vector<char> vanishing(const Matrix& Q, const std::vector<char>& forced) {
  std::size_t n = Q.rows;
  std::vector<char> zero(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::optional<Rational>> d(n);
    d[s] = Rational(0);
    bool hit = false, moving = true;
    for (std::size_t round = 0; round <= n && moving && !hit; ++round) {
      moving = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (!d[k]) continue;
        if (forced[k]) hit = true;
        for (std::size_t p = 0; p < n; ++p) {
          if (p == k || Q(p, k).bottom) continue;
          Rational w = *d[k] + Q(p, k).v;
          if (!d[p] || w > *d[p]) {
            d[p] = w;
            moving = true;
          }
        }
      }
    }
    zero[s] = hit || moving;
  }
  return zero;
}

std::vector<Vec> pivot_columns(const InequalitySystem& S, const std::vector<std::size_t>& piv) {
  std::size_t n = S.A.cols;
  Matrix Q(Tag::MaxPlus, n, n);
  std::vector<char> forced(n, 0);
  for (std::size_t i = 0; i < S.A.rows; ++i) {
    std::size_t p = piv[i];
    const Scalar& bp = S.B(i, p);
    for (std::size_t k = 0; k < n; ++k) {
      Scalar ab = sr_add(S.A(i, k), S.B(i, k));
      if (ab.bottom) continue;
      if (bp.bottom) {
        forced[k] = 1;
      } else if (k != p) {
        Scalar c = Scalar::of(Tag::MaxPlus, ab.v - bp.v);
        Q(p, k) = sr_add(Q(p, k), c);
      }
    }
  }
  std::vector<char> zero = vanishing(Q, forced);
  std::vector<std::size_t> alive;
  for (std::size_t k = 0; k < n; ++k)
    if (!zero[k]) alive.push_back(k);
  Matrix W(Tag::MaxPlus, alive.size(), alive.size());
  for (std::size_t r = 0; r < alive.size(); ++r)
    for (std::size_t c = 0; c < alive.size(); ++c)
      if (r != c) W(r, c) = Q(alive[r], alive[c]);
  Matrix St = kleene_star(W);
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < alive.size(); ++c) {
    Vec x(n, Scalar::zero(Tag::MaxPlus));
    for (std::size_t r = 0; r < alive.size(); ++r) x[alive[r]] = St(r, c);
    cols.push_back(x);
  }
  return cols;
}

// elimination through successive rows, used above the pivot cap
std::vector<Vec> eliminate(const InequalitySystem& S) {
  std::size_t n = S.A.cols;
  std::vector<Vec> G;
  for (std::size_t j = 0; j < n; ++j) G.push_back(unit(n, j));
  for (std::size_t i = 0; i < S.A.rows; ++i) {
    Vec a = S.A.row(i), b = S.B.row(i);
    std::vector<Vec> ok, bad, next;
    for (auto& g : G) (sr_leq(dot(a, g), dot(b, g)) ? ok : bad).push_back(g);
    next = ok;
    for (const auto& g : ok)
      for (const auto& h : bad) {
        Vec c = vec_add(vec_scale(dot(a, h), g), vec_scale(dot(b, g), h));
        if (!vec_is_zero(c)) next.push_back(c);
      }
    G.clear();
    Matrix P = prune_generators(from_columns(Tag::MaxPlus, n, next));
    for (std::size_t c = 0; c < P.cols; ++c) G.push_back(P.column(c));
  }
  return G;
}

}  // namespace

InequalitySystem::InequalitySystem(Matrix a, Matrix b) : A(std::move(a)), B(std::move(b)) {
  if (A.tag != Tag::MaxPlus || B.tag != Tag::MaxPlus) throw Error(Errc::TagMismatch, "two-sided systems are max-plus");
  if (A.rows != B.rows || A.cols != B.cols) throw Error(Errc::DimensionMismatch, "A and B must have the same shape");
}

bool check_solution(const InequalitySystem& S, const Vec& x) {
  if (x.size() != S.A.cols) throw Error(Errc::DimensionMismatch, "solution length differs from the number of columns");
  return vec_leq(mat_vec(S.A, x), mat_vec(S.B, x));
}

Matrix prune_generators(const Matrix& G) {
  std::vector<Vec> cols;
  std::set<std::string> keys;
  for (std::size_t c = 0; c < G.cols; ++c) {
    Vec g = G.column(c);
    if (vec_is_zero(g)) continue;
    Rational m;
    bool first = true;
    for (const auto& s : g)
      if (!s.bottom && (first || s.v > m)) {
        m = s.v;
        first = false;
      }
    std::string k;
    for (auto& s : g) {
      if (!s.bottom) s.v -= m;
      k += s.str() + ",";
    }
    if (keys.insert(k).second) cols.push_back(g);
  }
  std::vector<char> keep(cols.size(), 1);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<Vec> others;
    for (std::size_t d = 0; d < cols.size(); ++d)
      if (d != c && keep[d]) others.push_back(cols[d]);
    if (others.empty()) continue;
    Semimodule V(from_columns(Tag::MaxPlus, G.rows, others));
    if (in_semimodule(V, cols[c])) keep[c] = 0;
  }
  std::vector<Vec> out;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (keep[c]) out.push_back(cols[c]);
  return from_columns(Tag::MaxPlus, G.rows, out);
}

GeneratorSet row_generators(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "rows a and b differ in length");
  std::size_t n = a.size();
  std::vector<std::size_t> J, L;
  for (std::size_t j = 0; j < n; ++j) (sr_leq(a[j], b[j]) ? J : L).push_back(j);
  if (J.empty()) throw Error(Errc::Infeasible, "b < a in every coordinate: only the zero vector solves the inequality");
  std::vector<Vec> gens;
  for (std::size_t j : J) {
    gens.push_back(unit(n, j));
    for (std::size_t l : L) {
      if (b[j].bottom) continue;
      Vec g = unit(n, j);
      g[l] = Scalar::of(Tag::MaxPlus, b[j].v - a[l].v);
      gens.push_back(g);
    }
  }
  return GeneratorSet{from_columns(Tag::MaxPlus, n, gens), true};
}

GeneratorSet solve_system(const InequalitySystem& S) {
  std::size_t m = S.A.rows, n = S.A.cols;
  GeneratorSet out;
  std::vector<Vec> cols;
  if (m <= kPivotCap && n <= kPivotCap) {
    std::vector<std::vector<std::size_t>> choices(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t p = 0; p < n; ++p)
        if (sr_leq(S.A(i, p), S.B(i, p))) choices[i].push_back(p);
      if (choices[i].empty()) throw Error(Errc::Infeasible, "row " + std::to_string(i) + " admits only the zero solution");
    }
    std::vector<std::size_t> idx(m, 0), piv(m);
    while (true) {
      for (std::size_t i = 0; i < m; ++i) piv[i] = choices[i][idx[i]];
      for (auto& c : pivot_columns(S, piv))
        if (!vec_is_zero(c) && check_solution(S, c)) cols.push_back(c);
      std::size_t i = 0;
      while (i < m && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == m) break;
    }
  } else {
    out.certified = false;
    cols = eliminate(S);
  }
  out.generators = prune_generators(from_columns(Tag::MaxPlus, n, cols));
  if (out.generators.cols == 0) throw Error(Errc::Infeasible, "the system has only the zero solution");
  return out;
}

}  // namespace tropkit

#include "tropkit/projector.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "tropkit/io.hpp"

namespace tropkit {

namespace {

constexpr std::size_t kCertifiedDim = 12;
constexpr std::size_t kMaxSteps = 20000;

void require_maxplus(const Matrix& M) {
  if (M.tag != Tag::MaxPlus) throw Error(Errc::InvalidArgument, "semimodules are provided over max-plus");
}

void check_dims(const std::vector<Semimodule>& Vs, std::size_t n) {
  for (const auto& V : Vs)
    if (V.dim() != n) throw Error(Errc::DimensionMismatch, "semimodules live in different dimensions");
}

std::optional<Rational> top(const Vec& x) {
  std::optional<Rational> m;
  for (const auto& s : x)
    if (!s.bottom && (!m || s.v > *m)) m = s.v;
  return m;
}

Vec shift(const Vec& x, const Rational& c) {
  Vec r = x;
  for (auto& s : r)
    if (!s.bottom) s.v += c;
  return r;
}

std::string key_of(const Vec& x, const Rational& m) {
  std::string k;
  for (const auto& s : x) {
    if (s.bottom)
      k += "b";
    else
      k += Rational(s.v - m).get_str();
    k += ',';
  }
  return k;
}

Vec meet(const Vec& x, const Vec& y) {
  Vec r = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].bottom || y[i].bottom)
      r[i] = Scalar::zero(Tag::MaxPlus);
    else if (y[i].v < x[i].v)
      r[i] = y[i];
  }
  return r;
}

using Map = std::function<Vec(const Vec&)>;

struct Cycle {
  Rational lambda;
  Vec z;  // a point of the periodic orbit, T^p z = z + p*lambda
  std::size_t period = 0;
};

// nullopt when no repeat shows up; a cycle with period 0 when the orbit dies at zero
std::optional<Cycle> find_cycle(const Map& T, Vec x, std::size_t max_steps) {
  std::map<std::string, std::pair<std::size_t, Rational>> seen;
  std::vector<Vec> hist;
  for (std::size_t s = 0; s <= max_steps; ++s) {
    auto m = top(x);
    if (!m) return Cycle{};
    std::string k = key_of(x, *m);
    auto it = seen.find(k);
    if (it != seen.end()) {
      Cycle c;
      c.period = s - it->second.first;
      c.lambda = (*m - it->second.second) / Rational(static_cast<long>(c.period));
      c.lambda.canonicalize();
      c.z = hist[it->second.first];
      return c;
    }
    seen.emplace(k, std::make_pair(s, *m));
    hist.push_back(x);
    x = T(x);
  }
  return std::nullopt;
}

std::optional<Vec> eigenvector_from_cycle(const Map& T, const Cycle& c) {
  Vec y = c.z, w = c.z;
  for (std::size_t t = 1; t < c.period; ++t) {
    w = T(w);
    y = vec_add(y, shift(w, Rational(-c.lambda * static_cast<long>(t))));
  }
  for (std::size_t it = 0; it < kMaxSteps; ++it) {
    Vec next = shift(T(y), Rational(-c.lambda));
    if (next == y) return y;
    y = next;
  }
  return std::nullopt;
}

std::vector<Vec> orbit_once(const std::vector<Semimodule>& Vs, const Vec& y) {
  std::vector<Vec> out;
  Vec x = y;
  for (const auto& V : Vs) {
    x = project(V, x);
    out.push_back(x);
  }
  return out;
}

}  // namespace

Semimodule::Semimodule(Matrix g) : gens(std::move(g)) {
  require_maxplus(gens);
  for (std::size_t j = 0; j < gens.cols; ++j) {
    bool nz = false;
    for (std::size_t i = 0; i < gens.rows; ++i) nz = nz || !gens(i, j).bottom;
    if (!nz) throw Error(Errc::ZeroColumn, "generator " + std::to_string(j) + " is the zero vector");
  }
}

Vec project(const Semimodule& V, const Vec& x) {
  if (x.size() != V.dim()) throw Error(Errc::DimensionMismatch, "vector length differs from the semimodule dimension");
  if (V.gens.cols == 0) return Vec(x.size(), Scalar::zero(Tag::MaxPlus));
  return mat_vec(V.gens, mat_residual_left(V.gens, x));
}

bool in_semimodule(const Semimodule& V, const Vec& x) { return project(V, x) == x; }

Scalar vec_residual(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error(Errc::DimensionMismatch, "vector length mismatch");
  std::optional<Scalar> best;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j].bottom) continue;
    Scalar q = sr_residual(x[j], y[j]);
    if (!best || sr_leq(q, *best)) best = q;
  }
  if (!best) throw Error(Errc::EmptySupport, "residual by the zero vector");
  return *best;
}

Scalar hilbert_value(const std::vector<Vec>& xs) {
  if (xs.empty()) throw Error(Errc::InvalidArgument, "Hilbert value of an empty family");
  Scalar acc = Scalar::one(Tag::MaxPlus);
  for (std::size_t i = 0; i < xs.size(); ++i) acc = sr_mul(acc, vec_residual(xs[i], xs[(i + 1) % xs.size()]));
  return acc;
}

std::vector<Vec> cyclic_orbit(const std::vector<Semimodule>& Vs, const Vec& x0, std::size_t sweeps) {
  check_dims(Vs, x0.size());
  std::vector<Vec> out;
  Vec x = x0;
  for (std::size_t s = 0; s < sweeps; ++s)
    for (const auto& V : Vs) {
      x = project(V, x);
      out.push_back(x);
    }
  return out;
}

Vec cyclic_apply(const std::vector<Semimodule>& Vs, const Vec& x) {
  Vec y = x;
  for (const auto& V : Vs) y = project(V, y);
  return y;
}

Semimodule restrict_support(const Semimodule& V, std::uint32_t mask) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < V.gens.cols; ++j) {
    bool inside = true;
    for (std::size_t i = 0; i < V.dim(); ++i)
      if (!V.gens(i, j).bottom && !(mask >> i & 1u)) inside = false;
    if (inside) cols.push_back(V.gens.column(j));
  }
  Semimodule R;
  R.gens = from_columns(Tag::MaxPlus, V.dim(), cols);
  return R;
}

HilbertReport cyclic_spectral_radius(const std::vector<Semimodule>& Vs) {
  if (Vs.empty()) throw Error(Errc::InvalidArgument, "no semimodules given");
  std::size_t n = Vs[0].dim();
  check_dims(Vs, n);
  if (n == 0 || n > 32) throw Error(Errc::TooLarge, "ambient dimension must be between 1 and 32");
  HilbertReport rep;
  rep.value = Scalar::zero(Tag::MaxPlus);
  rep.certified = n <= kCertifiedDim;
  std::uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1u);
  std::vector<std::uint32_t> masks;
  if (rep.certified)
    for (std::uint32_t M = 1; M <= full && M != 0; ++M) masks.push_back(M);
  else
    masks.push_back(full);
  for (std::uint32_t M : masks) {
    std::vector<Semimodule> R;
    bool empty = false;
    for (const auto& V : Vs) {
      R.push_back(restrict_support(V, M));
      empty = empty || R.back().gens.cols == 0;
    }
    if (empty) continue;
    Map T = [&R](const Vec& x) { return cyclic_apply(R, x); };
    Vec z(n, Scalar::zero(Tag::MaxPlus));
    for (std::size_t i = 0; i < n; ++i)
      if (M >> i & 1u) z[i] = Scalar::one(Tag::MaxPlus);
    auto c = find_cycle(T, z, kMaxSteps);
    if (!c) {
      rep.certified = false;
      continue;
    }
    if (c->period == 0) continue;
    if (!rep.value.bottom && c->lambda <= rep.value.v) continue;
    auto y = eigenvector_from_cycle(T, *c);
    if (!y) {
      rep.certified = false;
      continue;
    }
    rep.value = Scalar::of(Tag::MaxPlus, c->lambda);
    rep.witnesses = orbit_once(R, *y);
    rep.support = M;
  }
  return rep;
}

bool in_halfspace(const Halfspace& H, const Vec& x) {
  if (vec_is_zero(x)) return true;
  return sr_leq(vec_residual(H.v, x), vec_residual(H.u, x));
}

Separation separate(const std::vector<Semimodule>& Vs) {
  HilbertReport rep = cyclic_spectral_radius(Vs);
  std::size_t n = Vs[0].dim();
  if (!rep.value.bottom && rep.value.v == 0) {
    nlohmann::json detail;
    detail["witness"] = vec_to_json(rep.witnesses.back());
    throw Error(Errc::NotSeparable, "the semimodules share a nonzero point", detail);
  }
  Separation sep;
  sep.radius = rep.value;

  Rational lo, hi;
  bool any = false;
  for (const auto& V : Vs)
    for (const auto& s : V.gens.a)
      if (!s.bottom) {
        if (!any || s.v < lo) lo = s.v;
        if (!any || s.v > hi) hi = s.v;
        any = true;
      }
  Rational K = 2 * (hi - lo) + 2;
  for (int attempt = 0; attempt < 40; ++attempt, K *= 2) {
    auto perturbed = [&Vs, K](std::size_t i, const Vec& v) {
      Vec p = project(Vs[i], v);
      auto m = top(v);
      if (!m) return p;
      Vec floor(v.size(), Scalar::of(Tag::MaxPlus, *m - K));
      return vec_add(p, meet(floor, v));
    };
    Map T = [&](const Vec& x) {
      Vec y = x;
      for (std::size_t i = 0; i < Vs.size(); ++i) y = perturbed(i, y);
      return y;
    };
    auto c = find_cycle(T, Vec(n, Scalar::one(Tag::MaxPlus)), kMaxSteps);
    if (!c || c->period == 0 || c->lambda >= 0) continue;
    Vec y = c->z, w = c->z;
    for (std::size_t t = 1; t < c->period; ++t) {
      w = T(w);
      y = meet(y, shift(w, Rational(-c->lambda * static_cast<long>(t))));
    }
    if (!vec_leq(T(y), shift(y, c->lambda))) continue;
    Vec x = y;
    for (std::size_t i = 0; i < Vs.size(); ++i) {
      Vec nx = perturbed(i, x);
      sep.halfspaces.push_back(Halfspace{nx, x});
      x = nx;
    }
    return sep;
  }
  // fall back on the eigenvector of the cyclic projector restricted to its support
  sep.archimedean = false;
  if (rep.witnesses.empty()) throw Error(Errc::Diverged, "no separating certificate found");
  Vec x = shift(rep.witnesses.back(), Rational(-rep.value.v));
  for (std::size_t i = 0; i < Vs.size(); ++i) {
    sep.halfspaces.push_back(Halfspace{rep.witnesses[i], x});
    x = rep.witnesses[i];
  }
  return sep;
}

}  // namespace tropkit

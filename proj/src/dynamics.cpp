#include "tropkit/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>

#include "tropkit/io.hpp"
#include "tropkit/spectral.hpp"

namespace tropkit {

namespace {

Rational exp_sum(const Exponents& e) {
  Rational s = 0;
  for (const auto& [idx, q] : e) s += q;
  return s;
}

std::string state_key(const RVec& x, const Rational& shift) {
  std::string key;
  for (const auto& v : x) {
    key += Rational(v - shift).get_str();
    key += ',';
  }
  return key;
}

Rational round_half_up(const Rational& q) {
  mpz_class num = q.get_num() * 2 + q.get_den();
  mpz_class den = q.get_den() * 2;
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Rational(r);
}

void check_cars(const std::vector<std::size_t>& cars, std::size_t n, const char* road) {
  std::vector<bool> seen(n + 1, false);
  for (auto c : cars) {
    if (c == n) throw Error(Errc::BadConfig, std::string("car placed on the crossing of ") + road);
    if (c < 1 || c > n) throw Error(Errc::BadConfig, std::string("car position out of range on ") + road);
    if (seen[c]) throw Error(Errc::BadConfig, std::string("overlapping car positions on ") + road);
    seen[c] = true;
  }
}

Rational eval_terms(const T1HEntry& e, const RVec& u, bool& finite) {
  Rational best;
  finite = false;
  for (const auto& t : e) {
    Rational v = t.c;
    for (const auto& [j, q] : t.u_exp) v += q * u[j];
    if (!finite || v < best) best = v;
    finite = true;
  }
  return best;
}

}  // namespace

// ---- exclusion

RingWord::RingWord(std::vector<bool> b) : bits(std::move(b)) {
  if (bits.size() < 2) throw Error(Errc::InvalidArgument, "ring words need length >= 2");
}

RingWord RingWord::parse(const std::string& s) {
  std::vector<bool> b;
  for (char c : s) {
    if (c != '0' && c != '1') throw Error(Errc::Parse, "ring words are made of 0 and 1");
    b.push_back(c == '1');
  }
  return RingWord(std::move(b));
}

std::string RingWord::str() const {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

std::size_t RingWord::cars() const { return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true)); }

std::size_t exclusion_step(RingWord& w) {
  std::size_t m = w.bits.size();
  std::vector<bool> next = w.bits;
  std::size_t moved = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = (i + 1) % m;
    if (w.bits[i] && !w.bits[j]) {
      next[i] = false;
      next[j] = true;
      ++moved;
    }
  }
  w.bits = std::move(next);
  return moved;
}

ExclusionRun exclusion_run(const RingWord& w, std::size_t steps) {
  ExclusionRun r;
  r.trajectory.push_back(w);
  RingWord cur = w;
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t moved = exclusion_step(cur);
    r.trajectory.push_back(cur);
    r.flows.emplace_back(frac(static_cast<long>(moved), static_cast<long>(cur.bits.size())));
  }
  return r;
}

// ---- homogeneous maps

void HomogeneousMap::validate() const {
  if (terms.size() != dim) throw Error(Errc::InvalidArgument, "term table does not match the dimension");
  for (std::size_t i = 0; i < dim; ++i) {
    if (terms[i].empty()) throw Error(Errc::InvalidArgument, "coordinate " + std::to_string(i + 1) + " has no term");
    for (const auto& t : terms[i]) {
      for (const auto& [j, q] : t.old_exp)
        if (j >= dim) throw Error(Errc::InvalidArgument, "exponent index out of range");
      for (const auto& [j, q] : t.fresh_exp)
        if (j >= i) throw Error(Errc::InvalidArgument, "fresh exponents may only use earlier coordinates");
      if (exp_sum(t.old_exp) + exp_sum(t.fresh_exp) != 1)
        throw Error(Errc::InvalidArgument, "term of coordinate " + std::to_string(i + 1) + " is not degree one");
    }
  }
}

RVec HomogeneousMap::apply(const RVec& x) const {
  if (x.size() != dim) throw Error(Errc::DimensionMismatch, "state has the wrong length");
  RVec y(dim);
  Rational v;
  for (std::size_t i = 0; i < dim; ++i) {
    bool first = true;
    for (const auto& t : terms[i]) {
      v = t.c;
      for (const auto& [j, q] : t.old_exp) v += q * x[j];
      for (const auto& [j, q] : t.fresh_exp) v += q * y[j];
      if (first || v < y[i]) y[i] = v;
      first = false;
    }
  }
  return y;
}

HomogeneousMap linear_map(const Matrix& A) {
  if (A.tag != Tag::MinPlus) throw Error(Errc::TagMismatch, "linear maps are built from min-plus matrices");
  if (A.rows != A.cols) throw Error(Errc::DimensionMismatch, "matrix must be square");
  HomogeneousMap f(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (!A(i, j).bottom) f.terms[i].push_back(HomTerm{A(i, j).v, {{j, Rational(1)}}, {}});
  f.validate();
  return f;
}

Matrix road_matrix(const std::vector<bool>& a) {
  std::size_t m = a.size();
  if (m < 2) throw Error(Errc::InvalidArgument, "roads need at least 2 cells");
  Matrix A(Tag::MinPlus, m, m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t prev = (i + m - 1) % m, next = (i + 1) % m;
    A(i, prev) = Scalar::of(Tag::MinPlus, a[prev] ? 1 : 0);
    A(i, next) = sr_add(A(i, next), Scalar::of(Tag::MinPlus, a[i] ? 0 : 1));
  }
  return A;
}

HomogeneousMap road_event_graph(const std::vector<bool>& a) { return linear_map(road_matrix(a)); }

std::vector<bool> spread_cars(std::size_t m, std::size_t n) {
  if (n > m) throw Error(Errc::BadConfig, "more cars than cells");
  std::vector<bool> a(m, false);
  for (std::size_t j = 0; j < n; ++j) a[j * m / n] = true;
  return a;
}

HomRun hom_iterate(const HomogeneousMap& f, const RVec& x0, std::size_t K, bool keep_trajectory, const Rational& spread_bound) {
  f.validate();
  if (x0.size() != f.dim) throw Error(Errc::DimensionMismatch, "initial state has the wrong length");
  if (K < 2) throw Error(Errc::InvalidArgument, "need at least 2 iterations");
  HomRun r;
  RVec x = x0, half;
  if (keep_trajectory) r.trajectory.push_back(x);
  std::unordered_map<std::string, std::pair<std::size_t, Rational>> seen;
  std::size_t mid = K / 2;
  for (std::size_t k = 1; k <= K; ++k) {
    x = f.apply(x);
    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*hi - *lo > spread_bound)
      throw Error(Errc::Diverged, "coordinate spread exceeds the bound", json{{"step", k}, {"spread", rational_to_json(*hi - *lo)}});
    if (keep_trajectory) r.trajectory.push_back(x);
    if (k == mid) half = x;
    if (k >= mid && !r.periodic) {
      auto key = state_key(x, x[0]);
      auto it = seen.find(key);
      if (it != seen.end())
        r.periodic = Rational(x[0] - it->second.second) / static_cast<long>(k - it->second.first);
      else
        seen.emplace(std::move(key), std::make_pair(k, x[0]));
    }
  }
  Rational total = 0;
  for (std::size_t i = 0; i < f.dim; ++i) total += x[i] - half[i];
  r.throughput = total / Rational(static_cast<long>(f.dim * (K - mid)));
  r.last = x;
  return r;
}

RVec ReducedMap::lift(const RVec& y) const {
  if (y.size() + 1 != f.dim) throw Error(Errc::DimensionMismatch, "reduced state has the wrong length");
  RVec x(f.dim);
  for (std::size_t i = 0, k = 0; i < f.dim; ++i) x[i] = i == pivot ? Rational(0) : y[k++];
  return x;
}

RVec ReducedMap::g(const RVec& y) const {
  RVec fx = f.apply(lift(y));
  RVec out;
  for (std::size_t i = 0; i < f.dim; ++i)
    if (i != pivot) out.emplace_back(fx[i] - fx[pivot]);
  return out;
}

Rational ReducedMap::eigenvalue(const RVec& y) const { return f.apply(lift(y))[pivot]; }

ReducedMap eigen_reduce(const HomogeneousMap& f, std::size_t pivot) {
  f.validate();
  if (pivot >= f.dim) throw Error(Errc::InvalidArgument, "pivot out of range");
  return ReducedMap{f, pivot};
}

HomogeneousMap tent_system() {
  HomogeneousMap f(2);
  f.terms[0].push_back(HomTerm{0, {{0, 2}, {1, -1}}, {}});
  f.terms[0].push_back(HomTerm{2, {{1, 3}, {0, -2}}, {}});
  f.terms[1].push_back(HomTerm{0, {{1, 1}}, {}});
  f.validate();
  return f;
}

Rational tent(const Rational& y) {
  Rational a = 2 * y, b = 2 - 2 * y;
  return a < b ? a : b;
}

std::vector<Rational> tent_trajectory(const Rational& y0, std::size_t K) {
  if (y0 < 0 || y0 > 1) throw Error(Errc::InvalidArgument, "tent orbits start in [0,1]");
  std::vector<Rational> orbit;
  orbit.reserve(K + 1);
  orbit.push_back(y0);
  for (std::size_t k = 0; k < K; ++k) orbit.push_back(tent(orbit.back()));
  return orbit;
}

std::vector<std::size_t> histogram(const std::vector<Rational>& values, std::size_t bins, std::vector<std::size_t> into) {
  if (bins == 0) throw Error(Errc::InvalidArgument, "need at least one bin");
  if (into.empty()) into.assign(bins, 0);
  if (into.size() != bins) throw Error(Errc::DimensionMismatch, "histogram has the wrong number of bins");
  mpz_class b;
  for (const auto& y : values) {
    if (y < 0 || y > 1) throw Error(Errc::InvalidArgument, "histogram values must lie in [0,1]");
    Rational s = y * static_cast<long>(bins);
    mpz_fdiv_q(b.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    std::size_t idx = std::min<std::size_t>(b.get_ui(), bins - 1);
    ++into[idx];
  }
  return into;
}

// ---- crossing

const char* policy_name(Policy p) { return p == Policy::Priority ? "priority" : "fifty_fifty"; }

Policy policy_from_name(const std::string& s) {
  if (s == "priority") return Policy::Priority;
  if (s == "fifty_fifty" || s == "fifty-fifty") return Policy::FiftyFifty;
  throw Error(Errc::BadConfig, "unknown policy '" + s + "'");
}

HomogeneousMap build_crossing(const CrossingConfig& cfg) {
  std::size_t n = cfg.n;
  if (n < 2) throw Error(Errc::BadConfig, "roads need at least 2 cells");
  check_cars(cfg.cars1, n, "road 1");
  check_cars(cfg.cars2, n, "road 2");
  std::vector<int> a(2 * n, 0);
  for (auto c : cfg.cars1) a[c - 1] = 1;
  for (auto c : cfg.cars2) a[n + c - 1] = 1;
  const std::size_t X1 = 0, Xn = n - 1, Xn1 = n, X2n = 2 * n - 1;
  const Rational half(1, 2);
  HomogeneousMap f(2 * n);
  for (std::size_t base : {std::size_t{0}, n}) {
    for (std::size_t c = 1; c <= n; ++c) {
      std::size_t i = base + c - 1;
      auto& T = f.terms[i];
      if (c == 1) {
        T.push_back(HomTerm{0, {{Xn, half}, {X2n, half}}, {}});
        if (n > 1) T.push_back(HomTerm{1 - a[i], {{i + 1, 1}}, {}});
      } else if (c < n) {
        T.push_back(HomTerm{a[i - 1], {{i - 1, 1}}, {}});
        T.push_back(HomTerm{1 - a[i], {{i + 1, 1}}, {}});
      } else {
        T.push_back(HomTerm{a[i - 1], {{i - 1, 1}}, {}});
        if (cfg.policy == Policy::FiftyFifty) {
          T.push_back(HomTerm{half, {{X1, half}, {Xn1, half}}, {}});
        } else if (base == 0) {
          T.push_back(HomTerm{1, {{X1, 1}, {Xn1, 1}, {X2n, -1}}, {}});
        } else {
          T.push_back(HomTerm{1, {{X1, 1}, {Xn1, 1}}, {{Xn, -1}}});
        }
      }
    }
  }
  f.validate();
  return f;
}

CrossingConfig crossing_for_density(std::size_t n, const Rational& rho, Policy p) {
  if (n < 2) throw Error(Errc::BadConfig, "roads need at least 2 cells");
  if (rho < 0 || rho > 1) throw Error(Errc::BadConfig, "density must lie in [0,1]");
  std::size_t places = 2 * n - 1;
  std::size_t c = round_half_up(rho * static_cast<long>(places)).get_num().get_ui();
  std::size_t c1 = c / 2, c2 = c - c1;
  if (c1 > n - 1 || c2 > n - 1) throw Error(Errc::BadConfig, "density not realizable without a car on the crossing");
  CrossingConfig cfg;
  cfg.n = n;
  cfg.policy = p;
  for (std::size_t j = 0; j < c1; ++j) cfg.cars1.push_back(1 + j * (n - 1) / c1);
  for (std::size_t j = 0; j < c2; ++j) cfg.cars2.push_back(1 + j * (n - 1) / c2);
  return cfg;
}

DiagramConfig diagram_config_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(Errc::Parse, "diagram config needs 'kind'");
  DiagramConfig c;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "ring") {
    c.kind = DiagramConfig::Kind::Ring;
    if (!j.contains("m")) throw Error(Errc::Parse, "ring config needs 'm'");
    c.size = j.at("m").get<std::size_t>();
  } else if (kind == "crossing") {
    c.kind = DiagramConfig::Kind::Crossing;
    if (!j.contains("n")) throw Error(Errc::Parse, "crossing config needs 'n'");
    c.size = j.at("n").get<std::size_t>();
    c.policy = policy_from_name(j.value("policy", std::string("priority")));
  } else {
    throw Error(Errc::Parse, "unknown diagram kind '" + kind + "'");
  }
  if (c.size < 2) throw Error(Errc::BadConfig, "network too small");
  return c;
}

std::vector<DiagramPoint> fundamental_diagram(const DiagramConfig& cfg, const std::vector<Rational>& densities,
                                              std::size_t steps, std::size_t threads) {
  std::vector<DiagramPoint> out(densities.size());
  std::vector<std::exception_ptr> errs(densities.size());
  auto one = [&](std::size_t idx) {
    const Rational& rho = densities[idx];
    DiagramPoint p{rho, 0, 0};
    if (cfg.kind == DiagramConfig::Kind::Ring) {
      if (rho < 0 || rho > 1) throw Error(Errc::BadConfig, "density must lie in [0,1]");
      std::size_t m = cfg.size;
      std::size_t cars = round_half_up(rho * static_cast<long>(m)).get_num().get_ui();
      p.realized = frac(static_cast<long>(cars), static_cast<long>(m));
      auto f = road_event_graph(spread_cars(m, cars));
      p.q = hom_iterate(f, RVec(m, Rational(0)), steps).rate();
    } else {
      CrossingConfig cc = crossing_for_density(cfg.size, rho, cfg.policy);
      p.realized = frac(static_cast<long>(cc.cars1.size() + cc.cars2.size()), static_cast<long>(2 * cfg.size - 1));
      auto f = build_crossing(cc);
      p.q = hom_iterate(f, RVec(f.dim, Rational(0)), steps).rate();
    }
    out[idx] = p;
  };
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < densities.size();) {
      try {
        one(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, densities.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---- T1H

void T1HSystem::validate() const {
  if (C.tag != Tag::MinPlus || C.rows != C.cols) throw Error(Errc::InvalidArgument, "C must be a square min-plus matrix");
  std::size_t nu = C.rows;
  if (A.size() != nx * nx) throw Error(Errc::DimensionMismatch, "A must be nx x nx");
  if (!B.empty() && B.size() != nx * nu) throw Error(Errc::DimensionMismatch, "B must be nx x nu");
  if (u0.size() != nu || x0.size() != nx) throw Error(Errc::DimensionMismatch, "initial states have the wrong length");
  for (const auto* table : {&A, &B})
    for (const auto& e : *table)
      for (const auto& t : e) {
        for (const auto& [j, q] : t.u_exp)
          if (j >= nu) throw Error(Errc::InvalidArgument, "control index out of range");
        if (exp_sum(t.u_exp) != 0) throw Error(Errc::InvalidArgument, "matrix entries must be 0-homogeneous in u");
      }
}

Matrix T1HSystem::A_of(const RVec& u) const {
  Matrix M(Tag::MinPlus, nx, nx);
  for (std::size_t k = 0; k < A.size(); ++k) {
    bool fin;
    Rational v = eval_terms(A[k], u, fin);
    if (fin) M.a[k] = Scalar::of(Tag::MinPlus, v);
  }
  return M;
}

Matrix T1HSystem::B_of(const RVec& u) const {
  Matrix M(Tag::MinPlus, nx, C.rows);
  for (std::size_t k = 0; k < B.size(); ++k) {
    bool fin;
    Rational v = eval_terms(B[k], u, fin);
    if (fin) M.a[k] = Scalar::of(Tag::MinPlus, v);
  }
  return M;
}

T1HRun t1h_simulate(const T1HSystem& S, std::size_t K) {
  S.validate();
  if (K < 2) throw Error(Errc::InvalidArgument, "need at least 2 iterations");
  std::size_t nu = S.C.rows, nx = S.nx;
  T1HRun r;
  r.u.push_back(S.u0);
  r.x.push_back(S.x0);
  std::unordered_map<std::string, std::size_t> seen;
  seen.emplace(state_key(S.u0, S.u0.empty() ? Rational(0) : S.u0[0]), 0);
  auto minplus_row = [](const Matrix& M, std::size_t i, const RVec& v, bool& fin, Rational& best) {
    for (std::size_t j = 0; j < M.cols; ++j) {
      const Scalar& s = M(i, j);
      if (s.bottom) continue;
      Rational w = s.v + v[j];
      if (!fin || w < best) best = w;
      fin = true;
    }
  };
  for (std::size_t k = 0; k < K; ++k) {
    const RVec& u = r.u.back();
    const RVec& x = r.x.back();
    Matrix Ak = S.A_of(u), Bk = S.B_of(u);
    RVec un(nu), xn(nx);
    for (std::size_t i = 0; i < nu; ++i) {
      bool fin = false;
      minplus_row(S.C, i, u, fin, un[i]);
      if (!fin) throw Error(Errc::InvalidArgument, "row " + std::to_string(i + 1) + " of C is empty");
    }
    for (std::size_t i = 0; i < nx; ++i) {
      bool fin = false;
      minplus_row(Ak, i, x, fin, xn[i]);
      if (!S.B.empty()) minplus_row(Bk, i, u, fin, xn[i]);
      if (!fin) throw Error(Errc::Diverged, "x coordinate " + std::to_string(i + 1) + " becomes infinite");
    }
    r.u.push_back(std::move(un));
    r.x.push_back(std::move(xn));
    if (r.u_period == 0 && nu > 0) {
      const RVec& uu = r.u.back();
      auto key = state_key(uu, uu[0]);
      auto it = seen.find(key);
      if (it != seen.end()) {
        r.u_transient = it->second;
        r.u_period = k + 1 - it->second;
      } else {
        seen.emplace(std::move(key), k + 1);
      }
    }
  }
  std::size_t mid = K / 2;
  r.rates.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) r.rates[i] = (r.x[K][i] - r.x[mid][i]) / Rational(static_cast<long>(K - mid));

  // per-period increments; look for a repetition that persists through the second half
  if (r.u_period > 0) {
    std::size_t p = r.u_period, s = r.u_transient;
    std::vector<RVec> D;
    for (std::size_t t = s; t + p <= K; t += p) {
      RVec d(nx);
      for (std::size_t i = 0; i < nx; ++i) d[i] = r.x[t + p][i] - r.x[t][i];
      D.push_back(std::move(d));
    }
    std::size_t J = D.size(), j1 = J / 2;
    for (std::size_t q = 1; j1 + 2 * q <= J && !r.exact_rates; ++q) {
      bool ok = true;
      for (std::size_t t = j1; t + q < J && ok; ++t) ok = D[t + q] == D[t];
      if (!ok) continue;
      RVec rate(nx, Rational(0));
      for (std::size_t t = j1; t < j1 + q; ++t)
        for (std::size_t i = 0; i < nx; ++i) rate[i] += D[t][i];
      for (auto& v : rate) v /= Rational(static_cast<long>(q * p));
      r.exact_rates = std::move(rate);
    }
  }
  return r;
}

Rational TrafficLight::a0(const RVec& u) const { return 1 + u[u1] - u[u2]; }
Rational TrafficLight::b0(const RVec& u) const { return u[u3] - u[u4]; }

TrafficLight build_traffic_light(const TrafficLightConfig& cfg) {
  if (cfg.m1 < 2 || cfg.m2 < 2) throw Error(Errc::BadConfig, "roads need at least 2 cells");
  if (cfg.green1 < 1 || cfg.green3 < 1) throw Error(Errc::BadConfig, "green durations must be at least 1");
  check_cars(cfg.cars1, cfg.m1, "road 1");
  check_cars(cfg.cars2, cfg.m2, "road 2");
  TrafficLight tl;
  tl.u1 = 0;
  tl.u2 = 1;
  tl.u3 = 2;
  tl.u4 = 3;
  std::size_t nu = 4 + (cfg.green1 - 1) + (cfg.green3 - 1);
  tl.period = cfg.green1 + cfg.green3 + 2;
  tl.m1 = cfg.m1;
  tl.m2 = cfg.m2;
  Matrix C(Tag::MinPlus, nu, nu);
  std::size_t extra = 4;
  // chain from -> ... -> to of the given length; the first arc carries w tokens
  auto chain = [&](std::size_t from, std::size_t to, std::size_t len, long w) {
    std::size_t cur = from;
    for (std::size_t s = 1; s < len; ++s) {
      C(extra, cur) = Scalar::of(Tag::MinPlus, cur == from ? w : 0);
      cur = extra++;
    }
    C(to, cur) = Scalar::of(Tag::MinPlus, cur == from ? w : 0);
  };
  chain(tl.u1, tl.u2, cfg.green1, 1);
  chain(tl.u2, tl.u3, 1, 0);
  chain(tl.u3, tl.u4, cfg.green3, 0);
  chain(tl.u4, tl.u1, 1, 0);

  std::size_t nx = cfg.m1 + cfg.m2;
  T1HSystem& S = tl.sys;
  S.C = C;
  S.nx = nx;
  S.A.assign(nx * nx, {});
  auto ring = [&](std::size_t base, std::size_t m, const std::vector<std::size_t>& cars, T1HTerm gate) {
    std::vector<int> a(m, 0);
    for (auto c : cars) a[c - 1] = 1;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t prev = (i + m - 1) % m, next = (i + 1) % m;
      S.A[(base + i) * nx + base + prev].push_back(T1HTerm{a[prev], {}});
      S.A[(base + i) * nx + base + next].push_back(T1HTerm{1 - a[i], {}});
    }
    S.A[(base + m - 1) * nx + base + m - 1].push_back(std::move(gate));
  };
  ring(0, cfg.m1, cfg.cars1, T1HTerm{1, {{tl.u1, 1}, {tl.u2, -1}}});
  ring(cfg.m1, cfg.m2, cfg.cars2, T1HTerm{0, {{tl.u3, 1}, {tl.u4, -1}}});
  S.u0.assign(nu, Rational(0));
  S.x0.assign(nx, Rational(0));
  S.validate();
  return tl;
}

Rational traffic_light_predicted_flow(const TrafficLight& tl, bool horizontal) {
  const T1HSystem& S = tl.sys;
  // control layer alone settles the schedule of matrices
  std::size_t K = 4 * (S.C.rows + tl.period) + 8;
  std::vector<RVec> us{S.u0};
  std::map<std::string, std::size_t> seen{{state_key(S.u0, S.u0[0]), 0}};
  std::size_t s = 0, p = 0;
  for (std::size_t k = 1; k <= K && p == 0; ++k) {
    Vec v(S.u0.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Scalar::of(Tag::MinPlus, us.back()[i]);
    Vec w = mat_vec(S.C, v);
    RVec u(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) u[i] = w[i].v;
    auto key = state_key(u, u[0]);
    if (auto it = seen.find(key); it != seen.end()) {
      s = it->second;
      p = k - s;
    } else {
      seen.emplace(key, k);
    }
    us.push_back(std::move(u));
  }
  if (p == 0) throw Error(Errc::Diverged, "control layer did not become periodic");
  std::size_t lo = horizontal ? 0 : tl.m1, len = horizontal ? tl.m1 : tl.m2;
  Matrix P = identity(Tag::MinPlus, len);
  for (std::size_t k = s; k < s + p; ++k) {
    Matrix A = S.A_of(us[k]);
    Matrix blk(Tag::MinPlus, len, len);
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j) blk(i, j) = A(lo + i, lo + j);
    P = mat_mul(blk, P);
  }
  return max_cycle_mean(P).v / Rational(static_cast<long>(p));
}

}  // namespace tropkit

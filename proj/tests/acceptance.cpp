#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "helpers.hpp"
#include "tropkit/assign.hpp"
#include "tropkit/determ.hpp"
#include "tropkit/dynamics.hpp"
#include "tropkit/io.hpp"
#include "tropkit/plucker.hpp"
#include "tropkit/projector.hpp"
#include "tropkit/spectral.hpp"
#include "tropkit/twosided.hpp"

using namespace tropkit;
using namespace th;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

Rational qmin(const Rational& a, const Rational& b) { return a < b ? a : b; }

std::string str(const Rational& q) { return rational_str(q); }

// ---------------------------------------------------------------- 1
Outcome bideterminants() {
  Outcome o;
  Bideterminant b = bideterminant(mk(Tag::MaxTimes, {{1, 2}, {3, 4}}));
  if (!(b.plus == Scalar::of(Tag::MaxTimes, 4) && b.minus == Scalar::of(Tag::MaxTimes, 6)))
    o.fail("max-times example gave (" + b.plus.str() + "," + b.minus.str() + ")");
  for (Tag t : {Tag::MaxPlus, Tag::MaxTimes, Tag::Boolean}) {
    Matrix A(t, 3, 3);
    long pat[3][3] = {{0, 0, 1}, {1, 1, 0}, {0, 0, 1}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) A(i, j) = pat[i][j] ? Scalar::one(t) : Scalar::zero(t);
    b = bideterminant(A);
    if (!(b.plus == Scalar::zero(t) && b.minus == Scalar::zero(t))) o.fail(std::string("3x3 example over ") + tag_name(t));
  }
  o.note = o.ok ? "(4,6) and (0,0) exact" : o.note;
  return o;
}

// ---------------------------------------------------------------- 2
Outcome circular_road() {
  Outcome o;
  std::mt19937_64 g(2024);
  std::size_t checked = 0;
  for (std::size_t m = 2; m <= 20; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      Rational rho = frac(static_cast<long>(n), static_cast<long>(m));
      Rational law = qmin(qmin(rho, 1 - rho), frac(1, 2));
      std::vector<std::vector<bool>> words{spread_cars(m, n)};
      for (int r = 0; r < 3; ++r) {
        std::vector<bool> w(m, false);
        for (std::size_t i = 0; i < n; ++i) w[i] = true;
        std::shuffle(w.begin(), w.end(), g);
        words.push_back(w);
      }
      for (const auto& w : words) {
        Scalar lam = max_cycle_mean(road_matrix(w));
        if (!(lam == Scalar::of(Tag::MinPlus, law)))
          o.fail("eigenvalue m=" + std::to_string(m) + " n=" + std::to_string(n) + " is " + lam.str());
        ExclusionRun ex = exclusion_run(RingWord(w), 8 * m);
        for (std::size_t t = 4 * m; t < ex.flows.size(); ++t)
          if (ex.flows[t] != qmin(rho, 1 - rho)) {
            o.fail("exclusion flow m=" + std::to_string(m) + " n=" + std::to_string(n) + " is " + str(ex.flows[t]));
            break;
          }
        ++checked;
      }
    }
  if (o.ok) o.note = std::to_string(checked) + " words, m = 2..20, all n";
  return o;
}

// ---------------------------------------------------------------- 3
Outcome exclusion_step_example() {
  Outcome o;
  RingWord w = RingWord::parse("1101001001");
  exclusion_step(w);
  if (w.str() != "1010100101") o.fail("got " + w.str());
  if (o.ok) o.note = "1101001001 -> 1010100101";
  return o;
}

// ---------------------------------------------------------------- 4
Outcome tent_histogram() {
  Outcome o;
  if (tent(0) != 0 || tent(frac(2, 3)) != frac(2, 3)) o.fail("fixed points moved");
  std::mt19937_64 g(12345);
  std::uniform_int_distribution<long> d(1, 100000);
  std::vector<std::size_t> h(100, 0);
  for (int s = 0; s < 200; ++s) {
    Rational y0 = frac(d(g) - 1, 100000);
    auto t = tent_trajectory(y0, 10000);
    t.erase(t.begin());
    h = histogram(t, 100, h);
  }
  double expect = 200.0 * 10000 / 100, worst = 0;
  for (auto c : h) worst = std::max(worst, std::abs(static_cast<double>(c) - expect) / expect);
  if (worst >= 0.10) o.fail("max relative bin deviation " + std::to_string(worst));
  if (o.ok) o.note = "max relative bin deviation " + std::to_string(worst);
  return o;
}

// ---------------------------------------------------------------- 5
Outcome spectral_oracle() {
  Outcome o;
  std::mt19937_64 g(5);
  std::size_t vectors = 0;
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = 4 + k % 5;
    Matrix A = random_matrix(g, n, n, -9, 9, 0.45, Tag::MaxPlus, 1 + k % 4);
    auto brute = brute_max_cycle_mean(A);
    if (!brute) {
      try {
        max_cycle_mean(A);
        o.fail("acyclic matrix accepted");
      } catch (const Error& e) {
        if (e.code() != Errc::NoCycle) o.fail("acyclic matrix gave " + std::string(errc_name(e.code())));
      }
      continue;
    }
    Scalar lam = max_cycle_mean(A);
    if (lam.bottom || lam.v != *brute) {
      o.fail("instance " + std::to_string(k) + ": Karp " + lam.str() + " vs brute " + str(*brute));
      continue;
    }
    for (const auto& v : eigenvectors(A)) {
      ++vectors;
      if (!(mat_vec(A, v) == vec_scale(lam, v))) o.fail("eigenvector equation fails on instance " + std::to_string(k));
    }
  }
  if (o.ok) o.note = "1000 matrices, " + std::to_string(vectors) + " eigenvectors exact";
  return o;
}

// ---------------------------------------------------------------- 6
// grid of module elements: generator combinations with one coefficient pinned to 0
std::vector<Vec> module_grid(const Semimodule& V) {
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < V.gens.cols; ++j) gens.push_back(V.gens.column(j));
  std::vector<Vec> out;
  std::set<std::string> seen;
  auto add = [&](Vec x) {
    if (vec_is_zero(x)) return;
    Rational top;
    bool first = true;
    for (const auto& s : x)
      if (!s.bottom && (first || s.v > top)) {
        top = s.v;
        first = false;
      }
    std::string key;
    for (auto& s : x) {
      if (!s.bottom) s.v -= top;
      key += s.str() + ",";
    }
    if (seen.insert(key).second) out.push_back(x);
  };
  if (gens.size() == 1) {
    add(gens[0]);
    return out;
  }
  add(gens[0]);
  add(gens[1]);
  for (long c = -40; c <= 40; ++c) add(vec_add(gens[0], vec_scale(mp(c, 2), gens[1])));
  return out;
}

Scalar grid_radius(const std::vector<Semimodule>& Vs) {
  std::size_t k = Vs.size();
  std::vector<std::vector<Vec>> grids;
  for (const auto& V : Vs) grids.push_back(module_grid(V));
  // R_i[x][y] = x / y for x in grid i, y in grid i+1
  std::vector<Matrix> R;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& X = grids[i];
    const auto& Y = grids[(i + 1) % k];
    Matrix M(Tag::MaxPlus, X.size(), Y.size());
    for (std::size_t a = 0; a < X.size(); ++a)
      for (std::size_t b = 0; b < Y.size(); ++b) M(a, b) = vec_residual(X[a], Y[b]);
    R.push_back(M);
  }
  Matrix P = R[0];
  for (std::size_t i = 1; i < k; ++i) P = mat_mul(P, R[i]);
  Scalar best = Scalar::zero(Tag::MaxPlus);
  for (std::size_t a = 0; a < P.rows; ++a) best = sr_add(best, P(a, a));
  return best;
}

Semimodule random_module(std::mt19937_64& g, std::size_t n, std::size_t gens) {
  for (;;) {
    Matrix G = random_matrix(g, n, gens, -3, 3, 0.3);
    bool ok = true;
    for (std::size_t j = 0; j < gens; ++j) ok = ok && !vec_is_zero(G.column(j));
    if (ok) return Semimodule(G);
  }
}

void for_each_grid(std::size_t n, const std::function<void(const Vec&)>& f) {
  std::vector<long> v(n, -4);
  for (;;) {
    Vec x;
    for (long t : v) x.push_back(t < -3 ? mp(BOT) : mp(t));
    f(x);
    std::size_t i = 0;
    while (i < n && ++v[i] > 3) v[i++] = -4;
    if (i == n) return;
  }
}

Outcome projector_radius() {
  Outcome o;
  std::mt19937_64 g(6);
  std::size_t separated = 0, shared = 0, nonarch = 0, finite = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + t % 3, k = 2 + (t / 3) % 2;
    std::vector<Semimodule> Vs;
    for (std::size_t i = 0; i < k; ++i) Vs.push_back(random_module(g, n, 1 + (t + i) % 2));
    HilbertReport rep = cyclic_spectral_radius(Vs);
    Scalar oracle = grid_radius(Vs);
    if (!(rep.value == oracle)) {
      o.fail("instance " + std::to_string(t) + ": radius " + rep.value.str() + " vs brute force " + oracle.str());
      continue;
    }
    if (!rep.certified) o.fail("instance " + std::to_string(t) + " not certified");
    finite += !rep.value.bottom;
    if (!rep.value.bottom && rep.value.v == 0) {
      ++shared;
      try {
        separate(Vs);
        o.fail("instance " + std::to_string(t) + ": radius 0 but separated");
      } catch (const Error& e) {
        if (e.code() != Errc::NotSeparable) {
          o.fail("instance " + std::to_string(t) + ": " + e.what());
          continue;
        }
        Vec w = vec_from_json(e.detail().at("witness"), Tag::MaxPlus);
        bool good = !vec_is_zero(w);
        for (const auto& V : Vs) good = good && in_semimodule(V, w);
        if (!good) o.fail("instance " + std::to_string(t) + ": witness not common");
      }
      continue;
    }
    Separation sep = separate(Vs);
    ++separated;
    nonarch += !sep.archimedean;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < Vs[i].gens.cols; ++j)
        if (!in_halfspace(sep.halfspaces[i], Vs[i].gens.column(j)))
          o.fail("instance " + std::to_string(t) + ": generator outside its halfspace");
    for_each_grid(n, [&](const Vec& x) {
      if (vec_is_zero(x)) return;
      bool all = true;
      for (const auto& h : sep.halfspaces) all = all && in_halfspace(h, x);
      if (all) o.fail("instance " + std::to_string(t) + ": halfspaces share a nonzero grid point");
    });
  }
  if (o.ok)
    o.note = std::to_string(finite) + " finite radii; " + std::to_string(separated) + " separated (" + std::to_string(nonarch) + " non-archimedean), " +
             std::to_string(shared) + " NotSeparable";
  return o;
}

// ---------------------------------------------------------------- 7
Outcome twosided_rows() {
  Outcome o;
  std::mt19937_64 g(7);
  std::size_t infeasible = 0;
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 1 + t % 4;
    Vec a = random_matrix(g, 1, n, -3, 3, 0.2).a, b = random_matrix(g, 1, n, -3, 3, 0.2).a;
    Matrix A(Tag::MaxPlus, 1, n), B(Tag::MaxPlus, 1, n);
    A.a = a;
    B.a = b;
    InequalitySystem S(A, B);
    std::vector<long> v(n, -3);
    auto grid = [&](const std::function<void(const Vec&)>& f) {
      std::fill(v.begin(), v.end(), -3);
      for (;;) {
        Vec x;
        for (long q : v) x.push_back(mp(q));
        f(x);
        std::size_t i = 0;
        while (i < n && ++v[i] > 3) v[i++] = -3;
        if (i == n) return;
      }
    };
    GeneratorSet G;
    try {
      G = row_generators(a, b);
    } catch (const Error& e) {
      if (e.code() != Errc::Infeasible) o.fail(e.what());
      ++infeasible;
      grid([&](const Vec& x) {
        if (check_solution(S, x)) o.fail("row " + std::to_string(t) + ": Infeasible but a grid point solves it");
      });
      continue;
    }
    for (std::size_t c = 0; c < G.generators.cols; ++c)
      if (!check_solution(S, G.generators.column(c))) o.fail("row " + std::to_string(t) + ": unsound generator");
    Semimodule V(G.generators);
    grid([&](const Vec& x) {
      if (check_solution(S, x) && !in_semimodule(V, x)) o.fail("row " + std::to_string(t) + ": grid solution not generated");
    });
  }
  if (o.ok) o.note = "500 rows, " + std::to_string(infeasible) + " infeasible";
  return o;
}

// ---------------------------------------------------------------- 8
Outcome assignment() {
  Outcome o;
  std::mt19937_64 g(8);
  std::size_t regular = 0;
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 1 + t % 7;
    Matrix B(Tag::MaxPlus, n, n);
    for (;;) {
      B = random_matrix(g, n, n, -5, 5, t % 2 ? 0.25 : 0.0);
      try {
        check_assign_matrix(B);
        break;
      } catch (const Error&) {
      }
    }
    std::optional<Rational> best;
    int count = 0;
    for_each_perm(n, [&](const std::vector<std::size_t>& p) {
      Rational w = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (B(i, p[i]).bottom) return;
        w += B(i, p[i]).v;
      }
      if (!best || w > *best) {
        best = w;
        count = 1;
      } else if (w == *best) {
        ++count;
      }
    });
    try {
      RegularityCertificate c = strong_regularity(B);
      ++regular;
      if (count != 1) o.fail("instance " + std::to_string(t) + ": regular but optimum not unique");
      if (!is_strongly_normal(normal_form(B, c))) o.fail("instance " + std::to_string(t) + ": normal form not strongly normal");
    } catch (const Error& e) {
      if (e.code() != Errc::NotStronglyRegular || count == 1)
        o.fail("instance " + std::to_string(t) + ": " + errc_name(e.code()) + " with " + std::to_string(count) + " optima");
    }
    // a normal matrix: zero diagonal, nonpositive elsewhere
    Matrix N = random_matrix(g, n, n, -5, 0, 0.2);
    for (std::size_t i = 0; i < n; ++i) N(i, i) = mp(0);
    Perm id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    DistancesPotentials dp = distances_potentials(N, id);
    for (const auto& s : dp.btilde.a)
      if (!sr_leq(s, mp(0))) o.fail("instance " + std::to_string(t) + ": positive distance on a normal matrix");
    for (std::size_t i = 0; i < n; ++i)
      if (dp.phi[i] != 0 || dp.phi_tilde[i] != 0) o.fail("instance " + std::to_string(t) + ": nonzero potential");
  }
  if (o.ok) o.note = "500 matrices, " + std::to_string(regular) + " strongly regular";
  return o;
}

// ---------------------------------------------------------------- 9
Outcome plucker() {
  Outcome o;
  std::mt19937_64 g(9);
  std::uniform_int_distribution<long> d(-4, 4);
  std::size_t tp = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + t % 3;
    GridFlowNet net(n);
    for (auto& w : net.up) w = frac(d(g), 1 + t % 2);
    for (auto& w : net.right) w = frac(d(g), 1 + t % 2);
    SubsetFunction f = flow_tp(net);
    if (!is_dmtp(f).ok) o.fail("trial " + std::to_string(t) + ": flow function not DMTP");
    if (!(reconstruct_from_intervals(restrict_to_intervals(f)) == f)) o.fail("trial " + std::to_string(t) + ": round trip differs");
    if (is_tp(f).ok) {
      ++tp;
      if (is_submodular(f, false) != is_submodular(f, true)) o.fail("trial " + std::to_string(t) + ": submodularity disagrees");
    }
  }
  if (tp == 0) o.fail("no TP instance generated");
  if (o.ok) o.note = "100 flow functions, " + std::to_string(tp) + " TP";
  return o;
}

// ---------------------------------------------------------------- 10
Outcome intervals() {
  Outcome o;
  std::mt19937_64 g(10);
  std::uniform_int_distribution<long> step(0, 6);
  int made = 0;
  while (made < 500) {
    std::size_t n = 2 + made % 2;
    Matrix hi = random_matrix(g, n, n, -6, 2, 0.2, Tag::MaxPlus, 2);
    auto mcm = brute_max_cycle_mean(hi);
    if (mcm && *mcm > 0) continue;
    Matrix lo = hi;
    for (auto& s : lo.a)
      if (!s.bottom) {
        long r = step(g);
        if (r == 6)
          s = Scalar::zero(Tag::MaxPlus);
        else
          s.v -= frac(r, 2);
      }
    ++made;
    IntervalMatrix I(lo, hi);
    IntervalMatrix S = iv_kleene_star(I);
    if (!(S.lo() == kleene_star(lo) && S.hi() == kleene_star(hi))) o.fail("instance " + std::to_string(made) + ": endpoint mismatch");
    std::uniform_int_distribution<long> u(0, 12);
    for (int s = 0; s < 100; ++s) {
      Matrix M = lo;
      for (std::size_t e = 0; e < M.a.size(); ++e) {
        if (hi.a[e].bottom) continue;
        if (lo.a[e].bottom) {
          M.a[e] = u(g) < 3 ? Scalar::zero(Tag::MaxPlus) : Scalar::of(Tag::MaxPlus, hi.a[e].v - frac(u(g), 3));
        } else {
          M.a[e] = Scalar::of(Tag::MaxPlus, lo.a[e].v + (hi.a[e].v - lo.a[e].v) * frac(u(g), 12));
        }
      }
      if (!S.contains(kleene_star(M))) o.fail("instance " + std::to_string(made) + ": sample escapes the interval star");
    }
  }
  if (o.ok) o.note = "500 instances x 100 samples contained";
  return o;
}

// ---------------------------------------------------------------- 11
Outcome crossing() {
  Outcome o;
  DiagramConfig cfg;
  cfg.kind = DiagramConfig::Kind::Crossing;
  cfg.size = 20;
  cfg.policy = Policy::Priority;
  std::vector<Rational> rho;
  for (long p : {5, 10, 15, 20, 30, 35, 40, 45, 55, 60, 65, 70, 75, 80, 85, 90, 95}) rho.push_back(frac(p, 100));
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  auto pts = fundamental_diagram(cfg, rho, 4000, threads);
  const double tol = 0.02, zero_tol = 1e-9;
  double worst_zero = 0;
  std::ostringstream os;
  for (const auto& p : pts) {
    double r = p.rho.get_d(), q = p.q.get_d();
    if (r <= 0.2 + 1e-12) {
      if (std::abs(q - r) > tol) o.fail("rho=" + str(p.rho) + " q=" + std::to_string(q) + " far from rho");
    } else if (r < 0.5) {
      if (std::abs(q - 0.25) > tol) o.fail("rho=" + str(p.rho) + " q=" + std::to_string(q) + " off the 1/4 plateau");
    } else {
      worst_zero = std::max(worst_zero, std::abs(q));
      if (std::abs(q) > zero_tol) o.fail("rho=" + str(p.rho) + " q=" + std::to_string(q) + " not deadlocked");
    }
  }
  if (o.ok) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", worst_zero);
    o.note = "plateaus hold; largest deadlock flow " + std::string(buf);
  }
  return o;
}

// ---------------------------------------------------------------- 12
Outcome traffic_light() {
  Outcome o;
  TrafficLightConfig cfg;
  cfg.m1 = 10;
  cfg.m2 = 8;
  cfg.cars1 = {1, 4, 7};
  cfg.cars2 = {1, 2, 3, 4, 5};
  TrafficLight tl = build_traffic_light(cfg);
  for (std::size_t i : {tl.u1, tl.u2, tl.u3, tl.u4})
    if (tl.sys.u0[i] != 0) o.fail("u0 is not (0,0,0,0)");
  const std::size_t K = 4000;
  T1HRun run = t1h_simulate(tl.sys, K);
  std::pair<long, long> want[4] = {{1, 0}, {0, 0}, {0, 1}, {0, 0}};
  for (std::size_t k = 0; k < 4; ++k)
    if (tl.a0(run.u[k]) != want[k].first || tl.b0(run.u[k]) != want[k].second)
      o.fail("phase " + std::to_string(k) + " is (" + str(tl.a0(run.u[k])) + "," + str(tl.b0(run.u[k])) + ")");
  Rational pred = traffic_light_predicted_flow(tl, true);
  Rational sim = 0;
  for (std::size_t i = 0; i < cfg.m1; ++i) sim += run.rates[i];
  sim /= static_cast<long>(cfg.m1);
  Rational err = sim - pred;
  if (err < 0) err = -err;
  if (err > frac(1, 2 * static_cast<long>(K))) o.fail("simulated " + str(sim) + " vs predicted " + str(pred));
  if (o.ok) o.note = "phases exact; predicted " + str(pred) + ", simulated " + str(sim);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> all{
      {1, "bideterminant exactness", 0.001, bideterminants},
      {2, "circular-road law", 5, circular_road},
      {3, "exclusion step", 0.001, exclusion_step_example},
      {4, "tent map histogram", 30, tent_histogram},
      {5, "spectral oracle equivalence", 60, spectral_oracle},
      {6, "cyclic projector radius and separation", 120, projector_radius},
      {7, "two-sided row generators", 60, twosided_rows},
      {8, "assignment regularity and potentials", 60, assignment},
      {9, "Plucker flows, round trip, submodularity", 60, plucker},
      {10, "interval star exactness", 60, intervals},
      {11, "crossing phases", 120, crossing},
      {12, "traffic light", 30, traffic_light},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "over the %.3f s budget", c.budget);
      o.fail(buf);
    }
    failed += !o.ok;
    std::printf("%s criterion %2d  %-42s %9.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}

#include "tropkit/tropkit.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "tropkit/assign.hpp"
#include "tropkit/determ.hpp"
#include "tropkit/dynamics.hpp"
#include "tropkit/io.hpp"
#include "tropkit/plucker.hpp"
#include "tropkit/projector.hpp"
#include "tropkit/spectral.hpp"
#include "tropkit/twosided.hpp"

struct tk_matrix {
  tropkit::Matrix m;
};

namespace {

using namespace tropkit;

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class F>
int guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return TK_OK;
  } catch (const Error& e) {
    g_last_error = e.body().dump();
    return e.code() == Errc::Parse ? TK_EPARSE : TK_EDOMAIN;
  } catch (const json::exception& e) {
    g_last_error = json{{"error", "Parse"}, {"message", e.what()}, {"detail", nullptr}}.dump();
    return TK_EPARSE;
  } catch (const std::exception& e) {
    g_last_error = json{{"error", "Internal"}, {"message", e.what()}, {"detail", nullptr}}.dump();
    return TK_EINTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(Errc::InvalidArgument, std::string("null ") + what);
}

json indices(const std::vector<std::size_t>& v) {
  json j = json::array();
  for (auto x : v) j.push_back(x + 1);
  return j;
}

json rvec(const RVec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(rational_to_json(x));
  return j;
}

json mask_indices(std::uint32_t mask) {
  json j = json::array();
  for (int b = 0; b < 32; ++b)
    if (mask >> b & 1u) j.push_back(b + 1);
  return j;
}

json eig_report(const Matrix& A) {
  SpectralResult r = spectral(A);
  json edges = json::array();
  for (auto [i, j] : r.critical_edges) edges.push_back({i + 1, j + 1});
  json classes = json::array();
  for (const auto& c : r.critical_classes) classes.push_back(indices(c));
  json vecs = json::array();
  for (const auto& v : r.eigenvectors) vecs.push_back(vec_to_json(v));
  return {{"semiring", tag_name(A.tag)},
          {"eigenvalue", scalar_to_json(r.eigenvalue)},
          {"critical_nodes", indices(r.critical_nodes)},
          {"critical_edges", edges},
          {"critical_classes", classes},
          {"eigenvectors", vecs}};
}

json invariants_report(const Matrix& A) {
  Bideterminant b = bideterminant(A);
  json j = {{"semiring", tag_name(A.tag)},
            {"bideterminant", {{"plus", scalar_to_json(b.plus)}, {"minus", scalar_to_json(b.minus)}}},
            {"permanent", scalar_to_json(permanent(A))},
            {"tropically_singular", is_trop_singular(A)},
            {"pattern_singularity", pattern_name(is_pattern_singular(A))}};
  if (A.rows <= 7 && A.cols <= 7) {
    json rc = json::array();
    for (const auto& s : rook_coefficients(A)) rc.push_back(scalar_to_json(s));
    j["rook_coefficients"] = rc;
  }
  return j;
}

json assign_report(const Matrix& B) {
  check_assign_matrix(B);
  json j;
  Perm F;
  try {
    RegularityCertificate c = strong_regularity(B);
    F = c.F;
    j["strongly_regular"] = true;
    j["f"] = rvec(c.f);
    j["g"] = rvec(c.g);
    j["normal_form"] = matrix_to_json(normal_form(B, c));
  } catch (const Error& e) {
    if (e.code() != Errc::NotStronglyRegular) throw;
    auto opt = optimal_assignments(B, 1);
    if (opt.empty()) throw;
    F = opt[0];
    j["strongly_regular"] = false;
    j["reason"] = e.body();
  }
  j["F"] = indices(F);
  DistancesPotentials dp = distances_potentials(B, F);
  j["btilde"] = matrix_to_json(dp.btilde);
  j["phi"] = rvec(dp.phi);
  j["phi_tilde"] = rvec(dp.phi_tilde);
  return j;
}

std::string fixed9(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", q.get_d());
  return buf;
}

}  // namespace

extern "C" {

const char* tk_version(void) { return "0.1.0"; }

const char* tk_last_error(void) { return g_last_error.c_str(); }

void tk_string_free(char* s) { std::free(s); }

int tk_matrix_parse(const char* text, tk_matrix** out) {
  return guard([&] {
    need(text, "input");
    need(out, "output");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(Errc::Parse, e.what());
    }
    *out = new tk_matrix{matrix_from_json(j)};
  });
}

int tk_matrix_parse_csv(const char* csv, const char* semiring, tk_matrix** out) {
  return guard([&] {
    need(csv, "input");
    need(out, "output");
    Tag t = semiring ? tag_from_name(semiring) : Tag::MaxPlus;
    *out = new tk_matrix{matrix_from_csv(csv, t)};
  });
}

int tk_matrix_to_json(const tk_matrix* m, char** out) {
  return guard([&] {
    need(m, "matrix");
    *out = dup(dump(matrix_to_json(m->m)));
  });
}

void tk_matrix_free(tk_matrix* m) { delete m; }

size_t tk_matrix_rows(const tk_matrix* m) { return m ? m->m.rows : 0; }
size_t tk_matrix_cols(const tk_matrix* m) { return m ? m->m.cols : 0; }

int tk_matrix_mul(const tk_matrix* a, const tk_matrix* b, tk_matrix** out) {
  return guard([&] {
    need(a, "matrix");
    need(b, "matrix");
    *out = new tk_matrix{mat_mul(a->m, b->m)};
  });
}

int tk_matrix_star(const tk_matrix* a, tk_matrix** out) {
  return guard([&] {
    need(a, "matrix");
    *out = new tk_matrix{kleene_star(a->m)};
  });
}

int tk_eig(const tk_matrix* a, char** out) {
  return guard([&] {
    need(a, "matrix");
    *out = dup(dump(eig_report(a->m)));
  });
}

int tk_invariants(const tk_matrix* a, char** out) {
  return guard([&] {
    need(a, "matrix");
    *out = dup(dump(invariants_report(a->m)));
  });
}

int tk_assign(const tk_matrix* b, char** out) {
  return guard([&] {
    need(b, "matrix");
    *out = dup(dump(assign_report(b->m)));
  });
}

int tk_twosided(const tk_matrix* a, const tk_matrix* b, char** out) {
  return guard([&] {
    need(a, "matrix A");
    need(b, "matrix B");
    GeneratorSet g = solve_system(InequalitySystem(a->m, b->m));
    *out = dup(dump({{"generators", matrix_to_json(g.generators)}, {"count", g.generators.cols}, {"certified", g.certified}}));
  });
}

int tk_project(const tk_matrix* gens, const char* vector_json, char** out) {
  return guard([&] {
    need(gens, "matrix");
    need(vector_json, "vector");
    Semimodule V(gens->m);
    json vj;
    try {
      vj = json::parse(vector_json);
    } catch (const json::parse_error& e) {
      throw Error(Errc::Parse, e.what());
    }
    Vec x = vec_from_json(vj, gens->m.tag);
    if (x.size() != V.dim()) throw Error(Errc::DimensionMismatch, "vector length does not match the generators");
    Vec p = project(V, x);
    *out = dup(dump({{"projection", vec_to_json(p)}, {"member", p == x}}));
  });
}

int tk_separate(const tk_matrix* const* modules, size_t count, char** out) {
  return guard([&] {
    need(modules, "module list");
    std::vector<Semimodule> Vs;
    for (size_t i = 0; i < count; ++i) {
      need(modules[i], "module");
      Vs.emplace_back(modules[i]->m);
    }
    HilbertReport hr = cyclic_spectral_radius(Vs);
    json wit = json::array();
    for (const auto& w : hr.witnesses) wit.push_back(vec_to_json(w));
    json j = {{"radius", scalar_to_json(hr.value)}, {"witnesses", wit}, {"support", mask_indices(hr.support)}, {"certified", hr.certified}};
    Separation s = separate(Vs);
    json hs = json::array();
    for (const auto& h : s.halfspaces) hs.push_back({{"u", vec_to_json(h.u)}, {"v", vec_to_json(h.v)}});
    j["halfspaces"] = hs;
    j["archimedean"] = s.archimedean;
    *out = dup(dump(j));
  });
}

int tk_interval_star(const char* text, char** out) {
  return guard([&] {
    need(text, "input");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(Errc::Parse, e.what());
    }
    *out = dup(dump(interval_matrix_to_json(iv_kleene_star(interval_matrix_from_json(j)))));
  });
}

int tk_plucker(const char* mode, const char* input_json, char** out) {
  return guard([&] {
    need(mode, "mode");
    need(input_json, "input");
    json j;
    try {
      j = json::parse(input_json);
    } catch (const json::parse_error& e) {
      throw Error(Errc::Parse, e.what());
    }
    std::string m = mode;
    json r;
    if (m == "check") {
      SubsetFunction f = subset_function_from_json(j);
      r = {{"tp", check_to_json(is_tp(f))},
           {"dmtp", check_to_json(is_dmtp(f))},
           {"submodular", is_submodular(f, false)},
           {"interval_submodular", is_submodular(f, true)}};
    } else if (m == "build") {
      r = subset_function_to_json(flow_tp(grid_from_json(j)));
    } else if (m == "reconstruct") {
      r = subset_function_to_json(reconstruct_from_intervals(subset_function_from_json(j)));
    } else {
      throw Error(Errc::InvalidArgument, "unknown plucker mode '" + m + "'");
    }
    *out = dup(dump(r));
  });
}

int tk_traffic_diagram(const char* config_json, const char* densities_json, size_t steps, size_t threads, char** out) {
  return guard([&] {
    need(config_json, "config");
    need(densities_json, "densities");
    json cj, dj;
    try {
      cj = json::parse(config_json);
      dj = json::parse(densities_json);
    } catch (const json::parse_error& e) {
      throw Error(Errc::Parse, e.what());
    }
    DiagramConfig cfg = diagram_config_from_json(cj);
    if (!dj.is_array()) throw Error(Errc::Parse, "densities must be a JSON array");
    std::vector<Rational> rho;
    for (const auto& d : dj) rho.push_back(rational_from_json(d));
    auto pts = fundamental_diagram(cfg, rho, steps, threads);
    std::string csv = "rho,rho_realized,q\n";
    for (const auto& p : pts) csv += rational_str(p.rho) + "," + rational_str(p.realized) + "," + fixed9(p.q) + "\n";
    *out = dup(csv);
  });
}

int tk_traffic_tent(const char* y0, size_t steps, size_t bins, char** out) {
  return guard([&] {
    need(y0, "y0");
    auto orbit = tent_trajectory(parse_rational(y0), steps);
    orbit.erase(orbit.begin());
    auto h = histogram(orbit, bins);
    std::string csv = "bin,lo,hi,count\n";
    for (size_t b = 0; b < bins; ++b)
      csv += std::to_string(b + 1) + "," + rational_str(frac(static_cast<long>(b), static_cast<long>(bins))) + "," +
             rational_str(frac(static_cast<long>(b + 1), static_cast<long>(bins))) + "," + std::to_string(h[b]) + "\n";
    *out = dup(csv);
  });
}

int tk_traffic_light(const char* config_json, size_t steps, char** out) {
  return guard([&] {
    need(config_json, "config");
    json j;
    try {
      j = json::parse(config_json);
    } catch (const json::parse_error& e) {
      throw Error(Errc::Parse, e.what());
    }
    TrafficLightConfig c;
    c.m1 = j.at("m1").get<std::size_t>();
    c.m2 = j.at("m2").get<std::size_t>();
    c.cars1 = j.value("cars1", std::vector<std::size_t>{});
    c.cars2 = j.value("cars2", std::vector<std::size_t>{});
    c.green1 = j.value("green1", std::size_t{1});
    c.green3 = j.value("green3", std::size_t{1});
    TrafficLight tl = build_traffic_light(c);
    T1HRun run = t1h_simulate(tl.sys, steps);
    json phases = json::array();
    for (std::size_t k = 0; k < tl.period && k < run.u.size(); ++k)
      phases.push_back({rational_to_json(tl.a0(run.u[k])), rational_to_json(tl.b0(run.u[k]))});
    auto avg = [&](const RVec& r, std::size_t lo, std::size_t len) {
      Rational s = 0;
      for (std::size_t i = lo; i < lo + len; ++i) s += r[i];
      return Rational(s / static_cast<long>(len));
    };
    json r = {{"period", tl.period},
              {"phases", phases},
              {"u_transient", run.u_transient},
              {"u_period", run.u_period},
              {"predicted_flow",
               {{"horizontal", rational_to_json(traffic_light_predicted_flow(tl, true))},
                {"vertical", rational_to_json(traffic_light_predicted_flow(tl, false))}}},
              {"simulated_flow",
               {{"horizontal", rational_to_json(avg(run.rates, 0, c.m1))}, {"vertical", rational_to_json(avg(run.rates, c.m1, c.m2))}}}};
    if (run.exact_rates)
      r["periodic_flow"] = {{"horizontal", rational_to_json(avg(*run.exact_rates, 0, c.m1))},
                            {"vertical", rational_to_json(avg(*run.exact_rates, c.m1, c.m2))}};
    *out = dup(dump(r));
  });
}

int tk_traffic_road(size_t m, size_t cars, tk_matrix** out) {
  return guard([&] {
    need(out, "output");
    *out = new tk_matrix{road_matrix(spread_cars(m, cars))};
  });
}

}  // extern "C"

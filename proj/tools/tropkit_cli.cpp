#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tropkit/tropkit.h"

namespace {

struct IoError {
  std::string message;
};

struct Failure {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void check(int rc) {
  if (rc == TK_OK) return;
  std::cerr << tk_last_error() << "\n";
  throw Failure{rc == TK_EPARSE ? 2 : 1};
}

struct Matrix {
  tk_matrix* p = nullptr;
  Matrix() = default;
  Matrix(const Matrix&) = delete;
  Matrix(Matrix&& o) noexcept : p(o.p) { o.p = nullptr; }
  ~Matrix() { tk_matrix_free(p); }
};

Matrix load_matrix(const std::string& path, const std::string& format, const std::string& semiring) {
  std::string text = read_file(path);
  Matrix m;
  if (format == "csv" || (format.empty() && ends_with(path, ".csv")))
    check(tk_matrix_parse_csv(text.c_str(), semiring.c_str(), &m.p));
  else
    check(tk_matrix_parse(text.c_str(), &m.p));
  return m;
}

void emit(char* s, const std::string& out) {
  std::string text = s;
  tk_string_free(s);
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw IoError{"cannot write '" + out + "'"};
  f << text;
}

void emit_matrix(const Matrix& m, const std::string& out) {
  char* s = nullptr;
  check(tk_matrix_to_json(m.p, &s));
  emit(s, out);
}

std::size_t thread_cap() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TROPKIT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return std::min<std::size_t>(static_cast<std::size_t>(v), hw);
    } catch (...) {
    }
  }
  return hw;
}

// "lo:hi:step" -> JSON array of exact rationals via the library parser
std::string densities_json(const std::string& range) {
  auto a = range.find(':'), b = range.rfind(':');
  if (a == std::string::npos || a == b) throw IoError{"densities must look like lo:hi:step"};
  std::string lo = range.substr(0, a), hi = range.substr(a + 1, b - a - 1), step = range.substr(b + 1);
  auto to_frac = [](const std::string& s, long long& num, long long& den) {
    auto dot = s.find('.');
    auto slash = s.find('/');
    try {
      if (slash != std::string::npos) {
        num = std::stoll(s.substr(0, slash));
        den = std::stoll(s.substr(slash + 1));
      } else if (dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        num = std::stoll(s.substr(0, dot).empty() ? "0" : s.substr(0, dot)) * den + (frac.empty() ? 0 : std::stoll(frac));
      } else {
        num = std::stoll(s);
        den = 1;
      }
    } catch (...) {
      throw IoError{"bad density '" + s + "'"};
    }
    if (den <= 0) throw IoError{"bad density '" + s + "'"};
  };
  long long ln, ld, hn, hd, sn, sd;
  to_frac(lo, ln, ld);
  to_frac(hi, hn, hd);
  to_frac(step, sn, sd);
  if (sn <= 0) throw IoError{"density step must be positive"};
  long long D = ld * hd * sd;
  long long L = ln * (D / ld), H = hn * (D / hd), S = sn * (D / sd);
  std::string json = "[";
  for (long long v = L, k = 0; v <= H; v += S, ++k) {
    if (k) json += ",";
    json += "\"" + std::to_string(v) + "/" + std::to_string(D) + "\"";
  }
  return json + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropkit: tropical and idempotent mathematics toolkit"};
  app.require_subcommand(1);
  std::string out, format, semiring = "max-plus";
  app.add_option("--out", out, "output file (default stdout)");

  std::string matrix;
  auto add_matrix = [&](CLI::App* c) {
    c->add_option("--matrix", matrix, "matrix file (JSON, or CSV with --format csv)")->required();
    c->add_option("--format", format, "input format: json or csv")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--semiring", semiring, "semiring for CSV input");
    c->add_option("--out", out, "output file (default stdout)");
  };

  auto* star = app.add_subcommand("star", "Kleene star of a matrix");
  add_matrix(star);
  auto* eig = app.add_subcommand("eig", "eigenvalue, critical graph and eigenvectors");
  add_matrix(eig);
  auto* inv = app.add_subcommand("invariants", "bideterminant, permanent and singularity tests");
  add_matrix(inv);
  auto* assign = app.add_subcommand("assign", "strong regularity, normal form, distances and potentials");
  add_matrix(assign);
  auto* interval = app.add_subcommand("interval", "interval Kleene star of an interval matrix");
  interval->add_option("--matrix", matrix, "interval matrix JSON")->required();
  interval->add_option("--out", out);

  std::string vector;
  auto* proj = app.add_subcommand("project", "project a vector onto a semimodule");
  add_matrix(proj);
  proj->add_option("--vector", vector, "vector as a JSON array or a file")->required();

  std::vector<std::string> modules;
  auto* sep = app.add_subcommand("separate", "cyclic projector radius and separating halfspaces");
  sep->add_option("--modules", modules, "generator matrix per semimodule (repeatable)")->required();
  sep->add_option("--out", out);

  std::string fileA, fileB;
  auto* two = app.add_subcommand("twosided", "generators of A x <= B x");
  two->add_option("--A", fileA, "left matrix")->required();
  two->add_option("--B", fileB, "right matrix")->required();
  two->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  two->add_option("--semiring", semiring);
  two->add_option("--out", out);

  std::string input;
  auto* pl = app.add_subcommand("plucker", "tropical Pluecker functions");
  pl->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> pl_modes;
  for (const char* m : {"check", "build", "reconstruct"}) {
    auto* c = pl->add_subcommand(m);
    c->add_option("--input", input, "subset function or grid JSON")->required();
    c->add_option("--out", out);
    pl_modes.emplace_back(m, c);
  }

  auto* tr = app.add_subcommand("traffic", "traffic dynamics");
  tr->require_subcommand(1);
  std::string config, dens = "0:1:1/20", y0 = "1/5";
  std::size_t steps = 4000, bins = 100, m = 0, cars = 0;
  auto* diag = tr->add_subcommand("diagram", "fundamental diagram CSV");
  diag->add_option("--config", config, "network JSON")->required();
  diag->add_option("--densities", dens, "lo:hi:step");
  diag->add_option("--steps", steps);
  diag->add_option("--out", out);
  auto* tent = tr->add_subcommand("tent", "tent map histogram CSV");
  tent->add_option("--y0", y0);
  tent->add_option("--steps", steps);
  tent->add_option("--bins", bins);
  tent->add_option("--out", out);
  auto* light = tr->add_subcommand("light", "traffic light report");
  light->add_option("--config", config, "light JSON")->required();
  light->add_option("--steps", steps);
  light->add_option("--out", out);
  auto* road = tr->add_subcommand("road", "event-graph matrix of a circular road");
  road->add_option("--m", m)->required();
  road->add_option("--cars", cars)->required();
  road->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    char* s = nullptr;
    if (star->parsed()) {
      Matrix a = load_matrix(matrix, format, semiring), r;
      check(tk_matrix_star(a.p, &r.p));
      emit_matrix(r, out);
    } else if (eig->parsed()) {
      Matrix a = load_matrix(matrix, format, semiring);
      check(tk_eig(a.p, &s));
      emit(s, out);
    } else if (inv->parsed()) {
      Matrix a = load_matrix(matrix, format, semiring);
      check(tk_invariants(a.p, &s));
      emit(s, out);
    } else if (assign->parsed()) {
      Matrix a = load_matrix(matrix, format, semiring);
      check(tk_assign(a.p, &s));
      emit(s, out);
    } else if (interval->parsed()) {
      check(tk_interval_star(read_file(matrix).c_str(), &s));
      emit(s, out);
    } else if (proj->parsed()) {
      Matrix a = load_matrix(matrix, format, semiring);
      std::string v = vector.find('[') != std::string::npos ? vector : read_file(vector);
      check(tk_project(a.p, v.c_str(), &s));
      emit(s, out);
    } else if (sep->parsed()) {
      std::vector<Matrix> ms;
      std::vector<const tk_matrix*> ptrs;
      for (const auto& f : modules) ms.push_back(load_matrix(f, "", semiring));
      for (const auto& x : ms) ptrs.push_back(x.p);
      check(tk_separate(ptrs.data(), ptrs.size(), &s));
      emit(s, out);
    } else if (two->parsed()) {
      Matrix a = load_matrix(fileA, format, semiring), b = load_matrix(fileB, format, semiring);
      check(tk_twosided(a.p, b.p, &s));
      emit(s, out);
    } else if (pl->parsed()) {
      for (const auto& [name, c] : pl_modes)
        if (c->parsed()) {
          check(tk_plucker(name.c_str(), read_file(input).c_str(), &s));
          emit(s, out);
        }
    } else if (diag->parsed()) {
      std::string cfg = read_file(config), d = densities_json(dens);
      check(tk_traffic_diagram(cfg.c_str(), d.c_str(), steps, thread_cap(), &s));
      emit(s, out);
    } else if (tent->parsed()) {
      check(tk_traffic_tent(y0.c_str(), steps, bins, &s));
      emit(s, out);
    } else if (light->parsed()) {
      check(tk_traffic_light(read_file(config).c_str(), steps, &s));
      emit(s, out);
    } else if (road->parsed()) {
      Matrix r;
      check(tk_traffic_road(m, cars, &r.p));
      emit_matrix(r, out);
    }
  } catch (const IoError& e) {
    std::string msg;
    for (char c : e.message) {
      if (c == '"' || c == '\\') msg += '\\';
      msg += c;
    }
    std::cerr << "{\"error\":\"IO\",\"message\":\"" << msg << "\",\"detail\":null}\n";
    return 2;
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropkit/assign.hpp"
#include "tropkit/tropmat.hpp"

namespace tropkit {

// ---- exclusion process on a ring

struct RingWord {
  std::vector<bool> bits;

  RingWord() = default;
  explicit RingWord(std::vector<bool> b);
  static RingWord parse(const std::string& s);
  std::string str() const;
  std::size_t cars() const;
  friend bool operator==(const RingWord& a, const RingWord& b) { return a.bits == b.bits; }
};

// one synchronous step of 10 -> 01; returns the number of moved cars
std::size_t exclusion_step(RingWord& w);

struct ExclusionRun {
  std::vector<RingWord> trajectory;
  std::vector<Rational> flows;  // flows[t] = moved cars at step t+1 / length
};

ExclusionRun exclusion_run(const RingWord& w, std::size_t steps);

// ---- degree-one homogeneous min-plus maps

using Exponents = std::vector<std::pair<std::size_t, Rational>>;

struct HomTerm {
  Rational c;
  Exponents old_exp;    // on x^k
  Exponents fresh_exp;  // on already updated coordinates of x^{k+1}
};

struct HomogeneousMap {
  std::size_t dim = 0;
  std::vector<std::vector<HomTerm>> terms;  // coordinate i = min over terms[i]

  explicit HomogeneousMap(std::size_t d = 0) : dim(d), terms(d) {}
  void validate() const;
  RVec apply(const RVec& x) const;
};

// x_i' = min_j (A_ij + x_j) for a min-plus matrix
HomogeneousMap linear_map(const Matrix& A);

// circular road: A(i,i-1) = a_{i-1}, A(i,i+1) = 1 - a_i (min-plus)
Matrix road_matrix(const std::vector<bool>& a);
HomogeneousMap road_event_graph(const std::vector<bool>& a);
// n cars spread evenly on m cells
std::vector<bool> spread_cars(std::size_t m, std::size_t n);

struct HomRun {
  std::vector<RVec> trajectory;      // empty unless requested
  RVec last;
  Rational throughput;               // second-half average growth
  std::optional<Rational> periodic;  // exact rate from a detected repeat of the normalized state
  Rational rate() const { return periodic ? *periodic : throughput; }
};

HomRun hom_iterate(const HomogeneousMap& f, const RVec& x0, std::size_t K, bool keep_trajectory = false,
                   const Rational& spread_bound = Rational(1000000));

// fixed-point problem obtained by fixing the pivot coordinate to 0
struct ReducedMap {
  HomogeneousMap f;
  std::size_t pivot = 0;

  RVec lift(const RVec& y) const;
  RVec g(const RVec& y) const;
  Rational eigenvalue(const RVec& y) const;
};

ReducedMap eigen_reduce(const HomogeneousMap& f, std::size_t pivot = 0);

// x1' = min(2 x1 - x2, 2 + 3 x2 - 2 x1), x2' = x2
HomogeneousMap tent_system();
Rational tent(const Rational& y);
std::vector<Rational> tent_trajectory(const Rational& y0, std::size_t K);
// bins over [0,1]; y = 1 lands in the last bin
std::vector<std::size_t> histogram(const std::vector<Rational>& values, std::size_t bins, std::vector<std::size_t> into = {});

// ---- two roads meeting at one crossing

enum class Policy { Priority, FiftyFifty };
const char* policy_name(Policy p);
Policy policy_from_name(const std::string& s);

struct CrossingConfig {
  std::size_t n = 0;  // cells per road, the last one is the shared crossing
  std::vector<std::size_t> cars1, cars2;  // 1-based cells in 1..n-1
  Policy policy = Policy::Priority;
};

HomogeneousMap build_crossing(const CrossingConfig& cfg);
// even placement for a target density of cars over the 2n-1 distinct cells
CrossingConfig crossing_for_density(std::size_t n, const Rational& rho, Policy p);

struct DiagramConfig {
  enum class Kind { Ring, Crossing } kind = Kind::Ring;
  std::size_t size = 0;  // ring length m or cells per road n
  Policy policy = Policy::Priority;
};

DiagramConfig diagram_config_from_json(const nlohmann::json& j);

struct DiagramPoint {
  Rational rho, realized, q;
};

std::vector<DiagramPoint> fundamental_diagram(const DiagramConfig& cfg, const std::vector<Rational>& densities,
                                              std::size_t steps, std::size_t threads = 1);

// ---- triangular 1-homogeneous systems

struct T1HTerm {
  Rational c;
  Exponents u_exp;  // sums to 0
};
using T1HEntry = std::vector<T1HTerm>;  // min over terms, empty = +inf

struct T1HSystem {
  Matrix C;  // min-plus, nu x nu
  std::size_t nx = 0;
  std::vector<T1HEntry> A;  // nx * nx
  std::vector<T1HEntry> B;  // nx * nu
  RVec u0, x0;

  void validate() const;
  Matrix A_of(const RVec& u) const;
  Matrix B_of(const RVec& u) const;
};

struct T1HRun {
  std::vector<RVec> u, x;
  std::size_t u_transient = 0, u_period = 0;  // period 0: not detected
  RVec rates;                                 // second-half growth per x coordinate
  std::optional<RVec> exact_rates;
};

T1HRun t1h_simulate(const T1HSystem& S, std::size_t K);

struct TrafficLightConfig {
  std::size_t m1 = 0, m2 = 0;             // ring lengths, last cell is the crossing
  std::vector<std::size_t> cars1, cars2;  // 1-based cells in 1..m-1
  std::size_t green1 = 1, green3 = 1;
};

struct TrafficLight {
  T1HSystem sys;
  std::size_t u1 = 0, u2 = 0, u3 = 0, u4 = 0;
  std::size_t period = 0;
  std::size_t m1 = 0, m2 = 0;

  Rational a0(const RVec& u) const;
  Rational b0(const RVec& u) const;
};

TrafficLight build_traffic_light(const TrafficLightConfig& cfg);
// lambda of A_1(u^{p-1}) ... A_1(u^0) divided by the light period p
Rational traffic_light_predicted_flow(const TrafficLight& tl, bool horizontal = true);

}  // namespace tropkit

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "tropkit/semiring.hpp"

namespace tropkit {

// values indexed by bitmask, bit i-1 <-> element i; nullopt stands for -inf
struct SubsetFunction {
  std::size_t n = 0;
  std::vector<std::optional<Rational>> values;

  SubsetFunction() = default;
  explicit SubsetFunction(std::size_t n_) : n(n_), values(std::size_t{1} << n_) {}

  const std::optional<Rational>& operator[](std::uint32_t S) const { return values[S]; }
  std::optional<Rational>& operator[](std::uint32_t S) { return values[S]; }
  friend bool operator==(const SubsetFunction& a, const SubsetFunction& b) { return a.n == b.n && a.values == b.values; }
};

// violation witness: A and indices (0-based); l < 0 for 3-term relations
struct PluckerCheck {
  bool ok = true;
  std::uint32_t A = 0;
  int i = -1, j = -1, k = -1, l = -1;
};

struct GridFlowNet {
  std::size_t n = 0;
  // weight of (i,j)->(i-1,j) and (i,j)->(i,j+1), stored at (i-1)*n + (j-1)
  std::vector<Rational> up, right;

  explicit GridFlowNet(std::size_t n_ = 0) : n(n_), up(n_ * n_), right(n_ * n_) {}
  Rational& up_at(std::size_t i, std::size_t j) { return up[(i - 1) * n + (j - 1)]; }
  Rational& right_at(std::size_t i, std::size_t j) { return right[(i - 1) * n + (j - 1)]; }
};

bool is_interval(std::uint32_t S);

PluckerCheck is_tp(const SubsetFunction& f);
PluckerCheck is_dmtp(const SubsetFunction& f);
SubsetFunction flow_tp(const GridFlowNet& net);
SubsetFunction restrict_to_intervals(const SubsetFunction& f);
SubsetFunction reconstruct_from_intervals(const SubsetFunction& g);
bool is_submodular(const SubsetFunction& f, bool on_intervals_only);

nlohmann::json subset_function_to_json(const SubsetFunction& f);
SubsetFunction subset_function_from_json(const nlohmann::json& j);
nlohmann::json grid_to_json(const GridFlowNet& net);
GridFlowNet grid_from_json(const nlohmann::json& j);
nlohmann::json check_to_json(const PluckerCheck& c);

}  // namespace tropkit

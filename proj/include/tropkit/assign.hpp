#pragma once

#include <cstddef>
#include <vector>

#include "tropkit/tropmat.hpp"

namespace tropkit {

using RVec = std::vector<Rational>;
using Perm = std::vector<std::size_t>;

// square max-plus matrix with a finite entry in every row and column
void check_assign_matrix(const Matrix& B);

// (Bf)_i = max_j (b_ij - f_j); with transpose, b_ji is used
RVec apply_B(const Matrix& B, const RVec& f, bool transpose);

struct Subdifferential {
  std::vector<std::vector<std::size_t>> sets;     // dT g(i)
  std::vector<std::vector<std::size_t>> inverse;  // (dT g)^{-1}(j)
  bool covering = false;
  bool minimal = false;
};

Subdifferential subdifferential(const Matrix& B, const RVec& g);
// d f(j) = {k : (Bf)_k = b_kj - f_j}
std::vector<std::vector<std::size_t>> subdifferential_primal(const Matrix& B, const RVec& f);

struct RegularityCertificate {
  Perm F;
  RVec f, g;
  bool strongly_regular = false;
};

// optimal bijections by exhaustive search (n <= 8)
std::vector<Perm> optimal_assignments(const Matrix& B, std::size_t limit = 2);
RegularityCertificate strong_regularity(const Matrix& B);
Matrix normal_form(const Matrix& B, const RegularityCertificate& cert);
bool is_strongly_normal(const Matrix& C);
bool is_normal(const Matrix& C);

struct DistancesPotentials {
  Matrix btilde;
  RVec phi, phi_tilde;
};

DistancesPotentials distances_potentials(const Matrix& B, const Perm& F);

}  // namespace tropkit

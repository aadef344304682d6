#pragma once

#include <vector>

#include "tropkit/tropmat.hpp"

namespace tropkit {

struct Bideterminant {
  Scalar plus, minus;
};

enum class PatternSingularity { None, Left, Right, Both };

const char* pattern_name(PatternSingularity p);

struct StandardTransform {
  std::vector<std::size_t> P, Q;  // permutations, P(i, P[i]) = 1
  Vec D, E;                       // diagonals, no zero entries
  bool transpose = false;
};

Bideterminant bideterminant(const Matrix& A);
Scalar permanent(const Matrix& A);
std::vector<Scalar> rook_coefficients(const Matrix& A);
bool is_trop_singular(const Matrix& A);
PatternSingularity is_pattern_singular(const Matrix& A);

Matrix permutation_matrix(Tag t, const std::vector<std::size_t>& perm);
Matrix diagonal_matrix(const Vec& d);
Matrix apply_standard_transform(const Matrix& A, const StandardTransform& T);

}  // namespace tropkit

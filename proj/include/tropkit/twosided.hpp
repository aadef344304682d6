#pragma once

#include "tropkit/tropmat.hpp"

namespace tropkit {

struct InequalitySystem {
  Matrix A, B;
  InequalitySystem(Matrix a, Matrix b);
};

struct GeneratorSet {
  Matrix generators;  // columns
  bool certified = true;
};

GeneratorSet row_generators(const Vec& a, const Vec& b);
GeneratorSet solve_system(const InequalitySystem& S);
bool check_solution(const InequalitySystem& S, const Vec& x);

// drops zero columns, scalar duplicates and columns generated by the others
Matrix prune_generators(const Matrix& G);

}  // namespace tropkit

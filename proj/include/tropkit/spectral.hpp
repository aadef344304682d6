#pragma once

#include <utility>
#include <vector>

#include "tropkit/tropmat.hpp"

namespace tropkit {

struct SpectralResult {
  Scalar eigenvalue;
  std::vector<std::size_t> critical_nodes;
  std::vector<std::pair<std::size_t, std::size_t>> critical_edges;
  std::vector<std::vector<std::size_t>> critical_classes;
  std::vector<Vec> eigenvectors;
};

// max cycle mean for max-plus, min cycle mean for min-plus (Karp)
Scalar max_cycle_mean(const Matrix& A);
bool has_cycle(const Matrix& A);

SpectralResult critical_graph(const Matrix& A);
std::vector<Vec> eigenvectors(const Matrix& A);
SpectralResult spectral(const Matrix& A);

struct CollatzWielandt {
  Scalar value;
  Vec certificate;
};

CollatzWielandt collatz_wielandt(const Matrix& A);

}  // namespace tropkit

#pragma once

#include <cstdint>
#include <vector>

#include "tropkit/tropmat.hpp"

namespace tropkit {

// max-plus semimodule spanned by the columns of gens
struct Semimodule {
  Matrix gens;

  Semimodule() = default;
  explicit Semimodule(Matrix g);
  std::size_t dim() const { return gens.rows; }
};

struct Halfspace {
  Vec u, v;
};

struct HilbertReport {
  Scalar value;
  std::vector<Vec> witnesses;
  std::uint32_t support = 0;
  bool certified = true;
};

Vec project(const Semimodule& V, const Vec& x);
bool in_semimodule(const Semimodule& V, const Vec& x);

// x/y = max{l : l (x) y <= x}, meet over supp(y)
Scalar vec_residual(const Vec& x, const Vec& y);
Scalar hilbert_value(const std::vector<Vec>& xs);

std::vector<Vec> cyclic_orbit(const std::vector<Semimodule>& Vs, const Vec& x0, std::size_t sweeps);
Vec cyclic_apply(const std::vector<Semimodule>& Vs, const Vec& x);

// semimodule of vectors of V supported in the index set `mask`
Semimodule restrict_support(const Semimodule& V, std::uint32_t mask);

HilbertReport cyclic_spectral_radius(const std::vector<Semimodule>& Vs);

bool in_halfspace(const Halfspace& H, const Vec& x);

struct Separation {
  std::vector<Halfspace> halfspaces;
  Scalar radius;
  bool archimedean = true;
};

// throws NotSeparable with detail {"witness": [...]} when the semimodules share a nonzero point
Separation separate(const std::vector<Semimodule>& Vs);

}  // namespace tropkit

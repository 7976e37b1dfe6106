// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_FIELDS_BC_HPP
#define LDLAB_FIELDS_BC_HPP

#include <array>
#include <string>
#include <vector>

#include "ldlab/geometry.hpp"

namespace ldlab {

enum class BoundaryCondition { Dirichlet, Neumann, Periodic, FreeSpace };

/// Cell-centered samples on the n^3 grid of a DomainBox. Free-space solves
/// additionally carry values on an enlarged grid [-margin, n+margin)^3 so that
/// exterior field values are available.
struct ScalarField {
  DomainBox box;
  int n = 0;
  std::vector<double> values;  // n^3, x fastest
  int ext_margin = 0;
  std::vector<double> ext;  // (n+2*margin)^3 when ext_margin > 0

  double h() const { return box.L / n; }
  long long index(int i, int j, int k) const { return ((long long)k * n + j) * n + i; }
  /// Extended-grid value at cell (i,j,k), indices in [-margin, n+margin).
  double ext_at(int i, int j, int k) const {
    int m = ext_margin, w = n + 2 * m;
    return ext[((long long)(k + m) * w + (j + m)) * w + (i + m)];
  }
};

/// Discrete solve of -Lap_h v = rhs with the 7-point cell-centered Laplacian
/// and the boundary closure of `bc` (ghost negation / reflection / wraparound;
/// free space couples to the decaying lattice solution). The
/// relative residual is verified to 1e-10. Neumann/Periodic require zero-mean
/// rhs and return a zero-mean solution.
ScalarField poisson_solve(const ScalarField& rhs, BoundaryCondition bc);

/// Potential of 1_set - theta (background over the whole box) under `bc`.
/// For Neumann/Periodic the set must be neutral to within one voxel volume.
ScalarField potential(const VoxelSet& set, double theta, BoundaryCondition bc);

/// Fast path for energies: free-space potential on the base grid only.
ScalarField potential_free_space_base(const VoxelSet& set, double theta);

/// (1/2) int |grad v|^2 for the bc's quadratic form: interior face differences
/// plus the closure terms (Dirichlet wall penalty, periodic wrap faces); for
/// free space the enlarged-grid sum plus the exact discrete exterior flux
/// correction. Equals (1/2) int rhs*v at solver accuracy.
double gradient_energy(const ScalarField& v, BoundaryCondition bc);

/// Green's function of the 7-point Laplacian on the infinite unit lattice
/// (6 G(0) - sum_nb G = 1 at the origin); G(d) -> 1/(4 pi |d|) at range.
double lattice_green(const std::array<int, 3>& d);

/// `.fld` file: text header "L n\n", then n^3 little-endian doubles.
void save_fld(const ScalarField& f, const std::string& path);
ScalarField load_fld(const std::string& path);

}  // namespace ldlab

#endif

// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_ENERGY_HPP
#define LDLAB_ENERGY_HPP

#include <optional>

#include "ldlab/fields_bc.hpp"
#include "ldlab/geometry.hpp"

namespace ldlab {

/// Perimeter + Coulomb interaction; `total` is always their exact sum. The
/// interaction convention throughout this library is the full double integral
/// int int s(x) s(y)/|x-y| (ordered pairs), matching the reference constants
/// below: for a ball, e(r) = total/volume = 3/r + (4 pi/5) r^2.
struct EnergyBreakdown {
  double perimeter = 0.0;
  double interaction = 0.0;
  double total = 0.0;
  std::optional<std::array<double, 3>> parts;  // (self, near, far)

  static EnergyBreakdown make(double per, double inter) {
    EnergyBreakdown e;
    e.perimeter = per;
    e.interaction = inter;
    e.total = per + inter;
    return e;
  }
};

/// Ball-ansatz reference constants: r*^3 = 15/(8 pi), A* = (4 pi/3) r*^3 = 5/2,
/// e* = (9/2)/r*. The minimizing shape is conjectural; every consumer labels
/// these as the ball ansatz.
struct ReferenceConstants {
  double rStar;
  double aStar;
  double eStar;
  static ReferenceConstants ball_ansatz();
};

/// Evaluation route for the voxel interaction sums.
enum class InteractionPath { Fft, Direct };

EnergyBreakdown whole_space_energy(const VoxelSet& set,
                                   InteractionPath path = InteractionPath::Fft);

EnergyBreakdown ball_energy_analytic(double r);

/// Per(set) + int int (1_set - theta)(1_set - theta)/|x-y| over the box.
EnergyBreakdown box_energy(const VoxelSet& set, double theta,
                           InteractionPath path = InteractionPath::Fft);

/// Same on the cuboid lambda * box (unit product of scales); `set` holds the
/// reference-cube voxelization, cells are stretched by diag(lambda).
EnergyBreakdown anisotropic_energy(const VoxelSet& set, double theta,
                                   const Vec3& lambda);

/// Per(set) + (1/2) int |grad v_bc|^2 with v from fields_bc (half-form family,
/// as produced by gradient_energy).
EnergyBreakdown bc_energy(const VoxelSet& set, double theta, BoundaryCondition bc);

/// Yukawa self-interaction int ind_set Y_omega ind_set (full double integral),
/// with the same cell-pair quadrature policy as the Coulomb sums.
double yukawa_self_interaction(const VoxelSet& set, double omega,
                               InteractionPath path = InteractionPath::Fft);

/// Unit-pitch Coulomb cell-pair table value used by the voxel sums: exact
/// quadrature for |d|_inf < 3, midpoint 1/|d| beyond.
double coulomb_cell_table(const std::array<int, 3>& d);

}  // namespace ldlab

#endif

// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_KERNELS_HPP
#define LDLAB_KERNELS_HPP

#include <array>

#include "ldlab/common.hpp"

namespace ldlab {

/// 1/|x|; rejects x = 0.
double coulomb(const Vec3& x);

/// exp(-omega |x|)/|x|; rejects x = 0 and omega <= 0.
double yukawa(double omega, const Vec3& x);

/// Expansion of 1/|a-b| through the quadratic term:
///   1/|a| + a.b/|a|^3 + (3(a.b)^2 - |a|^2 |b|^2) / (2 |a|^5).
/// Valid for |a| >= 4|b|; the remainder obeys |err| <= kappa |b|^3/|a|^4 with the
/// module constant below (a Legendre-series tail bound gives 4/3; 20 leaves margin).
double taylor_third_order(const Vec3& a, const Vec3& b);
inline constexpr double kTaylorRemainderKappa = 20.0;

/// Integral of 1/|y| over an arbitrary axis-aligned box [lo, hi].
/// Singular boxes (origin inside or on the boundary) are split at the
/// coordinate planes into corner boxes handled by the radial substitution
/// u = y/|y|_inf; detached boxes use distance-graded Gauss-Legendre.
double box_potential(const Vec3& lo, const Vec3& hi);

/// Integral of 1/|y| over the cube of side l centered at l*mu.
double cube_potential_integral(double l, const Vec3& mu);

/// Value of cube_potential_integral(1, 0).
double cube_potential_center();

/// Whole-space Yukawa integral: int e^{-omega|y|}/|y| dy = 4 pi / omega^2.
double yukawa_space_integral(double omega);

/// Coulomb interaction of two unit-pitch cells at integer offset d:
///   int_{[-1,1]^3} prod_i (1 - |u_i|) / |u + d| du.
/// d = 0 is the cell self-interaction constant; pitch-h cells scale by h^5.
double coulomb_cell_pair(const std::array<int, 3>& d);

/// The d = 0 constant (unit-cube Coulomb self energy).
double coulomb_cell_self();

/// Same with anisotropic cell axis scales lambda (value for cells that are
/// images of unit cells under diag(lambda); pitch-h scaling is h^5 when
/// prod lambda_i = 1).
double coulomb_cell_pair_aniso(const std::array<int, 3>& d, const Vec3& lambda);

/// Yukawa variant; omega_h is the screening rate in cell-pitch units.
double yukawa_cell_pair(const std::array<int, 3>& d, double omega_h);

}  // namespace ldlab

#endif

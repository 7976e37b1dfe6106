// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_UPPERBOUND_HPP
#define LDLAB_UPPERBOUND_HPP

#include <variant>
#include <vector>

#include "ldlab/energy.hpp"
#include "ldlab/geometry.hpp"

namespace ldlab {

// ----------------------------------------------------------------- templates

/// Union of pairwise disjoint balls (centers relative to the cell center).
/// A single centered entry is the plain ball template.
struct MultiBallShape {
  struct Ball {
    Vec3 center{0, 0, 0};
    double radius = 1.0;
  };
  std::vector<Ball> balls;
};

/// x = rot * diag(semi) * u + center, |u| <= 1.
struct EllipsoidShape {
  Vec3 semi{1, 1, 1};
  Mat3 rot = mat_identity();
  Vec3 center{0, 0, 0};
};

using TemplateShape = std::variant<MultiBallShape, EllipsoidShape>;

double shape_volume(const TemplateShape& s);
double shape_diameter(const TemplateShape& s);
MultipoleMoments shape_moments(const TemplateShape& s);
TemplateShape shape_transform(const TemplateShape& s, const Mat3& rot, const Vec3& shift);
TemplateShape shape_scale(const TemplateShape& s, double t);

// -------------------------------------------------------------- lattice set

/// The lattice competitor: copies of a volume-A* template placed in the cells
/// Q_cell(r), r in [-k,k]^3, of a (possibly cuboid-distorted) tiling of the
/// box, uniformly rescaled so that the total volume is exactly theta L^3.
struct LatticeConfig {
  double theta = 0.0;
  double L = 0.0;
  double l0 = 0.0;           // base cell size, theta * l0^3 = A*
  Vec3 lambdaVec{1, 1, 1};   // cuboid distortion, unit product
  double lambdaScalar = 1.0; // uniform rescale lambda_{theta,L}
  int k = 0;                 // cells = [-k, k]^3
  long long N = 0;           // (2k+1)^3
  int M = 10;                // near/far cutoff in |r-s|_inf
  TemplateShape tmpl;        // base shape of volume A* (before lambdaScalar)
  double aStar = 0.0, eStar = 0.0;

  bool cubic() const {
    return lambdaVec[0] == 1.0 && lambdaVec[1] == 1.0 && lambdaVec[2] == 1.0;
  }
  double lambda3() const { return lambdaScalar * lambdaScalar * lambdaScalar; }
  /// scaled cell edge lengths
  Vec3 cell_size() const {
    return {lambdaScalar * lambdaVec[0] * l0, lambdaScalar * lambdaVec[1] * l0,
            lambdaScalar * lambdaVec[2] * l0};
  }
  std::vector<std::array<int, 3>> cells() const;
  /// ordered-pair multiplicity of a displacement class on the cell lattice
  long long pair_multiplicity(const std::array<int, 3>& d) const;
};

LatticeConfig build_competitor(double theta, double L, const ReferenceConstants& refs,
                               int M = 10);

/// Interaction of the two (neutralized) cells at lattice offset s - r; full
/// double-integral convention. Ball templates are evaluated semi-analytically
/// (point interactions by the mean-value property, cube terms by deterministic
/// quadrature); far pairs switch to a cancellation-stable form built on the
/// multipole series of the cube potential.
double pair_interaction(const LatticeConfig& config, const std::array<int, 3>& r,
                        const std::array<int, 3>& s);

/// Energy of the competitor split into (self, near, far) interaction parts;
/// perimeter is the exact surface area of the template copies. Ball-family
/// templates only.
EnergyBreakdown decompose_energy(const LatticeConfig& config);

/// Rigorous upper bound on |far part| with explicit constants, together with
/// the evaluated far part.
struct FarFieldBound {
  double bound = 0.0;
  double exact_far = 0.0;
};
FarFieldBound far_field_bound(const LatticeConfig& config);

/// Minimum gap between template copies in distinct cells (geometric, exact for
/// ball families).
double min_copy_separation(const LatticeConfig& config);

/// Partial sum of sum_{0 < |s|_inf <= K} |s|^-4 plus a rigorous bracket for the
/// full lattice sum from midpoint-corrected integral comparison.
struct LatticeSumInv4 {
  double partial = 0.0;
  double lower = 0.0;  // bracket on the full sum
  double upper = 0.0;
};
LatticeSumInv4 lattice_sum_inv4(int K);

// ------------------------------------------------------------- moment killing

struct MomentKillResult {
  Mat3 U = mat_identity();  // applied rotation, orthogonal
  Vec3 y{0, 0, 0};          // applied translation (before rotation)
  Vec3 lambdaVec{1, 1, 1};  // cuboid side scales, unit product
  double eta0 = 0.0;        // l0 / diam(shape)
  double c1 = 0.0, c2 = 0.0;
  double X = 1.0;           // cubic root near 1
};

/// Unique real root of p(X) = X^3 - c1 X^2 - c2^2 X - 1 + c1 c2^2 with
/// |X - 1| <= 1/2 (safeguarded Newton + bisection on [1/2, 3/2]).
double cubic_root_near_one(double c1, double c2);

/// Choose translation, rotation, and cuboid scales so that the monopole,
/// dipole, and quadrupole of 1_{U(shape+y)} - theta 1_{cuboid} all vanish.
MomentKillResult moment_kill(const TemplateShape& shape, double l0, double theta);
MomentKillResult moment_kill(const VoxelSet& shape, double l0, double theta);

/// Worst relative post-transform moment (monopole/dipole/quadrupole), verified
/// by independent quadrature; scales q ~ theta l0^3, d ~ theta l0^4, P ~ theta l0^5.
double verify_moment_kill(const TemplateShape& shape, double l0, double theta,
                          const MomentKillResult& kill);
double verify_moment_kill(const VoxelSet& shape, double l0, double theta,
                          const MomentKillResult& kill);

/// Competitor on the distorted lattice produced by moment_kill. The shape
/// passed here is the original (untransformed) template of volume A*.
LatticeConfig build_cuboid_competitor(double theta, double L,
                                      const ReferenceConstants& refs,
                                      const TemplateShape& shape,
                                      const MomentKillResult& kill, int M = 10);

/// Symmetric 3x3 eigendecomposition by cyclic Jacobi rotations; returns
/// eigenvalues (descending) and the orthogonal matrix of column eigenvectors.
void jacobi_eigen3(const Mat3& A, Vec3& eigenvalues, Mat3& eigenvectors);

std::string lattice_config_to_json(const LatticeConfig& config);
LatticeConfig lattice_config_from_json(const std::string& text);

}  // namespace ldlab

#endif

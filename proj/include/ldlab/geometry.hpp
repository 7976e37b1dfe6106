// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_GEOMETRY_HPP
#define LDLAB_GEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/common.hpp"

namespace ldlab {

/// Cube [-L/2, L/2]^3.
struct DomainBox {
  double L = 1.0;
};

/// Axis-aligned cuboid given by side lengths and center.
struct CuboidSpec {
  Vec3 side{1, 1, 1};
  Vec3 center{0, 0, 0};
};

/// Monopole q, dipole d, traceless quadrupole P of a signed density.
struct MultipoleMoments {
  double q = 0.0;
  Vec3 d{0, 0, 0};
  Mat3 P{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
};

/// Dense boolean occupancy on an n^3 grid over a DomainBox. Cells are cubes of
/// pitch h = L/n; cell (i,j,k) has center -L/2 + (i+1/2)h per axis. Values are
/// immutable after construction.
class VoxelSet {
 public:
  VoxelSet(DomainBox box, int n);
  VoxelSet(DomainBox box, int n, std::vector<uint8_t> occupancy);

  /// Membership by cell-center sampling of a predicate.
  static VoxelSet voxelize(DomainBox box, int n,
                           const std::function<bool(const Vec3&)>& inside);

  const DomainBox& box() const { return box_; }
  int n() const { return n_; }
  double h() const { return box_.L / n_; }
  long long occupied_count() const { return count_; }
  const std::vector<uint8_t>& occupancy() const { return occ_; }

  long long index(int i, int j, int k) const {
    return ((long long)k * n_ + j) * n_ + i;  // x fastest
  }
  bool occupied(int i, int j, int k) const { return occ_[index(i, j, k)] != 0; }
  Vec3 cell_center(int i, int j, int k) const {
    double hh = h(), o = -0.5 * box_.L + 0.5 * hh;
    return {o + i * hh, o + j * hh, o + k * hh};
  }

 private:
  DomainBox box_;
  int n_;
  std::vector<uint8_t> occ_;
  long long count_;
};

double volume(const VoxelSet& set);

/// Face-count perimeter: h^2 per face between an occupied cell and an
/// unoccupied or exterior cell (l1-anisotropic discrete perimeter).
double perimeter(const VoxelSet& set);

/// h^2 * number of (occupied cell, domain-box face) incidences.
double box_face_area(const VoxelSet& set);

/// Outer diameter bound: max center distance over occupied cells + sqrt(3) h.
double diameter(const VoxelSet& set);

VoxelSet complement_in_box(const VoxelSet& set);

/// Moments of 1_set - theta * 1_background (background part analytic). Without a
/// background, plain moments of the occupied region.
MultipoleMoments moments(const VoxelSet& set, double theta,
                         const std::optional<CuboidSpec>& background);

/// Box localization. R must be an integer multiple k of the pitch; shifts are
/// quantized to the h/R grid so that cut planes coincide with voxel faces. The
/// k^3 distinct integer shifts s in [0,k)^3 put cuts between cells p-1 and p
/// whenever p = s (mod k).
struct LocalizeGrid {
  int k;                       // R / h
  std::array<int, 3> s;        // integer shift per axis
};

LocalizeGrid quantize_shift(const VoxelSet& set, double R, const Vec3& mu);
Vec3 shift_to_mu(const VoxelSet& set, double R, const std::array<int, 3>& s);

std::vector<VoxelSet> localize(const VoxelSet& set, double R, const Vec3& mu);
std::vector<VoxelSet> localize_by_shift(const VoxelSet& set, int k,
                                        const std::array<int, 3>& s);

/// Sum of piece perimeters for a given integer shift, computed by exact face
/// counting (Per(set) + 2 h^2 * cut internal faces).
double piece_perimeter_sum(const VoxelSet& set, int k, const std::array<int, 3>& s);

/// `.vox` file: text header "L n\n", then n^3 bits packed 8 per byte,
/// little-endian bit order, x-fastest cell order.
void save_vox(const VoxelSet& set, const std::string& path);
VoxelSet load_vox(const std::string& path);

}  // namespace ldlab

#endif

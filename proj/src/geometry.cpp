// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "ldlab/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace ldlab {

namespace {

void check_box_grid(const DomainBox& box, int n) {
  if (!(box.L > 0)) throw std::invalid_argument("DomainBox: L must be positive");
  if (n < 1) throw std::invalid_argument("VoxelSet: n must be a positive integer");
}

}  // namespace

VoxelSet::VoxelSet(DomainBox box, int n) : box_(box), n_(n), count_(0) {
  check_box_grid(box, n);
  occ_.assign((size_t)n * n * n, 0);
}

VoxelSet::VoxelSet(DomainBox box, int n, std::vector<uint8_t> occupancy)
    : box_(box), n_(n), occ_(std::move(occupancy)) {
  check_box_grid(box, n);
  if (occ_.size() != (size_t)n * n * n)
    throw std::invalid_argument("VoxelSet: occupancy must address exactly n^3 cells");
  count_ = 0;
  for (uint8_t v : occ_) count_ += (v != 0);
}

VoxelSet VoxelSet::voxelize(DomainBox box, int n,
                            const std::function<bool(const Vec3&)>& inside) {
  check_box_grid(box, n);
  std::vector<uint8_t> occ((size_t)n * n * n, 0);
  double h = box.L / n, o = -0.5 * box.L + 0.5 * h;
  size_t idx = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++idx)
        occ[idx] = inside({o + i * h, o + j * h, o + k * h}) ? 1 : 0;
  return VoxelSet(box, n, std::move(occ));
}

double volume(const VoxelSet& set) {
  double h = set.h();
  return h * h * h * (double)set.occupied_count();
}

double perimeter(const VoxelSet& set) {
  const int n = set.n();
  long long faces = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (!set.occupied(i, j, k)) continue;
        faces += (i == 0 || !set.occupied(i - 1, j, k));
        faces += (i == n - 1 || !set.occupied(i + 1, j, k));
        faces += (j == 0 || !set.occupied(i, j - 1, k));
        faces += (j == n - 1 || !set.occupied(i, j + 1, k));
        faces += (k == 0 || !set.occupied(i, j, k - 1));
        faces += (k == n - 1 || !set.occupied(i, j, k + 1));
      }
  double h = set.h();
  return h * h * (double)faces;
}

double box_face_area(const VoxelSet& set) {
  const int n = set.n();
  long long faces = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (!set.occupied(i, j, k)) continue;
        faces += (i == 0) + (i == n - 1) + (j == 0) + (j == n - 1) + (k == 0) +
                 (k == n - 1);
      }
  double h = set.h();
  return h * h * (double)faces;
}

double diameter(const VoxelSet& set) {
  if (set.occupied_count() == 0)
    throw std::invalid_argument("diameter: empty set");
  const int n = set.n();
  // The max-distance pair is attained among cells with at least one exposed
  // face (strictly interior cells cannot be extremal in any direction).
  std::vector<Vec3> surf;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (!set.occupied(i, j, k)) continue;
        bool exposed = (i == 0 || !set.occupied(i - 1, j, k)) ||
                       (i == n - 1 || !set.occupied(i + 1, j, k)) ||
                       (j == 0 || !set.occupied(i, j - 1, k)) ||
                       (j == n - 1 || !set.occupied(i, j + 1, k)) ||
                       (k == 0 || !set.occupied(i, j, k - 1)) ||
                       (k == n - 1 || !set.occupied(i, j, k + 1));
        if (exposed) surf.push_back(set.cell_center(i, j, k));
      }
  double best = 0.0;
  for (size_t a = 0; a < surf.size(); ++a)
    for (size_t b = a + 1; b < surf.size(); ++b)
      best = std::max(best, norm2(surf[a] - surf[b]));
  return std::sqrt(best) + std::sqrt(3.0) * set.h();
}

VoxelSet complement_in_box(const VoxelSet& set) {
  std::vector<uint8_t> occ(set.occupancy());
  for (auto& v : occ) v = v ? 0 : 1;
  return VoxelSet(set.box(), set.n(), std::move(occ));
}

MultipoleMoments moments(const VoxelSet& set, double theta,
                         const std::optional<CuboidSpec>& background) {
  const int n = set.n();
  const double h = set.h(), cellv = h * h * h;
  if (background) {
    // Background must contain the occupied cells' support.
    const CuboidSpec& b = *background;
    double slack = 1e-9 * set.box().L;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          if (!set.occupied(i, j, k)) continue;
          Vec3 c = set.cell_center(i, j, k);
          for (int ax = 0; ax < 3; ++ax) {
            if (std::abs(c[ax] - b.center[ax]) + 0.5 * h >
                0.5 * b.side[ax] + slack)
              throw std::invalid_argument(
                  "moments: background cuboid does not contain the set support");
          }
        }
  }

  // Midpoint per cell is exact for the monopole, dipole, and traceless
  // quadrupole of a union of cubes (the h^2/12 second-moment corrections
  // cancel in 3*x_i*x_j - delta_ij |x|^2).
  MultipoleMoments m;
  Accumulator q, d0, d1, d2;
  Mat3 P{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
  std::array<std::array<Accumulator, 3>, 3> Pacc;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (!set.occupied(i, j, k)) continue;
        Vec3 c = set.cell_center(i, j, k);
        q.add(cellv);
        d0.add(cellv * c[0]);
        d1.add(cellv * c[1]);
        d2.add(cellv * c[2]);
        double r2 = norm2(c);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            Pacc[a][b].add(cellv * (3.0 * c[a] * c[b] - (a == b ? r2 : 0.0)));
      }
  m.q = q.value();
  m.d = {d0.value(), d1.value(), d2.value()};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) P[a][b] = Pacc[a][b].value();

  if (background) {
    const CuboidSpec& bg = *background;
    double V = bg.side[0] * bg.side[1] * bg.side[2];
    const Vec3& c = bg.center;
    m.q -= theta * V;
    for (int a = 0; a < 3; ++a) m.d[a] -= theta * V * c[a];
    // second moments of the cuboid: int x_a x_b = V*(c_a c_b + delta_ab l_a^2/12)
    double r2_int = norm2(c) + (bg.side[0] * bg.side[0] + bg.side[1] * bg.side[1] +
                                bg.side[2] * bg.side[2]) / 12.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double m2 = V * (c[a] * c[b] +
                         (a == b ? bg.side[a] * bg.side[a] / 12.0 : 0.0));
        P[a][b] -= theta * (3.0 * m2 - (a == b ? V * r2_int : 0.0));
      }
  }
  m.P = P;
  return m;
}

LocalizeGrid quantize_shift(const VoxelSet& set, double R, const Vec3& mu) {
  double h = set.h();
  double kf = R / h;
  int k = (int)std::llround(kf);
  if (k < 1 || std::abs(kf - k) > 1e-9)
    throw std::invalid_argument("localize: R must be a positive integer multiple of h");
  LocalizeGrid g;
  g.k = k;
  for (int ax = 0; ax < 3; ++ax) {
    if (mu[ax] < -0.5 - 1e-12 || mu[ax] >= 0.5 + 1e-12)
      throw std::invalid_argument("localize: mu components must lie in [-1/2, 1/2)");
    // cut planes sit at x = R (m + mu + 1/2); in cell-index units that is
    // p = (mu + 1/2) k + n/2 (mod k)
    double ps = (mu[ax] + 0.5) * k + 0.5 * set.n();
    long long s = (long long)std::llround(ps);
    g.s[ax] = (int)(((s % k) + k) % k);
  }
  return g;
}

Vec3 shift_to_mu(const VoxelSet& set, double R, const std::array<int, 3>& s) {
  double h = set.h();
  Vec3 mu;
  for (int ax = 0; ax < 3; ++ax) {
    double v = (s[ax] * h - 0.5 * set.box().L) / R - 0.5;
    v -= std::floor(v + 0.5);  // wrap to [-1/2, 1/2)
    if (v >= 0.5) v -= 1.0;
    mu[ax] = v;
  }
  return mu;
}

std::vector<VoxelSet> localize_by_shift(const VoxelSet& set, int k,
                                        const std::array<int, 3>& s) {
  const int n = set.n();
  auto block_of = [&](int i, int ax) { return (int)std::floor((double)(i - s[ax]) / k); };
  std::map<std::array<int, 3>, std::vector<uint8_t>> pieces;
  for (int kk = 0; kk < n; ++kk)
    for (int jj = 0; jj < n; ++jj)
      for (int ii = 0; ii < n; ++ii) {
        if (!set.occupied(ii, jj, kk)) continue;
        std::array<int, 3> b{block_of(ii, 0), block_of(jj, 1), block_of(kk, 2)};
        auto it = pieces.find(b);
        if (it == pieces.end())
          it = pieces.emplace(b, std::vector<uint8_t>((size_t)n * n * n, 0)).first;
        it->second[set.index(ii, jj, kk)] = 1;
      }
  std::vector<VoxelSet> out;
  out.reserve(pieces.size());
  for (auto& kv : pieces) out.emplace_back(set.box(), n, std::move(kv.second));
  return out;
}

std::vector<VoxelSet> localize(const VoxelSet& set, double R, const Vec3& mu) {
  LocalizeGrid g = quantize_shift(set, R, mu);
  return localize_by_shift(set, g.k, g.s);
}

double piece_perimeter_sum(const VoxelSet& set, int k, const std::array<int, 3>& s) {
  const int n = set.n();
  // Cutting through an occupied-occupied internal face adds two new faces.
  long long cut = 0;
  for (int kk = 0; kk < n; ++kk)
    for (int jj = 0; jj < n; ++jj)
      for (int ii = 0; ii < n; ++ii) {
        if (!set.occupied(ii, jj, kk)) continue;
        if (ii + 1 < n && set.occupied(ii + 1, jj, kk) && ((ii + 1 - s[0]) % k + k) % k == 0) ++cut;
        if (jj + 1 < n && set.occupied(ii, jj + 1, kk) && ((jj + 1 - s[1]) % k + k) % k == 0) ++cut;
        if (kk + 1 < n && set.occupied(ii, jj, kk + 1) && ((kk + 1 - s[2]) % k + k) % k == 0) ++cut;
      }
  double h = set.h();
  return perimeter(set) + 2.0 * h * h * (double)cut;
}

void save_vox(const VoxelSet& set, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_vox: cannot open " + path);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), set.box().L);
  f << std::string(buf, res.ptr) << " " << set.n() << "\n";
  const auto& occ = set.occupancy();
  size_t total = occ.size();
  std::vector<uint8_t> packed((total + 7) / 8, 0);
  for (size_t b = 0; b < total; ++b)
    if (occ[b]) packed[b >> 3] |= (uint8_t)(1u << (b & 7));
  f.write((const char*)packed.data(), (std::streamsize)packed.size());
  if (!f) throw std::runtime_error("save_vox: write failed for " + path);
}

VoxelSet load_vox(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_vox: cannot open " + path);
  std::string header;
  std::getline(f, header);
  std::istringstream hs(header);
  double L;
  int n;
  if (!(hs >> L >> n)) throw std::runtime_error("load_vox: bad header in " + path);
  size_t total = (size_t)n * n * n;
  std::vector<uint8_t> packed((total + 7) / 8);
  f.read((char*)packed.data(), (std::streamsize)packed.size());
  if ((size_t)f.gcount() != packed.size())
    throw std::runtime_error("load_vox: truncated payload in " + path);
  std::vector<uint8_t> occ(total, 0);
  for (size_t b = 0; b < total; ++b)
    occ[b] = (packed[b >> 3] >> (b & 7)) & 1u;
  return VoxelSet(DomainBox{L}, n, std::move(occ));
}

}  // namespace ldlab

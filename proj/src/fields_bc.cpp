// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "ldlab/fields_bc.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "ldlab/fft.hpp"
#include "ldlab/quad.hpp"

namespace ldlab {

namespace {

// ------------------------------------------------------------------ 1D bases
struct AxisBasis {
  int n;
  std::vector<double> S;       // n*n, S[i*n + m] = mode m sampled at cell i, orthonormal
  std::vector<double> eig;     // unit-pitch eigenvalue per mode: 2 - 2 cos(angle)
};

AxisBasis build_basis(BoundaryCondition bc, int n) {
  AxisBasis b;
  b.n = n;
  b.S.assign((size_t)n * n, 0.0);
  b.eig.assign(n, 0.0);
  auto set_mode = [&](int m, auto&& f, double eig) {
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = f(i);
      b.S[(size_t)i * n + m] = v;
      nrm += v * v;
    }
    nrm = 1.0 / std::sqrt(nrm);
    for (int i = 0; i < n; ++i) b.S[(size_t)i * n + m] *= nrm;
    b.eig[m] = eig;
  };
  switch (bc) {
    case BoundaryCondition::Dirichlet:
      for (int m = 0; m < n; ++m) {
        double ang = kPi * (m + 1) / n;
        set_mode(m, [&](int i) { return std::sin(ang * (i + 0.5)); },
                 2.0 - 2.0 * std::cos(ang));
      }
      break;
    case BoundaryCondition::Neumann:
      for (int m = 0; m < n; ++m) {
        double ang = kPi * m / n;
        set_mode(m, [&](int i) { return m == 0 ? 1.0 : std::cos(ang * (i + 0.5)); },
                 2.0 - 2.0 * std::cos(ang));
      }
      break;
    case BoundaryCondition::Periodic: {
      int m = 0;
      set_mode(m++, [](int) { return 1.0; }, 0.0);
      for (int j = 1; 2 * j <= n - 1; ++j) {
        double ang = 2.0 * kPi * j / n;
        double eig = 2.0 - 2.0 * std::cos(ang);
        set_mode(m++, [&](int i) { return std::cos(ang * i); }, eig);
        set_mode(m++, [&](int i) { return std::sin(ang * i); }, eig);
      }
      if (n % 2 == 0)
        set_mode(m++, [](int i) { return (i % 2 == 0) ? 1.0 : -1.0; }, 4.0);
      break;
    }
    default:
      throw std::logic_error("build_basis: no transform basis for FreeSpace");
  }
  return b;
}

std::mutex g_basis_mutex;
std::map<std::pair<int, int>, AxisBasis> g_basis_cache;

const AxisBasis& basis_for(BoundaryCondition bc, int n) {
  std::lock_guard<std::mutex> lk(g_basis_mutex);
  auto key = std::make_pair((int)bc, n);
  auto it = g_basis_cache.find(key);
  if (it == g_basis_cache.end())
    it = g_basis_cache.emplace(key, build_basis(bc, n)).first;
  return it->second;
}

// y = M^T x (forward) or M x (inverse) applied along one axis of an n^3 cube.
void apply_axis(std::vector<double>& a, int n, int axis,
                const std::vector<double>& M, bool forward) {
  std::vector<double> line(n), res(n);
  long long sx = 1, sy = n, sz = (long long)n * n;
  long long stride = axis == 0 ? sx : (axis == 1 ? sy : sz);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      long long base;
      if (axis == 0) base = sy * u + sz * v;
      else if (axis == 1) base = sx * u + sz * v;
      else base = sx * u + sy * v;
      for (int i = 0; i < n; ++i) line[i] = a[base + stride * i];
      for (int m = 0; m < n; ++m) {
        double s = 0.0;
        if (forward)
          for (int i = 0; i < n; ++i) s += M[(size_t)i * n + m] * line[i];
        else
          for (int i = 0; i < n; ++i) s += M[(size_t)m * n + i] * line[i];
        res[m] = s;
      }
      for (int i = 0; i < n; ++i) a[base + stride * i] = res[i];
    }
}

double l2(const std::vector<double>& v) {
  Accumulator a;
  for (double x : v) a.add(x * x);
  return std::sqrt(a.value());
}

// Discrete Laplacian residual ||Lap_h v + rhs||_2 with the bc closure.
double residual_norm(const ScalarField& v, const std::vector<double>& rhs,
                     BoundaryCondition bc) {
  int n = v.n;
  double h2 = v.h() * v.h();
  Accumulator acc;
  auto val = [&](int i, int j, int k, int ci, int cj, int ck) -> double {
    if (i >= 0 && i < n && j >= 0 && j < n && k >= 0 && k < n)
      return v.values[v.index(i, j, k)];
    switch (bc) {
      case BoundaryCondition::Dirichlet:
        return -v.values[v.index(ci, cj, ck)];
      case BoundaryCondition::Neumann:
        return v.values[v.index(ci, cj, ck)];
      case BoundaryCondition::Periodic:
        return v.values[v.index((i + n) % n, (j + n) % n, (k + n) % n)];
      case BoundaryCondition::FreeSpace:
        return v.ext_at(i, j, k);
    }
    return 0.0;
  };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        double c = v.values[v.index(i, j, k)];
        double lap = val(i - 1, j, k, i, j, k) + val(i + 1, j, k, i, j, k) +
                     val(i, j - 1, k, i, j, k) + val(i, j + 1, k, i, j, k) +
                     val(i, j, k - 1, i, j, k) + val(i, j, k + 1, i, j, k) -
                     6.0 * c;
        double r = lap / h2 + rhs[v.index(i, j, k)];
        acc.add(r * r);
      }
  return std::sqrt(acc.value());
}

// --------------------------------------------------- lattice Green's function
//
// G(d) = int_0^inf prod_i e^{-2t} I_{d_i}(2t) dt, the decaying solution of
// 6G(d) - sum_nb G = delta_0. Numeric panels to T plus the analytic power tail
// from the I_n large-argument series.
double lattice_green_compute(int a, int b, int c) {
  int d[3] = {a, b, c};
  double r2 = (double)a * a + (double)b * b + (double)c * c;
  double T = std::max(2000.0, 40.0 * r2);
  const GaussRule& g = gauss_legendre(16);
  double total = 0.0;
  double lo = 0.0, hi = 0.5;
  while (lo < T) {
    hi = std::min(hi, T);
    for (size_t q = 0; q < g.x.size(); ++q) {
      double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[q];
      double w = 0.5 * (hi - lo) * g.w[q];
      double p = gsl_sf_bessel_In_scaled(d[0], 2.0 * t) *
                 gsl_sf_bessel_In_scaled(d[1], 2.0 * t) *
                 gsl_sf_bessel_In_scaled(d[2], 2.0 * t);
      total += w * p;
    }
    lo = hi;
    hi *= 2.0;
  }
  // raw asymptotic series e^{-2t} I_n(2t) = (4 pi t)^{-1/2} (1 + A1/t + A2/t^2 + A3/t^3 + ...)
  double A1[3], A2[3], A3[3];
  for (int i = 0; i < 3; ++i) {
    double m = 4.0 * d[i] * d[i];
    A1[i] = -(m - 1.0) / 16.0;
    A2[i] = (m - 1.0) * (m - 9.0) / 512.0;
    A3[i] = -(m - 1.0) * (m - 9.0) * (m - 25.0) / 24576.0;
  }
  double q1 = A1[0] + A1[1] + A1[2];
  double q2 = A2[0] + A2[1] + A2[2] + A1[0] * A1[1] + A1[0] * A1[2] + A1[1] * A1[2];
  double q3 = A3[0] + A3[1] + A3[2] + A1[0] * A1[1] * A1[2];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) q3 += A2[i] * A1[j];
  double cst = std::pow(4.0 * kPi, -1.5);
  double tail = cst * (2.0 / std::sqrt(T) + q1 * (2.0 / 3.0) * std::pow(T, -1.5) +
                       q2 * (2.0 / 5.0) * std::pow(T, -2.5) +
                       q3 * (2.0 / 7.0) * std::pow(T, -3.5));
  return total + tail;
}

std::mutex g_green_mutex;
std::unordered_map<long long, double> g_green_cache;

}  // namespace

double lattice_green(const std::array<int, 3>& dd) {
  int a = std::abs(dd[0]), b = std::abs(dd[1]), c = std::abs(dd[2]);
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  long long key = ((long long)a * 4096 + b) * 4096 + c;
  {
    std::lock_guard<std::mutex> lk(g_green_mutex);
    auto it = g_green_cache.find(key);
    if (it != g_green_cache.end()) return it->second;
  }
  double v = lattice_green_compute(a, b, c);
  std::lock_guard<std::mutex> lk(g_green_mutex);
  g_green_cache.emplace(key, v);
  return v;
}

namespace {

// Circular convolution of rhs (on [0,n)^3) with the lattice kernel, evaluated
// on [-m, n+m)^3. Transformed kernels are cached per (n, m, P).
struct KernelFft {
  int P = 0;
  std::vector<cdouble> K;
};

std::mutex g_kern_mutex;
std::map<std::pair<int, int>, KernelFft> g_kern_cache;

const KernelFft& kernel_fft(int n, int m) {
  std::lock_guard<std::mutex> lk(g_kern_mutex);
  auto key = std::make_pair(n, m);
  auto it = g_kern_cache.find(key);
  if (it != g_kern_cache.end()) return it->second;
  int reach = n + m - 1;          // max |offset| needed per axis
  int P = next_pow2(2 * reach + 1);
  KernelFft kf;
  kf.P = P;
  kf.K.assign((size_t)P * P * P, cdouble{0, 0});
  for (int dz = -reach; dz <= reach; ++dz)
    for (int dy = -reach; dy <= reach; ++dy)
      for (int dx = -reach; dx <= reach; ++dx) {
        long long idx = ((long long)((dz + P) % P) * P + ((dy + P) % P)) * P +
                        ((dx + P) % P);
        kf.K[idx] = lattice_green({dx, dy, dz});
      }
  fft3(kf.K, P, -1);
  return g_kern_cache.emplace(key, std::move(kf)).first->second;
}

std::vector<double> free_space_convolve(const std::vector<double>& rhs, int n,
                                        int m) {
  const KernelFft& kf = kernel_fft(n, m);
  int P = kf.P;
  std::vector<cdouble> A((size_t)P * P * P, cdouble{0, 0});
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        A[((long long)k * P + j) * P + i] = rhs[((long long)k * n + j) * n + i];
  fft3(A, P, -1);
  for (size_t i = 0; i < A.size(); ++i) A[i] *= kf.K[i];
  fft3(A, P, +1);
  double scale = 1.0 / ((double)P * P * P);
  int w = n + 2 * m;
  std::vector<double> out((size_t)w * w * w);
  for (int k = -m; k < n + m; ++k)
    for (int j = -m; j < n + m; ++j)
      for (int i = -m; i < n + m; ++i) {
        long long src = ((long long)((k + P) % P) * P + ((j + P) % P)) * P +
                        ((i + P) % P);
        out[((long long)(k + m) * w + (j + m)) * w + (i + m)] =
            A[src].real() * scale;
      }
  return out;
}

ScalarField solve_transform(const ScalarField& rhs, BoundaryCondition bc) {
  int n = rhs.n;
  const AxisBasis& B = basis_for(bc, n);
  std::vector<double> work = rhs.values;
  bool zero_mode = (bc != BoundaryCondition::Dirichlet);
  if (zero_mode) {
    double mean = 0.0;
    for (double x : work) mean += x;
    mean /= work.size();
    double scale = l2(work);
    if (std::abs(mean) * std::sqrt((double)work.size()) > 1e-10 * std::max(scale, 1e-300))
      throw std::invalid_argument("poisson_solve: rhs must have zero mean under N/P");
    for (double& x : work) x -= mean;
  }
  for (int ax = 0; ax < 3; ++ax) apply_axis(work, n, ax, B.S, true);
  double h2 = rhs.h() * rhs.h();
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        long long id = ((long long)c * n + b) * n + a;
        double eig = (B.eig[a] + B.eig[b] + B.eig[c]) / h2;
        work[id] = (eig == 0.0) ? 0.0 : work[id] / eig;
      }
  for (int ax = 0; ax < 3; ++ax) apply_axis(work, n, ax, B.S, false);
  if (zero_mode) {
    double mean = 0.0;
    for (double x : work) mean += x;
    mean /= work.size();
    for (double& x : work) x -= mean;
  }
  ScalarField v;
  v.box = rhs.box;
  v.n = n;
  v.values = std::move(work);
  return v;
}

ScalarField solve_free_space(const ScalarField& rhs, int margin) {
  ScalarField v;
  v.box = rhs.box;
  v.n = rhs.n;
  double h2 = rhs.h() * rhs.h();
  std::vector<double> conv = free_space_convolve(rhs.values, rhs.n, margin);
  for (double& x : conv) x *= h2;
  if (margin == 0) {
    v.values = std::move(conv);
  } else {
    v.ext_margin = margin;
    v.ext = std::move(conv);
    v.values.resize((size_t)rhs.n * rhs.n * rhs.n);
    for (int k = 0; k < rhs.n; ++k)
      for (int j = 0; j < rhs.n; ++j)
        for (int i = 0; i < rhs.n; ++i)
          v.values[v.index(i, j, k)] = v.ext_at(i, j, k);
  }
  return v;
}

void check_grid(int n) {
  if (n < 4) throw std::invalid_argument("fields: grid too coarse (n < 4)");
}

}  // namespace

ScalarField poisson_solve(const ScalarField& rhs, BoundaryCondition bc) {
  check_grid(rhs.n);
  ScalarField v;
  if (bc == BoundaryCondition::FreeSpace)
    v = solve_free_space(rhs, rhs.n / 2 + 1);
  else
    v = solve_transform(rhs, bc);
  double rn = residual_norm(v, rhs.values, bc);
  double scale = l2(rhs.values);
  if (rn > 1e-10 * std::max(scale, 1e-300))
    throw std::runtime_error("poisson_solve: residual contract violated");
  return v;
}

ScalarField potential(const VoxelSet& set, double theta, BoundaryCondition bc) {
  check_grid(set.n());
  if (bc == BoundaryCondition::Neumann || bc == BoundaryCondition::Periodic) {
    double L = set.box().L, h = set.h();
    double vol = volume(set);
    if (std::abs(vol - theta * L * L * L) > h * h * h * (1.0 + 1e-9))
      throw std::invalid_argument(
          "potential: set must be neutral to within one voxel for N/P");
  }
  ScalarField rhs;
  rhs.box = set.box();
  rhs.n = set.n();
  rhs.values.resize(set.occupancy().size());
  for (size_t i = 0; i < rhs.values.size(); ++i)
    rhs.values[i] = (set.occupancy()[i] ? 1.0 : 0.0) - theta;
  return poisson_solve(rhs, bc);
}

ScalarField potential_free_space_base(const VoxelSet& set, double theta) {
  check_grid(set.n());
  ScalarField rhs;
  rhs.box = set.box();
  rhs.n = set.n();
  rhs.values.resize(set.occupancy().size());
  for (size_t i = 0; i < rhs.values.size(); ++i)
    rhs.values[i] = (set.occupancy()[i] ? 1.0 : 0.0) - theta;
  return solve_free_space(rhs, 0);
}

double gradient_energy(const ScalarField& v, BoundaryCondition bc) {
  int n = v.n;
  double h = v.h();
  Accumulator acc;
  if (bc != BoundaryCondition::FreeSpace) {
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          double c = v.values[v.index(i, j, k)];
          if (i + 1 < n) {
            double d = v.values[v.index(i + 1, j, k)] - c;
            acc.add(d * d);
          }
          if (j + 1 < n) {
            double d = v.values[v.index(i, j + 1, k)] - c;
            acc.add(d * d);
          }
          if (k + 1 < n) {
            double d = v.values[v.index(i, j, k + 1)] - c;
            acc.add(d * d);
          }
        }
    if (bc == BoundaryCondition::Dirichlet) {
      // wall faces: v = 0 on the wall midway, ghost = -v; each contributes 2 v^2
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) {
            int walls = (i == 0) + (i == n - 1) + (j == 0) + (j == n - 1) +
                        (k == 0) + (k == n - 1);
            if (walls) {
              double c = v.values[v.index(i, j, k)];
              acc.add(2.0 * walls * c * c);
            }
          }
    } else if (bc == BoundaryCondition::Periodic) {
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
          double d0 = v.values[v.index(0, a, b)] - v.values[v.index(n - 1, a, b)];
          double d1 = v.values[v.index(a, 0, b)] - v.values[v.index(a, n - 1, b)];
          double d2 = v.values[v.index(a, b, 0)] - v.values[v.index(a, b, n - 1)];
          acc.add(d0 * d0 + d1 * d1 + d2 * d2);
        }
    }
    return 0.5 * h * acc.value();
  }
  // Free space: faces inside R = [-(m-1), n+m-1)^3 plus the exact flux
  // correction through its boundary; v is harmonic outside R, so
  //   sum_{all faces} (dv)^2 = sum_{faces in R} (dv)^2 - sum_cross (v_a - v_b) v_b
  // with a the outside cell of a crossing face.
  if (v.ext_margin < 1)
    throw std::invalid_argument("gradient_energy: free-space field lacks exterior data");
  int m = v.ext_margin;
  int lo = -(m - 1), hi = n + m - 1;  // R = [lo, hi)^3
  for (int k = lo; k < hi; ++k)
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        double c = v.ext_at(i, j, k);
        if (i + 1 < hi) {
          double d = v.ext_at(i + 1, j, k) - c;
          acc.add(d * d);
        }
        if (j + 1 < hi) {
          double d = v.ext_at(i, j + 1, k) - c;
          acc.add(d * d);
        }
        if (k + 1 < hi) {
          double d = v.ext_at(i, j, k + 1) - c;
          acc.add(d * d);
        }
      }
  Accumulator flux;
  auto cross = [&](int ai, int aj, int ak, int bi, int bj, int bk) {
    double va = v.ext_at(ai, aj, ak), vb = v.ext_at(bi, bj, bk);
    flux.add((va - vb) * vb);
  };
  for (int a = lo; a < hi; ++a)
    for (int b = lo; b < hi; ++b) {
      cross(lo - 1, a, b, lo, a, b);
      cross(hi, a, b, hi - 1, a, b);
      cross(a, lo - 1, b, a, lo, b);
      cross(a, hi, b, a, hi - 1, b);
      cross(a, b, lo - 1, a, b, lo);
      cross(a, b, hi, a, b, hi - 1);
    }
  return 0.5 * h * (acc.value() - flux.value());
}

void save_fld(const ScalarField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_fld: cannot open " + path);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), f.box.L);
  out << std::string(buf, res.ptr) << " " << f.n << "\n";
  static_assert(sizeof(double) == 8);
  out.write((const char*)f.values.data(),
            (std::streamsize)(f.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("save_fld: write failed for " + path);
}

ScalarField load_fld(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_fld: cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  double L;
  int n;
  if (!(hs >> L >> n)) throw std::runtime_error("load_fld: bad header in " + path);
  ScalarField f;
  f.box = DomainBox{L};
  f.n = n;
  f.values.resize((size_t)n * n * n);
  in.read((char*)f.values.data(), (std::streamsize)(f.values.size() * sizeof(double)));
  if ((size_t)in.gcount() != f.values.size() * sizeof(double))
    throw std::runtime_error("load_fld: truncated payload in " + path);
  return f;
}

}  // namespace ldlab

// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "ldlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ldlab/quad.hpp"

namespace ldlab {

double coulomb(const Vec3& x) {
  double r = norm(x);
  if (r == 0.0) throw std::invalid_argument("coulomb: singular input x = 0");
  return 1.0 / r;
}

double yukawa(double omega, const Vec3& x) {
  if (!(omega > 0.0)) throw std::invalid_argument("yukawa: omega must be positive");
  double r = norm(x);
  if (r == 0.0) throw std::invalid_argument("yukawa: singular input x = 0");
  return std::exp(-omega * r) / r;
}

double taylor_third_order(const Vec3& a, const Vec3& b) {
  double na = norm(a);
  if (na == 0.0) throw std::invalid_argument("taylor_third_order: a = 0");
  double nb = norm(b);
  if (na < 4.0 * nb)
    throw std::invalid_argument("taylor_third_order: requires |a| >= 4|b|");
  double ab = dot(a, b);
  double na3 = na * na * na;
  return 1.0 / na + ab / na3 + (3.0 * ab * ab - na * na * nb * nb) / (2.0 * na3 * na * na);
}

double yukawa_space_integral(double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("yukawa_space_integral: omega must be positive");
  return 4.0 * kPi / (omega * omega);
}

// ---------------------------------------------------------------------------
// Box integrals of kernels against per-axis affine weights.
//
// Everything below reduces to
//   I = int_B  prod_i (alpha_i + beta_i v_i) * k(|m .* v|)  dv
// over boxes B in the closed positive orthant, with m a positive diagonal
// metric and k either 1/r or exp(-a r)/r. Boxes with a corner at the origin
// use v = rho*u with u on the three unit faces (dv = rho^2 drho dsigma), which
// removes the 1/r singularity exactly; detached boxes use Gauss-Legendre once
// the distance-to-size ratio is resolved, with geometric bisection in between.
// ---------------------------------------------------------------------------

namespace {

struct AxisWeight {
  double alpha = 1.0, beta = 0.0;  // alpha + beta * v
};

struct KernelSpec {
  double yukawa_a = 0.0;  // 0 => Coulomb
};

constexpr int face_gl_order = 16;
constexpr int box_gl_order = 12;

// Composite panel edges on [0,1] graded toward 0 when the face has a boundary
// layer of width `scale` (ratio of the small extent to this axis extent).
std::vector<double> graded_edges(double scale) {
  std::vector<double> e{0.0};
  if (scale < 0.25) {
    double t = std::max(scale * 4.0, 1e-6);
    while (t < 0.25) {
      e.push_back(t);
      t *= 4.0;
    }
    e.push_back(0.25);
  }
  e.push_back(1.0);
  return e;
}

double kernel_over_r(double r, const KernelSpec& ks) {
  return ks.yukawa_a == 0.0 ? 1.0 / r : std::exp(-ks.yukawa_a * r) / r;
}

// Corner box [0,E] with weights, metric, kernel. Face f carries u_f = 1 and
// (p,q) on the other two axes; dv = rho^2 drho dp dq after v = rho*(E .* u).
double corner_box_integral(const Vec3& E, const std::array<AxisWeight, 3>& w,
                           const Vec3& m, const KernelSpec& ks) {
  double vol = E[0] * E[1] * E[2];
  if (vol == 0.0) return 0.0;
  const GaussRule& rho_rule = gauss_legendre(12);
  double total = 0.0;
  for (int f = 0; f < 3; ++f) {
    int a = (f + 1) % 3, b = (f + 2) % 3;
    double mf = m[f] * E[f], ma = m[a] * E[a], mb = m[b] * E[b];
    // boundary layer in p of width ~ mf/ma when the face normal is short
    auto ep = graded_edges(std::min(1.0, mf / std::max(ma, 1e-300)));
    auto eq = graded_edges(std::min(1.0, mf / std::max(mb, 1e-300)));
    for (size_t ip = 0; ip + 1 < ep.size(); ++ip) {
      GaussRule gp = gauss_on(face_gl_order, ep[ip], ep[ip + 1]);
      for (size_t iq = 0; iq + 1 < eq.size(); ++iq) {
        GaussRule gq = gauss_on(face_gl_order, eq[iq], eq[iq + 1]);
        for (int i = 0; i < face_gl_order; ++i) {
          double p = gp.x[i];
          for (int j = 0; j < face_gl_order; ++j) {
            double q = gq.x[j];
            // direction in metric units
            double rad = std::sqrt(mf * mf + ma * ma * p * p + mb * mb * q * q);
            // weight along the ray: prod(alpha_i + gamma_i rho), gamma = beta*E*u
            double gf = w[f].beta * E[f];
            double ga = w[a].beta * E[a] * p;
            double gb = w[b].beta * E[b] * q;
            double af = w[f].alpha, aa = w[a].alpha, ab = w[b].alpha;
            double ray;
            if (ks.yukawa_a == 0.0) {
              double c0 = af * aa * ab;
              double c1 = gf * aa * ab + af * ga * ab + af * aa * gb;
              double c2 = gf * ga * ab + gf * aa * gb + af * ga * gb;
              double c3 = gf * ga * gb;
              ray = c0 / 2.0 + c1 / 3.0 + c2 / 4.0 + c3 / 5.0;
            } else {
              ray = 0.0;
              for (size_t t = 0; t < rho_rule.x.size(); ++t) {
                double rho = 0.5 * (rho_rule.x[t] + 1.0);
                double wt = 0.5 * rho_rule.w[t];
                ray += wt * rho * std::exp(-ks.yukawa_a * rad * rho) *
                       (af + gf * rho) * (aa + ga * rho) * (ab + gb * rho);
              }
            }
            total += gp.w[i] * gq.w[j] * ray / rad;
          }
        }
      }
    }
  }
  return vol * total;
}

double weighted_box_integral(Vec3 lo, Vec3 hi, std::array<AxisWeight, 3> w,
                             const Vec3& m, const KernelSpec& ks, int depth) {
  for (int i = 0; i < 3; ++i)
    if (hi[i] - lo[i] <= 0.0) return 0.0;
  bool corner = (lo[0] == 0.0 && lo[1] == 0.0 && lo[2] == 0.0);
  if (corner) return corner_box_integral(hi, w, m, ks);

  Vec3 ext = hi - lo;
  Vec3 mlo = {m[0] * lo[0], m[1] * lo[1], m[2] * lo[2]};
  Vec3 mext = {m[0] * ext[0], m[1] * ext[1], m[2] * ext[2]};
  double dist = norm(mlo), diam = norm(mext);
  if (dist >= 0.45 * diam || depth >= 48 || diam < 1e-13 * (dist + diam)) {
    const GaussRule& g = gauss_legendre(box_gl_order);
    double total = 0.0;
    for (int i = 0; i < box_gl_order; ++i) {
      double x = lo[0] + ext[0] * 0.5 * (g.x[i] + 1.0);
      double wx = 0.5 * ext[0] * g.w[i] * (w[0].alpha + w[0].beta * x);
      for (int j = 0; j < box_gl_order; ++j) {
        double y = lo[1] + ext[1] * 0.5 * (g.x[j] + 1.0);
        double wy = 0.5 * ext[1] * g.w[j] * (w[1].alpha + w[1].beta * y);
        for (int k = 0; k < box_gl_order; ++k) {
          double z = lo[2] + ext[2] * 0.5 * (g.x[k] + 1.0);
          double wz = 0.5 * ext[2] * g.w[k] * (w[2].alpha + w[2].beta * z);
          double r = std::sqrt(m[0] * m[0] * x * x + m[1] * m[1] * y * y +
                               m[2] * m[2] * z * z);
          total += wx * wy * wz * kernel_over_r(r, ks);
        }
      }
    }
    return total;
  }
  int ax = 0;
  if (mext[1] > mext[ax]) ax = 1;
  if (mext[2] > mext[ax]) ax = 2;
  Vec3 mid_hi = hi, mid_lo = lo;
  double mid = 0.5 * (lo[ax] + hi[ax]);
  mid_hi[ax] = mid;
  mid_lo[ax] = mid;
  return weighted_box_integral(lo, mid_hi, w, m, ks, depth + 1) +
         weighted_box_integral(mid_lo, hi, w, m, ks, depth + 1);
}

// Integral over an arbitrary box of W(v)*k(|m v|) where W is a product of
// per-axis piecewise-affine factors with kink positions `kinks`. The box is
// split at the coordinate planes v_i = 0 and at the kinks, each closed piece
// is reflected into the positive orthant, and the affine weight on the piece
// is resolved there.
struct PiecewiseAxis {
  // weight factor along axis i: 1 - |v - g| style; general: value(v)
  double g = 0.0;       // kink position
  bool active = false;  // if false, weight factor is 1
};

double split_box_integral(const Vec3& lo, const Vec3& hi,
                          const std::array<PiecewiseAxis, 3>& pw, const Vec3& m,
                          const KernelSpec& ks) {
  std::array<std::vector<double>, 3> edges;
  for (int i = 0; i < 3; ++i) {
    edges[i].push_back(lo[i]);
    for (double c : {0.0, pw[i].g})
      if (c > lo[i] + 1e-14 && c < hi[i] - 1e-14) edges[i].push_back(c);
    edges[i].push_back(hi[i]);
    std::sort(edges[i].begin(), edges[i].end());
  }
  double total = 0.0;
  for (size_t ia = 0; ia + 1 < edges[0].size(); ++ia)
    for (size_t ib = 0; ib + 1 < edges[1].size(); ++ib)
      for (size_t ic = 0; ic + 1 < edges[2].size(); ++ic) {
        Vec3 plo{edges[0][ia], edges[1][ib], edges[2][ic]};
        Vec3 phi{edges[0][ia + 1], edges[1][ib + 1], edges[2][ic + 1]};
        // reflect to the positive orthant and resolve |v - g| affinely
        Vec3 rlo, rhi;
        std::array<AxisWeight, 3> w;
        bool degenerate = false;
        for (int i = 0; i < 3; ++i) {
          double s = (plo[i] + phi[i] < 0.0) ? -1.0 : 1.0;
          double a = s > 0 ? plo[i] : -phi[i];
          double b = s > 0 ? phi[i] : -plo[i];
          if (b - a <= 0.0) degenerate = true;
          rlo[i] = a;
          rhi[i] = b;
          if (pw[i].active) {
            // factor 1 - |v - g|, v = s*u on [a,b]: argument s*u - g has a
            // fixed sign on the piece; evaluate at the midpoint to pick it.
            double vm = s * 0.5 * (a + b) - pw[i].g;
            double sign = vm >= 0.0 ? 1.0 : -1.0;
            // 1 - sign*(s*u - g) = (1 + sign*g) + (-sign*s) * u
            w[i].alpha = 1.0 + sign * pw[i].g;
            w[i].beta = -sign * s;
          } else {
            w[i] = AxisWeight{1.0, 0.0};
          }
        }
        if (degenerate) continue;
        total += weighted_box_integral(rlo, rhi, w, m, ks, 0);
      }
  return total;
}

}  // namespace

double box_potential(const Vec3& lo, const Vec3& hi) {
  std::array<PiecewiseAxis, 3> pw{};  // unit weights
  return split_box_integral(lo, hi, pw, {1, 1, 1}, KernelSpec{});
}

double cube_potential_integral(double l, const Vec3& mu) {
  if (!(l > 0.0))
    throw std::invalid_argument("cube_potential_integral: l must be positive");
  Vec3 lo{l * mu[0] - 0.5 * l, l * mu[1] - 0.5 * l, l * mu[2] - 0.5 * l};
  Vec3 hi{l * mu[0] + 0.5 * l, l * mu[1] + 0.5 * l, l * mu[2] + 0.5 * l};
  return box_potential(lo, hi);
}

double cube_potential_center() {
  static const double c0 = cube_potential_integral(1.0, {0, 0, 0});
  return c0;
}

namespace {

double cell_pair_impl(const std::array<int, 3>& d, const Vec3& lambda,
                      const KernelSpec& ks) {
  // int_{[-1,1]^3} prod(1-|u_i|) k(|lambda .* (u+d)|) du, shifted to v = u+d.
  int dinf = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
  if (dinf >= 3) {
    // well-separated cells: plain tensor Gauss-Legendre on the original form
    const GaussRule& g = gauss_legendre(16);
    double total = 0.0;
    for (size_t i = 0; i < g.x.size(); ++i)
      for (size_t j = 0; j < g.x.size(); ++j)
        for (size_t k = 0; k < g.x.size(); ++k) {
          double ux = g.x[i], uy = g.x[j], uz = g.x[k];
          double wt = g.w[i] * g.w[j] * g.w[k] * (1 - std::abs(ux)) *
                      (1 - std::abs(uy)) * (1 - std::abs(uz));
          double vx = lambda[0] * (ux + d[0]);
          double vy = lambda[1] * (uy + d[1]);
          double vz = lambda[2] * (uz + d[2]);
          total += wt * kernel_over_r(std::sqrt(vx * vx + vy * vy + vz * vz), ks);
        }
    return total;
  }
  Vec3 lo{d[0] - 1.0, d[1] - 1.0, d[2] - 1.0};
  Vec3 hi{d[0] + 1.0, d[1] + 1.0, d[2] + 1.0};
  std::array<PiecewiseAxis, 3> pw;
  for (int i = 0; i < 3; ++i) pw[i] = PiecewiseAxis{(double)d[i], true};
  return split_box_integral(lo, hi, pw, lambda, ks);
}

}  // namespace

double coulomb_cell_pair(const std::array<int, 3>& d) {
  return cell_pair_impl(d, {1, 1, 1}, KernelSpec{});
}

double coulomb_cell_self() {
  static const double c1 = coulomb_cell_pair({0, 0, 0});
  return c1;
}

double coulomb_cell_pair_aniso(const std::array<int, 3>& d, const Vec3& lambda) {
  return cell_pair_impl(d, lambda, KernelSpec{});
}

double yukawa_cell_pair(const std::array<int, 3>& d, double omega_h) {
  if (!(omega_h > 0.0))
    throw std::invalid_argument("yukawa_cell_pair: omega must be positive");
  return cell_pair_impl(d, {1, 1, 1}, KernelSpec{omega_h});
}

}  // namespace ldlab

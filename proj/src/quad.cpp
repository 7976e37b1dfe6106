// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "ldlab/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ldlab {

namespace {

GaussRule compute_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

std::mutex g_mutex;
std::map<int, GaussRule> g_cache;

}  // namespace

const GaussRule& gauss_legendre(int order) {
  std::lock_guard<std::mutex> lk(g_mutex);
  auto it = g_cache.find(order);
  if (it == g_cache.end()) it = g_cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

GaussRule gauss_on(int order, double a, double b) {
  const GaussRule& base = gauss_legendre(order);
  GaussRule r;
  r.x.resize(order);
  r.w.resize(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    r.x[i] = mid + half * base.x[i];
    r.w[i] = half * base.w[i];
  }
  return r;
}

}  // namespace ldlab

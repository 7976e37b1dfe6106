// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_QUAD_HPP
#define LDLAB_QUAD_HPP

#include <vector>

namespace ldlab {

/// Gauss-Legendre rule on [-1, 1]; nodes/weights computed once per order and cached.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_legendre(int order);

/// Nodes mapped to [a, b] with matching weights.
GaussRule gauss_on(int order, double a, double b);

}  // namespace ldlab

#endif

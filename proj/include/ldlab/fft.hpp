// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_FFT_HPP
#define LDLAB_FFT_HPP

#include <complex>
#include <vector>

namespace ldlab {

using cdouble = std::complex<double>;

/// In-place radix-2 FFT; size must be a power of two. sign=-1 forward, +1 inverse
/// (inverse is unnormalized).
void fft_pow2(cdouble* data, int n, int sign);

/// 3D FFT on an n^3 cube (n a power of two), in-place, x-fastest layout.
void fft3(std::vector<cdouble>& a, int n, int sign);

int next_pow2(int n);

}  // namespace ldlab

#endif

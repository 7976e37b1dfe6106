// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "ldlab/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ldlab {

namespace {

std::mutex g_tw_mutex;
std::map<std::pair<int, int>, std::vector<cdouble>> g_twiddles;

const std::vector<cdouble>& twiddles(int n, int sign) {
  std::lock_guard<std::mutex> lk(g_tw_mutex);
  auto key = std::make_pair(n, sign);
  auto it = g_twiddles.find(key);
  if (it == g_twiddles.end()) {
    std::vector<cdouble> tw(n / 2);
    for (int i = 0; i < n / 2; ++i) {
      double ang = sign * 2.0 * M_PI * i / n;
      tw[i] = {std::cos(ang), std::sin(ang)};
    }
    it = g_twiddles.emplace(key, std::move(tw)).first;
  }
  return it->second;
}

}  // namespace

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(cdouble* a, int n, int sign) {
  if (n & (n - 1)) throw std::invalid_argument("fft_pow2: size not a power of two");
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const std::vector<cdouble>& tw = twiddles(n, sign);
  for (int len = 2; len <= n; len <<= 1) {
    int step = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < len / 2; ++k) {
        cdouble u = a[i + k];
        cdouble v = a[i + k + len / 2] * tw[k * step];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

void fft3(std::vector<cdouble>& a, int n, int sign) {
  if ((long long)n * n * n != (long long)a.size())
    throw std::invalid_argument("fft3: size mismatch");
  std::vector<cdouble> line(n);
  // x lines (contiguous)
  for (long long off = 0; off < (long long)n * n * n; off += n)
    fft_pow2(a.data() + off, n, sign);
  // y lines
  for (int z = 0; z < n; ++z)
    for (int x = 0; x < n; ++x) {
      long long base = (long long)z * n * n + x;
      for (int y = 0; y < n; ++y) line[y] = a[base + (long long)y * n];
      fft_pow2(line.data(), n, sign);
      for (int y = 0; y < n; ++y) a[base + (long long)y * n] = line[y];
    }
  // z lines
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      long long base = (long long)y * n + x;
      for (int z = 0; z < n; ++z) line[z] = a[base + (long long)z * n * n];
      fft_pow2(line.data(), n, sign);
      for (int z = 0; z < n; ++z) a[base + (long long)z * n * n] = line[z];
    }
}

}  // namespace ldlab

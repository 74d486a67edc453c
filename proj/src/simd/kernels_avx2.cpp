// Copyright 2026 The relaqm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma; only reached through avx2_kernels() after a
// CPUID check. One __m256d holds two complex doubles as [re0, im0, re1, im1].

#include <immintrin.h>

#include "relaqm/simd/kernels.hpp"

namespace relaqm::simd {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im);
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  double sum_re = (re[0] + re[1]) + (re[2] + re[3]);
  double sum_im = (im[0] - im[1]) + (im[2] - im[3]);
  for (; i < n; ++i) {
    sum_re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    sum_im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {sum_re, sum_im};
}

double norm2_avx2(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) sum += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return sum;
}

void abs2_avx2(const cplx* a, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = load2(a + i);
    const __m256d hi = load2(a + i + 2);
    // hadd gives [|a0|^2, |a2|^2, |a1|^2, |a3|^2]
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0b11011000));
  }
  for (; i < n; ++i) out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = load2(x + i);
    const __m256d cross = _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0b0101));
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, vx, cross);
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  for (; i < n; ++i) {
    y[i] = {y[i].real() + alpha.real() * x[i].real() - alpha.imag() * x[i].imag(),
            y[i].imag() + alpha.real() * x[i].imag() + alpha.imag() * x[i].real()};
  }
}

void gemv_avx2(const cplx* a, std::size_t rows, std::size_t cols, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) axpy_avx2(x[c], a + c * rows, y, rows);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", cdot_avx2, norm2_avx2, abs2_avx2, axpy_avx2, gemv_avx2};
  return table;
}

}  // namespace relaqm::simd

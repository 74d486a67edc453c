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

#pragma once

// Complex double inner-loop kernels. Every kernel has a scalar reference
// implementation; an AVX2/FMA variant is compiled on x86-64 and picked at
// runtime when the CPU supports it. Setting RELAQM_SIMD=scalar in the
// environment forces the reference path.

#include <complex>
#include <cstddef>
#include <span>

namespace relaqm::simd {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  // sum_i conj(a_i) * b_i
  cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i |a_i|^2
  double (*norm2)(const cplx* a, std::size_t n);
  // out_i = |a_i|^2
  void (*abs2)(const cplx* a, double* out, std::size_t n);
  // y += alpha * x
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // y = A x, A column-major rows x cols
  void (*gemv)(const cplx* a, std::size_t rows, std::size_t cols, const cplx* x, cplx* y);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();

inline cplx cdot(std::span<const cplx> a, std::span<const cplx> b) {
  return active_kernels().cdot(a.data(), b.data(), a.size());
}

inline double norm2(std::span<const cplx> a) { return active_kernels().norm2(a.data(), a.size()); }

inline void abs2(std::span<const cplx> a, std::span<double> out) {
  active_kernels().abs2(a.data(), out.data(), a.size());
}

inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                 std::span<const cplx> x, std::span<cplx> y) {
  active_kernels().gemv(a.data(), rows, cols, x.data(), y.data());
}

}  // namespace relaqm::simd

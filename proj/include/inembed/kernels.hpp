// Copyright 2026 The inembed Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Dense inner-loop kernels over double vectors. Every kernel has a scalar
// reference implementation; AVX2+FMA (x86-64) and NEON (aarch64) variants
// are compiled when the target allows and selected at runtime. The variants
// agree with the reference up to floating-point reassociation.
namespace inembed::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

using DotFn = double (*)(const double* a, const double* b, std::size_t n);
// y += alpha * x
using AxpyFn = void (*)(double alpha, const double* x, double* y, std::size_t n);

struct KernelSet {
  Isa isa;
  std::string_view name;
  DotFn dot;
  AxpyFn axpy;
};

const KernelSet& scalar_kernels();

// Variants this binary was built with and the CPU can run, scalar first.
std::vector<const KernelSet*> available();
bool supported(Isa isa);

// The dispatched set: the widest supported variant, unless overridden by
// select() or the INEMBED_ISA environment variable (scalar|avx2|neon).
const KernelSet& active();
// Throws inembed::Error when the variant is unavailable.
void select(Isa isa);
Isa parse_isa(std::string_view name);

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
#if defined(INEMBED_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
#endif
#if defined(INEMBED_HAVE_NEON)
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace inembed::kernels

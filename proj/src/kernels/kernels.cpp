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

#include "inembed/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "inembed/error.hpp"

namespace inembed::kernels {

namespace {

constexpr KernelSet kScalar{Isa::kScalar, "scalar", &detail::dot_scalar, &detail::axpy_scalar};
#if defined(INEMBED_HAVE_AVX2)
constexpr KernelSet kAvx2{Isa::kAvx2, "avx2", &detail::dot_avx2, &detail::axpy_avx2};
#endif
#if defined(INEMBED_HAVE_NEON)
constexpr KernelSet kNeon{Isa::kNeon, "neon", &detail::dot_neon, &detail::axpy_neon};
#endif

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(INEMBED_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(INEMBED_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelSet* lookup(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &kScalar;
    case Isa::kAvx2:
#if defined(INEMBED_HAVE_AVX2)
      return cpu_has(isa) ? &kAvx2 : nullptr;
#else
      return nullptr;
#endif
    case Isa::kNeon:
#if defined(INEMBED_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelSet* pick_default() {
  if (const char* env = std::getenv("INEMBED_ISA"); env && *env) {
    if (const KernelSet* set = lookup(parse_isa(env))) return set;
    throw Error(std::string("INEMBED_ISA=") + env + " is not supported on this machine");
  }
  auto all = available();
  return all.back();
}

std::atomic<const KernelSet*>& current() {
  static std::atomic<const KernelSet*> set{pick_default()};
  return set;
}

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

std::vector<const KernelSet*> available() {
  std::vector<const KernelSet*> out{&kScalar};
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (const KernelSet* set = lookup(isa)) out.push_back(set);
  }
  return out;
}

bool supported(Isa isa) { return cpu_has(isa) && lookup(isa) != nullptr; }

const KernelSet& active() { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) {
  const KernelSet* set = lookup(isa);
  if (!set) throw Error("kernel variant not available on this machine");
  current().store(set, std::memory_order_relaxed);
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  if (name == "neon") return Isa::kNeon;
  throw Error("unknown kernel variant '" + std::string(name) + "'");
}

}  // namespace inembed::kernels

/*
 * Copyright 2026 the lmpt authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <string>

// Arithmetic inner loops used by the backbone and optimizer. The scalar
// implementations are the reference semantics; the AVX2 variants are selected
// at runtime when the CPU supports them and are equivalence-tested against
// the scalar path. Reductions use a fixed block order per backend, so any
// single backend is fully deterministic.
//
// Backend selection: LMPT_KERNELS=scalar|avx2|auto (default auto).

namespace lmpt::kern {

enum class Backend { scalar, avx2 };

template <typename T>
struct Kernels {
    // dot(x, y, n) = sum_i x[i]*y[i]
    T (*dot)(const T*, const T*, size_t);
    // y += a*x
    void (*axpy)(T, const T*, T*, size_t);
    // x *= a
    void (*scal)(T, T*, size_t);
    T (*sum)(const T*, size_t);
    T (*max)(const T*, size_t);  // n >= 1
    // C[MxN] = A[MxK] * B[NxK]^T   (rows of B are the "output features")
    void (*gemm_nt)(const T* a, const T* b, T* c, size_t m, size_t n, size_t k);
    // C[MxN] = A[MxK] * B[KxN]
    void (*gemm_nn)(const T* a, const T* b, T* c, size_t m, size_t n, size_t k);
    // C[MxN] += A[KxM]^T * B[KxN]
    void (*gemm_tn_acc)(const T* a, const T* b, T* c, size_t m, size_t n, size_t k);
};

Backend active_backend();
const char* backend_name(Backend b);
bool cpu_has_avx2();

template <typename T>
const Kernels<T>& table(Backend b);

// Table for the active backend.
template <typename T>
inline const Kernels<T>& get() {
    return table<T>(active_backend());
}

}  // namespace lmpt::kern

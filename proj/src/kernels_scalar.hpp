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

// Scalar reference kernels. Straight left-to-right loops; these define the
// semantics the SIMD variants are tested against.

namespace lmpt::kern::scalar {

template <typename T>
T dot(const T* x, const T* y, size_t n) {
    T acc = T(0);
    for (size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

template <typename T>
void axpy(T a, const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <typename T>
void scal(T a, T* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= a;
}

template <typename T>
T sum(const T* x, size_t n) {
    T acc = T(0);
    for (size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

template <typename T>
T max(const T* x, size_t n) {
    T m = x[0];
    for (size_t i = 1; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

template <typename T>
void gemm_nt(const T* a, const T* b, T* c, size_t m, size_t n, size_t k) {
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) c[i * n + j] = dot(a + i * k, b + j * k, k);
}

template <typename T>
void gemm_nn(const T* a, const T* b, T* c, size_t m, size_t n, size_t k) {
    for (size_t i = 0; i < m; ++i) {
        T* ci = c + i * n;
        for (size_t j = 0; j < n; ++j) ci[j] = T(0);
        for (size_t p = 0; p < k; ++p) axpy(a[i * k + p], b + p * n, ci, n);
    }
}

template <typename T>
void gemm_tn_acc(const T* a, const T* b, T* c, size_t m, size_t n, size_t k) {
    for (size_t p = 0; p < k; ++p)
        for (size_t i = 0; i < m; ++i) axpy(a[p * m + i], b + p * n, c + i * n, n);
}

}  // namespace lmpt::kern::scalar

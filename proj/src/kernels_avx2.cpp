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
#include "lmpt/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define LMPT_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define LMPT_HAVE_AVX2_TU 0
#endif

#include "kernels_scalar.hpp"

// AVX2+FMA variants. This TU is compiled with -mavx2 -mfma; nothing here runs
// unless the dispatcher verified CPU support. Reductions accumulate in 8 (f32)
// or 4 (f64) lanes with a scalar tail, so results can differ from the scalar
// path by rounding only.

namespace lmpt::kern::avx2 {

#if LMPT_HAVE_AVX2_TU

inline float hsum(__m256 v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    __m128 sh = _mm_movehl_ps(lo, lo);
    lo = _mm_add_ps(lo, sh);
    sh = _mm_shuffle_ps(lo, lo, 0x1);
    lo = _mm_add_ss(lo, sh);
    return _mm_cvtss_f32(lo);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    lo = _mm_add_sd(lo, sh);
    return _mm_cvtsd_f64(lo);
}

float dot(const float* x, const float* y, size_t n) {
    __m256 acc = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        acc = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i), acc);
    float r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double dot(const double* x, const double* y, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

void axpy(float a, const float* x, float* y, size_t n) {
    const __m256 va = _mm256_set1_ps(a);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vy = _mm256_loadu_ps(y + i);
        vy = _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), vy);
        _mm256_storeu_ps(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void axpy(double a, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal(float a, float* x, size_t n) {
    const __m256 va = _mm256_set1_ps(a);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) _mm256_storeu_ps(x + i, _mm256_mul_ps(va, _mm256_loadu_ps(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void scal(double a, double* x, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

float sum(const float* x, size_t n) {
    __m256 acc = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) acc = _mm256_add_ps(acc, _mm256_loadu_ps(x + i));
    float r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double sum(const double* x, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

float max(const float* x, size_t n) {
    if (n < 8) return scalar::max(x, n);
    __m256 acc = _mm256_loadu_ps(x);
    size_t i = 8;
    for (; i + 8 <= n; i += 8) acc = _mm256_max_ps(acc, _mm256_loadu_ps(x + i));
    alignas(32) float lanes[8];
    _mm256_store_ps(lanes, acc);
    float r = lanes[0];
    for (int l = 1; l < 8; ++l)
        if (lanes[l] > r) r = lanes[l];
    for (; i < n; ++i)
        if (x[i] > r) r = x[i];
    return r;
}

double max(const double* x, size_t n) {
    if (n < 4) return scalar::max(x, n);
    __m256d acc = _mm256_loadu_pd(x);
    size_t i = 4;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r = lanes[0];
    for (int l = 1; l < 4; ++l)
        if (lanes[l] > r) r = lanes[l];
    for (; i < n; ++i)
        if (x[i] > r) r = x[i];
    return r;
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

#endif  // LMPT_HAVE_AVX2_TU

template <typename T>
Kernels<T> make_table() {
#if LMPT_HAVE_AVX2_TU
    Kernels<T> t;
    t.dot = [](const T* x, const T* y, size_t n) { return dot(x, y, n); };
    t.axpy = [](T a, const T* x, T* y, size_t n) { axpy(a, x, y, n); };
    t.scal = [](T a, T* x, size_t n) { scal(a, x, n); };
    t.sum = [](const T* x, size_t n) { return sum(x, n); };
    t.max = [](const T* x, size_t n) { return max(x, n); };
    t.gemm_nt = &gemm_nt<T>;
    t.gemm_nn = &gemm_nn<T>;
    t.gemm_tn_acc = &gemm_tn_acc<T>;
    return t;
#else
    // Non-x86 build: table exists but the dispatcher never selects it.
    Kernels<T> t;
    t.dot = &scalar::dot<T>;
    t.axpy = &scalar::axpy<T>;
    t.scal = &scalar::scal<T>;
    t.sum = &scalar::sum<T>;
    t.max = &scalar::max<T>;
    t.gemm_nt = &scalar::gemm_nt<T>;
    t.gemm_nn = &scalar::gemm_nn<T>;
    t.gemm_tn_acc = &scalar::gemm_tn_acc<T>;
    return t;
#endif
}

template Kernels<float> make_table<float>();
template Kernels<double> make_table<double>();

}  // namespace lmpt::kern::avx2

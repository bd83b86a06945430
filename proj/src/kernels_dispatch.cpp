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

#include <cstdlib>
#include <cstring>

#include "kernels_scalar.hpp"

namespace lmpt::kern {

namespace avx2 {
template <typename T>
Kernels<T> make_table();
}

namespace {

template <typename T>
Kernels<T> make_scalar_table() {
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
}

Backend pick_backend() {
    const char* env = std::getenv("LMPT_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) return Backend::avx2;
        // anything else, including "auto", falls through to detection
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() {
    static const Backend b = pick_backend();
    return b;
}

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

template <typename T>
const Kernels<T>& table(Backend b) {
    static const Kernels<T> sc = make_scalar_table<T>();
    static const Kernels<T> av = avx2::make_table<T>();
    return b == Backend::avx2 ? av : sc;
}

template const Kernels<float>& table<float>(Backend);
template const Kernels<double>& table<double>(Backend);

}  // namespace lmpt::kern

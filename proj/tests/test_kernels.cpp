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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lmpt/kernels.hpp"
#include "lmpt/rng.hpp"

using namespace lmpt;

namespace {

template <typename T>
std::vector<T> random_vec(Rng& rng, size_t n, double scale = 1.0) {
    std::vector<T> v(n);
    for (auto& x : v) x = static_cast<T>(rng.normal(0.0, scale));
    return v;
}

template <typename T>
void check_close(const std::vector<T>& a, const std::vector<T>& b, double rel) {
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        const double denom = std::max({std::abs(double(a[i])), std::abs(double(b[i])), 1.0});
        CHECK(std::abs(double(a[i]) - double(b[i])) / denom < rel);
    }
}

template <typename T>
void equivalence_suite(double rel) {
    const auto& sc = kern::table<T>(kern::Backend::scalar);
    const auto& av = kern::table<T>(kern::Backend::avx2);
    Rng rng(12345);

    // Sizes straddle the vector width so tails get exercised.
    for (const size_t n : {1u, 3u, 7u, 8u, 9u, 16u, 31u, 64u, 127u, 200u}) {
        auto x = random_vec<T>(rng, n);
        auto y = random_vec<T>(rng, n);

        const double d1 = double(sc.dot(x.data(), y.data(), n));
        const double d2 = double(av.dot(x.data(), y.data(), n));
        CHECK(std::abs(d1 - d2) / std::max({std::abs(d1), std::abs(d2), 1.0}) < rel);

        CHECK(double(sc.max(x.data(), n)) == double(av.max(x.data(), n)));

        const double s1 = double(sc.sum(x.data(), n));
        const double s2 = double(av.sum(x.data(), n));
        CHECK(std::abs(s1 - s2) / std::max({std::abs(s1), std::abs(s2), 1.0}) < rel);

        auto y1 = y, y2 = y;
        sc.axpy(T(0.37), x.data(), y1.data(), n);
        av.axpy(T(0.37), x.data(), y2.data(), n);
        check_close(y1, y2, rel);

        auto x1 = x, x2 = x;
        sc.scal(T(-1.25), x1.data(), n);
        av.scal(T(-1.25), x2.data(), n);
        check_close(x1, x2, rel);
    }

    for (int iter = 0; iter < 6; ++iter) {
        const size_t m = 1 + rng.uniform(17);
        const size_t n = 1 + rng.uniform(23);
        const size_t k = 1 + rng.uniform(37);
        auto a = random_vec<T>(rng, m * k);
        auto b_nt = random_vec<T>(rng, n * k);
        auto b_nn = random_vec<T>(rng, k * n);
        auto a_tn = random_vec<T>(rng, k * m);

        std::vector<T> c1(m * n), c2(m * n);
        sc.gemm_nt(a.data(), b_nt.data(), c1.data(), m, n, k);
        av.gemm_nt(a.data(), b_nt.data(), c2.data(), m, n, k);
        check_close(c1, c2, rel);

        sc.gemm_nn(a.data(), b_nn.data(), c1.data(), m, n, k);
        av.gemm_nn(a.data(), b_nn.data(), c2.data(), m, n, k);
        check_close(c1, c2, rel);

        auto acc1 = random_vec<T>(rng, m * n);
        auto acc2 = acc1;
        sc.gemm_tn_acc(a_tn.data(), b_nn.data(), acc1.data(), m, n, k);
        av.gemm_tn_acc(a_tn.data(), b_nn.data(), acc2.data(), m, n, k);
        check_close(acc1, acc2, rel);
    }
}

}  // namespace

TEST_CASE("scalar kernels: reference semantics on tiny cases") {
    const auto& sc = kern::table<double>(kern::Backend::scalar);
    const double x[] = {1.0, 2.0, 3.0};
    const double y[] = {4.0, 5.0, 6.0};
    CHECK(sc.dot(x, y, 3) == doctest::Approx(32.0));
    CHECK(sc.sum(x, 3) == doctest::Approx(6.0));
    CHECK(sc.max(x, 3) == doctest::Approx(3.0));

    double z[] = {1.0, 1.0, 1.0};
    sc.axpy(2.0, x, z, 3);
    CHECK(z[0] == doctest::Approx(3.0));
    CHECK(z[2] == doctest::Approx(7.0));

    // C[2x2] = A[2x1] * B[2x1]^T
    const double a[] = {1.0, 2.0};
    const double b[] = {3.0, 4.0};
    double c[4];
    sc.gemm_nt(a, b, c, 2, 2, 1);
    CHECK(c[0] == doctest::Approx(3.0));
    CHECK(c[1] == doctest::Approx(4.0));
    CHECK(c[2] == doctest::Approx(6.0));
    CHECK(c[3] == doctest::Approx(8.0));
}

TEST_CASE("avx2 kernels match scalar reference (float)") {
    if (!kern::cpu_has_avx2()) return;
    equivalence_suite<float>(2e-5);
}

TEST_CASE("avx2 kernels match scalar reference (double)") {
    if (!kern::cpu_has_avx2()) return;
    equivalence_suite<double>(1e-12);
}

TEST_CASE("backend dispatch is stable and named") {
    const auto b = kern::active_backend();
    CHECK((b == kern::Backend::scalar || b == kern::Backend::avx2));
    CHECK(kern::backend_name(b) != nullptr);
    CHECK(kern::active_backend() == b);
}

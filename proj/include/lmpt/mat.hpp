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

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace lmpt {

// Dense row-major matrix. Vectors are 1xN or Nx1 as convenient.
template <typename T>
struct Mat {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<T> data;

    Mat() = default;
    Mat(size_t r, size_t c, T fill = T(0)) : rows(r), cols(c), data(r * c, fill) {}

    T* row(size_t r) {
        assert(r < rows);
        return data.data() + r * cols;
    }
    const T* row(size_t r) const {
        assert(r < rows);
        return data.data() + r * cols;
    }
    T& at(size_t r, size_t c) {
        assert(r < rows && c < cols);
        return data[r * cols + c];
    }
    T at(size_t r, size_t c) const {
        assert(r < rows && c < cols);
        return data[r * cols + c];
    }
    size_t size() const { return data.size(); }
    void fill(T v) { std::fill(data.begin(), data.end(), v); }

    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }

    // Rows [r0, r0+n) as a copy.
    Mat slice_rows(size_t r0, size_t n) const {
        assert(r0 + n <= rows);
        Mat out(n, cols);
        std::copy(data.begin() + r0 * cols, data.begin() + (r0 + n) * cols, out.data.begin());
        return out;
    }

    void append_rows(const Mat& other) {
        assert(cols == 0 || other.cols == cols);
        if (cols == 0) cols = other.cols;
        data.insert(data.end(), other.data.begin(), other.data.end());
        rows += other.rows;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && data == o.data; }

    template <typename U>
    Mat<U> cast() const {
        Mat<U> out(rows, cols);
        for (size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
        return out;
    }
};

using MatF = Mat<float>;
using MatD = Mat<double>;

}  // namespace lmpt

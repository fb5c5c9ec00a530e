#pragma once

// Exact integer arithmetic used throughout: 64-bit with overflow checks,
// escalating to arbitrary precision (boost cpp_int) where products can grow.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eql {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct overflow_error : std::runtime_error {
    overflow_error() : std::runtime_error("64-bit overflow, escalate to BigInt") {}
};

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error{};
    return r;
}
inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error{};
    return r;
}
inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error{};
    return r;
}

inline Int isqrt_floor(Int n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline BigInt big_pow(BigInt base, unsigned e) {
    BigInt r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

// Small dense matrix over a generic scalar. Column-major access is not
// needed; everything here is tiny (d <= 8 or so).
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}
    Mat(int r, int c, std::initializer_list<T> vals) : rows(r), cols(c), a(vals) {
        if (static_cast<int>(a.size()) != r * c) throw std::invalid_argument("Mat init size");
    }

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    Mat transposed() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> col(int j) const {
        std::vector<T> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
};

using IMat = Mat<Int>;
using BMat = Mat<BigInt>;

inline BMat to_big(const IMat& m) {
    BMat b(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) b.a[i] = m.a[i];
    return b;
}

inline IMat to_int_checked(const BMat& m) {
    IMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) {
        if (m.a[i] > std::numeric_limits<Int>::max() || m.a[i] < std::numeric_limits<Int>::min())
            throw overflow_error{};
        r.a[i] = static_cast<Int>(m.a[i]);
    }
    return r;
}

// Fraction-free Bareiss determinant, exact.
BigInt det_big(BMat m);

// det of an integer matrix: 64-bit Bareiss first, BigInt on overflow.
BigInt det_exact(const IMat& m);

}  // namespace eql

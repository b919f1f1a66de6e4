// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qdel {

using cplx = std::complex<double>;

/// Dense complex 2x2 matrix, row-major. Everything the library needs
/// (products, adjoints, Hermitian eigenvalues) has a closed form at this
/// size, so no linear-algebra backend is involved.
struct Mat2 {
    std::array<cplx, 4> a{};

    constexpr cplx& operator()(int row, int col) { return a[static_cast<std::size_t>(2 * row + col)]; }
    constexpr const cplx& operator()(int row, int col) const {
        return a[static_cast<std::size_t>(2 * row + col)];
    }

    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 identity() { return {{cplx{1, 0}, {}, {}, cplx{1, 0}}}; }
};

constexpr Mat2 operator+(const Mat2& lhs, const Mat2& rhs) {
    return {{lhs.a[0] + rhs.a[0], lhs.a[1] + rhs.a[1], lhs.a[2] + rhs.a[2], lhs.a[3] + rhs.a[3]}};
}

constexpr Mat2 operator-(const Mat2& lhs, const Mat2& rhs) {
    return {{lhs.a[0] - rhs.a[0], lhs.a[1] - rhs.a[1], lhs.a[2] - rhs.a[2], lhs.a[3] - rhs.a[3]}};
}

constexpr Mat2 operator*(const cplx& s, const Mat2& m) {
    return {{s * m.a[0], s * m.a[1], s * m.a[2], s * m.a[3]}};
}

constexpr Mat2 operator*(double s, const Mat2& m) { return cplx{s, 0} * m; }

constexpr Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
    return {{lhs.a[0] * rhs.a[0] + lhs.a[1] * rhs.a[2], lhs.a[0] * rhs.a[1] + lhs.a[1] * rhs.a[3],
             lhs.a[2] * rhs.a[0] + lhs.a[3] * rhs.a[2], lhs.a[2] * rhs.a[1] + lhs.a[3] * rhs.a[3]}};
}

constexpr Mat2& operator+=(Mat2& lhs, const Mat2& rhs) {
    lhs = lhs + rhs;
    return lhs;
}

inline Mat2 adjoint(const Mat2& m) {
    return {{std::conj(m.a[0]), std::conj(m.a[2]), std::conj(m.a[1]), std::conj(m.a[3])}};
}

constexpr cplx trace(const Mat2& m) { return m.a[0] + m.a[3]; }

inline double max_abs(const Mat2& m) {
    double r = 0.0;
    for (const auto& v : m.a) r = std::max(r, std::abs(v));
    return r;
}

inline double max_abs_diff(const Mat2& lhs, const Mat2& rhs) { return max_abs(lhs - rhs); }

inline bool is_finite(const Mat2& m) {
    for (const auto& v : m.a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

inline double hermiticity_defect(const Mat2& m) { return max_abs_diff(m, adjoint(m)); }

/// Eigenvalues of a (numerically) Hermitian matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
    const double mean = 0.5 * (m.a[0].real() + m.a[3].real());
    const double half_gap = 0.5 * (m.a[0].real() - m.a[3].real());
    const double radius = std::sqrt(half_gap * half_gap + std::norm(m.a[1]));
    return {mean - radius, mean + radius};
}

// Pauli matrices in the ordered basis (|1>, |0>), sigma3 = diag(+1, -1).
inline Mat2 sigma_x() { return {{cplx{0, 0}, {1, 0}, {1, 0}, {0, 0}}}; }
inline Mat2 sigma_y() { return {{cplx{0, 0}, {0, -1}, {0, 1}, {0, 0}}}; }
inline Mat2 sigma_z() { return {{cplx{1, 0}, {0, 0}, {0, 0}, {-1, 0}}}; }
inline Mat2 sigma_plus() { return {{cplx{0, 0}, {1, 0}, {0, 0}, {0, 0}}}; }   // |1><0|
inline Mat2 sigma_minus() { return {{cplx{0, 0}, {0, 0}, {1, 0}, {0, 0}}}; }  // |0><1|

} // namespace qdel

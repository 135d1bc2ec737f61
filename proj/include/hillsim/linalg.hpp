// Copyright 2026 The HillSim Authors
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

#ifndef HILLSIM_LINALG_HPP
#define HILLSIM_LINALG_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace hillsim {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat63 = Eigen::Matrix<double, 6, 3>;

// Extended precision variants used by the discretization oracle.
using Mat6L = Eigen::Matrix<long double, 6, 6>;
using Mat63L = Eigen::Matrix<long double, 6, 3>;

/**
 * @brief Matrix exponential by scaling and squaring.
 *
 * The argument is halved until its 1-norm is at most 1/4, the exponential of
 * the scaled matrix is summed as a truncated Taylor series (the tail is below
 * 1e-25 at that norm), and the result is squared back up.
 */
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 6> expm(const Eigen::Matrix<Scalar, 6, 6>& M);

/**
 * @brief Adaptive Gauss-Kronrod (7/15) quadrature of a matrix-valued integrand.
 *
 * Intervals are bisected until the Kronrod/Gauss difference, measured in the
 * max-abs norm, is below max(abs_tol, rel_tol * |integral|) scaled by the
 * interval's share of [a, b].
 */
template <typename Matrix>
Matrix integrate_adaptive(const std::function<Matrix(double)>& f, double a, double b,
                          double rel_tol = 1e-13, double abs_tol = 1e-15, int max_depth = 40);

template <typename Scalar>
Eigen::Matrix<Scalar, 6, 6> expm(const Eigen::Matrix<Scalar, 6, 6>& M) {
    using Mat = Eigen::Matrix<Scalar, 6, 6>;
    const Scalar norm = M.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > Scalar(0.25)) {
        squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm) / 0.25)));
    }
    const Mat X = M / std::ldexp(Scalar(1), squarings);

    // Horner form of sum_{k=0}^{24} X^k / k!
    constexpr int kTerms = 24;
    Mat result = Mat::Identity();
    for (int k = kTerms; k >= 1; --k) {
        result = Mat::Identity() + (X * result) / static_cast<Scalar>(k);
    }
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

namespace detail {

inline constexpr std::array<long double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<long double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<long double, 4> kGaussWeights = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <typename Matrix>
void gauss_kronrod_15(const std::function<Matrix(double)>& f, double a, double b,
                      Matrix& kronrod, Matrix& gauss) {
    using Scalar = typename Matrix::Scalar;
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Matrix f_center = f(center);
    kronrod = static_cast<Scalar>(kKronrodWeights[7]) * f_center;
    gauss = static_cast<Scalar>(kGaussWeights[3]) * f_center;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * static_cast<double>(kKronrodNodes[i]);
        const Matrix sum = f(center - dx) + f(center + dx);
        kronrod += static_cast<Scalar>(kKronrodWeights[i]) * sum;
        if (i % 2 == 1) {
            gauss += static_cast<Scalar>(kGaussWeights[i / 2]) * sum;
        }
    }
    kronrod *= static_cast<Scalar>(half);
    gauss *= static_cast<Scalar>(half);
}

template <typename Matrix>
Matrix integrate_recursive(const std::function<Matrix(double)>& f, double a, double b,
                           double tol, int depth) {
    Matrix kronrod;
    Matrix gauss;
    gauss_kronrod_15<Matrix>(f, a, b, kronrod, gauss);
    const double err = static_cast<double>((kronrod - gauss).cwiseAbs().maxCoeff());
    if (err <= tol || depth <= 0) {
        return kronrod;
    }
    const double mid = 0.5 * (a + b);
    return integrate_recursive<Matrix>(f, a, mid, 0.5 * tol, depth - 1) +
           integrate_recursive<Matrix>(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename Matrix>
Matrix integrate_adaptive(const std::function<Matrix(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    if (a == b) {
        Matrix zero = f(a);
        zero.setZero();
        return zero;
    }
    // A coarse pass sets the scale for the relative tolerance.
    Matrix kronrod;
    Matrix gauss;
    detail::gauss_kronrod_15<Matrix>(f, a, b, kronrod, gauss);
    const double scale = static_cast<double>(kronrod.cwiseAbs().maxCoeff());
    const double tol = std::max(abs_tol, rel_tol * scale);
    return detail::integrate_recursive<Matrix>(f, a, b, tol, max_depth);
}

}  // namespace hillsim

#endif  // HILLSIM_LINALG_HPP

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "acnc/errors.hpp"

namespace acnc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kSympEigClampTol = 1e-6;

/// Symplectic form Omega for n modes: direct sum of [[0,1],[-1,0]] blocks,
/// quadrature ordering (X1,P1,...,XN,PN).
inline Mat symplectic_form(int n_modes) {
    if (n_modes < 1) throw ValidationError("mode count must be positive");
    Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

/// Multimode Gaussian state: displacement vector and covariance matrix over
/// quadratures X = a + a^dag, P = i(a^dag - a), so the vacuum has unit
/// variance and a coherent state alpha has mean (2 Re alpha, 2 Im alpha).
class GaussianState {
public:
    GaussianState(Vec mean, Mat cov) {
        const auto dim = mean.size();
        if (dim < 2 || dim % 2 != 0)
            throw ValidationError("mean vector length must be a positive even number");
        if (cov.rows() != dim || cov.cols() != dim)
            throw ValidationError("covariance matrix must be " + std::to_string(dim) +
                                  "x" + std::to_string(dim));
        const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
        if (asym > kSymmetryTol) {
            char magnitude[32];
            std::snprintf(magnitude, sizeof magnitude, "%.3e", asym);
            throw NumericalError(std::string("covariance matrix asymmetry ") + magnitude +
                                 " exceeds tolerance");
        }
        n_modes_ = static_cast<int>(dim / 2);
        mean_ = std::move(mean);
        cov_ = 0.5 * (cov + cov.transpose());
    }

    int n_modes() const { return n_modes_; }
    const Vec& mean() const { return mean_; }
    const Mat& cov() const { return cov_; }

    /// Minimum eigenvalue of the Hermitian matrix V + i*Omega; physical
    /// states satisfy >= 0 up to roundoff.
    double min_uncertainty_eigenvalue() const {
        const Mat omega = symplectic_form(n_modes_);
        Eigen::MatrixXcd h = cov_.cast<std::complex<double>>();
        h += std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        return solver.eigenvalues().minCoeff();
    }

    void check_mode(int mode) const {
        if (mode < 0 || mode >= n_modes_)
            throw ValidationError("mode " + std::to_string(mode) + " out of range");
    }

private:
    int n_modes_;
    Vec mean_;
    Mat cov_;
};

/// n-mode vacuum: zero mean, identity covariance.
inline GaussianState vacuum(int n_modes) {
    if (n_modes < 1) throw ValidationError("mode count must be positive");
    return GaussianState(Vec::Zero(2 * n_modes), Mat::Identity(2 * n_modes, 2 * n_modes));
}

/// Displace one mode by a coherent amplitude; covariance is untouched.
inline GaussianState displace(const GaussianState& state, int mode,
                              std::complex<double> alpha) {
    state.check_mode(mode);
    Vec mean = state.mean();
    mean(2 * mode) += 2.0 * alpha.real();
    mean(2 * mode + 1) += 2.0 * alpha.imag();
    return GaussianState(std::move(mean), state.cov());
}

/// Tensor product: modes of `b` are appended after the modes of `a`.
inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
    const auto na = a.mean().size(), nb = b.mean().size();
    Vec mean(na + nb);
    mean << a.mean(), b.mean();
    Mat cov = Mat::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState(std::move(mean), std::move(cov));
}

/// Symplectic eigenvalues of a covariance matrix, descending. Computed from
/// the ordinary eigenvalues of -(Omega V)^2, which are the nu_j^2 each with
/// multiplicity two; values within 1e-6 below 1 are clamped to 1, anything
/// lower is rejected as unphysical.
inline std::vector<double> symplectic_eigenvalues(const Mat& cov) {
    if (cov.rows() != cov.cols() || cov.rows() < 2 || cov.rows() % 2 != 0)
        throw ValidationError("covariance matrix must be square with even dimension");
    const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol)
        throw NumericalError("covariance matrix asymmetry exceeds tolerance");

    const int n = static_cast<int>(cov.rows() / 2);
    const Mat omega_v = symplectic_form(n) * cov;
    const Mat m = -(omega_v * omega_v);
    Eigen::EigenSolver<Mat> solver(m, /*computeEigenvectors=*/false);

    std::vector<double> roots;
    roots.reserve(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        const std::complex<double> ev = solver.eigenvalues()(k);
        roots.push_back(std::sqrt(std::max(ev.real(), 0.0)));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());

    std::vector<double> nus(n);
    for (int j = 0; j < n; ++j) {
        double nu = 0.5 * (roots[2 * j] + roots[2 * j + 1]);
        if (nu < 1.0 - kSympEigClampTol)
            throw NumericalError("unphysical covariance: symplectic eigenvalue " +
                                 std::to_string(nu));
        nus[j] = std::max(nu, 1.0);
    }
    return nus;
}

}  // namespace acnc

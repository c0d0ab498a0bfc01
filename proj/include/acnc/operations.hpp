#pragma once

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "acnc/gaussian.hpp"

namespace acnc {

/// Linear phase-space map of a Gaussian unitary: x -> S x + d.
struct SymplecticTransform {
    Mat matrix;
    Vec displacement;

    static SymplecticTransform identity(int n_modes) {
        if (n_modes < 1) throw ValidationError("mode count must be positive");
        return {Mat::Identity(2 * n_modes, 2 * n_modes), Vec::Zero(2 * n_modes)};
    }

    /// max |S Omega S^T - Omega|; zero for an exact symplectic matrix.
    double symplectic_deviation() const {
        const Mat omega = symplectic_form(static_cast<int>(matrix.rows() / 2));
        return (matrix * omega * matrix.transpose() - omega).cwiseAbs().maxCoeff();
    }

    GaussianState apply(const GaussianState& state) const {
        if (matrix.rows() != state.mean().size())
            throw ValidationError("transform dimension does not match state");
        // S V St is symmetric exactly; the float product is not. Averaging
        // with the transpose removes pure roundoff before validation.
        const Mat product = matrix * state.cov() * matrix.transpose();
        return GaussianState(matrix * state.mean() + displacement,
                             0.5 * (product + product.transpose()));
    }
};

namespace detail {

inline void check_mode_pair(int n_modes, int i, int j) {
    if (i < 0 || i >= n_modes) throw ValidationError("mode " + std::to_string(i) + " out of range");
    if (j < 0 || j >= n_modes) throw ValidationError("mode " + std::to_string(j) + " out of range");
    if (i == j) throw ValidationError("mode indices must differ");
}

// Writes a 4x4 block acting on modes (i, j) into an identity 2N x 2N matrix.
inline Mat embed_pair(int n_modes, int i, int j, const Eigen::Matrix4d& block) {
    Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
    const int idx[4] = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s(idx[r], idx[c]) = block(r, c);
    return s;
}

}  // namespace detail

/// Two-mode squeezer a_i' = G a_i + g e^{i phase} a_j^dag (and i<->j), with
/// g = sqrt(G^2 - 1). Gain G = 1 is the identity.
inline SymplecticTransform two_mode_squeezer(int n_modes, int i, int j, double gain,
                                             double phase) {
    detail::check_mode_pair(n_modes, i, j);
    if (!(gain >= 1.0)) throw ValidationError("squeezer gain must be >= 1");
    const double g = std::sqrt(gain * gain - 1.0);
    const double c = std::cos(phase), s = std::sin(phase);
    Eigen::Matrix4d block;
    block << gain, 0, g * c, g * s,
             0, gain, g * s, -g * c,
             g * c, g * s, gain, 0,
             g * s, -g * c, 0, gain;
    return {detail::embed_pair(n_modes, i, j, block), Vec::Zero(2 * n_modes)};
}

/// Beam splitter a_i' = sqrt(T) a_i + sqrt(1-T) a_j,
/// a_j' = sqrt(1-T) a_i - sqrt(T) a_j.
inline SymplecticTransform beam_splitter(int n_modes, int i, int j, double transmissivity) {
    detail::check_mode_pair(n_modes, i, j);
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0))
        throw ValidationError("transmissivity must lie in [0, 1]");
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    Eigen::Matrix4d block;
    block << t, 0, r, 0,
             0, t, 0, r,
             r, 0, -t, 0,
             0, r, 0, -t;
    return {detail::embed_pair(n_modes, i, j, block), Vec::Zero(2 * n_modes)};
}

/// Phase rotation a -> e^{-i phase} a on one mode.
inline SymplecticTransform phase_rotation(int n_modes, int mode, double phase) {
    if (mode < 0 || mode >= n_modes)
        throw ValidationError("mode " + std::to_string(mode) + " out of range");
    const double c = std::cos(phase), s = std::sin(phase);
    Mat m = Mat::Identity(2 * n_modes, 2 * n_modes);
    m(2 * mode, 2 * mode) = c;
    m(2 * mode, 2 * mode + 1) = s;
    m(2 * mode + 1, 2 * mode) = -s;
    m(2 * mode + 1, 2 * mode + 1) = c;
    return {std::move(m), Vec::Zero(2 * n_modes)};
}

inline GaussianState two_mode_squeeze(const GaussianState& state, int i, int j,
                                      double gain, double phase) {
    return two_mode_squeezer(state.n_modes(), i, j, gain, phase).apply(state);
}

inline GaussianState beam_split(const GaussianState& state, int i, int j,
                                double transmissivity) {
    return beam_splitter(state.n_modes(), i, j, transmissivity).apply(state);
}

inline GaussianState phase_shift(const GaussianState& state, int mode, double phase) {
    return phase_rotation(state.n_modes(), mode, phase).apply(state);
}

/// Pure-loss channel on one mode: couples to a vacuum ancilla with
/// transmissivity 1 - fraction and discards it. Not symplectic.
inline GaussianState loss(const GaussianState& state, int mode, double fraction) {
    state.check_mode(mode);
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw ValidationError("loss fraction must lie in [0, 1]");
    const double eta = std::sqrt(1.0 - fraction);
    const int x = 2 * mode, p = 2 * mode + 1;

    Vec mean = state.mean();
    Mat cov = state.cov();
    mean(x) *= eta;
    mean(p) *= eta;
    for (int k = 0; k < cov.rows(); ++k) {
        if (k == x || k == p) continue;
        cov(k, x) *= eta;
        cov(x, k) = cov(k, x);
        cov(k, p) *= eta;
        cov(p, k) = cov(k, p);
    }
    cov.block<2, 2>(x, x) =
        (1.0 - fraction) * cov.block<2, 2>(x, x) + fraction * Eigen::Matrix2d::Identity();
    return GaussianState(std::move(mean), std::move(cov));
}

/// Partial trace: keep the listed modes, in the listed order.
inline GaussianState reduce(const GaussianState& state, const std::vector<int>& keep) {
    if (keep.empty()) throw ValidationError("kept mode list must not be empty");
    std::unordered_set<int> seen;
    for (int mode : keep) {
        state.check_mode(mode);
        if (!seen.insert(mode).second)
            throw ValidationError("duplicate mode " + std::to_string(mode) + " in reduction");
    }
    const int m = static_cast<int>(keep.size());
    Vec mean(2 * m);
    Mat cov(2 * m, 2 * m);
    for (int r = 0; r < m; ++r) {
        mean(2 * r) = state.mean()(2 * keep[r]);
        mean(2 * r + 1) = state.mean()(2 * keep[r] + 1);
        for (int c = 0; c < m; ++c)
            cov.block<2, 2>(2 * r, 2 * c) = state.cov().block<2, 2>(2 * keep[r], 2 * keep[c]);
    }
    return GaussianState(std::move(mean), std::move(cov));
}

}  // namespace acnc

#pragma once

// Shared helpers for the test binaries: random-state generation and small
// matrix-comparison utilities. Deterministic given the caller's RNG.

#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "acnc/acnc.hpp"

namespace testutil {

// Accepts any pair of same-shaped Eigen expressions (matrix or vector).
template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

struct RandomOptions {
    bool allow_loss = true;
    bool allow_displace = true;
};

// Applies `op_count` random operations to the vacuum. Unitary transforms
// used along the way are appended to `transforms` when given.
inline acnc::GaussianState random_state(std::mt19937& rng, int n_modes, int op_count,
                                        RandomOptions options = {},
                                        std::vector<acnc::SymplecticTransform>* transforms =
                                            nullptr) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> mode_pick(0, n_modes - 1);

    acnc::GaussianState state = acnc::vacuum(n_modes);
    for (int k = 0; k < op_count; ++k) {
        int op = std::uniform_int_distribution<int>(0, 4)(rng);
        if (!options.allow_loss && op == 4) op = 3;
        if (!options.allow_displace && op == 0) op = 3;
        if (n_modes < 2 && (op == 1 || op == 2)) op = 3;

        const int i = mode_pick(rng);
        int j = mode_pick(rng);
        while (n_modes > 1 && j == i) j = mode_pick(rng);

        switch (op) {
            case 0:
                state = acnc::displace(state, i, {normal(rng), normal(rng)});
                break;
            case 1: {
                const auto s =
                    acnc::two_mode_squeezer(n_modes, i, j, 1.0 + 2.0 * unit(rng), angle(rng));
                if (transforms) transforms->push_back(s);
                state = s.apply(state);
                break;
            }
            case 2: {
                const auto s = acnc::beam_splitter(n_modes, i, j, unit(rng));
                if (transforms) transforms->push_back(s);
                state = s.apply(state);
                break;
            }
            case 3: {
                const auto s = acnc::phase_rotation(n_modes, i, angle(rng));
                if (transforms) transforms->push_back(s);
                state = s.apply(state);
                break;
            }
            default:
                state = acnc::loss(state, i, unit(rng));
                break;
        }
    }
    return state;
}

// Loss realized through its definition: couple to a fresh vacuum ancilla on
// a beam splitter of transmissivity 1 - fraction, then trace the ancilla.
inline acnc::GaussianState loss_via_ancilla(const acnc::GaussianState& state, int mode,
                                            double fraction) {
    const int n = state.n_modes();
    acnc::GaussianState joint = acnc::tensor(state, acnc::vacuum(1));
    joint = acnc::beam_split(joint, mode, n, 1.0 - fraction);
    std::vector<int> keep(n);
    for (int k = 0; k < n; ++k) keep[k] = k;
    return acnc::reduce(joint, keep);
}

}  // namespace testutil

#pragma once

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "acnc/gaussian.hpp"
#include "acnc/operations.hpp"

namespace acnc {

inline constexpr double kNegativeClampTol = 1e-9;

/// Total, per-partition local, and correlated relative-entropy coherence of
/// one state, in bits. total == local_sum + correlated by construction.
struct CoherenceReport {
    double total = 0.0;
    std::vector<std::pair<std::string, double>> local;
    double local_sum = 0.0;
    double correlated = 0.0;
};

/// Entropy of a single thermal mode with mean photon number nbar, in bits.
inline double thermal_entropy(double nbar) {
    if (nbar <= 0.0) return 0.0;
    return (nbar + 1.0) * std::log2(nbar + 1.0) - nbar * std::log2(nbar);
}

/// Mean photon number of one mode:
/// (V_XX + V_PP + xbar^2 + pbar^2)/4 - 1/2, clamped to zero.
inline double mean_photon(const GaussianState& state, int mode) {
    state.check_mode(mode);
    const int x = 2 * mode, p = 2 * mode + 1;
    const double value = 0.25 * (state.cov()(x, x) + state.cov()(p, p) +
                                 state.mean()(x) * state.mean()(x) +
                                 state.mean()(p) * state.mean()(p)) -
                         0.5;
    if (value < -kNegativeClampTol)
        throw NumericalError("negative mean photon number " + std::to_string(value));
    return std::max(value, 0.0);
}

/// Von Neumann entropy in bits, from the symplectic eigenvalues; each nu
/// contributes via a thermal mode with nbar = (nu - 1)/2, so nu = 1 gives 0.
inline double entropy(const GaussianState& state) {
    double sum = 0.0;
    for (double nu : symplectic_eigenvalues(state.cov()))
        sum += thermal_entropy(0.5 * (nu - 1.0));
    return sum;
}

/// Fock-diagonal reference: the product thermal state carrying each mode's
/// mean photon number, with zero mean and no cross-mode correlations.
inline GaussianState thermal_reference(const GaussianState& state) {
    const int n = state.n_modes();
    Vec mean = Vec::Zero(2 * n);
    Mat cov = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const double diag = 2.0 * mean_photon(state, j) + 1.0;
        cov(2 * j, 2 * j) = diag;
        cov(2 * j + 1, 2 * j + 1) = diag;
    }
    return GaussianState(std::move(mean), std::move(cov));
}

/// Relative-entropy coherence with respect to the Fock basis:
/// S(thermal reference) - S(state), in bits.
inline double coherence_total(const GaussianState& state) {
    double reference_entropy = 0.0;
    for (int j = 0; j < state.n_modes(); ++j)
        reference_entropy += thermal_entropy(mean_photon(state, j));
    const double value = reference_entropy - entropy(state);
    if (value < -kNegativeClampTol)
        throw NumericalError("negative coherence " + std::to_string(value));
    return std::max(value, 0.0);
}

namespace detail {

inline void check_partition(const GaussianState& state, const std::vector<int>& part_a,
                            const std::vector<int>& part_b) {
    std::unordered_set<int> seen;
    for (int mode : part_a) {
        state.check_mode(mode);
        if (!seen.insert(mode).second)
            throw ValidationError("mode " + std::to_string(mode) + " repeated in partition");
    }
    for (int mode : part_b) {
        state.check_mode(mode);
        if (!seen.insert(mode).second)
            throw ValidationError("partitions overlap at mode " + std::to_string(mode));
    }
}

}  // namespace detail

struct LocalCoherence {
    double part_a = 0.0;
    double part_b = 0.0;
    double local_sum = 0.0;
};

/// Coherence local to each side of a bipartition: C of each reduced state,
/// and their sum.
inline LocalCoherence coherence_local(const GaussianState& state,
                                      const std::vector<int>& part_a,
                                      const std::vector<int>& part_b) {
    detail::check_partition(state, part_a, part_b);
    LocalCoherence result;
    if (!part_a.empty()) result.part_a = coherence_total(reduce(state, part_a));
    if (!part_b.empty()) result.part_b = coherence_total(reduce(state, part_b));
    result.local_sum = result.part_a + result.part_b;
    return result;
}

/// Coherence stored in cross-partition correlations: total minus local.
inline double coherence_correlated(const GaussianState& state,
                                   const std::vector<int>& part_a,
                                   const std::vector<int>& part_b) {
    return coherence_total(state) - coherence_local(state, part_a, part_b).local_sum;
}

inline CoherenceReport coherence_report(const GaussianState& state,
                                        const std::vector<int>& part_a,
                                        const std::vector<int>& part_b,
                                        const std::string& label_a = "a",
                                        const std::string& label_b = "b") {
    const LocalCoherence local = coherence_local(state, part_a, part_b);
    CoherenceReport report;
    report.total = coherence_total(state);
    if (!part_a.empty()) report.local.emplace_back(label_a, local.part_a);
    if (!part_b.empty()) report.local.emplace_back(label_b, local.part_b);
    report.local_sum = local.local_sum;
    report.correlated = report.total - report.local_sum;
    return report;
}

}  // namespace acnc

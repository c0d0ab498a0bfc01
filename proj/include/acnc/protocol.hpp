#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "acnc/coherence.hpp"
#include "acnc/gaussian.hpp"
#include "acnc/operations.hpp"

namespace acnc {

/// Gain/phase pair of one four-wave-mixing stage. The gain G is the
/// intensity-gain parameter of the mode relations, with g = sqrt(G^2 - 1).
struct FwmParams {
    double gain = 1.0;
    double phase = 0.0;

    void validate() const {
        if (!(gain >= 1.0)) throw ValidationError("FWM gain must be >= 1");
    }

    /// Builds the params from the interaction strength-time product,
    /// G = cosh(xi * tau).
    static FwmParams from_interaction(double xi_tau, double phase = 0.0) {
        return {std::cosh(xi_tau), phase};
    }
};

/// Loss budget of the pipeline: l_a models absorption around the amplifiers
/// (applied to modes d, c and the decoder output a3), l_b the propagation
/// loss on a2.
struct LossBudget {
    double l_a = 0.0;
    double l_b = 0.0;

    void validate() const {
        if (!(l_a >= 0.0 && l_a <= 1.0)) throw ValidationError("loss l_a must lie in [0, 1]");
        if (!(l_b >= 0.0 && l_b <= 1.0)) throw ValidationError("loss l_b must lie in [0, 1]");
    }
};

struct CoherentSource {
    std::complex<double> alpha{1.0, 0.0};
};

/// Two-mode squeezed source: a squeezer of gain g0/phase theta seeded with
/// coherent amplitudes on both inputs.
struct TmssSource {
    double g0 = 3.0;
    double theta = 0.0;
    std::complex<double> seed_a{1.0, 0.0};
    std::complex<double> seed_b{1.0, 0.0};
};

using SourceChoice = std::variant<CoherentSource, TmssSource>;

/// Full parameterization of one correlated-noisy-channel run.
struct AcncScenario {
    SourceChoice source = CoherentSource{};
    double g1 = 1.0;
    std::optional<double> g2;  // defaults to 1/sqrt(T)
    double transmissivity = 0.9;
    double phi = std::numbers::pi;
    LossBudget losses;

    double resolved_g2() const {
        return g2 ? *g2 : 1.0 / std::sqrt(transmissivity);
    }

    void validate() const {
        if (!(g1 >= 1.0)) throw ValidationError("g1 must be >= 1");
        if (!(transmissivity > 0.0 && transmissivity <= 1.0))
            throw ValidationError("transmissivity must lie in (0, 1]");
        if (!(resolved_g2() >= 1.0)) throw ValidationError("g2 must be >= 1");
        losses.validate();
        if (const auto* tmss = std::get_if<TmssSource>(&source); tmss && !(tmss->g0 >= 1.0))
            throw ValidationError("source gain g0 must be >= 1");
    }
};

/// Amplitude of the residual uncorrelated noise left by the tuned decoder:
/// g2 * (G1 - g1) with g2 = sqrt(1/T - 1). Decreasing in G1, zero at T = 1.
inline double residual_coefficient(double g1, double transmissivity) {
    if (!(g1 >= 1.0)) throw ValidationError("g1 must be >= 1");
    if (!(transmissivity > 0.0 && transmissivity <= 1.0))
        throw ValidationError("transmissivity must lie in (0, 1]");
    const double g2 = std::sqrt(1.0 / transmissivity - 1.0);
    return g2 * (g1 - std::sqrt(g1 * g1 - 1.0));
}

enum class Stage { Input, Noise, Acnc };

inline std::string stage_name(Stage stage) {
    switch (stage) {
        case Stage::Input: return "input";
        case Stage::Noise: return "noise";
        case Stage::Acnc: return "acnc";
    }
    throw ValidationError("unknown stage");
}

/// The three staged states of a scenario over the full mode set, with a
/// label -> mode-index registry. Mode ordering is (a, b?, c, d).
struct StagedStates {
    std::map<char, int> registry;
    GaussianState input_state;
    GaussianState after_noise;
    GaussianState after_acnc;

    const GaussianState& stage(Stage which) const {
        switch (which) {
            case Stage::Input: return input_state;
            case Stage::Noise: return after_noise;
            case Stage::Acnc: return after_acnc;
        }
        throw ValidationError("unknown stage");
    }

    int mode_of(char label) const {
        const auto it = registry.find(label);
        if (it == registry.end())
            throw ValidationError(std::string("unknown mode label '") + label + "'");
        return it->second;
    }
};

/// Runs the pipeline: source into a, correlated-noise squeezer on (c, d),
/// beam splitter mixing d into a, then the decoder squeezer on (a, c) after
/// a phase delay phi on c. Losses, when present, follow the light path:
/// l_a on c and d after the first squeezer, l_b on a after the beam
/// splitter, l_a on a after the decoder.
inline StagedStates build_scenario(const AcncScenario& scenario) {
    scenario.validate();

    const bool bipartite = std::holds_alternative<TmssSource>(scenario.source);
    std::map<char, int> registry;
    int mode_a = 0, mode_c, mode_d, n_modes;
    if (bipartite) {
        registry = {{'a', 0}, {'b', 1}, {'c', 2}, {'d', 3}};
        mode_c = 2, mode_d = 3, n_modes = 4;
    } else {
        registry = {{'a', 0}, {'c', 1}, {'d', 2}};
        mode_c = 1, mode_d = 2, n_modes = 3;
    }

    GaussianState input = vacuum(n_modes);
    if (bipartite) {
        const auto& tmss = std::get<TmssSource>(scenario.source);
        input = displace(input, 0, tmss.seed_a);
        input = displace(input, 1, tmss.seed_b);
        input = two_mode_squeeze(input, 0, 1, tmss.g0, tmss.theta);
    } else {
        input = displace(input, 0, std::get<CoherentSource>(scenario.source).alpha);
    }

    const LossBudget& lb = scenario.losses;
    GaussianState noisy = two_mode_squeeze(input, mode_c, mode_d, scenario.g1, 0.0);
    if (lb.l_a > 0.0) {
        noisy = loss(noisy, mode_c, lb.l_a);
        noisy = loss(noisy, mode_d, lb.l_a);
    }
    noisy = beam_split(noisy, mode_a, mode_d, scenario.transmissivity);
    if (lb.l_b > 0.0) noisy = loss(noisy, mode_a, lb.l_b);

    GaussianState decoded = phase_shift(noisy, mode_c, scenario.phi);
    decoded = two_mode_squeeze(decoded, mode_a, mode_c, scenario.resolved_g2(), 0.0);
    if (lb.l_a > 0.0) decoded = loss(decoded, mode_a, lb.l_a);

    return StagedStates{std::move(registry), std::move(input), std::move(noisy),
                        std::move(decoded)};
}

/// A bipartition of the subject modes, given as label lists.
struct LabelPartition {
    std::vector<char> a;
    std::vector<char> b;
};

/// Coherence report of one staged state reduced to the subject modes.
/// Without a partition the whole subject counts as one local block.
inline CoherenceReport stage_coherence(const StagedStates& staged, Stage stage,
                                       const std::vector<char>& subject,
                                       const std::optional<LabelPartition>& partition = {}) {
    if (subject.empty()) throw ValidationError("subject mode list must not be empty");
    std::vector<int> keep;
    keep.reserve(subject.size());
    for (char label : subject) keep.push_back(staged.mode_of(label));
    const GaussianState reduced = reduce(staged.stage(stage), keep);

    const auto position_of = [&](char label) {
        for (std::size_t k = 0; k < subject.size(); ++k)
            if (subject[k] == label) return static_cast<int>(k);
        throw ValidationError(std::string("partition label '") + label +
                              "' is not a subject mode");
    };

    std::vector<int> part_a, part_b;
    std::string label_a, label_b;
    if (partition) {
        for (char label : partition->a) {
            part_a.push_back(position_of(label));
            label_a.push_back(label);
        }
        for (char label : partition->b) {
            part_b.push_back(position_of(label));
            label_b.push_back(label);
        }
    } else {
        for (std::size_t k = 0; k < subject.size(); ++k) part_a.push_back(static_cast<int>(k));
        label_a.assign(subject.begin(), subject.end());
    }
    return coherence_report(reduced, part_a, part_b, label_a, label_b);
}

inline std::vector<char> default_subject(const AcncScenario& scenario) {
    return std::holds_alternative<TmssSource>(scenario.source) ? std::vector<char>{'a', 'b'}
                                                               : std::vector<char>{'a'};
}

inline std::optional<LabelPartition> default_partition(const AcncScenario& scenario) {
    if (std::holds_alternative<TmssSource>(scenario.source))
        return LabelPartition{{'a'}, {'b'}};
    return std::nullopt;
}

struct SweepPoint {
    double g1;
    std::vector<std::pair<Stage, CoherenceReport>> reports;
};

inline std::vector<double> uniform_grid(double lo, double hi, int steps) {
    if (steps < 1) throw ValidationError("grid needs at least one point");
    if (!(lo <= hi)) throw ValidationError("grid bounds must be ordered");
    std::vector<double> grid(steps);
    if (steps == 1) {
        grid[0] = lo;
        return grid;
    }
    for (int k = 0; k < steps; ++k)
        grid[k] = lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
    return grid;
}

/// Evaluates the requested stages over an ascending grid of g1 values.
inline std::vector<SweepPoint> sweep_curve(const AcncScenario& base,
                                           const std::vector<double>& g1_grid,
                                           const std::vector<Stage>& stages,
                                           const std::vector<char>& subject,
                                           const std::optional<LabelPartition>& partition = {}) {
    if (g1_grid.empty()) throw ValidationError("g1 grid must not be empty");
    for (std::size_t k = 1; k < g1_grid.size(); ++k)
        if (!(g1_grid[k] > g1_grid[k - 1]))
            throw ValidationError("g1 grid must be strictly ascending");

    std::vector<SweepPoint> series;
    series.reserve(g1_grid.size());
    for (double g1 : g1_grid) {
        AcncScenario point = base;
        point.g1 = g1;
        const StagedStates staged = build_scenario(point);
        SweepPoint row{g1, {}};
        row.reports.reserve(stages.size());
        for (Stage stage : stages)
            row.reports.emplace_back(stage, stage_coherence(staged, stage, subject, partition));
        series.push_back(std::move(row));
    }
    return series;
}

}  // namespace acnc

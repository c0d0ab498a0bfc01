#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "acnc/csv_format.hpp"
#include "acnc/protocol.hpp"

namespace acnc {

/// The four packaged sweeps. Fig2/Fig3 track a coherent-state input through
/// the channel (lossless and lossy), Fig5/Fig6 do the same for a seeded
/// two-mode squeezed input with the coherence split into local and
/// correlated parts.
enum class Figure { Fig2, Fig3, Fig5, Fig6 };

struct FigureParams {
    double transmissivity = 0.9;
    std::complex<double> alpha{1.0, 0.0};  // coherent amplitude, also both squeezer seeds
    double g1_min = 1.0;
    double g1_max = 10.0;
    int steps = 200;
    double g0 = 3.0;
    double theta = 0.0;
    std::vector<LossBudget> loss_pairs;  // empty selects the default grid below
};

inline std::vector<LossBudget> default_loss_pairs() {
    return {{0.1, 0.05}, {0.1, 0.1}, {0.2, 0.05}, {0.2, 0.1}};
}

namespace detail {

inline void write_row(std::ostream& out, const std::vector<double>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out << ',';
        out << format_csv_number(values[k]);
    }
    out << '\n';
}

inline void write_header(std::ostream& out, const std::vector<std::string>& columns) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (k) out << ',';
        out << columns[k];
    }
    out << '\n';
}

inline std::string loss_suffix(const LossBudget& pair) {
    return "_la" + format_shortest(pair.l_a) + "_lb" + format_shortest(pair.l_b);
}

inline AcncScenario scenario_for(Figure figure, const FigureParams& params,
                                 const LossBudget& losses) {
    AcncScenario scenario;
    if (figure == Figure::Fig5 || figure == Figure::Fig6)
        scenario.source = TmssSource{params.g0, params.theta, params.alpha, params.alpha};
    else
        scenario.source = CoherentSource{params.alpha};
    scenario.transmissivity = params.transmissivity;
    scenario.losses = losses;
    return scenario;
}

}  // namespace detail

/// Runs one packaged sweep and writes its CSV table (header plus one row per
/// g1 grid point) to the stream.
inline void run_figure(Figure figure, const FigureParams& params, std::ostream& out) {
    if (!(params.g1_min >= 1.0)) throw ValidationError("g1 range must start at or above 1");
    if (!(params.g1_min <= params.g1_max)) throw ValidationError("g1 range must be ordered");
    const std::vector<double> grid = uniform_grid(params.g1_min, params.g1_max, params.steps);

    const bool lossy = figure == Figure::Fig3 || figure == Figure::Fig6;
    const bool bipartite = figure == Figure::Fig5 || figure == Figure::Fig6;
    const std::vector<LossBudget> pairs =
        lossy ? (params.loss_pairs.empty() ? default_loss_pairs() : params.loss_pairs)
              : std::vector<LossBudget>{{0.0, 0.0}};

    const AcncScenario probe = detail::scenario_for(figure, params, pairs.front());
    const std::vector<char> subject = default_subject(probe);
    const auto partition = default_partition(probe);
    const std::vector<Stage> stages = lossy ? std::vector<Stage>{Stage::Input, Stage::Acnc}
                                            : std::vector<Stage>{Stage::Input, Stage::Noise,
                                                                 Stage::Acnc};

    std::vector<std::string> columns{"g1"};
    const auto push_triplet = [&](const std::string& prefix, const std::string& suffix) {
        columns.push_back(prefix + "_total" + suffix);
        columns.push_back(prefix + "_local" + suffix);
        columns.push_back(prefix + "_correlated" + suffix);
    };
    if (!bipartite) {
        if (lossy) {
            columns.push_back("c_input");
            for (const LossBudget& pair : pairs)
                columns.push_back("c_acnc" + detail::loss_suffix(pair));
        } else {
            columns.insert(columns.end(), {"c_input", "c_noise", "c_acnc"});
        }
    } else {
        push_triplet("input", "");
        if (lossy) {
            for (const LossBudget& pair : pairs) push_triplet("acnc", detail::loss_suffix(pair));
        } else {
            push_triplet("noise", "");
            push_triplet("acnc", "");
        }
    }
    detail::write_header(out, columns);

    std::vector<std::vector<SweepPoint>> series;
    series.reserve(pairs.size());
    for (const LossBudget& pair : pairs)
        series.push_back(sweep_curve(detail::scenario_for(figure, params, pair), grid, stages,
                                     subject, partition));

    for (std::size_t row = 0; row < grid.size(); ++row) {
        std::vector<double> values{grid[row]};
        const auto push_report = [&](const CoherenceReport& report) {
            if (bipartite) {
                values.push_back(report.total);
                values.push_back(report.local_sum);
                values.push_back(report.correlated);
            } else {
                values.push_back(report.total);
            }
        };
        // Input comes before the channel, so the first sweep's value stands
        // for every loss pair.
        push_report(series.front()[row].reports[0].second);
        for (const auto& sweep : series)
            for (std::size_t s = 1; s < stages.size(); ++s)
                push_report(sweep[row].reports[s].second);
        detail::write_row(out, values);
    }
}

}  // namespace acnc

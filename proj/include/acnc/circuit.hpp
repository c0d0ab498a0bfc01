#pragma once

#include <algorithm>
#include <charconv>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "acnc/coherence.hpp"
#include "acnc/csv_format.hpp"
#include "acnc/gaussian.hpp"
#include "acnc/operations.hpp"

namespace acnc {

// Circuit instructions. One struct per statement kind, equality-comparable
// so parse/render round-trips can be checked structurally.

struct CoherentInstr {
    int mode;
    double re, im;
    bool operator==(const CoherentInstr&) const = default;
};

struct TmsqInstr {
    int mode_a, mode_b;
    double gain, phase;
    bool operator==(const TmsqInstr&) const = default;
};

struct BsInstr {
    int mode_a, mode_b;
    double transmissivity;
    bool operator==(const BsInstr&) const = default;
};

struct LossInstr {
    int mode;
    double fraction;
    bool operator==(const LossInstr&) const = default;
};

struct PhaseInstr {
    int mode;
    double phase;
    bool operator==(const PhaseInstr&) const = default;
};

struct ReportCoherenceInstr {
    std::vector<int> modes;
    bool operator==(const ReportCoherenceInstr&) const = default;
};

struct ReportSplitInstr {
    std::vector<int> modes_a, modes_b;
    bool operator==(const ReportSplitInstr&) const = default;
};

using Instruction = std::variant<CoherentInstr, TmsqInstr, BsInstr, LossInstr, PhaseInstr,
                                 ReportCoherenceInstr, ReportSplitInstr>;

struct CircuitProgram {
    int n_modes = 0;
    std::vector<Instruction> instructions;
    bool operator==(const CircuitProgram&) const = default;
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
        std::size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t') ++k;
        if (k > start) tokens.emplace_back(line.substr(start, k - start));
    }
    return tokens;
}

inline std::optional<double> parse_decimal(std::string_view text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

// Real-number grammar: a decimal literal, "pi", or "<decimal>*pi", each with
// an optional leading minus.
inline std::optional<double> parse_real(std::string_view text) {
    double sign = 1.0;
    if (!text.empty() && text.front() == '-') {
        sign = -1.0;
        text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;
    if (text == "pi") return sign * std::numbers::pi;
    if (text.size() > 3 && text.substr(text.size() - 3) == "*pi") {
        const auto factor = parse_decimal(text.substr(0, text.size() - 3));
        if (!factor) return std::nullopt;
        return sign * *factor * std::numbers::pi;
    }
    const auto value = parse_decimal(text);
    if (!value) return std::nullopt;
    return sign * *value;
}

inline std::optional<int> parse_index(std::string_view text) {
    int value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || value < 0)
        return std::nullopt;
    return value;
}

}  // namespace detail

/// Parses the circuit text. Errors carry the 1-based line number. Grammar,
/// one statement per line, '#' starts a comment:
///
///   modes <count>
///   coherent <mode> <re> <im>
///   tmsq <mode> <mode> <gain> <phase>
///   bs <mode> <mode> <transmissivity>
///   loss <mode> <fraction>
///   phase <mode> <angle>
///   report coherence <mode>...
///   report split <mode>... | <mode>...
///
/// Angles accept "pi" and "<decimal>*pi" forms.
inline CircuitProgram parse_circuit(const std::string& text) {
    CircuitProgram program;
    bool saw_modes = false;
    int line_no = 0;
    int last_line = 0;

    std::istringstream stream(text);
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_no;
        last_line = line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto tokens = detail::tokenize(raw);
        if (tokens.empty()) continue;

        const auto fail = [line_no](const std::string& reason) -> ParseError {
            return ParseError(line_no, reason);
        };
        const auto want = [&](std::size_t count) {
            if (tokens.size() != count)
                throw fail("'" + tokens[0] + "' expects " + std::to_string(count - 1) +
                           " arguments");
        };
        const auto mode_arg = [&](const std::string& token) {
            const auto index = detail::parse_index(token);
            if (!index) throw fail("invalid mode index '" + token + "'");
            if (*index >= program.n_modes)
                throw fail("mode " + token + " is out of range for " +
                           std::to_string(program.n_modes) + " modes");
            return *index;
        };
        const auto real_arg = [&](const std::string& token) {
            const auto value = detail::parse_real(token);
            if (!value) throw fail("invalid number '" + token + "'");
            return *value;
        };
        const auto distinct = [&](int i, int j) {
            if (i == j) throw fail("'" + tokens[0] + "' needs two distinct modes");
        };

        if (!saw_modes) {
            if (tokens[0] != "modes") throw fail("expected 'modes <count>' first");
            want(2);
            const auto count = detail::parse_index(tokens[1]);
            if (!count || *count < 1) throw fail("mode count must be a positive integer");
            program.n_modes = *count;
            saw_modes = true;
            continue;
        }

        if (tokens[0] == "modes") {
            throw fail("duplicate 'modes' declaration");
        } else if (tokens[0] == "coherent") {
            want(4);
            program.instructions.push_back(
                CoherentInstr{mode_arg(tokens[1]), real_arg(tokens[2]), real_arg(tokens[3])});
        } else if (tokens[0] == "tmsq") {
            want(5);
            const int i = mode_arg(tokens[1]), j = mode_arg(tokens[2]);
            distinct(i, j);
            const double gain = real_arg(tokens[3]);
            if (!(gain >= 1.0)) throw fail("gain must be >= 1");
            program.instructions.push_back(TmsqInstr{i, j, gain, real_arg(tokens[4])});
        } else if (tokens[0] == "bs") {
            want(4);
            const int i = mode_arg(tokens[1]), j = mode_arg(tokens[2]);
            distinct(i, j);
            const double t = real_arg(tokens[3]);
            if (!(t >= 0.0 && t <= 1.0)) throw fail("transmissivity must lie in [0, 1]");
            program.instructions.push_back(BsInstr{i, j, t});
        } else if (tokens[0] == "loss") {
            want(3);
            const int i = mode_arg(tokens[1]);
            const double fraction = real_arg(tokens[2]);
            if (!(fraction >= 0.0 && fraction <= 1.0))
                throw fail("loss fraction must lie in [0, 1]");
            program.instructions.push_back(LossInstr{i, fraction});
        } else if (tokens[0] == "phase") {
            want(3);
            program.instructions.push_back(PhaseInstr{mode_arg(tokens[1]), real_arg(tokens[2])});
        } else if (tokens[0] == "report") {
            if (tokens.size() < 2) throw fail("'report' expects 'coherence' or 'split'");
            if (tokens[1] == "coherence") {
                if (tokens.size() < 3) throw fail("'report coherence' needs at least one mode");
                ReportCoherenceInstr instr;
                std::set<int> seen;
                for (std::size_t k = 2; k < tokens.size(); ++k) {
                    const int mode = mode_arg(tokens[k]);
                    if (!seen.insert(mode).second)
                        throw fail("duplicate mode " + tokens[k] + " in report");
                    instr.modes.push_back(mode);
                }
                program.instructions.push_back(std::move(instr));
            } else if (tokens[1] == "split") {
                ReportSplitInstr instr;
                std::set<int> seen;
                bool after_bar = false;
                for (std::size_t k = 2; k < tokens.size(); ++k) {
                    if (tokens[k] == "|") {
                        if (after_bar) throw fail("'report split' takes a single '|'");
                        after_bar = true;
                        continue;
                    }
                    const int mode = mode_arg(tokens[k]);
                    if (!seen.insert(mode).second)
                        throw fail("duplicate mode " + tokens[k] + " in report");
                    (after_bar ? instr.modes_b : instr.modes_a).push_back(mode);
                }
                if (!after_bar) throw fail("'report split' needs a '|' separator");
                if (instr.modes_a.empty() || instr.modes_b.empty())
                    throw fail("'report split' needs modes on both sides of '|'");
                program.instructions.push_back(std::move(instr));
            } else {
                throw fail("unknown report kind '" + tokens[1] + "'");
            }
        } else {
            throw fail("unknown instruction '" + tokens[0] + "'");
        }
    }

    if (!saw_modes) throw ParseError(std::max(last_line, 1), "missing 'modes' declaration");
    if (program.instructions.empty())
        throw ParseError(std::max(last_line, 1), "program has no instructions");
    return program;
}

/// Canonical text form; parse_circuit(render_circuit(p)) == p.
inline std::string render_circuit(const CircuitProgram& program) {
    std::string out = "modes " + std::to_string(program.n_modes) + "\n";
    const auto num = [](double v) { return format_shortest(v); };
    const auto idx = [](int v) { return std::to_string(v); };
    for (const Instruction& instruction : program.instructions) {
        std::visit(
            [&](const auto& instr) {
                using T = std::decay_t<decltype(instr)>;
                if constexpr (std::is_same_v<T, CoherentInstr>) {
                    out += "coherent " + idx(instr.mode) + " " + num(instr.re) + " " +
                           num(instr.im);
                } else if constexpr (std::is_same_v<T, TmsqInstr>) {
                    out += "tmsq " + idx(instr.mode_a) + " " + idx(instr.mode_b) + " " +
                           num(instr.gain) + " " + num(instr.phase);
                } else if constexpr (std::is_same_v<T, BsInstr>) {
                    out += "bs " + idx(instr.mode_a) + " " + idx(instr.mode_b) + " " +
                           num(instr.transmissivity);
                } else if constexpr (std::is_same_v<T, LossInstr>) {
                    out += "loss " + idx(instr.mode) + " " + num(instr.fraction);
                } else if constexpr (std::is_same_v<T, PhaseInstr>) {
                    out += "phase " + idx(instr.mode) + " " + num(instr.phase);
                } else if constexpr (std::is_same_v<T, ReportCoherenceInstr>) {
                    out += "report coherence";
                    for (int mode : instr.modes) out += " " + idx(mode);
                } else {
                    out += "report split";
                    for (int mode : instr.modes_a) out += " " + idx(mode);
                    out += " |";
                    for (int mode : instr.modes_b) out += " " + idx(mode);
                }
            },
            instruction);
        out += "\n";
    }
    return out;
}

/// One emitted report: which instruction produced it and the figures.
struct ReportRecord {
    std::size_t instruction_index;  // 1-based position in the program
    bool split;
    std::vector<int> modes_a, modes_b;
    CoherenceReport report;
};

/// Runs the program from the all-vacuum initial state and collects the
/// report records in order.
inline std::vector<ReportRecord> execute(const CircuitProgram& program) {
    if (program.n_modes < 1) throw ValidationError("program needs at least one mode");
    GaussianState state = vacuum(program.n_modes);
    std::vector<ReportRecord> records;

    for (std::size_t k = 0; k < program.instructions.size(); ++k) {
        try {
            std::visit(
                [&](const auto& instr) {
                    using T = std::decay_t<decltype(instr)>;
                    if constexpr (std::is_same_v<T, CoherentInstr>) {
                        state = displace(state, instr.mode, {instr.re, instr.im});
                    } else if constexpr (std::is_same_v<T, TmsqInstr>) {
                        state = two_mode_squeeze(state, instr.mode_a, instr.mode_b, instr.gain,
                                                 instr.phase);
                    } else if constexpr (std::is_same_v<T, BsInstr>) {
                        state = beam_split(state, instr.mode_a, instr.mode_b,
                                           instr.transmissivity);
                    } else if constexpr (std::is_same_v<T, LossInstr>) {
                        state = loss(state, instr.mode, instr.fraction);
                    } else if constexpr (std::is_same_v<T, PhaseInstr>) {
                        state = phase_shift(state, instr.mode, instr.phase);
                    } else if constexpr (std::is_same_v<T, ReportCoherenceInstr>) {
                        const GaussianState reduced = reduce(state, instr.modes);
                        std::vector<int> whole(instr.modes.size());
                        for (std::size_t m = 0; m < whole.size(); ++m)
                            whole[m] = static_cast<int>(m);
                        records.push_back(ReportRecord{
                            k + 1, false, instr.modes, {},
                            coherence_report(reduced, whole, {})});
                    } else {
                        std::vector<int> keep = instr.modes_a;
                        keep.insert(keep.end(), instr.modes_b.begin(), instr.modes_b.end());
                        const GaussianState reduced = reduce(state, keep);
                        std::vector<int> part_a(instr.modes_a.size());
                        std::vector<int> part_b(instr.modes_b.size());
                        for (std::size_t m = 0; m < part_a.size(); ++m)
                            part_a[m] = static_cast<int>(m);
                        for (std::size_t m = 0; m < part_b.size(); ++m)
                            part_b[m] = static_cast<int>(part_a.size() + m);
                        records.push_back(ReportRecord{
                            k + 1, true, instr.modes_a, instr.modes_b,
                            coherence_report(reduced, part_a, part_b)});
                    }
                },
                program.instructions[k]);
        } catch (const NumericalError& err) {
            throw NumericalError("instruction " + std::to_string(k + 1) + ": " + err.what());
        }
    }
    return records;
}

}  // namespace acnc

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

using Catch::Approx;
using namespace acnc;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    return parts;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    for (const std::string& line : split(text, '\n'))
        if (!line.empty()) rows.push_back(split(line, ','));
    return rows;
}

double to_double(const std::string& text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    REQUIRE(res.ec == std::errc{});
    REQUIRE(res.ptr == text.data() + text.size());
    return value;
}

int significant_digits(const std::string& text) {
    int count = 0;
    bool leading = true;
    for (char ch : text) {
        if (ch == 'e' || ch == 'E') break;
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++count;
    }
    return count == 0 ? 1 : count;
}

CircuitProgram random_program(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283);
    std::normal_distribution<double> normal(0.0, 1.0);

    CircuitProgram program;
    program.n_modes = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto pick_mode = [&] {
        return std::uniform_int_distribution<int>(0, program.n_modes - 1)(rng);
    };
    const auto pick_subset = [&](int at_least) {
        std::vector<int> modes(program.n_modes);
        for (int k = 0; k < program.n_modes; ++k) modes[k] = k;
        std::shuffle(modes.begin(), modes.end(), rng);
        const int count =
            std::uniform_int_distribution<int>(at_least, program.n_modes)(rng);
        modes.resize(count);
        return modes;
    };

    const int count = std::uniform_int_distribution<int>(1, 8)(rng);
    for (int k = 0; k < count; ++k) {
        int kind = std::uniform_int_distribution<int>(0, 6)(rng);
        if (program.n_modes < 2 && (kind == 1 || kind == 2 || kind == 6)) kind = 0;
        switch (kind) {
            case 0:
                program.instructions.push_back(
                    CoherentInstr{pick_mode(), normal(rng), normal(rng)});
                break;
            case 1: {
                const int i = pick_mode();
                int j = pick_mode();
                while (j == i) j = pick_mode();
                program.instructions.push_back(
                    TmsqInstr{i, j, 1.0 + 2.0 * unit(rng), angle(rng)});
                break;
            }
            case 2: {
                const int i = pick_mode();
                int j = pick_mode();
                while (j == i) j = pick_mode();
                program.instructions.push_back(BsInstr{i, j, unit(rng)});
                break;
            }
            case 3:
                program.instructions.push_back(LossInstr{pick_mode(), unit(rng)});
                break;
            case 4:
                program.instructions.push_back(PhaseInstr{pick_mode(), angle(rng)});
                break;
            case 5:
                program.instructions.push_back(ReportCoherenceInstr{pick_subset(1)});
                break;
            default: {
                auto modes = pick_subset(2);
                const int cut =
                    std::uniform_int_distribution<int>(1, static_cast<int>(modes.size()) - 1)(
                        rng);
                ReportSplitInstr instr;
                instr.modes_a.assign(modes.begin(), modes.begin() + cut);
                instr.modes_b.assign(modes.begin() + cut, modes.end());
                program.instructions.push_back(std::move(instr));
                break;
            }
        }
    }
    return program;
}

int line_of(const std::string& text) {
    try {
        parse_circuit(text);
    } catch (const ParseError& err) {
        return err.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("circuit parsing accepts the basic grammar", "[circuit]") {
    SECTION("minimal program") {
        const CircuitProgram program =
            parse_circuit("modes 1\ncoherent 0 1 0\nreport coherence 0\n");
        CircuitProgram expected;
        expected.n_modes = 1;
        expected.instructions.push_back(CoherentInstr{0, 1.0, 0.0});
        expected.instructions.push_back(ReportCoherenceInstr{{0}});
        REQUIRE(program == expected);
    }
    SECTION("unit-gain squeezer") {
        const CircuitProgram program = parse_circuit("modes 2\ntmsq 0 1 1.0 0\n");
        REQUIRE(program.instructions.size() == 1);
        const auto& instr = std::get<TmsqInstr>(program.instructions[0]);
        REQUIRE(instr.gain == 1.0);
        REQUIRE(instr.phase == 0.0);
    }
    SECTION("pi-literal angles") {
        const CircuitProgram program = parse_circuit(
            "modes 2\nphase 0 pi\nphase 1 -pi\nphase 0 0.5*pi\ntmsq 0 1 2 -0.25*pi\n");
        REQUIRE(std::get<PhaseInstr>(program.instructions[0]).phase ==
                Approx(std::numbers::pi));
        REQUIRE(std::get<PhaseInstr>(program.instructions[1]).phase ==
                Approx(-std::numbers::pi));
        REQUIRE(std::get<PhaseInstr>(program.instructions[2]).phase ==
                Approx(0.5 * std::numbers::pi));
        REQUIRE(std::get<TmsqInstr>(program.instructions[3]).phase ==
                Approx(-0.25 * std::numbers::pi));
    }
    SECTION("comments and blank lines") {
        const CircuitProgram program = parse_circuit(
            "# header comment\n\nmodes 2   # trailing comment\n\n  coherent 0 1 0\n"
            "# another\nreport split 0 | 1\n");
        REQUIRE(program.n_modes == 2);
        REQUIRE(program.instructions.size() == 2);
        const auto& report = std::get<ReportSplitInstr>(program.instructions[1]);
        REQUIRE(report.modes_a == std::vector<int>{0});
        REQUIRE(report.modes_b == std::vector<int>{1});
    }
    SECTION("windows line endings") {
        REQUIRE(parse_circuit("modes 1\r\ncoherent 0 1 0\r\n").n_modes == 1);
    }
}

TEST_CASE("circuit parsing reports line numbers", "[circuit]") {
    REQUIRE(line_of("modes 1\nbs 0 1 0.9\n") == 2);
    REQUIRE(line_of("coherent 0 1 0\n") == 1);
    REQUIRE(line_of("modes 0\n") == 1);
    REQUIRE(line_of("modes 2\n\n\nfrobnicate 0\n") == 4);
    REQUIRE(line_of("modes 2\ntmsq 0 1 0.5 0\n") == 2);
    REQUIRE(line_of("modes 2\ntmsq 0 0 2 0\n") == 2);
    REQUIRE(line_of("modes 2\nbs 0 1 1.5\n") == 2);
    REQUIRE(line_of("modes 2\nloss 0\n") == 2);
    REQUIRE(line_of("modes 2\nloss 0 0.1 0.2\n") == 2);
    REQUIRE(line_of("modes 2\nphase 0 2pi\n") == 2);
    REQUIRE(line_of("modes 2\nphase 0 pi*2\n") == 2);
    REQUIRE(line_of("modes 2\nreport coherence\n") == 2);
    REQUIRE(line_of("modes 2\nreport coherence 0 0\n") == 2);
    REQUIRE(line_of("modes 2\nreport split 0 1\n") == 2);
    REQUIRE(line_of("modes 2\nreport split 0 |\n") == 2);
    REQUIRE(line_of("modes 2\nreport split 0 | 0\n") == 2);
    REQUIRE(line_of("modes 2\nreport nonsense 0\n") == 2);
    REQUIRE(line_of("modes 2\nmodes 3\n") == 2);
    REQUIRE(line_of("modes 2\n") == 1);  // no instructions
    REQUIRE(line_of("") == 1);

    try {
        parse_circuit("modes 1\nbs 0 1 0.9\n");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        REQUIRE(std::string(err.what()).find("line 2") != std::string::npos);
        REQUIRE(std::string(err.what()).find("out of range") != std::string::npos);
    }
}

TEST_CASE("circuit execution", "[circuit]") {
    SECTION("coherent state report") {
        const auto records =
            execute(parse_circuit("modes 1\ncoherent 0 1 0\nreport coherence 0\n"));
        REQUIRE(records.size() == 1);
        REQUIRE_FALSE(records[0].split);
        REQUIRE(records[0].instruction_index == 2);
        REQUIRE(records[0].report.total == Approx(2.0).margin(1e-9));
    }
    SECTION("squeezed vacuum split report") {
        const auto records =
            execute(parse_circuit("modes 2\ntmsq 0 1 3 0\nreport split 0 | 1\n"));
        REQUIRE(records.size() == 1);
        REQUIRE(records[0].split);
        REQUIRE(records[0].report.local_sum == Approx(0.0).margin(1e-9));
        REQUIRE(records[0].report.correlated ==
                Approx(records[0].report.total).margin(1e-9));
        REQUIRE(records[0].report.total > 1.0);
    }
    SECTION("no reports, no records") {
        REQUIRE(execute(parse_circuit("modes 1\ncoherent 0 1 0\n")).empty());
    }
    SECTION("records arrive in program order") {
        const auto records = execute(parse_circuit(
            "modes 2\nreport coherence 0\ncoherent 0 1 0\nreport coherence 0 1\n"));
        REQUIRE(records.size() == 2);
        REQUIRE(records[0].instruction_index == 1);
        REQUIRE(records[1].instruction_index == 3);
        REQUIRE(records[0].report.total == Approx(0.0).margin(1e-9));
        REQUIRE(records[1].report.total == Approx(2.0).margin(1e-9));
    }
}

TEST_CASE("circuit render round-trip", "[circuit][property]") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const CircuitProgram program = random_program(rng);
        const std::string text = render_circuit(program);
        REQUIRE(parse_circuit(text) == program);
    }
}

TEST_CASE("csv number formatting", "[circuit]") {
    SECTION("padding to nine significant digits") {
        REQUIRE(format_csv_number(2.0) == "2.00000000");
        REQUIRE(format_csv_number(0.0) == "0.00000000");
        REQUIRE(format_csv_number(-1.5) == "-1.50000000");
        REQUIRE(format_csv_number(0.05) == "0.0500000000");
        REQUIRE(format_csv_number(0.1) == "0.100000000");
        REQUIRE(format_csv_number(1e30) == "1.00000000e+30");
        REQUIRE(format_csv_number(1.2e-7) == "1.20000000e-07");
    }
    SECTION("long values pass through") {
        REQUIRE(format_csv_number(1.0452261306532664) == "1.0452261306532664");
    }
    SECTION("round-trip and digit count on random values") {
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> mantissa(-10.0, 10.0);
        std::uniform_int_distribution<int> exponent(-12, 12);
        for (int trial = 0; trial < 500; ++trial) {
            const double value = mantissa(rng) * std::pow(10.0, exponent(rng));
            const std::string text = format_csv_number(value);
            REQUIRE(to_double(text) == value);
            REQUIRE(significant_digits(text) >= 9);
        }
    }
}

TEST_CASE("figure sweeps", "[circuit]") {
    FigureParams params;
    params.steps = 5;

    SECTION("coherent-input lossless table") {
        std::ostringstream out;
        run_figure(Figure::Fig2, params, out);
        const auto rows = parse_csv(out.str());
        REQUIRE(rows.size() == 6);
        const std::vector<std::string> header{"g1", "c_input", "c_noise", "c_acnc"};
        REQUIRE(rows[0] == header);
        REQUIRE(to_double(rows[1][0]) == 1.0);
        REQUIRE(to_double(rows[1][1]) == Approx(2.0).margin(1e-9));
        REQUIRE(to_double(rows[1][2]) == Approx(1.89620).margin(1e-4));
        REQUIRE(to_double(rows[1][3]) == Approx(1.58578).margin(1e-4));
        REQUIRE(to_double(rows[5][0]) == 10.0);
        for (std::size_t r = 1; r < rows.size(); ++r)
            REQUIRE(to_double(rows[r][1]) == Approx(2.0).margin(1e-9));
    }
    SECTION("lossy table headers carry the loss pair") {
        std::ostringstream out;
        run_figure(Figure::Fig3, params, out);
        const auto rows = parse_csv(out.str());
        const std::vector<std::string> expected{
            "g1", "c_input", "c_acnc_la0.1_lb0.05", "c_acnc_la0.1_lb0.1",
            "c_acnc_la0.2_lb0.05", "c_acnc_la0.2_lb0.1"};
        REQUIRE(rows[0] == expected);
        // Loss keeps every point strictly below the input value.
        for (std::size_t r = 1; r < rows.size(); ++r)
            for (std::size_t c = 2; c < rows[r].size(); ++c)
                REQUIRE(to_double(rows[r][c]) < 2.0);
    }
    SECTION("zero-loss lossy table degenerates to the lossless one") {
        FigureParams zero = params;
        zero.loss_pairs = {{0.0, 0.0}};
        std::ostringstream lossy, lossless;
        run_figure(Figure::Fig3, zero, lossy);
        run_figure(Figure::Fig2, params, lossless);
        const auto rows_lossy = parse_csv(lossy.str());
        const auto rows_lossless = parse_csv(lossless.str());
        for (std::size_t r = 1; r < rows_lossy.size(); ++r)
            REQUIRE(std::abs(to_double(rows_lossy[r][2]) -
                             to_double(rows_lossless[r][3])) <= 1e-12);
    }
    SECTION("bipartite tables") {
        std::ostringstream out5;
        run_figure(Figure::Fig5, params, out5);
        const auto rows5 = parse_csv(out5.str());
        const std::vector<std::string> expected5{
            "g1", "input_total", "input_local", "input_correlated",
            "noise_total", "noise_local", "noise_correlated",
            "acnc_total", "acnc_local", "acnc_correlated"};
        REQUIRE(rows5[0] == expected5);
        REQUIRE(rows5.size() == 6);

        std::ostringstream out6;
        run_figure(Figure::Fig6, params, out6);
        const auto rows6 = parse_csv(out6.str());
        REQUIRE(rows6[0].size() == 16);
        REQUIRE(rows6[0][4] == "acnc_total_la0.1_lb0.05");
        REQUIRE(rows6[0][15] == "acnc_correlated_la0.2_lb0.1");
    }
    SECTION("every field is finite with nine significant digits") {
        std::ostringstream out;
        run_figure(Figure::Fig5, params, out);
        const auto rows = parse_csv(out.str());
        for (std::size_t r = 1; r < rows.size(); ++r) {
            for (const std::string& field : rows[r]) {
                const double value = to_double(field);
                REQUIRE(std::isfinite(value));
                REQUIRE(significant_digits(field) >= 9);
            }
        }
    }
    SECTION("library output is deterministic") {
        std::ostringstream first, second;
        run_figure(Figure::Fig6, params, first);
        run_figure(Figure::Fig6, params, second);
        REQUIRE(first.str() == second.str());
    }
    SECTION("parameter validation") {
        FigureParams bad = params;
        bad.g1_min = 0.5;
        std::ostringstream out;
        REQUIRE_THROWS_AS(run_figure(Figure::Fig2, bad, out), ValidationError);
        bad = params;
        bad.g1_min = 5.0;
        bad.g1_max = 2.0;
        REQUIRE_THROWS_AS(run_figure(Figure::Fig2, bad, out), ValidationError);
        bad = params;
        bad.steps = 0;
        REQUIRE_THROWS_AS(run_figure(Figure::Fig2, bad, out), ValidationError);
    }
}

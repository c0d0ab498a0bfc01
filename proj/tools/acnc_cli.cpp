// Command-line front end: the four packaged sweeps plus a circuit-file
// interpreter. Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acnc/acnc.hpp"

namespace {

struct FigureFlags {
    acnc::FigureParams params;
    double alpha_re = 1.0;
    double alpha_im = 0.0;
    std::vector<double> la, lb;
    std::string out_path;
};

void add_common_flags(CLI::App* sub, FigureFlags& flags, const std::string& default_out) {
    sub->add_option("--t", flags.params.transmissivity, "beam-splitter transmissivity")
        ->capture_default_str();
    sub->add_option("--alpha-re", flags.alpha_re, "input amplitude, real part")
        ->capture_default_str();
    sub->add_option("--alpha-im", flags.alpha_im, "input amplitude, imaginary part")
        ->capture_default_str();
    sub->add_option("--g1-min", flags.params.g1_min, "sweep start gain")->capture_default_str();
    sub->add_option("--g1-max", flags.params.g1_max, "sweep end gain")->capture_default_str();
    sub->add_option("--steps", flags.params.steps, "number of grid points")
        ->capture_default_str();
    flags.out_path = default_out;
    sub->add_option("--out", flags.out_path, "output CSV path, '-' for stdout")
        ->capture_default_str();
}

void add_source_flags(CLI::App* sub, FigureFlags& flags) {
    sub->add_option("--g0", flags.params.g0, "source squeezer gain")->capture_default_str();
    sub->add_option("--theta", flags.params.theta, "source squeezer phase")
        ->capture_default_str();
}

void add_loss_flags(CLI::App* sub, FigureFlags& flags) {
    sub->add_option("--la", flags.la, "amplifier-side loss fraction (repeatable)");
    sub->add_option("--lb", flags.lb, "propagation loss fraction (repeatable)");
}

void resolve_losses(FigureFlags& flags) {
    if (flags.la.size() != flags.lb.size())
        throw acnc::ValidationError("--la and --lb must be given the same number of times");
    flags.params.loss_pairs.clear();
    for (std::size_t k = 0; k < flags.la.size(); ++k)
        flags.params.loss_pairs.push_back({flags.la[k], flags.lb[k]});
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw acnc::ValidationError("cannot open output file '" + path + "'");
    file << content;
    if (!file) throw acnc::ValidationError("cannot write output file '" + path + "'");
}

void run_figure_command(acnc::Figure figure, FigureFlags& flags) {
    flags.params.alpha = {flags.alpha_re, flags.alpha_im};
    resolve_losses(flags);
    std::ostringstream out;
    acnc::run_figure(figure, flags.params, out);
    write_output(flags.out_path, out.str());
}

std::string join_modes(const std::vector<int>& modes) {
    std::string joined;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        if (k) joined.push_back(';');
        joined += std::to_string(modes[k]);
    }
    return joined;
}

std::string sim_table(const std::vector<acnc::ReportRecord>& records) {
    if (records.empty()) return "";
    std::string out = "kind,modes_a,modes_b,total,c_a,c_b,local_sum,correlated\n";
    for (const acnc::ReportRecord& record : records) {
        const acnc::CoherenceReport& rep = record.report;
        out += record.split ? "split" : "coherence";
        out += "," + join_modes(record.modes_a) + "," + join_modes(record.modes_b);
        out += "," + acnc::format_csv_number(rep.total);
        out += "," + acnc::format_csv_number(rep.local[0].second);
        out += ",";
        if (record.split) out += acnc::format_csv_number(rep.local[1].second);
        out += "," + acnc::format_csv_number(rep.local_sum);
        out += "," + acnc::format_csv_number(rep.correlated);
        out += "\n";
    }
    return out;
}

void run_sim_command(const std::string& circuit_path, const std::string& out_path) {
    std::ifstream file(circuit_path, std::ios::binary);
    if (!file) throw acnc::ValidationError("cannot open circuit file '" + circuit_path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    const acnc::CircuitProgram program = acnc::parse_circuit(buffer.str());
    write_output(out_path, sim_table(acnc::execute(program)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlated noisy channel simulator"};
    app.require_subcommand(1);

    FigureFlags fig2, fig3, fig5, fig6;
    std::string circuit_path;
    std::string sim_out = "-";

    CLI::App* sub2 = app.add_subcommand("fig2", "coherent input, lossless sweep");
    add_common_flags(sub2, fig2, "fig2.csv");

    CLI::App* sub3 = app.add_subcommand("fig3", "coherent input, lossy sweep");
    add_common_flags(sub3, fig3, "fig3.csv");
    add_loss_flags(sub3, fig3);

    CLI::App* sub5 = app.add_subcommand("fig5", "two-mode squeezed input, lossless sweep");
    add_common_flags(sub5, fig5, "fig5.csv");
    add_source_flags(sub5, fig5);

    CLI::App* sub6 = app.add_subcommand("fig6", "two-mode squeezed input, lossy sweep");
    add_common_flags(sub6, fig6, "fig6.csv");
    add_source_flags(sub6, fig6);
    add_loss_flags(sub6, fig6);

    CLI::App* sim = app.add_subcommand("sim", "run a circuit file");
    sim->add_option("circuit", circuit_path, "circuit file path")->required();
    sim->add_option("--out", sim_out, "output CSV path, '-' for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub2->parsed()) run_figure_command(acnc::Figure::Fig2, fig2);
        if (sub3->parsed()) run_figure_command(acnc::Figure::Fig3, fig3);
        if (sub5->parsed()) run_figure_command(acnc::Figure::Fig5, fig5);
        if (sub6->parsed()) run_figure_command(acnc::Figure::Fig6, fig6);
        if (sim->parsed()) run_sim_command(circuit_path, sim_out);
    } catch (const acnc::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const acnc::NumericalError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 0;
}

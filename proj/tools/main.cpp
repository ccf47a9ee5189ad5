#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spinfetch/errors.hpp"
#include "spinfetch/export.hpp"
#include "spinfetch/pipeline.hpp"

namespace fs = std::filesystem;
using namespace spinfetch;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << content;
    if (!file) throw Error("write to '" + path + "' failed");
}

struct SimulateArgs {
    std::string system_path;
    std::string marked_csv;
    bool marked_given = false;
    std::string out_dir = ".";
    std::string expect_csv;
    bool expect_given = false;
    bool ascii = false;
    std::string summary_format = "text";
};

int run_simulate(const SimulateArgs& args) {
    ExperimentConfig config = parse_config(slurp(args.system_path), false);
    if (args.marked_given) {
        config.marked = MarkedSet::parse(args.marked_csv, config.system.n_register);
    }
    check_config(config);

    fs::create_directories(args.out_dir);
    config.outputs.spectrum_csv = (fs::path(args.out_dir) / "spectrum.csv").string();
    config.outputs.summary =
        (fs::path(args.out_dir) / (args.summary_format == "structured" ? "summary.json" : "summary.txt"))
            .string();
    config.outputs.plot = (fs::path(args.out_dir) / "spectrum.svg").string();
    if (config.outputs.spectrum_csv == config.outputs.summary ||
        config.outputs.spectrum_csv == config.outputs.plot ||
        config.outputs.summary == config.outputs.plot)
        throw Error("output paths collide");

    const ExperimentReport report = run_experiment(config);

    write_spectrum_csv(report.dft, config.outputs.spectrum_csv);
    write_file(config.outputs.summary, args.summary_format == "structured"
                                           ? summary_json(report)
                                           : summary_text(report));
    emit_plot(report.dft, config.outputs.plot,
              "ancilla spectrum, marked = {" + report.fetch.marked.to_string() + "}");

    for (std::uint32_t bits : report.fetch.marked.items)
        std::cout << format_bits(bits, report.table.n_register) << "\n";
    if (args.ascii) std::cout << ascii_plot(report.dft);

    if (args.expect_given) {
        const MarkedSet expected = MarkedSet::parse(args.expect_csv, config.system.n_register);
        if (!(expected == report.fetch.marked)) {
            std::cerr << "expected {" << expected.to_string() << "} but recovered {"
                      << report.fetch.marked.to_string() << "}\n";
            return 1;
        }
    }
    return 0;
}

int run_validate(const std::string& system_path, std::optional<double> resolution) {
    const ExperimentConfig config = parse_config(slurp(system_path), false);
    const double res =
        resolution.value_or(spectral_resolution_hz(config.system, config.acquisition));
    const ValidationReport report = validate(config.system, res);
    std::cout << "resolution_hz: " << format_double(res) << "\n";
    std::cout << "min_gap_hz: " << format_double(report.min_gap_hz) << "\n";
    if (report.ok()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const std::string& v : report.violations) std::cout << "violation: " << v << "\n";
    return 1;
}

int run_plot(const std::string& csv_path, const std::string& out_dir, bool ascii) {
    const Spectrum spectrum = read_spectrum_csv(csv_path);
    fs::create_directories(out_dir);
    const std::string out =
        (fs::path(out_dir) / fs::path(csv_path).filename().replace_extension(".svg")).string();
    emit_plot(spectrum, out, fs::path(csv_path).filename().string());
    std::cout << out << "\n";
    if (ascii) std::cout << ascii_plot(spectrum);
    return 0;
}

void print_matrix(const Operator& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) std::cout << " ";
            const Complex v = m(r, c);
            if (v.imag() == 0.0)
                std::cout << format_double(v.real());
            else
                std::cout << format_double(v.real()) << (v.imag() < 0 ? "-" : "+")
                          << format_double(std::abs(v.imag())) << "i";
        }
        std::cout << "\n";
    }
}

int run_oracle(const std::string& system_path, const std::string& marked_csv, bool marked_given,
               const std::string& sequence_path) {
    const ExperimentConfig config = parse_config(slurp(system_path), false);
    const MarkedSet marked = marked_given ? MarkedSet::parse(marked_csv, config.system.n_register)
                                          : config.marked;
    const OracleUnitary compiled = compile_oracle(config.system, marked);
    std::cout << "query matrix for marked = {" << marked.to_string() << "}:\n";
    print_matrix(compiled.matrix);
    if (!sequence_path.empty()) {
        const std::vector<PulseEvent> events = parse_sequence(slurp(sequence_path));
        const Operator net = pulse_unitary(events, config.system);
        std::cout << "pulse-sequence unitary:\n";
        print_matrix(net);
        const double diff = (net - compiled.matrix).cwiseAbs().maxCoeff();
        std::cout << "max |sequence - matrix|: " << format_double(diff) << "\n";
        const Operator product = net * compiled.matrix.adjoint();
        double off_diag = 0.0, mod_spread = 0.0;
        for (Eigen::Index r = 0; r < product.rows(); ++r)
            for (Eigen::Index c = 0; c < product.cols(); ++c)
                if (r != c)
                    off_diag = std::max(off_diag, std::abs(product(r, c)));
                else
                    mod_spread = std::max(mod_spread, std::abs(std::abs(product(r, c)) - 1.0));
        if (off_diag < 1e-9 && mod_spread < 1e-9)
            std::cout << "sequence equals the matrix up to per-state phases\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-query unsorted search on a simulated spin ensemble"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Run the full experiment pipeline");
    simulate->add_option("--system", sim.system_path, "Experiment config file")->required();
    simulate->add_option("--marked", sim.marked_csv, "Marked items, e.g. 10,11 (overrides the file)")
        ->each([&sim](const std::string&) { sim.marked_given = true; });
    simulate->add_option("--out", sim.out_dir, "Output directory (default .)");
    simulate->add_option("--expect", sim.expect_csv, "Fail unless this set is recovered")
        ->each([&sim](const std::string&) { sim.expect_given = true; });
    simulate->add_flag("--ascii-plot", sim.ascii, "Print a terminal rendering of the spectrum");
    simulate->add_option("--summary-format", sim.summary_format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));

    std::string validate_system;
    std::optional<double> validate_resolution;
    double resolution_arg = 0.0;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a working medium only");
    validate_cmd->add_option("--system", validate_system, "Experiment config file")->required();
    validate_cmd->add_option("--resolution", resolution_arg, "Degeneracy resolution in Hz")
        ->each([&validate_resolution, &resolution_arg](const std::string&) {
            validate_resolution = resolution_arg;
        });

    std::string plot_csv;
    std::string plot_out = ".";
    bool plot_ascii = false;
    CLI::App* plot_cmd = app.add_subcommand("plot", "Re-render an existing spectrum CSV");
    plot_cmd->add_option("csv", plot_csv, "spectrum CSV path")->required();
    plot_cmd->add_option("--out", plot_out, "Output directory (default .)");
    plot_cmd->add_flag("--ascii-plot", plot_ascii, "Print a terminal rendering too");

    std::string oracle_system;
    std::string oracle_marked;
    bool oracle_marked_given = false;
    std::string oracle_sequence;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Print a compiled query matrix");
    oracle_cmd->add_option("--system", oracle_system, "Experiment config file")->required();
    oracle_cmd->add_option("--marked", oracle_marked, "Marked items (overrides the file)")
        ->each([&oracle_marked_given](const std::string&) { oracle_marked_given = true; });
    oracle_cmd->add_option("--sequence", oracle_sequence,
                           "Pulse listing; prints its net unitary and compares");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (validate_cmd->parsed()) return run_validate(validate_system, validate_resolution);
        if (plot_cmd->parsed()) return run_plot(plot_csv, plot_out, plot_ascii);
        if (oracle_cmd->parsed())
            return run_oracle(oracle_system, oracle_marked, oracle_marked_given, oracle_sequence);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

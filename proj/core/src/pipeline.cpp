#include "spinfetch/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "spinfetch/errors.hpp"

namespace spinfetch {

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    ExperimentReport report;
    report.config = config;
    report.resolution_hz = spectral_resolution_hz(config.system, config.acquisition);

    const ValidationReport validation = validate(config.system, report.resolution_hz);
    if (!validation.ok()) throw ValidationFailure(validation.joined());

    report.table = transition_table(config.system, report.resolution_hz);
    report.assign_tol_hz =
        config.readout.assign_tol_hz.value_or(report.table.min_gap_hz() / 4.0);

    DeviationDensity state = prepare_I0alpha(config.system);

    OracleUnitary oracle = compile_oracle(config.system, config.marked);
    if (options.oracle_override) {
        if (options.oracle_override->rows() != oracle.matrix.rows() ||
            options.oracle_override->cols() != oracle.matrix.cols())
            throw Error("oracle override has the wrong dimension");
        oracle.matrix = *options.oracle_override;
    }

    state = apply_query(state, oracle);
    ++report.oracle_applications;  // the single-query budget, asserted by callers

    state = readout_pulse(state, config.system);

    report.fid = synthesize_fid(state, config.system, config.acquisition);
    report.dft = dft_spectrum(report.fid, config.acquisition.reference_hz);
    report.closed_form =
        closed_form_spectrum(state, config.system, config.acquisition, report.dft.freq_hz);

    report.max_real_deviation = 0.0;
    report.tallest_peak = 0.0;
    for (std::size_t i = 0; i < report.dft.size(); ++i) {
        report.max_real_deviation =
            std::max(report.max_real_deviation,
                     std::abs(report.dft.values[i].real() - report.closed_form.values[i].real()));
        report.tallest_peak = std::max(report.tallest_peak,
                                       std::abs(report.closed_form.values[i].real()));
    }

    report.fetch = fetch_marked(report.dft, report.table, config.readout.threshold_fraction,
                                report.assign_tol_hz);
    return report;
}

}  // namespace spinfetch

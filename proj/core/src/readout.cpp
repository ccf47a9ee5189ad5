#include "spinfetch/readout.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinfetch/errors.hpp"

namespace spinfetch {

std::vector<Peak> detect_peaks(const Spectrum& spectrum, double threshold_fraction) {
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        throw std::invalid_argument("threshold_fraction must lie in (0,1)");
    const std::size_t n = spectrum.size();
    if (n < 3) throw std::invalid_argument("detect_peaks: need at least 3 points");

    double max_abs = 0.0;
    for (const auto& v : spectrum.values) max_abs = std::max(max_abs, std::abs(v.real()));
    if (max_abs == 0.0) throw NoPeaks("spectrum is identically zero");
    const double threshold = threshold_fraction * max_abs;

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double y0 = spectrum.values[i - 1].real();
        const double y1 = spectrum.values[i].real();
        const double y2 = spectrum.values[i + 1].real();
        const bool is_max = y1 > y0 && y1 >= y2 && y1 > 0.0;
        const bool is_min = y1 < y0 && y1 <= y2 && y1 < 0.0;
        if (!is_max && !is_min) continue;
        if (std::abs(y1) < threshold) continue;

        // Three-point parabolic refinement of position and height.
        const double denom = y0 - 2.0 * y1 + y2;
        double shift = 0.0;
        if (std::abs(denom) > 1e-300) shift = 0.5 * (y0 - y2) / denom;
        shift = std::clamp(shift, -0.5, 0.5);
        const double spacing = 0.5 * (spectrum.freq_hz[i + 1] - spectrum.freq_hz[i - 1]);
        Peak peak;
        peak.freq_hz = spectrum.freq_hz[i] + shift * spacing;
        peak.height = y1 - 0.25 * (y0 - y2) * shift;
        peaks.push_back(peak);
    }
    if (peaks.empty()) throw NoPeaks("no extremum above threshold " + std::to_string(threshold));
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.freq_hz > b.freq_hz; });
    return peaks;
}

std::vector<Peak> assign_peaks(std::vector<Peak> peaks, const TransitionTable& table,
                               double tol_hz) {
    if (!(tol_hz > 0.0)) throw std::invalid_argument("assignment tolerance must be positive");
    std::vector<bool> taken(table.rows.size(), false);
    for (Peak& peak : peaks) {
        long match = -1;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            if (std::abs(table.rows[r].freq_hz - peak.freq_hz) > tol_hz) continue;
            if (match >= 0) {
                std::ostringstream msg;
                msg << "peak at " << peak.freq_hz << " Hz matches transitions "
                    << format_bits(table.rows[static_cast<std::size_t>(match)].register_bits,
                                   table.n_register)
                    << " and " << format_bits(table.rows[r].register_bits, table.n_register)
                    << " within " << tol_hz << " Hz";
                throw AmbiguousAssignment(msg.str());
            }
            match = static_cast<long>(r);
        }
        if (match < 0) continue;
        if (taken[static_cast<std::size_t>(match)]) {
            std::ostringstream msg;
            msg << "two peaks claim transition "
                << format_bits(table.rows[static_cast<std::size_t>(match)].register_bits,
                               table.n_register);
            throw DuplicateAssignment(msg.str());
        }
        taken[static_cast<std::size_t>(match)] = true;
        peak.assigned = table.rows[static_cast<std::size_t>(match)].register_bits;
    }
    return peaks;
}

FetchResult fetch_marked(const Spectrum& spectrum, const TransitionTable& table,
                         double threshold_fraction, double tol_hz) {
    FetchResult result;
    result.peaks = assign_peaks(detect_peaks(spectrum, threshold_fraction), table, tol_hz);
    result.marked.n_register = table.n_register;
    for (const Peak& peak : result.peaks) {
        if (!peak.assigned) continue;
        if (peak.height < 0.0)
            result.marked.items.push_back(*peak.assigned);
        else
            result.unmarked.push_back(*peak.assigned);
    }
    std::sort(result.marked.items.begin(), result.marked.items.end());
    std::sort(result.unmarked.begin(), result.unmarked.end());
    for (const TransitionRow& row : table.rows) {
        const bool seen = std::any_of(result.peaks.begin(), result.peaks.end(), [&](const Peak& p) {
            return p.assigned && *p.assigned == row.register_bits;
        });
        if (!seen) result.unseen.push_back(row.register_bits);
    }
    return result;
}

}  // namespace spinfetch

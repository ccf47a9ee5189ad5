#include "spinfetch/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinfetch/errors.hpp"

namespace spinfetch {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

double parse_field(const std::string& field, const std::string& path, int line) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw Error(path + ": bad number '" + field + "' on line " + std::to_string(line));
    return out;
}

std::string signed_label(double height) { return height < 0.0 ? "down" : "up"; }

}  // namespace

std::string spectrum_csv(const Spectrum& spectrum) {
    std::string out = "freq_hz,real,imag\n";
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        out += format_double(spectrum.freq_hz[i]);
        out += ',';
        out += format_double(spectrum.values[i].real());
        out += ',';
        out += format_double(spectrum.values[i].imag());
        out += '\n';
    }
    return out;
}

void write_spectrum_csv(const Spectrum& spectrum, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << spectrum_csv(spectrum);
    if (!file) throw Error("write to '" + path + "' failed");
}

Spectrum read_spectrum_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "'");
    Spectrum spectrum;
    spectrum.provenance = Spectrum::Provenance::dft;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "freq_hz,real,imag")
                throw Error(path + ": expected header 'freq_hz,real,imag'");
            continue;
        }
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string freq, re, im;
        if (!std::getline(row, freq, ',') || !std::getline(row, re, ',') ||
            !std::getline(row, im, ','))
            throw Error(path + ": expected three columns on line " + std::to_string(line_no));
        spectrum.freq_hz.push_back(parse_field(freq, path, line_no));
        spectrum.values.emplace_back(parse_field(re, path, line_no), parse_field(im, path, line_no));
    }
    if (spectrum.freq_hz.empty()) throw Error(path + ": no data rows");
    return spectrum;
}

std::string summary_text(const ExperimentReport& report) {
    const SpinSystem& sys = report.config.system;
    std::ostringstream out;
    out << "spinfetch run summary\n";
    out << "system: " << sys.n_register << " register spins + ancilla\n";
    out << "offsets_hz:";
    for (double f : sys.offset_hz) out << " " << format_double(f);
    out << "\n";
    out << "couplings_hz:";
    for (int j = 0; j < sys.spin_count(); ++j)
        for (int k = j + 1; k < sys.spin_count(); ++k)
            if (sys.coupling_hz[j][k] != 0.0)
                out << " J" << j << "." << k << "=" << format_double(sys.coupling_hz[j][k]);
    out << "\n";
    out << "t2_s: " << format_double(sys.t2_s) << "\n";
    out << "acquisition: dwell_s=" << format_double(report.config.acquisition.dwell_s)
        << " points=" << report.config.acquisition.points
        << " reference_hz=" << format_double(report.config.acquisition.reference_hz)
        << " scale=" << format_double(report.config.acquisition.scale) << "\n";
    out << "readout: threshold=" << format_double(report.config.readout.threshold_fraction)
        << " tol_hz=" << format_double(report.assign_tol_hz) << "\n";
    out << "resolution_hz: " << format_double(report.resolution_hz) << "\n";
    out << "marked_input: " << report.config.marked.to_string() << "\n";
    out << "preparation:\n";
    {
        std::istringstream seq(format_sequence(preparation_sequence(sys)));
        std::string line;
        while (std::getline(seq, line)) out << "  " << line << "\n";
    }
    out << "transitions (frequency descending):\n";
    for (const TransitionRow& row : report.table.rows)
        out << "  " << format_bits(row.register_bits, report.table.n_register) << "  "
            << format_double(row.freq_hz) << " Hz\n";
    out << "peaks (frequency descending):\n";
    for (const Peak& peak : report.fetch.peaks) {
        out << "  " << format_double(peak.freq_hz) << " Hz  height "
            << format_double(peak.height) << "  " << signed_label(peak.height) << "  -> "
            << (peak.assigned ? format_bits(*peak.assigned, report.table.n_register)
                              : std::string("(unassigned)"))
            << "\n";
    }
    out << "recovered_marked: " << report.fetch.marked.to_string() << "\n";
    out << "unseen:";
    if (report.fetch.unseen.empty()) out << " (none)";
    for (std::uint32_t bits : report.fetch.unseen)
        out << " " << format_bits(bits, report.table.n_register);
    out << "\n";
    out << "oracle_applications: " << report.oracle_applications << "\n";
    out << "max |Re dft - Re closed_form|: " << format_double(report.max_real_deviation);
    if (report.tallest_peak > 0.0)
        out << " (" << format_double(100.0 * report.max_real_deviation / report.tallest_peak)
            << "% of tallest peak)";
    out << "\n";
    return out.str();
}

std::string summary_json(const ExperimentReport& report) {
    using json = nlohmann::ordered_json;
    const SpinSystem& sys = report.config.system;
    json doc;
    doc["register_spins"] = sys.n_register;
    doc["offsets_hz"] = sys.offset_hz;
    json couplings = json::array();
    for (int j = 0; j < sys.spin_count(); ++j)
        for (int k = j + 1; k < sys.spin_count(); ++k)
            if (sys.coupling_hz[j][k] != 0.0)
                couplings.push_back({{"spins", {j, k}}, {"j_hz", sys.coupling_hz[j][k]}});
    doc["couplings"] = couplings;
    doc["t2_s"] = sys.t2_s;
    doc["acquisition"] = {{"dwell_s", report.config.acquisition.dwell_s},
                          {"points", report.config.acquisition.points},
                          {"reference_hz", report.config.acquisition.reference_hz},
                          {"scale", report.config.acquisition.scale}};
    doc["readout"] = {{"threshold", report.config.readout.threshold_fraction},
                      {"tol_hz", report.assign_tol_hz}};
    doc["resolution_hz"] = report.resolution_hz;
    doc["marked_input"] = report.config.marked.to_string();
    json transitions = json::array();
    for (const TransitionRow& row : report.table.rows)
        transitions.push_back({{"register", format_bits(row.register_bits, report.table.n_register)},
                               {"freq_hz", row.freq_hz}});
    doc["transitions"] = transitions;
    json peaks = json::array();
    for (const Peak& peak : report.fetch.peaks) {
        json p = {{"freq_hz", peak.freq_hz},
                  {"height", peak.height},
                  {"sign", signed_label(peak.height)}};
        if (peak.assigned)
            p["register"] = format_bits(*peak.assigned, report.table.n_register);
        else
            p["register"] = nullptr;
        peaks.push_back(p);
    }
    doc["peaks"] = peaks;
    doc["recovered_marked"] = report.fetch.marked.to_string();
    json unseen = json::array();
    for (std::uint32_t bits : report.fetch.unseen)
        unseen.push_back(format_bits(bits, report.table.n_register));
    doc["unseen"] = unseen;
    doc["oracle_applications"] = report.oracle_applications;
    doc["max_real_deviation"] = report.max_real_deviation;
    doc["tallest_peak"] = report.tallest_peak;
    return doc.dump(2) + "\n";
}

std::string spectrum_svg(const Spectrum& spectrum, const std::string& title) {
    if (spectrum.size() == 0) throw Error("cannot plot an empty spectrum");
    const double width = 960.0, height = 420.0;
    const double left = 60.0, right = 20.0, top = 36.0, bottom = 40.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double fmin = spectrum.freq_hz.front(), fmax = spectrum.freq_hz.back();
    double ymin = 0.0, ymax = 0.0;
    for (const auto& v : spectrum.values) {
        ymin = std::min(ymin, v.real());
        ymax = std::max(ymax, v.real());
    }
    if (ymax == ymin) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    // High frequency on the left, spectrometer style.
    auto x_of = [&](double f) { return left + (fmax - f) / (fmax - fmin) * plot_w; };
    auto y_of = [&](double y) { return top + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"22\" font-family=\"monospace\" font-size=\"14\">"
        << title << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << y_of(0.0) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << y_of(0.0) << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double f = fmax - (fmax - fmin) * tick / 4.0;
        svg << "<line x1=\"" << x_of(f) << "\" y1=\"" << top + plot_h << "\" x2=\"" << x_of(f)
            << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << x_of(f) << "\" y=\"" << top + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
            << format_double(f) << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
        << "frequency (Hz, descending)</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#0b5394\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (i) svg << " ";
        svg << format_double(x_of(spectrum.freq_hz[i])) << ","
            << format_double(y_of(spectrum.values[i].real()));
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

void emit_plot(const Spectrum& spectrum, const std::string& path, const std::string& title) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << spectrum_svg(spectrum, title);
    if (!file) throw Error("write to '" + path + "' failed");
}

std::string ascii_plot(const Spectrum& spectrum, int width, int height) {
    if (spectrum.size() == 0) throw Error("cannot plot an empty spectrum");
    width = std::max(width, 8);
    height = std::max(height, 5);
    if (height % 2 == 0) ++height;  // keep a center row for the baseline

    double max_abs = 0.0;
    for (const auto& v : spectrum.values) max_abs = std::max(max_abs, std::abs(v.real()));
    if (max_abs == 0.0) max_abs = 1.0;

    // Zoom to the occupied band (1% of the tallest line), padded a little.
    std::size_t lo = 0, hi = spectrum.size() - 1;
    while (lo < hi && std::abs(spectrum.values[lo].real()) < 0.01 * max_abs) ++lo;
    while (hi > lo && std::abs(spectrum.values[hi].real()) < 0.01 * max_abs) --hi;
    const double band = spectrum.freq_hz[hi] - spectrum.freq_hz[lo];
    double fmin = spectrum.freq_hz[lo] - 0.1 * band;
    double fmax = spectrum.freq_hz[hi] + 0.1 * band;
    if (fmax == fmin) {
        fmin -= 1.0;
        fmax += 1.0;
    }

    // Column value: the extreme sample in each frequency bucket, high
    // frequency on the left.
    std::vector<double> columns(static_cast<std::size_t>(width), 0.0);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (spectrum.freq_hz[i] < fmin || spectrum.freq_hz[i] > fmax) continue;
        const double rel = (fmax - spectrum.freq_hz[i]) / (fmax - fmin);
        auto col = static_cast<std::size_t>(rel * (width - 1) + 0.5);
        const double y = spectrum.values[i].real();
        if (std::abs(y) > std::abs(columns[col])) columns[col] = y;
    }

    const int half = height / 2;
    std::vector<std::string> grid(static_cast<std::size_t>(height),
                                  std::string(static_cast<std::size_t>(width), ' '));
    grid[static_cast<std::size_t>(half)].assign(static_cast<std::size_t>(width), '-');
    for (int c = 0; c < width; ++c) {
        const double y = columns[static_cast<std::size_t>(c)];
        const int extent = static_cast<int>(std::round(std::abs(y) / max_abs * half));
        for (int r = 1; r <= extent; ++r) {
            const int row = y >= 0.0 ? half - r : half + r;
            grid[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] = '*';
        }
    }
    std::string out;
    for (const std::string& row : grid) out += row + "\n";
    return out;
}

}  // namespace spinfetch

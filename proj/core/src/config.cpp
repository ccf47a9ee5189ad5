#include "spinfetch/config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "spinfetch/errors.hpp"

namespace spinfetch {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const Entry& e) {
    const std::string& v = e.value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("value of '" + e.key + "' is not a number: '" + v + "'", e.line);
    return out;
}

int parse_int(const Entry& e) {
    const std::string& v = e.value;
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("value of '" + e.key + "' is not an integer: '" + v + "'", e.line);
    return out;
}

std::vector<Entry> tokenize(const std::string& text) {
    std::vector<Entry> entries;
    std::set<std::string> seen;
    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "acquisition" && section != "readout")
                throw ConfigError("unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = line_no;
        if (e.section.empty()) throw ConfigError("key '" + e.key + "' outside any section", line_no);
        if (e.key.empty()) throw ConfigError("empty key", line_no);
        const std::string qualified = e.section + "." + e.key;
        if (!seen.insert(qualified).second)
            throw ConfigError("duplicate key '" + e.key + "' in [" + e.section + "]", line_no);
        entries.push_back(std::move(e));
    }
    return entries;
}

// Split "J.0.2" / "offset.1" style dotted keys.
std::vector<std::string> dotted(const std::string& key) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream stream(key);
    while (std::getline(stream, token, '.')) parts.push_back(token);
    return parts;
}

int parse_index(const std::string& part, const Entry& e) {
    int out = -1;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || ptr != part.data() + part.size() || out < 0)
        throw ConfigError("bad spin index '" + part + "' in key '" + e.key + "'", e.line);
    return out;
}

}  // namespace

double spectral_resolution_hz(const SpinSystem& sys, const AcqParams& params) {
    const double bin = 1.0 / (static_cast<double>(params.points) * params.dwell_s);
    double t2_min = sys.t2_s;
    for (const auto& [bits, t2] : sys.t2_override_s) t2_min = std::min(t2_min, t2);
    const double fwhm = 1.0 / (std::numbers::pi * t2_min);
    return std::max(bin, fwhm);
}

ExperimentConfig parse_config(const std::string& text, bool check) {
    const std::vector<Entry> entries = tokenize(text);

    // The register size gates every other system key.
    int spins = -1;
    int spins_line = 0;
    for (const Entry& e : entries) {
        if (e.section == "system" && e.key == "spins") {
            spins = parse_int(e);
            spins_line = e.line;
        }
    }
    if (spins < 0) throw ConfigError("missing required key 'spins' in [system]", 1);
    if (spins < 1 || spins > 10)
        throw ConfigError("spins must be between 1 and 10, got " + std::to_string(spins),
                          spins_line);

    ExperimentConfig config;
    config.system.n_register = spins;
    config.system.offset_hz.assign(static_cast<std::size_t>(spins) + 1, 0.0);
    config.system.coupling_hz.assign(static_cast<std::size_t>(spins) + 1,
                                     std::vector<double>(static_cast<std::size_t>(spins) + 1, 0.0));
    config.marked.n_register = spins;

    for (const Entry& e : entries) {
        const std::vector<std::string> parts = dotted(e.key);
        if (e.section == "system") {
            if (e.key == "spins") continue;
            if (e.key == "t2") {
                config.system.t2_s = parse_number(e);
            } else if (e.key == "marked") {
                try {
                    config.marked = MarkedSet::parse(e.value, spins);
                } catch (const Error& err) {
                    throw ConfigError(err.what(), e.line);
                }
            } else if (parts.size() == 2 && parts[0] == "offset") {
                const int j = parse_index(parts[1], e);
                if (j > spins)
                    throw ConfigError("offset index " + std::to_string(j) + " exceeds spin count",
                                      e.line);
                config.system.offset_hz[static_cast<std::size_t>(j)] = parse_number(e);
            } else if (parts.size() == 3 && parts[0] == "J") {
                const int j = parse_index(parts[1], e);
                const int k = parse_index(parts[2], e);
                if (j > spins || k > spins)
                    throw ConfigError("coupling index exceeds spin count in '" + e.key + "'",
                                      e.line);
                if (j == k) throw ConfigError("self-coupling '" + e.key + "' is not allowed", e.line);
                const double value = parse_number(e);
                config.system.coupling_hz[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = value;
                config.system.coupling_hz[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = value;
            } else {
                throw ConfigError("unknown key '" + e.key + "' in [system]", e.line);
            }
        } else if (e.section == "acquisition") {
            if (e.key == "dwell") config.acquisition.dwell_s = parse_number(e);
            else if (e.key == "points") config.acquisition.points = parse_int(e);
            else if (e.key == "reference") config.acquisition.reference_hz = parse_number(e);
            else if (e.key == "scale") config.acquisition.scale = parse_number(e);
            else throw ConfigError("unknown key '" + e.key + "' in [acquisition]", e.line);
        } else {  // readout
            if (e.key == "threshold") config.readout.threshold_fraction = parse_number(e);
            else if (e.key == "tol") config.readout.assign_tol_hz = parse_number(e);
            else throw ConfigError("unknown key '" + e.key + "' in [readout]", e.line);
        }
    }

    if (check) check_config(config);
    return config;
}

void check_config(const ExperimentConfig& config) {
    std::vector<std::string> problems;

    const AcqParams& acq = config.acquisition;
    if (!(acq.dwell_s > 0.0)) problems.push_back("dwell must be positive");
    if (acq.points < 16 || !std::has_single_bit(static_cast<unsigned>(acq.points)))
        problems.push_back("points must be a power of two, at least 16");
    if (!(config.readout.threshold_fraction > 0.0 && config.readout.threshold_fraction < 1.0))
        problems.push_back("threshold must lie strictly between 0 and 1");
    if (config.readout.assign_tol_hz && !(*config.readout.assign_tol_hz > 0.0))
        problems.push_back("tol must be positive");
    if (!(config.system.t2_s > 0.0)) problems.push_back("t2 must be positive");

    if (problems.empty()) {
        const double resolution = spectral_resolution_hz(config.system, acq);
        const ValidationReport report = validate(config.system, resolution);
        for (const std::string& v : report.violations) problems.push_back(v);

        if (report.ok()) {
            const TransitionTable table = transition_table(config.system);
            const double linewidth = 1.0 / (std::numbers::pi * config.system.t2_s);
            const double width = 1.0 / acq.dwell_s;
            if (width <= table.span_hz() + 4.0 * linewidth) {
                std::ostringstream msg;
                msg << "spectral width " << width << " Hz must exceed the transition span "
                    << table.span_hz() << " Hz plus 4 linewidths";
                problems.push_back(msg.str());
            }
            if (config.readout.assign_tol_hz &&
                *config.readout.assign_tol_hz >= 0.5 * table.min_gap_hz())
                problems.push_back("tol must stay below half the minimum transition gap");
        }
    }

    if (!problems.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < problems.size(); ++i) {
            if (i) joined += "; ";
            joined += problems[i];
        }
        throw ValidationFailure(joined);
    }
}

std::vector<PulseEvent> parse_sequence(const std::string& text) {
    std::vector<PulseEvent> events;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream line(trim(raw));
        std::string word;
        if (!(line >> word)) continue;
        if (word == "pulse") {
            std::string axis_token;
            double angle_deg = 0.0;
            if (!(line >> axis_token >> angle_deg))
                throw ConfigError("pulse needs '<axis> <angle_deg> <spin...>'", line_no);
            Rotation rot;
            if (axis_token == "x") rot.axis = Axis::X;
            else if (axis_token == "y") rot.axis = Axis::Y;
            else if (axis_token == "z") rot.axis = Axis::Z;
            else if (axis_token == "-x") rot.axis = Axis::MinusX;
            else if (axis_token == "-y") rot.axis = Axis::MinusY;
            else if (axis_token == "-z") rot.axis = Axis::MinusZ;
            else throw ConfigError("unknown pulse axis '" + axis_token + "'", line_no);
            rot.angle_rad = angle_deg * std::numbers::pi / 180.0;
            int spin = 0;
            while (line >> spin) rot.targets.push_back(spin);
            if (rot.targets.empty()) throw ConfigError("pulse needs at least one target spin", line_no);
            events.emplace_back(rot);
        } else if (word == "delay") {
            Delay delay;
            if (!(line >> delay.duration_s)) throw ConfigError("delay needs a duration", line_no);
            std::string flag;
            if (line >> flag) {
                if (flag == "nocouple") delay.couplings_active = false;
                else throw ConfigError("unknown delay flag '" + flag + "'", line_no);
            }
            events.emplace_back(delay);
        } else if (word == "grad") {
            events.emplace_back(Gradient{});
        } else {
            throw ConfigError("unknown event '" + word + "'", line_no);
        }
    }
    return events;
}

std::string format_sequence(const std::vector<PulseEvent>& events) {
    std::ostringstream out;
    for (const PulseEvent& event : events) {
        if (const auto* rot = std::get_if<Rotation>(&event)) {
            const char* axis = "";
            switch (rot->axis) {
                case Axis::X: axis = "x"; break;
                case Axis::Y: axis = "y"; break;
                case Axis::Z: axis = "z"; break;
                case Axis::MinusX: axis = "-x"; break;
                case Axis::MinusY: axis = "-y"; break;
                case Axis::MinusZ: axis = "-z"; break;
            }
            out << "pulse " << axis << " " << rot->angle_rad * 180.0 / std::numbers::pi;
            for (int spin : rot->targets) out << " " << spin;
            out << "\n";
        } else if (const auto* delay = std::get_if<Delay>(&event)) {
            out << "delay " << delay->duration_s;
            if (!delay->couplings_active) out << " nocouple";
            out << "\n";
        } else {
            out << "grad\n";
        }
    }
    return out.str();
}

}  // namespace spinfetch

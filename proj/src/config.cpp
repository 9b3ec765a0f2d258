#include "scsf/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace scsf {

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& tok) {
    double v = 0.0;
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        fail(origin, line, "bad number '" + tok + "'");
    return v;
}

long long parse_int(const std::string& origin, int line, const std::string& tok) {
    long long v = 0;
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        fail(origin, line, "bad integer '" + tok + "'");
    return v;
}

bool parse_bool(const std::string& origin, int line, const std::string& tok) {
    if (tok == "on" || tok == "true" || tok == "1") return true;
    if (tok == "off" || tok == "false" || tok == "0") return false;
    fail(origin, line, "bad flag '" + tok + "' (want on/off)");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<FourierTerm> parse_terms(const std::string& origin, int line,
                                     const std::string& value) {
    std::vector<FourierTerm> terms;
    for (const auto& part : split(value, ';')) {
        if (part.empty()) continue;
        const auto toks = tokens(part);
        if (toks.size() != 3)
            fail(origin, line, "coordinate term needs 'freq cos sin', got '" + part + "'");
        FourierTerm t;
        t.freq = static_cast<int>(parse_int(origin, line, toks[0]));
        t.cos_coeff = parse_double(origin, line, toks[1]);
        t.sin_coeff = parse_double(origin, line, toks[2]);
        terms.push_back(t);
    }
    return terms;
}

std::pair<int, int> parse_view(const std::string& origin, int line, const std::string& tok) {
    if (tok.size() != 2) fail(origin, line, "bad view '" + tok + "' (want e.g. xy, xz)");
    const auto axis = [&](char c) -> int {
        switch (c) {
            case 'x': return 0;
            case 'y': return 1;
            case 'z': return 2;
            case 'w': return 3;
        }
        fail(origin, line, std::string("bad view axis '") + c + "'");
    };
    return {axis(tok[0]), axis(tok[1])};
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::map<int, std::vector<FourierTerm>> coords;
    long long dim = -1;
    bool saw_symmetric_plane_key = false;
    bool monitors_symmetric = true;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(origin, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "curve" && section != "flow" && section != "planes" &&
                section != "monitors" && section != "singularity" && section != "output")
                fail(origin, line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty()) fail(origin, line, "key outside any section");

        if (section == "curve") {
            if (key == "dim") {
                dim = parse_int(origin, line, value);
            } else if (key == "samples") {
                cfg.synth_samples = static_cast<std::size_t>(parse_int(origin, line, value));
            } else if (key.rfind("coord", 0) == 0) {
                const std::string idx = key.substr(5);
                if (idx.empty()) fail(origin, line, "coordinate key needs an index (coord0...)");
                const int ci = static_cast<int>(parse_int(origin, line, idx));
                if (ci < 0 || ci > 7) fail(origin, line, "coordinate index out of range [0,7]");
                coords[ci] = parse_terms(origin, line, value);
            } else {
                fail(origin, line, "unknown key '" + key + "' in [curve]");
            }
        } else if (section == "flow") {
            if (key == "vertices")
                cfg.flow.vertices = static_cast<std::size_t>(parse_int(origin, line, value));
            else if (key == "sigma")
                cfg.flow.sigma = parse_double(origin, line, value);
            else if (key == "resample_every")
                cfg.flow.resample_every = static_cast<std::size_t>(parse_int(origin, line, value));
            else if (key == "record_every")
                cfg.flow.record_every = static_cast<std::size_t>(parse_int(origin, line, value));
            else if (key == "max_steps")
                cfg.flow.max_steps = static_cast<std::size_t>(parse_int(origin, line, value));
            else if (key == "length_floor_frac")
                cfg.flow.length_floor_frac = parse_double(origin, line, value);
            else if (key == "curvature_cap_factor")
                cfg.flow.curvature_cap_factor = parse_double(origin, line, value);
            else if (key == "timestep_floor")
                cfg.flow.timestep_floor = parse_double(origin, line, value);
            else if (key == "symmetrize")
                cfg.flow.symmetrize = parse_bool(origin, line, value);
            else
                fail(origin, line, "unknown key '" + key + "' in [flow]");
        } else if (section == "planes") {
            if (key != "plane") fail(origin, line, "unknown key '" + key + "' in [planes]");
            const auto parts = split(value, ':');
            if (parts.size() != 3)
                fail(origin, line, "plane needs '<id> : n0 n1 ... : offset'");
            PlaneSpec spec;
            spec.id = parts[0];
            if (spec.id.empty()) fail(origin, line, "empty plane id");
            std::vector<double> normal;
            for (const auto& tok : tokens(parts[1]))
                normal.push_back(parse_double(origin, line, tok));
            if (normal.size() < 2) fail(origin, line, "plane normal needs >= 2 components");
            const double offset = parse_double(origin, line, parts[2]);
            try {
                spec.plane = Hyperplane::make(std::move(normal), offset);
            } catch (const std::invalid_argument& e) {
                fail(origin, line, e.what());
            }
            for (const auto& p : cfg.planes)
                if (p.id == spec.id) fail(origin, line, "duplicate plane id '" + spec.id + "'");
            cfg.planes.push_back(std::move(spec));
        } else if (section == "monitors") {
            if (key == "ratio")
                cfg.flow.monitor_ratio = parse_bool(origin, line, value);
            else if (key == "symmetric")
                monitors_symmetric = parse_bool(origin, line, value);
            else if (key == "symmetric_plane") {
                cfg.symmetric_plane_id = value;
                saw_symmetric_plane_key = true;
            } else if (key == "projection")
                cfg.flow.monitor_projection = parse_bool(origin, line, value);
            else if (key == "diagnostics")
                cfg.flow.monitor_diagnostics = parse_bool(origin, line, value);
            else if (key == "symmetry_tol")
                cfg.flow.symmetry_tol = parse_double(origin, line, value);
            else
                fail(origin, line, "unknown key '" + key + "' in [monitors]");
        } else if (section == "singularity") {
            if (key == "q_lo")
                cfg.classify.q_lo = parse_double(origin, line, value);
            else if (key == "q_hi")
                cfg.classify.q_hi = parse_double(origin, line, value);
            else if (key == "drift_ratio")
                cfg.classify.drift_ratio = parse_double(origin, line, value);
            else
                fail(origin, line, "unknown key '" + key + "' in [singularity]");
        } else if (section == "output") {
            if (key == "directory")
                cfg.out_dir = value;
            else if (key == "snapshot_every")
                cfg.snapshot_every = static_cast<std::size_t>(parse_int(origin, line, value));
            else if (key == "views") {
                cfg.views.clear();
                for (const auto& tok : tokens(value))
                    cfg.views.push_back(parse_view(origin, line, tok));
            } else if (key == "dump_points")
                cfg.dump_points = parse_bool(origin, line, value);
            else if (key == "quiet")
                cfg.quiet = parse_bool(origin, line, value);
            else if (key == "seed")
                cfg.seed = static_cast<unsigned long long>(parse_int(origin, line, value));
            else
                fail(origin, line, "unknown key '" + key + "' in [output]");
        }
    }

    if (coords.empty()) throw ConfigError(origin + ": no [curve] coordinates given");
    const int max_idx = coords.rbegin()->first;
    if (dim < 0) dim = max_idx + 1;
    if (dim < 2) throw ConfigError(origin + ": curve dimension must be >= 2");
    if (max_idx >= dim)
        throw ConfigError(origin + ": coord" + std::to_string(max_idx) +
                          " exceeds dim = " + std::to_string(dim));
    cfg.flow.initial.coords.assign(static_cast<std::size_t>(dim), {});
    for (auto& [ci, terms] : coords)
        cfg.flow.initial.coords[static_cast<std::size_t>(ci)] = std::move(terms);
    if (cfg.synth_samples == 0) cfg.synth_samples = 4 * cfg.flow.vertices;
    cfg.flow.initial.samples = cfg.synth_samples;

    cfg.flow.planes.clear();
    for (const auto& p : cfg.planes) cfg.flow.planes.push_back(p.plane);

    cfg.flow.monitor_symmetric = monitors_symmetric && !cfg.planes.empty();
    if (saw_symmetric_plane_key) {
        const auto it =
            std::find_if(cfg.planes.begin(), cfg.planes.end(),
                         [&](const PlaneSpec& p) { return p.id == cfg.symmetric_plane_id; });
        if (it == cfg.planes.end())
            throw ConfigError(origin + ": symmetric_plane '" + cfg.symmetric_plane_id +
                              "' is not a declared plane");
        cfg.flow.symmetric_plane = static_cast<std::size_t>(it - cfg.planes.begin());
    } else if (!cfg.planes.empty()) {
        cfg.flow.symmetric_plane = 0;
        cfg.symmetric_plane_id = cfg.planes.front().id;
    }

    for (const auto& [a, b] : cfg.views) {
        if (a == b) throw ConfigError(origin + ": degenerate view (same coordinate twice)");
        if (a >= dim || b >= dim)
            throw ConfigError(origin + ": view coordinate exceeds curve dimension");
    }

    try {
        validate(cfg.flow);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* onoff(bool b) { return b ? "on" : "off"; }

}  // namespace

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[curve]\n";
    out << "dim = " << cfg.flow.initial.coords.size() << "\n";
    out << "samples = " << cfg.flow.initial.samples << "\n";
    for (std::size_t d = 0; d < cfg.flow.initial.coords.size(); ++d) {
        const auto& terms = cfg.flow.initial.coords[d];
        if (terms.empty()) continue;
        out << "coord" << d << " = ";
        for (std::size_t k = 0; k < terms.size(); ++k) {
            if (k) out << "; ";
            out << terms[k].freq << " " << fmt_double(terms[k].cos_coeff) << " "
                << fmt_double(terms[k].sin_coeff);
        }
        out << "\n";
    }
    out << "\n[flow]\n";
    out << "vertices = " << cfg.flow.vertices << "\n";
    out << "sigma = " << fmt_double(cfg.flow.sigma) << "\n";
    out << "resample_every = " << cfg.flow.resample_every << "\n";
    out << "record_every = " << cfg.flow.record_every << "\n";
    out << "max_steps = " << cfg.flow.max_steps << "\n";
    out << "length_floor_frac = " << fmt_double(cfg.flow.length_floor_frac) << "\n";
    out << "curvature_cap_factor = " << fmt_double(cfg.flow.curvature_cap_factor) << "\n";
    out << "timestep_floor = " << fmt_double(cfg.flow.timestep_floor) << "\n";
    out << "symmetrize = " << onoff(cfg.flow.symmetrize) << "\n";
    if (!cfg.planes.empty()) {
        out << "\n[planes]\n";
        for (const auto& p : cfg.planes) {
            out << "plane = " << p.id << " :";
            for (double v : p.plane.normal) out << " " << fmt_double(v);
            out << " : " << fmt_double(p.plane.offset) << "\n";
        }
    }
    out << "\n[monitors]\n";
    out << "ratio = " << onoff(cfg.flow.monitor_ratio) << "\n";
    out << "symmetric = " << onoff(cfg.flow.monitor_symmetric) << "\n";
    if (!cfg.symmetric_plane_id.empty())
        out << "symmetric_plane = " << cfg.symmetric_plane_id << "\n";
    out << "projection = " << onoff(cfg.flow.monitor_projection) << "\n";
    out << "diagnostics = " << onoff(cfg.flow.monitor_diagnostics) << "\n";
    out << "symmetry_tol = " << fmt_double(cfg.flow.symmetry_tol) << "\n";
    out << "\n[singularity]\n";
    out << "q_lo = " << fmt_double(cfg.classify.q_lo) << "\n";
    out << "q_hi = " << fmt_double(cfg.classify.q_hi) << "\n";
    out << "drift_ratio = " << fmt_double(cfg.classify.drift_ratio) << "\n";
    out << "\n[output]\n";
    out << "directory = " << cfg.out_dir << "\n";
    out << "snapshot_every = " << cfg.snapshot_every << "\n";
    out << "views =";
    for (const auto& [a, b] : cfg.views) {
        const char axes[] = {'x', 'y', 'z', 'w'};
        out << " " << axes[a] << axes[b];
    }
    out << "\n";
    out << "dump_points = " << onoff(cfg.dump_points) << "\n";
    out << "quiet = " << onoff(cfg.quiet) << "\n";
    out << "seed = " << cfg.seed << "\n";
    return out.str();
}

}  // namespace scsf

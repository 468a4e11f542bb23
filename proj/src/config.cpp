#include "tumor2d/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tumor2d {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// one mutable binding per config key
struct Binding {
    std::function<void(const std::string&)> set;
    std::function<std::string()> get;
};

template <class T>
T parse_value(const std::string& key, const std::string& raw);

template <>
double parse_value<double>(const std::string& key, const std::string& raw) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(raw, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad numeric value for '" + key + "': " + raw);
    }
    if (pos != raw.size()) throw ParseError("trailing junk in value for '" + key + "'");
    return v;
}

template <>
int parse_value<int>(const std::string& key, const std::string& raw) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(raw, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad integer value for '" + key + "': " + raw);
    }
    if (pos != raw.size()) throw ParseError("trailing junk in value for '" + key + "'");
    return static_cast<int>(v);
}

template <>
std::uint64_t parse_value<std::uint64_t>(const std::string& key, const std::string& raw) {
    size_t pos = 0;
    unsigned long long v;
    try {
        v = std::stoull(raw, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad unsigned value for '" + key + "': " + raw);
    }
    if (pos != raw.size()) throw ParseError("trailing junk in value for '" + key + "'");
    return v;
}

template <>
bool parse_value<bool>(const std::string& key, const std::string& raw) {
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw ParseError("bad boolean value for '" + key + "': " + raw);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::map<std::string, Binding> bindings(RunConfig& c) {
    std::map<std::string, Binding> m;
    auto add_d = [&](const std::string& k, double& ref) {
        m[k] = {[k, &ref](const std::string& s) { ref = parse_value<double>(k, s); },
                [&ref] { return fmt_double(ref); }};
    };
    auto add_i = [&](const std::string& k, int& ref) {
        m[k] = {[k, &ref](const std::string& s) { ref = parse_value<int>(k, s); },
                [&ref] { return std::to_string(ref); }};
    };
    auto add_b = [&](const std::string& k, bool& ref) {
        m[k] = {[k, &ref](const std::string& s) { ref = parse_value<bool>(k, s); },
                [&ref] { return std::string(ref ? "true" : "false"); }};
    };

    add_i("nx", c.nx);
    add_i("ny", c.ny);
    add_d("Lx", c.Lx);
    add_d("Ly", c.Ly);
    add_i("steps", c.steps);
    add_i("snapshot_every", c.snapshot_every);
    m["preset"] = {[&c](const std::string& s) { c.preset = s; },
                   [&c] { return c.preset; }};
    m["seed"] = {[&c](const std::string& s) { c.seed = parse_value<std::uint64_t>("seed", s); },
                 [&c] { return std::to_string(c.seed); }};
    add_d("lesion_cx", c.lesion_cx);
    add_d("lesion_cy", c.lesion_cy);
    add_d("lesion_r", c.lesion_r);

    add_d("tau", c.params.tau);
    add_d("lambda_p", c.params.lambda_p);
    add_d("lambda_a", c.params.lambda_a);
    add_d("lambda_c", c.params.lambda_c);
    add_d("lambda_s0", c.params.lambda_s0);
    add_d("sigma_s", c.params.sigma_s);
    add_d("sigma_gamma", c.params.sigma_gamma);
    add_d("alpha", c.params.alpha);
    add_d("f", c.params.f);
    add_d("lame_lambda", c.params.lame_lambda);
    add_d("lame_mu", c.params.lame_mu);
    add_d("omega", c.params.omega);
    add_d("a_lo", c.params.a_lo);
    add_d("a_hi", c.params.a_hi);
    add_d("h_star", c.params.h_star);
    add_d("r0", c.params.r0);
    add_d("p", c.params.p);
    add_d("c_pi", c.params.c_pi);
    add_b("growth_on", c.params.growth_on);
    add_b("supply_on", c.params.supply_on);
    add_b("mech_on", c.params.mech_on);
    return m;
}

}  // namespace

void RunConfig::validate() const {
    if (nx < 4 || ny < 4) throw ValidationError("nx, ny must be >= 4");
    if (!(Lx > 0.0) || !(Ly > 0.0)) throw ValidationError("Lx, Ly must be positive");
    if (steps < 1) throw ValidationError("steps must be >= 1");
    if (snapshot_every < 0) throw ValidationError("snapshot_every must be >= 0");
    if (preset != "well-bottom" && preset != "random-smooth" && preset != "lesion-disc")
        throw ValidationError("unknown preset: " + preset);
    if (preset == "lesion-disc" && !(lesion_r > 0.0))
        throw ValidationError("lesion_r must be positive");
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

RunConfig parse_config(std::istream& in) {
    RunConfig c;
    auto b = bindings(c);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto it = b.find(key);
        if (it == b.end())
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second.set(val);
    }
    c.validate();
    return c;
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    return parse_config(in);
}

std::string serialize_config(const RunConfig& c) {
    RunConfig copy = c;
    auto b = bindings(copy);
    std::ostringstream out;
    for (const auto& [key, bind] : b) out << key << " = " << bind.get() << "\n";
    return out.str();
}

namespace {

// five passes of the compact averaging stencil with mirror closure
void smooth(ScalarField& f, int passes) {
    const Grid& g = f.grid;
    for (int pass = 0; pass < passes; ++pass) {
        ScalarField next(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int ie = std::min(i + 1, g.nx - 1), iw = std::max(i - 1, 0);
                const int jn = std::min(j + 1, g.ny - 1), js = std::max(j - 1, 0);
                next(i, j) = (4.0 * f(i, j) + f(ie, j) + f(iw, j) + f(i, jn) + f(i, js)) / 8.0;
            }
        f = next;
    }
}

}  // namespace

InitialData make_initial_data(const RunConfig& c) {
    const Grid g = c.make_grid();
    InitialData d;
    d.phi = ScalarField(g);
    d.sigma = ScalarField(g);
    d.z = ScalarField(g);
    d.u = VectorField(g);
    d.v = VectorField(g);
    const double M = c.params.M();

    if (c.preset == "well-bottom") {
        std::fill(d.phi.v.begin(), d.phi.v.end(), 1.0);
        std::fill(d.sigma.v.begin(), d.sigma.v.end(), c.params.sigma_s);
        std::fill(d.z.v.begin(), d.z.v.end(), 0.5);
    } else if (c.preset == "random-smooth") {
        Lcg rng(c.seed);
        for (double& x : d.phi.v) x = rng.next(-0.9, 0.9);
        for (double& x : d.sigma.v) x = rng.next(0.0, M);
        for (double& x : d.z.v) x = rng.next(0.05, 0.95);
        smooth(d.phi, 5);
        smooth(d.sigma, 5);
        smooth(d.z, 5);
    } else if (c.preset == "lesion-disc") {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double dx = g.cell_x(i) - c.lesion_cx;
                const double dy = g.cell_y(j) - c.lesion_cy;
                const double q = 1.0 - (dx * dx + dy * dy) / (c.lesion_r * c.lesion_r);
                const double bump = std::max(0.0, q) * std::max(0.0, q);
                d.phi(i, j) = -1.0 + 2.0 * bump;
                d.z(i, j) = 1.0 - 0.9 * bump;
            }
        std::fill(d.sigma.v.begin(), d.sigma.v.end(), 0.5 * M);
    } else {
        throw ValidationError("unknown preset: " + c.preset);
    }
    return d;
}

}  // namespace tumor2d

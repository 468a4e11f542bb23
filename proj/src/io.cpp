#include "tumor2d/io.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace tumor2d {

namespace {

constexpr const char* kCellHeader = "i,j,x,y,phi,mu,sigma,z";
constexpr const char* kNodeHeader = "i,j,x,y,u1,u2,v1,v2";

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    return in;
}

/// Parse one CSV data row into two ints followed by `vals.size()` doubles.
void parse_row(const std::string& line, const std::string& path, int lineno,
               int& i, int& j, std::vector<double*>& vals) {
    std::istringstream ss(line);
    std::string tok;
    auto next = [&]() -> std::string {
        if (!std::getline(ss, tok, ','))
            throw IoError(path + ":" + std::to_string(lineno) + ": short row");
        return tok;
    };
    i = std::stoi(next());
    j = std::stoi(next());
    next();  // x coordinate, regenerated from the grid on read
    next();  // y coordinate
    for (double* v : vals) *v = std::stod(next());
    if (std::getline(ss, tok, ','))
        throw IoError(path + ":" + std::to_string(lineno) + ": extra columns");
}

}  // namespace

void write_cell_csv(const std::string& path, const StepState& s) {
    auto out = open_out(path);
    out << kCellHeader << "\n";
    const Grid& g = s.phi.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out << i << ',' << j << ',' << g17(g.cell_x(i)) << ',' << g17(g.cell_y(j))
                << ',' << g17(s.phi(i, j)) << ',' << g17(s.mu(i, j)) << ','
                << g17(s.sigma(i, j)) << ',' << g17(s.z(i, j)) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

void write_node_csv(const std::string& path, const StepState& s) {
    auto out = open_out(path);
    out << kNodeHeader << "\n";
    const Grid& g = s.u.grid;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            out << i << ',' << j << ',' << g17(g.node_x(i)) << ',' << g17(g.node_y(j))
                << ',' << g17(s.u.x(i, j)) << ',' << g17(s.u.y(i, j)) << ','
                << g17(s.v.x(i, j)) << ',' << g17(s.v.y(i, j)) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

void read_cell_csv(const std::string& path, StepState& s) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != kCellHeader)
        throw IoError(path + ": bad header, expected '" + kCellHeader + "'");
    const Grid& g = s.phi.grid;
    int rows = 0, lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        int i, j;
        double phi, mu, sigma, z;
        std::vector<double*> vals{&phi, &mu, &sigma, &z};
        parse_row(line, path, lineno, i, j, vals);
        if (i < 0 || i >= g.nx || j < 0 || j >= g.ny)
            throw IoError(path + ":" + std::to_string(lineno) + ": index out of range");
        s.phi(i, j) = phi;
        s.mu(i, j) = mu;
        s.sigma(i, j) = sigma;
        s.z(i, j) = z;
        ++rows;
    }
    if (rows != g.cells()) throw IoError(path + ": row count mismatch");
}

void read_node_csv(const std::string& path, StepState& s) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != kNodeHeader)
        throw IoError(path + ": bad header, expected '" + kNodeHeader + "'");
    const Grid& g = s.u.grid;
    int rows = 0, lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        int i, j;
        double u1, u2, v1, v2;
        std::vector<double*> vals{&u1, &u2, &v1, &v2};
        parse_row(line, path, lineno, i, j, vals);
        if (i < 0 || i > g.nx || j < 0 || j > g.ny)
            throw IoError(path + ":" + std::to_string(lineno) + ": index out of range");
        s.u.x(i, j) = u1;
        s.u.y(i, j) = u2;
        s.v.x(i, j) = v1;
        s.v.y(i, j) = v2;
        ++rows;
    }
    if (rows != g.nodes()) throw IoError(path + ": row count mismatch");
}

EnergyWriter::EnergyWriter(const std::string& path) : out_(path) {
    if (!out_) throw IoError("cannot open for writing: " + path);
    out_ << "k,t,mu_reg,interface,potential,nutrient,kinetic,damage_grad,"
            "damage_yosida,damage_pert,elastic,total,dissipation,verdict\n";
}

void EnergyWriter::row(int k, double t, const EnergyBreakdown& e, double diss, bool ok) {
    out_ << k << ',' << g17(t) << ',' << g17(e.mu_reg) << ',' << g17(e.interface) << ','
         << g17(e.potential) << ',' << g17(e.nutrient) << ',' << g17(e.kinetic) << ','
         << g17(e.damage_grad) << ',' << g17(e.damage_yosida) << ',' << g17(e.damage_pert)
         << ',' << g17(e.elastic) << ',' << g17(e.total()) << ',' << g17(diss) << ','
         << (ok ? "ok" : "VIOLATION") << "\n";
    out_.flush();
}

}  // namespace tumor2d

#pragma once

#include <fstream>
#include <string>

#include "tumor2d/diagnostics.hpp"
#include "tumor2d/stepper.hpp"

namespace tumor2d {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cell-centered snapshot, header "i,j,x,y,phi,mu,sigma,z", one row per
/// cell, i fastest. Values are written with 17 significant digits so a
/// read-back reproduces them bit for bit.
void write_cell_csv(const std::string& path, const StepState& s);

/// Vertex snapshot, header "i,j,x,y,u1,u2,v1,v2", one row per node.
void write_node_csv(const std::string& path, const StepState& s);

/// Read back into fields on the grid already present in s. The header and
/// the row count must match exactly.
void read_cell_csv(const std::string& path, StepState& s);
void read_node_csv(const std::string& path, StepState& s);

/// Per-step energy ledger: one row per accepted step with every energy
/// addend, the total, the dissipation of the step and an ok/VIOLATION
/// verdict column.
class EnergyWriter {
public:
    explicit EnergyWriter(const std::string& path);
    void row(int k, double t, const EnergyBreakdown& e, double diss, bool ok);

private:
    std::ofstream out_;
};

}  // namespace tumor2d

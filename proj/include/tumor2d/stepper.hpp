#pragma once

#include <stdexcept>

#include "tumor2d/constitutive.hpp"
#include "tumor2d/grid.hpp"
#include "tumor2d/ops.hpp"
#include "tumor2d/poisson_dct.hpp"
#include "tumor2d/solvers.hpp"

namespace tumor2d {

/// Complete discrete state after step k.
struct StepState {
    ScalarField phi;    // tumour phase, cell-centered
    ScalarField mu;     // chemical potential, cell-centered
    ScalarField sigma;  // nutrient, cell-centered
    ScalarField z;      // damage, cell-centered
    VectorField u;      // displacement, vertex-centered, zero on boundary
    VectorField v;      // velocity (u - u_prev)/tau
    VectorField u_prev; // displacement one step back (for the inertia term)
    int k = 0;
    double t = 0.0;
};

struct InitialData {
    ScalarField phi, sigma, z;
    VectorField u, v;
};

struct StepOptions {
    /// Negative-control hook: drop the potential regularisation term from
    /// the phase mass balance. Breaks the dissipation structure on purpose.
    bool drop_mu_regularisation = false;
};

struct SubstepReports {
    SolveReport nutrient, phase, damage, displacement;
    int halvings = 0;  // step-halving retries taken inside one advance()
};

struct InvalidInitialData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One-step map of the time discretisation. Sub-problems are solved in the
/// order nutrient -> phase pair -> damage -> displacement; each uses the
/// most recent value of the unknowns solved before it and the previous-step
/// value of the ones after it.
class Stepper {
public:
    Stepper(const Grid& g, const ModelParams& mp);

    /// Validate the initial data (0 <= sigma <= M, 0 <= z <= 1, u and v
    /// zero on the boundary ring, all finite), set mu = 0 and back-fill
    /// u_prev = u - tau*v so the first inertia difference sees v.
    StepState initialize(const InitialData& init) const;

    /// Advance one full time step of size params().tau. On a sub-solver
    /// failure the step is retried as a sequence of half-size steps (up to
    /// three halvings); if that also fails, StepFailure is thrown.
    SubstepReports advance(StepState& s, const StepOptions& opt = {}) const;

    // Individual sub-steps, exposed for targeted tests. Each reads the
    // previous-step values still present in s and overwrites its unknown.
    SolveReport step_nutrient(StepState& s, double tau) const;
    SolveReport step_phase(StepState& s, double tau, const StepOptions& opt = {}) const;
    SolveReport step_damage(StepState& s, double tau,
                            const ScalarField* start = nullptr) const;
    SolveReport step_displacement(StepState& s, double tau) const;

    const Grid& grid() const { return grid_; }
    const ModelParams& params() const { return mp_; }
    const NeumannHelmholtz& helmholtz() const { return helm_; }

private:
    SubstepReports advance_once(StepState& s, double tau, const StepOptions& opt) const;

    Grid grid_;
    ModelParams mp_;
    NeumannHelmholtz helm_;
};

}  // namespace tumor2d

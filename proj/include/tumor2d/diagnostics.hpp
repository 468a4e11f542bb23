#pragma once

#include <vector>

#include "tumor2d/stepper.hpp"

namespace tumor2d {

/// Addends of the discrete free energy of one state. All terms are
/// integrals over the domain; total() is their sum.
struct EnergyBreakdown {
    double mu_reg = 0.0;       // (tau/2) int mu^2
    double interface = 0.0;    // (1/2) int |grad phi|^2
    double potential = 0.0;    // int Psi(phi)
    double nutrient = 0.0;     // (1/2) int sigma^2
    double kinetic = 0.0;      // (1/2) int |v|^2
    double damage_grad = 0.0;  // (1/p) int |grad z|^p
    double damage_yosida = 0.0;  // int beta_hat_tau(z)
    double damage_pert = 0.0;  // int pi_hat(z)
    double elastic = 0.0;      // int W(phi, eps(u), z)

    double total() const {
        return mu_reg + interface + potential + nutrient + kinetic + damage_grad +
               damage_yosida + damage_pert + elastic;
    }
};

EnergyBreakdown energy(const StepState& s, const ModelParams& mp);

/// Nonnegative dissipation produced by the step prev -> next. Together with
/// the energy it satisfies, for the source-free configuration,
///   energy(next) + dissipation(prev, next) <= energy(prev)
/// up to solver tolerances.
double dissipation(const StepState& prev, const StepState& next, const ModelParams& mp);

struct EnergyCheck {
    double e_prev = 0.0, e_next = 0.0, diss = 0.0;
    double slack = 0.0;  // e_prev + tol - e_next - diss, negative on violation
    bool ok = false;
};

/// One-step energy inequality test with relative tolerance
/// 1e-8 * (1 + |E_prev|).
EnergyCheck check_energy_step(const StepState& prev, const StepState& next,
                              const ModelParams& mp);

/// True when sigma lies in [-tol, M + tol] everywhere.
bool check_bounds(const StepState& s, const ModelParams& mp, double tol = 1e-12);

/// Time path of one scalar field sampled at t = k*tau, k = 0..n. Provides
/// the three standard interpolants on (0, n*tau]; a query at time t lands
/// in the interval ((k-1)*tau, k*tau] with k = max(1, ceil(t/tau)).
struct FieldPath {
    double tau = 0.0;
    std::vector<ScalarField> snaps;

    int interval_of(double t) const;
    ScalarField eval_upper(double t) const;   // right endpoint value
    ScalarField eval_lower(double t) const;   // left endpoint value
    ScalarField eval_linear(double t) const;  // linear blend
};

/// L2-in-time, L2-in-space distance between the linear interpolants of two
/// paths over (0, T). Exact: Simpson quadrature on the merged breakpoint
/// partition, where the squared difference is piecewise quadratic in t.
double l2l2_distance(const FieldPath& a, const FieldPath& b, double T);

/// Same-path distance between the linear interpolant and the lower constant
/// one; used to bound the interpolant gap in the refinement study.
double l2l2_linear_vs_lower(const FieldPath& a, double T);

struct TauStudyResult {
    std::vector<double> taus;       // coarse to fine
    std::vector<double> distances;  // phi distance between consecutive levels
};

/// Run the scheme from the same initial data on a ladder of step sizes and
/// report the L2(L2) phase-field distance between consecutive levels.
TauStudyResult tau_refinement(const Grid& g, ModelParams mp, const InitialData& init,
                              double T, const std::vector<double>& taus);

}  // namespace tumor2d

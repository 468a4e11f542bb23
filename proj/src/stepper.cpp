#include "tumor2d/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tumor2d {

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void check_field(const ScalarField& f, const Grid& g, const char* name) {
    if (!f.grid.same_as(g))
        throw InvalidInitialData(std::string(name) + ": grid mismatch");
    if (!f.finite()) throw InvalidInitialData(std::string(name) + ": non-finite values");
}

// Pack a pair of cell fields (or vertex components) into one flat vector.
std::vector<double> pack2(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> x(a.size() + b.size());
    std::copy(a.begin(), a.end(), x.begin());
    std::copy(b.begin(), b.end(), x.begin() + a.size());
    return x;
}

/// Phase-pair Newton problem. Unknown vector is [phi; mu]. The Newton
/// direction is obtained from the Schur complement in phi, which is SPD:
///   [(1/tau) G + D - Lap] dphi = F2 - G F1,   dmu = -F2 + (D - Lap) dphi
/// with G = (I - Lap)^{-1} applied exactly through the cosine transform.
struct PhaseProblem {
    const Grid& g;
    const NeumannHelmholtz& helm;
    double tau;
    bool mu_reg;                 // keep the (mu - mu_prev) regularisation
    const ScalarField& phi_p;    // previous phi
    const ScalarField& mu_p;     // previous mu
    ScalarField U;               // mass source, frozen within the step
    ScalarField wphi0;           // affine part of W_phi at the old strain
    ScalarField acoef;           // h(z_prev) * C R : R, the linear part slope
    double sqrt_m;

    double residual(const std::vector<double>& x, std::vector<double>& r) const {
        const int n = g.cells();
        ScalarField phi(g), mu(g);
        std::copy(x.begin(), x.begin() + n, phi.v.begin());
        std::copy(x.begin() + n, x.end(), mu.v.begin());
        const ScalarField lap_mu = laplacian(mu);
        const ScalarField lap_phi = laplacian(phi);
        r.resize(2 * static_cast<size_t>(n));
        for (int c = 0; c < n; ++c) {
            const double ph = phi.v[c], pp = phi_p.v[c];
            double f1 = (ph - pp) / tau - lap_mu.v[c] - U.v[c];
            if (mu_reg) f1 += mu.v[c] - mu_p.v[c];
            // W_phi is linear in phi at frozen strain and damage
            const double w_phi = wphi0.v[c] + acoef.v[c] * ph;
            const double f2 = mu.v[c] + lap_phi.v[c] - ph * ph * ph + pp - w_phi - (ph - pp);
            r[c] = f1;
            r[c + n] = f2;
        }
        return detail::norm(r) * sqrt_m;  // L2 norm over the domain
    }

    void solve_direction(const std::vector<double>& x, const std::vector<double>& r,
                         std::vector<double>& dx) const {
        const int n = g.cells();
        ScalarField F1(g), F2(g), D(g);
        std::copy(r.begin(), r.begin() + n, F1.v.begin());
        std::copy(r.begin() + n, r.end(), F2.v.begin());
        for (int c = 0; c < n; ++c)
            D.v[c] = 3.0 * x[c] * x[c] + acoef.v[c] + 1.0;

        const ScalarField gF1 = helm.solve(1.0, F1);
        ScalarField rhs(g);
        for (int c = 0; c < n; ++c) rhs.v[c] = F2.v[c] - gF1.v[c];

        const double cbar = mean(D.v);
        auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
            ScalarField f(g);
            f.v = in;
            const ScalarField gf = helm.solve(1.0, f);
            const ScalarField lf = laplacian(f);
            out.resize(in.size());
            for (int c = 0; c < n; ++c)
                out[c] = gf.v[c] / tau + D.v[c] * in[c] - lf.v[c];
        };
        auto precond = [&](const std::vector<double>& in, std::vector<double>& out) {
            ScalarField f(g);
            f.v = in;
            const ScalarField pf = helm.apply_multiplier(
                [&](double lam) { return 1.0 / (1.0 / (tau * (1.0 + lam)) + cbar + lam); },
                f);
            out = pf.v;
        };

        std::vector<double> dphi(static_cast<size_t>(n), 0.0);
        CgOptions copt;
        copt.rel_tol = 1e-10;
        copt.max_iter = 2000;
        cg_solve(apply, rhs.v, dphi, copt, precond);

        ScalarField dphi_f(g);
        dphi_f.v = dphi;
        const ScalarField lap_dphi = laplacian(dphi_f);
        dx.resize(2 * static_cast<size_t>(n));
        for (int c = 0; c < n; ++c) {
            dx[c] = dphi[c];
            dx[c + n] = -F2.v[c] + D.v[c] * dphi[c] - lap_dphi.v[c];
        }
    }
};

/// Damage minimisation problem over the cell values of z.
struct DamageProblem {
    const Grid& g;
    double tau;
    double h_star;               // effective stiffness cap (0 with mechanics off)
    double c_pi;
    double p;
    const ScalarField& z_p;      // previous damage
    ScalarField Q;               // C eta : eta at the new phi, old strain
    double m;                    // cell measure

    double energy(const std::vector<double>& x) const {
        ScalarField z(g);
        z.v = x;
        double s = 0.0;
        for (size_t c = 0; c < x.size(); ++c) {
            const double zc = x[c], zp = z_p.v[c];
            const SplitEval hs = h_split(zc, h_star);
            const double hhat_p = h_split(zp, h_star).concave_deriv;
            s += zc * zc / (2.0 * tau) - zp * zc / tau + beta_tau(zc, tau).value +
                 pi_of_z(zp, c_pi) * zc + 0.5 * hs.convex_value * Q.v[c] +
                 0.5 * hhat_p * Q.v[c] * zc;
        }
        return s * m + p_dirichlet_energy(z, p);
    }

    void gradient(const std::vector<double>& x, std::vector<double>& grad) const {
        ScalarField z(g);
        z.v = x;
        const ScalarField lap_p = p_laplacian(z, p);
        grad.resize(x.size());
        for (size_t c = 0; c < x.size(); ++c) {
            const double zc = x[c], zp = z_p.v[c];
            const double el = (zc - zp) / tau + beta_tau(zc, tau).deriv +
                              pi_of_z(zp, c_pi) +
                              0.5 * h_split(zc, h_star).convex_deriv * Q.v[c] +
                              0.5 * h_split(zp, h_star).concave_deriv * Q.v[c] -
                              lap_p.v[c];
            grad[c] = m * el;
        }
    }
};

}  // namespace

Stepper::Stepper(const Grid& g, const ModelParams& mp)
    : grid_(g), mp_(mp), helm_(g) {
    mp_.validate();
}

StepState Stepper::initialize(const InitialData& init) const {
    check_field(init.phi, grid_, "phi");
    check_field(init.sigma, grid_, "sigma");
    check_field(init.z, grid_, "z");
    if (!init.u.grid.same_as(grid_) || !init.v.grid.same_as(grid_))
        throw InvalidInitialData("u/v: grid mismatch");

    const double M = mp_.M();
    for (double s : init.sigma.v)
        if (!(s >= 0.0 && s <= M))
            throw InvalidInitialData("sigma: initial data outside [0, M]");
    for (double z : init.z.v)
        if (!(z >= 0.0 && z <= 1.0))
            throw InvalidInitialData("z: initial data outside [0, 1]");
    for (double x : init.u.ux) if (!std::isfinite(x)) throw InvalidInitialData("u: non-finite");
    for (double x : init.v.ux) if (!std::isfinite(x)) throw InvalidInitialData("v: non-finite");
    if (!init.u.boundary_zero() || !init.v.boundary_zero())
        throw InvalidInitialData("u/v: nonzero on the Dirichlet boundary ring");

    StepState s;
    s.phi = init.phi;
    s.mu = ScalarField(grid_);
    s.sigma = init.sigma;
    s.z = init.z;
    s.u = init.u;
    s.v = init.v;
    s.u_prev = init.u;
    for (size_t k = 0; k < s.u_prev.ux.size(); ++k) {
        s.u_prev.ux[k] -= mp_.tau * init.v.ux[k];
        s.u_prev.uy[k] -= mp_.tau * init.v.uy[k];
    }
    s.k = 0;
    s.t = 0.0;
    return s;
}

SolveReport Stepper::step_nutrient(StepState& s, double tau) const {
    const int n = grid_.cells();
    ScalarField c(grid_), rhs(grid_);
    for (int i = 0; i < n; ++i) {
        const double g = mp_.growth_on ? g_growth(s.phi.v[i], s.z.v[i]) : 0.0;
        const double ls = mp_.supply_on ? lambda_supply(s.z.v[i], mp_) : 0.0;
        c.v[i] = 1.0 / tau + mp_.lambda_c * g + ls;
        rhs.v[i] = s.sigma.v[i] / tau + ls * mp_.sigma_s;
    }
    // The Robin datum enters affinely; split it off the homogeneous operator.
    const Robin bc_hom{mp_.alpha, 0.0};
    if (mp_.alpha != 0.0) {
        const ScalarField datum = laplacian(ScalarField(grid_), Robin{mp_.alpha, mp_.sigma_gamma});
        for (int i = 0; i < n; ++i) rhs.v[i] += datum.v[i];
    }

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        ScalarField f(grid_);
        f.v = in;
        const ScalarField lf = laplacian(f, bc_hom);
        out.resize(in.size());
        for (int i = 0; i < n; ++i) out[i] = c.v[i] * in[i] - lf.v[i];
    };
    const double cbar = mean(c.v);
    auto precond = [&](const std::vector<double>& in, std::vector<double>& out) {
        ScalarField f(grid_);
        f.v = in;
        out = helm_.solve(cbar, f).v;
    };

    std::vector<double> x = s.sigma.v;  // warm start from the previous value
    CgOptions opt;
    opt.rel_tol = 1e-12;
    const SolveReport rep = cg_solve(apply, rhs.v, x, opt, precond);
    s.sigma.v = x;
    return rep;
}

SolveReport Stepper::step_phase(StepState& s, double tau, const StepOptions& opt) const {
    const int n = grid_.cells();
    const SymTensorField eps = sym_grad(s.u);
    const double crr = elastic_crr(mp_);
    const double hs = mp_.eff_h_star();
    const double r0 = mp_.eff_r0();

    PhaseProblem prob{grid_, helm_, tau, !opt.drop_mu_regularisation,
                      s.phi, s.mu, ScalarField(grid_), ScalarField(grid_),
                      ScalarField(grid_), std::sqrt(grid_.cell_measure())};
    for (int c = 0; c < n; ++c) {
        const SymTensor2 e{eps.e11[c], eps.e22[c], eps.e12[c]};
        const ElasticEval we = elastic_energy(s.phi.v[c], e, s.z.v[c], mp_);
        prob.U.v[c] = source_U(s.sigma.v[c], we.W_e, s.phi.v[c], s.z.v[c], mp_.f, mp_);
        const double h = h_damage(s.z.v[c], hs);
        // affine split of W_phi(phi) = -h C(eps - R phi) : R at frozen eps, z
        const SymTensor2 ce = elastic_apply(e, mp_);
        prob.wphi0.v[c] = -h * r0 * ce.trace();
        prob.acoef.v[c] = h * crr;
    }

    std::vector<double> x = pack2(s.phi.v, s.mu.v);
    NewtonOptions nopt;
    nopt.abs_tol = 1e-11;
    const SolveReport rep = newton_solve(prob, x, nopt);
    std::copy(x.begin(), x.begin() + n, s.phi.v.begin());
    std::copy(x.begin() + n, x.end(), s.mu.v.begin());
    return rep;
}

SolveReport Stepper::step_damage(StepState& s, double tau,
                                 const ScalarField* start) const {
    const int n = grid_.cells();
    const SymTensorField eps = sym_grad(s.u);

    DamageProblem prob{grid_, tau, mp_.eff_h_star(), mp_.c_pi, mp_.p,
                       s.z, ScalarField(grid_), grid_.cell_measure()};
    for (int c = 0; c < n; ++c) {
        const SymTensor2 e{eps.e11[c], eps.e22[c], eps.e12[c]};
        const SymTensor2 eta = e - eigenstrain(s.phi.v[c], mp_);
        prob.Q.v[c] = elastic_apply(eta, mp_).contract(eta);
    }

    std::vector<double> x = start ? start->v : s.z.v;
    MinimizeOptions mopt;
    mopt.max_iter = 50000;
    mopt.grad_tol = 1e-9 * std::sqrt(grid_.cell_measure());
    const SolveReport rep = minimize_convex(prob, x, mopt);
    s.z.v = x;
    return rep;
}

SolveReport Stepper::step_displacement(StepState& s, double tau) const {
    const int n = grid_.cells();
    const double cr = (2.0 * mp_.lame_mu + 2.0 * mp_.lame_lambda) * mp_.eff_r0();
    const double hs = mp_.eff_h_star();

    // per-cell mobility of the implicit operator and the explicit stress
    ScalarField theta(grid_);
    SymTensorField S(grid_);
    const SymTensorField eps_prev = sym_grad(s.u);
    for (int c = 0; c < n; ++c) {
        const double az = a_of_z(s.z.v[c], mp_);
        const double hz = h_damage(s.z.v[c], hs);
        theta.v[c] = tau * mp_.omega * az + tau * tau * hz;
        const SymTensor2 e{eps_prev.e11[c], eps_prev.e22[c], eps_prev.e12[c]};
        const SymTensor2 ce = elastic_apply(e, mp_);
        const double eig = tau * tau * hz * s.phi.v[c] * cr;
        S.e11[c] = eig + tau * mp_.omega * az * ce.e11;
        S.e22[c] = eig + tau * mp_.omega * az * ce.e22;
        S.e12[c] = tau * mp_.omega * az * ce.e12;
    }

    const VectorField divS = div_tensor(S);
    VectorField t(grid_);
    for (size_t k = 0; k < t.ux.size(); ++k) {
        t.ux[k] = 2.0 * s.u.ux[k] - s.u_prev.ux[k] - divS.ux[k];
        t.uy[k] = 2.0 * s.u.uy[k] - s.u_prev.uy[k] - divS.uy[k];
    }
    t.clamp_boundary();

    const size_t nn = t.ux.size();
    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        VectorField w(grid_);
        std::copy(in.begin(), in.begin() + nn, w.ux.begin());
        std::copy(in.begin() + nn, in.end(), w.uy.begin());
        SymTensorField e = sym_grad(w);
        for (int c = 0; c < n; ++c) {
            const SymTensor2 ce =
                elastic_apply({e.e11[c], e.e22[c], e.e12[c]}, mp_);
            e.e11[c] = theta.v[c] * ce.e11;
            e.e22[c] = theta.v[c] * ce.e22;
            e.e12[c] = theta.v[c] * ce.e12;
        }
        const VectorField dv = div_tensor(e);
        out.resize(in.size());
        for (size_t k = 0; k < nn; ++k) {
            out[k] = w.ux[k] - dv.ux[k];
            out[k + nn] = w.uy[k] - dv.uy[k];
        }
    };

    std::vector<double> x = pack2(s.u.ux, s.u.uy);  // warm start
    CgOptions copt;
    copt.rel_tol = 1e-13;
    const SolveReport rep = cg_solve(apply, pack2(t.ux, t.uy), x, copt);

    s.u_prev = s.u;
    std::copy(x.begin(), x.begin() + nn, s.u.ux.begin());
    std::copy(x.begin() + nn, x.end(), s.u.uy.begin());
    s.u.clamp_boundary();
    for (size_t k = 0; k < nn; ++k) {
        s.v.ux[k] = (s.u.ux[k] - s.u_prev.ux[k]) / tau;
        s.v.uy[k] = (s.u.uy[k] - s.u_prev.uy[k]) / tau;
    }
    return rep;
}

SubstepReports Stepper::advance_once(StepState& s, double tau, const StepOptions& opt) const {
    SubstepReports rep;
    rep.nutrient = step_nutrient(s, tau);
    if (!rep.nutrient.converged) throw StepFailure("nutrient solve did not converge");
    const double M = mp_.M();
    for (double sig : s.sigma.v)
        if (!(sig >= -1e-12 && sig <= M + 1e-12))
            throw StepFailure("nutrient bounds violated");

    rep.phase = step_phase(s, tau, opt);
    if (!rep.phase.converged) throw StepFailure("phase solve did not converge");

    rep.damage = step_damage(s, tau);
    if (!rep.damage.converged) throw StepFailure("damage solve did not converge");

    rep.displacement = step_displacement(s, tau);
    if (!rep.displacement.converged)
        throw StepFailure("displacement solve did not converge");

    if (!s.phi.finite() || !s.mu.finite() || !s.sigma.finite() || !s.z.finite())
        throw StepFailure("non-finite state after step");
    return rep;
}

SubstepReports Stepper::advance(StepState& s, const StepOptions& opt) const {
    std::string last_error;
    for (int halvings = 0; halvings <= 3; ++halvings) {
        const int parts = 1 << halvings;
        const double tau = mp_.tau / parts;
        StepState trial = s;
        try {
            SubstepReports rep;
            for (int i = 0; i < parts; ++i) rep = advance_once(trial, tau, opt);
            rep.halvings = halvings;
            s = std::move(trial);
            s.k += 1;
            s.t += mp_.tau;
            return rep;
        } catch (const StepFailure& e) {
            last_error = e.what();
        }
    }
    throw StepFailure("step failed after 3 halvings: " + last_error);
}

}  // namespace tumor2d

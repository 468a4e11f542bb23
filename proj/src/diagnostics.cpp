#include "tumor2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tumor2d {

EnergyBreakdown energy(const StepState& s, const ModelParams& mp) {
    const Grid& g = s.phi.grid;
    const double m = g.cell_measure();
    EnergyBreakdown e;

    for (int c = 0; c < g.cells(); ++c) {
        e.mu_reg += 0.5 * mp.tau * s.mu.v[c] * s.mu.v[c];
        e.potential += psi(s.phi.v[c]).value;
        e.nutrient += 0.5 * s.sigma.v[c] * s.sigma.v[c];
        e.damage_yosida += beta_tau(s.z.v[c], mp.tau).value;
        e.damage_pert += pi_hat(s.z.v[c], mp.c_pi);
    }
    e.mu_reg *= m;
    e.potential *= m;
    e.nutrient *= m;
    e.damage_yosida *= m;
    e.damage_pert *= m;

    e.interface = 0.5 * grad_sq_integral(s.phi);
    e.damage_grad = p_dirichlet_energy(s.z, mp.p);

    double kin = 0.0;
    for (size_t k = 0; k < s.v.ux.size(); ++k)
        kin += s.v.ux[k] * s.v.ux[k] + s.v.uy[k] * s.v.uy[k];
    e.kinetic = 0.5 * kin * m;

    const SymTensorField eps = sym_grad(s.u);
    double W = 0.0;
    for (int c = 0; c < g.cells(); ++c) {
        const SymTensor2 ec{eps.e11[c], eps.e22[c], eps.e12[c]};
        W += elastic_energy(s.phi.v[c], ec, s.z.v[c], mp).W;
    }
    e.elastic = W * m;
    return e;
}

double dissipation(const StepState& prev, const StepState& next, const ModelParams& mp) {
    const Grid& g = next.phi.grid;
    const double m = g.cell_measure();
    const double tau = mp.tau;
    double d = 0.0;

    d += tau * grad_sq_integral(next.mu);
    d += tau * grad_sq_integral(next.sigma);
    d += tau * robin_boundary_sq(next.sigma, mp.alpha);

    double s = 0.0;
    for (int c = 0; c < g.cells(); ++c) {
        const double dphi = next.phi.v[c] - prev.phi.v[c];
        const double dz = next.z.v[c] - prev.z.v[c];
        s += dphi * dphi + dz * dz / tau;
    }
    d += s * m;

    const SymTensorField ev = sym_grad(next.v);
    double visc = 0.0;
    for (int c = 0; c < g.cells(); ++c) {
        const SymTensor2 ec{ev.e11[c], ev.e22[c], ev.e12[c]};
        visc += a_of_z(next.z.v[c], mp) * elastic_apply(ec, mp).contract(ec);
    }
    d += tau * mp.omega * visc * m;
    return d;
}

EnergyCheck check_energy_step(const StepState& prev, const StepState& next,
                              const ModelParams& mp) {
    EnergyCheck c;
    c.e_prev = energy(prev, mp).total();
    c.e_next = energy(next, mp).total();
    c.diss = dissipation(prev, next, mp);
    const double tol = 1e-8 * (1.0 + std::abs(c.e_prev));
    c.slack = c.e_prev + tol - c.e_next - c.diss;
    c.ok = c.slack >= 0.0;
    return c;
}

bool check_bounds(const StepState& s, const ModelParams& mp, double tol) {
    const double M = mp.M();
    for (double x : s.sigma.v)
        if (!(x >= -tol && x <= M + tol)) return false;
    return true;
}

int FieldPath::interval_of(double t) const {
    const int n = static_cast<int>(snaps.size()) - 1;
    int k = static_cast<int>(std::ceil(t / tau - 1e-12));
    return std::clamp(k, 1, n);
}

ScalarField FieldPath::eval_upper(double t) const { return snaps[interval_of(t)]; }

ScalarField FieldPath::eval_lower(double t) const { return snaps[interval_of(t) - 1]; }

ScalarField FieldPath::eval_linear(double t) const {
    const int k = interval_of(t);
    const double th = std::clamp(t / tau - (k - 1), 0.0, 1.0);
    ScalarField out = snaps[k - 1];
    for (size_t c = 0; c < out.v.size(); ++c)
        out.v[c] = (1.0 - th) * out.v[c] + th * snaps[k].v[c];
    return out;
}

namespace {

double l2_sq(const ScalarField& a, const ScalarField& b) {
    double s = 0.0;
    for (size_t c = 0; c < a.v.size(); ++c) {
        const double d = a.v[c] - b.v[c];
        s += d * d;
    }
    return s * a.grid.cell_measure();
}

/// Integrate t -> ||A(t) - B(t)||^2 over (0,T) where both evaluators are
/// piecewise linear with breakpoints at multiples of their tau. On each
/// merged subinterval the integrand is quadratic, so Simpson is exact.
template <class EvalA, class EvalB>
double l2l2_merged(double tau_a, double tau_b, double T, EvalA&& A, EvalB&& B) {
    std::set<double> bp{0.0, T};
    for (double t = tau_a; t < T; t += tau_a) bp.insert(t);
    for (double t = tau_b; t < T; t += tau_b) bp.insert(t);

    double acc = 0.0;
    double t0 = 0.0;
    bool first = true;
    for (double t1 : bp) {
        if (first) { first = false; t0 = t1; continue; }
        const double dt = t1 - t0;
        if (dt <= 1e-14) { t0 = t1; continue; }
        // sample inside the open interval so interval lookup is unambiguous
        const double ta = t0 + 1e-9 * dt, tm = 0.5 * (t0 + t1), tb = t1 - 1e-9 * dt;
        const double fa = l2_sq(A(ta), B(ta));
        const double fm = l2_sq(A(tm), B(tm));
        const double fb = l2_sq(A(tb), B(tb));
        acc += dt / 6.0 * (fa + 4.0 * fm + fb);
        t0 = t1;
    }
    return std::sqrt(acc);
}

}  // namespace

double l2l2_distance(const FieldPath& a, const FieldPath& b, double T) {
    return l2l2_merged(a.tau, b.tau, T,
                       [&](double t) { return a.eval_linear(t); },
                       [&](double t) { return b.eval_linear(t); });
}

double l2l2_linear_vs_lower(const FieldPath& a, double T) {
    return l2l2_merged(a.tau, a.tau, T,
                       [&](double t) { return a.eval_linear(t); },
                       [&](double t) { return a.eval_lower(t); });
}

TauStudyResult tau_refinement(const Grid& g, ModelParams mp, const InitialData& init,
                              double T, const std::vector<double>& taus) {
    if (taus.size() < 2)
        throw std::invalid_argument("tau_refinement: need at least two levels");

    std::vector<FieldPath> paths;
    for (double tau : taus) {
        mp.tau = tau;
        Stepper st(g, mp);
        StepState s = st.initialize(init);
        FieldPath path;
        path.tau = tau;
        path.snaps.push_back(s.phi);
        const int nsteps = static_cast<int>(std::llround(T / tau));
        for (int k = 0; k < nsteps; ++k) {
            st.advance(s);
            path.snaps.push_back(s.phi);
        }
        paths.push_back(std::move(path));
    }

    TauStudyResult out;
    out.taus = taus;
    for (size_t i = 0; i + 1 < paths.size(); ++i)
        out.distances.push_back(l2l2_distance(paths[i], paths[i + 1], T));
    return out;
}

}  // namespace tumor2d

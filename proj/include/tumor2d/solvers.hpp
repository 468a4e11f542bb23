#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tumor2d {

/// Outcome of one linear or nonlinear solve.
struct SolveReport {
    int iterations = 0;
    double residual = 0.0;  // final norm, same norm the tolerance refers to
    bool converged = false;
    double seconds = 0.0;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
}

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

using LinearOp = std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct CgOptions {
    int max_iter = 10000;
    double rel_tol = 1e-12;  // on the Euclidean residual norm vs the rhs norm
};

/// Preconditioned conjugate gradients for an SPD operator given matrix-free.
/// `precond`, if set, applies an SPD approximation of the inverse.
inline SolveReport cg_solve(const LinearOp& apply, const std::vector<double>& b,
                            std::vector<double>& x, const CgOptions& opt = {},
                            const LinearOp& precond = nullptr) {
    detail::Stopwatch sw;
    const size_t n = b.size();
    if (x.size() != n) x.assign(n, 0.0);

    std::vector<double> r(n), s(n), q(n), d(n);
    apply(x, q);
    for (size_t k = 0; k < n; ++k) r[k] = b[k] - q[k];

    const double bnorm = detail::norm(b);
    const double stop = opt.rel_tol * (bnorm > 0.0 ? bnorm : 1.0);

    SolveReport rep;
    rep.residual = detail::norm(r);
    if (rep.residual <= stop) {
        rep.converged = true;
        rep.seconds = sw.seconds();
        return rep;
    }

    if (precond) precond(r, s); else s = r;
    d = s;
    double rho = detail::dot(r, s);

    for (rep.iterations = 1; rep.iterations <= opt.max_iter; ++rep.iterations) {
        apply(d, q);
        const double dq = detail::dot(d, q);
        if (!(dq > 0.0)) break;  // lost positive definiteness (or d == 0)
        const double a = rho / dq;
        detail::axpy(a, d, x);
        detail::axpy(-a, q, r);
        rep.residual = detail::norm(r);
        if (rep.residual <= stop) {
            rep.converged = true;
            break;
        }
        if (precond) precond(r, s); else s = r;
        const double rho_new = detail::dot(r, s);
        const double beta = rho_new / rho;
        rho = rho_new;
        for (size_t k = 0; k < n; ++k) d[k] = s[k] + beta * d[k];
    }
    rep.seconds = sw.seconds();
    return rep;
}

struct NewtonOptions {
    int max_iter = 50;
    double abs_tol = 1e-11;   // on the norm the problem reports
    double min_step = 1e-10;  // smallest Armijo backtracking factor
};

/// Damped Newton iteration. The problem type provides
///   double residual(const Vec& x, Vec& r)       -- fills r, returns its norm
///   void solve_direction(const Vec& x, const Vec& r, Vec& dx)
/// where dx is the Newton update (x <- x + dx). Backtracking halves the
/// step until the residual norm satisfies a monotone decrease test.
template <class Problem>
SolveReport newton_solve(Problem& prob, std::vector<double>& x,
                         const NewtonOptions& opt = {}) {
    detail::Stopwatch sw;
    std::vector<double> r, dx, xt, rt;

    SolveReport rep;
    double rn = prob.residual(x, r);
    rep.residual = rn;
    if (rn <= opt.abs_tol) {
        rep.converged = true;
        rep.seconds = sw.seconds();
        return rep;
    }

    for (rep.iterations = 1; rep.iterations <= opt.max_iter; ++rep.iterations) {
        prob.solve_direction(x, r, dx);

        double step = 1.0;
        double rn_new = rn;
        while (true) {
            xt = x;
            detail::axpy(step, dx, xt);
            rn_new = prob.residual(xt, rt);
            if (rn_new <= (1.0 - 1e-4 * step) * rn || step <= opt.min_step) break;
            step *= 0.5;
        }
        x.swap(xt);
        r.swap(rt);
        rn = rn_new;
        rep.residual = rn;
        if (rn <= opt.abs_tol) {
            rep.converged = true;
            break;
        }
        if (step <= opt.min_step) break;  // stagnated
    }
    rep.seconds = sw.seconds();
    return rep;
}

struct MinimizeOptions {
    int max_iter = 5000;
    double grad_tol = 1e-9;  // Euclidean norm of the gradient
};

/// Monotone Barzilai-Borwein descent for a smooth convex objective.
/// The problem type provides
///   double energy(const Vec& x)
///   void gradient(const Vec& x, Vec& g)
/// Backtracking keeps every accepted step energy-decreasing, so the method
/// converges on any bounded-below convex objective.
template <class Problem>
SolveReport minimize_convex(Problem& prob, std::vector<double>& x,
                            const MinimizeOptions& opt = {}) {
    detail::Stopwatch sw;
    const size_t n = x.size();
    std::vector<double> g(n), g_old(n), x_old(n), xt(n), gt(n);

    SolveReport rep;
    double E = prob.energy(x);
    prob.gradient(x, g);
    double gn = detail::norm(g);
    rep.residual = gn;
    if (gn <= opt.grad_tol) {
        rep.converged = true;
        rep.seconds = sw.seconds();
        return rep;
    }

    double step = 1.0;
    // bootstrap step from a curvature probe along -g
    {
        const double eps = 1e-6 / (gn > 1.0 ? gn : 1.0);
        xt = x;
        detail::axpy(-eps, g, xt);
        prob.gradient(xt, gt);
        double num = 0.0, den = 0.0;
        for (size_t k = 0; k < n; ++k) {
            const double dg = gt[k] - g[k];
            num += eps * g[k] * -dg;  // <dx, dg> with dx = -eps g
            den += dg * dg;
        }
        if (den > 0.0 && num > 0.0) step = num / den;
    }

    for (rep.iterations = 1; rep.iterations <= opt.max_iter; ++rep.iterations) {
        // backtrack until the energy decreases sufficiently; once the
        // predicted decrease drops below the floating-point resolution of
        // E, accept on non-increase so tight gradient tolerances stay
        // reachable
        const double fp_floor = 1e-14 * (1.0 + std::abs(E));
        double E_new;
        while (true) {
            xt = x;
            detail::axpy(-step, g, xt);
            E_new = prob.energy(xt);
            const double pred = 1e-4 * step * gn * gn;
            if (E_new <= E - pred) break;
            if (pred <= fp_floor && E_new <= E + fp_floor) break;
            step *= 0.5;
            if (step < 1e-16) break;  // gradient tolerance unreachable; bail below
        }
        if (step < 1e-16) break;

        x_old.swap(x);
        x = xt;
        g_old.swap(g);
        prob.gradient(x, g);
        E = E_new;
        gn = detail::norm(g);
        rep.residual = gn;
        if (gn <= opt.grad_tol) {
            rep.converged = true;
            break;
        }

        // Barzilai-Borwein step for the next iteration
        double num = 0.0, den = 0.0;
        for (size_t k = 0; k < n; ++k) {
            const double dx = x[k] - x_old[k];
            const double dg = g[k] - g_old[k];
            num += dx * dx;
            den += dx * dg;
        }
        if (den > 0.0 && num > 0.0) {
            step = num / den;
        }  // else keep the previous (backtracked) step
    }
    rep.seconds = sw.seconds();
    return rep;
}

}  // namespace tumor2d

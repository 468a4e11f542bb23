#pragma once

#include "tumor2d/grid.hpp"

namespace tumor2d {

/// Boundary closure for cell-centered scalars. alpha == 0 reduces to the
/// homogeneous Neumann (zero-flux) closure.
struct Robin {
    double alpha = 0.0;  // flux coefficient, >= 0
    double value = 0.0;  // prescribed boundary datum

    /// Effective boundary-diagonal coefficient of the ghost closure
    /// (ghost value eliminated through the two-point flux balance).
    double effective(double h) const { return alpha / (1.0 + 0.5 * alpha * h); }
};

/// Midpoint quadrature of f over the domain.
double integrate(const ScalarField& f);

/// Discrete L2 inner product of cell fields, sum f*g*hx*hy.
double cell_dot(const ScalarField& f, const ScalarField& g);

/// Discrete L2 inner product of vertex fields, sum u.w*hx*hy.
double node_dot(const VectorField& u, const VectorField& w);

/// Two-point face gradients with the bc closure on boundary faces.
/// For alpha == 0 boundary faces carry zero flux; otherwise the outward
/// gradient is -alpha_eff*(sigma_cell - value) expressed in face-normal
/// orientation.
FaceField grad_faces(const ScalarField& f, const Robin& bc = {});

/// Cell-wise flux balance; negative adjoint of grad_faces for zero-flux
/// closure: sum div_faces(g)*f*m = -sum_faces g*grad_faces(f)*m.
ScalarField div_faces(const FaceField& g);

/// Five-point Laplacian with the bc closure, div_faces(grad_faces(f,bc)).
ScalarField laplacian(const ScalarField& f, const Robin& bc = {});

/// Integral of |grad f|^2 over interior faces (the quadrature paired with
/// laplacian under zero-flux closure).
double grad_sq_integral(const ScalarField& f);

/// Boundary quadrature alpha_eff * f^2 summed over boundary faces with
/// face length measure. Pairs with the Robin laplacian:
///   <-lap_R f, f> = grad_sq_integral(f) + robin_boundary_sq(f, alpha)
/// when the Robin datum is zero.
double robin_boundary_sq(const ScalarField& f, double alpha);

/// Discrete p-Dirichlet energy (1/p) int |grad z|^p with the full
/// face-gradient reconstruction (normal difference plus averaged
/// tangential difference, mirror closure).
double p_dirichlet_energy(const ScalarField& z, double p);

/// Exact gradient of p_dirichlet_energy divided by the cell measure,
/// with the sign of the divergence form: returns Delta_p z, so that
/// d/dz [p_dirichlet_energy] = -p_laplacian(z,p) * cell_measure.
ScalarField p_laplacian(const ScalarField& z, double p);

/// Cell-centered symmetric gradient from the four surrounding vertices.
SymTensorField sym_grad(const VectorField& u);

/// Vertex-valued divergence, the exact negative adjoint of sym_grad:
///   sum_nodes div_tensor(T).u * m = -sum_cells T : sym_grad(u) * m
/// for u vanishing on the Dirichlet ring. Boundary nodes get zero.
VectorField div_tensor(const SymTensorField& T);

/// Frobenius double contraction per cell, T : S with e12 counted twice.
double tensor_contract_integral(const SymTensorField& T, const SymTensorField& S);

}  // namespace tumor2d

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tumor2d {

/// Uniform cell-centered grid on (0,Lx) x (0,Ly).
///
/// Scalar unknowns live at cell centers, displacement/velocity at the
/// (nx+1) x (ny+1) vertices. Zero-flux boundary closure for scalars is a
/// mirror ghost layer of width 1; the displacement boundary is Dirichlet
/// on the outermost vertex ring.
struct Grid {
    int nx = 0, ny = 0;
    double Lx = 1.0, Ly = 1.0;

    Grid() = default;
    Grid(int nx_, int ny_, double Lx_ = 1.0, double Ly_ = 1.0)
        : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_) {
        if (nx < 4 || ny < 4)
            throw std::invalid_argument("Grid: nx, ny must be >= 4");
        if (!(Lx > 0.0) || !(Ly > 0.0))
            throw std::invalid_argument("Grid: Lx, Ly must be positive");
    }

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    double cell_measure() const { return hx() * hy(); }
    int cells() const { return nx * ny; }
    int nodes() const { return (nx + 1) * (ny + 1); }

    double cell_x(int i) const { return (i + 0.5) * hx(); }
    double cell_y(int j) const { return (j + 0.5) * hy(); }
    double node_x(int i) const { return i * hx(); }
    double node_y(int j) const { return j * hy(); }

    bool same_as(const Grid& o) const {
        return nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly;
    }
};

/// One dimensionless value per cell, row-major (i fastest).
struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), v(static_cast<size_t>(g.cells()), fill) {}

    double& operator()(int i, int j) { return v[i + grid.nx * j]; }
    double operator()(int i, int j) const { return v[i + grid.nx * j]; }

    bool finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

/// Face-normal values: fx on vertical faces (nx+1 per row), fy on
/// horizontal faces. Boundary faces are included so closure rules can
/// write into them.
struct FaceField {
    Grid grid;
    std::vector<double> fx;  // (nx+1) * ny
    std::vector<double> fy;  // nx * (ny+1)

    FaceField() = default;
    explicit FaceField(const Grid& g)
        : grid(g),
          fx(static_cast<size_t>((g.nx + 1) * g.ny), 0.0),
          fy(static_cast<size_t>(g.nx * (g.ny + 1)), 0.0) {}

    double& x(int i, int j) { return fx[i + (grid.nx + 1) * j]; }
    double x(int i, int j) const { return fx[i + (grid.nx + 1) * j]; }
    double& y(int i, int j) { return fy[i + grid.nx * j]; }
    double y(int i, int j) const { return fy[i + grid.nx * j]; }
};

/// Vertex-centered two-component field (displacement, velocity).
struct VectorField {
    Grid grid;
    std::vector<double> ux, uy;  // (nx+1) * (ny+1) each

    VectorField() = default;
    explicit VectorField(const Grid& g)
        : grid(g),
          ux(static_cast<size_t>(g.nodes()), 0.0),
          uy(static_cast<size_t>(g.nodes()), 0.0) {}

    int idx(int i, int j) const { return i + (grid.nx + 1) * j; }
    double& x(int i, int j) { return ux[idx(i, j)]; }
    double x(int i, int j) const { return ux[idx(i, j)]; }
    double& y(int i, int j) { return uy[idx(i, j)]; }
    double y(int i, int j) const { return uy[idx(i, j)]; }

    bool boundary_node(int i, int j) const {
        return i == 0 || j == 0 || i == grid.nx || j == grid.ny;
    }

    /// Force the Dirichlet ring to zero.
    void clamp_boundary() {
        for (int j = 0; j <= grid.ny; ++j)
            for (int i = 0; i <= grid.nx; ++i)
                if (boundary_node(i, j)) { x(i, j) = 0.0; y(i, j) = 0.0; }
    }

    bool boundary_zero(double tol = 0.0) const {
        for (int j = 0; j <= grid.ny; ++j)
            for (int i = 0; i <= grid.nx; ++i)
                if (boundary_node(i, j) &&
                    (std::abs(x(i, j)) > tol || std::abs(y(i, j)) > tol))
                    return false;
        return true;
    }
};

/// Cell-centered symmetric 2x2 tensor, e12 stored once.
struct SymTensorField {
    Grid grid;
    std::vector<double> e11, e22, e12;

    SymTensorField() = default;
    explicit SymTensorField(const Grid& g)
        : grid(g),
          e11(static_cast<size_t>(g.cells()), 0.0),
          e22(static_cast<size_t>(g.cells()), 0.0),
          e12(static_cast<size_t>(g.cells()), 0.0) {}

    int idx(int i, int j) const { return i + grid.nx * j; }
};

}  // namespace tumor2d

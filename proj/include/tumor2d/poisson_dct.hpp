#pragma once

#include <functional>
#include <vector>

#include "tumor2d/grid.hpp"

struct fftw_plan_s;

namespace tumor2d {

/// Direct solver for (c*I - Lap) u = f with the zero-flux five-point
/// stencil, via the cosine transform that diagonalises it. The transform
/// basis matches the mirror-ghost closure exactly, so the residual of the
/// returned solution is at machine precision.
class NeumannHelmholtz {
public:
    explicit NeumannHelmholtz(const Grid& g);
    ~NeumannHelmholtz();
    NeumannHelmholtz(const NeumannHelmholtz&) = delete;
    NeumannHelmholtz& operator=(const NeumannHelmholtz&) = delete;

    /// Solve (c*I - Lap) u = f. Requires c > 0 (c = 0 would be singular
    /// on the constant mode).
    ScalarField solve(double c, const ScalarField& f) const;

    /// Apply a spectral multiplier m(lambda) where lambda is the stencil
    /// eigenvalue of -Lap on each cosine mode. Used for preconditioning.
    ScalarField apply_multiplier(const std::function<double(double)>& m,
                                 const ScalarField& f) const;

    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    mutable std::vector<double> buf_;
    std::vector<double> eig_;  // per-mode eigenvalue of -Lap
    fftw_plan_s* fwd_ = nullptr;
    fftw_plan_s* bwd_ = nullptr;
};

}  // namespace tumor2d

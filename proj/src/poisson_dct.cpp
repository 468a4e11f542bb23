#include "tumor2d/poisson_dct.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace tumor2d {

NeumannHelmholtz::NeumannHelmholtz(const Grid& g)
    : grid_(g), buf_(static_cast<size_t>(g.cells()), 0.0) {
    const int nx = g.nx, ny = g.ny;
    // layout is i + nx*j, so j is the slow (first) FFTW dimension
    fwd_ = fftw_plan_r2r_2d(ny, nx, buf_.data(), buf_.data(),
                            FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
    bwd_ = fftw_plan_r2r_2d(ny, nx, buf_.data(), buf_.data(),
                            FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("NeumannHelmholtz: fftw plan failed");

    eig_.resize(buf_.size());
    const double hx2 = g.hx() * g.hx(), hy2 = g.hy() * g.hy();
    for (int j = 0; j < ny; ++j) {
        const double ly = (2.0 - 2.0 * std::cos(M_PI * j / ny)) / hy2;
        for (int i = 0; i < nx; ++i) {
            const double lx = (2.0 - 2.0 * std::cos(M_PI * i / nx)) / hx2;
            eig_[i + nx * j] = lx + ly;
        }
    }
}

NeumannHelmholtz::~NeumannHelmholtz() {
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
}

ScalarField NeumannHelmholtz::apply_multiplier(
    const std::function<double(double)>& m, const ScalarField& f) const {
    if (!f.grid.same_as(grid_))
        throw std::invalid_argument("NeumannHelmholtz: grid mismatch");
    buf_ = f.v;
    fftw_execute_r2r(fwd_, buf_.data(), buf_.data());
    const double norm = 1.0 / (4.0 * grid_.nx * grid_.ny);
    for (size_t k = 0; k < buf_.size(); ++k) buf_[k] *= m(eig_[k]) * norm;
    fftw_execute_r2r(bwd_, buf_.data(), buf_.data());
    ScalarField out(grid_);
    out.v = buf_;
    return out;
}

ScalarField NeumannHelmholtz::solve(double c, const ScalarField& f) const {
    if (!(c > 0.0)) throw std::invalid_argument("NeumannHelmholtz: need c > 0");
    return apply_multiplier([c](double lam) { return 1.0 / (c + lam); }, f);
}

}  // namespace tumor2d

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tumor2d/config.hpp"
#include "tumor2d/diagnostics.hpp"

using namespace tumor2d;

namespace {

ModelParams sources_off() {
    ModelParams mp;
    mp.growth_on = false;
    mp.supply_on = false;
    mp.alpha = 0.0;
    mp.c_pi = 0.0;
    mp.f = 0.0;
    return mp;
}

StepState smooth_state(const Grid& g, const ModelParams& mp, std::uint64_t seed) {
    RunConfig c;
    c.nx = g.nx;
    c.ny = g.ny;
    c.Lx = g.Lx;
    c.Ly = g.Ly;
    c.preset = "random-smooth";
    c.seed = seed;
    c.params = mp;
    return Stepper(g, mp).initialize(make_initial_data(c));
}

}  // namespace

TEST_CASE("energy of a constant state reduces to the potential terms") {
    const Grid g(8, 8, 2.0, 1.0);
    ModelParams mp;
    mp.c_pi = 0.4;
    StepState s;
    s.phi = ScalarField(g, 0.0);   // Psi(0) = 1/4
    s.mu = ScalarField(g, 0.0);
    s.sigma = ScalarField(g, 0.5);
    s.z = ScalarField(g, 0.5);
    s.u = VectorField(g);
    s.v = VectorField(g);
    s.u_prev = VectorField(g);

    const EnergyBreakdown e = energy(s, mp);
    const double area = 2.0;
    CHECK(e.potential == doctest::Approx(0.25 * area).epsilon(1e-13));
    CHECK(e.nutrient == doctest::Approx(0.5 * 0.25 * area).epsilon(1e-13));
    CHECK(e.damage_pert == doctest::Approx(-0.5 * 0.4 * 0.25 * area).epsilon(1e-13));
    CHECK(e.interface == 0.0);
    CHECK(e.damage_grad == 0.0);
    CHECK(e.damage_yosida == 0.0);
    CHECK(e.kinetic == 0.0);
    CHECK(e.elastic == 0.0);
    CHECK(e.mu_reg == 0.0);
    CHECK(e.total() == doctest::Approx(e.potential + e.nutrient + e.damage_pert));
}

TEST_CASE("dissipation is nonnegative along coupled steps") {
    const Grid g(12, 12);
    ModelParams mp;
    mp.alpha = 1.0;
    const Stepper st(g, mp);
    StepState s = smooth_state(g, mp, 21);
    for (int k = 0; k < 4; ++k) {
        const StepState prev = s;
        st.advance(s);
        CHECK(dissipation(prev, s, mp) >= 0.0);
    }
}

TEST_CASE("energy inequality holds for the source-free configuration") {
    const Grid g(16, 16);
    ModelParams mp = sources_off();
    mp.h_star = 1.5;
    mp.r0 = 0.15;
    const Stepper st(g, mp);
    StepState s = smooth_state(g, mp, 22);
    for (int k = 0; k < 10; ++k) {
        const StepState prev = s;
        st.advance(s);
        const EnergyCheck c = check_energy_step(prev, s, mp);
        CHECK(c.ok);
        CHECK(c.diss >= 0.0);
    }
}

TEST_CASE("bounds check flags an out-of-range nutrient") {
    const Grid g(8, 8);
    ModelParams mp;
    StepState s = smooth_state(g, mp, 23);
    CHECK(check_bounds(s, mp));
    s.sigma.v[10] = mp.M() + 1e-6;
    CHECK(!check_bounds(s, mp));
    s.sigma.v[10] = -1e-6;
    CHECK(!check_bounds(s, mp));
}

TEST_CASE("interpolants pick the documented intervals") {
    const Grid g(4, 4);
    FieldPath path;
    path.tau = 1.0;
    for (double val : {0.0, 1.0, 2.0}) path.snaps.push_back(ScalarField(g, val));

    CHECK(path.eval_upper(0.5).v[0] == doctest::Approx(1.0));
    CHECK(path.eval_lower(0.5).v[0] == doctest::Approx(0.0));
    CHECK(path.eval_linear(0.5).v[0] == doctest::Approx(0.5));
    // right-continuous at the breakpoints: t = 1 belongs to the first interval
    CHECK(path.eval_upper(1.0).v[0] == doctest::Approx(1.0));
    CHECK(path.eval_lower(1.0).v[0] == doctest::Approx(0.0));
    CHECK(path.eval_upper(1.0 + 1e-9).v[0] == doctest::Approx(2.0));
    CHECK(path.eval_linear(1.75).v[0] == doctest::Approx(1.75));
}

TEST_CASE("path distance quadrature is exact for linear ramps") {
    const Grid g(4, 4);  // unit area
    FieldPath a;  // a(t) = t on the whole domain
    a.tau = 0.5;
    for (double val : {0.0, 0.5, 1.0}) a.snaps.push_back(ScalarField(g, val));
    FieldPath b;  // b = 0
    b.tau = 1.0;
    for (int k = 0; k < 2; ++k) b.snaps.push_back(ScalarField(g, 0.0));

    // int_0^1 t^2 dt = 1/3
    CHECK(l2l2_distance(a, b, 1.0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("linear interpolant is closer to the lower one than the upper is") {
    const Grid g(6, 6);
    ModelParams mp;
    const Stepper st(g, mp);
    StepState s = smooth_state(g, mp, 24);
    FieldPath path;
    path.tau = mp.tau;
    path.snaps.push_back(s.phi);
    for (int k = 0; k < 4; ++k) {
        st.advance(s);
        path.snaps.push_back(s.phi);
    }
    const double T = 4 * mp.tau;
    const double lin_lower = l2l2_linear_vs_lower(path, T);
    // upper vs lower distance equals the step-difference quadrature
    const double up_lower = [&] {
        double acc = 0.0;
        for (size_t k = 1; k < path.snaps.size(); ++k) {
            double d2 = 0.0;
            for (size_t c = 0; c < path.snaps[k].v.size(); ++c) {
                const double d = path.snaps[k].v[c] - path.snaps[k - 1].v[c];
                d2 += d * d;
            }
            acc += path.tau * d2 * g.cell_measure();
        }
        return std::sqrt(acc);
    }();
    CHECK(lin_lower <= up_lower + 1e-15);
    // per-interval the ratio is exactly 1/sqrt(3)
    CHECK(lin_lower == doctest::Approx(up_lower / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("energy check flags a manufactured violation") {
    const Grid g(10, 10);
    ModelParams mp = sources_off();
    const Stepper st(g, mp);
    StepState s = smooth_state(g, mp, 26);
    const StepState prev = s;
    st.advance(s);
    CHECK(check_energy_step(prev, s, mp).ok);
    // inject energy into the next state; the verdict must flip
    StepState corrupted = s;
    for (double& x : corrupted.mu.v) x += 50.0;
    CHECK(!check_energy_step(prev, corrupted, mp).ok);
}

TEST_CASE("dropping the potential regularisation changes the trajectory") {
    const Grid g(10, 10);
    ModelParams mp = sources_off();
    const Stepper st(g, mp);
    StepState a = smooth_state(g, mp, 27);
    StepState b = a;
    StepOptions drop;
    drop.drop_mu_regularisation = true;
    for (int k = 0; k < 3; ++k) {
        st.advance(a);
        st.advance(b, drop);
    }
    double diff = 0.0;
    for (int c = 0; c < g.cells(); ++c)
        diff = std::max(diff, std::abs(a.mu.v[c] - b.mu.v[c]));
    CHECK(diff > 1e-12);  // the term is wired through and matters
}

TEST_CASE("step refinement study reports shrinking distances") {
    const Grid g(8, 8);
    ModelParams mp = sources_off();
    mp.mech_on = false;
    RunConfig c;
    c.nx = c.ny = 8;
    c.preset = "random-smooth";
    c.seed = 25;
    c.params = mp;
    const InitialData init = make_initial_data(c);
    const TauStudyResult res =
        tau_refinement(g, mp, init, 0.02, {4e-3, 2e-3, 1e-3});
    REQUIRE(res.distances.size() == 2);
    CHECK(res.distances[1] < res.distances[0]);
}

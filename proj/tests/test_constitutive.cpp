#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tumor2d/constitutive.hpp"

using namespace tumor2d;

namespace {

double fd(double (*f)(double), double x, double eps = 1e-6) {
    return (f(x + eps) - f(x - eps)) / (2.0 * eps);
}

}  // namespace

TEST_CASE("double well split is consistent") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int k = 0; k < 200; ++k) {
        const double r = dist(rng);
        const SplitEval s = psi(r);
        CHECK(s.value == doctest::Approx(s.convex_value + s.concave_value).epsilon(1e-14));
        const double w = (1.0 - r * r) * (1.0 - r * r) / 4.0;
        CHECK(s.value == doctest::Approx(w).epsilon(1e-13));
        CHECK(s.full_deriv() == doctest::Approx(r * r * r - r).epsilon(1e-13));
        // convex part has nonnegative curvature, concave part nonpositive
        const double eps = 1e-4;
        const double cvx2 = psi(r + eps).convex_deriv - psi(r - eps).convex_deriv;
        const double ccv2 = psi(r + eps).concave_deriv - psi(r - eps).concave_deriv;
        CHECK(cvx2 >= -1e-12);
        CHECK(ccv2 <= 1e-12);
    }
}

TEST_CASE("ramp is a C1 monotone sigmoid on [0,1]") {
    CHECK(ramp(-0.5) == 0.0);
    CHECK(ramp(0.0) == 0.0);
    CHECK(ramp(1.0) == 1.0);
    CHECK(ramp(1.5) == 1.0);
    CHECK(ramp_prime(0.0) == 0.0);
    CHECK(ramp_prime(1.0) == 0.0);
    for (int k = 0; k <= 100; ++k) {
        const double t = -0.5 + 2.0 * k / 100.0;
        CHECK(ramp_prime(t) >= 0.0);
        CHECK(fd(&ramp, t) == doctest::Approx(ramp_prime(t)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("ramp curvature bound dominates the finite-difference curvature") {
    const double K = ramp_second_sup();
    CHECK(K == doctest::Approx(10.0 * std::sqrt(3.0) / 3.0).epsilon(1e-14));
    for (int k = 1; k < 400; ++k) {
        const double t = k / 400.0;
        const double eps = 1e-5;
        const double d2 = (ramp(t + eps) - 2.0 * ramp(t) + ramp(t - eps)) / (eps * eps);
        CHECK(std::abs(d2) <= K + 1e-3);
    }
}

TEST_CASE("stiffness split has convex and concave parts") {
    const double h_star = 2.7;
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> dist(-1.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const double z = dist(rng);
        const SplitEval s = h_split(z, h_star);
        CHECK(s.value == doctest::Approx(s.convex_value + s.concave_value).epsilon(1e-13));
        CHECK(s.full_deriv() ==
              doctest::Approx(h_damage_prime(z, h_star)).epsilon(1e-12).scale(1.0));
        // convexity of the shifted part through the subgradient inequality
        const double z2 = dist(rng);
        const SplitEval s2 = h_split(z2, h_star);
        CHECK(s2.convex_value - s.convex_value >=
              s.convex_deriv * (z2 - z) - 1e-12 * (1.0 + std::abs(s.convex_value)));
        CHECK(s2.concave_value - s.concave_value <=
              s.concave_deriv * (z2 - z) + 1e-12 * (1.0 + std::abs(s.concave_value)));
    }
}

TEST_CASE("Yosida term: value-derivative consistency and monotonicity") {
    const double tau = 1e-3;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-2.0, 3.0);
    for (int k = 0; k < 500; ++k) {
        const double a = dist(rng), b = dist(rng);
        const YosidaEval ya = beta_tau(a, tau), yb = beta_tau(b, tau);
        CHECK(ya.value >= 0.0);
        // derivative of a convex function is monotone
        CHECK((ya.deriv - yb.deriv) * (a - b) >= 0.0);
        // resolvent (projection onto [0,1]) is a contraction
        const double pa = a - tau * ya.deriv, pb = b - tau * yb.deriv;
        CHECK(std::abs(pa - pb) <= std::abs(a - b) + 1e-15);
        CHECK(pa == doctest::Approx(std::clamp(a, 0.0, 1.0)).epsilon(1e-13));
    }
    CHECK(beta_tau(0.5, tau).value == 0.0);
    CHECK(beta_tau(0.5, tau).deriv == 0.0);
    CHECK(beta_tau(1.5, tau).deriv == doctest::Approx(0.5 / tau));
}

TEST_CASE("parameter validation and derived nutrient cap") {
    ModelParams mp;
    mp.sigma_s = 0.4;
    mp.sigma_gamma = 0.9;
    CHECK(mp.M() == doctest::Approx(0.9));
    mp.validate();

    auto expect_throw = [](auto&& tweak) {
        ModelParams bad;
        tweak(bad);
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    };
    expect_throw([](ModelParams& m) { m.tau = 0.0; });
    expect_throw([](ModelParams& m) { m.p = 2.0; });
    expect_throw([](ModelParams& m) { m.a_lo = 0.0; });
    expect_throw([](ModelParams& m) { m.a_lo = 2.0; m.a_hi = 1.0; });
    expect_throw([](ModelParams& m) { m.lame_mu = 0.0; });
    expect_throw([](ModelParams& m) { m.h_star = -1.0; });
    expect_throw([](ModelParams& m) { m.lambda_c = -1.0; });
}

TEST_CASE("elastic energy partial derivatives match finite differences") {
    ModelParams mp;
    mp.h_star = 1.7;
    mp.r0 = 0.23;
    mp.lame_mu = 1.3;
    mp.lame_lambda = 0.8;
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    std::uniform_real_distribution<double> dz(0.05, 0.95);
    const double eps = 1e-6;
    for (int k = 0; k < 100; ++k) {
        const double phi = dist(rng), z = dz(rng);
        const SymTensor2 e{dist(rng), dist(rng), dist(rng)};
        const ElasticEval ev = elastic_energy(phi, e, z, mp);

        const double dphi = (elastic_energy(phi + eps, e, z, mp).W -
                             elastic_energy(phi - eps, e, z, mp).W) / (2.0 * eps);
        CHECK(dphi == doctest::Approx(ev.W_phi).epsilon(1e-6).scale(1.0));

        const double dzfd = (elastic_energy(phi, e, z + eps, mp).W -
                             elastic_energy(phi, e, z - eps, mp).W) / (2.0 * eps);
        CHECK(dzfd == doctest::Approx(ev.W_z).epsilon(1e-6).scale(1.0));

        SymTensor2 ep = e;
        ep.e11 += eps;
        SymTensor2 em = e;
        em.e11 -= eps;
        const double de11 = (elastic_energy(phi, ep, z, mp).W -
                             elastic_energy(phi, em, z, mp).W) / (2.0 * eps);
        CHECK(de11 == doctest::Approx(ev.W_e.e11).epsilon(1e-6).scale(1.0));

        ep = e; ep.e12 += eps;
        em = e; em.e12 -= eps;
        const double de12 = (elastic_energy(phi, ep, z, mp).W -
                             elastic_energy(phi, em, z, mp).W) / (2.0 * eps);
        // e12 enters W twice (symmetric off-diagonal pair)
        CHECK(de12 == doctest::Approx(2.0 * ev.W_e.e12).epsilon(1e-6).scale(1.0));
    }
    // C R : R shortcut against a direct evaluation
    const SymTensor2 R{mp.r0, mp.r0, 0.0};
    CHECK(elastic_crr(mp) == doctest::Approx(elastic_apply(R, mp).contract(R)).epsilon(1e-13));
}

TEST_CASE("mechanics toggle removes the elastic coupling") {
    ModelParams mp;
    mp.mech_on = false;
    const ElasticEval ev = elastic_energy(0.5, SymTensor2{0.3, -0.2, 0.1}, 0.7, mp);
    CHECK(ev.W == 0.0);
    CHECK(ev.W_phi == 0.0);
    CHECK(ev.W_z == 0.0);
    CHECK(ev.W_e.frobenius() == 0.0);
    CHECK(elastic_crr(mp) == 0.0);
}

TEST_CASE("growth weight and supply rate stay in range") {
    ModelParams mp;
    for (double phi : {-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 2.0}) {
        const double g = g_growth(phi, 0.5);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
    }
    CHECK(g_growth(-1.0, 0.0) == 0.0);
    CHECK(g_growth(1.0, 0.0) == 1.0);
    CHECK(lambda_supply(-0.5, mp) == 0.0);
    CHECK(lambda_supply(0.5, mp) == doctest::Approx(0.5 * mp.lambda_s0));
    CHECK(lambda_supply(2.0, mp) == doctest::Approx(mp.lambda_s0));
}

TEST_CASE("nutrient source sign structure preserves the bounds") {
    ModelParams mp;
    mp.sigma_s = 0.8;
    mp.sigma_gamma = 1.0;
    const double M = mp.M();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dphi(-1.0, 1.0), dz(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double phi = dphi(rng), z = dz(rng);
        // nonnegative supply at the lower bound, nonpositive at the cap
        CHECK(source_S(0.0, phi, z, mp.sigma_s, mp) >= 0.0);
        CHECK(source_S(M, phi, z, mp.sigma_s, mp) <= 1e-15);
    }
}

TEST_CASE("viscosity coefficient interpolates its range") {
    ModelParams mp;
    mp.a_lo = 0.25;
    mp.a_hi = 1.5;
    CHECK(a_of_z(-1.0, mp) == doctest::Approx(0.25));
    CHECK(a_of_z(0.0, mp) == doctest::Approx(0.25));
    CHECK(a_of_z(1.0, mp) == doctest::Approx(1.5));
    CHECK(a_of_z(0.5, mp) == doctest::Approx(0.25 + 1.25 * ramp(0.5)));
    for (int k = 0; k < 100; ++k) {
        const double z = -0.5 + 2.0 * k / 100.0;
        CHECK(a_of_z(z, mp) >= 0.25);
        CHECK(a_of_z(z, mp) <= 1.5);
    }
}

TEST_CASE("damage perturbation pair") {
    const double c = 0.7;
    for (double z : {-1.0, 0.0, 0.3, 1.0}) {
        CHECK(pi_of_z(z, c) == doctest::Approx(-c * z));
        const double eps = 1e-6;
        CHECK((pi_hat(z + eps, c) - pi_hat(z - eps, c)) / (2.0 * eps) ==
              doctest::Approx(pi_of_z(z, c)).epsilon(1e-8).scale(1.0));
    }
}

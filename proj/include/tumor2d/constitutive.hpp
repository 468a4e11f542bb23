#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tumor2d {

/// Small symmetric 2x2 tensor value, e12 stored once.
struct SymTensor2 {
    double e11 = 0.0, e22 = 0.0, e12 = 0.0;

    double trace() const { return e11 + e22; }
    /// Frobenius double contraction a : b (off-diagonal counted twice).
    double contract(const SymTensor2& o) const {
        return e11 * o.e11 + e22 * o.e22 + 2.0 * e12 * o.e12;
    }
    double frobenius() const { return std::sqrt(contract(*this)); }

    SymTensor2 operator-(const SymTensor2& o) const {
        return {e11 - o.e11, e22 - o.e22, e12 - o.e12};
    }
    SymTensor2 operator*(double s) const { return {e11 * s, e22 * s, e12 * s}; }
};

/// All constitutive constants of the model. M is derived, never set.
struct ModelParams {
    double lambda_p = 1.0;   // proliferation rate
    double lambda_a = 0.0;   // apoptosis rate
    double lambda_c = 1.0;   // nutrient consumption rate
    double lambda_s0 = 1.0;  // supply rate scale of Lambda_s
    double sigma_s = 1.0;    // bulk nutrient supply level
    double sigma_gamma = 1.0;  // Robin boundary concentration
    double alpha = 0.0;      // Robin coefficient
    double f = 0.0;          // treatment term, constant in space and time
    double lame_lambda = 1.0;
    double lame_mu = 1.0;
    double omega = 1.0;      // viscosity tensor ratio, V = omega * C
    double a_lo = 0.5, a_hi = 1.0;  // viscosity coefficient range
    double h_star = 1.0;     // elastic stiffness cap
    double r0 = 0.1;         // eigenstrain scale, R = r0 * I
    double p = 4.0;          // damage gradient exponent, > 2
    double c_pi = 0.0;       // damage perturbation slope
    double tau = 1e-3;       // time step (also the Yosida parameter)

    // coupling switches (diagnostic configurations turn these off)
    bool growth_on = true;   // g != 0
    bool supply_on = true;   // Lambda_s != 0
    bool mech_on = true;     // elastic coupling (h, eigenstrain)

    double M() const { return std::max(sigma_s, sigma_gamma); }
    double eff_h_star() const { return mech_on ? h_star : 0.0; }
    double eff_r0() const { return mech_on ? r0 : 0.0; }

    void validate() const {
        auto req = [](bool ok, const char* what) {
            if (!ok) throw std::invalid_argument(std::string("ModelParams: ") + what);
        };
        req(lambda_p >= 0 && lambda_a >= 0 && lambda_c >= 0 && lambda_s0 >= 0,
            "rates must be nonnegative");
        req(sigma_s >= 0 && sigma_gamma >= 0, "supply concentrations must be nonnegative");
        req(alpha >= 0, "alpha must be nonnegative");
        req(lame_lambda >= 0 && lame_mu > 0, "need lame_lambda >= 0 and lame_mu > 0");
        req(omega > 0, "omega must be positive");
        req(a_lo > 0 && a_lo <= a_hi, "need 0 < a_lo <= a_hi");
        req(h_star > 0, "h_star must be positive");
        req(p > 2, "need p > 2");
        req(c_pi >= 0, "c_pi must be nonnegative");
        req(tau > 0, "tau must be positive");
    }
};

/// Value / convex-part / concave-part bundle for split scalar functions.
struct SplitEval {
    double value = 0.0;
    double convex_value = 0.0;
    double concave_value = 0.0;
    double convex_deriv = 0.0;
    double concave_deriv = 0.0;
    double full_deriv() const { return convex_deriv + concave_deriv; }
};

/// Quartic double well Psi(r) = (1 - r^2)^2 / 4, split into the convex
/// part r^4/4 and the concave part 1/4 - r^2/2.
inline SplitEval psi(double r) {
    SplitEval s;
    const double r2 = r * r;
    s.convex_value = 0.25 * r2 * r2;
    s.concave_value = 0.25 - 0.5 * r2;
    s.value = s.convex_value + s.concave_value;
    s.convex_deriv = r2 * r;
    s.concave_deriv = -r;
    return s;
}

/// C2 quintic ramp: 0 below 0, 6t^5 - 15t^4 + 10t^3 on [0,1], 1 above.
inline double ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

inline double ramp_prime(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

/// sup |ramp''| on [0,1], attained at t = (1 -+ 1/sqrt(3))/2.
inline double ramp_second_sup() { return 10.0 * std::sqrt(3.0) / 3.0; }

inline double h_damage(double z, double h_star) { return h_star * ramp(z); }
inline double h_damage_prime(double z, double h_star) { return h_star * ramp_prime(z); }

/// Convex-concave split of h: convex part h(z) + K z^2 / 2 with
/// K = h_star * sup|ramp''|, concave part -K z^2 / 2.
inline SplitEval h_split(double z, double h_star) {
    SplitEval s;
    const double K = h_star * ramp_second_sup();
    s.value = h_damage(z, h_star);
    s.convex_value = s.value + 0.5 * K * z * z;
    s.concave_value = -0.5 * K * z * z;
    s.convex_deriv = h_damage_prime(z, h_star) + K * z;
    s.concave_deriv = -K * z;
    return s;
}

/// Viscosity coefficient, a_lo at z = 0 rising to a_hi at z = 1.
inline double a_of_z(double z, const ModelParams& mp) {
    return mp.a_lo + (mp.a_hi - mp.a_lo) * ramp(z);
}

/// Yosida regularisation of the indicator of [0,1] with parameter tau:
/// value dist(z,[0,1])^2 / (2 tau), derivative (z - proj(z)) / tau.
struct YosidaEval {
    double value = 0.0;
    double deriv = 0.0;
};

inline YosidaEval beta_tau(double z, double tau) {
    const double proj = std::clamp(z, 0.0, 1.0);
    const double d = z - proj;
    return {d * d / (2.0 * tau), d / tau};
}

/// Isotropic elasticity tensor application, C e = 2 mu e + lambda tr(e) I.
inline SymTensor2 elastic_apply(const SymTensor2& e, const ModelParams& mp) {
    const double lt = mp.lame_lambda * e.trace();
    return {2.0 * mp.lame_mu * e.e11 + lt, 2.0 * mp.lame_mu * e.e22 + lt,
            2.0 * mp.lame_mu * e.e12};
}

inline SymTensor2 eigenstrain(double phi, const ModelParams& mp) {
    const double r = mp.eff_r0() * phi;
    return {r, r, 0.0};
}

/// C R : R for R = r0 I (enters the phase Jacobian of the elastic energy).
inline double elastic_crr(const ModelParams& mp) {
    const double r0 = mp.eff_r0();
    return 4.0 * r0 * r0 * (mp.lame_mu + mp.lame_lambda);
}

struct ElasticEval {
    double W = 0.0;
    double W_phi = 0.0;
    SymTensor2 W_e;
    double W_z = 0.0;
};

/// Elastic energy density W = h(z) C eta : eta / 2 with eta = e - R phi,
/// and its three partial derivatives.
inline ElasticEval elastic_energy(double phi, const SymTensor2& e, double z,
                                  const ModelParams& mp) {
    const double hs = mp.eff_h_star();
    const SymTensor2 eta = e - eigenstrain(phi, mp);
    const SymTensor2 ceta = elastic_apply(eta, mp);
    const double q = ceta.contract(eta);
    const double r0 = mp.eff_r0();
    ElasticEval out;
    out.W = 0.5 * h_damage(z, hs) * q;
    out.W_phi = -h_damage(z, hs) * r0 * ceta.trace();  // -h C eta : R
    out.W_e = ceta * h_damage(z, hs);
    out.W_z = 0.5 * h_damage_prime(z, hs) * q;
    return out;
}

/// Proliferation weight: continuous, in [0,1], zero at phi = -1, one at
/// phi = 1; independent of z (hook kept for later use).
inline double g_growth(double phi, double /*z*/) {
    return std::clamp(0.5 * (1.0 + phi), 0.0, 1.0);
}

/// Damage-dependent vascular supply rate.
inline double lambda_supply(double z, const ModelParams& mp) {
    return mp.lambda_s0 * std::clamp(z, 0.0, 1.0);
}

/// Mass source of the phase equation; stress reduces proliferation.
inline double source_U(double sigma, const SymTensor2& W_e_prev, double phi_prev,
                       double z_prev, double f, const ModelParams& mp) {
    const double g = mp.growth_on ? g_growth(phi_prev, z_prev) : 0.0;
    return (mp.lambda_p * sigma / (1.0 + W_e_prev.frobenius()) - mp.lambda_a + f) * g;
}

/// Nutrient source: consumption by the tumour plus vascular supply.
inline double source_S(double sigma, double phi_prev, double z_prev, double sigma_s,
                       const ModelParams& mp) {
    const double g = mp.growth_on ? g_growth(phi_prev, z_prev) : 0.0;
    const double ls = mp.supply_on ? lambda_supply(z_prev, mp) : 0.0;
    return -mp.lambda_c * sigma * g + ls * (sigma_s - sigma);
}

/// Damage perturbation pi(z) = -c_pi z, the derivative of the concave
/// pi_hat(z) = -c_pi z^2 / 2.
inline double pi_of_z(double z, double c_pi) { return -c_pi * z; }
inline double pi_hat(double z, double c_pi) { return -0.5 * c_pi * z * z; }

}  // namespace tumor2d

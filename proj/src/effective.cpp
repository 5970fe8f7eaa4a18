#include "lzsm/effective.hpp"

#include <cmath>

namespace lzsm {

double bessel_j(int m, double x) {
    if (std::abs(m) > 200 || std::abs(x) > 1e4)
        throw DomainError("out-of-range: bessel_j supports |m| <= 200, |x| <= 1e4");
    double sign = 1.0;
    if (m < 0) { m = -m; if (m % 2) sign = -sign; }
    if (x < 0.0) { x = -x; if (m % 2) sign = -sign; }
    if (x == 0.0) return m == 0 ? sign : 0.0;
    if (x < 1e-6) {
        // two leading series terms; anything further is below 1e-12 absolute
        double half = 0.5 * x;
        double fact = 1.0;
        for (int k = 2; k <= m; ++k) fact *= k;
        return sign * (std::pow(half, m) / fact) * (1.0 - half * half / (m + 1.0));
    }

    // Backward (Miller) recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, started
    // above the turning point and normalized by J_0 + 2 sum_k J_{2k} = 1.
    double top = std::max(static_cast<double>(m), x);
    int start = static_cast<int>(top) + 20 + static_cast<int>(12.0 * std::cbrt(top));
    if (start % 2) ++start;
    double jp = 0.0;        // J_{k+1}
    double jc = 1e-300;     // J_k
    double target = 0.0;
    double norm = 2.0 * jc; // start is even
    for (int k = start; k >= 1; --k) {
        double jm = (2.0 * k / x) * jc - jp;
        jp = jc;
        jc = jm;            // J_{k-1}
        int idx = k - 1;
        if (idx == m) target = jc;
        if (idx % 2 == 0) norm += (idx == 0) ? jc : 2.0 * jc;
        if (std::abs(jc) > 1e250) {
            jc *= 1e-250;
            jp *= 1e-250;
            target *= 1e-250;
            norm *= 1e-250;
        }
    }
    return sign * target / norm;
}

int select_mbar(double delta, double omega_mod) {
    if (!(omega_mod > 0.0))
        throw std::invalid_argument("invalid-rate: omega_mod must be > 0");
    double r = delta / omega_mod;
    double lo = std::floor(r);
    double hi = lo + 1.0;
    double dlo = r - lo;
    double dhi = hi - r;
    double pick;
    if (dlo < dhi) pick = lo;
    else if (dhi < dlo) pick = hi;
    else pick = std::abs(lo) <= std::abs(hi) ? lo : hi;  // half tie: smaller |m|
    return static_cast<int>(pick);
}

EffectiveMode effective_mode(const ModelParams& p) {
    p.validate();
    EffectiveMode mode;
    mode.m_bar = select_mbar(p.delta, p.omega_mod);
    mode.delta_eff = p.delta - mode.m_bar * p.omega_mod;
    mode.drive_eff = p.drive * bessel_j(mode.m_bar, p.zeta / p.omega_mod);
    return mode;
}

double analytic_photon_number(const EffectiveMode& mode, double kappa,
                              double kappa_phi, int beta) {
    if (kappa <= 0.0)
        throw std::invalid_argument("invalid-rate: kappa must be > 0");
    if (kappa_phi < 0.0)
        throw std::invalid_argument("invalid-rate: kappa_phi must be >= 0");
    if (beta != 1 && beta != 4)
        throw std::invalid_argument("beta must be 1 (linear) or 4 (qubit)");
    double width = kappa + beta * kappa_phi;
    double f2 = mode.drive_eff * mode.drive_eff;
    return (4.0 * f2 / kappa) * width
         / (4.0 * mode.delta_eff * mode.delta_eff + width * width);
}

SteadyResult effective_steady(const EffectiveMode& mode, const ModelParams& p, int cutoff) {
    ModelParams q = p;
    q.delta = mode.delta_eff;
    q.drive = std::abs(mode.drive_eff);
    q.zeta = 0.0;
    return steady_state(q, cutoff);
}

MultiphotonMode multiphoton_mode(const ModelParams& p, int n, int m_bar,
                                 MultiphotonRegime regime, double prefactor) {
    p.validate();
    if (n < 2) throw std::invalid_argument("invalid-dimension: multiphoton order n must be >= 2");
    if (p.chi == 0.0)
        throw DomainError("no-multiphoton-structure: chi = 0 has no n-photon resonance");

    MultiphotonMode mode;
    mode.n = n;
    mode.m_bar = m_bar;
    mode.regime = regime;

    double arg;
    if (p.zeta == 0.0) {
        arg = 0.0;
    } else if (regime == MultiphotonRegime::strong) {
        arg = p.zeta / p.omega_mod;
    } else {
        arg = n * p.zeta / p.omega_mod;
    }

    double base = std::pow(p.drive, n) / std::pow(p.chi, n - 1);
    if (regime == MultiphotonRegime::strong) {
        mode.delta_eff = p.delta - m_bar * p.omega_mod;
        mode.g_eff = base * std::pow(bessel_j(m_bar, arg), n);
    } else {
        mode.delta_eff = p.delta - m_bar * p.omega_mod / n;
        mode.g_eff = base * bessel_j(m_bar, arg);
    }
    if (n > 2) mode.g_eff *= prefactor;
    return mode;
}

double two_level_steady(double g, double e_n, double kappa, double kappa_phi, int n) {
    if (kappa <= 0.0)
        throw std::invalid_argument("invalid-rate: kappa must be > 0");
    if (kappa_phi < 0.0)
        throw std::invalid_argument("invalid-rate: kappa_phi must be >= 0");
    if (n < 1) throw std::invalid_argument("invalid-dimension: n must be >= 1");
    if (g == 0.0) return 0.0;
    double decay = n * kappa;                                   // |n> -> |0>
    double gamma2 = 0.5 * (n * kappa + double(n) * n * kappa_phi);  // coherence
    double pump = 2.0 * g * g * gamma2 / (gamma2 * gamma2 + e_n * e_n);
    return pump / (decay + 2.0 * pump);
}

} // namespace lzsm

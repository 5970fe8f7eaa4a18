#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lzsm/effective.hpp"
#include "lzsm/floquet.hpp"
#include "lzsm/fock.hpp"

using namespace lzsm;

namespace {

// library oracle: std::cyl_bessel_j handles m >= 0, extend by J_-m = (-1)^m J_m
double ref_j(int m, double x) {
    double sign = 1.0;
    if (m < 0) { m = -m; if (m % 2) sign = -1.0; }
    if (x < 0.0) { x = -x; if (m % 2) sign = -sign; }
    return sign * std::cyl_bessel_j(double(m), x);
}

} // namespace

TEST_CASE("bessel evaluation against the standard library") {
    for (int m : {0, 1, 2, 3, 5, 8, 13, 27, 60})
        for (double x : {0.0, 1e-8, 0.3, 0.86, 1.72, 2.4048255576957728, 5.0, 17.3, 80.0}) {
            CAPTURE(m);
            CAPTURE(x);
            CHECK(std::abs(bessel_j(m, x) - ref_j(m, x)) < 1e-12);
        }

    // parity relations
    CHECK(bessel_j(-3, 2.0) == doctest::Approx(-bessel_j(3, 2.0)));
    CHECK(bessel_j(-4, 2.0) == doctest::Approx(bessel_j(4, 2.0)));
    CHECK(bessel_j(1, -2.0) == doctest::Approx(-bessel_j(1, 2.0)));

    // three-term recurrence holds to high accuracy
    for (double x : {0.7, 3.3, 12.0}) {
        for (int m : {1, 2, 6}) {
            double lhs = bessel_j(m - 1, x) + bessel_j(m + 1, x);
            CHECK(lhs == doctest::Approx(2.0 * m / x * bessel_j(m, x)).epsilon(1e-10));
        }
    }

    // sum rule J_0^2 + 2 sum J_k^2 = 1
    double s = bessel_j(0, 7.0) * bessel_j(0, 7.0);
    for (int k = 1; k <= 60; ++k) {
        double j = bessel_j(k, 7.0);
        s += 2.0 * j * j;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(bessel_j(201, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0, 2e4), DomainError);
}

TEST_CASE("sideband selection") {
    CHECK(select_mbar(0.0, 10.0) == 0);
    CHECK(select_mbar(12.0, 10.0) == 1);
    CHECK(select_mbar(-32.0, 10.0) == -3);
    // half ties go to the smaller |m|
    CHECK(select_mbar(5.0, 10.0) == 0);
    CHECK(select_mbar(-5.0, 10.0) == 0);
    CHECK(select_mbar(15.0, 10.0) == 1);
    CHECK(select_mbar(-15.0, 10.0) == -1);
    CHECK_THROWS_AS(select_mbar(1.0, 0.0), std::invalid_argument);

    // the chosen sideband always leaves |delta_eff| <= Omega/2
    ModelParams p;
    p.kappa_ext = 1.0;
    p.omega_mod = from_mhz(13.0);
    p.zeta = 0.5 * p.omega_mod;
    p.drive = 1.0;
    for (double d = -97.0; d <= 97.0; d += 3.7) {
        p.delta = from_mhz(d);
        EffectiveMode mode = effective_mode(p);
        CHECK(std::abs(mode.delta_eff) <= 0.5 * p.omega_mod + 1e-12);
    }
}

TEST_CASE("effective mode drive keeps the bessel sign") {
    ModelParams p;
    p.kappa_ext = 1.0;
    p.omega_mod = from_mhz(10.0);
    p.drive = from_mhz(2.0);
    p.delta = from_mhz(10.0);  // m_bar = 1
    // J_1 changes sign across its first zero at 3.8317
    p.zeta = 3.0 * p.omega_mod;
    CHECK(effective_mode(p).drive_eff > 0.0);
    p.zeta = 4.5 * p.omega_mod;
    CHECK(effective_mode(p).drive_eff < 0.0);
    p.zeta = 3.8317059702075125 * p.omega_mod;
    CHECK(std::abs(effective_mode(p).drive_eff) < 1e-6 * p.drive);
}

TEST_CASE("analytic photon number vs numeric steady states") {
    // beta = 1: linear resonator with number dephasing, exact at any drive
    ModelParams p;
    p.chi = 0.0;
    p.kappa_ext = from_mhz(3.0);
    p.kappa_int = from_mhz(1.0);
    p.kappa_phi = from_mhz(0.9);
    p.drive = from_mhz(0.8);
    for (double d : {0.0, 1.3, -2.6}) {
        p.delta = from_mhz(d);
        EffectiveMode mode{0, p.delta, p.drive};
        double analytic = analytic_photon_number(mode, p.kappa(), p.kappa_phi, 1);
        SteadyResult s = steady_state(p, 14);
        CHECK(s.photon_number == doctest::Approx(analytic).epsilon(1e-7));
    }

    // beta = 4: two-level limit; oracle is the qubit Lindblad steady state
    // solved as a least-squares system with the trace row appended
    double kappa = from_mhz(4.0), kphi = from_mhz(0.7), f = from_mhz(0.2);
    for (double d : {0.0, 2.0}) {
        double delta = from_mhz(d);
        EffectiveMode mode{0, delta, f};
        double analytic = analytic_photon_number(mode, kappa, kphi, 4);

        ModelParams q;
        q.delta = delta;
        q.drive = f;
        q.kappa_ext = kappa;
        q.kappa_phi = kphi;
        CMat l = liouvillian(hamiltonian(q, 2), jump_set(q, 2));
        Eigen::MatrixXcd a(5, 4);
        a.topRows(4) = l;
        a.row(4) << 1, 0, 0, 1;
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(5);
        b(4) = 1.0;
        CMat rho = unvec(a.colPivHouseholderQr().solve(b));
        double numeric = rho(1, 1).real();
        // weak drive: formula is the unsaturated limit, agree to ~F^2 terms
        CHECK(analytic == doctest::Approx(numeric).epsilon(0.01));
    }

    EffectiveMode mode{0, 0.0, 1.0};
    CHECK_THROWS_AS(analytic_photon_number(mode, -1.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(analytic_photon_number(mode, 1.0, 0.0, 2), std::invalid_argument);
}

TEST_CASE("effective steady state reductions") {
    ModelParams p = duffing32();
    p.drive = from_mhz(1.0);
    p.delta = from_mhz(4.0);
    p.omega_mod = from_mhz(30.0);

    // zeta = 0 keeps m_bar = 0 with the bare drive: exactly the static solve
    EffectiveMode mode = effective_mode(p);
    CHECK(mode.m_bar == 0);
    CHECK(mode.drive_eff == doctest::Approx(p.drive));
    SteadyResult via_mode = effective_steady(mode, p, 10);
    SteadyResult direct = steady_state(p, 10);
    CHECK(via_mode.photon_number == doctest::Approx(direct.photon_number).epsilon(1e-12));
    CHECK(std::abs(via_mode.coherence_a - direct.coherence_a) < 1e-12);
}

TEST_CASE("effective vs full harmonic photon number off the sideband midpoints") {
    ModelParams p = duffing32();
    p.drive = from_mhz(3.0);
    p.omega_mod = from_mhz(30.0);
    p.zeta = 1.2 * p.omega_mod;
    for (double frac : {0.0, 0.4, -0.4, 0.8, -0.8}) {
        p.delta = frac * p.omega_mod;
        EffectiveMode mode = effective_mode(p);
        double n_eff = effective_steady(mode, p, 10).photon_number;
        HarmonicState h = harmonic_steady_state(p, 10);
        double n_full = time_averaged_observables(h, p).photon_number;
        CAPTURE(frac);
        CHECK(n_eff == doctest::Approx(n_full).epsilon(0.05));
    }
}

TEST_CASE("sideband weights follow the squared bessel factors") {
    ModelParams p = duffing32();
    p.drive = from_mhz(0.5);  // linear regime
    // fast modulation: the sideband picture carries off-resonant
    // corrections of order (kappa/Omega)^2, about 2% here
    p.omega_mod = from_mhz(60.0);
    // near the J_1 maximum all five weights are comparable, so the
    // off-resonant tails under each sideband stay below the tolerance
    p.zeta = 1.8412 * p.omega_mod;
    std::vector<double> ratio;
    for (int m : {-2, -1, 0, 1, 2}) {
        p.delta = m * p.omega_mod;
        HarmonicState h = harmonic_steady_state(p, 8);
        double n = time_averaged_observables(h, p).photon_number;
        double j = bessel_j(m, 1.8412);
        ratio.push_back(n / (j * j));
    }
    double lo = *std::min_element(ratio.begin(), ratio.end());
    double hi = *std::max_element(ratio.begin(), ratio.end());
    CHECK((hi - lo) / (0.5 * (hi + lo)) < 0.05);
}

TEST_CASE("dip extinction at a bessel zero") {
    // the residual at the zero is the rotating-wave correction of order
    // (kappa/Omega)^2, so the modulation has to be fast for a clean null
    ModelParams p = duffing32();
    p.drive = from_mhz(0.5);
    p.omega_mod = from_mhz(60.0);
    auto s21_at = [&](double ratio, double delta) {
        ModelParams q = p;
        q.zeta = ratio * q.omega_mod;
        q.delta = delta;
        HarmonicState h = harmonic_steady_state(q, 8);
        return std::abs(time_averaged_observables(h, q).s21);
    };
    // dip depth referenced to the midpoint baseline, so that the smooth
    // tails of the neighboring sidebands drop out
    auto depth = [&](double ratio) {
        double off = 0.5 * (s21_at(ratio, 0.5 * p.omega_mod)
                            + s21_at(ratio, 1.5 * p.omega_mod));
        return off - s21_at(ratio, p.omega_mod);
    };
    double at_max = depth(1.8412);           // J_1 maximum
    double at_zero = depth(3.8317059702);    // J_1 first zero
    CHECK(at_max > 100.0 * std::abs(at_zero));
}

TEST_CASE("multiphoton reductions") {
    ModelParams p = kerr10();
    p.drive = from_mhz(5.0);
    p.omega_mod = from_mhz(150.0);
    p.zeta = 0.9 * p.omega_mod;
    p.delta = from_mhz(-20.0);

    // strong modulation: detuning delta - m Omega, coupling (F^2/chi) J_m^2
    MultiphotonMode s = multiphoton_mode(p, 2, 1, MultiphotonRegime::strong);
    CHECK(s.delta_eff == doctest::Approx(p.delta - p.omega_mod));
    double j1 = bessel_j(1, 0.9);
    CHECK(s.g_eff == doctest::Approx(p.drive * p.drive / p.chi * j1 * j1));

    // weak modulation: detuning delta - m Omega/2, coupling (F^2/chi) J_m(2 zeta/Omega)
    MultiphotonMode w = multiphoton_mode(p, 2, 1, MultiphotonRegime::weak);
    CHECK(w.delta_eff == doctest::Approx(p.delta - 0.5 * p.omega_mod));
    CHECK(w.g_eff == doctest::Approx(p.drive * p.drive / p.chi * bessel_j(1, 1.8)));

    // static limit: G = F^2/chi at the bare resonance
    ModelParams z = kerr10();
    z.drive = from_mhz(5.0);
    z.delta = z.chi;
    MultiphotonMode st = multiphoton_mode(z, 2, 0, MultiphotonRegime::strong);
    CHECK(st.g_eff == doctest::Approx(z.drive * z.drive / z.chi));
    CHECK(st.delta_eff == doctest::Approx(z.delta));

    // n = 3 scales with the prefactor; n = 2 ignores it
    MultiphotonMode t1 = multiphoton_mode(p, 3, 1, MultiphotonRegime::strong, 1.0);
    MultiphotonMode t2 = multiphoton_mode(p, 3, 1, MultiphotonRegime::strong, 2.5);
    CHECK(t2.g_eff == doctest::Approx(2.5 * t1.g_eff));

    // coupling extinguished at a bessel zero of the strong-regime factor
    ModelParams x = p;
    x.zeta = 2.4048255576957728 * x.omega_mod;
    CHECK(std::abs(multiphoton_mode(x, 2, 0, MultiphotonRegime::strong).g_eff)
          < 1e-12 * std::abs(x.drive * x.drive / x.chi));

    ModelParams lin = p;
    lin.chi = 0.0;
    CHECK_THROWS_AS(multiphoton_mode(lin, 2, 0, MultiphotonRegime::strong), DomainError);
    CHECK_THROWS_AS(multiphoton_mode(p, 1, 0, MultiphotonRegime::strong), std::invalid_argument);
}

TEST_CASE("two level steady population") {
    CHECK(two_level_steady(0.0, 1.0, 1.0, 0.1, 2) == 0.0);

    // resonant saturation approaches 1/2 from below
    double prev = 0.0;
    for (double g : {1.0, 10.0, 100.0, 1000.0}) {
        double occ = two_level_steady(g, 0.0, 1.0, 0.2, 2);
        CHECK(occ > prev);
        CHECK(occ < 0.5);
        prev = occ;
    }
    CHECK(prev == doctest::Approx(0.5).epsilon(1e-4));

    // n = 1, no dephasing: standard two-level saturation against the
    // textbook closed form s/(2(1+s)) with s = 8 g^2 / kappa^2 on resonance
    double g = 0.3, kappa = 1.7;
    double sat = 8.0 * g * g / (kappa * kappa);
    CHECK(two_level_steady(g, 0.0, kappa, 0.0, 1)
          == doctest::Approx(0.5 * sat / (1.0 + sat)).epsilon(1e-12));

    CHECK_THROWS_AS(two_level_steady(1.0, 0.0, 0.0, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(two_level_steady(1.0, 0.0, 1.0, -0.1, 2), std::invalid_argument);
    CHECK_THROWS_AS(two_level_steady(1.0, 0.0, 1.0, 0.1, 0), std::invalid_argument);
}

TEST_CASE("two photon peak location matches the full model") {
    // scan the full KERR10 steady state around delta = chi and compare the
    // argmax of <2|rho|2> with the two-level prediction (peak at delta = chi)
    ModelParams p = kerr10();
    p.chi5 = 0.0;
    p.drive = 0.35 * std::sqrt(p.kappa() * std::abs(p.chi));
    double chi_mhz = to_mhz(p.chi);
    double best_d = 0.0, best_p2 = -1.0;
    for (double d = chi_mhz - 6.0; d <= chi_mhz + 6.0 + 1e-9; d += 0.25) {
        p.delta = from_mhz(d);
        SteadyResult s = steady_state(p, 12);
        double p2 = s.rho(2, 2).real();
        if (p2 > best_p2) { best_p2 = p2; best_d = d; }
    }
    CHECK(std::abs(best_d - chi_mhz) < 0.5 * to_mhz(p.kappa()));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lzsm/floquet.hpp"
#include "lzsm/fock.hpp"
#include "lzsm/lindblad.hpp"

using namespace lzsm;

namespace {

double trace_distance(const CMat& a, const CMat& b) {
    Eigen::JacobiSVD<CMat> svd(a - b);
    return 0.5 * svd.singularValues().sum();
}

CMat coherent_density(cplx alpha, int dim) {
    CVec psi(dim);
    for (int n = 0; n < dim; ++n) {
        double logfact = std::lgamma(double(n) + 1.0);
        psi(n) = std::pow(alpha, n) * std::exp(-0.5 * std::norm(alpha) - 0.5 * logfact);
    }
    return psi * psi.adjoint();
}

CMat random_density(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(normal(gen), normal(gen));
    CMat rho = g * g.adjoint();
    return rho / rho.trace().real();
}

double ref_j(int m, double x) {
    double sign = 1.0;
    if (m < 0) { m = -m; if (m % 2) sign = -1.0; }
    if (x < 0.0) { x = -x; if (m % 2) sign = -sign; }
    return sign * std::cyl_bessel_j(double(m), x);
}

// closed-form field of the frequency-modulated driven linear cavity:
// alpha(t) = e^{i phi(t)} [beta_p(t) + e^{(i delta - kappa/2) t} (alpha0 - beta_p(0))]
// with phi(t) = -(zeta/Omega) sin(Omega t) and the sideband response
// beta_p(t) = sum_m -i F J_m(zeta/Omega) e^{i m Omega t} / (i(m Omega - delta) + kappa/2).
cplx linear_modulated_field(const ModelParams& p, cplx alpha0, double t) {
    const double ratio = p.zeta / p.omega_mod;
    const cplx im(0.0, 1.0);
    auto beta_p = [&](double tau) {
        cplx acc(0.0, 0.0);
        for (int m = -60; m <= 60; ++m) {
            cplx den = im * (m * p.omega_mod - p.delta) + 0.5 * p.kappa();
            acc += -im * p.drive * ref_j(m, ratio) * std::exp(im * cplx(m * p.omega_mod * tau, 0.0)) / den;
        }
        return acc;
    };
    cplx phi = -im * cplx(ratio * std::sin(p.omega_mod * t), 0.0);
    cplx decay = std::exp((im * p.delta - 0.5 * p.kappa()) * t);
    return std::exp(phi) * (beta_p(t) + decay * (alpha0 - beta_p(0.0)));
}

ModelParams linear_modulated_preset() {
    ModelParams p = kerr10();
    p.chi = 0.0;
    p.chi5 = 0.0;
    p.kappa_phi = 0.0;
    p.drive = from_mhz(1.0);
    p.omega_mod = from_mhz(10.0);
    p.zeta = 1.2 * p.omega_mod;
    p.delta = from_mhz(-7.0);
    return p;
}

} // namespace

TEST_CASE("free decay and stationarity of the time stepper") {
    ModelParams p = kerr10();
    p.zeta = 0.0;
    const double kappa = p.kappa();

    // one-photon state decays exponentially
    ModelParams undriven = p;
    undriven.drive = 0.0;
    CMat one = CMat::Zero(6, 6);
    one(1, 1) = 1.0;
    CMat out = propagate(undriven, one, 0.0, 1.0 / kappa);
    CHECK(std::abs(expect(number(6), out).real() - std::exp(-1.0)) < 1e-6);
    CHECK(std::abs(out.trace().real() - 1.0) < 1e-9);

    // the static steady state does not move
    ModelParams driven = p;
    driven.drive = from_mhz(2.0);
    driven.delta = driven.chi;
    SteadyResult ss = steady_state(driven, 12);
    CMat evolved = propagate(driven, ss.rho, 0.0, 0.8);
    CHECK((evolved - ss.rho).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("time stepper input validation") {
    ModelParams p = kerr10();
    CMat rho = CMat::Identity(4, 4) / 4.0;
    CHECK_THROWS_AS((void)propagate(p, rho, 1.0, 0.5), std::invalid_argument);
    CMat tiny = CMat::Identity(1, 1);
    CHECK_THROWS_AS((void)propagate(p, tiny, 0.0, 1.0), std::invalid_argument);
    CMat rect = CMat::Zero(3, 4);
    CHECK_THROWS_AS((void)propagate(p, rect, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("modulated linear cavity transient matches the sideband closed form") {
    ModelParams p = linear_modulated_preset();
    const int dim = 16;

    SUBCASE("starting from vacuum") {
        CMat rho = CMat::Zero(dim, dim);
        rho(0, 0) = 1.0;
        double t = 0.0;
        for (double t1 : {0.05, 0.13, 0.31}) {
            rho = propagate(p, rho, t, t1);
            t = t1;
            cplx expected = linear_modulated_field(p, cplx(0.0, 0.0), t1);
            CAPTURE(t1);
            CHECK(std::abs(expect(destroy(dim), rho) - expected) < 1e-6);
        }
    }

    SUBCASE("starting from a displaced state the orbit stays coherent") {
        cplx alpha0(0.5, -0.2);
        CMat rho = coherent_density(alpha0, dim);
        rho = propagate(p, rho, 0.0, 0.17);
        cplx expected = linear_modulated_field(p, alpha0, 0.17);
        CHECK(std::abs(expect(destroy(dim), rho) - expected) < 1e-6);
        // a linear cavity maps coherent states to coherent states
        CHECK(expect(number(dim), rho).real()
              == doctest::Approx(std::norm(expected)).epsilon(1e-5));
        CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("harmonic balance without modulation reduces to the static solve") {
    ModelParams p = kerr10();
    p.drive = from_mhz(1.5);
    p.delta = from_mhz(-5.0);
    p.zeta = 0.0;

    HarmonicState h = harmonic_steady_state(p, 12);
    CHECK(h.M == 0);
    CHECK(h.components.size() == 1);
    CHECK(h.boundary_ok);

    SteadyResult s = steady_state(p, 12);
    CHECK((h.rho0() - s.rho).cwiseAbs().maxCoeff() < 1e-10);

    HarmonicObservables obs = time_averaged_observables(h, p);
    CHECK(obs.photon_number == doctest::Approx(s.photon_number).epsilon(1e-10));
    CHECK(std::abs(obs.coherence_a - s.coherence_a) < 1e-10);
}

TEST_CASE("harmonic balance reproduces the linear cavity Bessel response") {
    ModelParams p = linear_modulated_preset();
    const double kappa = p.kappa();
    const double ratio = p.zeta / p.omega_mod;

    for (double d_mhz : {-17.0, -7.0, 3.0}) {
        p.delta = from_mhz(d_mhz);
        HarmonicState h = harmonic_steady_state(p, 12);
        HarmonicObservables obs = time_averaged_observables(h, p);
        double oracle = 0.0;
        for (int m = -80; m <= 80; ++m) {
            double jm = ref_j(m, ratio);
            double dm = p.delta - m * p.omega_mod;
            oracle += p.drive * p.drive * jm * jm / (dm * dm + 0.25 * kappa * kappa);
        }
        CAPTURE(d_mhz);
        CHECK(std::abs(obs.photon_number - oracle) / oracle < 1e-8);
        CHECK_FALSE(obs.cutoff_warning);
    }
}

TEST_CASE("harmonic state structure invariants") {
    ModelParams p = kerr10();
    p.drive = from_mhz(2.0);
    p.delta = p.chi - from_mhz(7.5);
    p.omega_mod = from_mhz(15.0);
    p.zeta = 0.8 * p.omega_mod;

    HarmonicState h = harmonic_steady_state(p, 10);
    CHECK(h.boundary_ok);
    // reality of rho(t): opposite harmonics are adjoints
    for (int m = 1; m <= h.M; ++m)
        CHECK((h.component(-m) - h.component(m).adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    // the average state is a physical density matrix
    const CMat& r0 = h.rho0();
    CHECK(std::abs(r0.trace().real() - 1.0) < 1e-10);
    CHECK((r0 - r0.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMat> es(r0);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);

    // a hand-forced tiny harmonic budget is reported as untrustworthy
    HarmonicState cropped = harmonic_steady_state(p, 10, 2);
    CHECK(cropped.M == 2);
    CHECK_FALSE(cropped.boundary_ok);

    CHECK_THROWS_AS((void)harmonic_steady_state(p, 1), std::invalid_argument);
    ModelParams bad = p;
    bad.omega_mod = 0.0;
    CHECK_THROWS_AS((void)harmonic_steady_state(bad, 10), std::invalid_argument);
}

TEST_CASE("period averaged orbit agrees with the harmonic average state") {
    ModelParams p = kerr10();
    p.drive = from_mhz(2.0);
    p.delta = p.chi - from_mhz(7.5);
    p.omega_mod = from_mhz(15.0);
    p.zeta = 0.8 * p.omega_mod;
    const int dim = 12;

    HarmonicState h = harmonic_steady_state(p, dim);

    // relax from vacuum for 20/kappa, then average one modulation period
    CMat rho = CMat::Zero(dim, dim);
    rho(0, 0) = 1.0;
    double t_relax = 20.0 / p.kappa();
    rho = propagate(p, rho, 0.0, t_relax);
    CMat avg = period_average(p, rho, t_relax, 64);
    CHECK(trace_distance(avg, h.rho0()) < 1e-4);

    HarmonicObservables obs = time_averaged_observables(h, p);
    CHECK(std::abs(expect(number(dim), avg).real() - obs.photon_number) < 1e-4);
}

TEST_CASE("undriven modulated cavity reports empty observables") {
    ModelParams p = kerr10();
    p.drive = 0.0;
    p.omega_mod = from_mhz(20.0);
    p.zeta = from_mhz(10.0);
    HarmonicState h = harmonic_steady_state(p, 6);
    HarmonicObservables obs = time_averaged_observables(h, p);
    CHECK(obs.photon_number < 1e-12);
    CHECK(std::isnan(obs.s21.real()));
}

TEST_CASE("one period propagator is trace preserving and contractive") {
    ModelParams p = kerr10();
    p.drive = from_mhz(1.0);
    p.delta = from_mhz(-4.0);
    p.omega_mod = from_mhz(20.0);
    p.zeta = from_mhz(20.0);
    const int dim = 5;

    FloquetMap f = floquet_map(p, dim);
    CHECK(f.steps_used >= 64);
    CHECK(f.defect < 1e-7);

    for (unsigned seed : {3u, 17u, 40u}) {
        CMat rho = random_density(dim, seed);
        CMat mapped = unvec(f.map * vec(rho));
        CHECK(std::abs(mapped.trace().real() - 1.0) < 1e-9);
        CHECK(std::abs(mapped.trace().imag()) < 1e-9);
    }

    FloquetSpectrum s = floquet_liouvillian(f);
    CHECK(s.multipliers.cwiseAbs().maxCoeff() <= 1.0 + 1e-8);
    CHECK(s.steady_index >= 0);

    CHECK_THROWS_AS((void)floquet_map(ModelParams{}, dim), std::invalid_argument);
    CHECK_THROWS_AS((void)floquet_map(p, 1), std::invalid_argument);
}

TEST_CASE("constant generator limit of the propagator is the matrix exponential") {
    ModelParams p = kerr10();
    p.drive = from_mhz(1.5);
    p.delta = from_mhz(-3.0);
    p.zeta = 0.0;
    p.omega_mod = from_mhz(25.0);  // sets the period only
    const int dim = 5;

    FloquetMap f = floquet_map(p, dim);
    CMat l = static_liouvillian(p, dim);
    CMat direct = (l * f.period).exp();
    CHECK((f.map - direct).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("step doubling of the propagator converges at second order") {
    ModelParams p = kerr10();
    p.drive = from_mhz(1.0);
    p.delta = from_mhz(-4.0);
    p.omega_mod = from_mhz(20.0);
    p.zeta = from_mhz(16.0);
    const int dim = 4;

    // with an unreachable tolerance the map accepts after one doubling and
    // reports the defect ||F_2N - F_N|| for each starting N
    std::vector<double> defects;
    for (int n : {16, 32, 64, 128}) {
        FloquetMap f = floquet_map(p, dim, n, 1e30);
        CHECK(f.steps_used == 2 * n);
        defects.push_back(f.defect);
    }
    for (size_t i = 1; i < defects.size(); ++i)
        CHECK(defects[i - 1] / defects[i] > 3.5);
}

TEST_CASE("stroboscopic fixed point period averages to the harmonic state") {
    ModelParams p = kerr10();
    p.drive = from_mhz(1.5);
    p.delta = p.chi - from_mhz(10.0);
    p.omega_mod = from_mhz(20.0);
    p.zeta = from_mhz(16.0);
    const int dim = 8;

    FloquetMap f = floquet_map(p, dim, 64, 1e-9);
    FloquetSpectrum s = floquet_liouvillian(f);
    CHECK(is_valid_density(s.rho_ss, 1e-7));

    // the fixed point reproduces itself one period later
    CMat cycled = unvec(f.map * vec(s.rho_ss));
    CHECK((cycled - s.rho_ss).cwiseAbs().maxCoeff() < 1e-7);

    HarmonicState h = harmonic_steady_state(p, dim);
    CMat avg = period_average(p, s.rho_ss, 0.0, 64);
    CHECK(trace_distance(avg, h.rho0()) < 1e-5);
}

TEST_CASE("spectrum of the static limit folds into the principal strip") {
    ModelParams p = kerr10();
    p.drive = from_mhz(1.0);
    p.delta = from_mhz(-6.0);
    p.zeta = 0.0;
    p.omega_mod = from_mhz(30.0);
    const int dim = 4;

    FloquetMap f = floquet_map(p, dim, 64, 1e-12);
    FloquetSpectrum s = floquet_liouvillian(f);

    Eigen::ComplexEigenSolver<CMat> es(static_liouvillian(p, dim));
    REQUIRE(es.info() == Eigen::Success);
    std::vector<cplx> expected;
    for (int j = 0; j < es.eigenvalues().size(); ++j) {
        cplx lam = es.eigenvalues()(j);
        double im = lam.imag();
        // fold Im into (-Omega/2, Omega/2]
        double off = std::floor((im + 0.5 * p.omega_mod) / p.omega_mod);
        expected.push_back(cplx(lam.real(), im - off * p.omega_mod));
    }
    // greedy nearest matching of the two spectra
    std::vector<bool> used(expected.size(), false);
    double worst = 0.0;
    for (int j = 0; j < s.eigenvalues.size(); ++j) {
        double best = 1e18;
        size_t arg = 0;
        for (size_t k = 0; k < expected.size(); ++k) {
            if (used[k]) continue;
            double d = std::abs(s.eigenvalues(j) - expected[k]);
            if (d < best) { best = d; arg = k; }
        }
        used[arg] = true;
        worst = std::max(worst, best);
    }
    CHECK(worst < 1e-6 * std::max(1.0, std::abs(expected[0])));

    // the imaginary parts respect the branch cut
    for (int j = 0; j < s.eigenvalues.size(); ++j) {
        CHECK(s.eigenvalues(j).imag() <= 0.5 * p.omega_mod + 1e-9);
        CHECK(s.eigenvalues(j).imag() > -0.5 * p.omega_mod - 1e-9);
    }
}

TEST_CASE("spectral structure of a modulated dissipative cycle") {
    ModelParams p = kerr10();
    p.drive = from_mhz(1.0);
    p.delta = p.chi - from_mhz(10.0);
    p.omega_mod = from_mhz(20.0);
    p.zeta = from_mhz(17.2);
    const int dim = 6;

    FloquetMap f = floquet_map(p, dim, 64, 1e-10);
    FloquetSpectrum s = floquet_liouvillian(f);
    const int d2 = dim * dim;

    // exactly one stationary direction, everything else decays
    int zero_count = 0;
    for (int j = 0; j < d2; ++j) {
        if (std::abs(s.eigenvalues(j)) < 1e-8) ++zero_count;
        else CHECK(s.eigenvalues(j).real() < 0.0);
    }
    CHECK(zero_count == 1);

    // biorthonormal pairing between left and right eigenvectors
    CHECK(s.pair_residual < 1e-8);

    // conjugation symmetry: eigenvalues come in conjugate pairs
    for (int j = 0; j < d2; ++j) {
        double best = 1e18;
        for (int k = 0; k < d2; ++k)
            best = std::min(best, std::abs(s.eigenvalues(j) - std::conj(s.eigenvalues(k))));
        CHECK(best < 1e-7);
    }
}

TEST_CASE("weakly probed device relaxes to a nearly pure vacuum") {
    ModelParams p = kerr10();
    p.drive = from_mhz(0.05);
    p.delta = p.chi - from_mhz(10.0);
    p.omega_mod = from_mhz(20.0);
    p.zeta = from_mhz(10.0);
    const int dim = 6;

    FloquetSpectrum s = floquet_liouvillian(floquet_map(p, dim));
    CHECK(s.rho_ss(0, 0).real() > 0.99);
    CHECK(purity(s.rho_ss) > 0.99);
}

TEST_CASE("a corrupted propagator is rejected") {
    FloquetMap fake;
    fake.map = 0.5 * CMat::Identity(16, 16);
    fake.period = 1.0;
    fake.cutoff = 4;
    CHECK_THROWS_AS((void)floquet_liouvillian(fake), SolverError);
}

TEST_CASE("period average input validation") {
    ModelParams p = kerr10();
    p.omega_mod = from_mhz(20.0);
    CMat rho = CMat::Identity(4, 4) / 4.0;
    CHECK_THROWS_AS((void)period_average(p, rho, 0.0, 1), std::invalid_argument);
    ModelParams bad = p;
    bad.omega_mod = 0.0;
    CHECK_THROWS_AS((void)period_average(bad, rho, 0.0, 16), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lzsm/fock.hpp"

using namespace lzsm;

namespace {

CMat random_hermitian(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(gen), g(gen));
    return 0.5 * (m + CMat(m.adjoint()));
}

CMat random_density(int dim, unsigned seed) {
    CMat h = random_hermitian(dim, seed);
    CMat rho = h * h.adjoint();
    rho /= rho.trace().real();
    return rho;
}

CMat coherent_density(int dim, cplx beta) {
    CVec psi(dim);
    double lognorm = -0.5 * std::norm(beta);
    for (int n = 0; n < dim; ++n) {
        double logfact = std::lgamma(double(n) + 1.0);
        psi(n) = std::pow(beta, n) * std::exp(lognorm - 0.5 * logfact);
    }
    return psi * psi.adjoint();
}

} // namespace

TEST_CASE("ladder operators") {
    CMat a2 = destroy(2);
    CHECK(std::abs(a2(0, 1) - 1.0) < 1e-15);
    CHECK(a2(0, 0) == cplx(0, 0));
    CHECK(a2(1, 0) == cplx(0, 0));
    CHECK(a2(1, 1) == cplx(0, 0));

    CMat a3 = destroy(3);
    CHECK(std::abs(a3(1, 2) - std::sqrt(2.0)) < 1e-15);

    // truncated commutator: identity except the corner entry 1-dim
    int dim = 5;
    CMat c = destroy(dim) * create(dim) - create(dim) * destroy(dim);
    CMat expected = CMat::Identity(dim, dim);
    expected(dim - 1, dim - 1) = 1.0 - dim;
    CHECK((c - expected).cwiseAbs().maxCoeff() < 1e-14);

    // number operator = a+ a, eigenvalues 0..dim-1 exactly
    CMat n = create(dim) * destroy(dim);
    CHECK((n - number(dim)).cwiseAbs().maxCoeff() < 1e-14);
    for (int k = 0; k < dim; ++k) CHECK(number(dim)(k, k) == cplx(k, 0));

    CHECK_THROWS_AS(destroy(1), std::invalid_argument);
    CHECK_THROWS_AS(number(0), std::invalid_argument);
}

TEST_CASE("hamiltonian assembly") {
    ModelParams p;
    p.delta = 2.0;
    p.chi = -1.5;
    p.kappa_ext = 1.0;

    // undriven: diagonal with E_n = -delta*n + chi*n*(n-1)
    CMat h = hamiltonian(p, 6);
    for (int n = 0; n < 6; ++n) {
        double en = -p.delta * n + p.chi * n * (n - 1.0);
        CHECK(std::abs(h(n, n) - en) < 1e-14);
    }
    CHECK(h.cwiseAbs().sum() == doctest::Approx(h.diagonal().cwiseAbs().sum()));

    // quintic term shows up from n = 3
    ModelParams q = p;
    q.chi5 = 0.25;
    CMat h5 = hamiltonian(q, 6);
    CHECK(std::abs(h5(3, 3) - h(3, 3) - 0.25 * 6.0) < 1e-13);
    CHECK(std::abs(h5(2, 2) - h(2, 2)) < 1e-14);

    // all couplings zero -> zero matrix
    ModelParams z;
    z.kappa_ext = 1.0;
    CHECK(hamiltonian(z, 4).cwiseAbs().maxCoeff() == 0.0);

    // half a modulation period flips the zeta term: H(pi/Om) - H(0) = -2 zeta n
    ModelParams m = p;
    m.zeta = 0.7;
    m.omega_mod = 3.0;
    CMat diff = hamiltonian(m, 5, M_PI / m.omega_mod) - hamiltonian(m, 5, 0.0);
    CHECK((diff + 2.0 * m.zeta * number(5)).cwiseAbs().maxCoeff() < 1e-12);

    // drive makes it non-diagonal but Hermitian
    ModelParams d = p;
    d.drive = 0.4;
    CMat hd = hamiltonian(d, 5);
    CHECK((hd - hd.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(hd(0, 1) - 0.4) < 1e-15);
    CHECK(std::abs(hd(1, 2) - 0.4 * std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("vectorization and superoperators") {
    int dim = 4;
    CMat a = random_hermitian(dim, 11);
    CMat b = random_hermitian(dim, 12);
    CMat rho = random_density(dim, 13);

    CHECK((unvec(vec(rho)) - rho).cwiseAbs().maxCoeff() == 0.0);

    // defining identity of column stacking: vec(A rho B) = kron(B^T, A) vec(rho)
    CVec lhs = vec(a * rho * b);
    CVec rhs = kron(b.transpose(), a) * vec(rho);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

    CHECK((unvec(spre(a) * vec(rho)) - a * rho).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((unvec(spost(b) * vec(rho)) - rho * b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((unvec(commutator_super(a) * vec(rho)) - (a * rho - rho * a)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(unvec(CVec::Zero(5)), std::invalid_argument);
}

TEST_CASE("liouvillian trace annihilation and hermiticity preservation") {
    int dim = 6;
    ModelParams p;
    p.delta = 1.3;
    p.chi = -2.0;
    p.drive = 0.8;
    p.kappa_ext = 0.9;
    p.kappa_int = 0.3;
    p.kappa_phi = 0.45;

    CMat l = liouvillian(hamiltonian(p, dim), jump_set(p, dim));
    for (unsigned seed = 1; seed <= 5; ++seed) {
        CMat rho = random_hermitian(dim, seed);
        CMat drho = unvec(l * vec(rho));
        CHECK(std::abs(drho.trace()) < 1e-12 * rho.cwiseAbs().maxCoeff() * dim);
        CHECK((drho - drho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }

    // single-photon decay: d<n>/dt = -kappa <n> on |1><1|
    CMat l_decay = liouvillian(CMat::Zero(dim, dim), {{destroy(dim), p.kappa()}});
    CMat rho1 = CMat::Zero(dim, dim);
    rho1(1, 1) = 1.0;
    CMat drho = unvec(l_decay * vec(rho1));
    CHECK(std::abs(expect(number(dim), drho) + p.kappa()) < 1e-13);

    // pure dephasing leaves populations alone
    CMat l_phi = liouvillian(CMat::Zero(dim, dim), {{number(dim), 0.7}});
    CMat diag = CMat::Zero(dim, dim);
    diag(0, 0) = 0.5;
    diag(3, 3) = 0.5;
    CHECK(unvec(l_phi * vec(diag)).cwiseAbs().maxCoeff() < 1e-14);
    // ... but kills coherences at rate (di - dj)^2 / 2
    CMat coh = CMat::Zero(dim, dim);
    coh(0, 2) = 1.0;
    CMat dcoh = unvec(l_phi * vec(coh));
    CHECK(std::abs(dcoh(0, 2) + 0.5 * 0.7 * 4.0) < 1e-13);

    CHECK_THROWS_AS(liouvillian(hamiltonian(p, dim), {{destroy(dim), -1.0}}),
                    std::invalid_argument);
    CMat nonherm = CMat::Zero(dim, dim);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(liouvillian(nonherm, {}), std::invalid_argument);
    CHECK_THROWS_AS(liouvillian(hamiltonian(p, dim), {{destroy(dim + 1), 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("broken dissipator sign is caught by the trace check") {
    // same terms as the real dissipator but with the anticommutator added
    // instead of subtracted; the trace functional must not annihilate it
    int dim = 5;
    CMat op = destroy(dim);
    CMat ldl = op.adjoint() * op;
    CMat good = kron(op.conjugate(), op) - 0.5 * spre(ldl) - 0.5 * spost(ldl);
    CMat bad = kron(op.conjugate(), op) + 0.5 * spre(ldl) + 0.5 * spost(ldl);
    CMat rho = random_density(dim, 21);
    CHECK(std::abs(unvec(good * vec(rho)).trace()) < 1e-13);
    CHECK(std::abs(unvec(bad * vec(rho)).trace()) > 0.1);
}

TEST_CASE("generator split for the modulated problem") {
    ModelParams p;
    p.delta = 0.5;
    p.chi = -1.0;
    p.drive = 0.3;
    p.zeta = 2.0;
    p.omega_mod = 5.0;
    p.kappa_ext = 0.8;
    p.kappa_phi = 0.2;
    int dim = 5;

    CMat l0 = static_liouvillian(p, dim);
    CMat lmod = modulation_superop(p, dim);
    for (double t : {0.0, 0.37, 1.1}) {
        CMat full = liouvillian(hamiltonian(p, dim, t), jump_set(p, dim));
        CMat split = l0 + std::cos(p.omega_mod * t) * lmod;
        CHECK((full - split).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("state observables") {
    int dim = 8;
    CMat pure = CMat::Zero(dim, dim);
    pure(2, 2) = 1.0;
    CHECK(purity(pure) == doctest::Approx(1.0));

    CMat mixed = CMat::Identity(dim, dim) / double(dim);
    CHECK(purity(mixed) == doctest::Approx(1.0 / dim));

    CMat rho = random_density(dim, 31);
    CHECK(std::abs(expect(number(dim), rho).imag()) < 1e-14);
    CHECK(expect(identity(dim), rho).real() == doctest::Approx(1.0));

    CMat top = CMat::Zero(dim, dim);
    top(dim - 1, dim - 1) = 0.25;
    top(dim - 2, dim - 2) = 0.5;
    top(0, 0) = 0.25;
    CHECK(top_two_population(top) == doctest::Approx(0.75));

    CHECK(is_valid_density(rho));
    CHECK(!is_valid_density(rho * 2.0));          // trace 2
    CMat neg = CMat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK(!is_valid_density(neg));                // negative eigenvalue
    CMat skew = mixed;
    skew(0, 1) = cplx(0.0, 1e-3);
    CHECK(!is_valid_density(skew));               // not Hermitian
}

TEST_CASE("wigner function values and normalization") {
    // vacuum at the origin: W(0) = 2/pi
    int dim = 20;
    CMat vac = CMat::Zero(dim, dim);
    vac(0, 0) = 1.0;
    WignerGrid origin;
    origin.re_min = origin.re_max = 0.0;
    origin.im_min = origin.im_max = 0.0;
    origin.n_re = origin.n_im = 2;
    WignerMap w0 = wigner(vac, origin);
    CHECK(w0.w(0, 0) == doctest::Approx(2.0 / M_PI).epsilon(1e-10));

    // coherent state probed at its own center gives the vacuum value
    cplx beta(0.7, -0.4);
    CMat coh = coherent_density(30, beta);
    WignerGrid at_beta;
    at_beta.re_min = at_beta.re_max = beta.real();
    at_beta.im_min = at_beta.im_max = beta.imag();
    at_beta.n_re = at_beta.n_im = 2;
    CHECK(wigner(coh, at_beta).w(0, 0) == doctest::Approx(2.0 / M_PI).epsilon(1e-8));

    // mixed state: W(0) is the mean parity up to 2/pi
    CMat therm = CMat::Zero(10, 10);
    double nbar = 0.5, norm = 0.0;
    for (int n = 0; n < 10; ++n) norm += std::pow(nbar / (1.0 + nbar), n);
    double parity = 0.0;
    for (int n = 0; n < 10; ++n) {
        double pn = std::pow(nbar / (1.0 + nbar), n) / norm;
        therm(n, n) = pn;
        parity += (n % 2 == 0 ? pn : -pn);
    }
    WignerMap wt = wigner(therm, origin);
    CHECK(wt.w(0, 0) == doctest::Approx(2.0 / M_PI * parity).epsilon(1e-10));

    // Riemann sum over a 4-sigma grid integrates to 1; the probe visits
    // 2*alpha so the cutoff has to sit well above 4*|corner|^2
    WignerGrid wide;
    wide.re_min = wide.im_min = -2.0;
    wide.re_max = wide.im_max = 2.0;
    wide.n_re = wide.n_im = 41;
    CMat vac56 = CMat::Zero(56, 56);
    vac56(0, 0) = 1.0;
    WignerMap wv = wigner(vac56, wide);
    CHECK(!wv.cutoff_warning);
    double da = (4.0 / 40.0) * (4.0 / 40.0);
    CHECK(wv.w.sum() * da == doctest::Approx(1.0).epsilon(0.01));

    // same grid with a tiny cutoff must raise the warning flag
    CMat vac4 = CMat::Zero(4, 4);
    vac4(0, 0) = 1.0;
    CHECK(wigner(vac4, wide).cutoff_warning);

    WignerGrid degenerate;
    degenerate.n_re = 1;
    CHECK_THROWS_AS(wigner(vac, degenerate), std::invalid_argument);
}

#include "lzsm/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace lzsm {

namespace {

constexpr double hbar_si = 1.054571817e-34;  // J s

// Solve L vec(rho) = 0 with Tr rho = 1 by replacing the last row (a
// redundant diagonal-element equation) with the trace functional.
struct LinearSteady {
    CMat rho;
    bool svd_fallback = false;
};

LinearSteady solve_vectorized(const CMat& l, int dim) {
    const int d2 = dim * dim;
    CMat sys = l;
    sys.row(d2 - 1).setZero();
    for (int k = 0; k < dim; ++k) sys(d2 - 1, k * dim + k) = 1.0;
    CVec rhs = CVec::Zero(d2);
    rhs(d2 - 1) = 1.0;

    LinearSteady out;
    Eigen::PartialPivLU<CMat> lu(sys);
    CVec x = lu.solve(rhs);
    double residual = (sys * x - rhs).norm() / rhs.norm();
    if (residual < 1e-8 && x.allFinite()) {
        out.rho = unvec(x);
    } else {
        // SVD fallback: null vector of the untouched generator.
        if (d2 > 4096)
            throw SolverError("solver-failure: steady-state system ill conditioned and too large for SVD fallback");
        Eigen::BDCSVD<CMat> svd(l, Eigen::ComputeThinV);
        CVec null = svd.matrixV().col(d2 - 1);
        CMat rho = unvec(null);
        cplx tr = rho.trace();
        if (std::abs(tr) < 1e-14)
            throw SolverError("solver-failure: SVD null vector is traceless, no steady state found");
        out.rho = rho / tr;
        out.svd_fallback = true;
    }
    out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();
    out.rho /= out.rho.trace().real();
    return out;
}

} // namespace

SteadyResult steady_state(const ModelParams& p, int cutoff) {
    p.validate();
    if (p.zeta != 0.0)
        throw std::invalid_argument(
            "use-floquet-module: zeta != 0 has no time-independent steady state; "
            "use harmonic_steady_state or floquet_map");
    if (cutoff < 2) throw std::invalid_argument("invalid-dimension: cutoff must be >= 2");

    CMat l = static_liouvillian(p, cutoff);
    LinearSteady sol = solve_vectorized(l, cutoff);

    SteadyResult r;
    r.rho = sol.rho;
    r.svd_fallback = sol.svd_fallback;
    r.cutoff_used = cutoff;
    r.photon_number = expect(number(cutoff), r.rho).real();
    r.coherence_a = expect(destroy(cutoff), r.rho);
    r.cutoff_warning = top_two_population(r.rho) > 1e-6;
    return r;
}

SteadyResult steady_state_auto(const ModelParams& p, int max_cutoff) {
    auto roots = semiclassical_photon_roots(p);
    double nsc = roots.empty() ? 0.0 : roots.back();
    int cutoff = std::max(8, static_cast<int>(std::ceil(6.0 * nsc)) + 4);
    cutoff = std::min(cutoff, max_cutoff);

    SteadyResult r = steady_state(p, cutoff);
    while (cutoff < max_cutoff) {
        int next = std::min(max_cutoff, static_cast<int>(std::ceil(1.5 * cutoff)));
        SteadyResult r2 = steady_state(p, next);
        double rel = std::abs(r2.photon_number - r.photon_number)
                   / std::max(std::abs(r2.photon_number), 1e-12);
        r = r2;
        cutoff = next;
        if (rel < 1e-6) return r;
    }
    r.converged = !r.cutoff_warning;
    return r;
}

cplx s21_from_field(cplx alpha, double drive, double kappa_ext) {
    if (drive == 0.0)
        throw DomainError("undefined-transmission: S21 needs a nonzero drive amplitude");
    if (kappa_ext < 0.0)
        throw std::invalid_argument("invalid-rate: kappa_ext must be >= 0");
    return 1.0 - cplx(0.0, 1.0) * kappa_ext * alpha / (2.0 * drive);
}

cplx s21_notch_linear(double delta, double kappa_ext, double kappa_int, double phi) {
    if (kappa_ext < 0.0 || kappa_int < 0.0)
        throw std::invalid_argument("invalid-rate: decay rates must be >= 0");
    if (std::abs(std::cos(phi)) < 1e-12)
        throw DomainError("undefined-transmission: asymmetry angle too close to pi/2");
    cplx denom(kappa_ext + kappa_int, 2.0 * delta);
    return 1.0 - (kappa_ext / denom) * std::exp(cplx(0.0, phi)) / std::cos(phi);
}

double drive_from_power(double power_dbm, double kappa_ext, double omega_d) {
    if (kappa_ext <= 0.0 || omega_d <= 0.0)
        throw std::invalid_argument("invalid-rate: kappa_ext and omega_d must be > 0");
    double p_watt = std::pow(10.0, (power_dbm - 30.0) / 10.0);
    // rad/us -> rad/s for the SI formula, then back.
    double f_si = std::sqrt(p_watt * (kappa_ext * 1e6) / (hbar_si * (omega_d * 1e6)));
    return f_si / 1e6;
}

std::vector<double> semiclassical_photon_roots(const ModelParams& p) {
    p.validate();
    double f2 = p.drive * p.drive;
    double k24 = 0.25 * p.kappa() * p.kappa();
    if (p.chi == 0.0) {
        double denom = p.delta * p.delta + k24;
        if (denom <= 0.0)
            throw SolverError("solver-failure: lossless linear resonator on resonance has no finite response");
        return {f2 / denom};
    }
    // chi^2 n^3 + 2 delta chi n^2 + (delta^2 + kappa^2/4) n - F^2 = 0
    double a = p.chi * p.chi;
    double b = 2.0 * p.delta * p.chi;
    double c = p.delta * p.delta + k24;
    double d = -f2;
    Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
    comp(0, 2) = -d / a;
    comp(1, 2) = -c / a;
    comp(2, 2) = -b / a;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
    std::vector<double> roots;
    double scale = std::max({1.0, std::abs(b / a), std::abs(c / a), std::abs(d / a)});
    for (int i = 0; i < 3; ++i) {
        cplx r = es.eigenvalues()(i);
        if (std::abs(r.imag()) < 1e-9 * scale && r.real() > -1e-12)
            roots.push_back(std::max(0.0, r.real()));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double qubit_validity_p2(double drive, double kappa, double chi) {
    double f4 = std::pow(drive, 4);
    double denom = 9.0 * f4 + 2.0 * kappa * kappa
                 * (2.0 * (kappa * kappa + chi * chi) - 5.0 * drive * drive);
    if (denom <= 0.0)
        throw DomainError("out-of-validity: drive too large for the two-level expansion");
    return 2.0 * f4 / denom;
}

double linear_validity_dn(double drive, double kappa, double chi) {
    if (kappa <= 0.0) throw std::invalid_argument("invalid-rate: kappa must be > 0");
    return std::abs(3.0 * std::sqrt(3.0) * drive * drive * chi / (kappa * kappa * kappa));
}

PowerSweep power_sweep(const ModelParams& p, const std::vector<double>& powers_dbm,
                       const std::vector<double>& deltas) {
    PowerSweep out;
    out.powers_dbm = powers_dbm;
    out.deltas = deltas;
    long np = static_cast<long>(powers_dbm.size());
    long nd = static_cast<long>(deltas.size());
    out.n_avg.resize(np, nd);
    out.s21.resize(np, nd);
    out.cutoff_used.resize(np, nd);
    for (long i = 0; i < np; ++i) {
        for (long j = 0; j < nd; ++j) {
            ModelParams q = p;
            q.delta = deltas[j];
            q.drive = drive_from_power(powers_dbm[i], p.kappa_ext, p.omega_d + q.delta);
            SteadyResult r = steady_state_auto(q);
            out.n_avg(i, j) = r.photon_number;
            out.s21(i, j) = s21_from_field(r.coherence_a, q.drive, q.kappa_ext);
            out.cutoff_used(i, j) = r.cutoff_used;
        }
    }
    return out;
}

} // namespace lzsm

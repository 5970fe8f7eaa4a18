#include "lzsm/floquet.hpp"

#include "lzsm/lapack.hpp"

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lzsm {

namespace {

// Pieces of the master equation kept in matrix (not vectorized) form for the
// time stepper.
struct RhsParts {
    CMat h_static;
    Eigen::MatrixXd delta_n;  // n_i - n_j, multiplies the modulated diagonal
    double zeta = 0.0;
    double omega_mod = 0.0;
    std::vector<std::pair<CMat, double>> jumps;
    std::vector<CMat> jump_sq;  // L^+ L for each jump

    explicit RhsParts(const ModelParams& p, int dim) {
        ModelParams bare = p;
        bare.zeta = 0.0;
        h_static = hamiltonian(bare, dim, 0.0);
        delta_n.resize(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) delta_n(i, j) = i - j;
        zeta = p.zeta;
        omega_mod = p.omega_mod;
        jumps = jump_set(p, dim);
        for (const auto& [l, rate] : jumps) jump_sq.push_back(l.adjoint() * l);
    }

    CMat operator()(double t, const CMat& rho) const {
        const cplx im(0.0, 1.0);
        CMat out = -im * (h_static * rho - rho * h_static);
        if (zeta != 0.0) {
            double c = zeta * std::cos(omega_mod * t);
            out.noalias() += (-im * c) * delta_n.cast<cplx>().cwiseProduct(rho);
        }
        for (size_t k = 0; k < jumps.size(); ++k) {
            const auto& [l, rate] = jumps[k];
            out.noalias() += rate * (l * rho * l.adjoint());
            out.noalias() -= (0.5 * rate) * (jump_sq[k] * rho + rho * jump_sq[k]);
        }
        return out;
    }
};

} // namespace

CMat propagate(const ModelParams& p, const CMat& rho0, double t0, double t1,
               double abs_tol, double rel_tol) {
    p.validate();
    if (rho0.rows() != rho0.cols() || rho0.rows() < 2)
        throw std::invalid_argument("invalid-dimension: rho0 must be square, dim >= 2");
    if (t1 < t0) throw std::invalid_argument("t1 must be >= t0");
    const int dim = static_cast<int>(rho0.rows());
    RhsParts rhs(p, dim);

    // Dormand-Prince 5(4) with FSAL
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    CMat y = rho0;
    double t = t0;
    double span = t1 - t0;
    if (span == 0.0) return y;
    double h = span / 100.0;
    CMat k1 = rhs(t, y);
    bool fsal_valid = true;

    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        if (!fsal_valid) k1 = rhs(t, y);
        CMat k2 = rhs(t + h * a21, y + h * (a21 * k1));
        CMat k3 = rhs(t + h * 0.3, y + h * (a31 * k1 + a32 * k2));
        CMat k4 = rhs(t + h * 0.8, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        CMat k5 = rhs(t + h * (8.0 / 9),
                      y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        CMat k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        CMat y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        CMat k7 = rhs(t + h, y5);
        CMat err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double ratio = 0.0;
        for (int j = 0; j < err.cols(); ++j)
            for (int i = 0; i < err.rows(); ++i) {
                double scale = abs_tol + rel_tol * std::max(std::abs(y(i, j)), std::abs(y5(i, j)));
                ratio = std::max(ratio, std::abs(err(i, j)) / scale);
            }

        if (ratio <= 1.0) {
            t += h;
            y = std::move(y5);
            k1 = std::move(k7);
            fsal_valid = true;
        } else {
            fsal_valid = true;  // k1 is still the derivative at (t, y)
        }
        double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
        if (h < 1e-14 * span)
            throw SolverError("step-underflow: integration tolerance cannot be met");
    }
    y = 0.5 * (y + y.adjoint()).eval();
    return y;
}

HarmonicState harmonic_steady_state(const ModelParams& p, int cutoff, int harmonics) {
    p.validate();
    if (cutoff < 2) throw std::invalid_argument("invalid-dimension: cutoff must be >= 2");
    if (p.zeta != 0.0 && p.omega_mod <= 0.0)
        throw std::invalid_argument("invalid-rate: omega_mod must be > 0");
    if (harmonics < 0) throw std::invalid_argument("harmonics must be >= 0");

    const int d2 = cutoff * cutoff;
    CMat l0 = static_liouvillian(p, cutoff);
    CMat l1;
    if (p.zeta != 0.0) l1 = 0.5 * modulation_superop(p, cutoff);

    CVec trace_row = CVec::Zero(d2);
    for (int k = 0; k < cutoff; ++k) trace_row(k * cutoff + k) = 1.0;

    auto solve_with = [&](int m_max) -> std::vector<CMat> {
        const int blocks = 2 * m_max + 1;
        // forward block-Thomas sweep; G_m retained for back substitution
        std::vector<CMat> g(blocks);
        std::vector<CVec> yv(blocks);
        CMat c;  // running modified diagonal block
        CVec rhs_m;
        Eigen::PartialPivLU<CMat> lu;
        for (int b = 0; b < blocks; ++b) {
            int m = b - m_max;
            CMat a = l0;
            a.diagonal().array() -= cplx(0.0, m * p.omega_mod);
            CMat sub;  // coupling to block b-1
            if (b > 0) sub = l1;
            rhs_m = CVec::Zero(d2);
            if (m == 0) {
                a.row(0) = trace_row.transpose();
                if (sub.size()) sub.row(0).setZero();
                rhs_m(0) = 1.0;
            }
            CMat sup;  // coupling to block b+1
            if (b + 1 < blocks) {
                sup = l1;
                if (m == 0) sup.row(0).setZero();
            }
            if (b == 0) {
                c = a;
            } else {
                c = a - sub * g[b - 1];
                rhs_m -= sub * yv[b - 1];
            }
            lu.compute(c);
            if (b + 1 < blocks) g[b] = lu.solve(sup);
            yv[b] = lu.solve(rhs_m);
        }
        std::vector<CMat> comps(blocks);
        CVec x = yv[blocks - 1];
        comps[blocks - 1] = unvec(x);
        for (int b = blocks - 2; b >= 0; --b) {
            x = yv[b] - g[b] * x;
            comps[b] = unvec(x);
        }
        return comps;
    };

    HarmonicState h;
    h.omega_mod = p.omega_mod;
    h.cutoff = cutoff;

    int m_max;
    bool fixed = harmonics > 0;
    if (fixed) m_max = harmonics;
    else if (p.zeta == 0.0) m_max = 0;
    else m_max = static_cast<int>(std::ceil(3.0 * p.zeta / p.omega_mod)) + 8;

    for (;;) {
        if (static_cast<double>(2 * m_max + 1) * d2 * d2 * 16.0 > 2e9)
            throw SolverError("resource-limit: harmonic system exceeds the memory budget");
        auto comps = solve_with(m_max);
        double edge = std::max(comps.front().norm(), comps.back().norm());
        double ref = comps[m_max].norm();
        bool ok = m_max == 0 || edge <= 1e-8 * ref;
        if (ok || fixed || m_max >= 512) {
            h.components = std::move(comps);
            h.M = m_max;
            h.boundary_ok = ok;
            break;
        }
        m_max *= 2;
    }

    // enforce rho_{-m} = rho_m^+ and unit trace
    for (int m = 0; m <= h.M; ++m) {
        CMat& pos = h.components[h.M + m];
        CMat& neg = h.components[h.M - m];
        CMat sym = 0.5 * (pos + neg.adjoint());
        pos = sym;
        neg = sym.adjoint();
    }
    cplx tr = h.components[h.M].trace();
    if (std::abs(tr) < 1e-12)
        throw SolverError("solver-failure: harmonic steady state has vanishing trace");
    for (auto& cmat : h.components) cmat /= tr;
    return h;
}

HarmonicObservables time_averaged_observables(const HarmonicState& h, const ModelParams& p) {
    const CMat& rho = h.rho0();
    const int dim = h.cutoff;
    HarmonicObservables out;
    out.photon_number = expect(number(dim), rho).real();
    out.coherence_a = expect(destroy(dim), rho);
    if (p.drive != 0.0)
        out.s21 = s21_from_field(out.coherence_a, p.drive, p.kappa_ext);
    else
        out.s21 = cplx(std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN());
    out.cutoff_warning = top_two_population(rho) > 1e-6;
    return out;
}

FloquetMap floquet_map(const ModelParams& p, int cutoff, int min_steps, double tol) {
    p.validate();
    if (cutoff < 2) throw std::invalid_argument("invalid-dimension: cutoff must be >= 2");
    if (p.omega_mod <= 0.0)
        throw std::invalid_argument("invalid-rate: omega_mod must be > 0 for a Floquet map");
    if (min_steps < 2) min_steps = 2;

    const double period = two_pi / p.omega_mod;
    CMat l_static = static_liouvillian(p, cutoff);
    CMat l_mod;
    if (p.zeta != 0.0) l_mod = modulation_superop(p, cutoff);

    // the modulation commutator is diagonal in the doubled basis, so a
    // symmetric split needs only one constant exponential: adjacent half
    // factors merge and each step costs a phase scaling plus one product
    auto build = [&](int n) -> CMat {
        double dt = period / n;
        if (!l_mod.size()) return CMat((l_static * period).exp());
        CMat ehalf = (l_static * (0.5 * dt)).exp();
        CMat efull = ehalf * ehalf;
        CVec dmod = l_mod.diagonal();
        CMat m = ehalf;
        for (int k = 0; k < n; ++k) {
            double c = std::cos(p.omega_mod * (k + 0.5) * dt);
            m = (c * dt * dmod).array().exp().matrix().asDiagonal() * m;
            m = (k + 1 < n) ? CMat(efull * m) : CMat(ehalf * m);
        }
        return m;
    };

    int n = min_steps;
    if (n % 2) ++n;
    CMat prev = build(n);
    FloquetMap f;
    f.period = period;
    f.cutoff = cutoff;
    for (;;) {
        int n2 = 2 * n;
        CMat next = build(n2);
        double defect = (next - prev).cwiseAbs().maxCoeff();
        if (defect < tol) {
            f.map = std::move(next);
            f.steps_used = n2;
            f.defect = defect;
            return f;
        }
        prev = std::move(next);
        n = n2;
        if (n > (1 << 20))
            throw SolverError("step-underflow: Floquet map did not converge in step doubling");
    }
}

FloquetSpectrum floquet_liouvillian(const FloquetMap& f) {
    const int d2 = static_cast<int>(f.map.rows());
    FloquetSpectrum s;
    s.period = f.period;
    s.multipliers.resize(d2);
    s.right_vectors.resize(d2, d2);

    CMat work = f.map;
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', d2, work.data(), d2,
                                    s.multipliers.data(), nullptr, 1,
                                    s.right_vectors.data(), d2);
    if (info != 0)
        throw SolverError("solver-failure: eigenvalue decomposition of the Floquet map failed");

    for (int j = 0; j < d2; ++j) {
        double nrm = s.right_vectors.col(j).norm();
        if (nrm > 0) s.right_vectors.col(j) /= nrm;
    }

    Eigen::PartialPivLU<CMat> lu(s.right_vectors);
    s.left_dual = lu.inverse();
    double cond = s.right_vectors.norm() * s.left_dual.norm();
    s.pair_residual = (s.left_dual * s.right_vectors - CMat::Identity(d2, d2))
                          .cwiseAbs()
                          .maxCoeff();
    if (!std::isfinite(cond) || cond > 1e12 || !std::isfinite(s.pair_residual))
        throw SolverError("unreliable-eigenbasis: Floquet eigenvectors are numerically defective");

    s.eigenvalues.resize(d2);
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d2; ++j) {
        cplx mu = s.multipliers(j);
        s.eigenvalues(j) = mu == cplx(0.0, 0.0)
                               ? cplx(-std::numeric_limits<double>::infinity(), 0.0)
                               : std::log(mu) / f.period;
        double dist = std::abs(mu - 1.0);
        if (dist < best_dist) {
            best_dist = dist;
            best = j;
        }
    }
    if (best < 0 || best_dist > 1e-6)
        throw SolverError("no-steady-state: no Floquet multiplier lies within 1e-6 of unity");
    s.steady_index = best;

    CMat rho = unvec(s.right_vectors.col(best));
    rho = 0.5 * (rho + rho.adjoint()).eval();
    cplx tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw SolverError("no-steady-state: Floquet fixed point is traceless");
    s.rho_ss = rho / tr;
    return s;
}

CMat period_average(const ModelParams& p, const CMat& rho0, double t0, int samples) {
    if (samples < 2) throw std::invalid_argument("samples must be >= 2");
    if (p.omega_mod <= 0.0)
        throw std::invalid_argument("invalid-rate: omega_mod must be > 0");
    const double period = two_pi / p.omega_mod;
    double dt = period / samples;
    CMat rho = rho0;
    CMat acc = 0.5 * rho;
    for (int k = 1; k <= samples; ++k) {
        rho = propagate(p, rho, t0 + (k - 1) * dt, t0 + k * dt);
        acc += (k == samples ? 0.5 : 1.0) * rho;
    }
    return acc / static_cast<double>(samples);
}

} // namespace lzsm

#pragma once

#include <vector>

#include "lzsm/fock.hpp"
#include "lzsm/lindblad.hpp"

namespace lzsm {

// Adaptive RK45 (Dormand-Prince) integration of the master equation from t0
// to t1. The density matrix is evolved in matrix form; the result is
// symmetrized at the end point only. Throws SolverError when the step size
// underflows (stiffness beyond the tolerance budget).
CMat propagate(const ModelParams& p, const CMat& rho0, double t0, double t1,
               double abs_tol = 1e-10, double rel_tol = 1e-8);

// Fourier ansatz rho(t) = sum_m rho_m exp(i m omega_mod t), |m| <= M, for the
// time-periodic steady state. rho_0 is the period-averaged state.
struct HarmonicState {
    std::vector<CMat> components;  // index k holds m = k - M
    int M = 0;
    double omega_mod = 0.0;
    int cutoff = 0;
    bool boundary_ok = true;       // edge harmonics negligible at the used M

    const CMat& component(int m) const { return components.at(static_cast<size_t>(m + M)); }
    const CMat& rho0() const { return component(0); }
};

// Harmonic-balance steady state: block-tridiagonal system
//   L1 rho_{m-1} + (L0 - i m omega_mod) rho_m + L1 rho_{m+1} = 0,
//   L1 = -(i/2) zeta [n, .],
// closed with Tr rho_0 = 1 and solved by a block Thomas sweep. harmonics = 0
// picks M = ceil(3 zeta/omega_mod) + 8 and doubles it until the edge
// harmonics fall below 1e-8 of rho_0 in Frobenius norm.
HarmonicState harmonic_steady_state(const ModelParams& p, int cutoff, int harmonics = 0);

struct HarmonicObservables {
    double photon_number = 0.0;
    cplx coherence_a{0.0, 0.0};
    cplx s21{0.0, 0.0};            // NaN when p.drive == 0
    bool cutoff_warning = false;
};

// Period-averaged observables, all read from rho_0 (the DC Fourier component,
// which is what a narrowband measurement at the drive tone sees).
HarmonicObservables time_averaged_observables(const HarmonicState& h, const ModelParams& p);

// One-period propagator of the vectorized master equation, built as the
// time-ordered product of midpoint exponentials exp(L(t_k + dt/2) dt)
// (second-order Magnus). The step count starts at min_steps and doubles until
// the map changes by less than tol (max-abs entry).
struct FloquetMap {
    CMat map;            // dim^2 x dim^2
    double period = 0.0;
    int steps_used = 0;
    double defect = 0.0; // map change at the accepted doubling
    int cutoff = 0;
};

FloquetMap floquet_map(const ModelParams& p, int cutoff, int min_steps = 64,
                       double tol = 1e-7);

// Spectral data of the Floquet map / Floquet Liouvillian.
//   multipliers mu_j, eigenvalues lambda_j = log(mu_j)/T on the principal
//   branch (Im lambda in (-Omega/2, Omega/2]), right eigenvectors as unit
//   columns of V, left duals as rows of W = V^{-1} so Tr(sigma_j^+ eta_l) = delta_jl.
struct FloquetSpectrum {
    CVec multipliers;
    CVec eigenvalues;
    CMat right_vectors;   // V
    CMat left_dual;       // W = V^{-1}
    CMat rho_ss;          // Hermitized, trace-normalized fixed point
    int steady_index = -1;
    double period = 0.0;
    double pair_residual = 0.0;  // max |W V - I|
};

// Throws SolverError when no multiplier lies within 1e-6 of 1 or when the
// eigenvector basis is numerically defective (condition > 1e12).
FloquetSpectrum floquet_liouvillian(const FloquetMap& f);

// Average of rho(t) over one period starting from rho0 at t0 (trapezoid on
// the periodic samples; used to compare the map fixed point against the
// harmonic rho_0).
CMat period_average(const ModelParams& p, const CMat& rho0, double t0, int samples = 64);

} // namespace lzsm

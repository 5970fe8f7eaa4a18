#pragma once

#include "lzsm/lindblad.hpp"

namespace lzsm {

// Bessel function of the first kind, integer order. Implemented with the
// backward (Miller) recurrence normalized by the Jacobi-Anger sum, plus a
// power series for small arguments; no special-function library involved.
// Valid for |m| <= 200, |x| <= 1e4, absolute accuracy ~1e-12.
double bessel_j(int m, double x);

// Sideband index closest to resonance: nearest integer to delta/omega_mod,
// ties rounded toward zero.
int select_mbar(double delta, double omega_mod);

// Single-sideband effective model of the modulated linear resonator:
// detuning delta - m_bar*omega_mod and renormalized drive F * J_mbar(zeta/omega_mod).
// drive_eff keeps the sign of the Bessel factor.
struct EffectiveMode {
    int m_bar = 0;
    double delta_eff = 0.0;
    double drive_eff = 0.0;
};

EffectiveMode effective_mode(const ModelParams& p);

// Steady photon number of the effective mode:
//   <n> = (4 F_eff^2 / kappa) (kappa + beta kappa_phi) / (4 delta_eff^2 + (kappa + beta kappa_phi)^2)
// beta = 1 in the linear-resonator regime; beta = 4 in the weakly driven
// qubit limit (conventional qubit dephasing jump sigma_z at rate kappa_phi,
// which equals the number-operator jump at rate 4 kappa_phi on two levels).
double analytic_photon_number(const EffectiveMode& mode, double kappa,
                              double kappa_phi, int beta);

// Full Lindblad steady state of the effective single-sideband model (the
// original nonlinearities kept, modulation replaced by the mode's detuning
// and drive). The solve uses |drive_eff|; a sign flip of F only flips the
// phase of <a> and cancels in S21.
SteadyResult effective_steady(const EffectiveMode& mode, const ModelParams& p, int cutoff);

// Two-level reductions of the n-photon resonance |0> <-> |n>.
enum class MultiphotonRegime { strong, weak };

struct MultiphotonMode {
    int n = 2;
    int m_bar = 0;
    MultiphotonRegime regime = MultiphotonRegime::strong;
    double delta_eff = 0.0;  // detuning from the n-photon resonance condition
    double g_eff = 0.0;      // effective n-photon coupling
};

// Strong modulation (Omega comparable to |chi|): sideband detuning
// delta - m_bar*Omega, coupling (F^n/chi^{n-1}) J_mbar(zeta/Omega)^n.
// Weak modulation (Omega << |chi|): sideband detuning delta - m_bar*Omega/n,
// coupling (F^n/chi^{n-1}) J_mbar(n zeta/Omega). For n = 2 both couplings are
// exact; for n >= 3 only the proportionality is, and `prefactor` scales it.
MultiphotonMode multiphoton_mode(const ModelParams& p, int n, int m_bar,
                                 MultiphotonRegime regime, double prefactor = 1.0);

// Steady excited population of the |0> <-> |n> two-level problem with
// H = e_n |n><n| + g(|0><n| + |n><0|), decay n*kappa out of |n>, and
// dephasing n^2*kappa_phi (the a and n matrix elements of the manifold).
// Closed form of the optical Bloch equations.
double two_level_steady(double g, double e_n, double kappa, double kappa_phi, int n);

} // namespace lzsm

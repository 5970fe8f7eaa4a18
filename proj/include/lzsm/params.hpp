#pragma once

#include <stdexcept>
#include <string>

namespace lzsm {

// Unit policy: every frequency and rate below is angular, in rad/us, and time
// is in us. Configuration files and presets quote ordinary frequencies in MHz
// (GHz for carrier frequencies); multiply by 2*pi when ingesting and divide
// when reporting. hbar = 1 everywhere except the input-power conversion.
inline constexpr double two_pi = 6.283185307179586476925286766559;

inline double from_mhz(double f_mhz) { return two_pi * f_mhz; }
inline double to_mhz(double w) { return w / two_pi; }

// Thrown when a linear solve or an eigensolver cannot deliver a trustworthy
// answer (singular steady-state system, non-converged step doubling, ...).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when inputs are outside the domain of a formula (out-of-validity
// expansions, undefined transmission at F = 0, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Driven, periodically modulated Kerr resonator with single-photon decay and
// pure dephasing:
//
//   H(t) = -delta*n + chi*ad*ad*a*a + chi5*ad^3*a^3 + drive*(a + ad)
//          + zeta*cos(omega_mod*t)*n
//   d rho/dt = -i[H, rho] + kappa*D[a]rho + kappa_phi*D[n]rho
//
// delta = omega_d - omega_wp is the detuning of the drive from the bare
// (working point) resonator frequency.
struct ModelParams {
    double delta = 0.0;      // drive detuning
    double chi = 0.0;        // Kerr coefficient (negative for these devices)
    double chi5 = 0.0;       // next-order correction, ad^3 a^3 term
    double drive = 0.0;      // drive amplitude F >= 0
    double zeta = 0.0;       // frequency-modulation amplitude
    double omega_mod = 0.0;  // modulation frequency Omega (> 0 when zeta != 0)
    double kappa_ext = 0.0;  // decay into the readout line
    double kappa_int = 0.0;  // internal decay
    double kappa_phi = 0.0;  // pure dephasing rate
    double omega_d = 0.0;    // absolute drive frequency (for power conversion)

    double kappa() const { return kappa_ext + kappa_int; }

    // Throws std::invalid_argument on nonphysical values (negative rates,
    // zeta without omega_mod, negative drive).
    void validate() const;
};

// Measured device presets. Rates are total at the stated working points;
// chi5 defaults to 0 and can be switched on for the strongly nonlinear
// device where it matters at high photon number.
ModelParams kerr10();      // chi/2pi = -23.5 MHz transmon-style device
ModelParams duffing32();   // chi/2pi = -0.35 MHz weakly nonlinear device

ModelParams kerr10_with_chi5();

} // namespace lzsm

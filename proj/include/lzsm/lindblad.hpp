#pragma once

#include <vector>

#include "lzsm/fock.hpp"

namespace lzsm {

struct SteadyResult {
    CMat rho;
    double photon_number = 0.0;
    cplx coherence_a{0.0, 0.0};
    int cutoff_used = 0;
    bool cutoff_warning = false;    // top two Fock levels carry > 1e-6 population
    bool svd_fallback = false;      // direct solve was ill conditioned
    bool converged = true;          // adaptive cutoff loop hit its ceiling
};

// Time-independent steady state (requires p.zeta == 0; modulated problems
// belong to the floquet module). The vectorized generator is solved with one
// row replaced by the trace functional; if that system is ill conditioned the
// null space is recovered from an SVD instead.
SteadyResult steady_state(const ModelParams& p, int cutoff);

// Same, with the cutoff chosen automatically: start at
// max(8, ceil(6 * n_semiclassical) + 4) and grow by 50% until the photon
// number is stable to 1e-6 relative. max_cutoff caps the growth.
SteadyResult steady_state_auto(const ModelParams& p, int max_cutoff = 120);

// Transmission of a notch-coupled resonator from the intracavity field:
// S21 = 1 - i kappa_ext <a> / (2 F). F must be nonzero.
cplx s21_from_field(cplx alpha, double drive, double kappa_ext);

// Closed-form linear-response notch transmission with asymmetry angle phi:
// S21 = 1 - [kappa_ext / (kappa_ext + kappa_int + 2 i delta)] e^{i phi}/cos(phi).
// Note: the field route above carries the opposite rotating-frame phase
// convention, so it reproduces the complex conjugate of this expression;
// |S21| agrees either way.
cplx s21_notch_linear(double delta, double kappa_ext, double kappa_int, double phi = 0.0);

// Drive amplitude from applied power: F = sqrt(P_in kappa_ext / (hbar omega_d)),
// P_in[W] = 10^((dBm - 30)/10). kappa_ext and omega_d in rad/us, F in rad/us.
double drive_from_power(double power_dbm, double kappa_ext, double omega_d);

// Real nonnegative roots of the semiclassical photon-number condition
//   [kappa^2/4 + (delta + n chi)^2] n = F^2
// in ascending order (one or three generically; three marks bistability).
std::vector<double> semiclassical_photon_roots(const ModelParams& p);

// Validity bound of the two-level (qubit) reduction: second-excited-state
// population <2|rho|2> ~= 2F^4 / (9F^4 + 2 kappa^2 [2(kappa^2 + chi^2) - 5F^2]).
// Throws DomainError when the denominator is not positive.
double qubit_validity_p2(double drive, double kappa, double chi);

// Validity bound of the linear approximation: maximal relative photon-number
// deviation |dn| = |3 sqrt(3) F^2 chi / kappa^3| (worst case over detuning).
double linear_validity_dn(double drive, double kappa, double chi);

struct PowerSweep {
    std::vector<double> powers_dbm;
    std::vector<double> deltas;      // rad/us
    Eigen::MatrixXd n_avg;           // rows: power, cols: delta
    Eigen::MatrixXcd s21;
    Eigen::MatrixXi cutoff_used;
};

// Static spectroscopy map: steady state on a power x detuning grid with the
// adaptive cutoff. Drive amplitudes come from drive_from_power at p.omega_d + delta.
PowerSweep power_sweep(const ModelParams& p, const std::vector<double>& powers_dbm,
                       const std::vector<double>& deltas);

} // namespace lzsm

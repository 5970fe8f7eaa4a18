#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "lzsm/params.hpp"

namespace lzsm {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Truncated ladder operators on the Fock basis {|0>, ..., |dim-1>}.
// dim must be >= 2; throws std::invalid_argument otherwise.
CMat destroy(int dim);
CMat create(int dim);
CMat number(int dim);
CMat identity(int dim);

// H(t) in the frame rotating at the drive frequency, as a dense dim x dim
// matrix. t only matters when p.zeta != 0.
CMat hamiltonian(const ModelParams& p, int dim, double t = 0.0);

// Column-stacking vectorization. vec stacks columns, so with column-major
// storage it is a reshape; the defining identity is
//   vec(A rho B) = kron(B^T, A) vec(rho).
CVec vec(const CMat& m);
CMat unvec(const CVec& v);

CMat kron(const CMat& a, const CMat& b);
CMat spre(const CMat& a);                 // kron(I, A):    rho -> A rho
CMat spost(const CMat& b);                // kron(B^T, I):  rho -> rho B
CMat commutator_super(const CMat& a);     // rho -> [A, rho]

// Lindblad generator for Hermitian h and jump operators with nonnegative
// rates: L rho = -i[h, rho] + sum_k rate_k (L rho L+ - {L+L, rho}/2),
// returned as a dense dim^2 x dim^2 matrix acting on vec(rho).
CMat liouvillian(const CMat& h, const std::vector<std::pair<CMat, double>>& jumps);

// Jump set of the model: {(a, kappa), (n, kappa_phi)}; zero-rate entries are
// dropped.
std::vector<std::pair<CMat, double>> jump_set(const ModelParams& p, int dim);

// Generator split for the modulated problem: L(t) = L0 + cos(omega_mod t) * Lmod.
CMat static_liouvillian(const ModelParams& p, int dim);   // zeta term excluded
CMat modulation_superop(const ModelParams& p, int dim);   // -i*zeta*[n, .]

double purity(const CMat& rho);                    // Tr rho^2 for Hermitian rho
cplx expect(const CMat& op, const CMat& rho);      // Tr(op rho)
double top_two_population(const CMat& rho);        // occupation of the two highest levels

// Checks used by tests and by consumers that must refuse garbage states:
// Hermiticity, unit trace, spectrum >= -tol.
bool is_valid_density(const CMat& rho, double herm_tol = 1e-10,
                      double trace_tol = 1e-9, double eig_tol = 1e-9);

struct WignerGrid {
    double re_min = -3.0, re_max = 3.0;
    double im_min = -3.0, im_max = 3.0;
    int n_re = 41, n_im = 41;
};

struct WignerMap {
    WignerGrid grid;
    Eigen::MatrixXd w;            // n_im rows x n_re cols, W(alpha)
    bool cutoff_warning = false;  // grid extent too large for the cutoff
};

// Wigner function through the displaced-parity identity
//   W(alpha) = (2/pi) Tr[D(2 alpha) P rho],  P = exp(i pi n).
WignerMap wigner(const CMat& rho, const WignerGrid& grid);

} // namespace lzsm

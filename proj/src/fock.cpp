#include "lzsm/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace lzsm {

namespace {

void check_dim(int dim) {
    if (dim < 2) throw std::invalid_argument("invalid-dimension: cutoff must be >= 2");
}

// Diagonal of H(t) (everything except the drive term).
Eigen::VectorXd diagonal_energies(const ModelParams& p, int dim, double t) {
    Eigen::VectorXd e(dim);
    double mod = (p.zeta != 0.0) ? p.zeta * std::cos(p.omega_mod * t) : 0.0;
    for (int n = 0; n < dim; ++n) {
        double nn = n;
        e(n) = -p.delta * nn + p.chi * nn * (nn - 1.0)
             + p.chi5 * nn * (nn - 1.0) * (nn - 2.0) + mod * nn;
    }
    return e;
}

} // namespace

CMat destroy(int dim) {
    check_dim(dim);
    CMat a = CMat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

CMat create(int dim) { return destroy(dim).adjoint(); }

CMat number(int dim) {
    check_dim(dim);
    CMat n = CMat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

CMat identity(int dim) {
    check_dim(dim);
    return CMat::Identity(dim, dim);
}

CMat hamiltonian(const ModelParams& p, int dim, double t) {
    check_dim(dim);
    p.validate();
    CMat h = diagonal_energies(p, dim, t).cast<cplx>().asDiagonal();
    if (p.drive != 0.0) {
        for (int n = 1; n < dim; ++n) {
            double el = p.drive * std::sqrt(double(n));
            h(n - 1, n) += el;
            h(n, n - 1) += el;
        }
    }
    return h;
}

CVec vec(const CMat& m) {
    return Eigen::Map<const CVec>(m.data(), m.size());
}

CMat unvec(const CVec& v) {
    int d = static_cast<int>(std::lround(std::sqrt(double(v.size()))));
    if (static_cast<long>(d) * d != v.size())
        throw std::invalid_argument("invalid-dimension: vector length is not a perfect square");
    return Eigen::Map<const CMat>(v.data(), d, d);
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat spre(const CMat& a) { return kron(CMat::Identity(a.rows(), a.cols()), a); }

CMat spost(const CMat& b) { return kron(b.transpose(), CMat::Identity(b.rows(), b.cols())); }

CMat commutator_super(const CMat& a) { return spre(a) - spost(a); }

CMat liouvillian(const CMat& h, const std::vector<std::pair<CMat, double>>& jumps) {
    if (h.rows() != h.cols() || h.rows() < 2)
        throw std::invalid_argument("invalid-dimension: Hamiltonian must be square, dim >= 2");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + h.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("invalid-rate: Hamiltonian must be Hermitian");
    const cplx mi(0.0, -1.0);
    CMat l = mi * commutator_super(h);
    for (const auto& [op, rate] : jumps) {
        if (rate < 0.0) throw std::invalid_argument("invalid-rate: jump rates must be >= 0");
        if (rate == 0.0) continue;
        if (op.rows() != h.rows() || op.cols() != h.cols())
            throw std::invalid_argument("invalid-dimension: jump operator dimension mismatch");
        CMat ldl = op.adjoint() * op;
        l += rate * (kron(op.conjugate(), op) - 0.5 * spre(ldl) - 0.5 * spost(ldl));
    }
    return l;
}

std::vector<std::pair<CMat, double>> jump_set(const ModelParams& p, int dim) {
    p.validate();
    std::vector<std::pair<CMat, double>> jumps;
    if (p.kappa() > 0.0) jumps.emplace_back(destroy(dim), p.kappa());
    if (p.kappa_phi > 0.0) jumps.emplace_back(number(dim), p.kappa_phi);
    return jumps;
}

CMat static_liouvillian(const ModelParams& p, int dim) {
    ModelParams q = p;
    q.zeta = 0.0;
    q.omega_mod = 0.0;
    return liouvillian(hamiltonian(q, dim), jump_set(p, dim));
}

CMat modulation_superop(const ModelParams& p, int dim) {
    check_dim(dim);
    return cplx(0.0, -1.0) * p.zeta * commutator_super(number(dim));
}

double purity(const CMat& rho) { return rho.squaredNorm(); }

cplx expect(const CMat& op, const CMat& rho) { return (op * rho).trace(); }

double top_two_population(const CMat& rho) {
    int d = static_cast<int>(rho.rows());
    if (d < 2) return 0.0;
    return std::abs(rho(d - 1, d - 1)) + std::abs(rho(d - 2, d - 2));
}

bool is_valid_density(const CMat& rho, double herm_tol, double trace_tol, double eig_tol) {
    if (rho.rows() != rho.cols()) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol) return false;
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > trace_tol) return false;
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > -eig_tol;
}

WignerMap wigner(const CMat& rho, const WignerGrid& grid) {
    if (grid.n_re < 2 || grid.n_im < 2)
        throw std::invalid_argument("invalid-dimension: Wigner grid needs >= 2 points per axis");
    int dim = static_cast<int>(rho.rows());
    CMat a = destroy(dim);
    CMat ad = create(dim);
    Eigen::VectorXcd parity(dim);
    for (int n = 0; n < dim; ++n) parity(n) = (n % 2 == 0) ? 1.0 : -1.0;

    WignerMap out;
    out.grid = grid;
    out.w.resize(grid.n_im, grid.n_re);

    double corner = std::max({std::hypot(grid.re_min, grid.im_min),
                              std::hypot(grid.re_min, grid.im_max),
                              std::hypot(grid.re_max, grid.im_min),
                              std::hypot(grid.re_max, grid.im_max)});
    // displaced parity probes the state at 2*alpha; mean occupation 4|alpha|^2
    // must fit under the cutoff with a few-sigma margin
    double nprobe = 4.0 * corner * corner;
    out.cutoff_warning = nprobe + 3.0 * std::sqrt(nprobe + 1.0) > double(dim - 1);

    for (int iy = 0; iy < grid.n_im; ++iy) {
        double y = grid.n_im > 1 ? grid.im_min + (grid.im_max - grid.im_min) * iy / (grid.n_im - 1)
                                 : grid.im_min;
        for (int ix = 0; ix < grid.n_re; ++ix) {
            double x = grid.n_re > 1 ? grid.re_min + (grid.re_max - grid.re_min) * ix / (grid.n_re - 1)
                                     : grid.re_min;
            cplx beta = 2.0 * cplx(x, y);
            CMat gen = beta * ad - std::conj(beta) * a;
            CMat d2a = gen.exp();
            // W = (2/pi) Tr[D(2a) P rho]
            cplx val = (d2a * (parity.asDiagonal() * rho)).trace();
            out.w(iy, ix) = (2.0 / M_PI) * val.real();
        }
    }
    return out;
}

} // namespace lzsm

#include "lzsm/chaos.hpp"

#include "lzsm/lapack.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lzsm {

namespace {

// convex hull (Andrew monotone chain), strict turns so collinear boundary
// points are dropped; collinear input collapses to its two extremes
std::vector<Eigen::Vector2d> convex_hull(const std::vector<cplx>& pts) {
    std::vector<Eigen::Vector2d> p(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) p[i] = {pts[i].real(), pts[i].imag()};
    std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    p.erase(std::unique(p.begin(), p.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            p.end());
    size_t n = p.size();
    if (n <= 2) return p;
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                    const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k - 1);
    return hull;
}

double point_segment_distance(const Eigen::Vector2d& q, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
    Eigen::Vector2d ab = b - a;
    double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (q - a).norm();
    double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
    return (q - (a + t * ab)).norm();
}

} // namespace

std::vector<double> nn_spacings(const std::vector<cplx>& values) {
    size_t n = values.size();
    if (n < 2) throw DomainError("insufficient-data: nearest-neighbour spacing needs >= 2 points");
    std::vector<double> s(n);
    for (size_t j = 0; j < n; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            best = std::min(best, std::abs(values[i] - values[j]));
        }
        s[j] = best;
    }
    return s;
}

UnfoldResult unfold(const std::vector<cplx>& values, int k_local) {
    const int n = static_cast<int>(values.size());
    if (k_local < 5) throw std::invalid_argument("k_local must be >= 5");
    if (n <= 2 * k_local)
        throw DomainError("insufficient-data: unfolding needs more than 2*k_local eigenvalues");

    UnfoldResult out;
    out.k_local = k_local;
    out.raw = nn_spacings(values);
    out.unfolded.resize(n);
    out.edge.assign(n, 0);

    auto hull = convex_hull(values);
    bool collinear = hull.size() <= 2;

    std::vector<std::pair<double, int>> dist(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i)
            dist[i] = {std::abs(values[i] - values[j]), i};
        // the point itself sits at distance 0 and is part of its neighbourhood
        std::partial_sort(dist.begin(), dist.begin() + k_local, dist.end());
        double local_mean = 0.0;
        for (int i = 0; i < k_local; ++i) local_mean += out.raw[dist[i].second];
        local_mean /= k_local;
        out.unfolded[j] = local_mean > 0.0 ? out.raw[j] / local_mean : 0.0;

        double radius = dist[k_local - 1].first;
        Eigen::Vector2d q{values[j].real(), values[j].imag()};
        double to_boundary = std::numeric_limits<double>::infinity();
        if (collinear) {
            for (const auto& h : hull) to_boundary = std::min(to_boundary, (q - h).norm());
        } else {
            for (size_t e = 0; e < hull.size(); ++e)
                to_boundary = std::min(
                    to_boundary,
                    point_segment_distance(q, hull[e], hull[(e + 1) % hull.size()]));
        }
        if (to_boundary <= radius) out.edge[j] = 1;
    }

    double mean = 0.0;
    long count = 0;
    for (int j = 0; j < n; ++j)
        if (!out.edge[j]) {
            mean += out.unfolded[j];
            ++count;
        }
    if (count == 0) {  // everything on the boundary: rescale over all instead
        mean = std::accumulate(out.unfolded.begin(), out.unfolded.end(), 0.0);
        count = n;
    }
    mean /= count;
    if (mean > 0.0)
        for (double& u : out.unfolded) u /= mean;
    return out;
}

double poisson2d_pdf(double s) {
    if (s < 0.0) throw DomainError("out-of-range: spacing must be >= 0");
    return 0.5 * M_PI * s * std::exp(-0.25 * M_PI * s * s);
}

double poisson2d_cdf(double s) {
    if (s < 0.0) throw DomainError("out-of-range: spacing must be >= 0");
    return 1.0 - std::exp(-0.25 * M_PI * s * s);
}

double GinibrePdf::raw_pdf(double s) const {
    if (s <= 0.0) return 0.0;
    double x = s * s;
    double ex = std::exp(-x);
    double term = 1.0;   // x^k / k!
    double partial = 1.0;
    double prod = 1.0;
    double sum = 0.0;
    for (int k = 1;; ++k) {
        term *= x / k;
        partial += term;
        double q = ex * partial;  // regularized upper incomplete gamma Q(k+1, x)
        prod *= q;
        sum += 2.0 * s * term * ex / q;
        if (k >= 100 && q > 1.0 - 1e-12) break;
        if (prod == 0.0) return 0.0;   // deep tail underflow
    }
    return prod * sum;
}

GinibrePdf::GinibrePdf() {
    const double hi = 8.0;
    const int steps = static_cast<int>(hi / cdf_step_);
    cdf_grid_.resize(steps + 1);
    double integral = 0.0, first_moment = 0.0;
    double prev = raw_pdf(0.0);
    cdf_grid_[0] = 0.0;
    for (int i = 1; i <= steps; ++i) {
        double x = i * cdf_step_;
        double cur = raw_pdf(x);
        integral += 0.5 * (prev + cur) * cdf_step_;
        first_moment += 0.5 * ((x - cdf_step_) * prev + x * cur) * cdf_step_;
        cdf_grid_[i] = integral;
        prev = cur;
    }
    norm_ = integral;
    mean_ = first_moment / integral;
    for (double& c : cdf_grid_) c /= norm_;
}

double GinibrePdf::pdf(double s) const {
    if (s < 0.0) throw DomainError("out-of-range: spacing must be >= 0");
    return mean_ * raw_pdf(mean_ * s) / norm_;
}

double GinibrePdf::cdf(double s) const {
    if (s < 0.0) throw DomainError("out-of-range: spacing must be >= 0");
    double x = mean_ * s;
    double pos = x / cdf_step_;
    if (pos >= static_cast<double>(cdf_grid_.size() - 1)) return 1.0;
    int i = static_cast<int>(pos);
    double frac = pos - i;
    return cdf_grid_[i] * (1.0 - frac) + cdf_grid_[i + 1] * frac;
}

const GinibrePdf& ginibre_law() {
    static const GinibrePdf law;
    return law;
}

double ginibre_pdf(double s) { return ginibre_law().pdf(s); }

CsrStats complex_spacing_ratio(const std::vector<cplx>& values) {
    const int n = static_cast<int>(values.size());
    if (n < 3) throw DomainError("insufficient-data: spacing ratios need >= 3 points");
    CsrStats out;
    out.z.reserve(n);
    double r_sum = 0.0, c_sum = 0.0;
    for (int j = 0; j < n; ++j) {
        int nn = -1, nnn = -1;
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            double d = std::abs(values[i] - values[j]);
            if (d < d1) {
                d2 = d1; nnn = nn;
                d1 = d; nn = i;
            } else if (d < d2) {
                d2 = d; nnn = i;
            }
        }
        if (d2 == 0.0) {  // duplicate eigenvalues: ratio undefined
            ++out.degenerate;
            continue;
        }
        cplx z = (values[nn] - values[j]) / (values[nnn] - values[j]);
        out.z.push_back(z);
        out.index.push_back(j);
        r_sum += std::abs(z);
        c_sum += std::cos(std::arg(z));
    }
    if (!out.z.empty()) {
        out.r_mean = r_sum / out.z.size();
        out.cos_theta_mean = c_sum / out.z.size();
    }
    return out;
}

std::vector<cplx> ginibre_sample(int n, std::uint64_t seed) {
    if (n < 8) throw std::invalid_argument("invalid-dimension: Ginibre sample needs n >= 8");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / n));
    CMat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = cplx(gauss(rng), gauss(rng));
    CVec w(n);
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, m.data(), n,
                                    w.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw SolverError("solver-failure: random-matrix eigenvalue decomposition failed");
    return {w.data(), w.data() + n};
}

std::vector<cplx> uniform_sample(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("invalid-dimension: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<cplx> pts(n);
    for (auto& z : pts) {
        double re = uni(rng);
        double im = uni(rng);
        z = cplx(re, im);
    }
    return pts;
}

SsqtResult ssqt(const FloquetSpectrum& fs, const SsqtOptions& opt) {
    if (fs.pair_residual > 1e-6)
        throw SolverError("unreliable-basis: left/right eigenvector pairing residual too large");
    const int d2 = static_cast<int>(fs.multipliers.size());
    const int dim = static_cast<int>(fs.rho_ss.rows());

    Eigen::SelfAdjointEigenSolver<CMat> es(fs.rho_ss);
    if (es.info() != Eigen::Success)
        throw SolverError("solver-failure: steady-state diagonalization failed");

    std::vector<int> kept;
    for (int k = dim - 1; k >= 0; --k)
        if (es.eigenvalues()(k) >= opt.p_min) kept.push_back(k);
    if (kept.empty())
        throw DomainError("empty-decomposition: no eigenstate reaches the weight floor");

    std::vector<cplx> evals(fs.eigenvalues.data(), fs.eigenvalues.data() + d2);

    // overlap coefficients per retained eigenstate
    std::vector<CVec> coeffs(kept.size());
    double abs_sum = 0.0;
    long abs_count = 0;
    long outliers = 0;
    for (size_t idx = 0; idx < kept.size(); ++idx) {
        const auto& psi = es.eigenvectors().col(kept[idx]);
        CMat proj = psi * psi.adjoint();
        coeffs[idx] = fs.left_dual * vec(proj);
        for (int j = 0; j < d2; ++j) {
            double a = std::abs(coeffs[idx](j));
            if (a > 1.0) {
                ++outliers;
            } else {
                abs_sum += a;
                ++abs_count;
            }
        }
    }

    SsqtResult out;
    out.excluded_outliers = outliers;
    out.c_min = opt.c_min_fixed > 0.0
                    ? opt.c_min_fixed
                    : (abs_count > 0 ? abs_sum / abs_count / 1000.0 : 0.0);

    for (size_t idx = 0; idx < kept.size(); ++idx) {
        SsqtState st;
        st.p = es.eigenvalues()(kept[idx]);
        std::vector<cplx> selected;
        for (int j = 0; j < d2; ++j)
            if (std::abs(coeffs[idx](j)) > out.c_min) selected.push_back(evals[j]);
        st.selected = static_cast<int>(selected.size());
        if (st.selected >= opt.min_selected) {
            CsrStats cs = complex_spacing_ratio(selected);
            st.r_mean = cs.r_mean;
            st.cos_theta_mean = cs.cos_theta_mean;
        }
        out.weighted_cos_theta += st.p * st.cos_theta_mean;
        out.weighted_r += st.p * st.r_mean;
        out.retained_weight += st.p;
        out.states.push_back(st);
    }
    return out;
}

HistogramResult histogram_and_distance(const std::vector<double>& unfolded, int bins) {
    if (unfolded.size() < 100)
        throw DomainError("insufficient-data: spacing histogram needs >= 100 samples");
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");

    HistogramResult out;
    double hi = *std::max_element(unfolded.begin(), unfolded.end());
    if (!(hi > 0.0)) hi = 1.0;
    hi *= 1.0 + 1e-9;
    out.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) out.edges[b] = hi * b / bins;
    out.density.assign(bins, 0.0);
    for (double s : unfolded) {
        int b = std::min(bins - 1, static_cast<int>(s / hi * bins));
        out.density[std::max(0, b)] += 1.0;
    }
    double width = hi / bins;
    for (double& d : out.density) d /= unfolded.size() * width;

    std::vector<double> sorted = unfolded;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double ksp = 0.0, ksg = 0.0;
    const GinibrePdf& gin = ginibre_law();
    for (size_t i = 0; i < sorted.size(); ++i) {
        double fp = poisson2d_cdf(std::max(0.0, sorted[i]));
        double fg = gin.cdf(std::max(0.0, sorted[i]));
        double lo = i / n, up = (i + 1) / n;
        ksp = std::max({ksp, std::abs(fp - lo), std::abs(fp - up)});
        ksg = std::max({ksg, std::abs(fg - lo), std::abs(fg - up)});
    }
    out.ks_poisson = ksp;
    out.ks_ginibre = ksg;
    return out;
}

} // namespace lzsm

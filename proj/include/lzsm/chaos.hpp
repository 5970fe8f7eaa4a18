#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lzsm/floquet.hpp"

namespace lzsm {

// Nearest-neighbour spacing of each point in the complex plane (Euclidean,
// ties by index order). Needs at least 2 points.
std::vector<double> nn_spacings(const std::vector<cplx>& values);

// Local-density unfolding: each raw spacing divided by the mean raw spacing
// over its k_local nearest neighbours (the point included), then rescaled to
// unit mean over the non-edge points. A point is flagged edge when the disc
// enclosing its k_local neighbours reaches the convex hull of the spectrum
// (collinear spectra fall back to flagging the two extreme points).
struct UnfoldResult {
    std::vector<double> raw;
    std::vector<double> unfolded;
    std::vector<char> edge;
    int k_local = 30;
};

UnfoldResult unfold(const std::vector<cplx>& values, int k_local = 30);

// Analytic nearest-neighbour spacing laws at unit mean spacing.
double poisson2d_pdf(double s);    // (pi/2) s exp(-pi s^2 / 4)
double poisson2d_cdf(double s);

// Ginibre unitary ensemble spacing law, evaluated from the product/sum
// representation with regularized incomplete gamma factors, truncated once
// Q(k+1, s^2) > 1 - 1e-12 (k >= 100), then rescaled to unit mean via
// trapezoid quadrature on [0, 8] with step 1e-4.
class GinibrePdf {
public:
    GinibrePdf();
    double pdf(double s) const;
    double cdf(double s) const;
    double raw_mean() const { return mean_; }   // mean of the unscaled law

private:
    double raw_pdf(double s) const;
    double mean_ = 1.0;    // mean spacing of the raw law
    double norm_ = 1.0;    // integral of the raw law on [0, 8]
    std::vector<double> cdf_grid_;  // rescaled CDF lookup on [0, 8/mean_]
    double cdf_step_ = 1e-4;
};

const GinibrePdf& ginibre_law();           // shared lazily built instance
double ginibre_pdf(double s);

// Complex spacing ratios z_j = (nn_j - z_j) / (nnn_j - z_j) with ties broken
// by index order. Exact duplicates make the ratio undefined; those points are
// skipped and counted in `degenerate`.
struct CsrStats {
    std::vector<cplx> z;            // one entry per usable point
    std::vector<int> index;         // source position of each z entry
    double r_mean = 0.0;            // <|z|>
    double cos_theta_mean = 0.0;    // <cos arg z>
    long degenerate = 0;

    // Means restricted by a per-point predicate on the source values (for
    // bulk-only averaging); neighbors still come from the full set.
    template <class Pred>
    void restricted_means(Pred keep, double& r, double& cos_theta, long& count) const {
        double rs = 0.0, cs = 0.0;
        count = 0;
        for (size_t i = 0; i < z.size(); ++i) {
            if (!keep(index[i])) continue;
            rs += std::abs(z[i]);
            cs += std::cos(std::arg(z[i]));
            ++count;
        }
        r = count ? rs / count : 0.0;
        cos_theta = count ? cs / count : 0.0;
    }
};

CsrStats complex_spacing_ratio(const std::vector<cplx>& values);

// Eigenvalues of an n x n complex Ginibre matrix (i.i.d. Gaussian entries of
// variance 1/n, so the spectral radius tends to 1). Deterministic for a given
// seed.
std::vector<cplx> ginibre_sample(int n, std::uint64_t seed);

// i.i.d. uniform points in the unit square (Poisson reference), deterministic
// for a given seed.
std::vector<cplx> uniform_sample(int n, std::uint64_t seed);

// Steady-state quantum-trajectory-like spectral filter on a Floquet spectrum.
// The Floquet steady state is diagonalized; for every eigenstate |psi_k> with
// weight p_k >= p_min the spectrum is restricted to eigenvalues whose
// overlap |c_kj| = |Tr(sigma_j^+ |psi_k><psi_k|)| exceeds c_min, and CSR
// statistics are computed on that subset. Eigenstates with fewer than
// min_selected eigenvalues contribute cos_theta = 0 (too little data to call
// them anything). c_min defaults to (mean of |c| over |c| <= 1) / 1000.
struct SsqtOptions {
    double p_min = 1e-6;
    int min_selected = 100;
    double c_min_fixed = 0.0;   // > 0 overrides the mean-based rule
};

struct SsqtState {
    double p = 0.0;
    int selected = 0;
    double r_mean = 0.0;
    double cos_theta_mean = 0.0;
};

struct SsqtResult {
    std::vector<SsqtState> states;
    double weighted_cos_theta = 0.0;  // sum p_k cos_theta_k over retained states
    double weighted_r = 0.0;
    double c_min = 0.0;
    long excluded_outliers = 0;       // coefficients with |c| > 1
    double retained_weight = 0.0;     // sum of retained p_k
};

SsqtResult ssqt(const FloquetSpectrum& fs, const SsqtOptions& opt = {});

// Empirical density histogram of unfolded spacings plus Kolmogorov-Smirnov
// distances to the two reference laws (computed from the samples, not the
// bins). Requires at least 100 samples.
struct HistogramResult {
    std::vector<double> edges;      // bins + 1 entries
    std::vector<double> density;
    double ks_poisson = 0.0;
    double ks_ginibre = 0.0;
};

HistogramResult histogram_and_distance(const std::vector<double>& unfolded, int bins);

} // namespace lzsm

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lzsm::svg {

// Self-contained SVG writers (no plotting library). Values are mapped through
// the embedded 256-entry colormap.

void heatmap(const std::string& path, const std::vector<double>& xs,
             const std::vector<double>& ys, const Eigen::MatrixXd& values,
             const std::string& xlabel, const std::string& ylabel,
             const std::string& title);

void curve(const std::string& path, const std::vector<double>& xs,
           const std::vector<double>& ys, const std::string& xlabel,
           const std::string& ylabel, const std::string& title);

struct OverlayCurve {
    std::vector<double> xs, ys;
    std::string color;
    std::string label;
};

// Histogram bars plus analytic overlay curves (used for spacing statistics).
void histogram(const std::string& path, const std::vector<double>& edges,
               const std::vector<double>& density,
               const std::vector<OverlayCurve>& overlays,
               const std::string& xlabel, const std::string& ylabel,
               const std::string& title);

// Scatter in the complex plane (eigenvalue clouds).
void scatter(const std::string& path, const std::vector<double>& re,
             const std::vector<double>& im, const std::string& title);

} // namespace lzsm::svg

#include "lzsm/svg.hpp"

#include "lzsm/colormap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace lzsm::svg {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 560;
constexpr int kMarginL = 72, kMarginR = 96, kMarginT = 40, kMarginB = 56;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string rgb(int idx) {
    idx = std::clamp(idx, 0, 255);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", kColormap256[idx][0],
                  kColormap256[idx][1], kColormap256[idx][2]);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void fit(const std::vector<double>& v) {
        for (double x : v)
            if (std::isfinite(x)) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
    }
};

Range span(const std::vector<double>& v) {
    Range r{std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
    r.fit(v);
    if (!(r.lo < r.hi)) {
        r.lo -= 0.5;
        r.hi += 0.5;
    }
    return r;
}

double map_x(double v, const Range& r) {
    return kMarginL + (v - r.lo) / (r.hi - r.lo) * (kWidth - kMarginL - kMarginR);
}

double map_y(double v, const Range& r) {
    return kHeight - kMarginB - (v - r.lo) / (r.hi - r.lo) * (kHeight - kMarginT - kMarginB);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

void open_svg(std::ofstream& f, const std::string& path, const std::string& title) {
    f.open(path);
    if (!f) throw std::runtime_error("io-error: cannot write " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title) << "</text>\n";
}

void axes(std::ofstream& f, const Range& rx, const Range& ry,
          const std::string& xlabel, const std::string& ylabel) {
    double x0 = kMarginL, x1 = kWidth - kMarginR;
    double y0 = kHeight - kMarginB, y1 = kMarginT;
    f << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0
      << "\" height=\"" << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double tx = rx.lo + (rx.hi - rx.lo) * i / 4;
        double ty = ry.lo + (ry.hi - ry.lo) * i / 4;
        f << "<text x=\"" << map_x(tx, rx) << "\" y=\"" << y0 + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << fmt(tx) << "</text>\n";
        f << "<text x=\"" << x0 - 6 << "\" y=\"" << map_y(ty, ry) + 4
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
          << fmt(ty) << "</text>\n";
    }
    f << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(xlabel) << "</text>\n";
    f << "<text x=\"16\" y=\"" << (y0 + y1) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 "
      << (y0 + y1) / 2 << ")\">" << escape(ylabel) << "</text>\n";
}

} // namespace

void heatmap(const std::string& path, const std::vector<double>& xs,
             const std::vector<double>& ys, const Eigen::MatrixXd& values,
             const std::string& xlabel, const std::string& ylabel,
             const std::string& title) {
    if (xs.empty() || ys.empty() || values.rows() != static_cast<long>(ys.size()) ||
        values.cols() != static_cast<long>(xs.size()))
        throw std::invalid_argument("heatmap shape mismatch: values must be ys x xs");

    double vlo = std::numeric_limits<double>::infinity(), vhi = -vlo;
    for (long j = 0; j < values.cols(); ++j)
        for (long i = 0; i < values.rows(); ++i)
            if (std::isfinite(values(i, j))) {
                vlo = std::min(vlo, values(i, j));
                vhi = std::max(vhi, values(i, j));
            }
    if (!(vlo < vhi)) { vlo -= 0.5; vhi += 0.5; }

    Range rx = span(xs), ry = span(ys);
    std::ofstream f;
    open_svg(f, path, title);

    double plot_w = kWidth - kMarginL - kMarginR;
    double plot_h = kHeight - kMarginT - kMarginB;
    double cw = plot_w / xs.size();
    double ch = plot_h / ys.size();
    for (size_t j = 0; j < xs.size(); ++j)
        for (size_t i = 0; i < ys.size(); ++i) {
            double v = values(static_cast<long>(i), static_cast<long>(j));
            int idx = std::isfinite(v)
                          ? static_cast<int>(255.0 * (v - vlo) / (vhi - vlo))
                          : 0;
            double px = kMarginL + j * cw;
            double py = kHeight - kMarginB - (i + 1) * ch;
            f << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
              << fmt(cw + 0.5) << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\""
              << rgb(idx) << "\"/>\n";
        }
    axes(f, rx, ry, xlabel, ylabel);

    // colorbar
    double bx = kWidth - kMarginR + 24;
    for (int i = 0; i < 256; ++i) {
        double py = kHeight - kMarginB - (i + 1) * plot_h / 256.0;
        f << "<rect x=\"" << bx << "\" y=\"" << fmt(py) << "\" width=\"16\" height=\""
          << fmt(plot_h / 256.0 + 0.5) << "\" fill=\"" << rgb(i) << "\"/>\n";
    }
    f << "<text x=\"" << bx + 20 << "\" y=\"" << kHeight - kMarginB + 4
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(vlo) << "</text>\n";
    f << "<text x=\"" << bx + 20 << "\" y=\"" << kMarginT + 8
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(vhi) << "</text>\n";
    f << "</svg>\n";
}

void curve(const std::string& path, const std::vector<double>& xs,
           const std::vector<double>& ys, const std::string& xlabel,
           const std::string& ylabel, const std::string& title) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("curve needs matching xs/ys with >= 2 points");
    Range rx = span(xs), ry = span(ys);
    std::ofstream f;
    open_svg(f, path, title);
    axes(f, rx, ry, xlabel, ylabel);
    f << "<polyline fill=\"none\" stroke=\"" << rgb(64) << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(ys[i])) continue;
        f << fmt(map_x(xs[i], rx)) << ',' << fmt(map_y(ys[i], ry)) << ' ';
    }
    f << "\"/>\n</svg>\n";
}

void histogram(const std::string& path, const std::vector<double>& edges,
               const std::vector<double>& density,
               const std::vector<OverlayCurve>& overlays,
               const std::string& xlabel, const std::string& ylabel,
               const std::string& title) {
    if (edges.size() != density.size() + 1 || density.empty())
        throw std::invalid_argument("histogram needs bins+1 edges");
    Range rx{edges.front(), edges.back()};
    std::vector<double> all = density;
    for (const auto& o : overlays) all.insert(all.end(), o.ys.begin(), o.ys.end());
    Range ry = span(all);
    ry.lo = std::min(0.0, ry.lo);
    std::ofstream f;
    open_svg(f, path, title);
    for (size_t b = 0; b < density.size(); ++b) {
        double px = map_x(edges[b], rx);
        double pw = map_x(edges[b + 1], rx) - px;
        double py = map_y(density[b], ry);
        double ph = map_y(0.0, ry) - py;
        f << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(pw)
          << "\" height=\"" << fmt(std::max(0.0, ph)) << "\" fill=\"" << rgb(96)
          << "\" fill-opacity=\"0.6\" stroke=\"" << rgb(32) << "\"/>\n";
    }
    int legend_row = 0;
    for (const auto& o : overlays) {
        if (o.xs.size() != o.ys.size() || o.xs.size() < 2) continue;
        f << "<polyline fill=\"none\" stroke=\"" << o.color << "\" stroke-width=\"2\" points=\"";
        for (size_t i = 0; i < o.xs.size(); ++i)
            f << fmt(map_x(o.xs[i], rx)) << ',' << fmt(map_y(o.ys[i], ry)) << ' ';
        f << "\"/>\n";
        if (!o.label.empty()) {
            double lx = kWidth - kMarginR - 150, lyy = kMarginT + 18 + 16 * legend_row++;
            f << "<line x1=\"" << lx << "\" y1=\"" << lyy << "\" x2=\"" << lx + 24
              << "\" y2=\"" << lyy << "\" stroke=\"" << o.color << "\" stroke-width=\"2\"/>\n"
              << "<text x=\"" << lx + 30 << "\" y=\"" << lyy + 4
              << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(o.label)
              << "</text>\n";
        }
    }
    axes(f, rx, ry, xlabel, ylabel);
    f << "</svg>\n";
}

void scatter(const std::string& path, const std::vector<double>& re,
             const std::vector<double>& im, const std::string& title) {
    if (re.size() != im.size() || re.empty())
        throw std::invalid_argument("scatter needs matching re/im");
    Range rx = span(re), ry = span(im);
    std::ofstream f;
    open_svg(f, path, title);
    axes(f, rx, ry, "Re", "Im");
    for (size_t i = 0; i < re.size(); ++i) {
        if (!std::isfinite(re[i]) || !std::isfinite(im[i])) continue;
        f << "<circle cx=\"" << fmt(map_x(re[i], rx)) << "\" cy=\""
          << fmt(map_y(im[i], ry)) << "\" r=\"1.6\" fill=\"" << rgb(48)
          << "\" fill-opacity=\"0.7\"/>\n";
    }
    f << "</svg>\n";
}

} // namespace lzsm::svg

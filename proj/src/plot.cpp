#include "agfec/plot.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace agfec {

namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 560;
constexpr double kLeft = 80, kRight = 30, kTop = 40, kBottom = 70;
constexpr double kBerFloor = 1e-6;
constexpr double kBerCeil = 1.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Mapper {
    double x0, x1;
    double px(double x) const {
        return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
    }
    double py(double ber) const {
        double lb = std::log10(std::clamp(ber, kBerFloor, kBerCeil));
        double l0 = std::log10(kBerFloor), l1 = std::log10(kBerCeil);
        return kTop + (l1 - lb) / (l1 - l0) * (kHeight - kTop - kBottom);
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void render_ber_svg(std::ostream& os, const std::vector<PlotSeries>& series) {
    double xmin = 1e300, xmax = -1e300;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& p : s.data.points) {
            xmin = std::min(xmin, p.ebn0_db);
            xmax = std::max(xmax, p.ebn0_db);
            if (p.ber > 0) any = true;
        }
    }
    if (!any) throw std::runtime_error("plot: no plottable data rows");
    if (xmax <= xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    Mapper m{xmin, xmax};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">BER vs Eb/N0</text>\n";

    // decade gridlines and labels
    for (int d = 0; d >= -6; --d) {
        double y = m.py(std::pow(10.0, d));
        os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kWidth - kRight
           << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" << d
           << "</text>\n";
    }
    // x ticks: 1 dB steps when the span is small, else 2 dB
    double step = (xmax - xmin) <= 12.0 ? 1.0 : 2.0;
    double tick0 = std::ceil(xmin / step) * step;
    for (double t = tick0; t <= xmax + 1e-9; t += step) {
        double x = m.px(t);
        os << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\""
           << kHeight - kBottom << "\" stroke=\"#eeeeee\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(t)
           << "</text>\n";
    }
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
       << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 24
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">Eb/N0 "
          "(dB)</text>\n";
    os << "<text x=\"20\" y=\"" << kHeight / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
          "transform=\"rotate(-90 20 "
       << kHeight / 2 << ")\">BER</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        // confidence whiskers
        for (const auto& p : series[si].data.points) {
            if (p.ber <= 0 || p.info_bits == 0 || p.ci95 <= 0) continue;
            double lo = std::max(p.ber - p.ci95, kBerFloor * 0.5);
            double hi = p.ber + p.ci95;
            double x = m.px(p.ebn0_db);
            os << "<line x1=\"" << x << "\" y1=\"" << m.py(lo) << "\" x2=\"" << x
               << "\" y2=\"" << m.py(hi) << "\" stroke=\"" << color
               << "\" stroke-width=\"1\" opacity=\"0.6\"/>\n";
        }
        // polyline through the positive-BER points
        std::string path;
        bool first = true;
        for (const auto& p : series[si].data.points) {
            if (p.ber <= 0) continue;
            path += first ? "M" : "L";
            path += fmt(m.px(p.ebn0_db)) + " " + fmt(m.py(p.ber)) + " ";
            first = false;
        }
        if (!path.empty())
            os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"2\"/>\n";
        for (const auto& p : series[si].data.points) {
            if (p.ber <= 0) continue;
            os << "<circle cx=\"" << m.px(p.ebn0_db) << "\" cy=\"" << m.py(p.ber)
               << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        // legend entry
        double ly = kTop + 16 + 18 * static_cast<double>(si);
        os << "<line x1=\"" << kWidth - kRight - 170 << "\" y1=\"" << ly << "\" x2=\""
           << kWidth - kRight - 140 << "\" y2=\"" << ly << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kWidth - kRight - 134 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[si].label
           << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace agfec

#ifndef AGFEC_PLOT_H
#define AGFEC_PLOT_H

#include <iosfwd>
#include <string>
#include <vector>

#include "agfec/sim.h"

namespace agfec {

struct PlotSeries {
    std::string label;
    SimResult data;
};

// Semilog-y BER vs Eb/N0 chart as a self-contained SVG: one curve per
// series, decade gridlines from 1 down to 1e-6, binomial confidence
// whiskers where counts are available. Throws if no series has a
// plottable point.
void render_ber_svg(std::ostream& os, const std::vector<PlotSeries>& series);

} // namespace agfec

#endif

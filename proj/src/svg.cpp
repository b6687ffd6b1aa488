#include "sagsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sagsim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    double tick = 1.0;
};

Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        hi = lo + 1.0;
        lo = lo - 1.0;
    }
    double span = hi - lo;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    Axis a;
    a.lo = std::floor(lo / step) * step;
    a.hi = std::ceil(hi / step) * step;
    a.tick = step;
    return a;
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec) {
    const double ml = 70, mr = 20, mt = 34, mb = 48;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;

    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool first = true;
    for (const auto& s : spec.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double e = i < s.yerr.size() ? s.yerr[i] : 0.0;
            if (first) {
                xlo = xhi = s.x[i];
                ylo = s.y[i] - e;
                yhi = s.y[i] + e;
                first = false;
            } else {
                xlo = std::min(xlo, s.x[i]);
                xhi = std::max(xhi, s.x[i]);
                ylo = std::min(ylo, s.y[i] - e);
                yhi = std::max(yhi, s.y[i] + e);
            }
        }
    }
    Axis ax = nice_axis(xlo, xhi);
    Axis ay = nice_axis(std::min(ylo, 0.0), yhi);

    auto X = [&](double x) { return ml + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto Y = [&](double y) { return mt + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << spec.width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
        << spec.title << "</text>\n";

    for (double t = ax.lo; t <= ax.hi + 1e-9 * ax.tick; t += ax.tick) {
        double px = X(t);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ph + 16)
            << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    }
    for (double t = ay.lo; t <= ay.hi + 1e-9 * ay.tick; t += ay.tick) {
        double py = Y(t);
        out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(ml + pw)
            << "\" y2=\"" << fmt(py) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
    out << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(pw)
        << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 10
        << "\" text-anchor=\"middle\">" << spec.x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << spec.height / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << spec.height / 2 << ")\">"
        << spec.y_label << "</text>\n";

    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* color = kPalette[si % 6];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) pts << ' ';
            pts << fmt(X(s.x[i])) << ',' << fmt(Y(s.y[i]));
        }
        out << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.8\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            out << "<circle cx=\"" << fmt(X(s.x[i])) << "\" cy=\"" << fmt(Y(s.y[i]))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            if (i < s.yerr.size() && s.yerr[i] > 0.0) {
                out << "<line x1=\"" << fmt(X(s.x[i])) << "\" y1=\"" << fmt(Y(s.y[i] - s.yerr[i]))
                    << "\" x2=\"" << fmt(X(s.x[i])) << "\" y2=\"" << fmt(Y(s.y[i] + s.yerr[i]))
                    << "\" stroke=\"" << color << "\"/>\n";
            }
        }
        double lx = ml + pw - 150, ly = mt + 16 + 18 * static_cast<double>(si);
        out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 24)
            << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << fmt(lx + 30) << "\" y=\"" << fmt(ly) << "\">" << s.label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace sagsim

#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gonodyn::cli {

namespace {

constexpr double kWidth = 760, kHeight = 480;
constexpr double kLeft = 64, kRight = 140, kTop = 40, kBottom = 48;

const char* kSeriesColors[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void tag(std::string& out, const char* pattern, double a, double b, double c = 0, double d = 0) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
    out += buf;
}

double symlog(double y) { return (y < 0 ? -1.0 : 1.0) * std::log10(1.0 + std::abs(y)); }
double symexp(double s) { return (s < 0 ? -1.0 : 1.0) * (std::pow(10.0, std::abs(s)) - 1.0); }

std::string header(const std::string& title) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kLeft) + "\" y=\"24\" font-family=\"monospace\" "
           "font-size=\"15\">" + title + "</text>\n";
    return out;
}

void axis_frame(std::string& out) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<path d=\"M %g %g L %g %g L %g %g\" fill=\"none\" stroke=\"black\"/>\n",
                  kLeft, kTop, kLeft, kHeight - kBottom, kWidth - kRight,
                  kHeight - kBottom);
    out += buf;
}

void text_at(std::string& out, double x, double y, const std::string& s,
             const char* anchor = "middle") {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-family=\"monospace\" font-size=\"11\" "
                  "text-anchor=\"%s\">%s</text>\n",
                  x, y, anchor, s.c_str());
    out += buf;
}

}  // namespace

std::string line_plot_svg(const std::string& title, const std::vector<Series>& series) {
    size_t n = 0;
    double smin = 0, smax = 0;
    for (const auto& s : series) {
        n = std::max(n, s.values.size());
        for (double v : s.values) {
            smin = std::min(smin, symlog(v));
            smax = std::max(smax, symlog(v));
        }
    }
    if (smax - smin < 1e-9) smax = smin + 1.0;

    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;
    auto sx = [&](double i) {
        return n > 1 ? px0 + (px1 - px0) * i / double(n - 1) : (px0 + px1) / 2;
    };
    auto sy = [&](double v) {
        return py0 + (py1 - py0) * (symlog(v) - smin) / (smax - smin);
    };

    std::string out = header(title);
    axis_frame(out);

    for (int k = 0; k <= 4; ++k) {
        double s = smin + (smax - smin) * k / 4.0;
        double y = py0 + (py1 - py0) * k / 4.0;
        tag(out, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#cccccc\"/>\n",
            px0, y, px1, y);
        text_at(out, px0 - 6, y + 4, num(symexp(s)), "end");
    }
    int xticks = std::min<size_t>(n > 1 ? n - 1 : 1, 8);
    for (int k = 0; k <= xticks; ++k) {
        double i = (n > 1 ? double(n - 1) : 1.0) * k / xticks;
        text_at(out, sx(i), py0 + 16, num(std::round(i)));
    }
    text_at(out, (px0 + px1) / 2, kHeight - 10, "n");

    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kSeriesColors[si % 8];
        std::string pts;
        for (size_t i = 0; i < s.values.size(); ++i)
            pts += num(sx(double(i))) + "," + num(sy(s.values[i])) + " ";
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        double ly = kTop + 16.0 * double(si);
        tag(out, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"", px1 + 12, ly,
            px1 + 34, ly);
        out += std::string(color) + "\" stroke-width=\"2\"/>\n";
        text_at(out, px1 + 40, ly + 4, s.name, "start");
    }
    out += "</svg>\n";
    return out;
}

std::string heat_map_svg(const std::string& title, const HeatAxis& ax0, const HeatAxis& ax1,
                         const std::vector<int>& cells, const std::vector<std::string>& labels,
                         const std::vector<std::string>& palette) {
    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;
    const double cw = (px1 - px0) / ax0.count;
    const double ch = (py0 - py1) / ax1.count;

    std::string out = header(title);
    for (int i0 = 0; i0 < ax0.count; ++i0) {
        for (int i1 = 0; i1 < ax1.count; ++i1) {
            int c = cells[size_t(i0) * ax1.count + i1];
            char buf[256];
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%.7g\" y=\"%.7g\" width=\"%.7g\" height=\"%.7g\" "
                          "fill=\"%s\"/>\n",
                          px0 + cw * i0, py0 - ch * (i1 + 1), cw + 0.5, ch + 0.5,
                          palette[size_t(c) % palette.size()].c_str());
            out += buf;
        }
    }
    axis_frame(out);
    for (int k = 0; k <= 4; ++k) {
        double v0 = ax0.lo + (ax0.hi - ax0.lo) * k / 4.0;
        double v1 = ax1.lo + (ax1.hi - ax1.lo) * k / 4.0;
        text_at(out, px0 + (px1 - px0) * k / 4.0, py0 + 16, num(v0));
        text_at(out, px0 - 6, py0 + (py1 - py0) * k / 4.0 + 4, num(v1), "end");
    }
    text_at(out, (px0 + px1) / 2, kHeight - 10, ax0.name);
    text_at(out, 18, (py0 + py1) / 2, ax1.name);
    for (size_t li = 0; li < labels.size(); ++li) {
        double ly = kTop + 18.0 * double(li);
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%g\" y=\"%g\" width=\"14\" height=\"14\" fill=\"%s\"/>\n",
                      px1 + 12, ly - 10, palette[li % palette.size()].c_str());
        out += buf;
        text_at(out, px1 + 32, ly + 2, labels[li], "start");
    }
    out += "</svg>\n";
    return out;
}

}  // namespace gonodyn::cli

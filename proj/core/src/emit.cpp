#include "growth/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "growth/errors.hpp"

namespace growth {

namespace fs = std::filesystem;

void atomic_write(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw Error("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error("rename to '" + path + "' failed: " + ec.message());
}

std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

const char* kPalette[] = {"#2266aa", "#cc4433", "#338844", "#886699", "#bb8822", "#444444"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

}  // namespace

std::string svg_line_plot(const std::vector<SvgSeries>& series, const SvgOptions& opts) {
    const int W = opts.width, H = opts.height;
    const int ml = 70, mr = 20, mt = opts.title.empty() ? 20 : 42, mb = 46;
    Range rx, ry;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double y = s.y[i];
            if (opts.log_y) {
                if (!(y > 0)) continue;
                y = std::log10(y);
            }
            if (!std::isfinite(y) || !std::isfinite(s.x[i])) continue;
            rx.add(s.x[i]);
            ry.add(y);
        }
    }
    if (!std::isfinite(rx.lo)) {
        rx = {0, 1};
        ry = {0, 1};
    }
    auto px = [&](double x) { return ml + (x - rx.lo) / rx.span() * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ry.lo) / ry.span() * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!opts.title.empty()) {
        svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
               "font-family=\"sans-serif\">"
            << opts.title << "</text>\n";
    }
    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        double fx = rx.lo + rx.span() * tick / 4.0;
        double fy = ry.lo + ry.span() * tick / 4.0;
        svg << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << fmt_double(fx) << "</text>\n";
        std::string ylabel = opts.log_y ? ("1e" + fmt_double(fy)) : fmt_double(fy);
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << ylabel
            << "</text>\n";
    }
    int ci = 0;
    int legend_y = mt + 6;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 6];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double y = s.y[i];
            if (opts.log_y) {
                if (!(y > 0)) continue;
                y = std::log10(y);
            }
            if (!std::isfinite(y)) continue;
            pts << fmt_double(px(s.x[i])) << ',' << fmt_double(py(y)) << ' ';
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
        if (!s.label.empty()) {
            svg << "<text x=\"" << W - mr - 8 << "\" y=\"" << legend_y
                << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\""
                << color << "\">" << s.label << "</text>\n";
            legend_y += 16;
        }
        ++ci;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string svg_heatmap(const std::vector<std::tuple<int, int, double>>& cells,
                        const std::string& title, int width, int height) {
    int maxx = 1, maxy = 1;
    for (const auto& [x, y, v] : cells) {
        maxx = std::max(maxx, x + 1);
        maxy = std::max(maxy, y + 1);
    }
    const int mt = title.empty() ? 10 : 34;
    double cw = static_cast<double>(width - 20) / maxx;
    double ch = static_cast<double>(height - mt - 10) / maxy;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\" "
               "font-family=\"sans-serif\">"
            << title << "</text>\n";
    }
    for (const auto& [x, y, v] : cells) {
        double t = std::clamp(v, 0.0, 1.0);
        int r = static_cast<int>(255 * t);
        int b = static_cast<int>(255 * (1.0 - t));
        svg << "<rect x=\"" << fmt_double(10 + x * cw) << "\" y=\""
            << fmt_double(height - 10 - (y + 1) * ch) << "\" width=\"" << fmt_double(cw)
            << "\" height=\"" << fmt_double(ch) << "\" fill=\"rgb(" << r << ",60," << b
            << ")\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace growth

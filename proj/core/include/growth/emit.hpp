#pragma once

#include <string>
#include <vector>

namespace growth {

/// Writes content to path atomically (temp file in the same directory,
/// then rename). Creates parent directories.
void atomic_write(const std::string& path, const std::string& content);

/// CSV with a header row; fields are emitted verbatim (caller quotes if
/// needed). Deterministic: no timestamps, fixed field order.
std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

/// Fixed-format float for reproducible text output.
std::string fmt_double(double x);

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgOptions {
    int width = 720;
    int height = 440;
    bool log_y = false;
    std::string title;
};

/// Minimal deterministic line/scatter plot. CSV is the authoritative
/// artifact; this is a convenience rendering.
std::string svg_line_plot(const std::vector<SvgSeries>& series, const SvgOptions& opts);

/// Grid heatmap; cells are (x, y, intensity in [0,1]).
std::string svg_heatmap(const std::vector<std::tuple<int, int, double>>& cells,
                        const std::string& title, int width = 520, int height = 520);

}  // namespace growth

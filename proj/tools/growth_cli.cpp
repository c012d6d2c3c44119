// growth: command-line surface for tensor-power growth analysis.
//
// Subcommands: bn, pfdim, classify, dump, reproduce. Every command writes
// deterministic CSV/JSON (and optional SVG) artifacts under --out and prints
// a one-line summary; errors exit nonzero with a JSON object on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "growth/asymptotics.hpp"
#include "growth/emit.hpp"
#include "growth/errors.hpp"
#include "growth/families.hpp"
#include "growth/graph.hpp"
#include "growth/interchange.hpp"
#include "growth/rational.hpp"
#include "growth/series.hpp"
#include "growth/spectral.hpp"

namespace {

using nlohmann::ordered_json;
using namespace growth;

struct CommonOptions {
    std::string family;
    std::vector<std::string> params;  // key=value
    std::string matrix_file;
    long long unit = -1;
    std::string out_dir = ".";
    std::vector<std::string> formats;
    long long big_n = -1;
    int depth = -1;
    double tol = -1.0;
    std::vector<std::string> thresholds;  // key=value
    std::int64_t lambda_weight = -1;
    std::string alpha;
    std::int64_t leaves = -1;
    double normalize = 0.0;
    double lambda = 0.0;
};

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& items,
                                            const char* what) {
    std::map<std::string, std::string> out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InvalidPresentation(std::string("expected key=value for ") + what + ": '" +
                                      item + "'");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

ProblemOptions problem_options() {
    ProblemOptions opts;
    if (const char* cap = std::getenv("GROWTH_VERTEX_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(cap, &end, 10);
        if (end && *end == '\0' && v > 0) opts.vertex_cap = static_cast<std::size_t>(v);
    }
    return opts;
}

GrowthProblem problem_from_options(const CommonOptions& o, FamilySpec* spec_out = nullptr) {
    ProblemOptions popts = problem_options();
    if (!o.matrix_file.empty()) {
        if (spec_out) *spec_out = FamilySpec::named("explicit");
        return load_matrix_file(o.matrix_file, o.unit, popts);
    }
    if (o.family.empty()) {
        throw InvalidPresentation("either --family or --matrix is required");
    }
    FamilySpec spec = FamilySpec::named(o.family);
    auto params = parse_kv(o.params, "--param");
    if (params.count("lambda")) spec.lambda_weight = std::stoll(params["lambda"]);
    if (params.count("leaves")) spec.star_leaves = std::stoll(params["leaves"]);
    if (params.count("N")) spec.star_leaves = std::stoll(params["N"]);
    if (params.count("alpha")) spec.jordan_alpha = parse_rational(params["alpha"]);
    if (o.lambda_weight >= 0) spec.lambda_weight = o.lambda_weight;
    if (o.leaves >= 0) spec.star_leaves = o.leaves;
    if (!o.alpha.empty()) spec.jordan_alpha = parse_rational(o.alpha);
    if (spec_out) *spec_out = spec;
    return build_family(spec, popts);
}

std::string slug(const CommonOptions& o) {
    if (!o.matrix_file.empty()) return "explicit";
    std::string s = o.family;
    if (o.family == "sl2") s += "-" + std::to_string(o.lambda_weight >= 1 ? o.lambda_weight : 1);
    if (o.family == "star") s += "-" + std::to_string(o.leaves >= 1 ? o.leaves : 1);
    if (o.family == "jordan" && !o.alpha.empty()) {
        std::string a = o.alpha;
        for (auto& c : a) {
            if (c == '/') c = '_';
        }
        s += "-" + a;
    }
    return s;
}

bool wants(const CommonOptions& o, const std::string& fmt, bool dflt) {
    if (o.formats.empty()) return dflt;
    for (const auto& f : o.formats) {
        if (f == fmt) return true;
    }
    return false;
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir + "/" + name;
}

double threshold_or(const std::map<std::string, std::string>& th, const std::string& key,
                    double dflt) {
    auto it = th.find(key);
    return it == th.end() ? dflt : std::stod(it->second);
}

// ---------------------------------------------------------------- bn

int cmd_bn(const CommonOptions& o) {
    GrowthProblem gp = problem_from_options(o);
    const int N = o.big_n >= 0 ? static_cast<int>(o.big_n) : 60;
    Series b = bn_sequence(gp, N);

    std::vector<std::string> header{"n", "bn", "bn_float"};
    const bool normalized = o.normalize > 0.0;
    if (normalized) {
        header.push_back("bn_normalized");
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<double> ns, norm1, norm2;
    const double gamma2 = o.normalize * 0.995;
    for (int n = 0; n <= N; ++n) {
        const Rational& v = b.at(n);
        std::vector<std::string> row{std::to_string(n), rational_str(v),
                                     fmt_double(rational_to_double(v))};
        if (normalized) {
            double scaled = std::exp(rational_log(v) - n * std::log(o.normalize));
            row.push_back(fmt_double(scaled));
            ns.push_back(n);
            norm1.push_back(scaled);
            norm2.push_back(std::exp(rational_log(v) - n * std::log(gamma2)));
        }
        rows.push_back(std::move(row));
    }
    std::string base = slug(o) + "_bn";
    if (wants(o, "csv", true)) {
        atomic_write(join_path(o.out_dir, base + ".csv"), csv_document(header, rows));
    }
    if (wants(o, "svg", false) && normalized) {
        SvgOptions sopts;
        sopts.log_y = true;
        sopts.title = "normalized growth of " + gp.description();
        std::vector<SvgSeries> series{{"bn/" + fmt_double(o.normalize) + "^n", ns, norm1},
                                      {"bn/" + fmt_double(gamma2) + "^n", ns, norm2}};
        atomic_write(join_path(o.out_dir, base + ".svg"), svg_line_plot(series, sopts));
    }
    std::cout << "bn: " << gp.description() << " N=" << N << " b_N=" << rational_str(b.at(N))
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- pfdim

int cmd_pfdim(const CommonOptions& o) {
    GrowthProblem gp = problem_from_options(o);
    auto th = parse_kv(o.thresholds, "--threshold");
    PfdimOptions popts;
    if (o.tol > 0) popts.tol = o.tol;
    popts.divergence_threshold = threshold_or(th, "divergence", popts.divergence_threshold);
    popts.window = static_cast<int>(threshold_or(th, "window", popts.window));
    const int max_depth = o.depth >= 0 ? o.depth : 30;
    std::vector<int> pages;
    for (int k = 1; k <= max_depth; ++k) pages.push_back(k);

    FiltrationEstimate est = pfdim_filtration(Filtration::naive(gp), pages, popts);

    ordered_json doc;
    doc["family"] = gp.description();
    doc["verdict"] = verdict_name(est.verdict);
    doc["value"] = est.value;
    if (est.verdict == FiltrationEstimate::Verdict::Infinite) {
        doc["tag"] = "superexponential";
    }
    if (!est.note.empty()) doc["note"] = est.note;
    ordered_json seq = ordered_json::array();
    for (const auto& [k, lam] : est.lambda_k) {
        seq.push_back(ordered_json::array({k, lam}));
    }
    doc["lambda_k"] = std::move(seq);
    atomic_write(join_path(o.out_dir, slug(o) + "_pfdim.json"), doc.dump(2) + "\n");
    std::cout << "pfdim: " << gp.description() << " verdict=" << verdict_name(est.verdict)
              << " value=" << fmt_double(est.value) << "\n";
    return 0;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const CommonOptions& o) {
    GrowthProblem gp = problem_from_options(o);
    auto th = parse_kv(o.thresholds, "--threshold");
    RecurrenceThresholds rt;
    rt.delta = threshold_or(th, "delta", rt.delta);
    rt.mu_divergence = threshold_or(th, "mu-divergence", rt.mu_divergence);
    const int N = o.big_n >= 0 ? static_cast<int>(o.big_n) : 1000;

    ordered_json doc;
    doc["family"] = gp.description();

    double lambda = o.lambda;
    if (lambda <= 0) {
        VjEstimate vj = vj_pfdim_estimate(gp, gp.unit(), std::min(N, 2000));
        lambda = vj.extrapolated;
        doc["lambda_source"] = "vere-jones extrapolation";
    } else {
        doc["lambda_source"] = "supplied";
    }
    doc["lambda"] = lambda;

    ClassificationReport rep = classify_recurrence(gp, lambda, N, rt);
    doc["verdict"] = verdict_name(rep.verdict);
    doc["terms"] = rep.terms;
    ordered_json ev;
    ev["first_return_mass"] = rep.F;
    ev["mean_return_mass"] = rep.mu;
    ev["green_mass"] = rep.green;
    ev["first_return_stabilized"] = rep.f_stabilized;
    ev["mean_return_stabilized"] = rep.mu_stabilized;
    ev["mean_return_trend_exponent"] = rep.mu_trend_exponent;
    if (std::isfinite(rep.mu_projected_crossing)) {
        ev["mean_return_projected_crossing"] = rep.mu_projected_crossing;
    }
    ev["exact_short_circuit"] = rep.exact_short_circuit;
    doc["evidence"] = std::move(ev);
    if (!rep.notes.empty()) doc["notes"] = rep.notes;

    // final basic classes of a moderate cutoff, as context
    try {
        Truncation t = expand_to_depth(gp, std::min(o.depth >= 0 ? o.depth : 16, 24));
        SpectralSummary s = classify_classes(t);
        auto fbc = final_basic_vertex_sets(t, s);
        ordered_json sets = ordered_json::array();
        for (const auto& cls : fbc) {
            ordered_json keys = ordered_json::array();
            for (const auto& k : cls) keys.push_back(key_str(k));
            sets.push_back(std::move(keys));
        }
        doc["final_basic_classes"] = std::move(sets);
    } catch (const Error&) {
        // context only
    }

    atomic_write(join_path(o.out_dir, slug(o) + "_classify.json"), doc.dump(2) + "\n");
    std::cout << "classify: " << gp.description() << " verdict=" << verdict_name(rep.verdict)
              << " F=" << fmt_double(rep.F) << " mu=" << fmt_double(rep.mu) << "\n";
    return 0;
}

// ---------------------------------------------------------------- dump

int cmd_dump(const CommonOptions& o) {
    GrowthProblem gp = problem_from_options(o);
    const int depth = o.depth >= 0 ? o.depth : 12;
    Truncation t = expand_to_depth(gp, depth);
    InterchangeGraph g = interchange_from_truncation(t);
    atomic_write(join_path(o.out_dir, slug(o) + "_graph.json"), interchange_to_json(g));
    std::cout << "dump: " << gp.description() << " depth=" << depth << " vertices=" << t.size()
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- reproduce

void figure_sl2_logplots(const std::string& dir, int N) {
    GrowthProblem gp = build_family(FamilySpec::sl2(1), problem_options());
    Series b = bn_sequence(gp, N);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> ns, at2, at199;
    for (int n = 0; n <= N; ++n) {
        double l = rational_log(b.at(n));
        double v2 = std::exp(l - n * std::log(2.0));
        double v199 = std::exp(l - n * std::log(1.99));
        rows.push_back({std::to_string(n), rational_str(b.at(n)), fmt_double(v2),
                        fmt_double(v199)});
        ns.push_back(n);
        at2.push_back(v2);
        at199.push_back(v199);
    }
    atomic_write(join_path(dir, "sl2_logplots.csv"),
                 csv_document({"n", "bn", "bn_over_2n", "bn_over_1.99n"}, rows));
    SvgOptions s1;
    s1.log_y = true;
    s1.title = "bn / 2^n";
    atomic_write(join_path(dir, "sl2_logplots_bounded.svg"),
                 svg_line_plot({{"bn/2^n", ns, at2}}, s1));
    SvgOptions s2;
    s2.log_y = true;
    s2.title = "bn / 1.99^n";
    atomic_write(join_path(dir, "sl2_logplots_growing.svg"),
                 svg_line_plot({{"bn/1.99^n", ns, at199}}, s2));
}

void figure_z_vs_halfline(const std::string& dir, int n) {
    GrowthProblem line = build_family(FamilySpec::named("line-Z"), problem_options());
    GrowthProblem half = build_family(FamilySpec::sl2(1), problem_options());
    auto dl = endpoint_distribution(line, n);
    auto dh = endpoint_distribution(half, n);
    auto emit = [&](const char* name, const std::map<VertexKey, Rational>& d,
                    std::vector<double>& xs, std::vector<double>& ys) {
        Rational total = 0;
        for (const auto& [k, v] : d) total += v;
        std::vector<std::vector<std::string>> rows;
        for (const auto& [k, v] : d) {
            double frac = rational_to_double(Rational(v / total));
            rows.push_back({std::to_string(k.parts[0]), rational_str(v), fmt_double(frac)});
            xs.push_back(static_cast<double>(k.parts[0]));
            ys.push_back(frac);
        }
        atomic_write(join_path(dir, std::string(name) + ".csv"),
                     csv_document({"vertex", "paths", "fraction"}, rows));
    };
    std::vector<double> xl, yl, xh, yh;
    emit("endpoints_line", dl, xl, yl);
    emit("endpoints_halfline", dh, xh, yh);
    SvgOptions sopts;
    sopts.title = "endpoint distribution after " + std::to_string(n) + " steps";
    atomic_write(join_path(dir, "z_vs_halfline.svg"),
                 svg_line_plot({{"line", xl, yl}, {"half-line", xh, yh}}, sopts));
}

void figure_sl3_heatmaps(const std::string& dir) {
    for (int n : {50, 100, 200}) {
        GrowthProblem gp = build_family(FamilySpec::named("sl3-vector"), problem_options());
        auto d = endpoint_distribution(gp, n);
        double max_log = 0.0;
        for (const auto& [k, v] : d) max_log = std::max(max_log, rational_log(v));
        std::vector<std::vector<std::string>> rows;
        std::vector<std::tuple<int, int, double>> cells;
        for (const auto& [k, v] : d) {
            int a = static_cast<int>(k.parts.size() > 0 ? k.parts[0] : 0);
            int b = static_cast<int>(k.parts.size() > 1 ? k.parts[1] : 0);
            rows.push_back({std::to_string(a), std::to_string(b), rational_str(v)});
            double intensity = max_log > 0 ? std::max(0.0, rational_log(v) / max_log) : 1.0;
            cells.emplace_back(a, b, intensity);
        }
        std::string base = "sl3_heatmap_n" + std::to_string(n);
        atomic_write(join_path(dir, base + ".csv"), csv_document({"a", "b", "paths"}, rows));
        atomic_write(join_path(dir, base + ".svg"),
                     svg_heatmap(cells, "path mass after " + std::to_string(n) + " steps"));
    }
}

void figure_klein_plots(const std::string& dir, int N) {
    GrowthProblem gp = build_family(FamilySpec::named("klein-four"), problem_options());
    Series b = bn_sequence(gp, N);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> ns, scaled, residual;
    for (int n = 0; n <= N; ++n) {
        double v = std::exp(rational_log(b.at(n)) - n * std::log(3.0)) * 4.0;
        rows.push_back({std::to_string(n), rational_str(b.at(n)), fmt_double(v)});
        ns.push_back(n);
        scaled.push_back(v);
        residual.push_back(std::abs(v - 1.0));
    }
    atomic_write(join_path(dir, "klein_convergence.csv"),
                 csv_document({"n", "bn", "bn_times_4_over_3n"}, rows));
    SvgOptions lin;
    lin.title = "4 bn / 3^n";
    atomic_write(join_path(dir, "klein_convergence_linear.svg"),
                 svg_line_plot({{"4 bn/3^n", ns, scaled}}, lin));
    SvgOptions lg;
    lg.log_y = true;
    lg.title = "|4 bn / 3^n - 1|";
    atomic_write(join_path(dir, "klein_convergence_log.svg"),
                 svg_line_plot({{"|4 bn/3^n - 1|", ns, residual}}, lg));
}

void figure_psl2f7_plots(const std::string& dir) {
    GrowthProblem gp = build_family(FamilySpec::named("psl2-f7-cutoff"), problem_options());
    AsymptoticModel model = fit_asymptotic_model(gp, {16});
    const int N = 11;
    Series b = bn_sequence(gp, N);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> ns, ratio, diff;
    for (int n = 0; n <= N; ++n) {
        double a = evaluate_model(model, n);
        double bv = rational_to_double(b.at(n));
        rows.push_back({std::to_string(n), rational_str(b.at(n)), fmt_double(a),
                        fmt_double(bv / a), fmt_double(std::abs(bv - a))});
        ns.push_back(n);
        ratio.push_back(bv / a);
        diff.push_back(std::abs(bv - a));
    }
    atomic_write(join_path(dir, "psl2f7_asymptotics.csv"),
                 csv_document({"n", "bn", "an", "ratio", "absdiff"}, rows));
    SvgOptions r;
    r.title = "bn / an";
    atomic_write(join_path(dir, "psl2f7_ratio.svg"), svg_line_plot({{"bn/an", ns, ratio}}, r));
    SvgOptions d;
    d.log_y = true;
    d.title = "|bn - an|";
    atomic_write(join_path(dir, "psl2f7_variance.svg"),
                 svg_line_plot({{"|bn-an|", ns, diff}}, d));
}

int cmd_reproduce(const std::string& figure, const CommonOptions& o) {
    const int n = o.big_n >= 0 ? static_cast<int>(o.big_n) : -1;
    if (figure == "sl2-logplots") {
        figure_sl2_logplots(o.out_dir, n > 0 ? n : 200);
    } else if (figure == "z-vs-halfline") {
        figure_z_vs_halfline(o.out_dir, n > 0 ? n : 200);
    } else if (figure == "sl3-heatmaps") {
        figure_sl3_heatmaps(o.out_dir);
    } else if (figure == "klein-plots") {
        figure_klein_plots(o.out_dir, n > 0 ? n : 60);
    } else if (figure == "psl2f7-plots") {
        figure_psl2f7_plots(o.out_dir);
    } else {
        throw InvalidPresentation("unknown figure id '" + figure + "'");
    }
    std::cout << "reproduce: " << figure << " written to " << o.out_dir << "\n";
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--family", o.family, "family tag");
    cmd->add_option("--param", o.params, "family parameter key=value (lambda, leaves, alpha)");
    cmd->add_option("--matrix", o.matrix_file, "explicit matrix file (interchange JSON or rows)");
    cmd->add_option("--unit", o.unit, "unit vertex index for --matrix");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--format", o.formats, "output formats: csv json svg");
    cmd->add_option("-N,--terms", o.big_n, "number of terms / walk length");
    cmd->add_option("--depth", o.depth, "truncation depth");
    cmd->add_option("--tol", o.tol, "tolerance override");
    cmd->add_option("--threshold", o.thresholds, "threshold key=value");
    cmd->add_option("--lambda-weight", o.lambda_weight, "sl2 highest weight");
    cmd->add_option("--alpha", o.alpha, "jordan loop weight (rational)");
    cmd->add_option("--leaves", o.leaves, "star leaf count");
    cmd->add_option("--normalize", o.normalize, "normalize bn by this growth rate");
    cmd->add_option("--lambda", o.lambda, "growth rate for classification");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tensor-power growth analysis"};
    app.require_subcommand(1);

    CommonOptions obn, opf, ocl, odu, ore;
    std::string figure;

    CLI::App* bn = app.add_subcommand("bn", "exact summand counts b_n");
    add_common(bn, obn);
    CLI::App* pf = app.add_subcommand("pfdim", "PF dimension along the naive filtration");
    add_common(pf, opf);
    CLI::App* cl = app.add_subcommand("classify", "recurrence/transience classification");
    add_common(cl, ocl);
    CLI::App* du = app.add_subcommand("dump", "emit the truncated graph as interchange JSON");
    add_common(du, odu);
    CLI::App* re = app.add_subcommand("reproduce", "regenerate a named figure");
    re->add_option("figure", figure, "figure id")->required();
    add_common(re, ore);

    try {
        app.parse(argc, argv);
        if (bn->parsed()) return cmd_bn(obn);
        if (pf->parsed()) return cmd_pfdim(opf);
        if (cl->parsed()) return cmd_classify(ocl);
        if (du->parsed()) return cmd_dump(odu);
        if (re->parsed()) return cmd_reproduce(figure, ore);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const growth::Error& e) {
        ordered_json err;
        err["error"] = "growth";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = "internal";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ndcwt/fbm.hpp"
#include "ndcwt/features.hpp"
#include "ndcwt/io.hpp"
#include "ndcwt/phase.hpp"
#include "ndcwt/rng.hpp"
#include "ndcwt/spectra.hpp"
#include "ndcwt/version.hpp"
#include "verify.hpp"

using json = nlohmann::json;
using namespace ndcwt;

namespace {

int g_threads = 0;

void apply_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("NDCWT_THREADS"))
            threads = std::atoi(env);
    }
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    g_threads = threads;
    Eigen::setNbThreads(threads);
}

ComplexFilterPair resolve_wavelet(const std::string& name) {
    if (name.rfind("file:", 0) == 0) return load_filter_file(name.substr(5));
    return get_filter(name);
}

std::pair<int, int> parse_colon_pair(const std::string& s, const char* flag) {
    const auto pos = s.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
        throw std::invalid_argument(std::string(flag) + " expects the form a:b");
    try {
        return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(flag) + " expects integers a:b");
    }
}

FitMethod parse_fit(const std::string& s) {
    if (s == "ols") return FitMethod::Ols;
    if (s == "wls") return FitMethod::Wls;
    if (s == "robust") return FitMethod::TheilSen;
    throw std::invalid_argument("--fit must be one of ols|wls|robust");
}

std::string fit_name(FitMethod m) {
    switch (m) {
        case FitMethod::Ols: return "ols";
        case FitMethod::Wls: return "wls";
        default: return "robust";
    }
}

json base_config(const std::string& subcommand) {
    return json{{"subcommand", subcommand}, {"threads", g_threads}};
}

json document(const std::string& subcommand, json config) {
    config.update(base_config(subcommand));
    return json{{"version", kVersion}, {"config", std::move(config)}};
}

void write_json(const std::string& path, const json& doc) {
    write_text_atomic(path, doc.dump(2) + "\n");
}

json complex_array(const Eigen::Ref<const CVec>& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back({v[i].real(), v[i].imag()});
    return arr;
}

void warn_excluded_levels(const LogscaleDiagram& diag) {
    for (const auto& pt : diag.points)
        if (pt.excluded)
            std::fprintf(stderr,
                         "warning: level %d has zero energy and is excluded "
                         "from fits\n",
                         pt.level);
}

json diagram_json(const LogscaleDiagram& diag) {
    json pts = json::array();
    for (const auto& pt : diag.points) {
        json p{{"level", pt.level}, {"count", pt.count}, {"excluded", pt.excluded}};
        if (pt.excluded)
            p["log2_energy"] = nullptr;
        else
            p["log2_energy"] = pt.log2_energy;
        pts.push_back(std::move(p));
    }
    return pts;
}

json fit_json(const SpectrumFit& fit) {
    json residuals = json::array();
    for (const auto& [j, r] : fit.residuals) residuals.push_back({j, r});
    return json{{"slope", fit.slope},         {"intercept", fit.intercept},
                {"hurst", fit.hurst},         {"level_lo", fit.level_lo},
                {"level_hi", fit.level_hi},   {"method", fit_name(fit.method)},
                {"residuals", residuals}};
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    bool fbm1d = false, fbm2d = false;
    double hurst = 0.5;
    long long length = 0, cols = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    if (a.fbm1d == a.fbm2d)
        throw std::invalid_argument("choose exactly one of --fbm1d / --fbm2d");
    json cfg{{"hurst", a.hurst}, {"length", a.length}, {"seed", a.seed},
             {"kind", a.fbm1d ? "fbm1d" : "fbm2d"}};
    std::vector<std::string> comments = {
        "ndcwt " + std::string(kVersion),
        "config: " + document("simulate", cfg)["config"].dump()};
    if (a.fbm1d) {
        const Eigen::VectorXd y = simulate_fbm_1d(
            {.hurst = a.hurst, .length = a.length, .cols = 0, .seed = a.seed});
        write_signal_csv(a.out, y, comments);
    } else {
        cfg["cols"] = a.cols;
        const Eigen::MatrixXd A = simulate_fbm_2d(
            {.hurst = a.hurst, .length = a.length, .cols = a.cols, .seed = a.seed});
        write_matrix_csv(a.out, A, comments);
    }
    return 0;
}

struct Transform1dArgs {
    std::string input, wavelet = "cdaub6", out;
    int depth = 4;
};

int cmd_transform1d(const Transform1dArgs& a) {
    const auto filter = resolve_wavelet(a.wavelet);
    const CVec y = read_signal_csv(a.input);
    const auto plan = TransformPlan1D(y.size(), a.depth, filter);
    const auto coeffs = plan.forward(y);

    json detail;
    for (int j : coeffs.detail_levels())
        detail[std::to_string(j)] = complex_array(coeffs.detail(j));
    json doc = document("transform1d", {{"input", a.input},
                                        {"wavelet", a.wavelet},
                                        {"depth", a.depth},
                                        {"out", a.out}});
    doc["meta"] = {{"m", coeffs.m},
                   {"p", coeffs.p},
                   {"J", coeffs.J},
                   {"filter", coeffs.filter_name}};
    doc["smooth"] = complex_array(coeffs.smooth());
    doc["detail"] = std::move(detail);
    write_json(a.out, doc);
    return 0;
}

struct Transform2dArgs {
    std::string input, wavelet = "cdaub6", out, payload = "complex128";
    int p1 = 4, p2 = 4;
};

int cmd_transform2d(const Transform2dArgs& a) {
    if (a.payload != "complex128" && a.payload != "complex64")
        throw std::invalid_argument("--payload must be complex128 or complex64");
    const auto filter = resolve_wavelet(a.wavelet);
    const Eigen::MatrixXd A = read_image(a.input);
    const auto plan = TransformPlan2D(A.rows(), A.cols(), a.p1, a.p2, filter);
    const auto coeffs = plan.forward(A);
    write_coefficients2d(a.out, coeffs, a.payload == "complex64");
    std::fprintf(stderr, "wrote %lldx%lld %s coefficients to %s\n",
                 static_cast<long long>(coeffs.B.rows()),
                 static_cast<long long>(coeffs.B.cols()), a.payload.c_str(),
                 a.out.c_str());
    return 0;
}

struct SpectraArgs {
    std::string input, wavelet = "cdaub6", out, mode = "1d", fit = "ols";
    std::string levels, plot_data, detrend = "none";
    int depth = 4, shift = 0;
};

int cmd_spectra(const SpectraArgs& a) {
    if (a.mode != "1d" && a.mode != "2d")
        throw std::invalid_argument("--mode must be 1d or 2d");
    if (a.detrend != "none" && a.detrend != "bridge")
        throw std::invalid_argument("--detrend must be none or bridge");
    const auto filter = resolve_wavelet(a.wavelet);
    const FitMethod method = parse_fit(a.fit);
    std::optional<std::pair<int, int>> range;
    if (!a.levels.empty()) range = parse_colon_pair(a.levels, "--levels");

    LogscaleDiagram diag;
    if (a.mode == "1d") {
        CVec y = read_signal_csv(a.input);
        if (a.detrend == "bridge") {
            if (y.imag().cwiseAbs().maxCoeff() != 0.0)
                throw std::invalid_argument(
                    "--detrend bridge expects a real signal");
            y = bridge_detrend(y.real()).cast<cplx>();
        }
        const auto plan = TransformPlan1D(y.size(), a.depth, filter);
        diag = logscale_1d(plan.forward(y));
    } else {
        Eigen::MatrixXd A = read_image(a.input);
        if (a.detrend == "bridge") A = bridge_detrend2d(A);
        const auto plan = TransformPlan2D(A.rows(), A.cols(), a.depth, a.depth, filter);
        diag = logscale_2d(plan.forward(A), a.shift);
    }
    warn_excluded_levels(diag);
    const auto fit = fit_spectrum(diag, range, method);

    json doc = document("spectra", {{"input", a.input},
                                    {"wavelet", a.wavelet},
                                    {"depth", a.depth},
                                    {"mode", a.mode},
                                    {"shift", a.shift},
                                    {"levels", a.levels},
                                    {"fit", a.fit},
                                    {"detrend", a.detrend},
                                    {"out", a.out}});
    doc["points"] = diagram_json(diag);
    doc["fit"] = fit_json(fit);
    doc["hurst"] = fit.hurst;
    write_json(a.out, doc);

    if (!a.plot_data.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "# level,log2_energy\n";
        for (const auto& pt : diag.points)
            if (!pt.excluded) os << pt.level << "," << pt.log2_energy << "\n";
        write_text_atomic(a.plot_data, os.str());
    }
    return 0;
}

struct PhaseArgs {
    std::string input, wavelet = "cdaub6", out, mode = "1d";
    int depth = 4, shift = 0;
    bool circular = false;
};

int cmd_phase(const PhaseArgs& a) {
    if (a.mode != "1d" && a.mode != "2d")
        throw std::invalid_argument("--mode must be 1d or 2d");
    const auto filter = resolve_wavelet(a.wavelet);
    PhaseSummary summary;
    if (a.mode == "1d") {
        const CVec y = read_signal_csv(a.input);
        const auto plan = TransformPlan1D(y.size(), a.depth, filter);
        summary = phase_averages_1d(plan.forward(y), a.circular);
    } else {
        const Eigen::MatrixXd A = read_image(a.input);
        const auto plan = TransformPlan2D(A.rows(), A.cols(), a.depth, a.depth, filter);
        summary = phase_averages_2d(plan.forward(A), a.shift, a.circular);
    }
    json levels = json::array();
    for (const auto& lvl : summary.per_level)
        levels.push_back({{"level", lvl.level},
                          {"mean", lvl.mean},
                          {"count", lvl.count},
                          {"zero_count", lvl.zero_count}});
    json doc = document("phase", {{"input", a.input},
                                  {"wavelet", a.wavelet},
                                  {"depth", a.depth},
                                  {"mode", a.mode},
                                  {"shift", a.shift},
                                  {"circular", a.circular},
                                  {"out", a.out}});
    doc["levels"] = std::move(levels);
    write_json(a.out, doc);
    return 0;
}

struct FeaturesArgs {
    std::string manifest, wavelet = "cdaub6", out, mode = "1d", segment;
    int depth = 4, shift = 0;
    bool adjust = false;
};

struct ManifestRow {
    std::string path, group, subject;
};

std::vector<ManifestRow> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open manifest " + path);
    std::vector<ManifestRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string p, g, s;
        if (!std::getline(ss, p, ',') || !std::getline(ss, g, ',') ||
            !std::getline(ss, s))
            throw io_error("manifest line needs path,group,subject: '" + line + "'");
        if (first && p == "path") {  // optional header
            first = false;
            continue;
        }
        first = false;
        rows.push_back({p, g, s});
    }
    if (rows.empty()) throw io_error("empty manifest " + path);
    return rows;
}

int cmd_features(const FeaturesArgs& a) {
    if (a.mode != "1d" && a.mode != "2d")
        throw std::invalid_argument("--mode must be 1d or 2d");
    TransformSettings settings;
    settings.wavelet = a.wavelet;
    settings.depth = a.depth;
    settings.mode = a.mode == "1d" ? SpectrumMode::OneD : SpectrumMode::TwoDDiagonal;
    settings.shift = a.shift;
    FeatureExtractor fx(settings);

    std::optional<std::pair<int, int>> seg;
    if (!a.segment.empty()) {
        if (a.mode == "2d")
            throw std::invalid_argument("--segment applies to 1-D signals only");
        seg = parse_colon_pair(a.segment, "--segment");
        if (seg->first < 2 || seg->second < 1)
            throw std::invalid_argument("--segment expects window>=2, step>=1");
    }

    const auto manifest = read_manifest(a.manifest);
    std::vector<FeatureVector> rows;
    for (const auto& entry : manifest) {
        if (settings.mode == SpectrumMode::TwoDDiagonal) {
            auto fv = fx.from_image(read_image(entry.path));
            fv.id = entry.path;
            fv.group = entry.group;
            fv.subject = entry.subject;
            rows.push_back(std::move(fv));
            continue;
        }
        const CVec raw = read_signal_csv(entry.path);
        if (raw.imag().cwiseAbs().maxCoeff() != 0.0)
            throw std::invalid_argument("features expects real signals: " +
                                        entry.path);
        const Eigen::VectorXd y = raw.real();
        if (seg) {
            const auto pieces = segment_signal(y, seg->first, seg->second);
            if (pieces.empty())
                std::fprintf(stderr, "warning: %s shorter than one window, skipped\n",
                             entry.path.c_str());
            for (std::size_t k = 0; k < pieces.size(); ++k) {
                auto fv = fx.from_signal(pieces[k]);
                fv.id = entry.path + "#" + std::to_string(k);
                fv.group = entry.group;
                fv.subject = entry.subject;
                rows.push_back(std::move(fv));
            }
        } else {
            auto fv = fx.from_signal(y);
            fv.id = entry.path;
            fv.group = entry.group;
            fv.subject = entry.subject;
            rows.push_back(std::move(fv));
        }
    }
    if (rows.empty()) throw std::invalid_argument("no feature rows produced");

    for (const auto& fv : rows)
        if (fv.degenerate)
            std::fprintf(stderr, "warning: degenerate features for %s\n",
                         fv.id.c_str());

    const std::size_t nphase = rows.front().phase_means.size();
    for (const auto& fv : rows)
        if (fv.phase_means.size() != nphase)
            throw std::invalid_argument(
                "inconsistent level counts across inputs; use equal sizes per run");

    // column-wise nested-ANOVA adjustment, identical machinery per feature
    std::vector<std::vector<double>> adjusted;
    if (a.adjust) {
        auto adjust_column = [&rows](auto getter) {
            std::vector<Observation> obs;
            obs.reserve(rows.size());
            for (const auto& fv : rows) obs.push_back({fv.group, fv.subject, getter(fv)});
            auto res = subject_adjust(obs);
            for (const auto& w : res.warnings)
                std::fprintf(stderr, "warning: %s\n", w.c_str());
            return std::move(res.adjusted);
        };
        adjusted.push_back(adjust_column([](const FeatureVector& f) { return f.slope; }));
        adjusted.push_back(adjust_column([](const FeatureVector& f) { return f.hurst; }));
        for (std::size_t k = 0; k < nphase; ++k)
            adjusted.push_back(adjust_column(
                [k](const FeatureVector& f) { return f.phase_means[k]; }));
    }

    // header: levels are labelled coarsest to finest
    std::ostringstream os;
    os.precision(17);
    json cfg{{"manifest", a.manifest}, {"wavelet", a.wavelet},
             {"depth", a.depth},       {"mode", a.mode},
             {"shift", a.shift},       {"segment", a.segment},
             {"adjust_subjects", a.adjust}};
    os << "# ndcwt " << kVersion << "\n";
    os << "# config: " << document("features", cfg)["config"].dump() << "\n";
    os << "id,group,subject,slope,hurst";
    const int coarsest = rows.front().first_level;
    for (std::size_t k = 0; k < nphase; ++k)
        os << ",phase_j" << coarsest + static_cast<int>(k);
    if (a.adjust) {
        os << ",slope_adj,hurst_adj";
        for (std::size_t k = 0; k < nphase; ++k)
            os << ",phase_j" << coarsest + static_cast<int>(k) << "_adj";
    }
    os << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& fv = rows[i];
        os << fv.id << "," << fv.group << "," << fv.subject << "," << fv.slope
           << "," << fv.hurst;
        for (double p : fv.phase_means) os << "," << p;
        if (a.adjust) {
            os << "," << adjusted[0][i] << "," << adjusted[1][i];
            for (std::size_t k = 0; k < nphase; ++k) os << "," << adjusted[2 + k][i];
        }
        os << "\n";
    }
    write_text_atomic(a.out, os.str());
    return 0;
}

struct VerifyArgs {
    bool quick = false, bench = false;
};

int cmd_verify(const VerifyArgs& a) {
    auto results = verify::run_suites(a.quick);
    if (a.bench) {
        const auto timed = verify::run_bench();
        results.insert(results.end(), timed.begin(), timed.end());
    }
    return verify::report(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-decimated complex wavelet spectral toolkit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "thread cap (default: NDCWT_THREADS or all cores)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "draw fBm sample paths");
    simulate->add_flag("--fbm1d", sim.fbm1d, "1-D path");
    simulate->add_flag("--fbm2d", sim.fbm2d, "2-D field");
    simulate->add_option("--hurst", sim.hurst, "Hurst exponent in (0,1)")->required();
    simulate->add_option("--length", sim.length, "samples (rows in 2-D)")->required();
    simulate->add_option("--cols", sim.cols, "columns (2-D only)");
    simulate->add_option("--seed", sim.seed, "64-bit seed")->required();
    simulate->add_option("--out", sim.out, "output CSV")->required();

    Transform1dArgs t1;
    auto* transform1d = app.add_subcommand("transform1d", "1-D forward transform");
    transform1d->add_option("--input", t1.input, "signal CSV")->required();
    transform1d->add_option("--wavelet", t1.wavelet, "haar|cdaub6|file:PATH");
    transform1d->add_option("--depth", t1.depth, "detail levels p")->required();
    transform1d->add_option("--out", t1.out, "coefficients JSON")->required();

    Transform2dArgs t2;
    auto* transform2d =
        app.add_subcommand("transform2d", "scale-mixing 2-D forward transform");
    transform2d->add_option("--input", t2.input, "PGM or CSV image")->required();
    transform2d->add_option("--wavelet", t2.wavelet, "haar|cdaub6|file:PATH");
    transform2d->add_option("--depth-rows", t2.p1, "row detail levels")->required();
    transform2d->add_option("--depth-cols", t2.p2, "column detail levels")->required();
    transform2d->add_option("--payload", t2.payload, "complex128|complex64");
    transform2d->add_option("--out", t2.out, "binary coefficients")->required();

    SpectraArgs sp;
    auto* spectra = app.add_subcommand("spectra", "logscale diagram and Hurst fit");
    spectra->add_option("--input", sp.input, "signal or image")->required();
    spectra->add_option("--wavelet", sp.wavelet, "haar|cdaub6|file:PATH");
    spectra->add_option("--depth", sp.depth, "detail levels p")->required();
    spectra->add_option("--mode", sp.mode, "1d|2d");
    spectra->add_option("--shift", sp.shift, "diagonal shift s (2d)");
    spectra->add_option("--levels", sp.levels, "fit range a:b (default all)");
    spectra->add_option("--fit", sp.fit, "ols|wls|robust");
    spectra->add_option("--detrend", sp.detrend, "none|bridge");
    spectra->add_option("--plot-data", sp.plot_data, "two-column CSV for plotting");
    spectra->add_option("--out", sp.out, "spectrum JSON")->required();

    PhaseArgs ph;
    auto* phase = app.add_subcommand("phase", "per-level phase averages");
    phase->add_option("--input", ph.input, "signal or image")->required();
    phase->add_option("--wavelet", ph.wavelet, "haar|cdaub6|file:PATH");
    phase->add_option("--depth", ph.depth, "detail levels p")->required();
    phase->add_option("--mode", ph.mode, "1d|2d");
    phase->add_option("--shift", ph.shift, "diagonal shift s (2d)");
    phase->add_flag("--circular", ph.circular, "circular mean instead of arithmetic");
    phase->add_option("--out", ph.out, "phase JSON")->required();

    FeaturesArgs fe;
    auto* features = app.add_subcommand("features", "extract classification features");
    features->add_option("--manifest", fe.manifest, "CSV of path,group,subject")
        ->required();
    features->add_option("--wavelet", fe.wavelet, "haar|cdaub6|file:PATH");
    features->add_option("--depth", fe.depth, "detail levels p")->required();
    features->add_option("--mode", fe.mode, "1d|2d");
    features->add_option("--shift", fe.shift, "diagonal shift s (2d)");
    features->add_option("--segment", fe.segment,
                         "window:step segmentation (e.g. 1024:100)");
    features->add_flag("--adjust-subjects", fe.adjust,
                       "remove nested subject effects per feature");
    features->add_option("--out", fe.out, "features CSV")->required();

    VerifyArgs ve;
    auto* verify_cmd = app.add_subcommand("verify", "run the built-in oracle suites");
    verify_cmd->add_flag("--quick", ve.quick, "smaller size grid");
    verify_cmd->add_flag("--bench", ve.bench, "timed transform budgets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints the offending flag
        return rc == 0 ? 0 : 2;
    }

    try {
        apply_threads(threads);
        if (*simulate) return cmd_simulate(sim);
        if (*transform1d) return cmd_transform1d(t1);
        if (*transform2d) return cmd_transform2d(t2);
        if (*spectra) return cmd_spectra(sp);
        if (*phase) return cmd_phase(ph);
        if (*features) return cmd_features(fe);
        if (*verify_cmd) return cmd_verify(ve);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

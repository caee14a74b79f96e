#include "zstab/cli.hpp"

#include "zstab/grid.hpp"
#include "zstab/json_writer.hpp"
#include "zstab/method.hpp"
#include "zstab/operators.hpp"
#include "zstab/rational.hpp"
#include "zstab/sim.hpp"
#include "zstab/stability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace zstab::cli {

namespace {

struct OutputTarget {
    std::ostream* stream;
    std::ofstream file;

    explicit OutputTarget(std::ostream& fallback, const std::string& path) {
        if (path.empty()) {
            stream = &fallback;
        } else {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            stream = &file;
        }
    }
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string fmt(double x) { return JsonWriter::format(x); }

/// Strict numeric parse accepting rationals ("5/4"), integers, and decimals.
double parse_number(const std::string& text, bool* was_exact = nullptr) {
    try {
        const Rational r = parse_rational(text);
        if (was_exact) *was_exact = true;
        return to_double(r);
    } catch (const std::exception&) {
    }
    if (was_exact) *was_exact = false;
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad numeric value: " + text);
    return x;
}

// ---------------------------------------------------------------------------
// coeffs / deflate
// ---------------------------------------------------------------------------

struct RowInput {
    method::CoefficientRow row;
    std::optional<method::ExactCoefficientRow> exact;
};

RowInput make_row(int k, const std::vector<std::string>& ratio_texts) {
    method::MethodSpec spec = method::MethodSpec::bdf(k);
    spec.validate();
    if (!ratio_texts.empty() && ratio_texts.size() != static_cast<std::size_t>(k) - 1)
        throw std::invalid_argument("expected " + std::to_string(k - 1) + " ratios for k=" + std::to_string(k));

    RowInput input;
    bool all_exact = true;
    std::vector<Rational> exact_ratios;
    std::vector<double> ratios;
    for (const std::string& text : ratio_texts) {
        bool exact = false;
        ratios.push_back(parse_number(text, &exact));
        if (exact) {
            exact_ratios.push_back(parse_rational(text));
        } else {
            all_exact = false;
        }
    }
    if (ratio_texts.empty()) {
        ratios.assign(static_cast<std::size_t>(k) - 1, 1.0);
        exact_ratios.assign(static_cast<std::size_t>(k) - 1, Rational(1));
    }
    input.row = method::bdf_variable_row<double>(spec, ratios);
    if (all_exact) input.exact = method::bdf_variable_row<Rational>(spec, exact_ratios);
    return input;
}

void write_row_json(const RowInput& input, std::ostream& out) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("coeffs");
    w.key("method").value("bdf");
    w.key("k").value(input.row.k);
    w.key("ratios").value_array(input.row.ratios);
    w.key("alpha").value_array(input.row.alpha);
    w.key("beta").value_array(input.row.beta);
    if (input.exact) {
        auto strings = [](const std::vector<Rational>& xs) {
            std::vector<std::string> out;
            out.reserve(xs.size());
            for (const auto& x : xs) out.push_back(format_rational(x));
            return out;
        };
        w.key("alpha_exact").value_array(strings(input.exact->alpha));
        w.key("beta_exact").value_array(strings(input.exact->beta));
    }
    w.end_object();
    out << w.str() << "\n";
}

void write_values_text(const std::string& label, const std::vector<double>& xs,
                       const std::optional<std::vector<Rational>>& exact, std::ostream& out) {
    out << label << ":";
    if (exact) {
        for (const auto& x : *exact) out << " " << format_rational(x);
    } else {
        for (double x : xs) out << " " << fmt(x);
    }
    out << "\n";
}

int cmd_coeffs(int k, const std::string& ratios_text, const std::string& format,
               const std::string& out_path, std::ostream& fallback) {
    std::vector<std::string> ratio_texts;
    if (!ratios_text.empty()) ratio_texts = split(ratios_text, ',');
    const RowInput input = make_row(k, ratio_texts);
    OutputTarget target(fallback, out_path);
    std::ostream& out = *target.stream;

    if (format == "json") {
        write_row_json(input, out);
    } else if (format == "csv") {
        out << "j,alpha,beta\n";
        for (std::size_t j = 0; j < input.row.alpha.size(); ++j)
            out << j << "," << fmt(input.row.alpha[j]) << "," << fmt(input.row.beta[j]) << "\n";
    } else {
        std::optional<std::vector<Rational>> ea, eb;
        if (input.exact) {
            ea = input.exact->alpha;
            eb = input.exact->beta;
        }
        write_values_text("alpha", input.row.alpha, ea, out);
        write_values_text("beta", input.row.beta, eb, out);
    }
    return 0;
}

RowInput load_row(const std::string& in_path, const std::string& alpha_text) {
    if (!in_path.empty() && !alpha_text.empty())
        throw std::invalid_argument("give either --in or --alpha, not both");
    RowInput input;
    if (!in_path.empty()) {
        std::ifstream f(in_path);
        if (!f) throw std::invalid_argument("cannot open input file: " + in_path);
        nlohmann::json doc = nlohmann::json::parse(f);
        const int k = doc.at("k").get<int>();
        input.row.k = k;
        input.row.alpha = doc.at("alpha").get<std::vector<double>>();
        input.row.beta = doc.at("beta").get<std::vector<double>>();
        if (doc.contains("ratios")) input.row.ratios = doc.at("ratios").get<std::vector<double>>();
        if (doc.contains("alpha_exact")) {
            method::ExactCoefficientRow exact;
            exact.k = k;
            for (const auto& s : doc.at("alpha_exact")) exact.alpha.push_back(parse_rational(s.get<std::string>()));
            if (doc.contains("beta_exact"))
                for (const auto& s : doc.at("beta_exact")) exact.beta.push_back(parse_rational(s.get<std::string>()));
            input.exact = std::move(exact);
        }
        return input;
    }
    if (alpha_text.empty()) throw std::invalid_argument("deflate needs --in or --alpha");
    const auto parts = split(alpha_text, ',');
    method::ExactCoefficientRow exact;
    bool all_exact = true;
    for (const auto& p : parts) {
        bool is_exact = false;
        input.row.alpha.push_back(parse_number(p, &is_exact));
        if (is_exact) {
            exact.alpha.push_back(parse_rational(p));
        } else {
            all_exact = false;
        }
    }
    input.row.k = static_cast<int>(parts.size()) - 1;
    input.row.beta.assign(parts.size(), 0.0);
    input.row.beta.back() = 1.0;
    if (all_exact) {
        exact.k = input.row.k;
        exact.beta.assign(parts.size(), Rational(0));
        exact.beta.back() = Rational(1);
        input.exact = std::move(exact);
    }
    return input;
}

int cmd_deflate(const std::string& in_path, const std::string& alpha_text, const std::string& format,
                const std::string& out_path, std::ostream& fallback) {
    const RowInput input = load_row(in_path, alpha_text);
    const auto gamma = method::deflate_row(input.row).gamma;
    std::optional<std::vector<Rational>> exact_gamma;
    if (input.exact) exact_gamma = method::deflate_row(*input.exact).gamma;

    OutputTarget target(fallback, out_path);
    std::ostream& out = *target.stream;
    if (format == "json") {
        JsonWriter w;
        w.begin_object();
        w.key("schema").value(1);
        w.key("command").value("deflate");
        w.key("k").value(input.row.k);
        w.key("gamma").value_array(gamma);
        if (exact_gamma) {
            std::vector<std::string> strings;
            for (const auto& x : *exact_gamma) strings.push_back(format_rational(x));
            w.key("gamma_exact").value_array(strings);
        }
        w.end_object();
        out << w.str() << "\n";
    } else if (format == "csv") {
        out << "j,gamma\n";
        for (std::size_t j = 0; j < gamma.size(); ++j) out << j << "," << fmt(gamma[j]) << "\n";
    } else {
        write_values_text("gamma", gamma, exact_gamma, out);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

int cmd_analyze(int k, const std::string& grid_text, int n_override, const std::string& out_path,
                std::ostream& fallback) {
    const method::MethodSpec spec = method::MethodSpec::bdf(k);
    const grid::GridMap map = grid::GridMap::parse(grid_text);
    if (!map.bounded_log_derivative)
        throw std::domain_error("grid map has unbounded phi'/phi on [0,1]: no finite stability threshold");
    const grid::RegularityEstimate reg = grid::regularity(map);

    stability::StabilityReport report;
    std::optional<stability::PerturbationSet> pert;
    if (k >= 2) {
        pert = stability::perturbation_matrices(spec);
        report = stability::stability_threshold(spec, *pert, reg.value);
    } else {
        const auto c0 = stability::c0_constant(spec);
        report.k = 1;
        report.q = c0.q;
        report.c0 = c0.c0;
        report.theorem2_bound = c0.theorem2_bound;
        report.m_inf = 1.0;
        report.w_max = std::numeric_limits<double>::infinity();
        report.w_max_linear = report.w_max;
        report.regularity = reg.value;
        report.n_star = 0;
        report.c_phi_bound = c0.c0;
        report.max_root_simple = true;
        report.verdict = "certified";
    }

    const auto roots = stability::extraneous_root_radius(spec);

    OutputTarget target(fallback, out_path);
    std::ostream& out = *target.stream;
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("analyze");
    w.key("method").value("bdf");
    w.key("k").value(k);
    w.key("grid").value(map.name);
    w.key("regularity").value(reg.value);
    w.key("roots");
    w.begin_array();
    for (const auto& z : roots.roots) {
        w.begin_array();
        w.value(z.real());
        w.value(z.imag());
        w.end_array();
    }
    w.end_array();
    w.key("root_residual").value(roots.max_residual);
    w.key("report").raw(report.to_json());
    if (n_override > 0) {
        const double wn = reg.value / n_override;
        w.key("n").value(n_override);
        w.key("w_at_n").value(wn);
        w.key("c_phi_at_n").value(k >= 2 ? stability::certificate_bound(report, wn) : report.c0);
    }
    if (k == 2) {
        const auto window = stability::bdf2_exact_ratio_bound();
        w.key("exact_window");
        w.begin_object();
        w.key("r_max").value(window.r_max);
        w.key("n_star").value(window.n_star(reg.value));
        w.end_object();
    }
    if (k == 3) {
        const auto window = stability::ramp_up_window(*pert);
        w.key("ramp_up");
        w.begin_object();
        w.key("v_max").value(window.v_max);
        w.key("n_star").value(window.n_star(reg.value));
        w.key("ratio_window");
        w.begin_array().value(window.ratio_low()).value(window.ratio_high()).end_array();
        w.key("grigorieff_window");
        w.begin_array().value(0.836).value(1.127).end_array();
        w.end_object();
    }
    w.end_object();
    out << w.str() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// simulate / sweep / convergence
// ---------------------------------------------------------------------------

struct GridChoice {
    std::string grid_text;
    double ratio = 0.0;
    int uniform = 0;

    void require_one() const {
        const int given = (!grid_text.empty() ? 1 : 0) + (ratio > 0.0 ? 1 : 0) + (uniform > 0 ? 1 : 0);
        if (given != 1)
            throw CLI::ValidationError("grid", "give exactly one of --grid, --ratio, --uniform");
    }

    [[nodiscard]] sim::GridSource source() const {
        if (!grid_text.empty()) {
            const auto spec = grid::GridSpec::parse(grid_text);
            return [spec](int N) { return spec.realize(N); };
        }
        if (ratio > 0.0) return sim::constant_ratio_source(ratio);
        return sim::map_source(grid::GridMap::identity());
    }

    [[nodiscard]] std::string describe() const {
        if (!grid_text.empty()) return grid_text;
        if (ratio > 0.0) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "geo:r=%g", ratio);
            return buf;
        }
        return "identity";
    }
};

std::vector<double> make_init(int k, const std::string& policy, unsigned seed) {
    std::vector<double> init(static_cast<std::size_t>(k));
    if (policy == "alternating") {
        for (int j = 0; j < k; ++j) init[static_cast<std::size_t>(j)] = (j % 2 == 0 ? 1.0 : -1.0);
    } else if (policy == "constant") {
        for (auto& x : init) x = 1.0;
    } else if (policy == "random") {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (auto& x : init) x = dist(rng);
    } else {
        throw std::invalid_argument("unknown init policy: " + policy);
    }
    return init;
}

void write_run_json(JsonWriter& w, const sim::RunResult& r) {
    w.begin_object();
    w.key("N").value(r.N);
    w.key("sup_y").value(r.sup_y);
    w.key("sup_u").value(r.sup_u);
    w.key("growth_rate").value(r.growth_rate);
    w.key("initial_norm").value(r.initial_norm);
    w.end_object();
}

int cmd_simulate(int k, const GridChoice& gridsel, int n, const std::string& init_policy,
                 unsigned seed, const std::string& format, const std::string& out_path,
                 std::ostream& fallback) {
    gridsel.require_one();
    const int N = gridsel.uniform > 0 ? gridsel.uniform : n;
    if (N <= 0) throw std::invalid_argument("simulate needs --n (or --uniform N)");
    const method::MethodSpec spec = method::MethodSpec::bdf(k);
    const grid::Grid g = gridsel.source()(N);
    const auto init = make_init(k, init_policy, seed);
    const sim::RunResult r = sim::run_homogeneous(spec, g, init);

    OutputTarget target(fallback, out_path);
    std::ostream& out = *target.stream;
    if (format == "csv") {
        out << "N,sup_y,sup_u,growth_rate\n"
            << r.N << "," << fmt(r.sup_y) << "," << fmt(r.sup_u) << "," << fmt(r.growth_rate) << "\n";
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("schema").value(1);
        w.key("command").value("simulate");
        w.key("method").value("bdf");
        w.key("k").value(k);
        w.key("grid").value(gridsel.describe());
        w.key("init").value(init_policy);
        w.key("run");
        write_run_json(w, r);
        w.end_object();
        out << w.str() << "\n";
    }
    return 0;
}

int cmd_sweep(int k, const GridChoice& gridsel, int nmin, int nmax, int doublings, unsigned seed,
              int jobs, const std::string& format, const std::string& out_path,
              std::ostream& fallback) {
    gridsel.require_one();
    if (nmin < 2) throw std::invalid_argument("--nmin must be at least 2");
    if (nmax > 0) {
        if (nmax < 8 * nmin) throw std::invalid_argument("--nmax must allow at least 3 doublings of --nmin");
        doublings = 0;
        for (long nn = nmin; 2 * nn <= nmax; nn *= 2) ++doublings;
    }
    if (doublings < 3) throw std::invalid_argument("--doublings must be at least 3 (4 grid sizes)");
    const method::MethodSpec spec = method::MethodSpec::bdf(k);

    sim::SweepConfig cfg;
    cfg.seed = seed;
    cfg.jobs = jobs;
    for (int i = 0, N = nmin; i <= doublings; ++i, N *= 2) cfg.Ns.push_back(N);
    const sim::SweepResult result = sim::boundedness_sweep(spec, gridsel.source(), cfg);

    OutputTarget target(fallback, out_path);
    std::ostream& out = *target.stream;
    if (format == "csv") {
        sim::write_sweep_csv(result, out);
        out << "# verdict: " << sim::to_string(result.verdict) << "\n";
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("schema").value(1);
        w.key("command").value("sweep");
        w.key("method").value("bdf");
        w.key("k").value(k);
        w.key("grid").value(gridsel.describe());
        w.key("seed").value(std::size_t(seed));
        w.key("runs");
        w.begin_array();
        for (const auto& r : result.runs) write_run_json(w, r);
        w.end_array();
        w.key("verdict").value(sim::to_string(result.verdict));
        w.key("criterion").value("normalized sup ratio <= 1.05 per N-doubling (heuristic)");
        w.end_object();
        out << w.str() << "\n";
    }
    return 0;
}

int cmd_convergence(int k, const std::string& grid_text, const std::string& ns_text,
                    const std::string& integrand, const std::string& format,
                    const std::string& out_path, std::ostream& fallback) {
    const method::MethodSpec spec = method::MethodSpec::bdf(k);
    const auto gspec = grid::GridSpec::parse(grid_text);
    std::vector<int> Ns;
    for (const auto& part : split(ns_text, ',')) Ns.push_back(std::stoi(part));

    std::function<double(double)> f, F;
    if (integrand == "exp") {
        f = [](double t) { return std::exp(t); };
        F = [](double t) { return std::exp(t); };
    } else if (integrand == "cos") {
        f = [](double t) { return std::cos(2.0 * M_PI * t); };
        F = [](double t) { return std::sin(2.0 * M_PI * t) / (2.0 * M_PI); };
    } else if (integrand.rfind("poly:", 0) == 0) {
        const int d = std::stoi(integrand.substr(5));
        if (d < 0) throw std::invalid_argument("polynomial degree must be nonnegative");
        f = [d](double t) { return (d + 1) * std::pow(t, d); };
        F = [d](double t) { return std::pow(t, d + 1); };
    } else {
        throw std::invalid_argument("unknown integrand (use exp, cos, or poly:<degree>)");
    }

    const auto result = sim::quadrature_convergence(
        spec, [&gspec](int N) { return gspec.realize(N); }, f, F, Ns);

    OutputTarget target(fallback, out_path);
    std::ostream& out = *target.stream;
    if (format == "csv") {
        out << "N,error\n";
        for (std::size_t i = 0; i < result.Ns.size(); ++i)
            out << result.Ns[i] << "," << fmt(result.errors[i]) << "\n";
        out << "# fitted_order: " << fmt(result.fitted_order) << "\n";
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("schema").value(1);
        w.key("command").value("convergence");
        w.key("method").value("bdf");
        w.key("k").value(k);
        w.key("grid").value(grid_text);
        w.key("integrand").value(integrand);
        w.key("Ns").value_array(result.Ns);
        w.key("errors").value_array(result.errors);
        w.key("fitted_order").value(result.fitted_order);
        w.end_object();
        out << w.str() << "\n";
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"zstab: zero-stability analysis of multistep methods on smooth nonuniform grids"};
    app.require_subcommand(1);

    int k = 2;
    std::string method_name = "bdf";
    std::string format = "text";
    std::string out_path;
    std::string grid_text;
    std::string ratios_text;
    std::string alpha_text;
    std::string in_path;
    std::string init_policy = "alternating";
    std::string ns_text = "50,100,200,400";
    std::string integrand = "exp";
    GridChoice gridsel;
    int n = 0, nmin = 50, nmax = 0, doublings = 3, jobs = 1, n_override = 0;
    unsigned seed = 12345;

    auto add_method = [&](CLI::App* cmd) {
        cmd->add_option("--method", method_name, "method family (bdf)")->check(CLI::IsMember({"bdf"}));
        cmd->add_option("--k", k, "step number, 1..6")->required();
    };
    auto add_output = [&](CLI::App* cmd, const std::string& formats) {
        cmd->add_option("--format", format, "output format (" + formats + ")");
        cmd->add_option("--out", out_path, "write output to this path instead of stdout");
    };

    CLI::App* coeffs = app.add_subcommand("coeffs", "variable-step coefficient row");
    add_method(coeffs);
    coeffs->add_option("--ratios", ratios_text,
                       "comma-separated k-1 step ratios (rationals like 5/4 keep exact mode); "
                       "default: unit ratios (constant-step row)");
    add_output(coeffs, "text|json|csv; csv columns: j,alpha,beta");

    CLI::App* deflate = app.add_subcommand("deflate", "divide an alpha row by (-1, 1)");
    deflate->add_option("--in", in_path, "coeffs JSON file to re-ingest");
    deflate->add_option("--alpha", alpha_text, "comma-separated alpha row");
    add_output(deflate, "text|json|csv; csv columns: j,gamma");

    CLI::App* analyze = app.add_subcommand("analyze", "stability certificate for a method/grid pair");
    add_method(analyze);
    analyze->add_option("--grid", grid_text, "grid map (identity | exp:c=C | poly:a=A | sigmoid:s=S)")
        ->required();
    analyze->add_option("--n", n_override, "also report the certificate bound at this step count");
    add_output(analyze, "json");

    CLI::App* simulate = app.add_subcommand("simulate", "run the homogeneous recursion once");
    add_method(simulate);
    simulate->add_option("--grid", gridsel.grid_text, "grid map or geo:r=R (needs --n)");
    simulate->add_option("--ratio", gridsel.ratio, "constant step ratio (needs --n)");
    simulate->add_option("--uniform", gridsel.uniform, "uniform grid with this many steps");
    simulate->add_option("--n", n, "number of steps for --grid/--ratio");
    simulate->add_option("--init", init_policy, "start values: alternating|constant|random");
    simulate->add_option("--seed", seed, "seed for random start values");
    add_output(simulate, "json|csv; csv columns: N,sup_y,sup_u,growth_rate");

    CLI::App* sweep = app.add_subcommand("sweep", "boundedness verdict over an N-doubling sweep");
    add_method(sweep);
    sweep->add_option("--grid", gridsel.grid_text, "grid map or geo:r=R");
    sweep->add_option("--ratio", gridsel.ratio, "constant step ratio family");
    sweep->add_option("--uniform", gridsel.uniform, "uniform grids (value ignored beyond > 0)");
    sweep->add_option("--nmin", nmin, "smallest step count");
    sweep->add_option("--nmax", nmax, "largest step count (alternative to --doublings)");
    sweep->add_option("--doublings", doublings, "number of doublings after --nmin (>= 3)");
    sweep->add_option("--seed", seed, "seed for the random init policy");
    sweep->add_option("--jobs", jobs, "parallel grid evaluations");
    add_output(sweep, "json|csv; csv columns: N,sup_y,sup_u,growth_rate, then '# verdict: ...'");

    CLI::App* convergence = app.add_subcommand("convergence", "quadrature order verification");
    add_method(convergence);
    convergence->add_option("--grid", grid_text, "grid map or geo:r=R")->required();
    convergence->add_option("--ns", ns_text, "comma-separated step counts");
    convergence->add_option("--integrand", integrand, "exp | cos | poly:<degree>");
    add_output(convergence, "json|csv; csv columns: N,error, then '# fitted_order: ...'");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (coeffs->parsed()) return cmd_coeffs(k, ratios_text, format, out_path, out);
        if (deflate->parsed()) return cmd_deflate(in_path, alpha_text, format, out_path, out);
        if (analyze->parsed()) return cmd_analyze(k, grid_text, n_override, out_path, out);
        if (simulate->parsed())
            return cmd_simulate(k, gridsel, n, init_policy, seed, format, out_path, out);
        if (sweep->parsed())
            return cmd_sweep(k, gridsel, nmin, nmax, doublings, seed, jobs, format, out_path, out);
        if (convergence->parsed())
            return cmd_convergence(k, grid_text, ns_text, integrand, format, out_path, out);
        err << "no subcommand given\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        JsonWriter w;
        w.begin_object();
        w.key("schema").value(1);
        w.key("error").value(std::string(e.what()));
        w.end_object();
        out << w.str() << "\n";
        return 1;
    }
}

}  // namespace zstab::cli

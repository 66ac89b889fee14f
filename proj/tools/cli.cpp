#include "cli.hpp"

#include "ldpcgm/asymptotics.hpp"
#include "ldpcgm/density_evolution.hpp"
#include "ldpcgm/enumerator.hpp"
#include "ldpcgm/errors.hpp"
#include "ldpcgm/format.hpp"
#include "ldpcgm/simulator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ldpcgm::cli {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

struct Options {
    std::string config;
    double j = 4;
    int k = 8;
    long n = 0;
    std::vector<double> q;
    double epsilon = 0.1;
    double p = 0;
    int grid = 0;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string out;
    bool base2 = false;
    std::vector<std::string> decoders{"bp"};
    std::string construction;
    std::string base = "check-regular";
    std::size_t degree_cap = 0;
    double delta_l = 0;
    double design_q = 0;
    std::optional<double> channel;
    bool log2 = false;
    long exact_cap = 2048;
    std::string coeffs;
    std::size_t max_iterations = 0;
    std::size_t threads = 1;
};

/// Resolved configuration written as comment lines ahead of the results.
class Header {
public:
    explicit Header(std::string command) { add("command", std::move(command)); }
    void add(const std::string& key, std::string value) { items_.emplace_back(key, std::move(value)); }
    void add(const std::string& key, double value) { add(key, format_double(value)); }
    void add_int(const std::string& key, long long value) { add(key, std::to_string(value)); }
    void add_list(const std::string& key, const std::vector<double>& values) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_double(values[i]);
        add(key, s);
    }

    void write(std::ostream& os) const {
        os << "# ldpcgm " << LDPCGM_VERSION << '\n';
        for (const auto& [k, v] : items_) os << "# " << k << '=' << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

void emit(const Options& opt, const Header& header, const std::string& body, std::ostream& out) {
    if (opt.out.empty()) {
        header.write(out);
        out << body;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + opt.out + "'");
    header.write(f);
    f << body;
    f.close();
    if (!f) throw std::runtime_error("failed writing output file '" + opt.out + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << content;
    f.close();
    if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

double single_q(const Options& opt, const char* what) {
    if (opt.q.size() != 1) throw ValidationError(std::string(what) + " takes exactly one --q value");
    return opt.q.front();
}

// --- growth-rate -------------------------------------------------------------

void growth_rate(const Options& opt, std::ostream& out) {
    const asymptotics::Degrees deg(opt.j, opt.k);
    deg.validate();
    const int grid = opt.grid ? opt.grid : 512;
    if (grid < 2) throw ValidationError("--grid must be at least 2");
    Header h("growth-rate");
    h.add("j", opt.j);
    h.add_int("k", opt.k);
    h.add_int("grid", grid);
    h.add_int("base2", opt.base2);

    const double rate = deg.outer_rate();
    const double scale = opt.base2 ? 1.0 / kLn2 : 1.0;
    std::ostringstream body;
    body << "a,w_o,w_ub,random_coding_exponent\n";
    for (int i = 0; i < grid; ++i) {
        const double a = static_cast<double>(i) / (grid - 1);
        const double reference = asymptotics::binary_entropy(a) - (1.0 - rate) * kLn2;
        body << format_double(a) << ',' << format_double(scale * asymptotics::w_o(deg, a)) << ','
             << format_double(scale * asymptotics::w_ub(deg, a)) << ',' << format_double(scale * reference) << '\n';
    }
    emit(opt, h, body.str(), out);
}

// --- enumerate -----------------------------------------------------------------

void enumerate(const Options& opt, std::ostream& out) {
    if (std::floor(opt.j) != opt.j) throw ValidationError("enumerate needs an integer --j");
    const LdpcParams params{opt.n, static_cast<long>(opt.j), opt.k};
    params.validate();
    if (opt.n > opt.exact_cap)
        throw ValidationError("n = " + std::to_string(opt.n) + " exceeds the exact-mode cap " +
                              std::to_string(opt.exact_cap) +
                              "; exact tables grow roughly cubically in n, raise --exact-cap to proceed anyway");
    Header h("enumerate");
    h.add_int("n", opt.n);
    h.add_int("j", params.j);
    h.add_int("k", opt.k);
    h.add_int("log2", opt.log2);

    const auto outer = ldpc_awd_table(params);
    const auto concat = concat_awd_ub_table(params);
    std::ostringstream body;
    if (opt.log2) {
        body << "table,l,log2_value\n";
        write_log2_rows(body, outer, "ldpc,");
        write_log2_rows(body, concat, "concat_ub,");
    } else {
        body << "table,l,numerator,denominator\n";
        write_exact_rows(body, outer, "ldpc,");
        write_exact_rows(body, concat, "concat_ub,");
    }
    emit(opt, h, body.str(), out);
}

// --- de ---------------------------------------------------------------------------

de::Construction parse_construction(const std::string& name) {
    if (name == "check-regular") return de::Construction::CheckRegular;
    if (name == "variable-regular") return de::Construction::VariableRegular;
    if (name == "punctured") return de::Construction::Punctured;
    throw ValidationError("unknown construction '" + name + "'");
}

struct BuiltSpec {
    de::EnsembleSpec spec;
    std::optional<de::DegreeDistribution> coefficients;  // outer distribution that was expanded
    std::size_t clamped = 0, negative = 0;
    double min_raw_coefficient = 0;
    std::optional<double> closed_form_discrepancy;
    std::size_t degree_cap = 0;
};

BuiltSpec build_base(de::Construction c, int k, double q, double epsilon, std::size_t cap) {
    BuiltSpec b;
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ValidationError("--epsilon must lie in [0, 1)");
    if (c == de::Construction::CheckRegular) {
        if (k < 3) throw ValidationError("check-regular construction needs k >= 3");
        if (k == 3 && !(q >= 12.0 / 13.0 && q < 1.0))
            throw ValidationError("check-regular construction with k = 3 is valid for q in [12/13, 1)");
        if (!(q > 0.0 && q < 1.0)) throw ValidationError("--q must lie in (0, 1)");
        b.degree_cap = cap ? cap : 400;
        if (epsilon == 0.0) {
            b.spec = de::check_regular_spec(k, q);
            return b;
        }
        auto series = de::check_regular_lambda(k, q, b.degree_cap);
        if (series.negative > 0)
            throw ValidationError("check-regular series for k = " + std::to_string(k) + " has " +
                                  std::to_string(series.negative) + " negative coefficients (min " +
                                  format_double(series.min_raw_coefficient) + "); not a valid degree distribution");
        b.clamped = series.clamped;
        b.negative = series.negative;
        b.min_raw_coefficient = series.min_raw_coefficient;
        b.coefficients = series.distribution;
        b.spec = de::truncate_check_regular(series.distribution, k, q, epsilon);
        return b;
    }
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("--q must lie in (0, 1)");
    b.degree_cap = cap ? cap : (std::size_t{1} << 18);
    if (epsilon == 0.0) {
        b.spec = de::variable_regular_spec(q);
        return b;
    }
    auto rho = de::variable_regular_rho(q, b.degree_cap);
    b.clamped = rho.series.clamped;
    b.negative = rho.series.negative;
    b.min_raw_coefficient = rho.series.min_raw_coefficient;
    b.closed_form_discrepancy = rho.closed_form_discrepancy;
    b.coefficients = rho.series.distribution;
    b.spec = de::truncate_variable_regular(rho.series.distribution, q, epsilon);
    return b;
}

void density(const Options& opt, std::ostream& out) {
    de::Construction c = parse_construction(opt.construction.empty() ? "check-regular" : opt.construction);
    const double q = single_q(opt, "de");
    de::Construction base = c;
    if (c == de::Construction::Punctured) {
        base = parse_construction(opt.base);
        if (base == de::Construction::Punctured) throw ValidationError("--base must be check-regular or variable-regular");
        if (!(opt.p >= 0.0 && opt.p <= q && opt.p < 1.0)) throw ValidationError("--p must lie in [0, q] and below 1");
        // without puncturing the ensemble is the base ensemble
        if (opt.p == 0.0) c = base;
    } else if (opt.p != 0.0) {
        throw ValidationError("--p applies only to the punctured construction");
    }

    BuiltSpec built = build_base(base, opt.k, q, opt.epsilon, opt.degree_cap);
    de::EnsembleSpec spec = c == de::Construction::Punctured ? de::punctured_spec(built.spec, q, opt.p) : built.spec;
    const int grid = opt.grid ? opt.grid : 10000;
    if (grid < 1000) throw ValidationError("--grid must be at least 1000 for the fixed-point margin");
    const std::size_t max_iter = opt.max_iterations ? opt.max_iterations : 100000;

    Header h("de");
    h.add("construction", de::to_string(c));
    if (c == de::Construction::Punctured) {
        h.add("base", de::to_string(base));
        h.add("p", opt.p);
    }
    if (base == de::Construction::CheckRegular) h.add_int("k", opt.k);
    h.add("q", q);
    h.add("epsilon", opt.epsilon);
    if (opt.epsilon > 0.0) h.add_int("degree_cap", static_cast<long long>(built.degree_cap));
    h.add_int("grid", grid);
    h.add_int("max_iterations", static_cast<long long>(max_iter));
    if (opt.channel) h.add("channel", *opt.channel);
    if (!opt.coeffs.empty()) h.add("coeffs", opt.coeffs);

    const auto margin = de::fixed_point_margin(spec, grid);
    const double channel = opt.channel ? *opt.channel : spec.q;
    if (!(channel >= 0.0 && channel <= 1.0)) throw ValidationError("--channel must lie in [0, 1]");
    const auto run = de::run_de(spec, channel, max_iter);
    const auto cx = de::decoding_complexity(spec);

    std::ostringstream body;
    body << "key,value\n";
    auto row = [&](const char* key, const std::string& v) { body << key << ',' << v << '\n'; };
    row("channel_q", format_double(spec.q));
    row("design_q", format_double(spec.design_q));
    row("rate", format_double(spec.rate));
    row("capacity_fraction", format_double(spec.rate / (1.0 - spec.q)));
    row("lambda_integral", format_double(spec.lambda_integral));
    row("rho_integral", format_double(spec.rho_integral));
    if (spec.lambda_integral > 0.0) row("integral_ratio", format_double(spec.rho_integral / spec.lambda_integral));
    if (opt.epsilon > 0.0) {
        row("truncation_degree", std::to_string(spec.truncation_degree));
        row("pilot_fraction", format_double(spec.pilot_fraction));
        row("min_raw_coefficient", format_double(built.min_raw_coefficient));
        row("clamped_coefficients", std::to_string(built.clamped));
        row("negative_coefficients", std::to_string(built.negative));
    }
    if (built.closed_form_discrepancy) row("closed_form_discrepancy", format_double(*built.closed_form_discrepancy));
    row("fixed_point_margin", format_double(margin.margin));
    row("margin_argmin", format_double(margin.argmin));
    row("de_channel_q", format_double(channel));
    row("de_iterations", std::to_string(run.iterations));
    row("de_converged", run.converged ? "1" : "0");
    row("de_final_x3", format_double(run.final_state.x3));
    row("de_success", run.success ? "1" : "0");
    row("complexity_bound", format_double(cx.bound));
    row("complexity_achieved", format_double(cx.achieved));
    emit(opt, h, body.str(), out);

    if (!opt.coeffs.empty()) {
        if (!built.coefficients) throw ValidationError("--coeffs needs a truncated ensemble (epsilon > 0)");
        std::ostringstream cs;
        h.write(cs);
        cs << "degree,coefficient\n";
        const auto& raw = built.coefficients->coefficients();
        const std::size_t keep = std::min<std::size_t>(raw.size(), static_cast<std::size_t>(spec.truncation_degree) + 1);
        de::write_coefficients(cs, de::DegreeDistribution(std::vector<double>(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(keep)),
                                                          built.coefficients->perspective(), false));
        write_file(opt.coeffs, cs.str());
    }
}

// --- simulate ------------------------------------------------------------------------

void simulate(const Options& opt, std::ostream& out) {
    sim::SweepConfig cfg;
    Header h("simulate");
    const std::string construction = opt.construction.empty() ? "gallager" : opt.construction;
    h.add("construction", construction);
    if (construction == "gallager") {
        if (std::floor(opt.j) != opt.j) throw ValidationError("simulate needs an integer --j");
        LdpcParams params{opt.n, static_cast<long>(opt.j), opt.k};
        params.validate();
        cfg.ensemble = params;
        h.add_int("n", opt.n);
        h.add_int("j", params.j);
        h.add_int("k", opt.k);
    } else {
        const auto c = parse_construction(construction);
        if (c == de::Construction::Punctured) throw ValidationError("punctured ensembles cannot be sampled");
        if (opt.epsilon <= 0.0) throw ValidationError("sampling needs a truncated ensemble (epsilon > 0)");
        if (opt.n < 2) throw ValidationError("--n must be at least 2");
        BuiltSpec built = build_base(c, opt.k, opt.design_q, opt.epsilon, opt.degree_cap);
        cfg.ensemble = sim::IrregularEnsemble{built.spec, static_cast<std::size_t>(opt.n)};
        h.add_int("n", opt.n);
        if (c == de::Construction::CheckRegular) h.add_int("k", opt.k);
        h.add("design_q", built.spec.design_q);
        h.add("epsilon", opt.epsilon);
        h.add_int("degree_cap", static_cast<long long>(built.degree_cap));
    }
    for (double q : opt.q)
        if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("--q values must lie in [0, 1]");
    cfg.q_grid = opt.q;
    cfg.trials = opt.trials;
    cfg.master_seed = opt.seed;
    cfg.threads = opt.threads;
    cfg.max_iterations = opt.max_iterations ? opt.max_iterations : 1000;
    cfg.decoders.clear();
    std::string decoders;
    for (const auto& d : opt.decoders) {
        cfg.decoders.push_back(d == "ml" ? sim::DecoderKind::MaximumLikelihood : sim::DecoderKind::BeliefPropagation);
        decoders += (decoders.empty() ? "" : ",") + d;
    }
    h.add_list("q", opt.q);
    h.add_int("trials", static_cast<long long>(opt.trials));
    h.add("seed", std::to_string(opt.seed));
    h.add("decoder", decoders);
    h.add_int("max_iterations", static_cast<long long>(cfg.max_iterations));

    std::ostringstream body;
    body << "q,decoder,trials,bit_failures,block_failures,ci_low,ci_high,seed\n";
    sim::write_sweep_rows(body, sim::monte_carlo(cfg));
    emit(opt, h, body.str(), out);
}

// --- threshold -------------------------------------------------------------------------

void threshold(const Options& opt, std::ostream& out) {
    const asymptotics::Degrees deg(opt.j, opt.k);
    deg.validate();
    const int grid = opt.grid ? opt.grid : 400;
    Header h("threshold");
    h.add("j", opt.j);
    h.add_int("k", opt.k);
    h.add("delta_l", opt.delta_l);
    h.add_int("grid", grid);
    if (opt.n > 0) {
        h.add_int("n", opt.n);
        h.add_list("q", opt.q);
    }

    const auto r = asymptotics::threshold_report(deg, opt.delta_l, grid);
    std::ostringstream body;
    body << "key,value\n";
    auto row = [&](const std::string& key, const std::string& v) { body << key << ',' << v << '\n'; };
    auto opt_row = [&](const std::string& key, const std::optional<double>& v) {
        row(key, v ? format_double(*v) : std::string("none"));
    };
    row("outer_rate", format_double(deg.outer_rate()));
    opt_row("delta_o", r.delta_o);
    opt_row("delta_prime", r.delta_prime);
    row("delta_gv", format_double(r.delta_gv));
    row("guaranteed_rate", format_double(r.guaranteed_rate));
    row("graphical_complexity", format_double(asymptotics::graphical_complexity(deg)));
    row("delta_l", format_double(r.delta_l));
    row("k_min", std::to_string(r.k_min));
    row("curvature_k", std::to_string(r.curvature_k));
    row("m_estimate", std::to_string(r.m_estimate));

    if (opt.n > 0) {
        if (std::floor(opt.j) != opt.j) throw ValidationError("the ML bound needs an integer --j");
        if (opt.n > opt.exact_cap)
            throw ValidationError("n = " + std::to_string(opt.n) + " exceeds the exact-mode cap " +
                                  std::to_string(opt.exact_cap) + "; raise --exact-cap to proceed anyway");
        const LdpcParams params{opt.n, static_cast<long>(opt.j), opt.k};
        params.validate();
        const auto spectrum = concat_awd_ub_table(params);
        for (double q : opt.q) {
            const auto ml = asymptotics::ml_union_bound(params, asymptotics::Channel::bec(q), spectrum);
            const std::string p = "ml_bec_" + format_double(q) + "_";
            row(p + "bhattacharyya", format_double(ml.bhattacharyya));
            row(p + "low_high_count", std::to_string(ml.low_high_count));
            row(p + "term1", format_double(ml.term1));
            opt_row(p + "log_alpha", ml.log_alpha);
            opt_row(p + "term2", ml.term2);
            row(p + "spectrum_excess", format_double(ml.spectrum_excess));
        }
    }
    emit(opt, h, body.str(), out);
}

/// Splices `key = value` lines from a --config file into the argument list
/// right after the subcommand. Keys also given on the command line are skipped,
/// so flags win. Section headers are optional; a section names the subcommand
/// its keys apply to.
std::vector<std::string> expand_config(int argc, const char* const* argv, const CLI::App& app) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;

    std::size_t sub = args.size();
    for (std::size_t i = 0; i < args.size() && sub == args.size(); ++i)
        for (const auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
            if (args[i] == s->get_name()) sub = i;
    if (sub == args.size()) throw ValidationError("--config needs a subcommand");

    std::ifstream probe(path);
    if (!probe) throw ValidationError("cannot read config file '" + path + "'");
    probe.close();
    const auto items = CLI::ConfigINI().from_file(path);

    std::vector<std::string> injected;
    for (const auto& item : items) {
        if (!item.parents.empty() && item.parents.front() != args[sub]) continue;
        if (item.name.empty() || item.name == "++" || item.name == "--") continue;
        const std::string flag = "--" + item.name;
        bool on_command_line = false;
        for (const auto& a : args) on_command_line |= a == flag || a.rfind(flag + "=", 0) == 0;
        if (on_command_line) continue;
        std::string value;
        for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
        injected.push_back(flag + "=" + value);
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, injected.begin(), injected.end());
    return args;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Weight enumerators, thresholds, density evolution and simulation for LDPC-GM ensembles", "ldpcgm"};
    app.set_version_flag("--version", std::string(LDPCGM_VERSION));
    app.require_subcommand(1);
    app.add_option("--config", opt.config, "Plain key=value file; command-line flags take precedence");

    const auto decoder_check = CLI::IsMember({"bp", "ml"});
    const auto construction_check = CLI::IsMember({"check-regular", "variable-regular", "punctured"});

    auto* gr = app.add_subcommand("growth-rate", "w_o, w_ub and the random-coding reference on a uniform grid");
    gr->add_option("--j", opt.j, "Variable degree (may be fractional)")->capture_default_str();
    gr->add_option("--k", opt.k, "Check degree (even)")->capture_default_str();
    gr->add_option("--grid", opt.grid, "Grid points on [0, 1] (default 512)");
    gr->add_flag("--base2", opt.base2, "Divide all curves by ln 2");
    gr->add_option("--out", opt.out, "Output path (default stdout)");

    auto* en = app.add_subcommand("enumerate", "Exact outer and concatenated weight tables");
    en->add_option("--n", opt.n, "Block length")->required();
    en->add_option("--j", opt.j)->capture_default_str();
    en->add_option("--k", opt.k)->capture_default_str();
    en->add_option("--exact-cap", opt.exact_cap, "Largest n accepted")->capture_default_str();
    en->add_flag("--log2", opt.log2, "Write log2 values instead of exact fractions");
    en->add_option("--out", opt.out);

    auto* dcmd = app.add_subcommand("de", "Density evolution report for a capacity-achieving construction");
    dcmd->add_option("--construction", opt.construction, "check-regular (default), variable-regular or punctured")
        ->check(construction_check);
    dcmd->add_option("--base", opt.base, "Base construction of a punctured ensemble")->capture_default_str();
    dcmd->add_option("--k", opt.k, "Check degree of the check-regular construction (default 3)");
    dcmd->add_option("--q", opt.q, "Design erasure probability")->required();
    dcmd->add_option("--epsilon", opt.epsilon, "Gap to capacity; 0 disables truncation")->capture_default_str();
    dcmd->add_option("--p", opt.p, "Puncturing probability of the inner code")->capture_default_str();
    dcmd->add_option("--degree-cap", opt.degree_cap, "Series length (default 400 or 262144)");
    dcmd->add_option("--grid", opt.grid, "Fixed-point margin grid (default 10000)");
    dcmd->add_option("--max-iterations", opt.max_iterations, "DE iteration limit (default 100000)");
    dcmd->add_option("--channel", opt.channel, "Erasure probability for the DE run (default: the ensemble's channel)");
    dcmd->add_option("--coeffs", opt.coeffs, "Also write the expanded outer coefficients as CSV");
    dcmd->add_option("--out", opt.out);

    auto* sm = app.add_subcommand("simulate", "Monte Carlo sweep over erasure probabilities");
    sm->add_option("--construction", opt.construction,
                   "gallager (default), check-regular or variable-regular")
        ->check(CLI::IsMember({"gallager", "check-regular", "variable-regular"}));
    sm->add_option("--n", opt.n, "Block length")->required();
    sm->add_option("--j", opt.j)->capture_default_str();
    sm->add_option("--k", opt.k)->capture_default_str();
    sm->add_option("--q", opt.q, "Erasure probabilities")->required()->delimiter(',');
    sm->add_option("--design-q", opt.design_q, "Design erasure probability of an irregular ensemble");
    sm->add_option("--epsilon", opt.epsilon)->capture_default_str();
    sm->add_option("--degree-cap", opt.degree_cap);
    sm->add_option("--trials", opt.trials)->capture_default_str();
    sm->add_option("--seed", opt.seed)->capture_default_str();
    sm->add_option("--decoder", opt.decoders, "bp, ml or both")->delimiter(',')->check(decoder_check);
    sm->add_option("--max-iterations", opt.max_iterations, "BP iteration limit (default 1000)");
    sm->add_option("--threads", opt.threads, "Worker threads; results do not depend on it")->capture_default_str();
    sm->add_option("--out", opt.out);

    auto* th = app.add_subcommand("threshold", "delta_o, delta_prime, delta_GV and the certified degree");
    th->add_option("--j", opt.j)->capture_default_str();
    th->add_option("--k", opt.k)->capture_default_str();
    th->add_option("--delta-l", opt.delta_l, "Lower distance target (default half the GV distance)");
    th->add_option("--grid", opt.grid, "Certificate grid (default 400)");
    th->add_option("--n", opt.n, "Also evaluate the ML union bound at this block length");
    th->add_option("--q", opt.q, "BEC erasure probabilities for the ML bound")->delimiter(',');
    th->add_option("--exact-cap", opt.exact_cap)->capture_default_str();
    th->add_option("--out", opt.out);

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv, app);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (gr->parsed()) growth_rate(opt, out);
        else if (en->parsed()) enumerate(opt, out);
        else if (dcmd->parsed()) {
            if (dcmd->count("--k") == 0) opt.k = 3;
            density(opt, out);
        }
        else if (sm->parsed()) {
            if (opt.construction != "" && opt.construction != "gallager" && opt.design_q <= 0.0)
                throw ValidationError("--design-q is required for irregular ensembles");
            simulate(opt, out);
        } else if (th->parsed()) {
            if (opt.n > 0 && opt.q.empty()) throw ValidationError("--n needs at least one --q for the ML bound");
            threshold(opt, out);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace ldpcgm::cli

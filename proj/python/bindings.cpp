#include "ldpcgm/asymptotics.hpp"
#include "ldpcgm/density_evolution.hpp"
#include "ldpcgm/enumerator.hpp"
#include "ldpcgm/errors.hpp"
#include "ldpcgm/polynomial.hpp"
#include "ldpcgm/simulator.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ldpcgm;

namespace {

// Exact values cross the boundary as decimal strings; the Python layer
// turns them into int / Fraction.
std::vector<std::string> poly_strings(const ExactPolynomial& p) {
    std::vector<std::string> out;
    for (const auto& c : p.coefficients()) out.push_back(c.get_str());
    return out;
}

std::string q_string(const mpq_class& v) { return v.get_str(); }

std::vector<std::string> table_strings(const WeightDistribution& d) {
    std::vector<std::string> out;
    for (const auto& v : d.values) out.push_back(v.get_str());
    return out;
}

asymptotics::Channel channel(const std::string& kind, double parameter) {
    if (kind == "bec") return asymptotics::Channel::bec(parameter);
    if (kind == "bsc") return asymptotics::Channel::bsc(parameter);
    throw ValidationError("channel must be 'bec' or 'bsc'");
}

py::dict de_run_dict(const de::DeRun& r) {
    py::dict d;
    d["iterations"] = r.iterations;
    d["converged"] = r.converged;
    d["success"] = r.success;
    d["x1"] = r.final_state.x1;
    d["x2"] = r.final_state.x2;
    d["x3"] = r.final_state.x3;
    d["x4"] = r.final_state.x4;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weight enumerators, growth rates, density evolution and BEC simulation for LDPC-GM codes";
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    // enumerator
    m.def("f_minus", [](long d) { return poly_strings(f_minus(d)); }, py::arg("d"));
    m.def("f_plus", [](long d) { return poly_strings(f_plus(d)); }, py::arg("d"));
    m.def("ldgm_iowe", [](long c, long d, long n, long w, long h) { return q_string(ldgm_iowe({c, d, n}, w, h)); },
          py::arg("c"), py::arg("d"), py::arg("n"), py::arg("w"), py::arg("h"));
    m.def("ldpc_awd", [](long n, long j, long k, long l) { return q_string(ldpc_awd({n, j, k}, l)); },
          py::arg("n"), py::arg("j"), py::arg("k"), py::arg("l"));
    m.def("ldpc_awd_table", [](long n, long j, long k) { return table_strings(ldpc_awd_table({n, j, k})); },
          py::arg("n"), py::arg("j"), py::arg("k"), py::call_guard<py::gil_scoped_release>());
    m.def("concat_awd_ub", [](long n, long j, long k, long l) { return q_string(concat_awd_ub({n, j, k}, l)); },
          py::arg("n"), py::arg("j"), py::arg("k"), py::arg("l"));
    m.def("concat_awd_ub_table", [](long n, long j, long k) { return table_strings(concat_awd_ub_table({n, j, k})); },
          py::arg("n"), py::arg("j"), py::arg("k"), py::call_guard<py::gil_scoped_release>());
    m.def("gv_probability_bound",
          [](long n, long j, long k, double delta) { return q_string(gv_probability_bound({n, j, k}, delta)); },
          py::arg("n"), py::arg("j"), py::arg("k"), py::arg("delta"));

    // asymptotics
    namespace as = asymptotics;
    m.def("binary_entropy", &as::binary_entropy, py::arg("a"));
    m.def("entropy_inverse", &as::entropy_inverse, py::arg("y"));
    m.def("w_o", [](double j, int k, double a) { return as::w_o({j, k}, a); }, py::arg("j"), py::arg("k"), py::arg("a"));
    m.def("w_o_upper_bound", [](double j, int k, double a) { return as::w_o_upper_bound({j, k}, a); },
          py::arg("j"), py::arg("k"), py::arg("a"));
    m.def("w_ub", [](double j, int k, double a) { return as::w_ub({j, k}, a); }, py::arg("j"), py::arg("k"), py::arg("a"));
    m.def("delta_o", [](double j, int k) { return as::delta_o({j, k}); }, py::arg("j"), py::arg("k"));
    m.def("delta_prime", [](double j, int k) { return as::delta_prime({j, k}); }, py::arg("j"), py::arg("k"));
    m.def("guaranteed_rate", [](double j, int k) { return as::guaranteed_rate({j, k}); }, py::arg("j"), py::arg("k"));
    m.def("graphical_complexity", [](double j, int k) { return as::graphical_complexity({j, k}); },
          py::arg("j"), py::arg("k"));
    m.def("k_min_for_delta", &as::k_min_for_delta, py::arg("delta_l"), py::arg("outer_rate"));
    m.def(
        "threshold_report",
        [](double j, int k, double delta_l, int grid) {
            const auto r = as::threshold_report({j, k}, delta_l, grid);
            py::dict d;
            d["delta_o"] = r.delta_o;
            d["delta_prime"] = r.delta_prime;
            d["delta_gv"] = r.delta_gv;
            d["guaranteed_rate"] = r.guaranteed_rate;
            d["delta_l"] = r.delta_l;
            d["k_min"] = r.k_min;
            d["curvature_k"] = r.curvature_k;
            d["m_estimate"] = r.m_estimate;
            return d;
        },
        py::arg("j"), py::arg("k"), py::arg("delta_l") = 0.0, py::arg("grid") = 400);
    m.def("bhattacharyya", [](const std::string& kind, double p) { return as::bhattacharyya(channel(kind, p)); },
          py::arg("channel"), py::arg("parameter"));
    m.def("random_coding_exponent",
          [](const std::string& kind, double p, double rate) { return as::random_coding_exponent(channel(kind, p), rate); },
          py::arg("channel"), py::arg("parameter"), py::arg("rate_bits"));
    m.def(
        "ml_union_bound",
        [](long n, long j, long k, const std::string& kind, double p) {
            const auto r = as::ml_union_bound({n, j, k}, channel(kind, p));
            py::dict d;
            d["bhattacharyya"] = r.bhattacharyya;
            d["rate"] = r.rate;
            d["delta_prime"] = r.delta_prime;
            d["low_high_count"] = r.low_high_count;
            d["term1"] = r.term1;
            d["log_alpha"] = r.log_alpha;
            d["term2"] = r.term2;
            d["spectrum_excess"] = r.spectrum_excess;
            return d;
        },
        py::arg("n"), py::arg("j"), py::arg("k"), py::arg("channel"), py::arg("parameter"));

    // density evolution
    py::class_<de::EnsembleSpec>(m, "EnsembleSpec")
        .def_property_readonly("construction", [](const de::EnsembleSpec& s) { return de::to_string(s.construction); })
        .def_readonly("k", &de::EnsembleSpec::k)
        .def_readonly("q", &de::EnsembleSpec::q)
        .def_readonly("design_q", &de::EnsembleSpec::design_q)
        .def_readonly("epsilon", &de::EnsembleSpec::epsilon)
        .def_readonly("truncation_degree", &de::EnsembleSpec::truncation_degree)
        .def_readonly("pilot_fraction", &de::EnsembleSpec::pilot_fraction)
        .def_readonly("p", &de::EnsembleSpec::p)
        .def_readonly("rate", &de::EnsembleSpec::rate)
        .def_readonly("lambda_integral", &de::EnsembleSpec::lambda_integral)
        .def_readonly("rho_integral", &de::EnsembleSpec::rho_integral)
        .def("lam", [](const de::EnsembleSpec& s, double x) { return s.lambda(x); }, py::arg("x"))
        .def("rho", [](const de::EnsembleSpec& s, double x) { return s.rho(x); }, py::arg("x"));

    m.def(
        "check_regular_lambda",
        [](int k, double q, std::size_t cap) { return de::check_regular_lambda(k, q, cap).distribution.coefficients(); },
        py::arg("k"), py::arg("q"), py::arg("degree_cap") = 400);
    m.def("check_regular_spec", &de::check_regular_spec, py::arg("k"), py::arg("q"));
    m.def(
        "truncate_check_regular",
        [](const std::vector<double>& lambda, int k, double q, double eps) {
            return de::truncate_check_regular(de::DegreeDistribution(lambda, de::Perspective::Edge, false), k, q, eps);
        },
        py::arg("lambda_coefficients"), py::arg("k"), py::arg("q"), py::arg("epsilon"));
    m.def("variable_regular_rho_value", &de::variable_regular_rho_value, py::arg("q"), py::arg("x"));
    m.def(
        "variable_regular_rho",
        [](double q, std::size_t cap) {
            auto r = de::variable_regular_rho(q, cap);
            return py::make_tuple(r.series.distribution.coefficients(), r.closed_form_discrepancy);
        },
        py::arg("q"), py::arg("degree_cap"), py::call_guard<py::gil_scoped_release>());
    m.def("variable_regular_spec", &de::variable_regular_spec, py::arg("q"));
    m.def(
        "truncate_variable_regular",
        [](const std::vector<double>& rho, double q, double eps) {
            return de::truncate_variable_regular(de::DegreeDistribution(rho, de::Perspective::Edge, false), q, eps);
        },
        py::arg("rho_coefficients"), py::arg("q"), py::arg("epsilon"));
    m.def("punctured_spec", &de::punctured_spec, py::arg("base"), py::arg("q_prime"), py::arg("p"));
    m.def("fixed_point_function", &de::fixed_point_function, py::arg("spec"), py::arg("x3"), py::arg("channel_q"));
    m.def(
        "fixed_point_margin",
        [](const de::EnsembleSpec& s, int grid, std::optional<double> ch) {
            const auto r = de::fixed_point_margin(s, grid, ch);
            return py::make_tuple(r.margin, r.argmin);
        },
        py::arg("spec"), py::arg("grid") = 10000, py::arg("channel_q") = py::none());
    m.def(
        "run_de",
        [](const de::EnsembleSpec& s, double q, std::size_t max_iter) { return de_run_dict(de::run_de(s, q, max_iter)); },
        py::arg("spec"), py::arg("channel_q"), py::arg("max_iterations") = 100000);
    m.def(
        "decoding_complexity",
        [](const de::EnsembleSpec& s) {
            const auto c = de::decoding_complexity(s);
            return py::make_tuple(c.bound, c.achieved);
        },
        py::arg("spec"));

    // simulator
    m.def(
        "sample_ldpc",
        [](long n, long j, long k, std::uint64_t seed) {
            const auto h = sim::sample_ldpc({n, j, k}, seed);
            std::vector<std::vector<std::uint32_t>> rows;
            for (std::size_t r = 0; r < h.rows(); ++r) rows.push_back(h.row(r));
            return rows;
        },
        py::arg("n"), py::arg("j"), py::arg("k"), py::arg("seed"));
    m.def(
        "simulate",
        [](long n, long j, long k, const std::vector<double>& qs, std::size_t trials,
           const std::vector<std::string>& decoders, std::uint64_t seed) {
            sim::SweepConfig cfg;
            cfg.ensemble = LdpcParams{n, j, k};
            cfg.q_grid = qs;
            cfg.trials = trials;
            cfg.master_seed = seed;
            cfg.decoders.clear();
            for (const auto& d : decoders) {
                if (d == "bp") cfg.decoders.push_back(sim::DecoderKind::BeliefPropagation);
                else if (d == "ml") cfg.decoders.push_back(sim::DecoderKind::MaximumLikelihood);
                else throw ValidationError("decoder must be 'bp' or 'ml'");
            }
            std::vector<sim::SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = sim::monte_carlo(cfg);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["q"] = r.q;
                d["decoder"] = sim::to_string(r.decoder);
                d["trials"] = r.trials;
                d["bit_failures"] = r.bit_failures;
                d["block_failures"] = r.block_failures;
                d["ci_low"] = r.ci_low;
                d["ci_high"] = r.ci_high;
                d["seed"] = r.seed;
                out.append(d);
            }
            return out;
        },
        py::arg("n"), py::arg("j"), py::arg("k"), py::arg("q"), py::arg("trials"),
        py::arg("decoders") = std::vector<std::string>{"bp"}, py::arg("seed") = 1);
}

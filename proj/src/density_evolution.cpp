#include "ldpcgm/density_evolution.hpp"

#include "ldpcgm/errors.hpp"
#include "ldpcgm/format.hpp"
#include "ldpcgm/numeric.hpp"
#include "ldpcgm/power_series.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <ostream>

namespace ldpcgm::de {

namespace {

double integrate(const Curve& f, double a, double b) {
    if (b <= a) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-13);
}

// Integral of f over [0, x] after t = 1 - u^2, which smooths (1-t)^(1/2)-type endpoints.
double integrate_from_zero(const Curve& f, double x) {
    if (x <= 0.0) return 0.0;
    const double u0 = std::sqrt(std::max(0.0, 1.0 - x));
    return integrate([&f](double u) { return 2.0 * u * f(1.0 - u * u); }, u0, 1.0);
}

double horner_edge(const std::vector<double>& c, double x) {
    // sum c_i x^(i-1), c_0 ignored
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) v = v * x + c[i];
    return v;
}

double horner_node(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

void require_probability(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

DegreeDistribution::DegreeDistribution(std::vector<double> by_degree, Perspective perspective, bool check_normalized)
    : coeffs_(std::move(by_degree)), perspective_(perspective) {
    for (auto& c : coeffs_) {
        if (!std::isfinite(c)) throw ValidationError("degree distribution coefficient is not finite");
        if (c < 0.0 && c >= -kClampTolerance) {
            c = 0.0;
            ++clamped_;
        } else if (c < 0.0) {
            ++negative_;
        }
    }
    if (perspective_ == Perspective::Edge && !coeffs_.empty() && coeffs_[0] != 0.0)
        throw ValidationError("edge-perspective distribution has no degree-0 term");
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (check_normalized && perspective_ == Perspective::Edge && std::fabs(mass() - 1.0) > 1e-9)
        throw ValidationError("edge-perspective coefficients must sum to 1");
}

double DegreeDistribution::operator()(double x) const {
    return perspective_ == Perspective::Edge ? horner_edge(coeffs_, x) : horner_node(coeffs_, x);
}

double DegreeDistribution::mass() const {
    double s = 0.0;
    for (double c : coeffs_) s += c;
    return s;
}

double DegreeDistribution::integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (perspective_ == Perspective::Edge) {
            if (i > 0) s += coeffs_[i] / static_cast<double>(i);
        } else {
            s += coeffs_[i] / static_cast<double>(i + 1);
        }
    }
    return s;
}

double DegreeDistribution::min_coefficient() const {
    double m = 0.0;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) m = std::min(m, coeffs_[i]);
    return m;
}

DegreeDistribution tilde_lambda(const DegreeDistribution& lambda) {
    if (lambda.perspective() != Perspective::Edge) throw ValidationError("tilde_lambda expects an edge-perspective input");
    const double total = lambda.integral();
    if (!(total > 0.0)) throw ValidationError("tilde_lambda needs positive mass");
    std::vector<double> node(lambda.coefficients().size(), 0.0);
    for (std::size_t i = 1; i < node.size(); ++i) node[i] = lambda.coefficient(i) / static_cast<double>(i) / total;
    return DegreeDistribution(std::move(node), Perspective::Node, false);
}

std::string to_string(Construction c) {
    switch (c) {
        case Construction::CheckRegular: return "check-regular";
        case Construction::VariableRegular: return "variable-regular";
        case Construction::Punctured: return "punctured";
        case Construction::Custom: return "custom";
    }
    return "custom";
}

DeState de_step(const DeState& s, const EnsembleSpec& spec) { return de_step(s, spec, spec.q); }

DeState de_step(const DeState& s, const EnsembleSpec& spec, double channel_q) {
    DeState n;
    n.x1 = 1.0 - (1.0 - channel_q) * (1.0 - s.x4);
    n.x2 = spec.inner_F(n.x1) * spec.lambda(s.x3);
    n.x3 = 1.0 - spec.rho(1.0 - n.x2);
    n.x4 = spec.inner_f(n.x1) * spec.lambda_node(n.x3);
    return n;
}

double bit_erasure(const EnsembleSpec& spec, const DeState& s) {
    return spec.inner_F(s.x1) * spec.lambda_node(s.x3);
}

DeRun run_de(const EnsembleSpec& spec, double channel_q, std::size_t max_iterations, double tolerance,
             bool keep_trajectory, DeState start) {
    require_probability(channel_q, "channel erasure probability");
    DeRun run;
    DeState cur = start;
    for (std::size_t t = 0; t < max_iterations; ++t) {
        const DeState next = de_step(cur, spec, channel_q);
        ++run.iterations;
        if (keep_trajectory) run.trajectory.push_back(next);
        const bool done = std::fabs(next.x3 - cur.x3) < tolerance;
        cur = next;
        if (done) {
            run.converged = true;
            break;
        }
    }
    run.final_state = cur;
    run.success = cur.x3 < 1e-6;
    return run;
}

double fixed_point_function(const EnsembleSpec& spec, double x3, double channel_q) {
    const double lt = spec.lambda_node(x3);
    const double denom = 1.0 - (1.0 - channel_q) * (1.0 - spec.p) * lt;
    if (!(denom > 1e-300)) throw std::runtime_error("fixed-point denominator underflow");
    const double y = (channel_q * (1.0 - spec.p) + spec.p) / denom;
    return 1.0 - spec.rho(1.0 - y * y * spec.lambda(x3));
}

MarginReport fixed_point_margin(const EnsembleSpec& spec, int grid, std::optional<double> channel_q) {
    if (grid < 1000) throw ValidationError("fixed-point margin grid must have at least 1000 points");
    const double q = channel_q.value_or(spec.q);
    auto gap = [&](double x) { return x - fixed_point_function(spec, x, q); };
    MarginReport best{std::numeric_limits<double>::infinity(), 0.0};
    int best_i = 1;
    for (int i = 1; i <= grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double g = gap(x);
        if (g < best.margin) {
            best = {g, x};
            best_i = i;
        }
    }
    const double lo = static_cast<double>(best_i - 1) / grid;
    const double hi = std::min(1.0, static_cast<double>(best_i + 1) / grid);
    const auto refined = numeric::golden_section_minimize(gap, std::max(lo, 1e-300), hi, 1e-12);
    if (refined.value < best.margin) best = {refined.value, refined.x};
    return best;
}

// --- check-regular ----------------------------------------------------------

double check_regular_lambda_value(int k, double q, double x) {
    const double km1 = k - 1.0;
    const double num = -std::expm1(std::log1p(-x) / km1);
    const double inner = 1.0 - k * x + km1 * (-std::expm1(k * std::log1p(-x) / km1));
    const double den = 1.0 - (1.0 - q) * inner;
    return x >= 1.0 ? 1.0 / std::pow(1.0 - (1.0 - q) * (1.0 - k + km1), 2) : num / (den * den);
}

SeriesReport check_regular_lambda(int k, double q, std::size_t degree_cap) {
    if (k < 3) throw ValidationError("check-regular construction needs k >= 3");
    if (!(q >= 1e-3 && q < 1.0)) throw ValidationError("check-regular construction needs q in [0.001, 1)");
    if (degree_cap < 2) throw ValidationError("degree cap must be >= 2");
    const std::size_t n = degree_cap;  // series coefficient i is lambda_{i+1}
    const double km1 = k - 1.0;

    series::Series num = series::binomial(1.0 / km1, n);
    for (auto& c : num) c = -c;
    num[0] += 1.0;

    series::Series d = series::binomial(k / km1, n);
    for (auto& c : d) c = -km1 * c;
    d[0] += km1 + 1.0;
    if (n > 1) d[1] -= k;
    series::Series den(n);
    for (std::size_t i = 0; i < n; ++i) den[i] = -(1.0 - q) * d[i];
    den[0] += 1.0;

    const series::Series lam = series::multiply(num, series::reciprocal(series::multiply(den, den, n), n), n);

    SeriesReport rep;
    std::vector<double> by_degree(n + 1, 0.0);
    rep.min_raw_coefficient = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        by_degree[i + 1] = lam[i];
        rep.min_raw_coefficient = std::min(rep.min_raw_coefficient, lam[i]);
    }
    by_degree[1] = 0.0;  // lambda(0) = 0 exactly
    rep.distribution = DegreeDistribution(std::move(by_degree), Perspective::Edge, false);
    rep.clamped = rep.distribution.clamped_count();
    rep.negative = rep.distribution.negative_count();
    return rep;
}

EnsembleSpec check_regular_spec(int k, double q) {
    if (k < 3) throw ValidationError("check-regular construction needs k >= 3");
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("check-regular construction needs q in (0, 1)");
    EnsembleSpec spec;
    spec.construction = spec.base = Construction::CheckRegular;
    spec.k = k;
    spec.q = spec.design_q = q;
    auto lambda = [k, q](double x) { return check_regular_lambda_value(k, q, x); };
    spec.lambda = lambda;
    spec.lambda_integral = integrate_from_zero(lambda, 1.0);
    const double total = spec.lambda_integral;
    spec.lambda_node = [lambda, total](double x) { return integrate_from_zero(lambda, x) / total; };
    spec.rho = [k](double x) { return std::pow(x, k - 1); };
    spec.rho_integral = 1.0 / k;
    spec.rate = 1.0 - spec.rho_integral / spec.lambda_integral;
    std::vector<double> rho(static_cast<std::size_t>(k) + 1, 0.0);
    rho[k] = 1.0;
    spec.rho_edges = DegreeDistribution(std::move(rho), Perspective::Edge);
    return spec;
}

EnsembleSpec truncate_check_regular(const DegreeDistribution& lambda, int k, double q, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
    EnsembleSpec spec = check_regular_spec(k, q);
    const double total = spec.lambda_integral;
    const double threshold = epsilon * (1.0 - q) / (q * k);
    const auto& c = lambda.coefficients();

    double partial = 0.0;
    long m = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        partial += c[i] / static_cast<double>(i);
        if (total - partial < threshold) {
            m = static_cast<long>(i);
            break;
        }
    }
    if (m == 0)
        throw InsufficientDegreeCap("degree cap " + std::to_string(lambda.max_degree()) +
                                    " is too small to certify M(epsilon); increase the degree cap");

    const double tail = total - partial;
    spec.epsilon = epsilon;
    spec.truncation_degree = m;
    spec.pilot_fraction = q * k * tail;
    spec.rate = 1.0 - q - spec.pilot_fraction;

    std::vector<double> kept(c.begin(), c.begin() + m + 1);
    std::vector<double> node(static_cast<std::size_t>(m) + 1, 0.0);
    for (long i = 1; i <= m; ++i) node[i] = c[i] / static_cast<double>(i) / total;
    spec.lambda = [kept](double x) { return horner_edge(kept, x); };
    spec.lambda_node = [node](double x) { return horner_node(node, x); };

    // all variables, pilots included, for graph sampling
    std::vector<double> all(c.size(), 0.0);
    double used = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        all[i] = c[i] / static_cast<double>(i) / total;
        used += all[i];
    }
    all.back() += std::max(0.0, 1.0 - used);
    spec.variable_nodes = DegreeDistribution(std::move(all), Perspective::Node, false);
    return spec;
}

// --- variable-regular ------------------------------------------------------

double variable_regular_rho_value(double q, double x) {
    require_probability(q, "q");
    require_probability(x, "x");
    const double s = std::sqrt(1.0 - x);
    if (s == 0.0) return 1.0;
    // g(t) = (1-q) s t^3 + q t - s is increasing on [0,1], g(0) <= 0 <= g(1)
    double lo = 0.0, hi = 1.0, t = s;
    for (int it = 0; it < 200; ++it) {
        const double g = (1.0 - q) * s * t * t * t + q * t - s;
        if (g > 0) hi = t; else lo = t;
        const double dg = 3.0 * (1.0 - q) * s * t * t + q;
        double next = t - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - t) < 1e-17 || hi - lo < 1e-17) {
            t = next;
            break;
        }
        t = next;
    }
    return 1.0 - t;
}

double variable_regular_rho_closed_form(double q, double x) {
    using C = std::complex<double>;
    const C one(1.0), xc(x), qc(q);
    const C r = std::pow(one - xc, 1.5);
    const C inner = std::sqrt(-27.0 * (one - qc) * r / (4.0 * std::pow(qc, 3)));
    const C num = 2.0 * (one - qc) * std::pow(one - xc, 2) * std::sin(std::asin(inner) / 3.0);
    const C den = std::sqrt(3.0) * std::pow(qc, 4) * std::pow(-(one - qc) * r / std::pow(qc, 3), 1.5);
    return (one + num / den).real();
}

namespace {

// t(z) with q t - s(z)(1 - (1-q) t^3) = 0, t(0) = 1, by Newton iteration on series.
series::Series rho_root_series(double q, std::size_t n) {
    const series::Series s = series::binomial(0.5, n);
    series::Series t{1.0};
    std::size_t m = 1;
    while (m < n) {
        m = std::min(2 * m, n);
        t.resize(m, 0.0);
        const series::Series sm(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(m));
        const series::Series t2 = series::multiply(t, t, m);
        const series::Series t3 = series::multiply(t2, t, m);
        series::Series inner(m);
        for (std::size_t i = 0; i < m; ++i) inner[i] = -(1.0 - q) * t3[i];
        inner[0] += 1.0;
        const series::Series sv = series::multiply(sm, inner, m);
        series::Series f(m);
        for (std::size_t i = 0; i < m; ++i) f[i] = q * t[i] - sv[i];
        series::Series ft = series::multiply(sm, t2, m);
        for (auto& v : ft) v *= 3.0 * (1.0 - q);
        ft[0] += q;
        const series::Series step = series::multiply(f, series::reciprocal(ft, m), m);
        for (std::size_t i = 0; i < m; ++i) t[i] -= step[i];
    }
    return t;
}

}  // namespace

RhoReport variable_regular_rho(double q, std::size_t degree_cap) {
    if (!(q >= 0.05 && q <= 1.0)) throw ValidationError("variable-regular construction needs q in [0.05, 1]");
    if (degree_cap < 2) throw ValidationError("degree cap must be >= 2");
    const series::Series t = rho_root_series(q, degree_cap);
    RhoReport rep;
    std::vector<double> by_degree(degree_cap + 1, 0.0);
    rep.series.min_raw_coefficient = 0.0;
    for (std::size_t i = 1; i < degree_cap; ++i) {
        by_degree[i + 1] = -t[i];
        rep.series.min_raw_coefficient = std::min(rep.series.min_raw_coefficient, -t[i]);
    }
    by_degree[1] = 0.0;  // rho(0) = 1 - t(0) = 0
    rep.series.distribution = DegreeDistribution(std::move(by_degree), Perspective::Edge, false);
    rep.series.clamped = rep.series.distribution.clamped_count();
    rep.series.negative = rep.series.distribution.negative_count();

    if (q < 1.0) {
        for (int i = 0; i <= 1000; ++i) {
            const double x = 0.999999 * i / 1000.0;
            rep.closed_form_discrepancy = std::max(
                rep.closed_form_discrepancy,
                std::fabs(variable_regular_rho_value(q, x) - variable_regular_rho_closed_form(q, x)));
        }
    }
    return rep;
}

EnsembleSpec variable_regular_spec(double q) {
    if (!(q >= 0.05 && q <= 1.0)) throw ValidationError("variable-regular construction needs q in [0.05, 1]");
    EnsembleSpec spec;
    spec.construction = spec.base = Construction::VariableRegular;
    spec.q = spec.design_q = q;
    spec.lambda = [](double x) { return x * x; };
    spec.lambda_node = [](double x) { return x * x * x; };
    spec.rho = [q](double x) { return variable_regular_rho_value(q, x); };
    spec.lambda_integral = 1.0 / 3.0;
    spec.rho_integral = integrate_from_zero(spec.rho, 1.0);
    spec.rate = 1.0 - spec.rho_integral / spec.lambda_integral;
    spec.variable_nodes = DegreeDistribution({0.0, 0.0, 0.0, 1.0}, Perspective::Node, false);
    return spec;
}

EnsembleSpec truncate_variable_regular(const DegreeDistribution& rho, double q, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
    if (!(q >= 0.05 && q <= 1.0)) throw ValidationError("variable-regular construction needs q in [0.05, 1]");
    const double threshold = epsilon * (1.0 - q) / 3.0;
    const auto& c = rho.coefficients();
    double partial = 0.0, weighted = 0.0;
    long m = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        partial += c[i];
        weighted += c[i] / static_cast<double>(i);
        if (1.0 - partial < threshold) {
            m = static_cast<long>(i);
            break;
        }
    }
    if (m == 0)
        throw InsufficientDegreeCap("degree cap " + std::to_string(rho.max_degree()) +
                                    " is too small to certify M(epsilon); increase the degree cap");
    const double residual = 1.0 - partial;

    EnsembleSpec spec;
    spec.construction = spec.base = Construction::VariableRegular;
    spec.q = spec.design_q = q;
    spec.epsilon = epsilon;
    spec.truncation_degree = m;
    spec.lambda = [](double x) { return x * x; };
    spec.lambda_node = [](double x) { return x * x * x; };
    spec.lambda_integral = 1.0 / 3.0;
    spec.rho_integral = weighted + residual;
    spec.rate = 1.0 - spec.rho_integral / spec.lambda_integral;

    std::vector<double> kept(c.begin(), c.begin() + m + 1);
    kept[1] += residual;
    spec.rho_edges = DegreeDistribution(kept, Perspective::Edge, false);
    auto shared = std::make_shared<const std::vector<double>>(std::move(kept));
    spec.rho = [shared](double x) { return horner_edge(*shared, x); };
    spec.variable_nodes = DegreeDistribution({0.0, 0.0, 0.0, 1.0}, Perspective::Node, false);
    return spec;
}

// --- punctured ---------------------------------------------------------------

EnsembleSpec punctured_spec(const EnsembleSpec& base, double q_prime, double p) {
    require_probability(q_prime, "q'");
    if (!(p >= 0.0 && p <= q_prime)) throw ValidationError("puncturing fraction p must lie in [0, q']");
    if (p >= 1.0) throw ValidationError("puncturing fraction p must be < 1");
    if (base.p != 0.0) throw ValidationError("base ensemble is already punctured");
    EnsembleSpec spec = base;
    spec.construction = Construction::Punctured;
    spec.base = base.construction;
    spec.p = p;
    spec.design_q = q_prime;
    spec.q = (q_prime - p) / (1.0 - p);
    spec.rate = base.rate / (1.0 - p);
    return spec;
}

Complexity decoding_complexity(const EnsembleSpec& spec) {
    const Construction kind = spec.construction == Construction::Punctured ? spec.base : spec.construction;
    const double qd = spec.design_q;
    double outer_edges = 0.0;
    if (kind == Construction::CheckRegular) outer_edges = spec.k * qd;
    else if (kind == Construction::VariableRegular) outer_edges = 3.0;
    else throw ValidationError("decoding complexity is defined for the check-regular and variable-regular constructions");
    const double edges = outer_edges + 3.0 * (1.0 - spec.p);
    Complexity c;
    c.bound = edges * (1.0 - spec.p) / ((1.0 - qd) * (1.0 - spec.epsilon));
    c.achieved = edges / spec.rate;
    return c;
}

void write_coefficients(std::ostream& os, const DegreeDistribution& dist) {
    const auto& c = dist.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (dist.perspective() == Perspective::Edge && i == 0) continue;
        os << i << ',' << format_double(c[i]) << '\n';
    }
}

}  // namespace ldpcgm::de

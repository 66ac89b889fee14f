#include "ldpcgm/asymptotics.hpp"

#include "ldpcgm/errors.hpp"
#include "ldpcgm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ldpcgm::asymptotics {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kULimit = 40.0;

// Even-power terms of f_+(x, k) as (power, ln binomial).
struct EvenTerms {
    std::vector<double> power;
    std::vector<double> log_coeff;

    explicit EvenTerms(int k) {
        for (int i = 0; i <= k; i += 2) {
            power.push_back(i);
            log_coeff.push_back(std::lgamma(k + 1.0) - std::lgamma(i + 1.0) - std::lgamma(k - i + 1.0));
        }
    }

    // ln f_+(e^u) and its first two u-derivatives.
    void eval(double u, double& value, double& d1, double& d2) const {
        double top = -kInf;
        for (std::size_t i = 0; i < power.size(); ++i) top = std::max(top, log_coeff[i] + power[i] * u);
        double s = 0, m1 = 0, m2 = 0;
        for (std::size_t i = 0; i < power.size(); ++i) {
            const double w = std::exp(log_coeff[i] + power[i] * u - top);
            s += w;
            m1 += w * power[i];
            m2 += w * power[i] * power[i];
        }
        value = top + std::log(s);
        d1 = m1 / s;
        d2 = m2 / s - d1 * d1;
    }

    double value(double u) const {
        double v, d1, d2;
        eval(u, v, d1, d2);
        return v;
    }
};

// inf over u of ln f_+(e^u) - target u.
double inner_infimum(const EvenTerms& terms, double target) {
    auto g = [&](double u) { return terms.value(u) - target * u; };
    const auto coarse = numeric::golden_section_minimize(g, -kULimit, kULimit, 1e-3);

    auto slope = [&](double u, double& curv) {
        double v, d1, d2;
        terms.eval(u, v, d1, d2);
        curv = d2;
        return d1 - target;
    };
    double curv = 0;
    double lo = std::max(-kULimit, coarse.x - 2e-3);
    double hi = std::min(kULimit, coarse.x + 2e-3);
    if (slope(lo, curv) > 0) lo = -kULimit;
    if (slope(hi, curv) < 0) hi = kULimit;
    if (slope(lo, curv) > 0 || slope(hi, curv) < 0) return coarse.value;  // minimum on the boundary

    // Derivative root: Newton steps kept inside a shrinking bisection bracket.
    double u = coarse.x;
    for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
        const double s = slope(u, curv);
        if (s == 0.0) break;
        if (s < 0) lo = u; else hi = u;
        double next = (curv > 0) ? u - s / curv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - u) < 1e-14) {
            u = next;
            break;
        }
        u = next;
    }
    return std::min(g(u), coarse.value);
}

double w_o_with(const Degrees& deg, const EvenTerms& terms, double a) {
    const double ratio = deg.j / deg.k;
    if (a <= 0.0) return 0.0;
    if (a >= 1.0) return (deg.k % 2 == 0) ? 0.0 : -kInf;
    const double inf = inner_infimum(terms, a * deg.k);
    return ratio * inf - (deg.j - 1.0) * binary_entropy(a);
}

// a ln((1-t)/2) + (1-a) ln((1+t)/2) with t = (1-2b)^k, limits at t = +-1.
double mixing_term(const Degrees& deg, double a, double b) {
    const double base = 1.0 - 2.0 * b;
    double t, one_minus_t;
    if (base >= 0) {
        const double lt = deg.k * std::log1p(-2.0 * b);
        t = std::exp(lt);
        one_minus_t = -std::expm1(lt);
    } else {
        t = std::pow(base, deg.k);
        one_minus_t = 1.0 - t;
    }
    const double one_plus_t = 1.0 + t;
    double v = -kLn2;
    if (a > 0) v += (one_minus_t > 0) ? a * std::log(one_minus_t) : -kInf;
    if (a < 1) v += (one_plus_t > 0) ? (1.0 - a) * std::log(one_plus_t) : -kInf;
    return v;
}

double concat_exponent_with(const Degrees& deg, const EvenTerms& terms, double a, double b) {
    return w_o_with(deg, terms, b) + mixing_term(deg, a, b);
}

}  // namespace

double binary_entropy(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("entropy argument must lie in [0, 1]");
    if (a == 0.0 || a == 1.0) return 0.0;
    return -a * std::log(a) - (1.0 - a) * std::log1p(-a);
}

double entropy_inverse(double y) {
    if (!(y >= 0.0 && y <= kLn2 + 1e-15)) throw ValidationError("entropy_inverse argument must lie in [0, ln 2]");
    if (y <= 0.0) return 0.0;
    if (y >= kLn2) return 0.5;
    return numeric::bisect([y](double a) { return binary_entropy(a) - y; }, 0.0, 0.5, 1e-15);
}

Degrees::Degrees(double j_, int k_) : j(j_), k(k_) { validate(); }

Degrees Degrees::from_rate(double outer_rate, int k) { return Degrees((1.0 - outer_rate) * k, k); }

void Degrees::validate() const {
    if (k < 2) throw ValidationError("check degree k must be >= 2");
    if (!(j > 0.0 && j <= k)) throw ValidationError("variable degree j must lie in (0, k]");
}

double w_o(const Degrees& deg, double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("normalized weight a must lie in [0, 1]");
    return w_o_with(deg, EvenTerms(deg.k), a);
}

double w_o_upper_bound(const Degrees& deg, double a) {
    if (!(a > 0.0 && a < 1.0)) throw ValidationError("normalized weight a must lie in (0, 1)");
    const double ratio = deg.j / deg.k;
    return ratio * std::log1p(std::pow(1.0 - 2.0 * a, deg.k)) + binary_entropy(a) - ratio * kLn2;
}

double concat_exponent(const Degrees& deg, double a, double b) {
    return concat_exponent_with(deg, EvenTerms(deg.k), a, b);
}

double w_ub(const Degrees& deg, double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("normalized weight a must lie in [0, 1]");
    const EvenTerms terms(deg.k);
    const double lo = a / deg.k, hi = 1.0 - a / deg.k;
    auto f = [&](double b) { return concat_exponent_with(deg, terms, a, b); };

    constexpr int kGrid = 2001;
    std::vector<double> b(kGrid), v(kGrid);
    for (int i = 0; i < kGrid; ++i) b[i] = (i == kGrid - 1) ? hi : lo + (hi - lo) * i / (kGrid - 1);
    // the grid is symmetric about 1/2 and w_o(b) = w_o(1-b) for even k
    const bool mirror = deg.k % 2 == 0;
    for (int i = 0; i < kGrid; ++i) {
        const int m = kGrid - 1 - i;
        v[i] = (mirror && m < i) ? v[m] : w_o_with(deg, terms, b[i]);
    }
    for (int i = 0; i < kGrid; ++i) v[i] += mixing_term(deg, a, b[i]);
    double best = *std::max_element(v.begin(), v.end());
    if (lo <= 0.5 && 0.5 <= hi) best = std::max(best, f(0.5));

    // refine around the two highest local maxima of the grid
    std::vector<int> peaks;
    for (int i = 0; i < kGrid; ++i) {
        const bool left = (i == 0) || v[i] >= v[i - 1];
        const bool right = (i == kGrid - 1) || v[i] >= v[i + 1];
        if (left && right && std::isfinite(v[i])) peaks.push_back(i);
    }
    std::partial_sort(peaks.begin(), peaks.begin() + std::min<std::size_t>(2, peaks.size()), peaks.end(),
                      [&](int x, int y) { return v[x] > v[y]; });
    for (std::size_t p = 0; p < std::min<std::size_t>(2, peaks.size()); ++p) {
        const int i = peaks[p];
        const double l = b[std::max(0, i - 1)], r = b[std::min(kGrid - 1, i + 1)];
        if (r - l <= 0) continue;
        best = std::max(best, numeric::golden_section_maximize(f, l, r, 1e-10).value);
    }
    return binary_entropy(a) + best;
}

double delta_o(const Degrees& deg) {
    const EvenTerms terms(deg.k);
    auto f = [&](double a) { return w_o_with(deg, terms, a); };
    constexpr int kScan = 400;
    int neg = -1;
    for (int i = 1; i < kScan; ++i) {
        const double a = 0.5 * i / kScan;
        const double v = f(a);
        if (v < 0) neg = i;
        else if (neg >= 0) {
            return numeric::bisect(f, 0.5 * neg / kScan, a, 1e-12);
        }
    }
    if (neg >= 0 && f(0.5) >= 0) return numeric::bisect(f, 0.5 * neg / kScan, 0.5, 1e-12);
    throw std::runtime_error("w_o has no bracketed sign change on (0, 1/2)");
}

std::optional<double> delta_prime(const Degrees& deg) {
    constexpr int kScan = 200;
    auto f = [&](double a) { return w_ub(deg, a); };
    double last_neg = 0.0;
    for (int i = 1; i <= kScan; ++i) {
        const double a = 0.5 * i / kScan;
        if (f(a) >= 0) {
            if (i == 1) return std::nullopt;
            // last grid point where w_ub is still negative
            double lo = last_neg, hi = a;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                if (f(mid) < 0) lo = mid; else hi = mid;
            }
            return lo;
        }
        last_neg = a;
    }
    return last_neg;
}

double guaranteed_rate(const Degrees& deg) {
    return deg.outer_rate() - std::max(w_ub(deg, 0.0), 0.0) / kLn2;
}

double graphical_complexity(const Degrees& deg) {
    const double r = guaranteed_rate(deg);
    if (!(r > 0)) throw ValidationError("graphical complexity needs a positive guaranteed rate");
    return ((2.0 - r) * deg.k + 1.0) / r;
}

int k_min_for_delta(double delta_l, double outer_rate) {
    if (!(outer_rate >= 0.0 && outer_rate < 1.0)) throw ValidationError("outer rate must lie in [0, 1)");
    const double cap = (1.0 - outer_rate) * kLn2;
    if (!(delta_l > 0.0 && delta_l < entropy_inverse(cap)))
        throw ValidationError("delta_l must lie in (0, H^-1((1-R_o) ln 2))");
    const double ratio = std::log1p(-binary_entropy(delta_l) / cap) / std::log1p(-2.0 * delta_l);
    return static_cast<int>(std::floor(ratio)) + 1;
}

double curvature_condition(int k, double delta_l) {
    return 8.0 * k * (k - 1.0) * std::pow(1.0 - 2.0 * delta_l, k - 2);
}

Certificate theorem1_certificate(const Degrees& deg, double delta_l, int grid_size) {
    if (grid_size < 100) throw ValidationError("certificate grid must have at least 100 points");
    if (!(delta_l > 0.0 && delta_l < 0.5)) throw ValidationError("delta_l must lie in (0, 1/2)");
    const EvenTerms terms(deg.k);
    Certificate c;
    c.delta_l = delta_l;
    c.exponent_limit = -(1.0 - deg.outer_rate()) * kLn2;
    c.exponent_max = -kInf;
    for (int i = 1; i <= grid_size; ++i) {
        const double b = delta_l + (1.0 - 2.0 * delta_l) * i / (grid_size + 1.0);
        // the summand is affine in a, so a in {0, 1} covers [0, 1]
        c.exponent_max = std::max({c.exponent_max, concat_exponent_with(deg, terms, 0.0, b),
                                   concat_exponent_with(deg, terms, 1.0, b)});
    }
    c.exponent_ok = c.exponent_max <= c.exponent_limit + 1e-9;
    c.curvature_value = curvature_condition(deg.k, delta_l);
    c.curvature_ok = c.curvature_value < 4.0;
    for (int kk = deg.k; kk < 100000; ++kk) {
        if (curvature_condition(kk, delta_l) < 4.0) {
            c.curvature_k = kk;
            break;
        }
    }
    const double cap = (1.0 - deg.outer_rate()) * kLn2;
    if (delta_l < entropy_inverse(cap)) c.k_min = k_min_for_delta(delta_l, deg.outer_rate());
    return c;
}

ThresholdReport threshold_report(const Degrees& deg, double delta_l, int grid_size) {
    ThresholdReport r;
    try {
        r.delta_o = delta_o(deg);
    } catch (const std::runtime_error&) {
    }
    r.delta_prime = delta_prime(deg);
    r.guaranteed_rate = guaranteed_rate(deg);
    r.delta_gv = entropy_inverse((1.0 - r.guaranteed_rate) * kLn2);
    const double ro = deg.outer_rate();
    r.delta_l = delta_l > 0 ? delta_l : 0.5 * entropy_inverse((1.0 - ro) * kLn2);
    r.k_min = k_min_for_delta(r.delta_l, ro);
    for (int kk = 2; kk < 100000; ++kk) {
        if (curvature_condition(kk, r.delta_l) < 4.0) {
            r.curvature_k = kk;
            break;
        }
    }
    const int start = std::max({r.k_min, r.curvature_k, 2});
    for (int kk = start; kk < start + 64; ++kk) {
        const Certificate c = theorem1_certificate(Degrees::from_rate(ro, kk), r.delta_l, grid_size);
        if (c.exponent_ok && c.curvature_ok) {
            r.m_estimate = kk;
            break;
        }
    }
    return r;
}

void Channel::validate() const {
    if (!(parameter >= 0.0 && parameter <= 1.0)) throw ValidationError("channel parameter must lie in [0, 1]");
}

std::vector<std::pair<double, double>> Channel::transitions() const {
    validate();
    const double p = parameter;
    if (kind == Kind::Erasure) return {{1.0 - p, 0.0}, {0.0, 1.0 - p}, {p, p}};
    return {{1.0 - p, p}, {p, 1.0 - p}};
}

double bhattacharyya(const Channel& ch) {
    double d = 0;
    for (const auto& [p0, p1] : ch.transitions()) d += std::sqrt(p0 * p1);
    return d;
}

double gallager_e0(const Channel& ch, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("rho must lie in [0, 1]");
    const double s = 1.0 / (1.0 + rho);
    double total = 0;
    for (const auto& [p0, p1] : ch.transitions()) {
        const double inner = 0.5 * (p0 > 0 ? std::pow(p0, s) : 0.0) + 0.5 * (p1 > 0 ? std::pow(p1, s) : 0.0);
        if (inner > 0) total += std::pow(inner, 1.0 + rho);
    }
    return -std::log(total);
}

double random_coding_exponent(const Channel& ch, double rate_bits) {
    auto obj = [&](double rho) { return gallager_e0(ch, rho) - rho * rate_bits * kLn2; };
    const auto m = numeric::golden_section_maximize(obj, 0.0, 1.0, 1e-12);
    return std::max({m.value, obj(0.0), obj(1.0)});
}

MlBoundReport ml_union_bound(const LdpcParams& params, const Channel& ch) {
    params.validate();
    return ml_union_bound(params, ch, concat_awd_ub_table(params));
}

MlBoundReport ml_union_bound(const LdpcParams& params, const Channel& ch, const WeightDistribution& spectrum) {
    params.validate();
    ch.validate();
    const Degrees deg(static_cast<double>(params.j), static_cast<int>(params.k));
    const auto dp = delta_prime(deg);
    if (!dp) throw ValidationError("w_ub has no negative region for these degrees, delta' unavailable");

    MlBoundReport rep;
    rep.delta_prime = *dp;
    rep.bhattacharyya = bhattacharyya(ch);
    rep.rate = guaranteed_rate(deg);
    const long n = params.n;
    const double nd = static_cast<double>(n);
    const double log_d = rep.bhattacharyya > 0 ? std::log(rep.bhattacharyya) : -kInf;
    // ln(2^{nR} - 1)
    const double nr = nd * rep.rate * kLn2;
    const double log_codebook = nr + std::log(-std::expm1(-nr));

    double log_alpha = -kInf;
    double excess = -kInf;
    for (long l = 1; l <= n; ++l) {
        const double frac = l / nd;
        const bool in_u = frac <= rep.delta_prime || frac >= 1.0 - rep.delta_prime;
        const double log_n = log_rational(spectrum[l]);
        if (in_u) {
            ++rep.low_high_count;
            if (std::isfinite(log_n) && std::isfinite(log_d)) rep.term1 += std::exp(log_n + l * log_d);
            continue;
        }
        if (!std::isfinite(log_n)) continue;
        const double log_binom = log_rational(mpq_class(binomial(n, l)));
        log_alpha = std::max(log_alpha, log_n - log_codebook + nd * kLn2 - log_binom);
        excess = std::max(excess, (log_n - log_binom + nd * (1.0 - rep.rate) * kLn2) / nd);
    }
    rep.spectrum_excess = excess;
    if (std::isfinite(log_alpha)) {
        rep.log_alpha = log_alpha;
        const double er = random_coding_exponent(ch, rep.rate + log_alpha / (nd * kLn2));
        const double t2 = std::exp(-nd * er);
        if (std::isfinite(t2)) rep.term2 = t2;
    } else {
        rep.term2 = 0.0;
    }
    return rep;
}

}  // namespace ldpcgm::asymptotics

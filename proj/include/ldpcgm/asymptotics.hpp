#pragma once

#include "ldpcgm/enumerator.hpp"

#include <optional>
#include <vector>

namespace ldpcgm::asymptotics {

/// Natural-log binary entropy, with 0 ln 0 = 0.
double binary_entropy(double a);

/// The a in [0, 1/2] with binary_entropy(a) = y, y in [0, ln 2].
double entropy_inverse(double y);

/// Degree pair of the outer ensemble. j may be non-integer: asymptotic
/// quantities only depend on the ratio j/k through the outer rate.
struct Degrees {
    double j = 0;
    int k = 0;

    Degrees() = default;
    Degrees(double j_, int k_);
    static Degrees from_rate(double outer_rate, int k);

    double outer_rate() const { return 1.0 - j / k; }
    void validate() const;
};

/// Growth rate of the outer average weight distribution at normalized weight a.
double w_o(const Degrees& deg, double a);

/// Closed-form upper bound on w_o obtained at x = a/(1-a).
double w_o_upper_bound(const Degrees& deg, double a);

/// Growth rate of the concatenated upper bound N^ub.
double w_ub(const Degrees& deg, double a);

/// Summand maximized inside w_ub: w_o(b) + a ln((1-t)/2) + (1-a) ln((1+t)/2), t = (1-2b)^k.
double concat_exponent(const Degrees& deg, double a, double b);

/// Root of w_o on (0, 1/2). Throws if no sign change is bracketed.
double delta_o(const Degrees& deg);

/// Largest grid-certified delta with w_ub < 0 on (0, delta]; empty if w_ub is
/// nonnegative right away.
std::optional<double> delta_prime(const Degrees& deg);

/// R_o - max{w_ub(0), 0} / ln 2.
double guaranteed_rate(const Degrees& deg);

/// Edges per information bit, ((2 - R) k + 1) / R.
double graphical_complexity(const Degrees& deg);

/// Smallest integer k with k > ln(1 - H(delta_l)/((1-R_o) ln 2)) / ln(1 - 2 delta_l).
int k_min_for_delta(double delta_l, double outer_rate);

/// 8k(k-1)(1-2 delta_l)^(k-2); must be < 4 for the curvature argument.
double curvature_condition(int k, double delta_l);

struct Certificate {
    double delta_l = 0;
    // (i) max of concat_exponent over b in (delta_l, 1 - delta_l), a in {0,1}
    double exponent_max = 0;
    double exponent_limit = 0;  // -(1-R_o) ln 2
    bool exponent_ok = false;
    // (ii)
    double curvature_value = 0;
    bool curvature_ok = false;
    int curvature_k = 0;        // smallest k' >= k with (ii) satisfied, 0 if none below the search limit
    int k_min = 0;              // k_min_for_delta(delta_l, R_o)
};

Certificate theorem1_certificate(const Degrees& deg, double delta_l, int grid_size);

struct ThresholdReport {
    std::optional<double> delta_o;
    std::optional<double> delta_prime;
    double delta_gv = 0;        // entropy_inverse((1-R) ln 2) with the guaranteed rate R
    double guaranteed_rate = 0;
    double delta_l = 0;
    int k_min = 0;
    int curvature_k = 0;
    int m_estimate = 0;         // smallest k >= max(k_min, curvature_k) whose certificate passes (0 if none found)
};

/// delta_l <= 0 selects half of entropy_inverse((1-R_o) ln 2).
ThresholdReport threshold_report(const Degrees& deg, double delta_l = 0.0, int grid_size = 400);

/// Binary-input memoryless symmetric channel.
struct Channel {
    enum class Kind { Erasure, Symmetric };
    Kind kind = Kind::Erasure;
    double parameter = 0;  // erasure probability or crossover probability

    static Channel bec(double q) { return {Kind::Erasure, q}; }
    static Channel bsc(double p) { return {Kind::Symmetric, p}; }
    void validate() const;
    /// (p(y|0), p(y|1)) for each output symbol.
    std::vector<std::pair<double, double>> transitions() const;
};

double bhattacharyya(const Channel& ch);

/// Gallager E_0(rho) with uniform inputs, nats.
double gallager_e0(const Channel& ch, double rho);

/// max_{rho in [0,1]} E_0(rho) - rho R ln 2; R in bits, result in nats.
double random_coding_exponent(const Channel& ch, double rate_bits);

struct MlBoundReport {
    double bhattacharyya = 0;
    double rate = 0;
    double delta_prime = 0;
    long low_high_count = 0;        // |U|
    double term1 = 0;
    std::optional<double> log_alpha;  // empty when U^c carries no weight
    std::optional<double> term2;
    double spectrum_excess = 0;     // max over U^c of [ln N^ub(l) - ln(C(n,l) 2^{-n(1-R)})] / n
};

/// Two-term union bound on ML block error probability.
MlBoundReport ml_union_bound(const LdpcParams& params, const Channel& ch);
/// Same, reusing a precomputed concat_awd_ub_table(params).
MlBoundReport ml_union_bound(const LdpcParams& params, const Channel& ch, const WeightDistribution& spectrum);

}  // namespace ldpcgm::asymptotics

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldpcgm::de {

enum class Perspective { Edge, Node };

/// Degree distribution stored by degree: coefficient i belongs to degree i.
/// Edge perspective evaluates sum c_i x^(i-1), node perspective sum c_i x^i.
class DegreeDistribution {
public:
    static constexpr double kClampTolerance = 1e-12;

    DegreeDistribution() = default;
    /// Coefficients in [-kClampTolerance, 0) are clamped to zero and counted.
    /// With check_normalized, an edge-perspective input must sum to 1 within 1e-9.
    DegreeDistribution(std::vector<double> by_degree, Perspective perspective, bool check_normalized = true);

    Perspective perspective() const { return perspective_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    double coefficient(std::size_t degree) const { return degree < coeffs_.size() ? coeffs_[degree] : 0.0; }
    std::size_t max_degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    double operator()(double x) const;
    double mass() const;
    /// Integral over [0,1] of the polynomial.
    double integral() const;

    std::size_t clamped_count() const { return clamped_; }
    std::size_t negative_count() const { return negative_; }
    double min_coefficient() const;

private:
    std::vector<double> coeffs_;
    Perspective perspective_ = Perspective::Edge;
    std::size_t clamped_ = 0;
    std::size_t negative_ = 0;
};

/// Node-perspective counterpart of an edge distribution: (c_i / i) / sum_j (c_j / j).
DegreeDistribution tilde_lambda(const DegreeDistribution& lambda);

struct DeState {
    double x1 = 1, x2 = 1, x3 = 1, x4 = 1;
    static DeState all_erased() { return {}; }
};

enum class Construction { CheckRegular, VariableRegular, Punctured, Custom };
std::string to_string(Construction c);

using Curve = std::function<double(double)>;

/// Everything density evolution and the rate/complexity bookkeeping need.
/// Inner code: input nodes with F(x) = [(1-p)x + p]^2, edge version f(x) = (1-p)x + p.
struct EnsembleSpec {
    Construction construction = Construction::Custom;
    Construction base = Construction::Custom;  // what a punctured spec was built from
    int k = 0;                // check degree for check-regular outer codes
    double q = 0;             // channel erasure probability the ensemble is run on
    double design_q = 0;      // erasure probability the outer distribution was designed for
    double epsilon = 0;       // 0 for untruncated
    long truncation_degree = 0;
    double pilot_fraction = 0;
    double p = 0;
    double rate = 0;
    double lambda_integral = 0;  // integral of the untruncated lambda
    double rho_integral = 0;     // integral of the rho actually used

    Curve lambda;        // edge perspective, outer variables
    Curve lambda_node;   // node perspective (pilots excluded, not renormalized)
    Curve rho;           // edge perspective, outer checks

    // Finite distributions when available (needed to sample graphs).
    std::optional<DegreeDistribution> variable_nodes;  // node perspective over all variables incl. pilots
    std::optional<DegreeDistribution> rho_edges;

    double inner_f(double x) const { return (1.0 - p) * x + p; }
    double inner_F(double x) const { const double v = inner_f(x); return v * v; }
};

DeState de_step(const DeState& state, const EnsembleSpec& spec);
DeState de_step(const DeState& state, const EnsembleSpec& spec, double channel_q);

/// Erasure probability of an outer variable after the state's messages.
double bit_erasure(const EnsembleSpec& spec, const DeState& state);

struct DeRun {
    std::vector<DeState> trajectory;  // states after each step (when requested)
    DeState final_state;
    std::size_t iterations = 0;
    bool converged = false;   // |x3 change| < tolerance
    bool success = false;     // final x3 < 1e-6
};

DeRun run_de(const EnsembleSpec& spec, double channel_q, std::size_t max_iterations = 100000,
             double tolerance = 1e-12, bool keep_trajectory = false,
             DeState start = DeState::all_erased());

/// 1 - rho(1 - y^2 lambda(x3)) with y = [q(1-p) + p] / [1 - (1-q)(1-p) lambda~(x3)].
double fixed_point_function(const EnsembleSpec& spec, double x3, double channel_q);

struct MarginReport {
    double margin = 0;
    double argmin = 0;
};

/// min over x3 in (0,1] of x3 - fixed_point_function, grid plus local refinement.
MarginReport fixed_point_margin(const EnsembleSpec& spec, int grid, std::optional<double> channel_q = std::nullopt);

// --- check-regular construction ------------------------------------------

double check_regular_lambda_value(int k, double q, double x);

struct SeriesReport {
    DegreeDistribution distribution;  // edge perspective, degrees 1..degree_cap
    double min_raw_coefficient = 0;
    std::size_t clamped = 0;
    std::size_t negative = 0;         // coefficients below -1e-12
};

SeriesReport check_regular_lambda(int k, double q, std::size_t degree_cap);

/// Untruncated check-regular ensemble (closed-form lambda).
EnsembleSpec check_regular_spec(int k, double q);

/// Thrown when the computed degrees cannot certify M(epsilon).
class InsufficientDegreeCap : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

EnsembleSpec truncate_check_regular(const DegreeDistribution& lambda, int k, double q, double epsilon);

// --- variable-regular construction ---------------------------------------

/// rho(x) = 1 - t, t in [0,1] the root of (1-q) s t^3 + q t - s with s = sqrt(1-x).
double variable_regular_rho_value(double q, double x);
/// Printed closed form evaluated with principal complex branches (real part).
double variable_regular_rho_closed_form(double q, double x);

struct RhoReport {
    SeriesReport series;
    double closed_form_discrepancy = 0;  // max |cubic - closed form| on a check grid
};

RhoReport variable_regular_rho(double q, std::size_t degree_cap);

EnsembleSpec variable_regular_spec(double q);

EnsembleSpec truncate_variable_regular(const DegreeDistribution& rho, double q, double epsilon);

// --- punctured inner code ---------------------------------------------------

/// Inner code with F(x) = [x(1-p)+p]^2 on top of a base designed for q_prime;
/// the resulting spec runs on channel (q_prime - p)/(1 - p).
EnsembleSpec punctured_spec(const EnsembleSpec& base, double q_prime, double p);

struct Complexity {
    double bound = 0;     // construction's per-information-bit edge bound
    double achieved = 0;  // edges per information bit of this spec
};

Complexity decoding_complexity(const EnsembleSpec& spec);

/// `degree,coefficient` rows (no header).
void write_coefficients(std::ostream& os, const DegreeDistribution& dist);

}  // namespace ldpcgm::de

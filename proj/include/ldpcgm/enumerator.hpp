#pragma once

#include "ldpcgm/polynomial.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <vector>

namespace ldpcgm {

/// Regular (c, d) LDGM ensemble with n output (check) nodes.
struct LdgmParams {
    long c = 0;  ///< edges per input node
    long d = 0;  ///< edges per output node
    long n = 0;  ///< output nodes

    void validate() const;
    long input_count() const { return d * n / c; }
};

/// Gallager (n, j, k) layered LDPC ensemble.
struct LdpcParams {
    long n = 0;
    long j = 0;
    long k = 0;

    void validate() const;
    long check_count() const { return j * n / k; }
    double design_rate() const { return 1.0 - static_cast<double>(j) / static_cast<double>(k); }
};

/// Exact ensemble-average weight counts indexed by l in [0, n].
struct WeightDistribution {
    long n = 0;
    std::vector<mpq_class> values;

    const mpq_class& operator[](long l) const { return values.at(static_cast<std::size_t>(l)); }
};

/// Natural log of a nonnegative rational; -inf for zero. Safe for huge operands.
double log_rational(const mpq_class& value);

/// Average input-output weight enumerator Z_{w,h} of the LDGM ensemble.
mpq_class ldgm_iowe(const LdgmParams& params, long w, long h);

/// Average number of weight-l codewords in the Gallager ensemble.
mpq_class ldpc_awd(const LdpcParams& params, long l);
WeightDistribution ldpc_awd_table(const LdpcParams& params);

/// Upper bound on the average weight-l count of the LDPC code followed by
/// a rate-1 (k, k) LDGM map. Distinct outer words mapping to the same output
/// are counted separately, hence the bound.
mpq_class concat_awd_ub(const LdpcParams& params, long l);
WeightDistribution concat_awd_ub_table(const LdpcParams& params);

/// Markov bound on P(d_min < delta n): sum of the concatenated upper bound over 0 < l < delta n.
mpq_class gv_probability_bound(const LdpcParams& params, double delta);

/// `l,numerator,denominator` rows (no header).
void write_exact_rows(std::ostream& os, const WeightDistribution& dist, const char* prefix = "");
/// `l,log2_value` rows (no header).
void write_log2_rows(std::ostream& os, const WeightDistribution& dist, const char* prefix = "");

}  // namespace ldpcgm

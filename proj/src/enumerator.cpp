#include "ldpcgm/enumerator.hpp"

#include "ldpcgm/errors.hpp"
#include "ldpcgm/format.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace ldpcgm {

void LdgmParams::validate() const {
    if (c < 1 || d < 1 || n < 1) throw ValidationError("LDGM parameters require c >= 1, d >= 1, n >= 1");
    if ((d * n) % c != 0) throw ValidationError("LDGM parameters require d*n divisible by c");
}

void LdpcParams::validate() const {
    if (j < 2 || k < 2) throw ValidationError("LDPC parameters require j >= 2 and k >= 2");
    if (k % 2 != 0) throw ValidationError("LDPC parameters require even k");
    if (n < 1 || n % k != 0) throw ValidationError("LDPC block length n must be a positive multiple of k");
}

double log_rational(const mpq_class& value) {
    if (value < 0) throw ValidationError("log of a negative rational");
    if (value == 0) return -std::numeric_limits<double>::infinity();
    auto log_z = [](const mpz_class& z) {
        long e = 0;
        const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
        return std::log(m) + static_cast<double>(e) * std::log(2.0);
    };
    return log_z(value.get_num()) - log_z(value.get_den());
}

mpq_class ldgm_iowe(const LdgmParams& params, long w, long h) {
    params.validate();
    const long inputs = params.input_count();
    if (w < 0 || w > inputs || h < 0 || h > params.n) throw ValidationError("LDGM weights out of range");
    const long cw = params.c * w;
    const int d = static_cast<int>(params.d);
    const ExactPolynomial prod = f_minus(d)
                                     .pow_truncated(static_cast<unsigned long>(h), cw)
                                     .multiply_truncated(f_plus(d).pow_truncated(static_cast<unsigned long>(params.n - h), cw), cw);
    mpq_class r(binomial(inputs, w) * binomial(params.n, h) * prod.coefficient(cw),
                binomial(params.d * params.n, cw));
    r.canonicalize();
    return r;
}

namespace {

mpq_class awd_from_count(const mpz_class& count, long n, long l, long j) {
    if (count == 0) return 0;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), count.get_mpz_t(), static_cast<unsigned long>(j));
    const mpz_class b = binomial(n, l);
    mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(j - 1));
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

// Layer polynomial f_+(x,k)^{n/k}, truncated at max_degree.
ExactPolynomial layer_polynomial(const LdpcParams& p, long max_degree) {
    return f_plus(static_cast<int>(p.k)).pow_truncated(static_cast<unsigned long>(p.n / p.k), max_degree);
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

mpq_class ldpc_awd(const LdpcParams& params, long l) {
    params.validate();
    if (l < 0 || l > params.n) throw ValidationError("weight l out of range [0, n]");
    return awd_from_count(layer_polynomial(params, l).coefficient(l), params.n, l, params.j);
}

WeightDistribution ldpc_awd_table(const LdpcParams& params) {
    params.validate();
    const ExactPolynomial layer = layer_polynomial(params, params.n);
    WeightDistribution out{params.n, {}};
    out.values.reserve(static_cast<std::size_t>(params.n) + 1);
    for (long l = 0; l <= params.n; ++l)
        out.values.push_back(awd_from_count(layer.coefficient(l), params.n, l, params.j));
    return out;
}

mpq_class concat_awd_ub(const LdpcParams& params, long l) {
    params.validate();
    const long n = params.n, k = params.k;
    if (l < 0 || l > n) throw ValidationError("weight l out of range [0, n]");
    const long s_lo = ceil_div(l, k);
    const long s_hi = n - s_lo;
    if (s_lo > s_hi) return 0;

    const int ki = static_cast<int>(k);
    const long cap = k * s_hi;
    const ExactPolynomial prod =
        f_minus(ki).pow_truncated(static_cast<unsigned long>(l), cap)
            .multiply_truncated(f_plus(ki).pow_truncated(static_cast<unsigned long>(n - l), cap), cap);
    const ExactPolynomial layer = layer_polynomial(params, s_hi);

    mpq_class sum = 0;
    for (long s = s_lo; s <= s_hi; ++s) {
        const mpz_class c = prod.coefficient(k * s);
        if (c == 0) continue;
        const mpq_class outer = awd_from_count(layer.coefficient(s), n, s, params.j);
        if (outer == 0) continue;
        mpq_class term(c, binomial(k * n, k * s));
        term.canonicalize();
        sum += outer * term;
    }
    return sum * binomial(n, l);
}

WeightDistribution concat_awd_ub_table(const LdpcParams& params) {
    params.validate();
    const long n = params.n, k = params.k;
    const int ki = static_cast<int>(k);

    // Outer weights s contribute r_s = N_o(s) / C(kn, ks). Put them over a
    // common denominator so the inner loop is integer-only.
    const WeightDistribution outer = ldpc_awd_table(params);
    std::vector<mpq_class> r(static_cast<std::size_t>(n) + 1);
    mpz_class common = 1;
    for (long s = 0; s <= n; ++s) {
        if (outer[s] == 0) continue;
        r[s] = outer[s] / mpq_class(binomial(k * n, k * s));
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), r[s].get_den_mpz_t());
    }
    std::vector<mpz_class> weight(static_cast<std::size_t>(n) + 1);
    for (long s = 0; s <= n; ++s) {
        if (r[s] == 0) continue;
        weight[s] = r[s].get_num() * (common / r[s].get_den());
    }

    // P_l = f_-^l f_+^{n-l}; step l -> l+1 by exact division by f_+ then
    // multiplication by f_-. f_+ has constant term 1 so the division is a
    // plain recurrence.
    const ExactPolynomial fp = f_plus(ki), fm = f_minus(ki);
    const std::size_t len = static_cast<std::size_t>(n * k) + 1;
    std::vector<mpz_class> cur(len), quot(len);
    {
        const ExactPolynomial p0 = fp.pow_truncated(static_cast<unsigned long>(n), n * k);
        for (long i = 0; i <= p0.degree(); ++i) cur[i] = p0.coefficient(i);
    }
    std::vector<std::pair<long, mpz_class>> fp_terms, fm_terms;
    for (long i = 2; i <= k; i += 2) fp_terms.emplace_back(i, fp.coefficient(i));
    for (long i = 1; i <= k; i += 2) fm_terms.emplace_back(i, fm.coefficient(i));

    WeightDistribution out{n, std::vector<mpq_class>(static_cast<std::size_t>(n) + 1)};
    for (long l = 0; l <= n; ++l) {
        const long s_lo = ceil_div(l, k);
        const long s_hi = n - s_lo;
        mpz_class acc = 0;
        for (long s = s_lo; s <= s_hi; ++s) {
            if (weight[s] == 0) continue;
            const mpz_class& c = cur[static_cast<std::size_t>(k * s)];
            if (c != 0) mpz_addmul(acc.get_mpz_t(), weight[s].get_mpz_t(), c.get_mpz_t());
        }
        mpq_class v(acc * binomial(n, l), common);
        v.canonicalize();
        out.values[l] = v;
        if (l == n) break;

        // degree of P_l is l(k-1) + (n-l)k = nk - l
        const long deg = n * k - l;
        const long qdeg = deg - k;
        for (long m = 0; m <= qdeg; ++m) {
            mpz_class& qm = quot[m];
            qm = cur[m];
            for (const auto& [i, c] : fp_terms) {
                if (i > m) break;
                mpz_submul(qm.get_mpz_t(), c.get_mpz_t(), quot[m - i].get_mpz_t());
            }
        }
        for (auto& x : cur) x = 0;
        for (long m = 0; m <= qdeg; ++m) {
            if (quot[m] == 0) continue;
            for (const auto& [i, c] : fm_terms)
                mpz_addmul(cur[m + i].get_mpz_t(), c.get_mpz_t(), quot[m].get_mpz_t());
        }
    }
    return out;
}

mpq_class gv_probability_bound(const LdpcParams& params, double delta) {
    params.validate();
    if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("delta must lie in (0, 1/2)");
    const double limit = delta * static_cast<double>(params.n);
    mpq_class sum = 0;
    for (long l = 1; static_cast<double>(l) < limit; ++l) sum += concat_awd_ub(params, l);
    return sum;
}

void write_exact_rows(std::ostream& os, const WeightDistribution& dist, const char* prefix) {
    for (long l = 0; l <= dist.n; ++l)
        os << prefix << l << ',' << dist[l].get_num().get_str() << ',' << dist[l].get_den().get_str() << '\n';
}

void write_log2_rows(std::ostream& os, const WeightDistribution& dist, const char* prefix) {
    for (long l = 0; l <= dist.n; ++l)
        os << prefix << l << ',' << format_double(log_rational(dist[l]) / std::log(2.0)) << '\n';
}

}  // namespace ldpcgm

#include "ldpcgm/enumerator.hpp"
#include "ldpcgm/errors.hpp"
#include "ldpcgm/polynomial.hpp"

#include "brute_force.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <vector>

using namespace ldpcgm;

namespace {

using Poly = std::vector<mpz_class>;

Poly naive_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly naive_pow(const Poly& a, long e) {
    Poly r{1};
    for (long i = 0; i < e; ++i) r = naive_mul(r, a);
    return r;
}

// binomial expansion of (1+x)^d split by parity
Poly parity_part(long d, int parity) {
    Poly p(static_cast<std::size_t>(d) + 1, 0);
    mpz_class c = 1;
    for (long i = 0; i <= d; ++i) {
        if (i % 2 == parity) p[static_cast<std::size_t>(i)] = c;
        c = c * (d - i) / (i + 1);
    }
    return p;
}

mpz_class at(const Poly& p, long i) { return i >= 0 && i < static_cast<long>(p.size()) ? p[static_cast<std::size_t>(i)] : 0; }

mpz_class choose(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Concatenated bound by direct double sum with naive polynomial powers.
mpq_class naive_concat(long n, long j, long k, long l) {
    const Poly fp = parity_part(k, 0), fm = parity_part(k, 1);
    const Poly layer = naive_pow(fp, n / k);
    const Poly inner = naive_mul(naive_pow(fm, l), naive_pow(fp, n - l));
    mpq_class sum = 0;
    for (long s = 0; s <= n; ++s) {
        if (k * s < l || k * s > k * n - l) continue;
        mpq_class ratio(at(layer, s), choose(n, s));
        ratio.canonicalize();
        mpq_class outer = choose(n, s);
        for (long i = 0; i < j; ++i) outer *= ratio;
        mpq_class term = outer * mpq_class(at(inner, k * s), choose(k * n, k * s));
        term.canonicalize();
        sum += term;
    }
    sum *= choose(n, l);
    sum.canonicalize();
    return sum;
}

}  // namespace

TEST_CASE("f_minus and f_plus expand the binomial by parity") {
    CHECK(f_minus(2).to_string() == ExactPolynomial({0, 2}).to_string());
    CHECK(f_minus(1) == ExactPolynomial({0, 1}));
    CHECK(f_minus(4) == ExactPolynomial({0, 4, 0, 4}));
    CHECK(f_plus(2) == ExactPolynomial({1, 0, 1}));
    CHECK(f_plus(1) == ExactPolynomial({1}));
    CHECK(f_plus(4) == ExactPolynomial({1, 0, 6, 0, 1}));
    for (int d = 1; d <= 12; ++d)
        for (int i = 0; i <= d; ++i) {
            CHECK(coef(f_minus(d), i) == (i % 2 ? binomial(d, i) : 0));
            CHECK(coef(f_plus(d), i) == (i % 2 ? 0 : binomial(d, i)));
        }
    CHECK_THROWS_AS(f_plus(0), ValidationError);
}

TEST_CASE("coef extracts exact coefficients") {
    CHECK(coef(ExactPolynomial({1, 2, 1}), 1) == 2);
    CHECK(coef(f_minus(2) * f_plus(2), 3) == 2);
    CHECK(coef(f_plus(3), 10) == 0);
    CHECK_THROWS_AS(coef(f_plus(3), -1), ValidationError);

    // two blocks of 8 bits, each block of even weight, total weight 4
    long brute = 0;
    for (unsigned v = 0; v < (1U << 16); ++v)
        if (std::popcount(v) == 4 && std::popcount(v & 0xFFU) % 2 == 0) ++brute;
    CHECK(coef(f_plus(8).pow_truncated(2, 16), 4) == brute);
}

TEST_CASE("truncated products agree with full products") {
    const auto a = f_minus(5), b = f_plus(7);
    const auto full = a * b;
    const auto cut = a.multiply_truncated(b, 6);
    for (long i = 0; i <= 6; ++i) CHECK(cut.coefficient(i) == full.coefficient(i));
    CHECK(cut.degree() <= 6);
    const auto p = f_plus(4).pow_truncated(5, 100);
    CHECK(p == f_plus(4) * f_plus(4) * f_plus(4) * f_plus(4) * f_plus(4));
}

TEST_CASE("ldgm_iowe matches exhaustive socket matchings") {
    SUBCASE("(2,2,2)") {
        const auto z = oracle::brute_force_ldgm(2, 2, 2);
        CHECK(ldgm_iowe({2, 2, 2}, 1, 2) == mpq_class(4, 3));
        CHECK(ldgm_iowe({2, 2, 2}, 1, 1) == 0);
        for (long w = 0; w <= 2; ++w) {
            mpq_class row = 0;
            for (long h = 0; h <= 2; ++h) {
                CHECK(ldgm_iowe({2, 2, 2}, w, h) == z[w][h]);
                row += ldgm_iowe({2, 2, 2}, w, h);
            }
            CHECK(row == binomial(2, w));
        }
    }
    SUBCASE("small ensembles with dn <= 8") {
        const LdgmParams cases[] = {{2, 2, 4}, {1, 2, 3}, {3, 3, 2}, {2, 4, 2}, {4, 2, 4}};
        for (const auto& p : cases) {
            const auto z = oracle::brute_force_ldgm(p.c, p.d, p.n);
            for (long w = 0; w <= p.input_count(); ++w) {
                mpq_class row = 0;
                for (long h = 0; h <= p.n; ++h) {
                    const auto v = ldgm_iowe(p, w, h);
                    CHECK(v == z[w][h]);
                    if ((h - p.c * w) % 2 != 0) CHECK(v == 0);
                    row += v;
                }
                CHECK(row == binomial(p.input_count(), w));
            }
        }
    }
    CHECK(ldgm_iowe({3, 5, 6}, 0, 0) == 1);
    CHECK_THROWS_AS(ldgm_iowe({3, 2, 2}, 0, 0), ValidationError);
}

TEST_CASE("ldpc_awd matches exhaustive layer permutations") {
    const auto brute = oracle::brute_force_ldpc(4, 2, 2);
    for (long l = 0; l <= 4; ++l) CHECK(ldpc_awd({4, 2, 2}, l) == brute[l]);
    const auto brute3 = oracle::brute_force_ldpc(4, 3, 2);
    for (long l = 0; l <= 4; ++l) CHECK(ldpc_awd({4, 3, 2}, l) == brute3[l]);
    CHECK(ldpc_awd({8, 2, 4}, 0) == 1);
    CHECK(ldpc_awd({96, 3, 6}, 0) == 1);
    CHECK_THROWS_AS(ldpc_awd({10, 2, 4}, 1), ValidationError);
}

TEST_CASE("ldpc_awd symmetry and parity") {
    for (const LdpcParams p : {LdpcParams{8, 2, 4}, LdpcParams{24, 3, 6}, LdpcParams{64, 4, 8}}) {
        const auto table = ldpc_awd_table(p);
        for (long l = 0; l <= p.n; ++l) {
            CHECK(table[l] == table[p.n - l]);
            CHECK(table[l] == ldpc_awd(p, l));
            if (l % 2) {
                CHECK(coef(f_plus(static_cast<int>(p.k)).pow_truncated(static_cast<unsigned long>(p.n / p.k), p.n), l) == 0);
                CHECK(table[l] == 0);
            }
        }
    }
}

TEST_CASE("concat_awd_ub matches a naive double sum") {
    const LdpcParams p{8, 4, 4};
    const auto table = concat_awd_ub_table(p);
    for (long l = 0; l <= 8; ++l) {
        const auto direct = naive_concat(8, 4, 4, l);
        CHECK(concat_awd_ub(p, l) == direct);
        CHECK(table[l] == direct);
        CHECK(direct >= 0);
    }
    CHECK(concat_awd_ub(p, 0) >= 1);
    const LdpcParams q{24, 3, 6};
    const auto t2 = concat_awd_ub_table(q);
    for (long l : {1L, 5L, 12L, 23L}) CHECK(t2[l] == naive_concat(24, 3, 6, l));
}

TEST_CASE("concat_awd_ub_table equals per-weight evaluation") {
    const LdpcParams p{64, 4, 8};
    const auto t = concat_awd_ub_table(p);
    for (long l : {0L, 1L, 2L, 7L, 32L, 63L, 64L}) CHECK(t[l] == concat_awd_ub(p, l));
}

TEST_CASE("gv_probability_bound") {
    CHECK(gv_probability_bound({32, 4, 8}, 1e-9) == 0);
    CHECK(gv_probability_bound({16, 4, 8}, 0.05) == 0);  // no weight in (0, 0.8)

    mpq_class direct = 0;
    for (long l = 1; l < 0.49 * 16; ++l) direct += concat_awd_ub({16, 2, 4}, l);
    CHECK(gv_probability_bound({16, 2, 4}, 0.49) == direct);

    // with even k only even weights survive, so n = 32 (l = 1 only) is still an empty bound
    CHECK(gv_probability_bound({32, 4, 8}, 0.05) == 0);
    const auto b48 = gv_probability_bound({48, 4, 8}, 0.05);
    const auto b64 = gv_probability_bound({64, 4, 8}, 0.05);
    const auto b80 = gv_probability_bound({80, 4, 8}, 0.05);
    CHECK(b48 > 0);
    CHECK(b64 < b48);
    CHECK(b80 < b64);
    CHECK_THROWS_AS(gv_probability_bound({16, 2, 4}, 0.5), ValidationError);
}

TEST_CASE("csv rows are exact and repeatable") {
    const auto t = ldpc_awd_table({16, 4, 4});
    std::ostringstream a, b;
    write_exact_rows(a, t, "x,");
    write_exact_rows(b, ldpc_awd_table({16, 4, 4}), "x,");
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("x,0,1,1\n", 0) == 0);
    std::ostringstream lg;
    write_log2_rows(lg, t);
    CHECK(lg.str().rfind("0,0\n", 0) == 0);
    CHECK(log_rational(mpq_class(0)) == -std::numeric_limits<double>::infinity());
}

#include "ldpcgm/enumerator.hpp"
#include "ldpcgm/errors.hpp"
#include "ldpcgm/random.hpp"
#include "ldpcgm/simulator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace ldpcgm;
using namespace ldpcgm::sim;

namespace {

std::vector<std::uint8_t> multiply(const SparseBinaryMatrix& m, const std::vector<std::uint8_t>& x) {
    std::vector<std::uint8_t> y(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto c : m.row(r)) y[r] ^= x[c];
    return y;
}

std::vector<std::uint8_t> bits_of(unsigned long v, std::size_t n) {
    std::vector<std::uint8_t> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = (v >> i) & 1U;
    return b;
}

long weight(const std::vector<std::uint8_t>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

// Null space basis of a small dense system, by elimination on bit masks.
std::vector<unsigned long> null_space(const SparseBinaryMatrix& h) {
    const std::size_t n = h.cols();
    std::vector<unsigned long> rows;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        unsigned long m = 0;
        for (auto c : h.row(r)) m |= 1UL << c;
        rows.push_back(m);
    }
    std::vector<int> pivot_of_col(n, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && !((rows[p] >> c) & 1UL)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && ((rows[r] >> c) & 1UL)) rows[r] ^= rows[rank];
        pivot_of_col[c] = static_cast<int>(rank++);
    }
    std::vector<unsigned long> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        unsigned long v = 1UL << f;
        for (std::size_t c = 0; c < n; ++c)
            if (pivot_of_col[c] >= 0 && ((rows[static_cast<std::size_t>(pivot_of_col[c])] >> f) & 1UL)) v |= 1UL << c;
        basis.push_back(v);
    }
    return basis;
}

Received all_zero_received(const CodeInstance& inst, double q, std::uint64_t seed) {
    const std::vector<std::uint8_t> zero(inst.variables(), 0);
    return receive(inst, zero, sample_bec(inst.length(), q, seed));
}

}  // namespace

TEST_CASE("sparse matrix construction") {
    const SparseBinaryMatrix m(2, 4, {{3, 1, 1, 0}, {2, 2}});
    CHECK(m.row(0) == std::vector<std::uint32_t>{0, 3});
    CHECK(m.row(1).empty());
    CHECK(m.cancelled_entries() == 4);
    CHECK(m.nnz() == 2);
    CHECK(m.column_weights() == std::vector<std::size_t>{1, 0, 0, 1});
    CHECK_THROWS(SparseBinaryMatrix(1, 2, {{2}}));
}

TEST_CASE("sample_ldpc") {
    const auto h = sample_ldpc({8, 2, 4}, 1);
    CHECK(h.rows() == 4);
    for (auto w : h.row_weights()) CHECK(w == 4);
    for (auto w : h.column_weights()) CHECK(w == 2);
    CHECK(sample_ldpc({8, 2, 4}, 1) == h);
    CHECK_FALSE(sample_ldpc({1024, 4, 8}, 1) == sample_ldpc({1024, 4, 8}, 2));
    CHECK_THROWS_AS(sample_ldpc({10, 2, 4}, 1), ValidationError);
}

TEST_CASE("sampled Gallager ensemble matches the exact average weight distribution") {
    const LdpcParams params{4, 2, 2};
    const double exact = ldpc_awd(params, 2).get_d();
    const int seeds = 100000;
    double sum = 0, sum_sq = 0;
    for (int s = 0; s < seeds; ++s) {
        const auto h = sample_ldpc(params, static_cast<std::uint64_t>(s));
        int count = 0;
        for (unsigned long v = 0; v < 16; ++v) {
            const auto x = bits_of(v, 4);
            if (weight(x) == 2 && is_codeword(h, x)) ++count;
        }
        sum += count;
        sum_sq += static_cast<double>(count) * count;
    }
    const double mean = sum / seeds;
    const double se = std::sqrt((sum_sq / seeds - mean * mean) / seeds);
    CHECK(std::fabs(mean - exact) <= 3 * se);
}

TEST_CASE("sample_ldgm") {
    const auto g = sample_ldgm({2, 2, 4}, 5);
    CHECK(g.rows() == 4);
    CHECK(g.cols() == 4);
    for (auto w : g.column_weights()) CHECK(w <= 2);
    // cancelled pairs account for the gap to the socket totals
    CHECK(g.nnz() + g.cancelled_entries() == 8);
    const auto rw = g.row_weights();
    for (std::size_t r = 0; r < g.rows(); ++r) CHECK(rw[r] % 2 == 0);
    CHECK(sample_ldgm({2, 2, 4}, 5) == g);
    CHECK(weight(multiply(g, std::vector<std::uint8_t>(4, 0))) == 0);
}

TEST_CASE("LDGM output weight frequencies against the exact conditional distribution") {
    const LdgmParams params{2, 2, 2};
    const int samples = 100000;
    std::vector<double> observed(3, 0.0);
    for (int s = 0; s < samples; ++s) {
        const auto g = sample_ldgm(params, static_cast<std::uint64_t>(s));
        observed[static_cast<std::size_t>(weight(multiply(g, {1, 0})))] += 1.0;
    }
    // P(h | w = 1) = A(w, h) / (C(n_in, w) C(n, h))
    double chi2 = 0.0;
    for (long h = 0; h <= 2; ++h) {
        const mpq_class a = ldgm_iowe(params, 1, h);
        mpz_class nh;
        mpz_bin_uiui(nh.get_mpz_t(), 2, static_cast<unsigned long>(h));
        const double p = mpq_class(a / (2 * nh)).get_d();
        if (h == 1) {
            CHECK(p == 0.0);
            CHECK(observed[1] == 0.0);
            continue;
        }
        CHECK(p == doctest::Approx(h == 0 ? 1.0 / 3 : 2.0 / 3));
        const double e = p * samples;
        chi2 += (observed[static_cast<std::size_t>(h)] - e) * (observed[static_cast<std::size_t>(h)] - e) / e;
    }
    CHECK(chi2 < 6.635);  // one degree of freedom, 0.01 level
}

TEST_CASE("encoder") {
    const auto h = sample_ldpc({96, 3, 6}, 3);
    const Encoder enc(h);
    CHECK(enc.dimension() + enc.rank() == 96);
    CHECK(enc.dimension() >= 48);
    const auto zero = enc.encode(std::vector<std::uint8_t>(enc.dimension(), 0));
    CHECK(weight(zero) == 0);

    Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::uint8_t> a(enc.dimension()), b(enc.dimension()), s(enc.dimension());
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = rng.next() & 1U;
            b[i] = rng.next() & 1U;
            s[i] = a[i] ^ b[i];
        }
        const auto ca = enc.encode(a), cb = enc.encode(b), cs = enc.encode(s);
        REQUIRE(is_codeword(h, ca));
        std::vector<std::uint8_t> x(ca.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = ca[i] ^ cb[i];
        CHECK(is_codeword(h, x));
        CHECK(x == cs);
    }
    CHECK_THROWS_AS(enc.encode({1, 0}), ValidationError);
}

TEST_CASE("concatenated instance structure") {
    const auto inst = sample_concatenated({64, 4, 8}, 21);
    CHECK(inst.outer.rows() == 32);
    CHECK(inst.inner.rows() == 64);
    CHECK(inst.inner.nnz() + inst.inner.cancelled_entries() == 64 * 8);
    CHECK(std::all_of(inst.pilot.begin(), inst.pilot.end(), [](auto p) { return p == 0; }));
    const auto zero = transmit(inst, std::vector<std::uint8_t>(64, 0));
    CHECK(weight(zero) == 0);
}

TEST_CASE("weight census of tiny concatenated codes stays within the ensemble bound") {
    const LdpcParams params{16, 4, 4};
    const auto bound = concat_awd_ub_table(params);
    const int seeds = 200;
    std::vector<double> sum(17, 0.0), sum_sq(17, 0.0);
    for (int s = 0; s < seeds; ++s) {
        const auto inst = sample_concatenated(params, static_cast<std::uint64_t>(s));
        const auto basis = null_space(inst.outer);
        REQUIRE(basis.size() <= 12);
        std::vector<double> count(17, 0.0);
        for (unsigned long m = 0; m < (1UL << basis.size()); ++m) {
            unsigned long v = 0;
            for (std::size_t b = 0; b < basis.size(); ++b)
                if ((m >> b) & 1UL) v ^= basis[b];
            count[static_cast<std::size_t>(weight(transmit(inst, bits_of(v, 16))))] += 1.0;
        }
        for (std::size_t l = 0; l <= 16; ++l) {
            sum[l] += count[l];
            sum_sq[l] += count[l] * count[l];
        }
    }
    for (std::size_t l = 1; l <= 16; ++l) {
        const double mean = sum[l] / seeds;
        const double se = std::sqrt(std::max(0.0, sum_sq[l] / seeds - mean * mean) / seeds);
        CHECK(mean <= bound[static_cast<long>(l)].get_d() + 3 * se + 1e-12);
    }
    CHECK(sum[0] / seeds >= 1.0);
}

TEST_CASE("BP boundary cases") {
    const auto inst = sample_concatenated({16, 4, 8}, 2);
    const auto clear = bp_decode(inst, all_zero_received(inst, 0.0, 1));
    CHECK_FALSE(clear.block_failure);
    CHECK(clear.residual_erasures == 0);
    CHECK(clear.iterations <= 1);

    const auto erased = bp_decode(inst, all_zero_received(inst, 1.0, 1));
    CHECK(erased.block_failure);
    CHECK(erased.residual_erasures == 16);
    CHECK(erased.unresolved_variables == 16);

    const auto ml = ml_decode_bec(inst, all_zero_received(inst, 1.0, 1));
    CHECK(ml.block_failure);
    CHECK(ml.free_variables > 0);
}

TEST_CASE("BP and ML on shared realizations") {
    auto compare = [](const CodeInstance& inst, double q, std::uint64_t s) {
        const Encoder enc(inst.outer);
        Rng rng(s);
        std::vector<std::uint8_t> msg(enc.dimension());
        for (auto& b : msg) b = rng.next() & 1U;
        const auto cw = enc.encode(msg);
        const auto rx = receive(inst, cw, sample_bec(inst.length(), q, s));
        const auto bp = bp_decode(inst, rx, {}, &cw);
        const auto ml = ml_decode_bec(inst, rx, &cw);
        CHECK(bp.wrong_bits == 0);
        CHECK(ml.wrong_bits == 0);
        CHECK(ml.residual_erasures <= bp.residual_erasures);
        if (!bp.block_failure) CHECK_FALSE(ml.block_failure);
        CHECK(ml.block_failure == (ml.residual_erasures > 0));
        // identical inputs give identical results
        const auto again = bp_decode(inst, rx, {}, &cw);
        CHECK(again.residual_erasures == bp.residual_erasures);
        CHECK(again.iterations == bp.iterations);
        return std::pair{!bp.block_failure, !ml.block_failure};
    };

    // the (8,8) inner map gives BP no degree-one anchor, so only ML makes progress here
    int ml_successes = 0;
    for (std::uint64_t s = 0; s < 30; ++s) {
        const double q = 0.25 + 0.05 * static_cast<double>(s % 6);
        ml_successes += compare(sample_concatenated({256, 4, 8}, mix64(s)), q, s).second;
    }
    CHECK(ml_successes > 0);

    const auto rho = de::variable_regular_rho(0.5, 1 << 16).series.distribution;
    const auto spec = de::truncate_variable_regular(rho, 0.5, 0.05);
    int bp_successes = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const double q = 0.3 + 0.05 * static_cast<double>(s % 5);
        bp_successes += compare(sample_irregular(spec, 2000, mix64(s + 100)), q, s).first;
    }
    CHECK(bp_successes > 0);
}

TEST_CASE("BP on the sampled check-regular ensemble below its design channel") {
    const auto series = de::check_regular_lambda(3, 0.95, 400);
    const auto spec = de::truncate_check_regular(series.distribution, 3, 0.95, 0.1);
    const std::size_t n = 10000;
    double unresolved = 0.0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const auto inst = sample_irregular(spec, n, trial_seed(7, static_cast<std::uint64_t>(t), 0));
        const auto r = bp_decode(inst, all_zero_received(inst, 0.90, mix64(static_cast<std::uint64_t>(t) + 3)));
        unresolved += static_cast<double>(r.unresolved_variables) / static_cast<double>(inst.variables());
    }
    CHECK(unresolved / trials < 1e-3);
}

TEST_CASE("irregular sampling respects the distributions") {
    const auto rho = de::variable_regular_rho(0.5, 1 << 16).series.distribution;
    const auto spec = de::truncate_variable_regular(rho, 0.5, 0.05);
    IrregularSampleInfo info;
    const auto inst = sample_irregular(spec, 20000, 4, &info);
    const auto cw = inst.outer.column_weights();
    const std::size_t sockets = inst.outer.nnz() + inst.outer.cancelled_entries();
    CHECK(sockets == 3 * inst.variables());
    CHECK(info.socket_adjustments <= static_cast<std::size_t>(spec.truncation_degree));  // one clipped draw
    CHECK(inst.inner.rows() == 20000);
    CHECK(sample_irregular(spec, 20000, 4).outer == inst.outer);
}

TEST_CASE("monte_carlo") {
    SweepConfig config;
    config.ensemble = LdpcParams{128, 4, 8};
    config.q_grid = {0.2, 0.35, 0.5, 0.65};
    config.trials = 0;
    config.decoders = {DecoderKind::BeliefPropagation, DecoderKind::MaximumLikelihood};
    CHECK(monte_carlo(config).empty());

    config.trials = 40;
    const auto a = monte_carlo(config);
    const auto b = monte_carlo(config);
    REQUIRE(a.size() == 8);
    std::ostringstream sa, sb;
    write_sweep_rows(sa, a);
    write_sweep_rows(sb, b);
    CHECK(sa.str() == sb.str());

    config.threads = 3;
    std::ostringstream sc;
    write_sweep_rows(sc, monte_carlo(config));
    CHECK(sc.str() == sa.str());

    // block failures grow with q; ML never worse than BP at the same q
    std::size_t previous = 0;
    for (std::size_t i = 0; i < a.size(); i += 2) {
        CHECK(a[i].decoder == DecoderKind::BeliefPropagation);
        CHECK(a[i].block_failures >= previous);
        previous = a[i].block_failures;
        CHECK(a[i + 1].block_failures <= a[i].block_failures);
        CHECK(a[i].ci_low <= static_cast<double>(a[i].block_failures) / a[i].trials);
        CHECK(a[i].ci_high >= static_cast<double>(a[i].block_failures) / a[i].trials);
    }
    CHECK(a.back().block_failures == 40);

    // a single trial is reproducible on its own
    const auto one = run_trial(config, 2, 17);
    const auto one_again = run_trial(config, 2, 17);
    REQUIRE(one.size() == 2);
    CHECK(one[0].residual_erasures == one_again[0].residual_erasures);
    CHECK(one[1].residual_erasures == one_again[1].residual_erasures);
}

TEST_CASE("Clopper-Pearson interval") {
    const auto [lo, hi] = clopper_pearson(10, 0);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(0.3085).epsilon(1e-4));
    const auto [lo2, hi2] = clopper_pearson(10, 10);
    CHECK(hi2 == 1.0);
    CHECK(lo2 == doctest::Approx(1 - 0.3085).epsilon(1e-4));
    const auto [lo3, hi3] = clopper_pearson(100, 50);
    CHECK(lo3 < 0.5);
    CHECK(hi3 > 0.5);
    CHECK(hi3 - 0.5 == doctest::Approx(0.5 - lo3).epsilon(1e-9));
}

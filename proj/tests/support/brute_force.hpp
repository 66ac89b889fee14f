#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace oracle {

// Average over all layer permutations of the number of weight-l codewords.
inline std::vector<mpq_class> brute_force_ldpc(long n, long j, long k) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<mpz_class> count(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::size_t> choice(static_cast<std::size_t>(j), 0);
    mpz_class total = 0;
    while (true) {
        for (unsigned x = 0; x < (1U << n); ++x) {
            bool ok = true;
            for (long b = 0; b < j && ok; ++b) {
                const auto& p = perms[choice[static_cast<std::size_t>(b)]];
                for (long r = 0; r < n / k && ok; ++r) {
                    int parity = 0;
                    for (long t = 0; t < k; ++t) parity ^= (x >> p[static_cast<std::size_t>(r * k + t)]) & 1U;
                    ok = parity == 0;
                }
            }
            if (ok) ++count[static_cast<std::size_t>(std::popcount(x))];
        }
        ++total;
        std::size_t b = 0;
        while (b < choice.size() && ++choice[b] == perms.size()) choice[b++] = 0;
        if (b == choice.size()) break;
    }
    std::vector<mpq_class> out;
    for (auto& c : count) {
        mpq_class v(c, total);
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

// Z[w][h] averaged over all socket matchings.
inline std::vector<std::vector<mpq_class>> brute_force_ldgm(long c, long d, long n) {
    const long inputs = d * n / c, sockets = d * n;
    std::vector<int> sigma(static_cast<std::size_t>(sockets));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::vector<mpz_class>> count(static_cast<std::size_t>(inputs) + 1,
                                              std::vector<mpz_class>(static_cast<std::size_t>(n) + 1, 0));
    mpz_class total = 0;
    do {
        for (unsigned u = 0; u < (1U << inputs); ++u) {
            int h = 0;
            for (long chk = 0; chk < n; ++chk) {
                unsigned parity = 0;
                for (long t = 0; t < d; ++t) parity ^= (u >> (sigma[static_cast<std::size_t>(chk * d + t)] / c)) & 1U;
                h += static_cast<int>(parity);
            }
            ++count[static_cast<std::size_t>(std::popcount(u))][static_cast<std::size_t>(h)];
        }
        ++total;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    std::vector<std::vector<mpq_class>> z;
    for (auto& row : count) {
        z.emplace_back();
        for (auto& v : row) {
            mpq_class q(v, total);
            q.canonicalize();
            z.back().push_back(q);
        }
    }
    return z;
}

}  // namespace oracle

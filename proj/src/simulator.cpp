#include "ldpcgm/simulator.hpp"

#include "ldpcgm/errors.hpp"
#include "ldpcgm/format.hpp"
#include "ldpcgm/gf2.hpp"
#include "ldpcgm/random.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

namespace ldpcgm::sim {

// --- SparseBinaryMatrix ---------------------------------------------------

SparseBinaryMatrix::SparseBinaryMatrix(std::size_t rows, std::size_t cols,
                                       std::vector<std::vector<std::uint32_t>> multiset_rows)
    : rows_(rows), cols_(cols), entries_(std::move(multiset_rows)) {
    if (entries_.size() != rows_) throw ValidationError("row count mismatch");
    for (auto& r : entries_) {
        std::sort(r.begin(), r.end());
        std::vector<std::uint32_t> kept;
        kept.reserve(r.size());
        for (std::size_t i = 0; i < r.size();) {
            std::size_t j = i;
            while (j < r.size() && r[j] == r[i]) ++j;
            if (r[i] >= cols_) throw ValidationError("column index out of range");
            if ((j - i) % 2 == 1) kept.push_back(r[i]);
            cancelled_ += (j - i) - (j - i) % 2;
            i = j;
        }
        r = std::move(kept);
    }
}

std::size_t SparseBinaryMatrix::nnz() const {
    std::size_t s = 0;
    for (const auto& r : entries_) s += r.size();
    return s;
}

std::vector<std::size_t> SparseBinaryMatrix::row_weights() const {
    std::vector<std::size_t> w;
    w.reserve(rows_);
    for (const auto& r : entries_) w.push_back(r.size());
    return w;
}

std::vector<std::size_t> SparseBinaryMatrix::column_weights() const {
    std::vector<std::size_t> w(cols_, 0);
    for (const auto& r : entries_)
        for (auto c : r) ++w[c];
    return w;
}

// --- sampling ----------------------------------------------------------------

SparseBinaryMatrix sample_ldpc(const LdpcParams& params, std::uint64_t seed) {
    params.validate();
    const std::size_t n = static_cast<std::size_t>(params.n);
    const std::size_t k = static_cast<std::size_t>(params.k);
    const std::size_t per_layer = n / k;
    Rng rng(seed);
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(per_layer * static_cast<std::size_t>(params.j));
    std::vector<std::uint32_t> perm(n);
    for (long layer = 0; layer < params.j; ++layer) {
        std::iota(perm.begin(), perm.end(), 0U);
        rng.shuffle(perm);
        for (std::size_t r = 0; r < per_layer; ++r)
            rows.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(r * k),
                              perm.begin() + static_cast<std::ptrdiff_t>((r + 1) * k));
    }
    const std::size_t count = rows.size();
    return SparseBinaryMatrix(count, n, std::move(rows));
}

namespace {

// Match variable sockets to check sockets uniformly; rows are checks.
SparseBinaryMatrix match_sockets(const std::vector<std::size_t>& check_degrees,
                                 const std::vector<std::size_t>& variable_degrees, Rng& rng) {
    std::vector<std::uint32_t> sockets;
    for (std::size_t v = 0; v < variable_degrees.size(); ++v)
        sockets.insert(sockets.end(), variable_degrees[v], static_cast<std::uint32_t>(v));
    rng.shuffle(sockets);
    std::vector<std::vector<std::uint32_t>> rows(check_degrees.size());
    std::size_t pos = 0;
    for (std::size_t c = 0; c < check_degrees.size(); ++c) {
        rows[c].assign(sockets.begin() + static_cast<std::ptrdiff_t>(pos),
                       sockets.begin() + static_cast<std::ptrdiff_t>(pos + check_degrees[c]));
        pos += check_degrees[c];
    }
    if (pos != sockets.size()) throw std::logic_error("socket count mismatch");
    return SparseBinaryMatrix(check_degrees.size(), variable_degrees.size(), std::move(rows));
}

// Largest-remainder rounding of total * weight_i / sum(weight) to integers summing to total.
std::vector<std::size_t> apportion(const std::vector<double>& weight, std::size_t total) {
    const double sum = std::accumulate(weight.begin(), weight.end(), 0.0);
    std::vector<std::size_t> count(weight.size(), 0);
    if (!(sum > 0.0) || total == 0) return count;
    std::vector<std::pair<double, std::size_t>> remainder;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        const double exact = static_cast<double>(total) * weight[i] / sum;
        count[i] = static_cast<std::size_t>(std::floor(exact));
        assigned += count[i];
        remainder.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(remainder.begin(), remainder.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < total && i < remainder.size(); ++i, ++assigned) ++count[remainder[i].second];
    return count;
}

std::vector<std::size_t> expand_degrees(const std::vector<std::size_t>& count_by_degree) {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < count_by_degree.size(); ++d) out.insert(out.end(), count_by_degree[d], d);
    return out;
}

}  // namespace

SparseBinaryMatrix sample_ldgm(const LdgmParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);
    const std::vector<std::size_t> checks(static_cast<std::size_t>(params.n), static_cast<std::size_t>(params.d));
    const std::vector<std::size_t> inputs(static_cast<std::size_t>(params.input_count()),
                                          static_cast<std::size_t>(params.c));
    return match_sockets(checks, inputs, rng);
}

CodeInstance sample_concatenated(const LdpcParams& params, std::uint64_t seed) {
    params.validate();
    CodeInstance inst;
    inst.outer = sample_ldpc(params, mix64(seed + 1));
    inst.inner = sample_ldgm(LdgmParams{params.k, params.k, params.n}, mix64(seed + 2));
    inst.pilot.assign(static_cast<std::size_t>(params.n), 0);
    inst.ldpc = params;
    inst.seed = seed;
    return inst;
}

CodeInstance sample_irregular(const de::EnsembleSpec& spec, std::size_t n, std::uint64_t seed,
                              IrregularSampleInfo* info) {
    if (n < 2) throw ValidationError("block length must be >= 2");
    if (!spec.variable_nodes || !spec.rho_edges)
        throw ValidationError("ensemble has no finite degree distributions to sample from");
    if (spec.p != 0.0) throw ValidationError("sampling punctured ensembles is not supported");

    // Pilots are known, so only their total edge count matters to decoding. They
    // get the full edge share of the truncated tail, including degrees beyond
    // the expanded series, spread evenly over the pilot nodes.
    const auto& vnode = spec.variable_nodes->coefficients();
    const bool pilots = spec.truncation_degree > 0 && spec.pilot_fraction > 0.0;
    std::vector<double> weight(vnode.begin(), vnode.end());
    if (pilots) {
        weight.resize(std::min(weight.size(), static_cast<std::size_t>(spec.truncation_degree) + 1));
        weight.push_back(spec.pilot_fraction);
    }
    std::vector<std::size_t> count = apportion(weight, n);
    const std::size_t pilot_count = pilots ? count.back() : 0;
    if (pilots) count.pop_back();
    std::vector<std::size_t> var_deg = expand_degrees(count);
    if (pilot_count > 0) {
        const double kept = spec.lambda(1.0);
        const std::size_t plain = std::accumulate(var_deg.begin(), var_deg.end(), std::size_t{0});
        const auto pilot_edges =
            static_cast<std::size_t>(std::llround(static_cast<double>(plain) * (1.0 - kept) / kept));
        for (std::size_t i = 0; i < pilot_count; ++i)
            var_deg.push_back(pilot_edges / pilot_count + (i < pilot_edges % pilot_count ? 1 : 0));
    }

    std::size_t var_edges = std::accumulate(var_deg.begin(), var_deg.end(), std::size_t{0});
    // Whole parts of the expected check counts are placed deterministically. The
    // leftover edge budget is filled by drawing degrees with probability
    // proportional to the fractional parts, so sparse tail degrees keep their
    // expected edge share; the last draw is clipped to the budget.
    const auto& rho = spec.rho_edges->coefficients();
    Rng rng(mix64(seed + 1));
    std::vector<std::size_t> check_count(rho.size(), 0);
    std::vector<double> fraction(rho.size(), 0.0);
    double mass = 0.0;
    for (std::size_t i = 1; i < rho.size(); ++i) mass += rho[i];
    std::size_t placed = 0;
    for (std::size_t i = 1; i < rho.size(); ++i) {
        const double expected = static_cast<double>(var_edges) * rho[i] / mass / static_cast<double>(i);
        check_count[i] = static_cast<std::size_t>(std::floor(expected));
        fraction[i] = expected - std::floor(expected);
        placed += check_count[i] * i;
    }
    std::size_t adjustments = 0;
    while (placed > var_edges) {  // only from rounding noise in the whole parts
        std::size_t i = rho.size() - 1;
        while (i > 1 && check_count[i] == 0) --i;
        --check_count[i];
        placed -= i;
        if (placed < var_edges) {
            adjustments += var_edges - placed;
            ++check_count[var_edges - placed];
            placed = var_edges;
        }
    }
    std::vector<double> cumulative(fraction.size(), 0.0);
    std::partial_sum(fraction.begin(), fraction.end(), cumulative.begin());
    while (placed < var_edges && cumulative.back() > 0.0) {
        const double u = rng.uniform() * cumulative.back();
        std::size_t i = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        i = std::min(i, cumulative.size() - 1);
        if (i + placed > var_edges) {
            adjustments += i - (var_edges - placed);
            i = var_edges - placed;
        }
        ++check_count[i];
        placed += i;
    }
    if (placed != var_edges) throw ValidationError("check degree distribution has no mass to place");
    std::vector<std::size_t> check_deg = expand_degrees(check_count);
    if (info) info->socket_adjustments = adjustments;

    CodeInstance inst;
    inst.outer = match_sockets(check_deg, var_deg, rng);
    inst.inner = sample_ldgm(LdgmParams{2, 2, static_cast<long>(n)}, mix64(seed + 2));
    inst.pilot.assign(n, 0);
    for (std::size_t v = n - pilot_count; v < n; ++v) inst.pilot[v] = 1;
    inst.seed = seed;
    return inst;
}

// --- encoding ------------------------------------------------------------------

Encoder::Encoder(const SparseBinaryMatrix& h) : n_(h.cols()) {
    gf2::DenseMatrix m(h.rows(), n_);
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (auto c : h.row(r)) m.flip(r, c);
    pivot_columns_ = gf2::reduce(m, n_);
    std::vector<char> is_pivot(n_, 0);
    for (auto c : pivot_columns_) is_pivot[c] = 1;
    std::vector<std::uint32_t> free_index(n_, 0);
    for (std::size_t c = 0; c < n_; ++c) {
        if (!is_pivot[c]) {
            free_index[c] = static_cast<std::uint32_t>(free_columns_.size());
            free_columns_.push_back(c);
        }
    }
    pivot_dependencies_.resize(pivot_columns_.size());
    for (std::size_t r = 0; r < pivot_columns_.size(); ++r)
        for (auto f : free_columns_)
            if (m.get(r, f)) pivot_dependencies_[r].push_back(free_index[f]);
}

std::vector<std::uint8_t> Encoder::encode(const std::vector<std::uint8_t>& message) const {
    if (message.size() != dimension())
        throw ValidationError("message length " + std::to_string(message.size()) + " != code dimension " +
                              std::to_string(dimension()));
    std::vector<std::uint8_t> word(n_, 0);
    for (std::size_t i = 0; i < free_columns_.size(); ++i) word[free_columns_[i]] = message[i] & 1U;
    for (std::size_t r = 0; r < pivot_columns_.size(); ++r) {
        std::uint8_t v = 0;
        for (auto f : pivot_dependencies_[r]) v ^= message[f] & 1U;
        word[pivot_columns_[r]] = v;
    }
    return word;
}

std::vector<std::uint8_t> transmit(const CodeInstance& instance, const std::vector<std::uint8_t>& codeword) {
    if (codeword.size() != instance.variables()) throw ValidationError("codeword length mismatch");
    std::vector<std::uint8_t> out(instance.inner.rows(), 0);
    for (std::size_t r = 0; r < instance.inner.rows(); ++r)
        for (auto c : instance.inner.row(r)) out[r] ^= codeword[c];
    return out;
}

bool is_codeword(const SparseBinaryMatrix& h, const std::vector<std::uint8_t>& word) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::uint8_t s = 0;
        for (auto c : h.row(r)) s ^= word[c];
        if (s) return false;
    }
    return true;
}

ChannelRealization sample_bec(std::size_t n, double q, std::uint64_t seed) {
    if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("erasure probability must lie in [0, 1]");
    Rng rng(seed);
    ChannelRealization ch;
    ch.q = q;
    ch.erased.resize(n);
    for (auto& e : ch.erased) e = rng.bernoulli(q) ? 1 : 0;
    return ch;
}

Received receive(const CodeInstance& instance, const std::vector<std::uint8_t>& codeword,
                 const ChannelRealization& channel) {
    const auto sent = transmit(instance, codeword);
    if (channel.erased.size() != sent.size()) throw ValidationError("erasure mask length mismatch");
    Received r;
    r.outputs.resize(sent.size());
    for (std::size_t i = 0; i < sent.size(); ++i) r.outputs[i] = channel.erased[i] ? -1 : static_cast<std::int8_t>(sent[i]);
    r.pilots.assign(instance.variables(), -1);
    for (std::size_t v = 0; v < instance.variables(); ++v)
        if (instance.pilot[v]) r.pilots[v] = static_cast<std::int8_t>(codeword[v]);
    return r;
}

const char* to_string(DecoderKind d) { return d == DecoderKind::BeliefPropagation ? "bp" : "ml"; }

// --- belief propagation -------------------------------------------------------

namespace {

// Compressed adjacency: for each node, the ids of its incident edges.
struct Adjacency {
    std::vector<std::uint32_t> start, edge;

    // Row-major edges of m; node index = column.
    static Adjacency columns_of(const SparseBinaryMatrix& m) {
        Adjacency a;
        a.start.assign(m.cols() + 1, 0);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (auto c : m.row(r)) ++a.start[c + 1];
        for (std::size_t c = 0; c < m.cols(); ++c) a.start[c + 1] += a.start[c];
        a.edge.resize(a.start.back());
        std::vector<std::uint32_t> fill(a.start.begin(), a.start.end() - 1);
        std::uint32_t e = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (auto c : m.row(r)) a.edge[fill[c]++] = e++;
        return a;
    }
};

std::vector<std::uint32_t> row_starts(const SparseBinaryMatrix& m) {
    std::vector<std::uint32_t> s(m.rows() + 1, 0);
    for (std::size_t r = 0; r < m.rows(); ++r) s[r + 1] = s[r] + static_cast<std::uint32_t>(m.row(r).size());
    return s;
}

}  // namespace

TrialResult bp_decode(const CodeInstance& inst, const Received& rx, const BpOptions& opt,
                      const std::vector<std::uint8_t>* truth) {
    const std::size_t n = inst.variables();
    const std::size_t outputs = inst.inner.rows();
    if (rx.outputs.size() != outputs || rx.pilots.size() != n) throw ValidationError("received word size mismatch");

    const auto g_start = row_starts(inst.inner);
    const auto h_start = row_starts(inst.outer);
    const Adjacency vg = Adjacency::columns_of(inst.inner);
    const Adjacency vh = Adjacency::columns_of(inst.outer);
    std::vector<std::uint32_t> g_var, h_var;
    for (std::size_t r = 0; r < outputs; ++r) g_var.insert(g_var.end(), inst.inner.row(r).begin(), inst.inner.row(r).end());
    for (std::size_t r = 0; r < inst.outer.rows(); ++r) h_var.insert(h_var.end(), inst.outer.row(r).begin(), inst.outer.row(r).end());

    std::vector<std::int8_t> x1(g_var.size(), -1), x4(g_var.size(), -1);
    std::vector<std::int8_t> x2(h_var.size(), -1), x3(h_var.size(), -1);
    std::vector<std::int8_t> value(n, -1);

    TrialResult res;
    res.decoder = DecoderKind::BeliefPropagation;
    std::size_t previous_known = 0;

    for (std::size_t it = 0; it < opt.max_iterations; ++it) {
        // output checks -> variables
        for (std::size_t r = 0; r < outputs; ++r) {
            const std::uint32_t b = g_start[r], e_end = g_start[r + 1];
            if (rx.outputs[r] < 0) {
                for (std::uint32_t e = b; e < e_end; ++e) x1[e] = -1;
                continue;
            }
            int erased = 0;
            std::uint32_t hole = 0;
            std::int8_t acc = rx.outputs[r];
            for (std::uint32_t e = b; e < e_end; ++e) {
                if (x4[e] < 0) {
                    ++erased;
                    hole = e;
                } else {
                    acc ^= x4[e];
                }
            }
            for (std::uint32_t e = b; e < e_end; ++e) {
                if (erased == 0) x1[e] = static_cast<std::int8_t>(acc ^ x4[e]);
                else if (erased == 1 && e == hole) x1[e] = acc;
                else x1[e] = -1;
            }
        }
        // variables -> outer checks
        for (std::size_t v = 0; v < n; ++v) {
            int known_val = rx.pilots[v];
            int from_outputs = 0;
            for (std::uint32_t i = vg.start[v]; i < vg.start[v + 1]; ++i) {
                const auto m = x1[vg.edge[i]];
                if (m >= 0) {
                    ++from_outputs;
                    known_val = m;
                }
            }
            int from_checks = 0;
            for (std::uint32_t i = vh.start[v]; i < vh.start[v + 1]; ++i) {
                const auto m = x3[vh.edge[i]];
                if (m >= 0) {
                    ++from_checks;
                    known_val = m;
                }
            }
            const bool anchored = rx.pilots[v] >= 0 || from_outputs > 0;
            for (std::uint32_t i = vh.start[v]; i < vh.start[v + 1]; ++i) {
                const std::uint32_t e = vh.edge[i];
                const int others = from_checks - (x3[e] >= 0 ? 1 : 0);
                x2[e] = (anchored || others > 0) ? static_cast<std::int8_t>(known_val) : -1;
            }
        }
        // outer checks -> variables
        for (std::size_t c = 0; c + 1 < h_start.size(); ++c) {
            const std::uint32_t b = h_start[c], e_end = h_start[c + 1];
            int erased = 0;
            std::uint32_t hole = 0;
            std::int8_t acc = 0;
            for (std::uint32_t e = b; e < e_end; ++e) {
                if (x2[e] < 0) {
                    ++erased;
                    hole = e;
                } else {
                    acc ^= x2[e];
                }
            }
            for (std::uint32_t e = b; e < e_end; ++e) {
                if (erased == 0) x3[e] = static_cast<std::int8_t>(acc ^ x2[e]);
                else if (erased == 1 && e == hole) x3[e] = acc;
                else x3[e] = -1;
            }
        }
        // variables -> output checks, and variable status
        std::size_t known = 0;
        for (std::size_t v = 0; v < n; ++v) {
            int known_val = rx.pilots[v];
            int from_checks = 0;
            for (std::uint32_t i = vh.start[v]; i < vh.start[v + 1]; ++i) {
                const auto m = x3[vh.edge[i]];
                if (m >= 0) {
                    ++from_checks;
                    known_val = m;
                }
            }
            int from_outputs = 0;
            for (std::uint32_t i = vg.start[v]; i < vg.start[v + 1]; ++i) {
                const auto m = x1[vg.edge[i]];
                if (m >= 0) {
                    ++from_outputs;
                    known_val = m;
                }
            }
            const bool anchored = rx.pilots[v] >= 0 || from_checks > 0;
            for (std::uint32_t i = vg.start[v]; i < vg.start[v + 1]; ++i) {
                const std::uint32_t e = vg.edge[i];
                const int others = from_outputs - (x1[e] >= 0 ? 1 : 0);
                x4[e] = (anchored || others > 0) ? static_cast<std::int8_t>(known_val) : -1;
            }
            if (known_val >= 0 && value[v] < 0) value[v] = static_cast<std::int8_t>(known_val);
            if (value[v] >= 0) ++known;
        }

        const bool progressed = known > previous_known;
        previous_known = known;
        if (progressed) res.iterations = it + 1;
        if (opt.record_trajectory)
            res.variable_erasure_trajectory.push_back(static_cast<double>(n - known) / static_cast<double>(n));
        else if (!progressed && it > 0)
            break;
        if (!opt.record_trajectory && !progressed && known == 0 && it == 0) {
            // nothing can start: every message stays erased
            bool any_message = false;
            for (auto m : x1) any_message |= m >= 0;
            for (auto m : x3) any_message |= m >= 0;
            if (!any_message) break;
        }
    }

    for (std::size_t v = 0; v < n; ++v) {
        if (value[v] < 0) ++res.unresolved_variables;
        else if (truth && value[v] != (*truth)[v]) ++res.wrong_bits;
    }
    for (std::size_t r = 0; r < outputs; ++r) {
        if (rx.outputs[r] >= 0) continue;
        bool all_known = true;
        for (auto v : inst.inner.row(r)) all_known &= value[v] >= 0;
        if (!all_known) ++res.residual_erasures;
    }
    res.block_failure = res.residual_erasures > 0;
    return res;
}

// --- maximum likelihood ---------------------------------------------------------

TrialResult ml_decode_bec(const CodeInstance& inst, const Received& rx, const std::vector<std::uint8_t>* truth) {
    const std::size_t n = inst.variables();
    const std::size_t outputs = inst.inner.rows();
    if (rx.outputs.size() != outputs || rx.pilots.size() != n) throw ValidationError("received word size mismatch");

    std::size_t rows = inst.outer.rows();
    for (auto o : rx.outputs) rows += o >= 0;
    for (auto p : rx.pilots) rows += p >= 0;

    // columns 0..n-1 unknowns, column n the right-hand side
    gf2::DenseMatrix m(rows, n + 1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < inst.outer.rows(); ++c, ++r)
        for (auto v : inst.outer.row(c)) m.flip(r, v);
    for (std::size_t o = 0; o < outputs; ++o) {
        if (rx.outputs[o] < 0) continue;
        for (auto v : inst.inner.row(o)) m.flip(r, v);
        if (rx.outputs[o]) m.flip(r, n);
        ++r;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (rx.pilots[v] < 0) continue;
        m.flip(r, v);
        if (rx.pilots[v]) m.flip(r, n);
        ++r;
    }

    const auto pivots = gf2::reduce(m, n);
    std::vector<std::int64_t> pivot_row(n, -1);
    for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = static_cast<std::int64_t>(i);

    // mask of free (non-pivot) unknown columns
    gf2::DenseMatrix free_mask(1, n + 1);
    for (std::size_t v = 0; v < n; ++v)
        if (pivot_row[v] < 0) free_mask.flip(0, v);
    const std::uint64_t* fm = free_mask.row(0);
    const std::size_t words = m.words();

    TrialResult res;
    res.decoder = DecoderKind::MaximumLikelihood;
    res.free_variables = n - pivots.size();

    // particular solution with free variables at zero
    std::vector<std::uint8_t> sol(n, 0);
    std::vector<char> determined(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (pivot_row[v] < 0) continue;
        const std::uint64_t* row = m.row(static_cast<std::size_t>(pivot_row[v]));
        sol[v] = m.get(static_cast<std::size_t>(pivot_row[v]), n);
        bool depends = false;
        for (std::size_t w = 0; w < words && !depends; ++w) depends = (row[w] & fm[w]) != 0;
        determined[v] = !depends;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!determined[v]) ++res.unresolved_variables;
        else if (truth && sol[v] != (*truth)[v]) ++res.wrong_bits;
    }

    // an erased output is determined iff its row is orthogonal to the solution-space kernel
    std::vector<std::uint64_t> acc(words);
    for (std::size_t o = 0; o < outputs; ++o) {
        if (rx.outputs[o] >= 0) continue;
        std::fill(acc.begin(), acc.end(), 0);
        std::uint8_t val = 0;
        for (auto v : inst.inner.row(o)) {
            val ^= sol[v];
            if (pivot_row[v] < 0) {
                acc[v >> 6] ^= std::uint64_t{1} << (v & 63);
            } else {
                const std::uint64_t* row = m.row(static_cast<std::size_t>(pivot_row[v]));
                for (std::size_t w = 0; w < words; ++w) acc[w] ^= row[w];
            }
        }
        bool ambiguous = false;
        for (std::size_t w = 0; w < words && !ambiguous; ++w) ambiguous = (acc[w] & fm[w]) != 0;
        if (ambiguous) {
            ++res.residual_erasures;
        } else if (truth) {
            std::uint8_t sent = 0;
            for (auto v : inst.inner.row(o)) sent ^= (*truth)[v];
            if (sent != val) ++res.wrong_bits;
        }
    }
    res.block_failure = res.residual_erasures > 0;
    return res;
}

// --- Monte Carlo -------------------------------------------------------------------

std::pair<double, double> clopper_pearson(std::size_t trials, std::size_t failures, double confidence) {
    if (trials == 0) return {0.0, 1.0};
    using boost::math::binomial_distribution;
    const double alpha = (1.0 - confidence) / 2.0;
    const double t = static_cast<double>(trials), f = static_cast<double>(failures);
    const double lo = binomial_distribution<>::find_lower_bound_on_p(
        t, f, alpha, binomial_distribution<>::clopper_pearson_exact_interval);
    const double hi = binomial_distribution<>::find_upper_bound_on_p(
        t, f, alpha, binomial_distribution<>::clopper_pearson_exact_interval);
    return {lo, hi};
}

std::vector<TrialResult> run_trial(const SweepConfig& config, std::size_t q_index, std::size_t trial) {
    const std::uint64_t seed = trial_seed(config.master_seed, trial, q_index);
    const double q = config.q_grid.at(q_index);

    CodeInstance inst;
    bool gallager = false;
    if (const auto* p = std::get_if<LdpcParams>(&config.ensemble)) {
        inst = sample_concatenated(*p, mix64(seed + 1));
        gallager = true;
    } else {
        const auto& irr = std::get<IrregularEnsemble>(config.ensemble);
        inst = sample_irregular(irr.spec, irr.n, mix64(seed + 1));
    }

    std::vector<std::uint8_t> codeword(inst.variables(), 0);
    if (gallager && inst.variables() <= config.encode_limit) {
        const Encoder enc(inst.outer);
        Rng rng(mix64(seed + 2));
        std::vector<std::uint8_t> msg(enc.dimension());
        for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next() & 1U);
        codeword = enc.encode(msg);
    }
    const ChannelRealization ch = sample_bec(inst.length(), q, mix64(seed + 3));
    const Received rx = receive(inst, codeword, ch);

    std::vector<TrialResult> out;
    for (auto d : config.decoders) {
        if (d == DecoderKind::BeliefPropagation) {
            BpOptions opt;
            opt.max_iterations = config.max_iterations;
            out.push_back(bp_decode(inst, rx, opt, &codeword));
        } else {
            out.push_back(ml_decode_bec(inst, rx, &codeword));
        }
    }
    return out;
}

std::vector<SweepRow> monte_carlo(const SweepConfig& config) {
    std::vector<SweepRow> rows;
    if (config.trials == 0 || config.q_grid.empty() || config.decoders.empty()) return rows;
    for (double q : config.q_grid)
        if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("erasure probabilities must lie in [0, 1]");

    const std::size_t nq = config.q_grid.size(), nd = config.decoders.size();
    const std::size_t jobs = nq * config.trials;
    std::vector<std::size_t> bit(jobs * nd, 0), block(jobs * nd, 0);

    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t job = first; job < jobs; job += stride) {
            const auto results = run_trial(config, job / config.trials, job % config.trials);
            for (std::size_t d = 0; d < nd; ++d) {
                bit[job * nd + d] = results[d].residual_erasures;
                block[job * nd + d] = results[d].block_failure ? 1 : 0;
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, jobs));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }

    for (std::size_t qi = 0; qi < nq; ++qi) {
        for (std::size_t d = 0; d < nd; ++d) {
            SweepRow row;
            row.q = config.q_grid[qi];
            row.decoder = config.decoders[d];
            row.trials = config.trials;
            row.seed = config.master_seed;
            for (std::size_t t = 0; t < config.trials; ++t) {
                const std::size_t job = qi * config.trials + t;
                row.bit_failures += bit[job * nd + d];
                row.block_failures += block[job * nd + d];
            }
            std::tie(row.ci_low, row.ci_high) = clopper_pearson(row.trials, row.block_failures);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_rows(std::ostream& os, const std::vector<SweepRow>& rows) {
    for (const auto& r : rows)
        os << format_double(r.q) << ',' << to_string(r.decoder) << ',' << r.trials << ',' << r.bit_failures << ','
           << r.block_failures << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ',' << r.seed
           << '\n';
}

}  // namespace ldpcgm::sim

#pragma once

#include "ldpcgm/density_evolution.hpp"
#include "ldpcgm/enumerator.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

namespace ldpcgm::sim {

/// Sparse GF(2) matrix as row-major column lists. Entries within a row are
/// sorted and distinct; repeated entries cancel in pairs when building.
class SparseBinaryMatrix {
public:
    SparseBinaryMatrix() = default;
    SparseBinaryMatrix(std::size_t rows, std::size_t cols, std::vector<std::vector<std::uint32_t>> multiset_rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<std::uint32_t>& row(std::size_t r) const { return entries_[r]; }
    std::size_t nnz() const;
    /// Entries removed because they appeared an even number of times.
    std::size_t cancelled_entries() const { return cancelled_; }

    std::vector<std::size_t> row_weights() const;
    std::vector<std::size_t> column_weights() const;

    friend bool operator==(const SparseBinaryMatrix& a, const SparseBinaryMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, cancelled_ = 0;
    std::vector<std::vector<std::uint32_t>> entries_;
};

/// Gallager layered parity-check matrix: j stacked blocks, each a random column
/// permutation of the block with k consecutive ones per row.
SparseBinaryMatrix sample_ldpc(const LdpcParams& params, std::uint64_t seed);

/// Regular LDGM connections by a uniform matching of input sockets to output sockets.
/// Row r lists the inputs feeding output r.
SparseBinaryMatrix sample_ldgm(const LdgmParams& params, std::uint64_t seed);

/// Outer parity checks, inner generator connections, and known (pilot) outer positions.
struct CodeInstance {
    SparseBinaryMatrix outer;   // checks x n outer variables
    SparseBinaryMatrix inner;   // n outputs x n outer variables
    std::vector<std::uint8_t> pilot;  // 1 where the outer variable is known to the decoder
    std::optional<LdpcParams> ldpc;
    std::uint64_t seed = 0;

    std::size_t length() const { return inner.rows(); }
    std::size_t variables() const { return outer.cols(); }
    std::size_t edge_count() const { return outer.nnz() + inner.nnz() + inner.rows(); }
};

/// Gallager (n, j, k) outer code followed by an independent (k, k) LDGM map.
CodeInstance sample_concatenated(const LdpcParams& params, std::uint64_t seed);

struct IrregularSampleInfo {
    std::size_t socket_adjustments = 0;  // check sockets trimmed so both sides have equal socket totals
};

/// Configuration-model sample of a density-evolution ensemble with a (2,2) inner code.
/// Variables of degree above the truncation degree become pilots (check-regular).
CodeInstance sample_irregular(const de::EnsembleSpec& spec, std::size_t n, std::uint64_t seed,
                              IrregularSampleInfo* info = nullptr);

/// Systematic encoder from one GF(2) elimination of the parity-check matrix.
class Encoder {
public:
    explicit Encoder(const SparseBinaryMatrix& parity_check);
    std::size_t dimension() const { return free_columns_.size(); }
    std::size_t rank() const { return pivot_columns_.size(); }
    std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& message) const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> pivot_columns_, free_columns_;
    std::vector<std::vector<std::uint32_t>> pivot_dependencies_;  // free-column indices per pivot
};

/// Transmitted word: output r is the XOR of the outer codeword over inner row r.
std::vector<std::uint8_t> transmit(const CodeInstance& instance, const std::vector<std::uint8_t>& codeword);

/// True iff every outer check is satisfied.
bool is_codeword(const SparseBinaryMatrix& parity_check, const std::vector<std::uint8_t>& word);

struct ChannelRealization {
    std::vector<std::uint8_t> erased;
    double q = 0;
};

ChannelRealization sample_bec(std::size_t n, double q, std::uint64_t seed);

/// What the decoder sees: outputs (-1 for erasure) and pilot values (-1 where not a pilot).
struct Received {
    std::vector<std::int8_t> outputs;
    std::vector<std::int8_t> pilots;
};

Received receive(const CodeInstance& instance, const std::vector<std::uint8_t>& codeword,
                 const ChannelRealization& channel);

enum class DecoderKind { BeliefPropagation, MaximumLikelihood };
const char* to_string(DecoderKind d);

struct TrialResult {
    DecoderKind decoder = DecoderKind::BeliefPropagation;
    std::size_t residual_erasures = 0;     // erased outputs not recovered
    std::size_t unresolved_variables = 0;  // outer variables not determined (pilots count as known)
    std::size_t free_variables = 0;        // ML only: dimension of the ambiguity
    std::size_t wrong_bits = 0;            // resolved bits disagreeing with the truth, when given
    bool block_failure = false;
    std::size_t iterations = 0;
    std::vector<double> variable_erasure_trajectory;  // BP: unresolved fraction after each iteration
};

struct BpOptions {
    std::size_t max_iterations = 1000;
    bool record_trajectory = false;  // also disables the early stop
};

/// Flooding message passing on the joint graph in the order
/// output->variable, variable->check, check->variable, variable->output.
TrialResult bp_decode(const CodeInstance& instance, const Received& received, const BpOptions& options = {},
                      const std::vector<std::uint8_t>* truth = nullptr);

/// Exact erasure decoding by GF(2) elimination over the outer variables.
TrialResult ml_decode_bec(const CodeInstance& instance, const Received& received,
                          const std::vector<std::uint8_t>* truth = nullptr);

/// Ensemble to sweep: a Gallager concatenation or a sampled DE ensemble.
struct IrregularEnsemble {
    de::EnsembleSpec spec;
    std::size_t n = 0;
};
using Ensemble = std::variant<LdpcParams, IrregularEnsemble>;

struct SweepConfig {
    Ensemble ensemble;
    std::vector<double> q_grid;
    std::size_t trials = 0;
    std::vector<DecoderKind> decoders{DecoderKind::BeliefPropagation};
    std::uint64_t master_seed = 1;
    std::size_t max_iterations = 1000;
    std::size_t threads = 1;
    std::size_t encode_limit = 4096;  // random messages up to this length, all-zero codeword beyond
};

struct SweepRow {
    double q = 0;
    DecoderKind decoder = DecoderKind::BeliefPropagation;
    std::size_t trials = 0;
    std::size_t bit_failures = 0;    // summed residual erasures
    std::size_t block_failures = 0;
    double ci_low = 0, ci_high = 0;  // 95% Clopper-Pearson interval on the block failure rate
    std::uint64_t seed = 0;
};

/// One trial at (q index, trial index); what monte_carlo runs internally.
std::vector<TrialResult> run_trial(const SweepConfig& config, std::size_t q_index, std::size_t trial);

std::vector<SweepRow> monte_carlo(const SweepConfig& config);

void write_sweep_rows(std::ostream& os, const std::vector<SweepRow>& rows);

std::pair<double, double> clopper_pearson(std::size_t trials, std::size_t failures, double confidence = 0.95);

}  // namespace ldpcgm::sim

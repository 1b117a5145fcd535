#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gf.hpp"
#include "modem.hpp"
#include "tanner.hpp"

namespace nbldpc {

enum class DecodeStatus { Converged, MaxIterations };

struct DecodeOutcome {
    std::vector<Symbol> decision;
    DecodeStatus status = DecodeStatus::MaxIterations;
    std::uint32_t iterations_used = 0;
};

namespace ops {

// Sum-normalize in place; an all-zero vector becomes uniform and reports
// false so callers can count the degeneracy.
bool normalize(std::span<double> v);

// Unnormalized Walsh-Hadamard transform; applying it twice scales by q.
void wht_inplace(std::span<double> v);

// alpha(i->j): gamma componentwise times every incoming check message.
void variable_update(std::span<const double> gamma, std::span<const std::span<const double>> incoming,
                     std::span<double> out);

// Entry a moves to index h*a; backward applies the inverse reindexing.
void permute_forward(const Field& f, Symbol h, std::span<const double> in, std::span<double> out);
void permute_backward(const Field& f, Symbol h, std::span<const double> in, std::span<double> out);

// beta(j->i) from d_c - 1 forward-permuted symbol messages: XOR-convolution
// via the transform domain, permuted back by the target edge coefficient
// and normalized. Equals the direct O(q^2) convolution to ~1e-9.
void check_update(const Field& f, std::span<const std::span<const double>> incoming_permuted,
                  Symbol h_target, std::span<double> out);

} // namespace ops

// Flooding-schedule q-ary belief propagation with syndrome early stopping.
// One instance is a per-worker workspace: buffers are reused across decodes,
// the graph and field stay shared read-only.
class Decoder {
public:
    explicit Decoder(const TannerGraph& graph);

    // early_stop=false runs all max_iter iterations regardless of the
    // syndrome; the reported status still reflects the final decision.
    DecodeOutcome decode(const LikelihoodBlock& gammas, std::uint32_t max_iter, bool early_stop = true);

    // A-posteriori vector of symbol i at the last computed iteration.
    std::span<const double> posterior(std::uint32_t i) const {
        return {post_.data() + static_cast<std::size_t>(i) * q_, q_};
    }

    std::uint64_t degenerate_messages() const { return degenerate_; }

private:
    const TannerGraph* graph_;
    std::uint32_t q_;
    std::uint32_t n_;
    std::uint32_t max_check_deg_;
    std::vector<double> alpha_, beta_; // per edge, length q each
    std::vector<double> post_;         // per symbol
    std::vector<double> scratch_;      // check-pass transforms
    std::vector<Symbol> decision_;
    std::uint64_t degenerate_ = 0;

    double* edge_vec(std::vector<double>& store, std::uint32_t e) {
        return store.data() + static_cast<std::size_t>(e) * q_;
    }
};

} // namespace nbldpc

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "decoder.hpp"
#include "interleaver.hpp"
#include "modem.hpp"
#include "tanner.hpp"

namespace nbldpc {

enum class TrialOutcome { Success, DetectedError, UndetectedError };

struct TrialResult {
    TrialOutcome outcome;
    std::uint32_t iterations;
    std::uint32_t bit_errors;
};

// Everything a trial needs, all shared read-only.
struct SimSystem {
    const TannerGraph* graph;
    const Encoder* encoder;
    const InterleaverPattern* pattern;
    const Constellation* constellation;
};

struct SimConfig {
    double ebn0_start_db = 0.0;
    double ebn0_stop_db = 0.0;
    double ebn0_step_db = 1.0;
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t min_frame_errors = 100;
    std::uint32_t max_iterations = 100;
    std::uint32_t workers = 1;
    std::uint64_t master_seed = 1;
};

struct FerRecord {
    double ebn0_db = 0.0;
    double esn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t detected_errors = 0;
    std::uint64_t undetected_errors = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t total_iterations = 0;
    double fer = 0.0;
    double detected_pct = 0.0; // percent of frame errors that failed the syndrome
    double mean_iterations = 0.0;
    double ci95_lo = 0.0, ci95_hi = 0.0; // Wilson score interval on FER
};

// Success / detected / undetected split per the syndrome and the transmitted
// word. A Converged status certifies a zero syndrome.
TrialOutcome classify(const DecodeOutcome& outcome, std::span<const Symbol> transmitted);

// Likelihood formation as the receiver chain dictates: the direct symbol
// path when no interleaving happened (identity pattern), otherwise bitwise
// marginalization, de-interleaving and regrouping.
LikelihoodBlock form_likelihoods(std::span<const ChannelRealization> recv, double sigma2,
                                 const Constellation& c, const InterleaverPattern& pat, const Field& field);

// One end-to-end frame: random message, encode, bit-map, interleave,
// modulate, fade, demap, decode, classify.
TrialResult run_trial(const SimSystem& sys, double sigma2, Rng& rng, Decoder& workspace,
                      std::uint32_t max_iterations);

std::pair<double, double> wilson_interval_95(std::uint64_t errors, std::uint64_t trials);

// Monte-Carlo at one SNR point. Trials run in fixed batches whose boundaries
// do not depend on the worker count; the per-trial rng stream is indexed by
// (master_seed, point_index, trial), so the record is bit-identical for any
// `workers`.
FerRecord run_point(const SimSystem& sys, const SimConfig& cfg, std::uint32_t point_index);

// All SNR points of the sweep, lowest Eb/N0 first; on_point streams each
// finished record (e.g. into the results file) and may return false to
// abort the rest of the sweep.
std::vector<FerRecord> run_sweep(const SimSystem& sys, const SimConfig& cfg,
                                 const std::function<bool(const FerRecord&)>& on_point = {});

std::vector<double> sweep_points(const SimConfig& cfg);

} // namespace nbldpc

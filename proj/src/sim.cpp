#include "sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "errors.hpp"

namespace nbldpc {

TrialOutcome classify(const DecodeOutcome& outcome, std::span<const Symbol> transmitted) {
    const bool equal = std::equal(outcome.decision.begin(), outcome.decision.end(), transmitted.begin(),
                                  transmitted.end());
    if (equal) return TrialOutcome::Success;
    return outcome.status == DecodeStatus::Converged ? TrialOutcome::UndetectedError
                                                     : TrialOutcome::DetectedError;
}

LikelihoodBlock form_likelihoods(std::span<const ChannelRealization> recv, double sigma2,
                                 const Constellation& c, const InterleaverPattern& pat,
                                 const Field& field) {
    if (pat.kind() == InterleaverKind::identity)
        return symbol_likelihoods(recv, sigma2, c, field);
    const std::vector<BitProb> bits = bitwise_marginalize(recv, sigma2, c);
    return regroup_bits_to_symbols(bits, pat, field);
}

TrialResult run_trial(const SimSystem& sys, double sigma2, Rng& rng, Decoder& workspace,
                      std::uint32_t max_iterations) {
    const TannerGraph& g = *sys.graph;
    const Field& f = g.field();
    const InterleaverPattern& pat = *sys.pattern;
    const unsigned p = f.p();

    std::vector<Symbol> message(sys.encoder->message_length());
    for (Symbol& s : message) s = static_cast<Symbol>(rng.below(f.q()));
    const std::vector<Symbol> codeword = sys.encoder->encode(message);

    std::vector<std::uint8_t> coded_bits(pat.n()), tx_bits(pat.n());
    for (std::uint32_t i = 0; i < g.n(); ++i) symbol_to_bits(codeword[i], p, coded_bits.data() + i * p);
    pat.apply(coded_bits, tx_bits);

    const std::vector<std::complex<double>> tx = modulate(tx_bits, *sys.constellation);
    const std::vector<ChannelRealization> recv = rayleigh_awgn(tx, sigma2, rng);
    const LikelihoodBlock gammas = form_likelihoods(recv, sigma2, *sys.constellation, pat, f);

    const DecodeOutcome outcome = workspace.decode(gammas, max_iterations);

    std::uint32_t bit_errors = 0;
    for (std::uint32_t i = 0; i < g.n(); ++i)
        bit_errors += std::popcount(static_cast<unsigned>(outcome.decision[i] ^ codeword[i]));

    return {classify(outcome, codeword), outcome.iterations_used, bit_errors};
}

std::pair<double, double> wilson_interval_95(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (phat + z2n / 2.0) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct Counters {
    std::uint64_t frames = 0;
    std::uint64_t detected = 0;
    std::uint64_t undetected = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t iterations = 0;

    void add(const TrialResult& r) {
        ++frames;
        if (r.outcome == TrialOutcome::DetectedError) ++detected;
        if (r.outcome == TrialOutcome::UndetectedError) ++undetected;
        bit_errors += r.bit_errors;
        iterations += r.iterations;
    }

    void merge(const Counters& o) {
        frames += o.frames;
        detected += o.detected;
        undetected += o.undetected;
        bit_errors += o.bit_errors;
        iterations += o.iterations;
    }

    std::uint64_t frame_errors() const { return detected + undetected; }
};

// Trials per stop-condition check. Fixed so that the set of simulated trials
// never depends on the worker count.
constexpr std::uint64_t kBatch = 256;

} // namespace

std::vector<double> sweep_points(const SimConfig& cfg) {
    if (cfg.ebn0_step_db <= 0.0) throw InvalidArgument("sim: Eb/N0 step must be positive");
    std::vector<double> points;
    for (double x = cfg.ebn0_start_db; x <= cfg.ebn0_stop_db + 1e-9; x += cfg.ebn0_step_db)
        points.push_back(x);
    return points;
}

FerRecord run_point(const SimSystem& sys, const SimConfig& cfg, std::uint32_t point_index) {
    if (cfg.max_frames < 1 || cfg.min_frame_errors < 1)
        throw InvalidArgument("sim: max_frames and min_frame_errors must be >= 1");
    const double ebn0_db = sweep_points(cfg).at(point_index);
    const double rate = static_cast<double>(sys.graph->n() - sys.graph->m()) / sys.graph->n();
    const double sigma2 = ebn0_db_to_sigma2(ebn0_db, rate, sys.constellation->m());
    const std::uint32_t workers = std::max(1u, cfg.workers);

    Counters total;
    std::uint64_t next_trial = 0;
    std::vector<Decoder> workspaces;
    workspaces.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) workspaces.emplace_back(*sys.graph);

    while (total.frames < cfg.max_frames && total.frame_errors() < cfg.min_frame_errors) {
        const std::uint64_t batch_end = std::min(next_trial + kBatch, cfg.max_frames);
        std::vector<Counters> partial(workers);

        auto work = [&](std::uint32_t w) {
            Decoder& dec = workspaces[w];
            for (std::uint64_t trial = next_trial + w; trial < batch_end; trial += workers) {
                Rng rng = Rng::stream(cfg.master_seed, point_index, trial);
                partial[w].add(run_trial(sys, sigma2, rng, dec, cfg.max_iterations));
            }
        };

        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        for (const Counters& c : partial) total.merge(c);
        next_trial = batch_end;
    }

    FerRecord rec;
    rec.ebn0_db = ebn0_db;
    rec.esn0_db = ebn0_db + esn0_offset_db(rate, sys.constellation->m());
    rec.frames = total.frames;
    rec.frame_errors = total.frame_errors();
    rec.detected_errors = total.detected;
    rec.undetected_errors = total.undetected;
    rec.bit_errors = total.bit_errors;
    rec.total_iterations = total.iterations;
    rec.fer = static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames);
    rec.detected_pct =
        rec.frame_errors ? 100.0 * static_cast<double>(rec.detected_errors) / static_cast<double>(rec.frame_errors)
                         : 0.0;
    rec.mean_iterations = static_cast<double>(rec.total_iterations) / static_cast<double>(rec.frames);
    std::tie(rec.ci95_lo, rec.ci95_hi) = wilson_interval_95(rec.frame_errors, rec.frames);
    return rec;
}

std::vector<FerRecord> run_sweep(const SimSystem& sys, const SimConfig& cfg,
                                 const std::function<bool(const FerRecord&)>& on_point) {
    const std::vector<double> points = sweep_points(cfg);
    std::vector<FerRecord> records;
    records.reserve(points.size());
    for (std::uint32_t idx = 0; idx < points.size(); ++idx) {
        records.push_back(run_point(sys, cfg, idx));
        if (on_point && !on_point(records.back())) break;
    }
    return records;
}

} // namespace nbldpc

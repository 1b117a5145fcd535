#include "nbldpc.h"

#include <cstring>
#include <memory>
#include <string>

#include "decoder.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "interleaver.hpp"
#include "io.hpp"
#include "modem.hpp"
#include "sim.hpp"
#include "tanner.hpp"

using namespace nbldpc;

struct nbldpc_code {
    TannerGraph graph;
    Encoder encoder;
    std::uint32_t dv, dc;
    std::uint64_t seed;
    std::optional<int> girth;

    nbldpc_code(TannerGraph g, std::uint32_t dv_, std::uint32_t dc_, std::uint64_t seed_)
        : graph(std::move(g)), encoder(graph), dv(dv_), dc(dc_), seed(seed_), girth(graph.girth()) {}
};

struct nbldpc_interleaver {
    InterleaverPattern pattern;
};

namespace {

thread_local std::string g_last_error = "no error";

nbldpc_status fail(nbldpc_status code, const char* message) {
    g_last_error = message;
    return code;
}

// Runs fn, translating C++ errors into status codes.
template <typename Fn>
nbldpc_status guarded(Fn&& fn) {
    try {
        fn();
        return NBLDPC_OK;
    } catch (const InvalidArgument& e) {
        return fail(NBLDPC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const ConstructionError& e) {
        return fail(NBLDPC_ERR_CONSTRUCTION, e.what());
    } catch (const IoError& e) {
        return fail(NBLDPC_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(NBLDPC_ERR_INVALID_ARGUMENT, e.what());
    }
}

unsigned bits_for_order(unsigned order) {
    for (unsigned p = 1; p <= 8; ++p)
        if (order == 1u << p) return p;
    throw InvalidArgument("field order " + std::to_string(order) + " is not a power of two in [2, 256]");
}

} // namespace

extern "C" {

const char* nbldpc_version(void) { return NBLDPC_VERSION_STRING; }

const char* nbldpc_last_error(void) { return g_last_error.c_str(); }

nbldpc_status nbldpc_code_build(unsigned field_order, unsigned n_symbols, unsigned dv, unsigned dc,
                                uint64_t seed, nbldpc_code** out) {
    if (!out) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "output handle is NULL");
    *out = nullptr;
    return guarded([&] {
        Field field(bits_for_order(field_order));
        Rng rng(seed);
        TannerGraph graph = TannerGraph::peg_construct(field, n_symbols, dv, dc, rng);
        *out = new nbldpc_code(std::move(graph), dv, dc, seed);
    });
}

nbldpc_status nbldpc_code_load(const char* path, nbldpc_code** out) {
    if (!path || !out) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = nullptr;
    return guarded([&] {
        LoadedCode loaded = load_code(path);
        *out = new nbldpc_code(std::move(loaded.graph), loaded.dv, loaded.dc, loaded.seed);
    });
}

nbldpc_status nbldpc_code_save(const nbldpc_code* code, const char* path) {
    if (!code || !path) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    return guarded([&] { save_code(code->graph, code->dv, code->dc, code->seed, code->girth, path); });
}

void nbldpc_code_free(nbldpc_code* code) { delete code; }

unsigned nbldpc_code_field_order(const nbldpc_code* code) { return code->graph.field().q(); }
unsigned nbldpc_code_bits_per_symbol(const nbldpc_code* code) { return code->graph.field().p(); }
unsigned nbldpc_code_symbols(const nbldpc_code* code) { return code->graph.n(); }
unsigned nbldpc_code_checks(const nbldpc_code* code) { return code->graph.m(); }
unsigned nbldpc_code_coded_bits(const nbldpc_code* code) {
    return code->graph.n() * code->graph.field().p();
}
double nbldpc_code_rate(const nbldpc_code* code) {
    return static_cast<double>(code->graph.n() - code->graph.m()) / code->graph.n();
}
unsigned nbldpc_code_girth(const nbldpc_code* code) {
    return code->girth ? static_cast<unsigned>(*code->girth) : 0u;
}

nbldpc_status nbldpc_interleaver_build(const nbldpc_code* code, nbldpc_interleaver_kind kind,
                                       unsigned bits_per_mod_symbol, uint64_t seed,
                                       const nbldpc_interleaver_options* opts, nbldpc_interleaver** out) {
    if (!code || !out) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = nullptr;
    return guarded([&] {
        const std::uint32_t n_sym = code->graph.n();
        const std::uint32_t p = code->graph.field().p();
        InterleaverPattern pat = [&] {
            switch (kind) {
                case NBLDPC_INTERLEAVER_IDENTITY:
                    return InterleaverPattern::identity(n_sym, p, bits_per_mod_symbol);
                case NBLDPC_INTERLEAVER_RANDOM:
                    return InterleaverPattern::random(n_sym, p, bits_per_mod_symbol, seed);
                case NBLDPC_INTERLEAVER_PEG: {
                    PegPatternOptions po;
                    if (opts) {
                        po.local_scramble = opts->local_scramble != 0;
                        po.shuffle_order = opts->shuffle_order != 0;
                    }
                    return InterleaverPattern::peg(code->graph, bits_per_mod_symbol, seed, po);
                }
            }
            throw InvalidArgument("unknown interleaver kind");
        }();
        *out = new nbldpc_interleaver{std::move(pat)};
    });
}

nbldpc_status nbldpc_interleaver_load(const char* path, nbldpc_interleaver** out) {
    if (!path || !out) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = nullptr;
    return guarded([&] { *out = new nbldpc_interleaver{load_interleaver(path)}; });
}

nbldpc_status nbldpc_interleaver_save(const nbldpc_interleaver* il, const char* path) {
    if (!il || !path) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    return guarded([&] { save_interleaver(il->pattern, path); });
}

void nbldpc_interleaver_free(nbldpc_interleaver* il) { delete il; }

unsigned nbldpc_interleaver_bits(const nbldpc_interleaver* il) { return il->pattern.n(); }

nbldpc_interleaver_kind nbldpc_interleaver_get_kind(const nbldpc_interleaver* il) {
    switch (il->pattern.kind()) {
        case InterleaverKind::identity: return NBLDPC_INTERLEAVER_IDENTITY;
        case InterleaverKind::random: return NBLDPC_INTERLEAVER_RANDOM;
        case InterleaverKind::peg: return NBLDPC_INTERLEAVER_PEG;
    }
    return NBLDPC_INTERLEAVER_IDENTITY;
}

nbldpc_status nbldpc_interleaver_permutation(const nbldpc_interleaver* il, uint32_t* perm, size_t len) {
    if (!il || !perm) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    const auto src = il->pattern.perm();
    if (len < src.size()) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "permutation buffer too small");
    std::memcpy(perm, src.data(), src.size() * sizeof(uint32_t));
    return NBLDPC_OK;
}

nbldpc_status nbldpc_global_girth(const nbldpc_code* code, const nbldpc_interleaver* il, unsigned* girth) {
    if (!code || !il || !girth) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    return guarded([&] {
        const std::optional<int> g = global_girth(code->graph, il->pattern);
        *girth = g ? static_cast<unsigned>(*g) : 0u;
    });
}

namespace {

struct BoundSim {
    Constellation constellation;
    std::optional<InterleaverPattern> identity;
    const InterleaverPattern* pattern;
    SimConfig cfg;
};

// Shared validation for check and run: throws on any inconsistency.
BoundSim bind_simulation(const nbldpc_code* code, const nbldpc_interleaver* interleaver,
                         unsigned qam_order, const nbldpc_sim_config* config) {
    const unsigned m = bits_for_order(qam_order);
    const unsigned p = code->graph.field().p();
    if (m != p)
        throw InvalidArgument("modulation carries " + std::to_string(m) + " bits per symbol but the "
                              "field uses " + std::to_string(p) + "; only matched orders are supported");
    BoundSim b{Constellation::qam(m), std::nullopt, nullptr, {}};

    if (interleaver) {
        b.pattern = &interleaver->pattern;
        if (b.pattern->n_symbols() != code->graph.n() || b.pattern->p() != p)
            throw InvalidArgument("interleaver dimensions do not match the code");
        if (b.pattern->m() != m)
            throw InvalidArgument("interleaver was designed for a different modulation order");
    } else {
        b.identity.emplace(InterleaverPattern::identity(code->graph.n(), p, m));
        b.pattern = &*b.identity;
    }

    b.cfg.ebn0_start_db = config->ebn0_start_db;
    b.cfg.ebn0_stop_db = config->ebn0_stop_db;
    b.cfg.ebn0_step_db = config->ebn0_step_db;
    b.cfg.max_frames = config->max_frames;
    b.cfg.min_frame_errors = config->min_frame_errors;
    b.cfg.max_iterations = config->max_iterations;
    b.cfg.workers = config->workers;
    b.cfg.master_seed = config->seed;
    if (b.cfg.ebn0_step_db <= 0.0) throw InvalidArgument("ebn0_step_db must be positive");
    if (b.cfg.ebn0_stop_db < b.cfg.ebn0_start_db)
        throw InvalidArgument("ebn0_stop_db must be >= ebn0_start_db");
    if (b.cfg.max_frames < 1 || b.cfg.min_frame_errors < 1)
        throw InvalidArgument("max_frames and min_frame_errors must be >= 1");
    if (b.cfg.max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
    return b;
}

} // namespace

nbldpc_status nbldpc_simulate_check(const nbldpc_code* code, const nbldpc_interleaver* interleaver,
                                    unsigned qam_order, const nbldpc_sim_config* config) {
    if (!code || !config) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    return guarded([&] { (void)bind_simulation(code, interleaver, qam_order, config); });
}

nbldpc_status nbldpc_simulate(const nbldpc_code* code, const nbldpc_interleaver* interleaver,
                              unsigned qam_order, const nbldpc_sim_config* config,
                              nbldpc_point_callback on_point, void* user) {
    if (!code || !config) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    return guarded([&] {
        BoundSim b = bind_simulation(code, interleaver, qam_order, config);
        const SimConfig& cfg = b.cfg;
        const Constellation& constellation = b.constellation;
        const InterleaverPattern* pattern = b.pattern;

        SimSystem sys{&code->graph, &code->encoder, pattern, &constellation};
        run_sweep(sys, cfg, [&](const FerRecord& rec) {
            if (!on_point) return true;
            nbldpc_fer_point pt;
            pt.ebn0_db = rec.ebn0_db;
            pt.esn0_db = rec.esn0_db;
            pt.frames = rec.frames;
            pt.frame_errors = rec.frame_errors;
            pt.detected_errors = rec.detected_errors;
            pt.undetected_errors = rec.undetected_errors;
            pt.bit_errors = rec.bit_errors;
            pt.fer = rec.fer;
            pt.detected_pct = rec.detected_pct;
            pt.mean_iterations = rec.mean_iterations;
            pt.ci95_lo = rec.ci95_lo;
            pt.ci95_hi = rec.ci95_hi;
            return on_point(&pt, user) == 0;
        });
    });
}

const char* nbldpc_csv_header(void) {
    static const std::string header = csv_header();
    return header.c_str();
}

nbldpc_status nbldpc_csv_row(const nbldpc_fer_point* point, char* buf, size_t len) {
    if (!point || !buf) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    FerRecord rec;
    rec.ebn0_db = point->ebn0_db;
    rec.esn0_db = point->esn0_db;
    rec.frames = point->frames;
    rec.frame_errors = point->frame_errors;
    rec.detected_errors = point->detected_errors;
    rec.undetected_errors = point->undetected_errors;
    rec.bit_errors = point->bit_errors;
    rec.fer = point->fer;
    rec.detected_pct = point->detected_pct;
    rec.mean_iterations = point->mean_iterations;
    rec.ci95_lo = point->ci95_lo;
    rec.ci95_hi = point->ci95_hi;
    const std::string row = csv_row(rec);
    if (row.size() + 1 > len) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "row buffer too small");
    std::memcpy(buf, row.c_str(), row.size() + 1);
    return NBLDPC_OK;
}

nbldpc_status nbldpc_file_fingerprint(const char* path, uint64_t* out) {
    if (!path || !out) return fail(NBLDPC_ERR_INVALID_ARGUMENT, "NULL argument");
    return guarded([&] { *out = fnv1a64_file(path); });
}

} // extern "C"

// Command-line front end: code construction, interleaver design and FER
// simulation over the shared-library C API. Exit codes: 0 success, 1 usage
// error, 2 infeasible construction, 3 I/O failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbldpc.h"

using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitIo = 3;

int exit_code_for(nbldpc_status st) {
    switch (st) {
        case NBLDPC_OK: return 0;
        case NBLDPC_ERR_INVALID_ARGUMENT: return kExitUsage;
        case NBLDPC_ERR_CONSTRUCTION: return kExitConstruction;
        case NBLDPC_ERR_IO: return kExitIo;
    }
    return kExitUsage;
}

int report(nbldpc_status st) {
    std::cerr << "error: " << nbldpc_last_error() << "\n";
    return exit_code_for(st);
}

const std::map<std::string, unsigned> kModulations = {
    {"qam4", 4}, {"qam16", 16}, {"qam64", 64}, {"qam256", 256}};

struct CodeHandle {
    nbldpc_code* ptr = nullptr;
    ~CodeHandle() { nbldpc_code_free(ptr); }
};

struct InterleaverHandle {
    nbldpc_interleaver* ptr = nullptr;
    ~InterleaverHandle() { nbldpc_interleaver_free(ptr); }
};

struct MakeCodeArgs {
    unsigned field = 64;
    unsigned n_symbols = 102;
    unsigned dv = 2;
    unsigned dc = 6;
    std::uint64_t seed = 1;
    std::string out;
};

int run_make_code(const MakeCodeArgs& a) {
    CodeHandle code;
    nbldpc_status st = nbldpc_code_build(a.field, a.n_symbols, a.dv, a.dc, a.seed, &code.ptr);
    if (st != NBLDPC_OK) return report(st);
    st = nbldpc_code_save(code.ptr, a.out.c_str());
    if (st != NBLDPC_OK) return report(st);
    std::printf("code: GF(%u) N=%u M=%u (%u,%u)-regular, n=%u bits, rate %.4f, girth %u\n",
                nbldpc_code_field_order(code.ptr), nbldpc_code_symbols(code.ptr),
                nbldpc_code_checks(code.ptr), a.dv, a.dc, nbldpc_code_coded_bits(code.ptr),
                nbldpc_code_rate(code.ptr), nbldpc_code_girth(code.ptr));
    std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

struct MakeInterleaverArgs {
    std::string code_path;
    std::string kind = "peg";
    std::string modulation = "qam64";
    std::uint64_t seed = 1;
    bool local_scramble = false;
    bool shuffle_order = false;
    std::string out;
};

int run_make_interleaver(const MakeInterleaverArgs& a) {
    CodeHandle code;
    nbldpc_status st = nbldpc_code_load(a.code_path.c_str(), &code.ptr);
    if (st != NBLDPC_OK) return report(st);

    const unsigned order = kModulations.at(a.modulation);
    unsigned m = 0;
    while ((1u << (m + 1)) <= order) ++m;
    if (m != nbldpc_code_bits_per_symbol(code.ptr)) {
        std::cerr << "error: " << a.modulation << " carries " << m << " bits per symbol but the code's "
                  << "field uses " << nbldpc_code_bits_per_symbol(code.ptr)
                  << "; matched orders are required\n";
        return kExitUsage;
    }

    nbldpc_interleaver_kind kind;
    if (a.kind == "identity") kind = NBLDPC_INTERLEAVER_IDENTITY;
    else if (a.kind == "random") kind = NBLDPC_INTERLEAVER_RANDOM;
    else kind = NBLDPC_INTERLEAVER_PEG;

    nbldpc_interleaver_options opts{a.local_scramble ? 1 : 0, a.shuffle_order ? 1 : 0};
    InterleaverHandle il;
    st = nbldpc_interleaver_build(code.ptr, kind, m, a.seed, &opts, &il.ptr);
    if (st != NBLDPC_OK) return report(st);
    st = nbldpc_interleaver_save(il.ptr, a.out.c_str());
    if (st != NBLDPC_OK) return report(st);

    unsigned girth = 0;
    st = nbldpc_global_girth(code.ptr, il.ptr, &girth);
    if (st != NBLDPC_OK) return report(st);
    std::printf("interleaver: kind=%s n=%u bits, global girth %u\n", a.kind.c_str(),
                nbldpc_interleaver_bits(il.ptr), girth);
    std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

struct SimulateArgs {
    std::string code_path;
    std::string interleaver_path; // empty = no interleaver
    std::string modulation = "qam64";
    std::string ebn0 = "10:20:1";
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t min_errors = 100;
    unsigned max_iters = 100;
    unsigned workers = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string from_manifest;
};

bool parse_sweep(const std::string& s, double& start, double& stop, double& step) {
    std::istringstream in(s);
    char c1 = 0, c2 = 0;
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':') return false;
    in.peek();
    return in.eof() && step > 0.0 && stop >= start;
}

std::optional<std::uint64_t> fingerprint(const std::string& path) {
    std::uint64_t h = 0;
    if (nbldpc_file_fingerprint(path.c_str(), &h) != NBLDPC_OK) return std::nullopt;
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

int load_manifest(SimulateArgs& a) {
    std::ifstream in(a.from_manifest);
    if (!in) {
        std::cerr << "error: cannot open manifest " << a.from_manifest << "\n";
        return kExitIo;
    }
    json mf;
    try {
        in >> mf;
        a.code_path = mf.at("code").at("path").get<std::string>();
        a.interleaver_path =
            mf.at("interleaver").is_null() ? "" : mf.at("interleaver").at("path").get<std::string>();
        a.modulation = mf.at("modulation").get<std::string>();
        const auto& sweep = mf.at("ebn0");
        std::ostringstream sw;
        sw << sweep.at("start_db").get<double>() << ':' << sweep.at("stop_db").get<double>() << ':'
           << sweep.at("step_db").get<double>();
        a.ebn0 = sw.str();
        a.max_frames = mf.at("max_frames").get<std::uint64_t>();
        a.min_errors = mf.at("min_frame_errors").get<std::uint64_t>();
        a.max_iters = mf.at("max_iterations").get<unsigned>();
        a.workers = mf.at("workers").get<unsigned>();
        a.seed = mf.at("seed").get<std::uint64_t>();
        if (a.out.empty()) a.out = mf.at("results_csv").get<std::string>();
    } catch (const json::exception& e) {
        std::cerr << "error: malformed manifest: " << e.what() << "\n";
        return kExitUsage;
    }
    // The rerun contract is bit-identical output, which only holds for the
    // exact artifacts the manifest fingerprinted.
    for (const char* key : {"code", "interleaver"}) {
        if (mf.at(key).is_null()) continue;
        const std::string path = mf.at(key).at("path").get<std::string>();
        const std::string want = mf.at(key).at("fnv1a64").get<std::string>();
        const auto got = fingerprint(path);
        if (!got) {
            std::cerr << "error: cannot fingerprint " << path << "\n";
            return kExitIo;
        }
        if (hex64(*got) != want) {
            std::cerr << "error: " << path << " changed since the manifest was written (fnv1a64 "
                      << hex64(*got) << " != " << want << ")\n";
            return kExitUsage;
        }
    }
    return 0;
}

struct CsvSink {
    std::ofstream file;
    bool io_failed = false;

    static int on_point(const nbldpc_fer_point* pt, void* user) {
        auto* self = static_cast<CsvSink*>(user);
        char row[320];
        if (nbldpc_csv_row(pt, row, sizeof row) != NBLDPC_OK) {
            self->io_failed = true;
            return 1;
        }
        self->file << row << '\n' << std::flush;
        std::printf("%s\n", row);
        std::fflush(stdout);
        if (!self->file) {
            self->io_failed = true;
            return 1; // abort sweep, partial results stay on disk
        }
        return 0;
    }
};

int run_simulate(SimulateArgs a) {
    if (!a.from_manifest.empty()) {
        const int rc = load_manifest(a);
        if (rc != 0) return rc;
    }
    if (a.code_path.empty() || a.out.empty()) {
        std::cerr << "error: --code and --out are required (or --from-manifest)\n";
        return kExitUsage;
    }
    if (!kModulations.count(a.modulation)) {
        std::cerr << "error: unknown modulation '" << a.modulation << "'\n";
        return kExitUsage;
    }

    double start = 0, stop = 0, step = 1;
    if (!parse_sweep(a.ebn0, start, stop, step)) {
        std::cerr << "error: --ebn0 expects START:STOP:STEP with positive step\n";
        return kExitUsage;
    }

    CodeHandle code;
    nbldpc_status st = nbldpc_code_load(a.code_path.c_str(), &code.ptr);
    if (st != NBLDPC_OK) return report(st);

    InterleaverHandle il;
    if (!a.interleaver_path.empty()) {
        st = nbldpc_interleaver_load(a.interleaver_path.c_str(), &il.ptr);
        if (st != NBLDPC_OK) return report(st);
    }

    nbldpc_sim_config cfg;
    cfg.ebn0_start_db = start;
    cfg.ebn0_stop_db = stop;
    cfg.ebn0_step_db = step;
    cfg.max_frames = a.max_frames;
    cfg.min_frame_errors = a.min_errors;
    cfg.max_iterations = a.max_iters;
    cfg.workers = a.workers;
    cfg.seed = a.seed;

    // Validate the full combination before any trial runs or files appear.
    st = nbldpc_simulate_check(code.ptr, il.ptr, kModulations.at(a.modulation), &cfg);
    if (st != NBLDPC_OK) return report(st);

    json manifest;
    manifest["tool"] = "nbldpc";
    manifest["version"] = nbldpc_version();
    manifest["command"] = "simulate";
    const auto code_fp = fingerprint(a.code_path);
    if (!code_fp) return report(NBLDPC_ERR_IO);
    manifest["code"] = {{"path", a.code_path}, {"fnv1a64", hex64(*code_fp)}};
    if (a.interleaver_path.empty()) {
        manifest["interleaver"] = nullptr;
    } else {
        const auto il_fp = fingerprint(a.interleaver_path);
        if (!il_fp) return report(NBLDPC_ERR_IO);
        manifest["interleaver"] = {{"path", a.interleaver_path}, {"fnv1a64", hex64(*il_fp)}};
    }
    manifest["modulation"] = a.modulation;
    manifest["ebn0"] = {{"start_db", start}, {"stop_db", stop}, {"step_db", step}};
    manifest["max_frames"] = a.max_frames;
    manifest["min_frame_errors"] = a.min_errors;
    manifest["max_iterations"] = a.max_iters;
    manifest["workers"] = a.workers;
    manifest["seed"] = a.seed;
    manifest["results_csv"] = a.out;
    {
        const double rate = nbldpc_code_rate(code.ptr);
        const double m = nbldpc_code_bits_per_symbol(code.ptr);
        manifest["esn0_offset_db"] = 10.0 * std::log10(rate * m);
    }
    const std::string manifest_path = a.out + ".manifest.json";
    {
        std::ofstream mf(manifest_path, std::ios::trunc);
        mf << manifest.dump(2) << '\n';
        if (!mf) {
            std::cerr << "error: cannot write " << manifest_path << "\n";
            return kExitIo;
        }
    }

    CsvSink sink;
    sink.file.open(a.out, std::ios::trunc);
    if (!sink.file) {
        std::cerr << "error: cannot open " << a.out << " for writing\n";
        return kExitIo;
    }
    sink.file << nbldpc_csv_header() << '\n';
    std::printf("%s\n", nbldpc_csv_header());

    st = nbldpc_simulate(code.ptr, il.ptr, kModulations.at(a.modulation), &cfg, &CsvSink::on_point, &sink);
    if (sink.io_failed) {
        std::cerr << "error: write failed on " << a.out << " (partial results kept)\n";
        return kExitIo;
    }
    if (st != NBLDPC_OK) return report(st);
    std::printf("wrote %s and %s\n", a.out.c_str(), manifest_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-binary LDPC codes with bit-interleaved QAM over Rayleigh fading"};
    app.require_subcommand(1);
    app.set_version_flag("--version", nbldpc_version());

    MakeCodeArgs mc;
    CLI::App* make_code = app.add_subcommand("make-code", "construct a (dv,dc)-regular code by PEG");
    make_code->add_option("--field", mc.field, "field order")
        ->check(CLI::IsMember({4u, 16u, 64u, 256u}))
        ->required();
    make_code->add_option("--n-symbols", mc.n_symbols, "number of coded symbols N")->required();
    make_code->add_option("--dv", mc.dv, "symbol-node degree")->capture_default_str();
    make_code->add_option("--dc", mc.dc, "constraint-node degree")->required();
    make_code->add_option("--seed", mc.seed, "construction seed")->capture_default_str();
    make_code->add_option("--out", mc.out, "output code file")->required();

    MakeInterleaverArgs mi;
    CLI::App* make_il = app.add_subcommand("make-interleaver", "design a bit-interleaver for a code");
    make_il->add_option("--code", mi.code_path, "code file")->required();
    make_il->add_option("--kind", mi.kind, "interleaver kind")
        ->check(CLI::IsMember({"identity", "random", "peg"}))
        ->required();
    make_il->add_option("--modulation", mi.modulation, "qam4|qam16|qam64|qam256")->required();
    make_il->add_option("--seed", mi.seed, "design seed")->capture_default_str();
    make_il
        ->add_option("--local-scramble", mi.local_scramble,
                     "scramble bit positions inside each coded symbol (on|off)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, bool>{{"on", true}, {"off", false}}))
        ->capture_default_str();
    make_il
        ->add_option("--shuffle-order", mi.shuffle_order,
                     "randomize the modulation-node processing order (on|off)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, bool>{{"on", true}, {"off", false}}))
        ->capture_default_str();
    make_il->add_option("--out", mi.out, "output interleaver file")->required();

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "measure FER over the Rayleigh channel");
    simulate->add_option("--code", sim.code_path, "code file");
    simulate->add_option("--interleaver", sim.interleaver_path,
                         "interleaver file (omit for the non-interleaved system)");
    simulate->add_option("--modulation", sim.modulation, "qam4|qam16|qam64|qam256")
        ->capture_default_str();
    simulate->add_option("--ebn0", sim.ebn0, "Eb/N0 sweep START:STOP:STEP in dB")->capture_default_str();
    simulate->add_option("--max-frames", sim.max_frames, "frame cap per point")->capture_default_str();
    simulate->add_option("--min-errors", sim.min_errors, "frame errors to collect per point")
        ->capture_default_str();
    simulate->add_option("--max-iters", sim.max_iters, "BP iteration cap")->capture_default_str();
    simulate->add_option("--workers", sim.workers, "worker threads")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "master seed")->capture_default_str();
    simulate->add_option("--out", sim.out, "results CSV path");
    simulate->add_option("--from-manifest", sim.from_manifest, "rerun a recorded configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (make_code->parsed()) return run_make_code(mc);
    if (make_il->parsed()) return run_make_interleaver(mi);
    return run_simulate(sim);
}

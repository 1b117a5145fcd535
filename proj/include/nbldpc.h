/*
 * nbldpc — non-binary LDPC codes over GF(2^p) with bit-interleaved QAM on
 * Rayleigh fading channels: code construction (PEG), interleaver design
 * (identity / random / PEG girth-optimized) and Monte-Carlo frame-error
 * simulation.
 *
 * C interface of the shared library. Handles are opaque; every fallible
 * call returns a status code and leaves a thread-local message readable
 * through nbldpc_last_error().
 */
#ifndef NBLDPC_H
#define NBLDPC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NBLDPC_API __declspec(dllexport)
#else
#define NBLDPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define NBLDPC_VERSION_STRING "1.0.0"

typedef enum nbldpc_status {
    NBLDPC_OK = 0,
    NBLDPC_ERR_INVALID_ARGUMENT = 1,
    NBLDPC_ERR_CONSTRUCTION = 2, /* infeasible degrees, rank deficiency, capacity */
    NBLDPC_ERR_IO = 3
} nbldpc_status;

NBLDPC_API const char* nbldpc_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
NBLDPC_API const char* nbldpc_last_error(void);

/* ---- codes ---------------------------------------------------------- */

typedef struct nbldpc_code nbldpc_code;

/* PEG-constructed (dv,dc)-regular code over GF(field_order), field_order a
 * power of two in [2, 256]. */
NBLDPC_API nbldpc_status nbldpc_code_build(unsigned field_order, unsigned n_symbols, unsigned dv,
                                           unsigned dc, uint64_t seed, nbldpc_code** out);
NBLDPC_API nbldpc_status nbldpc_code_load(const char* path, nbldpc_code** out);
NBLDPC_API nbldpc_status nbldpc_code_save(const nbldpc_code* code, const char* path);
NBLDPC_API void nbldpc_code_free(nbldpc_code* code);

NBLDPC_API unsigned nbldpc_code_field_order(const nbldpc_code* code);
NBLDPC_API unsigned nbldpc_code_bits_per_symbol(const nbldpc_code* code);
NBLDPC_API unsigned nbldpc_code_symbols(const nbldpc_code* code);   /* N */
NBLDPC_API unsigned nbldpc_code_checks(const nbldpc_code* code);    /* M */
NBLDPC_API unsigned nbldpc_code_coded_bits(const nbldpc_code* code); /* n = N p */
NBLDPC_API double nbldpc_code_rate(const nbldpc_code* code);
/* Tanner graph girth; 0 means acyclic. */
NBLDPC_API unsigned nbldpc_code_girth(const nbldpc_code* code);

/* ---- interleavers ---------------------------------------------------- */

typedef struct nbldpc_interleaver nbldpc_interleaver;

typedef enum nbldpc_interleaver_kind {
    NBLDPC_INTERLEAVER_IDENTITY = 0,
    NBLDPC_INTERLEAVER_RANDOM = 1,
    NBLDPC_INTERLEAVER_PEG = 2
} nbldpc_interleaver_kind;

typedef struct nbldpc_interleaver_options {
    int local_scramble; /* extra per-coded-symbol bit scrambler (PEG only) */
    int shuffle_order;  /* randomized modulation-node processing order (PEG only) */
} nbldpc_interleaver_options;

/* bits_per_mod_symbol = log2 of the QAM order the pattern is designed for.
 * opts may be NULL for defaults. */
NBLDPC_API nbldpc_status nbldpc_interleaver_build(const nbldpc_code* code, nbldpc_interleaver_kind kind,
                                                  unsigned bits_per_mod_symbol, uint64_t seed,
                                                  const nbldpc_interleaver_options* opts,
                                                  nbldpc_interleaver** out);
NBLDPC_API nbldpc_status nbldpc_interleaver_load(const char* path, nbldpc_interleaver** out);
NBLDPC_API nbldpc_status nbldpc_interleaver_save(const nbldpc_interleaver* il, const char* path);
NBLDPC_API void nbldpc_interleaver_free(nbldpc_interleaver* il);

NBLDPC_API unsigned nbldpc_interleaver_bits(const nbldpc_interleaver* il); /* n */
NBLDPC_API nbldpc_interleaver_kind nbldpc_interleaver_get_kind(const nbldpc_interleaver* il);
/* Copies the bit permutation (coded position -> modulation position) into
 * perm, which must hold nbldpc_interleaver_bits() entries. */
NBLDPC_API nbldpc_status nbldpc_interleaver_permutation(const nbldpc_interleaver* il, uint32_t* perm,
                                                        size_t len);
/* Girth of the code + interleaving global graph; 0 means acyclic. */
NBLDPC_API nbldpc_status nbldpc_global_girth(const nbldpc_code* code, const nbldpc_interleaver* il,
                                             unsigned* girth);

/* ---- simulation ------------------------------------------------------ */

typedef struct nbldpc_sim_config {
    double ebn0_start_db;
    double ebn0_stop_db;
    double ebn0_step_db;      /* > 0 */
    uint64_t max_frames;      /* per SNR point */
    uint64_t min_frame_errors;
    unsigned max_iterations;  /* BP iteration cap */
    unsigned workers;         /* threads; results do not depend on it */
    uint64_t seed;
} nbldpc_sim_config;

typedef struct nbldpc_fer_point {
    double ebn0_db;
    double esn0_db;
    uint64_t frames;
    uint64_t frame_errors;
    uint64_t detected_errors;   /* decoder failed the syndrome */
    uint64_t undetected_errors; /* converged to a wrong codeword */
    uint64_t bit_errors;
    double fer;
    double detected_pct;        /* 100 * detected / frame_errors, 0 when error-free */
    double mean_iterations;
    double ci95_lo, ci95_hi;    /* Wilson score interval on the FER */
} nbldpc_fer_point;

/* Return nonzero to abort the sweep after the current point. */
typedef int (*nbldpc_point_callback)(const nbldpc_fer_point* point, void* user);

/* Validates the code/interleaver/modulation/config combination without
 * running any trial. */
NBLDPC_API nbldpc_status nbldpc_simulate_check(const nbldpc_code* code,
                                               const nbldpc_interleaver* interleaver, unsigned qam_order,
                                               const nbldpc_sim_config* config);

/* Full sweep over the configured Eb/N0 grid. interleaver may be NULL for
 * the direct (no interleaving) system; qam_order must equal the code's
 * field order. Each finished point is passed to the callback. */
NBLDPC_API nbldpc_status nbldpc_simulate(const nbldpc_code* code, const nbldpc_interleaver* interleaver,
                                         unsigned qam_order, const nbldpc_sim_config* config,
                                         nbldpc_point_callback on_point, void* user);

/* ---- results formatting and fingerprints ----------------------------- */

/* CSV column header used by the `simulate` tool (no newline). */
NBLDPC_API const char* nbldpc_csv_header(void);
/* Formats one CSV row (no newline) into buf; fails if len is too small. */
NBLDPC_API nbldpc_status nbldpc_csv_row(const nbldpc_fer_point* point, char* buf, size_t len);

/* FNV-1a 64 of a file's bytes, for run manifests. */
NBLDPC_API nbldpc_status nbldpc_file_fingerprint(const char* path, uint64_t* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NBLDPC_H */

/* C API for the insertion benchmark core. Opaque handles, status codes;
 * thread-safe as long as each handle is used from one thread at a time.
 * Every function returns INB_OK on success; inb_last_error() carries the
 * detail message for the calling thread. */

#ifndef INSERTIONBENCH_H
#define INSERTIONBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define INB_API __declspec(dllexport)
#else
#define INB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum inb_status {
    INB_OK = 0,
    INB_ERR_INVALID_ARGUMENT = 1,
    INB_ERR_CONFIG = 2,
    INB_ERR_FORMAT = 3,
    INB_ERR_TRUNCATED = 4,
    INB_ERR_IO = 5,
    INB_ERR_GOAL_UNREACHABLE = 6,
    INB_ERR_LOCALIZATION = 7,
    INB_ERR_SHAPE = 8,
    INB_ERR_RUNTIME = 9
} inb_status;

typedef struct inb_config inb_config;
typedef struct inb_dataset inb_dataset;
typedef struct inb_model inb_model;

/* Static string for a status code. */
INB_API const char* inb_status_name(inb_status s);
/* Thread-local message of the last failed call (empty string if none). */
INB_API const char* inb_last_error(void);

/* ---- configuration -------------------------------------------------- */
INB_API inb_status inb_config_load(const char* path, inb_config** out);
INB_API inb_status inb_config_parse(const char* json_text, inb_config** out);
INB_API inb_status inb_config_default(inb_config** out);
INB_API void inb_config_free(inb_config* cfg);
/* Effective config re-serialized as JSON; caller frees with inb_string_free. */
INB_API inb_status inb_config_snapshot(const inb_config* cfg, char** out_json);
INB_API void inb_string_free(char* s);

/* ---- datasets -------------------------------------------------------- */
INB_API inb_status inb_collect(const inb_config* cfg, uint64_t seed, inb_dataset** out);
INB_API inb_status inb_dataset_read(const char* path, inb_dataset** out);
INB_API inb_status inb_dataset_write(const inb_dataset* d, const char* path);
INB_API size_t inb_dataset_count(const inb_dataset* d);
INB_API inb_status inb_dataset_dims(const inb_dataset* d, int* h, int* w, int* c);
INB_API void inb_dataset_free(inb_dataset* d);

/* ---- models ----------------------------------------------------------- */
INB_API inb_status inb_train(const inb_config* cfg, const inb_dataset* data, uint64_t seed,
                             inb_model** out);
INB_API inb_status inb_model_load(const char* path, inb_model** out);
INB_API inb_status inb_model_save(const inb_model* m, const char* path);
/* image: H*W*C floats in [0,1] row-major; wrench: fx fy fz mx my mz;
 * out_action: dx dy [m], dtheta x/y/z [rad]. */
INB_API inb_status inb_model_forward(const inb_model* m, const float* image, size_t image_len,
                                     const double wrench[6], double out_action[5]);
INB_API void inb_model_free(inb_model* m);

/* ---- evaluation ------------------------------------------------------- */
typedef struct inb_eval_summary {
    double success_rate;
    double mean_duration_s;
    int trials;
} inb_eval_summary;

INB_API inb_status inb_evaluate(const inb_config* cfg, const inb_model* m, int trials,
                                uint64_t seed, int threads, inb_eval_summary* out);

/* ---- benchmark commands (CSV + config snapshot sidecar) --------------- */
typedef struct inb_run_options {
    int has_seed;       /* 0: use config seeds */
    uint64_t seed;
    int has_trials;     /* 0: use config trial counts */
    int trials;
    int threads;        /* <= 1: single-threaded */
} inb_run_options;

INB_API inb_status inb_run_collect(const inb_config* cfg, const inb_run_options* opt,
                                   const char* out_path);
INB_API inb_status inb_run_train(const inb_config* cfg, const inb_run_options* opt,
                                 const char* dataset_path, const char* out_params,
                                 const char* loss_csv_or_null);
INB_API inb_status inb_run_eval(const inb_config* cfg, const inb_run_options* opt,
                                const char* params_path, const char* out_csv);
INB_API inb_status inb_run_curve(const inb_config* cfg, const inb_run_options* opt,
                                 const char* out_csv);
INB_API inb_status inb_run_generalize(const inb_config* cfg, const inb_run_options* opt,
                                      const char* out_csv);
INB_API inb_status inb_run_transfer(const inb_config* cfg, const inb_run_options* opt,
                                    const char* out_csv);
INB_API inb_status inb_run_assembly(const inb_config* cfg, const inb_run_options* opt,
                                    const char* out_csv);
INB_API inb_status inb_run_localize_demo(const inb_config* cfg, const inb_run_options* opt,
                                         const char* out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* INSERTIONBENCH_H */

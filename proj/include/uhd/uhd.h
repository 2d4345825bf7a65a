#ifndef UHD_UHD_H
#define UHD_UHD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    UHD_OK = 0,
    UHD_ERR_USAGE = 1,
    UHD_ERR_FORMAT = 2,
    UHD_ERR_RESOURCE = 3,
    UHD_ERR_DOMAIN = 4,
    UHD_ERR_SHAPE = 5,
    UHD_ERR_CAPACITY = 6,
    UHD_ERR_STATE = 7,
    UHD_ERR_LOGIC = 8
} uhd_status;

/* Message for the most recent failing call on this thread. */
const char* uhd_last_error(void);

/* ---- datasets ---- */

typedef struct uhd_dataset uhd_dataset;

uhd_status uhd_dataset_load_idx(const char* images_path, const char* labels_path,
                                const char* name, uhd_dataset** out);
uhd_status uhd_dataset_load_csv(const char* path, const char* name, uhd_dataset** out);
/* Deterministic per-class subsample of up to per_class images. */
uhd_status uhd_dataset_subsample(const uhd_dataset* in, uint64_t per_class, uint64_t seed,
                                 uhd_dataset** out);
uint64_t uhd_dataset_size(const uhd_dataset* ds);
uint32_t uhd_dataset_features(const uhd_dataset* ds);
uint32_t uhd_dataset_classes(const uhd_dataset* ds);
void uhd_dataset_free(uhd_dataset* ds);

/* ---- training and inference ---- */

typedef struct uhd_model uhd_model;

typedef struct {
    const char* encoder;    /* "uhd" or "baseline" */
    uint32_t dimension;     /* D */
    uint32_t quantization_bits; /* M */
    uint32_t level_bits;    /* n */
    uint64_t seed;
    const char* generator;  /* "general-prng" or "lfsr" */
    const char* comparator; /* "scalar-fast" or "gate-level-unary" */
    int use_level_bank;
    const char* sobol_file; /* direction-number file, uhd encoder only */
    int per_image_binarize;
    int binarize_query;
    int raw_class_similarity;
    int centered_similarity;
    uint32_t workers;
    int fast_histogram;     /* use the histogram training path (uhd only) */
} uhd_train_params;

/* Fills defaults: uhd encoder, D=1024, M=n=4, seed=1, scalar-fast, bank on. */
void uhd_train_params_init(uhd_train_params* params);

uhd_status uhd_train(const uhd_dataset* train_set, const uhd_train_params* params,
                     uhd_model** out);
uhd_status uhd_model_save(const uhd_model* model, const char* path);
/* sobol_file may be NULL to use the path stored in the model config. */
uhd_status uhd_model_load(const char* path, const char* sobol_file, uhd_model** out);
void uhd_model_free(uhd_model* model);

uint32_t uhd_model_classes(const uhd_model* model);
uint32_t uhd_model_features(const uhd_model* model);
uint32_t uhd_model_dimension(const uhd_model* model);
/* Canonical key-value text block of the model's encoder config. */
uhd_status uhd_model_config_text(const uhd_model* model, char* buf, size_t cap);

/* scores may be NULL; otherwise it must hold class-count doubles. */
uhd_status uhd_predict(const uhd_model* model, const uint8_t* image, uint32_t length,
                       uint32_t* label, double* scores);

typedef struct {
    double accuracy_percent;
    uint64_t total;
    uint64_t correct;
    /* operation counters aggregated over the run */
    uint64_t comparisons;
    uint64_t bind_ops;
    uint64_t accumulator_updates;
    uint64_t memory_fetches;
    uint64_t binarize_windows;
} uhd_eval_report;

/* confusion may be NULL; otherwise q*q entries, row-major by true class. */
uhd_status uhd_evaluate(const uhd_model* model, const uhd_dataset* test_set,
                        uhd_eval_report* report, uint64_t* confusion);

/* Per-iteration accuracy with fresh seeds; trace must hold i_max doubles. */
uhd_status uhd_sweep(const uhd_dataset* train_set, const uhd_dataset* test_set,
                     const uhd_train_params* params, uint32_t i_max, double* trace);

/* ---- sobol tables ---- */

/* Builds the quantized table and writes it to out_path (binary format). */
uhd_status uhd_sobol_table_write(const char* direction_file, uint32_t dimensions,
                                 uint32_t points, uint32_t quantization_bits,
                                 const char* out_path);

/* Fills `values` (dimensions * points entries, row-major by dimension). */
uhd_status uhd_sobol_table_values(const char* direction_file, uint32_t dimensions,
                                  uint32_t points, uint32_t quantization_bits,
                                  uint16_t* values);

/* ---- quick internal consistency checks ---- */

uhd_status uhd_selftest(void);

#ifdef __cplusplus
}
#endif

#endif

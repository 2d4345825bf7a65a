#include "uhd/uhd.h"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "uhd/data.hpp"
#include "uhd/errors.hpp"
#include "uhd/model.hpp"
#include "uhd/sobol.hpp"
#include "uhd/unary.hpp"

namespace {

thread_local std::string g_last_error;

uhd_status to_status(uhd::errc code) { return static_cast<uhd_status>(static_cast<int>(code)); }

template <typename F> uhd_status guarded(F&& fn) {
    try {
        fn();
        return UHD_OK;
    } catch (const uhd::error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return UHD_ERR_RESOURCE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return UHD_ERR_LOGIC;
    }
}

uhd_status fail_usage(const char* msg) {
    g_last_error = msg;
    return UHD_ERR_USAGE;
}

struct Parsed {
    uhd::EncoderConfig config;
    uhd::ModelOptions options;
    bool fast_histogram = false;
};

Parsed parse_params(const uhd_train_params& p) {
    Parsed out;
    const std::string enc = p.encoder != nullptr ? p.encoder : "uhd";
    if (enc == "uhd") {
        out.config.encoder = uhd::EncoderKind::uhd;
    } else if (enc == "baseline") {
        out.config.encoder = uhd::EncoderKind::baseline;
    } else {
        uhd::throw_error(uhd::errc::usage, "unknown encoder: " + enc);
    }
    out.config.dimension = p.dimension;
    out.config.quantization_bits = p.quantization_bits;
    out.config.level_bits = p.level_bits;
    out.config.seed = p.seed;
    const std::string gen = p.generator != nullptr ? p.generator : "general-prng";
    if (gen == "general-prng") {
        out.config.generator_kind = uhd::GeneratorKind::general_prng;
    } else if (gen == "lfsr") {
        out.config.generator_kind = uhd::GeneratorKind::lfsr;
    } else {
        uhd::throw_error(uhd::errc::usage, "unknown generator: " + gen);
    }
    const std::string cmp = p.comparator != nullptr ? p.comparator : "scalar-fast";
    if (cmp == "scalar-fast") {
        out.config.comparator_path = uhd::ComparatorPath::scalar_fast;
    } else if (cmp == "gate-level-unary") {
        out.config.comparator_path = uhd::ComparatorPath::gate_level_unary;
    } else {
        uhd::throw_error(uhd::errc::usage, "unknown comparator: " + cmp);
    }
    out.config.use_level_bank = p.use_level_bank != 0;
    out.config.sobol_file = p.sobol_file != nullptr ? p.sobol_file : "";
    out.options.per_image_binarize = p.per_image_binarize != 0;
    out.options.binarize_query = p.binarize_query != 0;
    out.options.raw_class_similarity = p.raw_class_similarity != 0;
    out.options.centered_similarity = p.centered_similarity != 0;
    out.options.workers = p.workers == 0 ? 1 : p.workers;
    out.fast_histogram = p.fast_histogram != 0;
    return out;
}

uhd::DirectionNumbers load_dirs(const std::string& path, uhd::EncoderKind kind) {
    if (kind != uhd::EncoderKind::uhd) {
        return uhd::DirectionNumbers();
    }
    if (path.empty()) {
        uhd::throw_error(uhd::errc::usage, "uhd encoder requires a sobol direction-number file");
    }
    return uhd::DirectionNumbers::load_file(path);
}

} // namespace

struct uhd_dataset {
    uhd::Dataset ds;
};

struct uhd_model {
    uhd::ClassModel model;
};

extern "C" {

const char* uhd_last_error(void) { return g_last_error.c_str(); }

uhd_status uhd_dataset_load_idx(const char* images_path, const char* labels_path,
                                const char* name, uhd_dataset** out) {
    if (images_path == nullptr || labels_path == nullptr || out == nullptr) {
        return fail_usage("uhd_dataset_load_idx: null argument");
    }
    return guarded([&] {
        auto* h = new uhd_dataset{uhd::load_idx(images_path, labels_path)};
        if (name != nullptr) {
            h->ds.name = name;
        }
        *out = h;
    });
}

uhd_status uhd_dataset_load_csv(const char* path, const char* name, uhd_dataset** out) {
    if (path == nullptr || out == nullptr) {
        return fail_usage("uhd_dataset_load_csv: null argument");
    }
    return guarded([&] {
        auto* h = new uhd_dataset{uhd::load_csv(path)};
        if (name != nullptr) {
            h->ds.name = name;
        }
        *out = h;
    });
}

uhd_status uhd_dataset_subsample(const uhd_dataset* in, uint64_t per_class, uint64_t seed,
                                 uhd_dataset** out) {
    if (in == nullptr || out == nullptr) {
        return fail_usage("uhd_dataset_subsample: null argument");
    }
    return guarded([&] {
        *out = new uhd_dataset{
            uhd::subsample(in->ds, static_cast<std::uint32_t>(per_class), seed)};
    });
}

uint64_t uhd_dataset_size(const uhd_dataset* ds) { return ds != nullptr ? ds->ds.size() : 0; }
uint32_t uhd_dataset_features(const uhd_dataset* ds) {
    return ds != nullptr ? ds->ds.feature_count : 0;
}
uint32_t uhd_dataset_classes(const uhd_dataset* ds) {
    return ds != nullptr ? ds->ds.class_count : 0;
}
void uhd_dataset_free(uhd_dataset* ds) { delete ds; }

void uhd_train_params_init(uhd_train_params* params) {
    if (params == nullptr) {
        return;
    }
    std::memset(params, 0, sizeof(*params));
    params->encoder = "uhd";
    params->dimension = 1024;
    params->quantization_bits = 4;
    params->level_bits = 4;
    params->seed = 1;
    params->generator = "general-prng";
    params->comparator = "scalar-fast";
    params->use_level_bank = 1;
    params->binarize_query = 1;
    params->workers = 1;
}

uhd_status uhd_train(const uhd_dataset* train_set, const uhd_train_params* params,
                     uhd_model** out) {
    if (train_set == nullptr || params == nullptr || out == nullptr) {
        return fail_usage("uhd_train: null argument");
    }
    return guarded([&] {
        Parsed p = parse_params(*params);
        const auto dirs = load_dirs(p.config.sobol_file, p.config.encoder);
        auto* h = new uhd_model{};
        try {
            h->model = p.fast_histogram
                           ? uhd::train_fast_histogram(train_set->ds, p.config, p.options, dirs)
                           : uhd::train(train_set->ds, p.config, p.options, dirs);
        } catch (...) {
            delete h;
            throw;
        }
        *out = h;
    });
}

uhd_status uhd_model_save(const uhd_model* model, const char* path) {
    if (model == nullptr || path == nullptr) {
        return fail_usage("uhd_model_save: null argument");
    }
    return guarded([&] { uhd::save_model(model->model, path); });
}

uhd_status uhd_model_load(const char* path, const char* sobol_file, uhd_model** out) {
    if (path == nullptr || out == nullptr) {
        return fail_usage("uhd_model_load: null argument");
    }
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            uhd::throw_error(uhd::errc::format, std::string("cannot open model file: ") + path);
        }
        // peek the config block to find the direction-number file
        in.close();
        uhd::DirectionNumbers dirs;
        // load once without encoder rebuild to read the stored sobol path
        // (load_model rebuilds the encoder, so resolve dirs first)
        {
            std::ifstream probe(path, std::ios::binary);
            char magic[4];
            probe.read(magic, 4);
            char ver[4];
            probe.read(ver, 4);
            unsigned char lenb[4];
            probe.read(reinterpret_cast<char*>(lenb), 4);
            if (!probe) {
                uhd::throw_error(uhd::errc::format, std::string(path) + ": truncated header");
            }
            const std::uint32_t len = static_cast<std::uint32_t>(lenb[0]) |
                                      (static_cast<std::uint32_t>(lenb[1]) << 8) |
                                      (static_cast<std::uint32_t>(lenb[2]) << 16) |
                                      (static_cast<std::uint32_t>(lenb[3]) << 24);
            std::string cfg_text(len, '\0');
            if (!probe.read(cfg_text.data(), len)) {
                uhd::throw_error(uhd::errc::format, std::string(path) + ": truncated config");
            }
            auto cfg = uhd::EncoderConfig::from_text(cfg_text);
            std::string dir_path = sobol_file != nullptr ? sobol_file : cfg.sobol_file;
            dirs = load_dirs(dir_path, cfg.encoder);
        }
        auto* h = new uhd_model{};
        try {
            h->model = uhd::load_model(path, dirs);
            if (sobol_file != nullptr) {
                h->model.config.sobol_file = sobol_file;
            }
        } catch (...) {
            delete h;
            throw;
        }
        *out = h;
    });
}

void uhd_model_free(uhd_model* model) { delete model; }

uint32_t uhd_model_classes(const uhd_model* model) {
    return model != nullptr ? model->model.class_count : 0;
}
uint32_t uhd_model_features(const uhd_model* model) {
    return model != nullptr ? model->model.feature_count : 0;
}
uint32_t uhd_model_dimension(const uhd_model* model) {
    return model != nullptr ? model->model.config.dimension : 0;
}

uhd_status uhd_model_config_text(const uhd_model* model, char* buf, size_t cap) {
    if (model == nullptr || buf == nullptr) {
        return fail_usage("uhd_model_config_text: null argument");
    }
    return guarded([&] {
        const std::string text = model->model.config.to_text();
        if (text.size() + 1 > cap) {
            uhd::throw_error(uhd::errc::capacity,
                             "config text needs " + std::to_string(text.size() + 1) + " bytes");
        }
        std::memcpy(buf, text.c_str(), text.size() + 1);
    });
}

uhd_status uhd_predict(const uhd_model* model, const uint8_t* image, uint32_t length,
                       uint32_t* label, double* scores) {
    if (model == nullptr || image == nullptr || label == nullptr) {
        return fail_usage("uhd_predict: null argument");
    }
    return guarded([&] {
        auto p = uhd::predict(model->model, {image, length});
        *label = p.label;
        if (scores != nullptr) {
            std::memcpy(scores, p.scores.data(), p.scores.size() * sizeof(double));
        }
    });
}

uhd_status uhd_evaluate(const uhd_model* model, const uhd_dataset* test_set,
                        uhd_eval_report* report, uint64_t* confusion) {
    if (model == nullptr || test_set == nullptr || report == nullptr) {
        return fail_usage("uhd_evaluate: null argument");
    }
    return guarded([&] {
        auto r = uhd::evaluate(model->model, test_set->ds);
        report->accuracy_percent = r.accuracy_percent;
        report->total = r.total;
        report->correct = r.correct;
        report->comparisons = r.counters.comparisons;
        report->bind_ops = r.counters.bind_ops;
        report->accumulator_updates = r.counters.accumulator_updates;
        report->memory_fetches = r.counters.memory_fetches;
        report->binarize_windows = r.counters.binarize_windows;
        if (confusion != nullptr) {
            std::memcpy(confusion, r.confusion.data(), r.confusion.size() * sizeof(uint64_t));
        }
    });
}

uhd_status uhd_sweep(const uhd_dataset* train_set, const uhd_dataset* test_set,
                     const uhd_train_params* params, uint32_t i_max, double* trace) {
    if (train_set == nullptr || test_set == nullptr || params == nullptr || trace == nullptr) {
        return fail_usage("uhd_sweep: null argument");
    }
    return guarded([&] {
        Parsed p = parse_params(*params);
        const auto dirs = load_dirs(p.config.sobol_file, p.config.encoder);
        auto sweep =
            uhd::iteration_sweep(train_set->ds, test_set->ds, p.config, p.options, dirs, i_max);
        std::memcpy(trace, sweep.trace.data(), sweep.trace.size() * sizeof(double));
    });
}

uhd_status uhd_sobol_table_write(const char* direction_file, uint32_t dimensions,
                                 uint32_t points, uint32_t quantization_bits,
                                 const char* out_path) {
    if (direction_file == nullptr || out_path == nullptr) {
        return fail_usage("uhd_sobol_table_write: null argument");
    }
    return guarded([&] {
        const auto dirs = uhd::DirectionNumbers::load_file(direction_file);
        uhd::SobolConfig sc;
        sc.dimensions = dimensions;
        sc.points_per_dimension = points;
        sc.quantization_bits = quantization_bits;
        auto table = uhd::SobolTable::build(dirs, sc);
        table.save(out_path);
    });
}

uhd_status uhd_sobol_table_values(const char* direction_file, uint32_t dimensions,
                                  uint32_t points, uint32_t quantization_bits,
                                  uint16_t* values) {
    if (direction_file == nullptr || values == nullptr) {
        return fail_usage("uhd_sobol_table_values: null argument");
    }
    return guarded([&] {
        const auto dirs = uhd::DirectionNumbers::load_file(direction_file);
        uhd::SobolConfig sc;
        sc.dimensions = dimensions;
        sc.points_per_dimension = points;
        sc.quantization_bits = quantization_bits;
        auto table = uhd::SobolTable::build(dirs, sc);
        for (std::uint32_t i = 0; i < dimensions; ++i) {
            std::memcpy(values + static_cast<std::size_t>(i) * points, table.row_data(i),
                        points * sizeof(uint16_t));
        }
    });
}

uhd_status uhd_selftest(void) {
    return guarded([&] {
        // unary comparator against the scalar rule, N = 16
        uhd::UnaryStreamTable ust(4);
        for (std::uint32_t a = 0; a < 16; ++a) {
            for (std::uint32_t b = 0; b < 16; ++b) {
                const int got = uhd::unary_compare_ge(ust.fetch(a), ust.fetch(b));
                if (got != (a >= b ? 1 : 0)) {
                    uhd::throw_error(uhd::errc::logic, "selftest: comparator mismatch");
                }
            }
        }
        // masked binarizer against the popcount threshold
        std::mt19937 rng(7);
        for (std::uint32_t h = 2; h <= 16; ++h) {
            for (std::uint32_t c = 0; c <= h; ++c) {
                std::vector<std::uint8_t> bits(h, 0);
                std::fill(bits.begin(), bits.begin() + c, 1);
                std::shuffle(bits.begin(), bits.end(), rng);
                const int got = uhd::masked_binarize_window(bits);
                const int want = c >= (h + 1) / 2 ? 1 : 0;
                if (got != want) {
                    uhd::throw_error(uhd::errc::logic, "selftest: binarizer mismatch");
                }
            }
        }
        // toy train/predict round trip with the baseline encoder
        uhd::Dataset toy;
        toy.feature_count = 8;
        toy.class_count = 2;
        toy.name = "selftest";
        for (int k = 0; k < 6; ++k) {
            const std::uint8_t hi = k % 2 == 0 ? 255 : 0;
            for (int i = 0; i < 8; ++i) {
                toy.pixels.push_back(i < 4 ? hi : static_cast<std::uint8_t>(255 - hi));
            }
            toy.labels.push_back(k % 2 == 0 ? 0 : 1);
        }
        uhd::EncoderConfig cfg;
        cfg.encoder = uhd::EncoderKind::baseline;
        cfg.dimension = 256;
        auto model = uhd::train(toy, cfg, uhd::ModelOptions{}, uhd::DirectionNumbers());
        auto rep = uhd::evaluate(model, toy);
        if (rep.accuracy_percent != 100.0) {
            uhd::throw_error(uhd::errc::logic, "selftest: toy model not separable");
        }
    });
}

} // extern "C"

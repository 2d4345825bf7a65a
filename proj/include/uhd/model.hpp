#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "uhd/counters.hpp"
#include "uhd/data.hpp"
#include "uhd/encoders.hpp"
#include "uhd/hypervector.hpp"

namespace uhd {

enum class EncoderKind { baseline, uhd };

struct EncoderConfig {
    EncoderKind encoder = EncoderKind::uhd;
    std::uint32_t dimension = 1024;       // D
    std::uint32_t quantization_bits = 4;  // M, uHD intensity/Sobol quantization
    std::uint32_t level_bits = 4;         // n, baseline level precision
    std::uint64_t seed = 1;
    GeneratorKind generator_kind = GeneratorKind::general_prng;
    ComparatorPath comparator_path = ComparatorPath::scalar_fast;
    bool use_level_bank = true;
    std::string sobol_file; // direction-number data file for the uHD table

    // Canonical key-value text block used by the model file format.
    std::string to_text() const;
    static EncoderConfig from_text(const std::string& text);

    friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

struct ModelOptions {
    // Binarize each image hypervector before class accumulation instead of
    // accumulating raw pixel-level sums.
    bool per_image_binarize = false;
    // Binarize C_test before similarity; disabling keeps the integer sums.
    bool binarize_query = true;
    // Research flag: similarity against integer class sums instead of the
    // binarized class hypervectors.
    bool raw_class_similarity = false;
    // Research flag: subtract each vector's mean before the cosine. Only
    // meaningful when at least one side is kept as integer sums.
    bool centered_similarity = false;
    std::uint32_t workers = 1;

    friend bool operator==(const ModelOptions&, const ModelOptions&) = default;
};

using EncoderState = std::variant<BaselineEncoderState, UhdEncoderState>;

// Builds the encoder state described by a config for a given feature count.
EncoderState make_encoder(const EncoderConfig& config, std::uint32_t feature_count,
                          const DirectionNumbers& dirs);

struct ClassModel {
    EncoderConfig config;
    ModelOptions options;
    std::uint32_t feature_count = 0; // H
    std::uint32_t class_count = 0;   // q
    std::vector<PackedHypervector> classes;    // binarized class hypervectors
    std::vector<AccumulatorVector> class_sums; // integer sums (not persisted)
    EncoderState encoder;

    bool equal_persisted(const ClassModel& other) const;
};

// Single-pass training: accumulate every image of each class, binarize once
// per class.
ClassModel train(const Dataset& dataset, const EncoderConfig& config, const ModelOptions& options,
                 const DirectionNumbers& dirs, OpCounters* counters = nullptr);

// Algebraic reorganization of train for the uHD encoder via per-class
// per-pixel intensity histograms; bit-identical ClassModel to train.
ClassModel train_fast_histogram(const Dataset& dataset, const EncoderConfig& config,
                                const ModelOptions& options, const DirectionNumbers& dirs,
                                OpCounters* counters = nullptr);

struct Prediction {
    std::uint32_t label = 0;
    std::vector<double> scores; // cosine similarity per class
};

Prediction predict(const ClassModel& model, std::span<const std::uint8_t> image_8bit,
                   OpCounters* counters = nullptr);

struct EvalReport {
    double accuracy_percent = 0.0;
    std::uint64_t total = 0;
    std::uint64_t correct = 0;
    std::vector<std::uint64_t> confusion; // q x q, row = true class
    OpCounters counters;
};

EvalReport evaluate(const ClassModel& model, const Dataset& test_set);

struct SweepResult {
    std::vector<double> trace; // accuracy per iteration, i = 1..i_max
    // running averages at the requested checkpoints (clipped to i_max)
    std::vector<std::uint32_t> checkpoints;
    std::vector<double> averages;
    std::vector<std::uint64_t> seeds;
};

SweepResult iteration_sweep(const Dataset& train_set, const Dataset& test_set,
                            const EncoderConfig& baseline_config, const ModelOptions& options,
                            const DirectionNumbers& dirs, std::uint32_t i_max,
                            const std::vector<std::uint32_t>& checkpoints = {1, 5, 20, 50, 75, 100});

// Model file: magic "UHD1", version, encoder-config text block, q, D, then q
// serialized hypervectors.
void save_model(const ClassModel& model, const std::string& path);
ClassModel load_model(const std::string& path, const DirectionNumbers& dirs);

} // namespace uhd

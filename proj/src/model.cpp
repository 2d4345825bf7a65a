#include "uhd/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace uhd {

namespace {

const char* kind_name(EncoderKind k) { return k == EncoderKind::uhd ? "uhd" : "baseline"; }
const char* gen_name(GeneratorKind g) {
    return g == GeneratorKind::lfsr ? "lfsr" : "general-prng";
}
const char* path_name(ComparatorPath p) {
    return p == ComparatorPath::gate_level_unary ? "gate-level-unary" : "scalar-fast";
}

std::uint32_t intensity_bits(const EncoderConfig& c) {
    return c.encoder == EncoderKind::uhd ? c.quantization_bits : c.level_bits;
}

} // namespace

std::string EncoderConfig::to_text() const {
    std::ostringstream out;
    out << "encoder=" << kind_name(encoder) << "\n";
    out << "dimension=" << dimension << "\n";
    out << "quantization_bits=" << quantization_bits << "\n";
    out << "level_bits=" << level_bits << "\n";
    out << "seed=" << seed << "\n";
    out << "generator_kind=" << gen_name(generator_kind) << "\n";
    out << "comparator_path=" << path_name(comparator_path) << "\n";
    out << "use_level_bank=" << (use_level_bank ? 1 : 0) << "\n";
    out << "sobol_file=" << sobol_file << "\n";
    return out.str();
}

EncoderConfig EncoderConfig::from_text(const std::string& text) {
    EncoderConfig c;
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto need = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw_error(errc::format, std::string("encoder config: missing key ") + key);
        }
        return it->second;
    };
    const std::string& enc = need("encoder");
    if (enc == "uhd") {
        c.encoder = EncoderKind::uhd;
    } else if (enc == "baseline") {
        c.encoder = EncoderKind::baseline;
    } else {
        throw_error(errc::format, "encoder config: unknown encoder " + enc);
    }
    c.dimension = static_cast<std::uint32_t>(std::stoul(need("dimension")));
    c.quantization_bits = static_cast<std::uint32_t>(std::stoul(need("quantization_bits")));
    c.level_bits = static_cast<std::uint32_t>(std::stoul(need("level_bits")));
    c.seed = std::stoull(need("seed"));
    const std::string& gen = need("generator_kind");
    c.generator_kind = gen == "lfsr" ? GeneratorKind::lfsr : GeneratorKind::general_prng;
    const std::string& path = need("comparator_path");
    c.comparator_path =
        path == "gate-level-unary" ? ComparatorPath::gate_level_unary : ComparatorPath::scalar_fast;
    c.use_level_bank = need("use_level_bank") == "1";
    c.sobol_file = need("sobol_file");
    return c;
}

EncoderState make_encoder(const EncoderConfig& config, std::uint32_t feature_count,
                          const DirectionNumbers& dirs) {
    if (config.encoder == EncoderKind::baseline) {
        return BaselineEncoderState::create(config.dimension, feature_count, config.level_bits,
                                            config.seed, config.generator_kind);
    }
    SobolConfig sc;
    sc.dimensions = feature_count;
    sc.points_per_dimension = config.dimension;
    sc.quantization_bits = config.quantization_bits;
    auto table = SobolTable::build(dirs, sc);
    auto state = UhdEncoderState::create(std::move(table), config.comparator_path);
    if (config.use_level_bank) {
        state.build_level_bank();
    }
    return state;
}

namespace {

AccumulatorVector encode_with(const EncoderState& enc, std::span<const std::uint8_t> image,
                              OpCounters* counters) {
    if (const auto* b = std::get_if<BaselineEncoderState>(&enc)) {
        return b->encode_image(image, counters);
    }
    return std::get<UhdEncoderState>(enc).encode_image(image, counters);
}

void check_dataset(const Dataset& ds) {
    if (ds.size() == 0) {
        throw_error(errc::domain, "dataset is empty");
    }
    if (ds.class_count < 2) {
        throw_error(errc::domain, "dataset needs at least 2 classes");
    }
}

} // namespace

ClassModel train(const Dataset& dataset, const EncoderConfig& config, const ModelOptions& options,
                 const DirectionNumbers& dirs, OpCounters* counters) {
    check_dataset(dataset);
    const Dataset q = quantize_dataset(dataset, intensity_bits(config));
    ClassModel model;
    model.config = config;
    model.options = options;
    model.feature_count = q.feature_count;
    model.class_count = q.class_count;
    model.encoder = make_encoder(config, q.feature_count, dirs);

    std::vector<std::uint64_t> class_sizes(q.class_count, 0);
    for (auto l : q.labels) {
        ++class_sizes[l];
    }
    for (std::uint32_t c = 0; c < q.class_count; ++c) {
        if (class_sizes[c] == 0) {
            throw_error(errc::domain, "training class " + std::to_string(c) + " has no samples");
        }
    }

    const std::uint32_t workers = std::max(1u, options.workers);
    std::vector<std::vector<AccumulatorVector>> partial(workers);
    std::vector<OpCounters> partial_counters(workers);
    auto work = [&](std::uint32_t w) {
        auto& accs = partial[w];
        accs.assign(q.class_count, AccumulatorVector(config.dimension));
        OpCounters* pc = counters != nullptr ? &partial_counters[w] : nullptr;
        for (std::size_t idx = w; idx < q.size(); idx += workers) {
            auto enc = encode_with(model.encoder, {q.image(idx), q.feature_count}, pc);
            if (options.per_image_binarize) {
                if (pc != nullptr) {
                    pc->binarize_windows += config.dimension;
                }
                accs[q.labels[idx]].accumulate(enc.binarize());
            } else {
                accs[q.labels[idx]].merge(enc);
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (std::uint32_t w = 0; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    model.class_sums.assign(q.class_count, AccumulatorVector(config.dimension));
    for (std::uint32_t w = 0; w < workers; ++w) {
        for (std::uint32_t c = 0; c < q.class_count; ++c) {
            model.class_sums[c].merge(partial[w][c]);
        }
        if (counters != nullptr) {
            *counters += partial_counters[w];
        }
    }
    model.classes.reserve(q.class_count);
    for (std::uint32_t c = 0; c < q.class_count; ++c) {
        model.classes.push_back(model.class_sums[c].binarize());
    }
    if (counters != nullptr) {
        counters->binarize_windows += static_cast<std::uint64_t>(q.class_count) * config.dimension;
    }
    return model;
}

ClassModel train_fast_histogram(const Dataset& dataset, const EncoderConfig& config,
                                const ModelOptions& options, const DirectionNumbers& dirs,
                                OpCounters* counters) {
    if (config.encoder != EncoderKind::uhd) {
        throw_error(errc::domain, "train_fast_histogram requires the uhd encoder");
    }
    if (options.per_image_binarize) {
        throw_error(errc::domain, "train_fast_histogram requires raw accumulation");
    }
    check_dataset(dataset);
    const Dataset q = quantize_dataset(dataset, config.quantization_bits);
    ClassModel model;
    model.config = config;
    model.options = options;
    model.feature_count = q.feature_count;
    model.class_count = q.class_count;
    model.encoder = make_encoder(config, q.feature_count, dirs);
    const auto& enc = std::get<UhdEncoderState>(model.encoder);

    const std::uint32_t levels = 1u << config.quantization_bits;
    const std::uint32_t h = q.feature_count;
    const std::uint32_t d = config.dimension;

    // per-class per-pixel intensity histograms, q x H x 2^M
    std::vector<std::uint32_t> hist(static_cast<std::size_t>(q.class_count) * h * levels, 0);
    std::vector<std::uint64_t> class_sizes(q.class_count, 0);
    for (std::size_t idx = 0; idx < q.size(); ++idx) {
        const auto* img = q.image(idx);
        auto* base = hist.data() + static_cast<std::size_t>(q.labels[idx]) * h * levels;
        for (std::uint32_t i = 0; i < h; ++i) {
            ++base[static_cast<std::size_t>(i) * levels + img[i]];
        }
        ++class_sizes[q.labels[idx]];
    }
    for (std::uint32_t c = 0; c < q.class_count; ++c) {
        if (class_sizes[c] == 0) {
            throw_error(errc::domain, "training class " + std::to_string(c) + " has no samples");
        }
    }

    model.class_sums.assign(q.class_count, AccumulatorVector(d));
    std::vector<std::int64_t> ones(d);
    std::vector<std::int32_t> sums(d);
    for (std::uint32_t c = 0; c < q.class_count; ++c) {
        // sums[j] = sum_i sum_v hist[c][i][v] * bipolar(v >= table[i][j])
        //         = 2 * (weighted ones count) - H * n_c
        std::fill(ones.begin(), ones.end(), 0);
        const auto* base = hist.data() + static_cast<std::size_t>(c) * h * levels;
        for (std::uint32_t i = 0; i < h; ++i) {
            for (std::uint32_t v = 0; v < levels; ++v) {
                const std::uint32_t w = base[static_cast<std::size_t>(i) * levels + v];
                if (w == 0) {
                    continue;
                }
                const auto& lv =
                    enc.has_level_bank() ? enc.bank_vector(i, v) : enc.level_vector(i, v);
                const auto words = lv.words();
                for (std::uint32_t j = 0; j < d; ++j) {
                    ones[j] += static_cast<std::int64_t>(w) * ((words[j >> 6] >> (j & 63)) & 1u);
                }
            }
        }
        const std::int64_t total =
            static_cast<std::int64_t>(h) * static_cast<std::int64_t>(class_sizes[c]);
        for (std::uint32_t j = 0; j < d; ++j) {
            sums[j] = static_cast<std::int32_t>(2 * ones[j] - total);
        }
        model.class_sums[c].load(sums, static_cast<std::uint64_t>(total));
    }
    if (counters != nullptr) {
        counters->memory_fetches += static_cast<std::uint64_t>(q.class_count) * h * levels;
        counters->accumulator_updates += static_cast<std::uint64_t>(q.class_count) * h * levels;
        counters->binarize_windows += static_cast<std::uint64_t>(q.class_count) * d;
    }
    model.classes.reserve(q.class_count);
    for (std::uint32_t c = 0; c < q.class_count; ++c) {
        model.classes.push_back(model.class_sums[c].binarize());
    }
    return model;
}

namespace {

void cosine_scores(const ClassModel& model, const AccumulatorVector& query,
                   std::vector<double>& scores) {
    const std::uint32_t d = model.config.dimension;
    scores.assign(model.class_count, 0.0);
    const bool bin_query = model.options.binarize_query;
    const bool raw_class = model.options.raw_class_similarity;
    if (raw_class && model.class_sums.empty()) {
        throw_error(errc::state, "raw class similarity needs in-memory training sums");
    }
    if (bin_query && !raw_class) {
        const PackedHypervector q = query.binarize();
        for (std::uint32_t c = 0; c < model.class_count; ++c) {
            scores[c] = cosine_similarity(q, model.classes[c]);
        }
        return;
    }
    // at least one side stays integer: plain floating-point cosine
    const bool centered = model.options.centered_similarity;
    std::vector<double> qv(d);
    if (bin_query) {
        const PackedHypervector q = query.binarize();
        for (std::uint32_t j = 0; j < d; ++j) {
            qv[j] = q.element(j);
        }
    } else {
        for (std::uint32_t j = 0; j < d; ++j) {
            qv[j] = static_cast<double>(query.sum(j));
        }
    }
    if (centered) {
        double mean = 0.0;
        for (double x : qv) {
            mean += x;
        }
        mean /= d;
        for (double& x : qv) {
            x -= mean;
        }
    }
    double qn = 0.0;
    for (double x : qv) {
        qn += x * x;
    }
    qn = std::sqrt(qn);
    std::vector<double> cv(d);
    for (std::uint32_t c = 0; c < model.class_count; ++c) {
        if (raw_class) {
            const auto sums = model.class_sums[c].sums();
            for (std::uint32_t j = 0; j < d; ++j) {
                cv[j] = static_cast<double>(sums[j]);
            }
        } else {
            for (std::uint32_t j = 0; j < d; ++j) {
                cv[j] = model.classes[c].element(j);
            }
        }
        if (centered) {
            double mean = 0.0;
            for (double x : cv) {
                mean += x;
            }
            mean /= d;
            for (double& x : cv) {
                x -= mean;
            }
        }
        double dot = 0.0;
        double cn = 0.0;
        for (std::uint32_t j = 0; j < d; ++j) {
            dot += qv[j] * cv[j];
            cn += cv[j] * cv[j];
        }
        scores[c] = (qn == 0.0 || cn == 0.0) ? 0.0 : dot / (qn * std::sqrt(cn));
    }
    return;
}

} // namespace

Prediction predict(const ClassModel& model, std::span<const std::uint8_t> image_8bit,
                   OpCounters* counters) {
    if (image_8bit.size() != model.feature_count) {
        throw_error(errc::shape, "predict: image feature count mismatch");
    }
    const std::uint32_t bits = intensity_bits(model.config);
    std::vector<std::uint8_t> qimg(image_8bit.begin(), image_8bit.end());
    const std::uint32_t shift = 8 - bits;
    for (auto& p : qimg) {
        p = static_cast<std::uint8_t>(p >> shift);
    }
    auto acc = encode_with(model.encoder, qimg, counters);
    if (counters != nullptr && model.options.binarize_query) {
        counters->binarize_windows += model.config.dimension;
    }
    Prediction out;
    cosine_scores(model, acc, out.scores);
    out.label = 0;
    for (std::uint32_t c = 1; c < model.class_count; ++c) {
        if (out.scores[c] > out.scores[out.label]) {
            out.label = c; // ties break to the lowest index
        }
    }
    return out;
}

EvalReport evaluate(const ClassModel& model, const Dataset& test_set) {
    check_dataset(test_set);
    if (test_set.feature_count != model.feature_count) {
        throw_error(errc::shape, "evaluate: dataset feature count does not match model");
    }
    EvalReport report;
    report.confusion.assign(static_cast<std::size_t>(model.class_count) * model.class_count, 0);
    report.total = test_set.size();
    const std::uint32_t workers = std::max(1u, model.options.workers);
    std::vector<std::uint64_t> correct(workers, 0);
    std::vector<std::vector<std::uint64_t>> confusion(
        workers,
        std::vector<std::uint64_t>(static_cast<std::size_t>(model.class_count) * model.class_count, 0));
    std::vector<OpCounters> counters(workers);
    auto work = [&](std::uint32_t w) {
        for (std::size_t idx = w; idx < test_set.size(); idx += workers) {
            auto p = predict(model, {test_set.image(idx), test_set.feature_count}, &counters[w]);
            const std::uint32_t truth = test_set.labels[idx];
            if (truth < model.class_count) {
                confusion[w][static_cast<std::size_t>(truth) * model.class_count + p.label] += 1;
            }
            if (p.label == truth) {
                ++correct[w];
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (std::uint32_t w = 0; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    for (std::uint32_t w = 0; w < workers; ++w) {
        report.correct += correct[w];
        report.counters += counters[w];
        for (std::size_t k = 0; k < report.confusion.size(); ++k) {
            report.confusion[k] += confusion[w][k];
        }
    }
    report.accuracy_percent = 100.0 * static_cast<double>(report.correct) /
                              static_cast<double>(report.total);
    return report;
}

SweepResult iteration_sweep(const Dataset& train_set, const Dataset& test_set,
                            const EncoderConfig& baseline_config, const ModelOptions& options,
                            const DirectionNumbers& dirs, std::uint32_t i_max,
                            const std::vector<std::uint32_t>& checkpoints) {
    if (i_max < 1) {
        throw_error(errc::domain, "iteration_sweep: i_max must be >= 1");
    }
    SweepResult result;
    double running = 0.0;
    for (std::uint32_t i = 1; i <= i_max; ++i) {
        EncoderConfig cfg = baseline_config;
        cfg.seed = baseline_config.seed + (i - 1); // fresh hypervector assignment per iteration
        auto model = train(train_set, cfg, options, dirs);
        auto report = evaluate(model, test_set);
        result.trace.push_back(report.accuracy_percent);
        result.seeds.push_back(cfg.seed);
        running += report.accuracy_percent;
    }
    for (std::uint32_t cp : checkpoints) {
        if (cp > i_max) {
            continue;
        }
        double sum = 0.0;
        for (std::uint32_t i = 0; i < cp; ++i) {
            sum += result.trace[i];
        }
        result.checkpoints.push_back(cp);
        result.averages.push_back(sum / cp);
    }
    return result;
}

bool ClassModel::equal_persisted(const ClassModel& other) const {
    return config == other.config && feature_count == other.feature_count &&
           class_count == other.class_count && classes == other.classes;
}

namespace {
constexpr char kMagic[4] = {'U', 'H', 'D', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32_le(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32_le(std::istream& in, const std::string& what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw_error(errc::format, "model file: truncated while reading " + what);
    }
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
} // namespace

void save_model(const ClassModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw_error(errc::resource, "cannot open model file for writing: " + path);
    }
    out.write(kMagic, 4);
    put_u32_le(out, kVersion);
    const std::string cfg = model.config.to_text();
    put_u32_le(out, static_cast<std::uint32_t>(cfg.size()));
    out.write(cfg.data(), static_cast<std::streamsize>(cfg.size()));
    put_u32_le(out, model.class_count);
    put_u32_le(out, model.config.dimension);
    put_u32_le(out, model.feature_count);
    for (const auto& c : model.classes) {
        c.serialize(out);
    }
    if (!out) {
        throw_error(errc::resource, "model file write failed: " + path);
    }
}

ClassModel load_model(const std::string& path, const DirectionNumbers& dirs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(errc::format, "cannot open model file: " + path);
    }
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != std::string(kMagic, 4)) {
        throw_error(errc::format, path + ": bad model magic");
    }
    const std::uint32_t version = get_u32_le(in, "version");
    if (version != kVersion) {
        throw_error(errc::format, path + ": unsupported model version " + std::to_string(version));
    }
    const std::uint32_t cfg_len = get_u32_le(in, "config length");
    std::string cfg(cfg_len, '\0');
    if (!in.read(cfg.data(), cfg_len)) {
        throw_error(errc::format, path + ": truncated config block");
    }
    ClassModel model;
    model.config = EncoderConfig::from_text(cfg);
    model.class_count = get_u32_le(in, "class count");
    const std::uint32_t d = get_u32_le(in, "dimension");
    model.feature_count = get_u32_le(in, "feature count");
    if (d != model.config.dimension) {
        throw_error(errc::format, path + ": dimension field disagrees with config");
    }
    model.classes.reserve(model.class_count);
    for (std::uint32_t c = 0; c < model.class_count; ++c) {
        model.classes.push_back(PackedHypervector::deserialize(in));
        if (model.classes.back().dimension() != d) {
            throw_error(errc::format, path + ": class hypervector dimension mismatch");
        }
    }
    model.encoder = make_encoder(model.config, model.feature_count, dirs);
    return model;
}

} // namespace uhd

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uhd/uhd.h"

using json = nlohmann::json;

namespace {

int exit_code(uhd_status s) {
    switch (s) {
    case UHD_OK:
        return 0;
    case UHD_ERR_USAGE:
        return 1;
    case UHD_ERR_RESOURCE:
        return 3;
    default:
        return 2;
    }
}

[[noreturn]] void die(uhd_status s, const std::string& context) {
    std::fprintf(stderr, "error: %s: %s\n", context.c_str(), uhd_last_error());
    std::exit(exit_code(s));
}

void check(uhd_status s, const std::string& context) {
    if (s != UHD_OK) {
        die(s, context);
    }
}

[[noreturn]] void die_usage(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    std::exit(1);
}

// Flat key-value config with [section] headers; keys are stored as
// "section.key".
std::map<std::string, std::string> parse_config_text(std::istream& in, const std::string& origin) {
    std::map<std::string, std::string> out;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (body.front() == '[') {
            if (body.back() != ']' || body.size() < 3) {
                std::fprintf(stderr, "error: %s:%d: malformed section header\n", origin.c_str(),
                             lineno);
                std::exit(2);
            }
            section = body.substr(1, body.size() - 2);
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: %s:%d: expected key=value\n", origin.c_str(), lineno);
            std::exit(2);
        }
        std::string key = body.substr(0, eq);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) {
            key.pop_back();
        }
        std::string value = body.substr(eq + 1);
        const auto vfirst = value.find_first_not_of(" \t");
        value = vfirst == std::string::npos ? "" : value.substr(vfirst);
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

std::string default_sobol_file() {
    const char* dir = std::getenv("UHD_DATA_DIR");
    return std::string(dir != nullptr && *dir != '\0' ? dir : "data") +
           "/sobol-direction-numbers.txt";
}

struct RunConfig {
    // dataset
    std::string train_images, train_labels, train_csv;
    std::string test_images, test_labels, test_csv;
    std::uint64_t train_limit = 0;
    std::uint64_t subsample_seed = 1;
    // encoder
    std::string encoder = "uhd";
    std::uint32_t dim = 1024;
    std::uint32_t quantization_bits = 4;
    std::uint32_t level_bits = 4;
    std::uint64_t seed = 1;
    std::string generator = "general-prng";
    std::string comparator = "scalar-fast";
    bool level_bank = true;
    std::string sobol_file = default_sobol_file();
    // model options
    std::uint32_t workers = std::max(1u, std::thread::hardware_concurrency());
    bool per_image_binarize = false;
    bool binarize_query = true;
    bool raw_class_similarity = false;
    bool centered_similarity = false;
    bool fast_histogram = false;
    // run
    std::uint32_t iters = 1;
    // Table layout checkpoints: 1K/2K/8K
    std::vector<std::uint32_t> dims = {1024, 2048, 8192};
    std::string out;
    std::string report;

    void apply(const std::map<std::string, std::string>& kv) {
        auto str = [&](const char* k, std::string& dst) {
            auto it = kv.find(k);
            if (it != kv.end()) {
                dst = it->second;
            }
        };
        auto u64 = [&](const char* k, auto& dst) {
            auto it = kv.find(k);
            if (it != kv.end()) {
                dst = static_cast<std::remove_reference_t<decltype(dst)>>(
                    std::stoull(it->second));
            }
        };
        auto flag = [&](const char* k, bool& dst) {
            auto it = kv.find(k);
            if (it != kv.end()) {
                dst = it->second == "1" || it->second == "true";
            }
        };
        str("dataset.images", train_images);
        str("dataset.labels", train_labels);
        str("dataset.csv", train_csv);
        str("dataset.test_images", test_images);
        str("dataset.test_labels", test_labels);
        str("dataset.test_csv", test_csv);
        u64("dataset.train_limit", train_limit);
        u64("dataset.subsample_seed", subsample_seed);
        str("encoder.kind", encoder);
        u64("encoder.dim", dim);
        u64("encoder.quantization_bits", quantization_bits);
        u64("encoder.level_bits", level_bits);
        u64("encoder.seed", seed);
        str("encoder.generator", generator);
        str("encoder.comparator", comparator);
        flag("encoder.level_bank", level_bank);
        str("encoder.sobol_file", sobol_file);
        u64("model.workers", workers);
        flag("model.per_image_binarize", per_image_binarize);
        flag("model.binarize_query", binarize_query);
        flag("model.raw_class_similarity", raw_class_similarity);
        flag("model.centered_similarity", centered_similarity);
        flag("model.fast_histogram", fast_histogram);
        u64("run.iters", iters);
        str("run.out", out);
        str("run.report", report);
        auto it = kv.find("run.dims");
        if (it != kv.end()) {
            dims.clear();
            std::stringstream ss(it->second);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                dims.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
            }
        }
    }

    std::string emit() const {
        std::ostringstream o;
        o << "[dataset]\n";
        o << "images=" << train_images << "\n";
        o << "labels=" << train_labels << "\n";
        o << "csv=" << train_csv << "\n";
        o << "test_images=" << test_images << "\n";
        o << "test_labels=" << test_labels << "\n";
        o << "test_csv=" << test_csv << "\n";
        o << "train_limit=" << train_limit << "\n";
        o << "subsample_seed=" << subsample_seed << "\n";
        o << "[encoder]\n";
        o << "kind=" << encoder << "\n";
        o << "dim=" << dim << "\n";
        o << "quantization_bits=" << quantization_bits << "\n";
        o << "level_bits=" << level_bits << "\n";
        o << "seed=" << seed << "\n";
        o << "generator=" << generator << "\n";
        o << "comparator=" << comparator << "\n";
        o << "level_bank=" << (level_bank ? 1 : 0) << "\n";
        o << "sobol_file=" << sobol_file << "\n";
        o << "[model]\n";
        o << "workers=" << workers << "\n";
        o << "per_image_binarize=" << (per_image_binarize ? 1 : 0) << "\n";
        o << "binarize_query=" << (binarize_query ? 1 : 0) << "\n";
        o << "raw_class_similarity=" << (raw_class_similarity ? 1 : 0) << "\n";
        o << "centered_similarity=" << (centered_similarity ? 1 : 0) << "\n";
        o << "fast_histogram=" << (fast_histogram ? 1 : 0) << "\n";
        o << "[run]\n";
        o << "iters=" << iters << "\n";
        o << "dims=";
        for (std::size_t i = 0; i < dims.size(); ++i) {
            o << (i != 0 ? "," : "") << dims[i];
        }
        o << "\n";
        o << "out=" << out << "\n";
        o << "report=" << report << "\n";
        return o.str();
    }

    uhd_train_params params() const {
        uhd_train_params p;
        uhd_train_params_init(&p);
        p.encoder = encoder.c_str();
        p.dimension = dim;
        p.quantization_bits = quantization_bits;
        p.level_bits = level_bits;
        p.seed = seed;
        p.generator = generator.c_str();
        p.comparator = comparator.c_str();
        p.use_level_bank = level_bank ? 1 : 0;
        p.sobol_file = sobol_file.c_str();
        p.per_image_binarize = per_image_binarize ? 1 : 0;
        p.binarize_query = binarize_query ? 1 : 0;
        p.raw_class_similarity = raw_class_similarity ? 1 : 0;
        p.centered_similarity = centered_similarity ? 1 : 0;
        p.workers = workers;
        p.fast_histogram = fast_histogram ? 1 : 0;
        return p;
    }
};

// --dataset accepts "csv:PATH" or "idx:IMAGES,LABELS".
void apply_dataset_flag(RunConfig& cfg, const std::string& spec, bool test) {
    std::string& csv = test ? cfg.test_csv : cfg.train_csv;
    std::string& images = test ? cfg.test_images : cfg.train_images;
    std::string& labels = test ? cfg.test_labels : cfg.train_labels;
    if (spec.rfind("csv:", 0) == 0) {
        csv = spec.substr(4);
        images.clear();
        labels.clear();
        return;
    }
    if (spec.rfind("idx:", 0) == 0) {
        const std::string rest = spec.substr(4);
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            die_usage("--dataset idx form needs IMAGES,LABELS");
        }
        images = rest.substr(0, comma);
        labels = rest.substr(comma + 1);
        csv.clear();
        return;
    }
    die_usage("--dataset must start with csv: or idx:");
}

uhd_dataset* load_split(const RunConfig& cfg, bool test) {
    const std::string& csv = test ? cfg.test_csv : cfg.train_csv;
    const std::string& images = test ? cfg.test_images : cfg.train_images;
    const std::string& labels = test ? cfg.test_labels : cfg.train_labels;
    const char* name = test ? "test" : "train";
    uhd_dataset* ds = nullptr;
    if (!csv.empty()) {
        check(uhd_dataset_load_csv(csv.c_str(), name, &ds), "loading " + csv);
    } else if (!images.empty() && !labels.empty()) {
        check(uhd_dataset_load_idx(images.c_str(), labels.c_str(), name, &ds),
              std::string("loading ") + images);
    } else {
        die_usage(std::string("no ") + name + " dataset configured");
    }
    if (!test && cfg.train_limit > 0) {
        uhd_dataset* sub = nullptr;
        check(uhd_dataset_subsample(ds, cfg.train_limit, cfg.subsample_seed, &sub),
              "subsampling train set");
        uhd_dataset_free(ds);
        ds = sub;
    }
    return ds;
}

json report_json(const uhd_eval_report& r) {
    return json{{"accuracy_percent", r.accuracy_percent},
                {"total", r.total},
                {"correct", r.correct},
                {"counters",
                 {{"comparisons", r.comparisons},
                  {"bind_ops", r.bind_ops},
                  {"accumulator_updates", r.accumulator_updates},
                  {"memory_fetches", r.memory_fetches},
                  {"binarize_windows", r.binarize_windows}}}};
}

void write_report(const std::string& path, const json& j) {
    if (path.empty()) {
        return;
    }
    std::ofstream out(path);
    if (!out) {
        std::fprintf(stderr, "error: cannot write report: %s\n", path.c_str());
        std::exit(3);
    }
    out << j.dump(2) << "\n";
}

json confusion_json(const std::vector<uint64_t>& confusion, std::uint32_t q) {
    json rows = json::array();
    for (std::uint32_t t = 0; t < q; ++t) {
        json row = json::array();
        for (std::uint32_t p = 0; p < q; ++p) {
            row.push_back(confusion[static_cast<std::size_t>(t) * q + p]);
        }
        rows.push_back(row);
    }
    return rows;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_train(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    uhd_dataset* train_set = load_split(cfg, false);
    uhd_model* model = nullptr;
    const auto params = cfg.params();
    check(uhd_train(train_set, &params, &model), "training");
    if (!cfg.out.empty()) {
        check(uhd_model_save(model, cfg.out.c_str()), "saving model to " + cfg.out);
    }
    json j{{"command", "train"},
           {"config", cfg.emit()},
           {"train_size", uhd_dataset_size(train_set)},
           {"seconds", seconds_since(t0)}};
    double accuracy = -1.0;
    const bool has_test =
        !cfg.test_csv.empty() || (!cfg.test_images.empty() && !cfg.test_labels.empty());
    if (has_test) {
        uhd_dataset* test_set = load_split(cfg, true);
        uhd_eval_report r{};
        const std::uint32_t q = uhd_model_classes(model);
        std::vector<uint64_t> confusion(static_cast<std::size_t>(q) * q);
        check(uhd_evaluate(model, test_set, &r, confusion.data()), "evaluating");
        j["eval"] = report_json(r);
        j["eval"]["confusion"] = confusion_json(confusion, q);
        accuracy = r.accuracy_percent;
        uhd_dataset_free(test_set);
    }
    write_report(cfg.report, j);
    if (accuracy >= 0.0) {
        std::printf("train status=ok model=%s accuracy=%.2f seconds=%.1f\n", cfg.out.c_str(),
                    accuracy, seconds_since(t0));
    } else {
        std::printf("train status=ok model=%s seconds=%.1f\n", cfg.out.c_str(),
                    seconds_since(t0));
    }
    uhd_model_free(model);
    uhd_dataset_free(train_set);
    return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& model_path) {
    const auto t0 = std::chrono::steady_clock::now();
    uhd_model* model = nullptr;
    const char* sobol = cfg.sobol_file.empty() ? nullptr : cfg.sobol_file.c_str();
    check(uhd_model_load(model_path.c_str(), sobol, &model), "loading " + model_path);
    // --dataset and --test-dataset both name the evaluation split here
    const bool has_test =
        !cfg.test_csv.empty() || (!cfg.test_images.empty() && !cfg.test_labels.empty());
    uhd_dataset* test_set = load_split(cfg, has_test);
    uhd_eval_report r{};
    const std::uint32_t q = uhd_model_classes(model);
    std::vector<uint64_t> confusion(static_cast<std::size_t>(q) * q);
    check(uhd_evaluate(model, test_set, &r, confusion.data()), "evaluating");
    json j{{"command", "eval"},
           {"model", model_path},
           {"config", cfg.emit()},
           {"eval", report_json(r)},
           {"seconds", seconds_since(t0)}};
    j["eval"]["confusion"] = confusion_json(confusion, q);
    write_report(cfg.report, j);
    std::printf("eval status=ok model=%s accuracy=%.2f total=%llu correct=%llu\n",
                model_path.c_str(), r.accuracy_percent,
                static_cast<unsigned long long>(r.total),
                static_cast<unsigned long long>(r.correct));
    uhd_dataset_free(test_set);
    uhd_model_free(model);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    uhd_dataset* train_set = load_split(cfg, false);
    uhd_dataset* test_set = load_split(cfg, true);
    const auto params = cfg.params();
    std::vector<double> trace(cfg.iters);
    check(uhd_sweep(train_set, test_set, &params, cfg.iters, trace.data()), "sweeping");
    json j{{"command", "sweep"}, {"config", cfg.emit()}, {"trace", trace},
           {"seconds", seconds_since(t0)}};
    json averages = json::object();
    for (std::uint32_t cp : {1u, 5u, 20u, 50u, 75u, 100u}) {
        if (cp > cfg.iters) {
            continue;
        }
        const double avg =
            std::accumulate(trace.begin(), trace.begin() + cp, 0.0) / static_cast<double>(cp);
        averages[std::to_string(cp)] = avg;
    }
    j["averages"] = averages;
    write_report(cfg.report, j);
    const double mean =
        std::accumulate(trace.begin(), trace.end(), 0.0) / static_cast<double>(trace.size());
    std::printf("sweep status=ok iters=%u mean=%.2f first=%.2f last=%.2f\n", cfg.iters, mean,
                trace.front(), trace.back());
    uhd_dataset_free(test_set);
    uhd_dataset_free(train_set);
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    uhd_dataset* train_set = load_split(cfg, false);
    uhd_dataset* test_set = load_split(cfg, true);
    json rows = json::array();
    std::string summary;
    for (std::uint32_t d : cfg.dims) {
        RunConfig c = cfg;
        c.dim = d;

        c.encoder = "baseline";
        c.fast_histogram = false; // histogram path is uhd-only
        auto bparams = c.params();
        std::vector<double> trace(cfg.iters);
        check(uhd_sweep(train_set, test_set, &bparams, cfg.iters, trace.data()),
              "baseline sweep D=" + std::to_string(d));
        json checkpoints = json::object();
        for (std::uint32_t cp : {1u, 5u, 20u, 50u, 75u, 100u}) {
            if (cp > cfg.iters) {
                continue;
            }
            checkpoints[std::to_string(cp)] =
                std::accumulate(trace.begin(), trace.begin() + cp, 0.0) /
                static_cast<double>(cp);
        }
        uhd_model* bmodel = nullptr;
        check(uhd_train(train_set, &bparams, &bmodel), "baseline train D=" + std::to_string(d));
        uhd_eval_report brep{};
        check(uhd_evaluate(bmodel, test_set, &brep, nullptr),
              "baseline eval D=" + std::to_string(d));
        uhd_model_free(bmodel);

        c.encoder = "uhd";
        auto uparams = c.params();
        uhd_model* umodel = nullptr;
        check(uhd_train(train_set, &uparams, &umodel), "uhd train D=" + std::to_string(d));
        uhd_eval_report urep{};
        check(uhd_evaluate(umodel, test_set, &urep, nullptr), "uhd eval D=" + std::to_string(d));
        uhd_model_free(umodel);

        rows.push_back(json{{"dim", d},
                            {"baseline_checkpoints", checkpoints},
                            {"baseline", report_json(brep)},
                            {"uhd", report_json(urep)}});
        char buf[128];
        std::snprintf(buf, sizeof(buf), " D=%u baseline=%.2f uhd=%.2f bind_ops=%llu/%llu", d,
                      brep.accuracy_percent, urep.accuracy_percent,
                      static_cast<unsigned long long>(brep.bind_ops),
                      static_cast<unsigned long long>(urep.bind_ops));
        summary += buf;
    }
    json j{{"command", "compare"}, {"config", cfg.emit()}, {"rows", rows},
           {"seconds", seconds_since(t0)}};
    write_report(cfg.report, j);
    std::printf("compare status=ok%s\n", summary.c_str());
    uhd_dataset_free(test_set);
    uhd_dataset_free(train_set);
    return 0;
}

int cmd_sobol_dump(const RunConfig& cfg, std::uint32_t rows) {
    if (cfg.out.empty()) {
        die_usage("sobol-dump needs --out");
    }
    check(uhd_sobol_table_write(cfg.sobol_file.c_str(), rows, cfg.dim, cfg.quantization_bits,
                                cfg.out.c_str()),
          "writing sobol table");
    std::vector<uint16_t> values(static_cast<std::size_t>(rows) * cfg.dim);
    check(uhd_sobol_table_values(cfg.sobol_file.c_str(), rows, cfg.dim, cfg.quantization_bits,
                                 values.data()),
          "reading sobol table back");
    const std::uint32_t levels = 1u << cfg.quantization_bits;
    std::vector<std::uint64_t> level_counts(levels, 0);
    for (auto v : values) {
        ++level_counts[v];
    }
    std::uint64_t min_count = level_counts[0];
    std::uint64_t max_count = level_counts[0];
    for (auto c : level_counts) {
        min_count = std::min(min_count, c);
        max_count = std::max(max_count, c);
    }
    std::printf("sobol-dump status=ok out=%s rows=%u cols=%u levels=%u "
                "level_count_min=%llu level_count_max=%llu\n",
                cfg.out.c_str(), rows, cfg.dim, levels,
                static_cast<unsigned long long>(min_count),
                static_cast<unsigned long long>(max_count));
    return 0;
}

int cmd_selftest() {
    const uhd_status s = uhd_selftest();
    if (s != UHD_OK) {
        std::printf("selftest status=fail error=%s\n", uhd_last_error());
        return exit_code(s);
    }
    std::printf("selftest status=ok\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unary hyperdimensional-computing pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string dataset_flag;
    std::string test_dataset_flag;
    std::string model_path;
    std::string encoder_flag;
    std::string out_flag;
    std::string report_flag;
    std::int64_t dim_flag = -1;
    std::int64_t iters_flag = -1;
    std::int64_t seed_flag = -1;
    std::int64_t workers_flag = -1;
    std::int64_t train_limit_flag = -1;
    std::int64_t sobol_rows = 784;
    bool emit_config = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run config file");
        cmd->add_option("--dataset", dataset_flag, "train split, csv:PATH or idx:IMAGES,LABELS");
        cmd->add_option("--test-dataset", test_dataset_flag,
                        "test split, csv:PATH or idx:IMAGES,LABELS");
        cmd->add_option("--encoder", encoder_flag, "uhd or baseline");
        cmd->add_option("--dim", dim_flag, "hypervector dimension D");
        cmd->add_option("--iters", iters_flag, "iteration count for sweeps");
        cmd->add_option("--seed", seed_flag, "base seed");
        cmd->add_option("--workers", workers_flag, "worker thread count");
        cmd->add_option("--train-limit", train_limit_flag, "per-class training image limit");
        cmd->add_option("--out", out_flag, "output path (model or table)");
        cmd->add_option("--report", report_flag, "JSON report path");
        cmd->add_flag("--emit-config", emit_config, "print the resolved config and exit");
    };

    auto* train = app.add_subcommand("train", "train a model, optionally evaluate");
    add_common(train);
    auto* eval = app.add_subcommand("eval", "evaluate a saved model");
    eval->add_option("model", model_path, "model file")->required();
    add_common(eval);
    auto* compare = app.add_subcommand("compare", "baseline vs uhd accuracy table");
    add_common(compare);
    auto* sweep = app.add_subcommand("sweep", "per-iteration accuracy trace");
    add_common(sweep);
    auto* sobol_dump = app.add_subcommand("sobol-dump", "write the quantized sobol table");
    sobol_dump->add_option("--rows", sobol_rows, "feature positions H");
    add_common(sobol_dump);
    auto* selftest = app.add_subcommand("selftest", "internal consistency checks");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    RunConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::fprintf(stderr, "error: cannot open config: %s\n", config_path.c_str());
            return 2;
        }
        cfg.apply(parse_config_text(in, config_path));
    }
    if (!dataset_flag.empty()) {
        apply_dataset_flag(cfg, dataset_flag, false);
    }
    if (!test_dataset_flag.empty()) {
        apply_dataset_flag(cfg, test_dataset_flag, true);
    }
    if (!encoder_flag.empty()) {
        cfg.encoder = encoder_flag;
    }
    if (dim_flag >= 0) {
        cfg.dim = static_cast<std::uint32_t>(dim_flag);
    }
    if (iters_flag >= 0) {
        cfg.iters = static_cast<std::uint32_t>(iters_flag);
    }
    if (seed_flag >= 0) {
        cfg.seed = static_cast<std::uint64_t>(seed_flag);
    }
    if (workers_flag >= 0) {
        cfg.workers = static_cast<std::uint32_t>(workers_flag);
    }
    if (train_limit_flag >= 0) {
        cfg.train_limit = static_cast<std::uint64_t>(train_limit_flag);
    }
    if (!out_flag.empty()) {
        cfg.out = out_flag;
    }
    if (!report_flag.empty()) {
        cfg.report = report_flag;
    }

    if (emit_config) {
        std::fputs(cfg.emit().c_str(), stdout);
        return 0;
    }

    if (train->parsed()) {
        return cmd_train(cfg);
    }
    if (eval->parsed()) {
        return cmd_eval(cfg, model_path);
    }
    if (compare->parsed()) {
        return cmd_compare(cfg);
    }
    if (sweep->parsed()) {
        return cmd_sweep(cfg);
    }
    if (sobol_dump->parsed()) {
        return cmd_sobol_dump(cfg, static_cast<std::uint32_t>(sobol_rows));
    }
    if (selftest->parsed()) {
        return cmd_selftest();
    }
    return 1;
}

#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "uhd/uhd.h"

namespace {

std::string images_path() { return fixture_dir() + "/tiny-images-idx3-ubyte"; }
std::string labels_path() { return fixture_dir() + "/tiny-labels-idx1-ubyte"; }

uhd_train_params tiny_params() {
    static std::string sobol = direction_file();
    uhd_train_params p;
    uhd_train_params_init(&p);
    p.dimension = 256;
    p.sobol_file = sobol.c_str();
    return p;
}

uhd_train_params baseline_params() {
    uhd_train_params p;
    uhd_train_params_init(&p);
    p.encoder = "baseline";
    p.dimension = 256;
    return p;
}

} // namespace

TEST_CASE("c api defaults") {
    uhd_train_params p;
    uhd_train_params_init(&p);
    CHECK(std::string(p.encoder) == "uhd");
    CHECK(p.dimension == 1024);
    CHECK(p.quantization_bits == 4);
    CHECK(p.level_bits == 4);
    CHECK(p.seed == 1);
    CHECK(std::string(p.generator) == "general-prng");
    CHECK(std::string(p.comparator) == "scalar-fast");
    CHECK(p.use_level_bank == 1);
    CHECK(p.binarize_query == 1);
    CHECK(p.workers == 1);
}

TEST_CASE("c api dataset loading and errors") {
    uhd_dataset* ds = nullptr;
    REQUIRE(uhd_dataset_load_idx(images_path().c_str(), labels_path().c_str(), "tiny", &ds) ==
            UHD_OK);
    CHECK(uhd_dataset_size(ds) == 4);
    CHECK(uhd_dataset_features(ds) == 4);
    CHECK(uhd_dataset_classes(ds) == 2);

    uhd_dataset* sub = nullptr;
    REQUIRE(uhd_dataset_subsample(ds, 1, 7, &sub) == UHD_OK);
    CHECK(uhd_dataset_size(sub) == 2);
    uhd_dataset_free(sub);
    uhd_dataset_free(ds);

    uhd_dataset* bad = nullptr;
    CHECK(uhd_dataset_load_idx("missing-file", labels_path().c_str(), "x", &bad) ==
          UHD_ERR_FORMAT);
    CHECK(bad == nullptr);
    CHECK(std::strlen(uhd_last_error()) > 0);

    uhd_dataset* csv = nullptr;
    REQUIRE(uhd_dataset_load_csv((fixture_dir() + "/tiny.csv").c_str(), "tiny", &csv) == UHD_OK);
    CHECK(uhd_dataset_size(csv) == 4);
    uhd_dataset_free(csv);
}

TEST_CASE("c api train, predict, evaluate, save, load") {
    uhd_dataset* ds = nullptr;
    REQUIRE(uhd_dataset_load_idx(images_path().c_str(), labels_path().c_str(), "tiny", &ds) ==
            UHD_OK);
    auto params = baseline_params();
    uhd_model* model = nullptr;
    REQUIRE(uhd_train(ds, &params, &model) == UHD_OK);
    CHECK(uhd_model_classes(model) == 2);
    CHECK(uhd_model_features(model) == 4);
    CHECK(uhd_model_dimension(model) == 256);

    char cfg[512];
    REQUIRE(uhd_model_config_text(model, cfg, sizeof cfg) == UHD_OK);
    CHECK(std::string(cfg).find("encoder=baseline") != std::string::npos);
    CHECK(uhd_model_config_text(model, cfg, 4) == UHD_ERR_CAPACITY);

    const std::uint8_t image[4] = {0, 255, 0, 255};
    std::uint32_t label = 99;
    double scores[2];
    REQUIRE(uhd_predict(model, image, 4, &label, scores) == UHD_OK);
    CHECK(label == 0);
    CHECK(scores[0] > scores[1]);
    CHECK(uhd_predict(model, image, 3, &label, nullptr) == UHD_ERR_SHAPE);

    uhd_eval_report report;
    std::vector<std::uint64_t> confusion(4, 0);
    REQUIRE(uhd_evaluate(model, ds, &report, confusion.data()) == UHD_OK);
    CHECK(report.accuracy_percent == 100.0);
    CHECK(report.total == 4);
    CHECK(report.correct == 4);
    CHECK(report.bind_ops == 4 * 4); // one bind per pixel per image
    CHECK(confusion[0] + confusion[3] == 4);

    const char* path = "capi_model_test.bin";
    REQUIRE(uhd_model_save(model, path) == UHD_OK);
    uhd_model* loaded = nullptr;
    REQUIRE(uhd_model_load(path, nullptr, &loaded) == UHD_OK);
    std::uint32_t label2 = 99;
    REQUIRE(uhd_predict(loaded, image, 4, &label2, nullptr) == UHD_OK);
    CHECK(label2 == label);
    uhd_model_free(loaded);
    std::remove(path);

    CHECK(uhd_model_load("missing-model.bin", nullptr, &loaded) == UHD_ERR_FORMAT);

    uhd_model_free(model);
    uhd_dataset_free(ds);
}

TEST_CASE("c api parameter validation") {
    uhd_dataset* ds = nullptr;
    REQUIRE(uhd_dataset_load_idx(images_path().c_str(), labels_path().c_str(), "tiny", &ds) ==
            UHD_OK);
    auto params = tiny_params();
    params.encoder = "bogus";
    uhd_model* model = nullptr;
    CHECK(uhd_train(ds, &params, &model) == UHD_ERR_USAGE);
    CHECK(std::strlen(uhd_last_error()) > 0);

    params = tiny_params();
    params.sobol_file = nullptr; // uhd encoder needs direction numbers
    CHECK(uhd_train(ds, &params, &model) == UHD_ERR_USAGE);

    params = baseline_params();
    params.dimension = 8; // baseline needs D >= 2^n
    CHECK(uhd_train(ds, &params, &model) == UHD_ERR_DOMAIN);

    params = tiny_params(); // uhd with a direction-number file
    REQUIRE(uhd_train(ds, &params, &model) == UHD_OK);
    CHECK(uhd_model_dimension(model) == 256);
    uhd_model_free(model);
    uhd_dataset_free(ds);
}

TEST_CASE("c api sweep") {
    uhd_dataset* ds = nullptr;
    REQUIRE(uhd_dataset_load_idx(images_path().c_str(), labels_path().c_str(), "tiny", &ds) ==
            UHD_OK);
    auto params = baseline_params();
    params.dimension = 64;
    double trace[3] = {-1, -1, -1};
    REQUIRE(uhd_sweep(ds, ds, &params, 3, trace) == UHD_OK);
    for (double v : trace) {
        CHECK(v >= 0.0);
        CHECK(v <= 100.0);
    }
    uhd_dataset_free(ds);
}

TEST_CASE("c api sobol table") {
    const std::string dirs = direction_file();
    std::vector<std::uint16_t> values(2 * 4);
    REQUIRE(uhd_sobol_table_values(dirs.c_str(), 2, 4, 4, values.data()) == UHD_OK);
    // dimension 1 starts 0.5, 0.75, 0.25, 0.375 after the zero-point skip
    CHECK(values[0] == 8);
    CHECK(values[1] == 12);
    CHECK(values[2] == 4);
    CHECK(values[3] == 6);

    const char* path = "capi_sobol_test.bin";
    REQUIRE(uhd_sobol_table_write(dirs.c_str(), 4, 16, 4, path) == UHD_OK);
    std::remove(path);

    CHECK(uhd_sobol_table_values("missing-dirs.txt", 2, 4, 4, values.data()) ==
          UHD_ERR_FORMAT);
}

TEST_CASE("c api selftest") {
    CHECK(uhd_selftest() == UHD_OK);
}

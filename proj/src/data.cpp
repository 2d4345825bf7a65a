#include "uhd/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace uhd {

namespace {
std::uint32_t read_u32_be(std::ifstream& in, const std::string& path, std::size_t offset) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw_error(errc::format, path + ": truncated at byte offset " + std::to_string(offset));
    }
    return (static_cast<std::uint32_t>(b[0]) << 24) | (static_cast<std::uint32_t>(b[1]) << 16) |
           (static_cast<std::uint32_t>(b[2]) << 8) | static_cast<std::uint32_t>(b[3]);
}
} // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) {
        throw_error(errc::format, "cannot open IDX image file: " + images_path);
    }
    const std::uint32_t img_magic = read_u32_be(img, images_path, 0);
    if (img_magic != 0x00000803u) {
        throw_error(errc::format, images_path + ": bad image magic at byte offset 0");
    }
    const std::uint32_t n = read_u32_be(img, images_path, 4);
    const std::uint32_t rows = read_u32_be(img, images_path, 8);
    const std::uint32_t cols = read_u32_be(img, images_path, 12);

    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) {
        throw_error(errc::format, "cannot open IDX label file: " + labels_path);
    }
    const std::uint32_t lab_magic = read_u32_be(lab, labels_path, 0);
    if (lab_magic != 0x00000801u) {
        throw_error(errc::format, labels_path + ": bad label magic at byte offset 0");
    }
    const std::uint32_t n_labels = read_u32_be(lab, labels_path, 4);
    if (n_labels != n) {
        throw_error(errc::format, labels_path + ": label count " + std::to_string(n_labels) +
                                      " does not match image count " + std::to_string(n));
    }

    Dataset ds;
    ds.feature_count = rows * cols;
    ds.name = images_path;
    ds.pixels.resize(static_cast<std::size_t>(n) * ds.feature_count);
    if (n > 0) {
        if (!img.read(reinterpret_cast<char*>(ds.pixels.data()),
                      static_cast<std::streamsize>(ds.pixels.size()))) {
            throw_error(errc::format, images_path + ": truncated pixel payload at byte offset " +
                                          std::to_string(16 + img.gcount()));
        }
    }
    ds.labels.resize(n);
    if (n > 0) {
        if (!lab.read(reinterpret_cast<char*>(ds.labels.data()), static_cast<std::streamsize>(n))) {
            throw_error(errc::format, labels_path + ": truncated label payload at byte offset " +
                                          std::to_string(8 + lab.gcount()));
        }
    }
    std::uint32_t max_label = 0;
    for (auto l : ds.labels) {
        max_label = std::max<std::uint32_t>(max_label, l);
    }
    ds.class_count = ds.labels.empty() ? 0 : max_label + 1;
    return ds;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw_error(errc::format, "cannot open CSV file: " + path);
    }
    Dataset ds;
    ds.name = path;
    std::string line;
    std::size_t row = 0;
    std::uint32_t max_label = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        std::vector<std::uint32_t> values;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            std::uint32_t v = 0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc()) {
                throw_error(errc::format, path + ": non-numeric cell at row " + std::to_string(row));
            }
            values.push_back(v);
            p = next;
            if (p < end) {
                if (*p != ',') {
                    throw_error(errc::format, path + ": expected ',' at row " + std::to_string(row));
                }
                ++p;
            }
        }
        if (values.size() < 2) {
            throw_error(errc::format, path + ": row " + std::to_string(row) + " has no pixels");
        }
        const auto h = static_cast<std::uint32_t>(values.size() - 1);
        if (ds.feature_count == 0) {
            ds.feature_count = h;
        } else if (h != ds.feature_count) {
            throw_error(errc::format, path + ": ragged row " + std::to_string(row) + " (" +
                                          std::to_string(h) + " pixels, expected " +
                                          std::to_string(ds.feature_count) + ")");
        }
        if (values[0] > 255) {
            throw_error(errc::format, path + ": label out of range at row " + std::to_string(row));
        }
        max_label = std::max(max_label, values[0]);
        ds.labels.push_back(static_cast<std::uint8_t>(values[0]));
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] > 255) {
                throw_error(errc::format, path + ": pixel out of range at row " + std::to_string(row));
            }
            ds.pixels.push_back(static_cast<std::uint8_t>(values[i]));
        }
    }
    ds.class_count = ds.labels.empty() ? 0 : max_label + 1;
    return ds;
}

Dataset quantize_dataset(const Dataset& ds, std::uint32_t quantization_bits) {
    if (quantization_bits < 1 || quantization_bits > 8) {
        throw_error(errc::domain, "quantize_dataset: M must be in [1,8]");
    }
    Dataset out = ds;
    const std::uint32_t shift = 8 - quantization_bits;
    for (auto& p : out.pixels) {
        p = static_cast<std::uint8_t>(p >> shift);
    }
    return out;
}

Dataset subsample(const Dataset& ds, std::uint32_t per_class_limit, std::uint64_t seed) {
    if (per_class_limit < 1) {
        throw_error(errc::domain, "subsample: per_class_limit must be >= 1");
    }
    std::vector<std::vector<std::size_t>> by_class(ds.class_count);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        by_class[ds.labels[i]].push_back(i);
    }
    for (std::uint32_t c = 0; c < ds.class_count; ++c) {
        if (by_class[c].empty()) {
            throw_error(errc::domain, "subsample: class " + std::to_string(c) + " has no samples");
        }
    }
    std::vector<std::size_t> selected;
    std::mt19937_64 rng(seed);
    for (auto& idxs : by_class) {
        if (idxs.size() > per_class_limit) {
            std::shuffle(idxs.begin(), idxs.end(), rng);
            idxs.resize(per_class_limit);
            std::sort(idxs.begin(), idxs.end());
        }
        selected.insert(selected.end(), idxs.begin(), idxs.end());
    }
    std::sort(selected.begin(), selected.end());

    Dataset out;
    out.feature_count = ds.feature_count;
    out.class_count = ds.class_count;
    out.name = ds.name;
    out.pixels.reserve(selected.size() * ds.feature_count);
    out.labels.reserve(selected.size());
    for (std::size_t idx : selected) {
        const auto* img = ds.image(idx);
        out.pixels.insert(out.pixels.end(), img, img + ds.feature_count);
        out.labels.push_back(ds.labels[idx]);
    }
    return out;
}

} // namespace uhd

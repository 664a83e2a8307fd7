#include "edgeboost/model_store.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "edgeboost/errors.hpp"

namespace edgeboost {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
    out.push_back(static_cast<std::uint8_t>(bits & 0xFF));
    out.push_back(static_cast<std::uint8_t>((bits >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((bits >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((bits >> 24) & 0xFF));
}

class Reader {
public:
    Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool has(std::size_t n) const { return pos_ + n <= bytes_.size(); }

    std::uint8_t u8(const std::string& what) {
        require(1, what);
        return bytes_[pos_++];
    }

    std::uint16_t u16(const std::string& what) {
        require(2, what);
        std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_]) |
                          static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8;
        pos_ += 2;
        return v;
    }

    float f32(const std::string& what) {
        require(4, what);
        std::uint32_t bits = 0;
        for (int i = 3; i >= 0; --i) bits = (bits << 8) | bytes_[pos_ + static_cast<std::size_t>(i)];
        pos_ += 4;
        return std::bit_cast<float>(bits);
    }

private:
    void require(std::size_t n, const std::string& what) {
        if (!has(n)) {
            throw FormatError(FormatError::Kind::kTruncated,
                              "model stream truncated while reading " + what);
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize(const Ensemble& model) {
    if (model.scaler.features.size() != model.n_features) {
        throw ValueError("serialize: scaler covers " +
                         std::to_string(model.scaler.features.size()) + " columns, model has " +
                         std::to_string(model.n_features));
    }
    if (model.n_features > 0xFFFF) {
        throw FormatError(FormatError::Kind::kLimitExceeded,
                          "serialize: feature count exceeds the 16-bit format field");
    }
    if (model.trees.size() > 0xFFFF) {
        throw FormatError(FormatError::Kind::kLimitExceeded,
                          "serialize: tree count exceeds the 16-bit format field");
    }

    std::vector<std::uint8_t> out;
    out.reserve(kModelHeaderBytes + (model.n_features + 1) * 8 + model.trees.size() * 256);

    out.push_back('T');
    out.push_back('G');
    out.push_back('B');
    out.push_back('M');
    out.push_back(kModelFormatVersion);
    out.push_back(0);  // flags, reserved
    put_u16(out, static_cast<std::uint16_t>(model.n_features));
    put_u16(out, static_cast<std::uint16_t>(model.trees.size()));
    put_f32(out, static_cast<float>(model.learning_rate));
    put_f32(out, static_cast<float>(model.base_score));

    for (const MinMax& mm : model.scaler.features) {
        put_f32(out, static_cast<float>(mm.min));
        put_f32(out, static_cast<float>(mm.max));
    }
    put_f32(out, static_cast<float>(model.scaler.target.min));
    put_f32(out, static_cast<float>(model.scaler.target.max));

    for (std::size_t t = 0; t < model.trees.size(); ++t) {
        const Tree& tree = model.trees[t];
        if (tree.nodes.size() > 65534) {
            throw FormatError(FormatError::Kind::kLimitExceeded,
                              "serialize: tree " + std::to_string(t) + " has " +
                                  std::to_string(tree.nodes.size()) +
                                  " nodes, format limit is 65534");
        }
        put_u16(out, static_cast<std::uint16_t>(tree.nodes.size()));
        for (const TreeNode& node : tree.nodes) {
            if (node.is_leaf()) {
                put_u16(out, kLeafFeatureTag);
                put_f32(out, static_cast<float>(node.leaf_value));
                put_u16(out, 0);
                put_u16(out, 0);
            } else {
                put_u16(out, static_cast<std::uint16_t>(node.feature));
                put_f32(out, static_cast<float>(node.threshold));
                put_u16(out, static_cast<std::uint16_t>(node.left));
                put_u16(out, static_cast<std::uint16_t>(node.right));
            }
        }
    }

    return out;
}

Ensemble deserialize(std::span<const std::uint8_t> bytes) {
    Reader reader(bytes);

    if (!reader.has(4)) {
        throw FormatError(FormatError::Kind::kBadMagic, "model stream shorter than the magic");
    }
    char magic[4];
    for (char& c : magic) c = static_cast<char>(reader.u8("magic"));
    if (std::memcmp(magic, "TGBM", 4) != 0) {
        throw FormatError(FormatError::Kind::kBadMagic, "bad magic: not a .tgbm model file");
    }

    std::uint8_t version = reader.u8("version");
    if (version != kModelFormatVersion) {
        throw FormatError(FormatError::Kind::kBadVersion,
                          "unsupported model format version " + std::to_string(version));
    }
    std::uint8_t flags = reader.u8("flags");
    if (flags != 0) {
        throw FormatError(FormatError::Kind::kBadVersion,
                          "reserved flags byte is nonzero: " + std::to_string(flags));
    }

    Ensemble model;
    model.n_features = reader.u16("feature count");
    std::uint16_t n_trees = reader.u16("tree count");
    model.learning_rate = reader.f32("learning rate");
    model.base_score = reader.f32("base score");

    model.scaler.features.resize(model.n_features);
    for (std::size_t c = 0; c < model.n_features; ++c) {
        model.scaler.features[c].min = reader.f32("scaler block");
        model.scaler.features[c].max = reader.f32("scaler block");
    }
    model.scaler.target.min = reader.f32("scaler block");
    model.scaler.target.max = reader.f32("scaler block");

    model.trees.resize(n_trees);
    for (std::size_t t = 0; t < n_trees; ++t) {
        const std::string where = "tree " + std::to_string(t);
        std::uint16_t node_count = reader.u16(where + " node count");
        Tree& tree = model.trees[t];
        tree.nodes.resize(node_count);
        for (std::size_t i = 0; i < node_count; ++i) {
            std::uint16_t feature = reader.u16(where);
            float value = reader.f32(where);
            std::uint16_t left = reader.u16(where);
            std::uint16_t right = reader.u16(where);

            TreeNode& node = tree.nodes[i];
            if (feature == kLeafFeatureTag) {
                node.feature = kLeafMarker;
                node.leaf_value = value;
                node.left = -1;
                node.right = -1;
            } else {
                if (feature >= model.n_features) {
                    throw FormatError(FormatError::Kind::kIndexOutOfRange,
                                      where + ": feature index " + std::to_string(feature) +
                                          " out of range");
                }
                if (left >= node_count || right >= node_count || left <= i || right <= i) {
                    throw FormatError(FormatError::Kind::kIndexOutOfRange,
                                      where + ": child index out of range at node " +
                                          std::to_string(i));
                }
                node.feature = static_cast<std::int32_t>(feature);
                node.threshold = value;
                node.left = static_cast<std::int32_t>(left);
                node.right = static_cast<std::int32_t>(right);
            }
        }
    }

    return model;
}

double model_size_kb(std::span<const std::uint8_t> bytes) {
    return static_cast<double>(bytes.size()) / 1024.0;
}

void save_model(const Ensemble& model, const std::string& path) {
    std::vector<std::uint8_t> bytes = serialize(model);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing model to '" + path + "'");
}

Ensemble load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace edgeboost

#include "covrt/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace covrt {

using ordered_json = nlohmann::ordered_json;

std::string model_to_json(const Tree& tree) {
    ordered_json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["criterion"] = to_string(tree.criterion);
    doc["max_depth"] = tree.max_depth;
    doc["min_node_size"] = tree.min_node_size;
    doc["column_names"] = tree.column_names;
    ordered_json nodes = ordered_json::array();
    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
        const Node& node = tree.nodes[id];
        ordered_json entry;
        entry["id"] = id;
        entry["kind"] = node.is_leaf ? "leaf" : "internal";
        if (node.is_leaf) {
            entry["feature"] = nullptr;
            entry["threshold"] = nullptr;
            entry["left"] = nullptr;
            entry["right"] = nullptr;
        } else {
            entry["feature"] = node.feature;
            entry["threshold"] = node.threshold;
            entry["left"] = node.left;
            entry["right"] = node.right;
        }
        entry["n"] = node.n;
        entry["mean"] = node.mean;
        entry["risk"] = node.risk;
        nodes.push_back(std::move(entry));
    }
    doc["nodes"] = std::move(nodes);
    return doc.dump(2) + "\n";
}

Tree model_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model: invalid JSON: ") + e.what());
    }
    try {
        if (doc.at("format_version").get<int>() != kModelFormatVersion)
            throw DataError("model: unsupported format_version");
        Tree tree;
        tree.criterion = criterion_from_string(doc.at("criterion").get<std::string>());
        tree.max_depth = doc.at("max_depth").get<int>();
        tree.min_node_size = doc.at("min_node_size").get<int>();
        tree.column_names = doc.at("column_names").get<std::vector<std::string>>();
        const auto& nodes = doc.at("nodes");
        tree.nodes.resize(nodes.size());
        for (const auto& entry : nodes) {
            const std::size_t id = entry.at("id").get<std::size_t>();
            if (id >= tree.nodes.size()) throw DataError("model: node id out of range");
            Node& node = tree.nodes[id];
            const std::string kind = entry.at("kind").get<std::string>();
            node.is_leaf = kind == "leaf";
            if (!node.is_leaf && kind != "internal")
                throw DataError("model: unknown node kind '" + kind + "'");
            if (!node.is_leaf) {
                node.feature = entry.at("feature").get<int>();
                node.threshold = entry.at("threshold").get<double>();
                node.left = entry.at("left").get<int>();
                node.right = entry.at("right").get<int>();
            }
            node.n = entry.at("n").get<int>();
            node.mean = entry.at("mean").get<double>();
            node.risk = entry.at("risk").get<double>();
        }
        // depths are derivable; rebuild and then check structure
        if (tree.nodes.empty()) throw DataError("model: no nodes");
        std::vector<int> stack = {0};
        tree.nodes[0].depth = 0;
        while (!stack.empty()) {
            const int id = stack.back();
            stack.pop_back();
            const Node& node = tree.nodes[static_cast<std::size_t>(id)];
            if (node.is_leaf) continue;
            if (node.left < 0 || node.right < 0 ||
                node.left >= static_cast<int>(tree.nodes.size()) ||
                node.right >= static_cast<int>(tree.nodes.size()))
                throw DataError("model: child id out of range");
            tree.nodes[static_cast<std::size_t>(node.left)].depth = node.depth + 1;
            tree.nodes[static_cast<std::size_t>(node.right)].depth = node.depth + 1;
            stack.push_back(node.left);
            stack.push_back(node.right);
        }
        validate_tree(tree);
        return tree;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model: malformed document: ") + e.what());
    } catch (const std::logic_error& e) {
        throw DataError(std::string("model: ") + e.what());
    }
}

void save_model(const Tree& tree, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    file << model_to_json(tree);
}

Tree load_model(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(file)),
                     std::istreambuf_iterator<char>());
    return model_from_json(text);
}

}  // namespace covrt

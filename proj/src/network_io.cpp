#include "hoprisk/network_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hoprisk/errors.hpp"

namespace hoprisk {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ParseError(std::string("missing \"") + key + "\" key");
    }
    return obj.at(key);
}

double probability_field(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_number()) throw ParseError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

std::uint32_t index_field(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(std::string("\"") + key + "\" must be a non-negative integer");
    }
    return v.get<std::uint32_t>();
}

}  // namespace

std::string network_to_json(const NetworkModel& net) {
    json nodes = json::array();
    for (const NodeSpec& s : net.node_specs()) {
        nodes.push_back({{"id", s.id}, {"type", s.type}, {"p", s.p}});
    }
    json edges = json::array();
    for (const EdgeSpec& e : net.edge_specs()) {
        edges.push_back({{"u", e.u}, {"v", e.v}, {"q_uv", e.q_uv}, {"q_vu", e.q_vu}});
    }
    json doc;
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    return doc.dump(1) + "\n";
}

NetworkModel network_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed network JSON: ") + e.what());
    }

    const json& jnodes = require(doc, "nodes");
    if (!jnodes.is_array()) throw ParseError("\"nodes\" must be an array");
    std::vector<NodeSpec> nodes;
    nodes.reserve(jnodes.size());
    for (const json& jn : jnodes) {
        nodes.push_back({index_field(jn, "id"), index_field(jn, "type"), probability_field(jn, "p")});
    }

    std::vector<EdgeSpec> edges;
    if (doc.contains("edges")) {
        const json& jedges = doc.at("edges");
        if (!jedges.is_array()) throw ParseError("\"edges\" must be an array");
        for (const json& je : jedges) {
            edges.push_back({index_field(je, "u"), index_field(je, "v"),
                             probability_field(je, "q_uv"), probability_field(je, "q_vu")});
        }
    }
    return build_network(nodes, edges);
}

NetworkModel load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return network_from_json(buf.str());
}

void save_json(const NetworkModel& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << network_to_json(net);
}

}  // namespace hoprisk

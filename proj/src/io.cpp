#include "patmix/io.hpp"

#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace patmix {

using json = nlohmann::ordered_json;

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double quantize12(double x) { return std::strtod(format12(x).c_str(), nullptr); }

namespace {

json q(double x) { return json(quantize12(x)); }

json qvec(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(q(x));
    return arr;
}

std::vector<double> dvec(const json& arr) {
    std::vector<double> out;
    for (const auto& x : arr) out.push_back(x.get<double>());
    return out;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("unparsable JSON input");
    return j;
}

}  // namespace

std::string rgraph_to_json(const RGraph& g) {
    json j;
    j["r"] = g.r;
    j["n"] = g.n;
    j["edges"] = g.edges;
    return j.dump();
}

RGraph rgraph_from_json(const std::string& text) {
    json j = parse(text);
    return make_rgraph(j.at("r").get<int>(), j.at("n").get<int>(),
                       j.at("edges").get<std::vector<Edge>>());
}

std::string pattern_to_json(const Pattern& p) {
    json j;
    j["r"] = p.r;
    j["m"] = p.m;
    j["E"] = p.multisets;
    json rec = json::array();
    for (int i : p.recursive) rec.push_back(i + 1);
    j["R"] = rec;
    return j.dump();
}

Pattern pattern_from_json(const std::string& text) {
    json j = parse(text);
    std::vector<int> rec;
    for (const auto& v : j.at("R")) rec.push_back(v.get<int>() - 1);
    return make_pattern(j.at("r").get<int>(), j.at("m").get<int>(),
                        j.at("E").get<std::vector<std::vector<int>>>(), std::move(rec));
}

namespace {

json recipe_to_json_node(const RecipeTree& node) {
    json j;
    if (node.self_similar) {
        j["self_similar"] = true;
        return j;
    }
    j["base"] = node.base;
    if (node.base == "empty") return j;
    j["mode"] = node.ratio_mode ? "ratios" : "sizes";
    if (node.ratio_mode)
        j["parts"] = qvec(node.ratios);
    else
        j["parts"] = node.sizes;
    if (!node.children.empty()) {
        json kids = json::object();
        for (const auto& [idx, child] : node.children)
            kids[std::to_string(idx + 1)] = recipe_to_json_node(child);
        j["children"] = kids;
    }
    return j;
}

RecipeTree recipe_from_json_node(const json& j) {
    RecipeTree node;
    if (j.value("self_similar", false)) {
        node.self_similar = true;
        return node;
    }
    node.base = j.at("base").get<std::string>();
    if (node.base == "empty") return node;
    std::string mode = j.value("mode", "sizes");
    if (mode == "ratios") {
        node.ratio_mode = true;
        node.ratios = dvec(j.at("parts"));
    } else if (mode == "sizes") {
        node.sizes = j.at("parts").get<std::vector<long long>>();
    } else {
        throw std::invalid_argument("recipe mode must be sizes or ratios");
    }
    if (j.contains("children")) {
        for (const auto& [key, value] : j.at("children").items()) {
            int idx = std::atoi(key.c_str()) - 1;
            if (idx < 0) throw std::invalid_argument("bad child key: " + key);
            node.children[idx] = recipe_from_json_node(value);
        }
    }
    return node;
}

}  // namespace

std::string recipe_to_json(const RecipeTree& recipe) {
    return recipe_to_json_node(recipe).dump();
}

RecipeTree recipe_from_json(const std::string& text) {
    return recipe_from_json_node(parse(text));
}

std::string report_to_json(const OptimalVectorReport& rep) {
    json j;
    j["pattern"] = rep.pattern_id;
    j["lambda"] = q(rep.lambda);
    j["vector"] = qvec(rep.vector);
    j["kkt_residual"] = q(rep.kkt_residual);
    j["min_coordinate"] = q(rep.min_coordinate);
    j["converged"] = rep.converged;
    j["degenerate"] = rep.degenerate;
    j["seed"] = rep.seed;
    return j.dump();
}

OptimalVectorReport report_from_json(const std::string& text) {
    json j = parse(text);
    OptimalVectorReport rep;
    rep.pattern_id = j.at("pattern").get<std::string>();
    rep.lambda = j.at("lambda").get<double>();
    rep.vector = dvec(j.at("vector"));
    rep.kkt_residual = j.at("kkt_residual").get<double>();
    rep.min_coordinate = j.at("min_coordinate").get<double>();
    rep.converged = j.at("converged").get<bool>();
    rep.degenerate = j.at("degenerate").get<bool>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    return rep;
}

std::string maps_to_json(const std::vector<AffineMap>& maps) {
    json arr = json::array();
    for (const AffineMap& m : maps) {
        json j;
        j["c"] = q(m.c);
        j["rho"] = q(m.rho);
        arr.push_back(j);
    }
    return arr.dump();
}

std::vector<AffineMap> maps_from_json(const std::string& text) {
    json arr = parse(text);
    std::vector<AffineMap> out;
    for (const auto& j : arr)
        out.push_back(AffineMap{j.at("c").get<double>(), j.at("rho").get<double>()});
    return out;
}

std::string points_to_json(const std::vector<double>& points) {
    return qvec(points).dump();
}

std::vector<double> points_from_json(const std::string& text) {
    return dvec(parse(text));
}

std::string points_to_csv(const std::vector<double>& points) {
    std::string out;
    for (double x : points) {
        out += format12(x);
        out += '\n';
    }
    return out;
}

std::string fingerprint_to_json(const Fingerprint& f) {
    json j;
    j["t"] = f.t;
    json entries = json::array();
    for (const auto& e : f.entries) {
        json je;
        je["q"] = e.q;
        json qset = json::array();
        for (int v : e.chosen) qset.push_back(v + 1);
        je["Q"] = qset;
        je["t1"] = e.t1;
        je["t2"] = e.t2;
        je["t3"] = e.t3;
        je["p_coeffs"] = std::vector<long long>(e.p_coeffs.begin(), e.p_coeffs.end());
        entries.push_back(je);
    }
    j["entries"] = entries;
    return j.dump();
}

Fingerprint fingerprint_from_json(const std::string& text) {
    json j = parse(text);
    Fingerprint f;
    f.t = j.at("t").get<int>();
    for (const auto& je : j.at("entries")) {
        FingerprintEntry e;
        e.q = je.at("q").get<int>();
        for (const auto& v : je.at("Q")) e.chosen.push_back(v.get<int>() - 1);
        e.t1 = je.at("t1").get<long long>();
        e.t2 = je.at("t2").get<long long>();
        e.t3 = je.at("t3").get<long long>();
        auto pc = je.at("p_coeffs").get<std::vector<long long>>();
        if (pc.size() != 4) throw std::invalid_argument("p_coeffs needs four entries");
        std::copy(pc.begin(), pc.end(), e.p_coeffs.begin());
        f.entries.push_back(std::move(e));
    }
    return f;
}

}  // namespace patmix

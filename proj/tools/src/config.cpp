#include "ucf/cli/config.hpp"

#include <fstream>

#include "ucf/simulator.hpp"

namespace ucf::cli {
namespace {

using nlohmann::json;

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("a centre must be a pair [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be an object");
    for (const char* key : {"n", "a"})
        if (!doc.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    RunConfig c;
    c.n = get_or<int>(doc, "n", 0);
    c.a = get_or<double>(doc, "a", 0.0);

    const json initial = doc.value("initial", json::object());
    if (initial.contains("centers")) {
        std::vector<Point2> pts;
        for (const auto& p : initial.at("centers")) pts.push_back(point_from(p));
        c.centers = std::move(pts);
    } else {
        c.initial_seed = get_or<std::uint64_t>(initial, "seed", 0);
        c.box = get_or<double>(initial, "box", 0.0);
    }
    if (initial.contains("handedness")) c.handedness = get_or<std::vector<int>>(initial, "handedness", {});

    const json policy = doc.value("policy", json::object());
    try {
        c.policy.kind = policy_kind_from_string(get_or<std::string>(policy, "kind", "All"));
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    c.policy.seed = get_or<std::uint64_t>(policy, "seed", 0);
    c.policy.script = get_or<std::vector<std::vector<std::size_t>>>(policy, "script", {});

    if (doc.contains("max_rounds")) {
        const auto& m = doc.at("max_rounds");
        if (!m.is_number_integer() || m.get<long long>() < 1) throw ConfigError("max_rounds must be an integer >= 1");
        c.max_rounds = m.get<std::size_t>();
    }
    c.master_seed = get_or<std::uint64_t>(doc, "master_seed", 0);

    const json tol = doc.value("tolerances", json::object());
    c.eps_geom = get_or<double>(tol, "eps_geom", kEpsGeom);
    c.eps_snap = get_or<double>(tol, "eps_snap", kEpsSnap);
    c.collision_samples = get_or<int>(tol, "collision_samples", 1000);
    c.progress_window = get_or<int>(doc, "progress_window", 0);

    const json out = doc.value("outputs", json::object());
    c.trace_path = get_or<std::string>(out, "trace", "");
    c.report_path = get_or<std::string>(out, "report", "");
    c.svg_dir = get_or<std::string>(out, "svg_dir", "");
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["a"] = c.a;
    nlohmann::ordered_json initial = nlohmann::ordered_json::object();
    if (c.centers) {
        initial["centers"] = nlohmann::ordered_json::array();
        for (Point2 p : *c.centers) initial["centers"].push_back({p.x, p.y});
    } else {
        initial["seed"] = c.initial_seed;
        initial["box"] = c.box;
    }
    if (c.handedness) initial["handedness"] = *c.handedness;
    j["initial"] = initial;
    j["policy"] = {{"kind", to_string(c.policy.kind)}, {"seed", c.policy.seed}};
    if (!c.policy.script.empty()) j["policy"]["script"] = c.policy.script;
    if (c.max_rounds) j["max_rounds"] = *c.max_rounds;
    j["master_seed"] = c.master_seed;
    j["tolerances"] = {{"eps_geom", c.eps_geom}, {"eps_snap", c.eps_snap}, {"collision_samples", c.collision_samples}};
    if (c.progress_window > 0) j["progress_window"] = c.progress_window;
    return j;
}

void validate(const RunConfig& c) {
    if (c.n < 3) throw ConfigError("n must be at least 3, got " + std::to_string(c.n));
    if (!(c.a >= 3.0)) throw ConfigError("a must be at least 3, got " + std::to_string(c.a));
    if (c.max_rounds && *c.max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
    if (c.eps_geom != kEpsGeom || c.eps_snap != kEpsSnap)
        throw ConfigError("eps_geom and eps_snap are fixed at 1e-9 and 1e-6");
    if (c.collision_samples < 100) throw ConfigError("collision_samples must be at least 100");
    if (c.progress_window != 0 && c.progress_window < c.n) throw ConfigError("progress_window must be at least n");
    if (c.centers) {
        if (static_cast<int>(c.centers->size()) != c.n)
            throw ConfigError("expected " + std::to_string(c.n) + " centers, got " + std::to_string(c.centers->size()));
        try {
            validate_configuration(*c.centers);
        } catch (const InvalidConfiguration& e) {
            throw ConfigError(e.what());
        }
    } else if (!(c.box > 0.0)) {
        throw ConfigError("random placement needs initial.box > 0");
    }
    if (c.handedness) {
        if (static_cast<int>(c.handedness->size()) != c.n) throw ConfigError("handedness needs one entry per robot");
        for (int h : *c.handedness)
            if (h != 1 && h != -1) throw ConfigError("handedness entries must be 1 or -1");
    }
    if (c.policy.kind == PolicyKind::Scripted) {
        if (c.policy.script.empty()) throw ConfigError("Scripted policy needs a non-empty script");
        for (const auto& set : c.policy.script) {
            if (set.empty()) throw ConfigError("Scripted policy contains an empty activation set");
            for (std::size_t id : set)
                if (id >= static_cast<std::size_t>(c.n)) throw ConfigError("script activates unknown robot " + std::to_string(id));
        }
    }
}

WorldState make_initial(const RunConfig& c) {
    WorldState w;
    try {
        if (c.centers) w = make_world(make_formation_spec(c.n, c.a), *c.centers, c.master_seed);
        else w = random_initial(c.n, c.a, c.initial_seed, c.box);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (c.handedness) w.handedness = *c.handedness;
    return w;
}

}  // namespace ucf::cli

#include "cubeavg/config.hpp"

#include <fstream>
#include <random>
#include <set>

namespace cubeavg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config error at '" + path + "': " + msg);
}

const json& member(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing required field");
    return *it;
}

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) fail(path + "." + key, "unknown key");
    }
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

std::vector<double> as_number_list(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

SystemDescriptor parse_system(const json& j, const std::string& path) {
    const std::string kind = member(j, path, "kind").is_string()
                                 ? j["kind"].get<std::string>()
                                 : (fail(path + ".kind", "expected a string"), "");
    try {
        if (kind == "rotation") {
            reject_unknown(j, path, {"kind", "alpha", "assume_irrational"});
            bool irr = j.contains("assume_irrational")
                           ? as_bool(j["assume_irrational"], path + ".assume_irrational")
                           : true;
            return SystemDescriptor::rotation(as_number_list(member(j, path, "alpha"),
                                                             path + ".alpha"),
                                              irr);
        }
        if (kind == "skew_product") {
            reject_unknown(j, path, {"kind", "alpha", "assume_irrational"});
            bool irr = j.contains("assume_irrational")
                           ? as_bool(j["assume_irrational"], path + ".assume_irrational")
                           : true;
            return SystemDescriptor::skew_product(as_number(member(j, path, "alpha"),
                                                            path + ".alpha"),
                                                  irr);
        }
        if (kind == "doubling") {
            reject_unknown(j, path, {"kind", "seed", "precision"});
            auto seed = static_cast<std::uint64_t>(as_integer(member(j, path, "seed"),
                                                              path + ".seed"));
            int precision = j.contains("precision")
                                ? static_cast<int>(as_integer(j["precision"], path + ".precision"))
                                : 48;
            return SystemDescriptor::doubling(seed, precision);
        }
        if (kind == "heisenberg") {
            reject_unknown(j, path, {"kind", "alpha", "beta", "gamma", "assume_irrational"});
            bool irr = j.contains("assume_irrational")
                           ? as_bool(j["assume_irrational"], path + ".assume_irrational")
                           : true;
            double gamma = j.contains("gamma") ? as_number(j["gamma"], path + ".gamma") : 0.0;
            return SystemDescriptor::heisenberg(as_number(member(j, path, "alpha"), path + ".alpha"),
                                                as_number(member(j, path, "beta"), path + ".beta"),
                                                gamma, irr);
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown system kind '" + kind + "'");
}

std::vector<TrigTerm> parse_terms(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of terms");
    std::vector<TrigTerm> terms;
    terms.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string tpath = path + "[" + std::to_string(i) + "]";
        const json& t = j[i];
        reject_unknown(t, tpath, {"freq", "re", "im"});
        const json& freq = member(t, tpath, "freq");
        if (!freq.is_array() || freq.empty()) fail(tpath + ".freq", "expected nonempty int array");
        TrigTerm term;
        for (std::size_t k = 0; k < freq.size(); ++k)
            term.freq.push_back(static_cast<int>(
                as_integer(freq[k], tpath + ".freq[" + std::to_string(k) + "]")));
        double re = t.contains("re") ? as_number(t["re"], tpath + ".re") : 0.0;
        double im = t.contains("im") ? as_number(t["im"], tpath + ".im") : 0.0;
        term.coeff = {re, im};
        terms.push_back(std::move(term));
    }
    return terms;
}

Observable parse_observable(const json& j, const std::string& path) {
    const json& type_j = member(j, path, "type");
    if (!type_j.is_string()) fail(path + ".type", "expected a string");
    const std::string type = type_j.get<std::string>();
    try {
        if (type == "constant") {
            reject_unknown(j, path, {"type", "re", "im"});
            double re = j.contains("re") ? as_number(j["re"], path + ".re") : 0.0;
            double im = j.contains("im") ? as_number(j["im"], path + ".im") : 0.0;
            return Observable::constant({re, im});
        }
        if (type == "trig") {
            reject_unknown(j, path, {"type", "dim", "terms"});
            int dim = static_cast<int>(as_integer(member(j, path, "dim"), path + ".dim"));
            return Observable(TrigPolynomial(dim, parse_terms(member(j, path, "terms"),
                                                              path + ".terms")));
        }
        if (type == "theta") {
            reject_unknown(j, path, {"type", "M"});
            int M = j.contains("M") ? static_cast<int>(as_integer(j["M"], path + ".M")) : 8;
            return Observable(ThetaObservable(M));
        }
        if (type == "torus_on_heisenberg") {
            reject_unknown(j, path, {"type", "terms"});
            return Observable(TorusOnHeisenberg{
                TrigPolynomial(2, parse_terms(member(j, path, "terms"), path + ".terms"))});
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".type", "unknown observable type '" + type + "'");
}

std::string vertex_key(unsigned bits, int ell) {
    return vertex_label(VertexIndex::make(ell, bits));
}

CubeSpec parse_cube(const json& j, const std::string& path) {
    reject_unknown(j, path, {"order", "vertices"});
    int ell = static_cast<int>(as_integer(member(j, path, "order"), path + ".order"));
    if (ell < 2 || ell > 4) fail(path + ".order", "order must lie in [2, 4]");
    const json& verts = member(j, path, "vertices");
    if (!verts.is_object()) fail(path + ".vertices", "expected an object keyed by vertex bits");

    const unsigned vertex_count = (1u << ell) - 1;
    std::set<std::string> allowed;
    for (unsigned v = 1; v <= vertex_count; ++v) allowed.insert(vertex_key(v, ell));
    reject_unknown(verts, path + ".vertices", allowed);

    std::vector<Observable> observables;
    observables.reserve(vertex_count);
    for (unsigned v = 1; v <= vertex_count; ++v) {
        std::string key = vertex_key(v, ell);
        auto it = verts.find(key);
        if (it == verts.end())
            fail(path + ".vertices", "missing vertex '" + key + "'");
        observables.push_back(parse_observable(*it, path + ".vertices." + key));
    }
    try {
        return CubeSpec(ell, std::move(observables));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

WeightSpec parse_weight(const json& j, const std::string& path) {
    const json& type_j = member(j, path, "type");
    if (!type_j.is_string()) fail(path + ".type", "expected a string");
    const std::string type = type_j.get<std::string>();
    if (type == "polynomial_phase") {
        reject_unknown(j, path, {"type", "coeffs"});
        auto coeffs = as_number_list(member(j, path, "coeffs"), path + ".coeffs");
        if (coeffs.size() > 3) fail(path + ".coeffs", "at most 3 coefficients (c0, c1, c2)");
        coeffs.resize(3, 0.0);
        return PolynomialPhase{coeffs[0], coeffs[1], coeffs[2]};
    }
    if (type == "heisenberg_nilseq") {
        reject_unknown(j, path, {"type", "y0", "g0"});
        auto y0 = as_number_list(member(j, path, "y0"), path + ".y0");
        if (y0.size() != 3) fail(path + ".y0", "expected [x, y, z]");
        Observable g0 = parse_observable(member(j, path, "g0"), path + ".g0");
        if (g0.kind() != Observable::Kind::Theta && g0.kind() != Observable::Kind::TorusOnNil)
            fail(path + ".g0", "nilsequence observable must be theta or torus_on_heisenberg");
        return HeisenbergNilseq{NilElement{y0[0], y0[1], y0[2]}, std::move(g0)};
    }
    fail(path + ".type", "unknown weight type '" + type + "'");
}

PhasePoint point_from_coords(const SystemDescriptor& system, const std::vector<double>& coords,
                             const std::string& path) {
    const int dim = system.phase_dim();
    if (static_cast<int>(coords.size()) != dim)
        fail(path, "point has " + std::to_string(coords.size()) + " coordinates, system needs " +
                       std::to_string(dim));
    for (double c : coords)
        if (!(c >= 0.0 && c < 1.0)) fail(path, "coordinates must lie in [0, 1)");
    if (system.kind == SystemKind::Heisenberg)
        return NilPoint{coords[0], coords[1], coords[2]};
    return TorusPoint{coords};
}

std::vector<std::size_t> parse_schedule(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() < 1) fail(path, "expected a nonempty array of integers");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::int64_t v = as_integer(j[i], path + "[" + std::to_string(i) + "]");
        if (v < 1) fail(path + "[" + std::to_string(i) + "]", "entries must be >= 1");
        if (!out.empty() && static_cast<std::size_t>(v) <= out.back())
            fail(path, "entries must be strictly increasing");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

const std::set<std::string> kToleranceNames = {"convergence", "kernel",       "oracle",
                                               "ww",          "uniform_slack", "lipschitz",
                                               "estimate"};

}  // namespace

Command command_from_name(const std::string& name) {
    if (name == "cubic") return Command::Cubic;
    if (name == "dual") return Command::Dual;
    if (name == "ww") return Command::Ww;
    if (name == "verify") return Command::Verify;
    if (name == "uniform") return Command::Uniform;
    if (name == "continuity") return Command::Continuity;
    throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Cubic: return "cubic";
        case Command::Dual: return "dual";
        case Command::Ww: return "ww";
        case Command::Verify: return "verify";
        case Command::Uniform: return "uniform";
        case Command::Continuity: return "continuity";
    }
    return "?";
}

std::vector<PhasePoint> generate_grid(const SystemDescriptor& system, const GridSpec& grid) {
    const int dim = system.phase_dim();
    const int n = grid.per_dim;
    std::mt19937_64 rng(grid.jitter_seed.value_or(0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool jitter = grid.jitter_seed.has_value();

    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(n);
    std::vector<PhasePoint> points;
    points.reserve(total);
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    for (std::size_t p = 0; p < total; ++p) {
        std::vector<double> coords(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            double off = jitter ? unit(rng) : 0.0;
            coords[static_cast<std::size_t>(i)] =
                (static_cast<double>(idx[static_cast<std::size_t>(i)]) + off) /
                static_cast<double>(n);
        }
        if (system.kind == SystemKind::Heisenberg)
            points.emplace_back(NilPoint{coords[0], coords[1], coords[2]});
        else
            points.emplace_back(TorusPoint{coords});
        for (int i = dim - 1; i >= 0; --i) {
            if (++idx[static_cast<std::size_t>(i)] < n) break;
            idx[static_cast<std::size_t>(i)] = 0;
        }
    }
    return points;
}

RunConfig parse_config(Command command, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config error at '$': expected a JSON object");

    std::set<std::string> allowed = {"system", "points", "schedule", "tolerances", "output"};
    switch (command) {
        case Command::Cubic:
        case Command::Dual:
            allowed.insert("cube");
            break;
        case Command::Ww:
            allowed.insert("f0");
            allowed.insert("weight");
            break;
        case Command::Verify:
            allowed.insert("cube");
            allowed.insert("f0");
            allowed.insert("weight");
            break;
        case Command::Uniform:
            allowed.insert("cube");
            allowed.insert("pairs");
            break;
        case Command::Continuity:
            allowed.insert("cube");
            allowed.insert("f0");
            allowed.insert("weight");
            break;
    }
    reject_unknown(j, "$", allowed);

    RunConfig cfg;
    cfg.command = command;
    cfg.system = parse_system(member(j, "$", "system"), "$.system");

    if (j.contains("cube")) cfg.cube = parse_cube(j["cube"], "$.cube");
    if (j.contains("f0")) cfg.f0 = parse_observable(j["f0"], "$.f0");
    if (j.contains("weight")) cfg.weight = parse_weight(j["weight"], "$.weight");

    switch (command) {
        case Command::Cubic:
        case Command::Dual:
        case Command::Uniform:
            if (!cfg.cube) fail("$.cube", "missing required field");
            break;
        case Command::Ww:
            if (!cfg.f0) fail("$.f0", "missing required field");
            if (!cfg.weight) fail("$.weight", "missing required field");
            break;
        case Command::Verify:
            if (!cfg.cube && !(cfg.f0 && cfg.weight))
                fail("$", "verify needs a cube and/or an (f0, weight) pair");
            if (cfg.f0.has_value() != cfg.weight.has_value())
                fail("$", "f0 and weight must be given together");
            break;
        case Command::Continuity:
            if (!cfg.cube && !(cfg.f0 && cfg.weight))
                fail("$", "continuity needs a cube or an (f0, weight) pair");
            if (cfg.cube && cfg.f0) fail("$", "give either a cube or an (f0, weight) pair");
            if (cfg.f0.has_value() != cfg.weight.has_value())
                fail("$", "f0 and weight must be given together");
            break;
    }

    if (cfg.cube) {
        for (std::size_t v = 0; v < cfg.cube->vertices.size(); ++v) {
            if (!valid_for(cfg.cube->vertices[v], cfg.system))
                fail("$.cube.vertices." + vertex_key(static_cast<unsigned>(v + 1), cfg.cube->ell),
                     "observable does not match the system's phase space");
        }
    }
    if (cfg.f0 && !valid_for(*cfg.f0, cfg.system))
        fail("$.f0", "observable does not match the system's phase space");

    // points
    const json& pts = member(j, "$", "points");
    reject_unknown(pts, "$.points", {"grid", "explicit"});
    if (pts.contains("grid") == pts.contains("explicit"))
        fail("$.points", "give exactly one of 'grid' or 'explicit'");
    if (pts.contains("grid")) {
        const json& g = pts["grid"];
        reject_unknown(g, "$.points.grid", {"per_dim", "jitter_seed"});
        GridSpec grid;
        grid.per_dim = static_cast<int>(as_integer(member(g, "$.points.grid", "per_dim"),
                                                   "$.points.grid.per_dim"));
        if (grid.per_dim < 2 || grid.per_dim > 128)
            fail("$.points.grid.per_dim", "per_dim must lie in [2, 128]");
        if (g.contains("jitter_seed"))
            grid.jitter_seed = static_cast<std::uint64_t>(
                as_integer(g["jitter_seed"], "$.points.grid.jitter_seed"));
        cfg.grid = grid;
        cfg.points = generate_grid(cfg.system, grid);
    } else {
        const json& list = pts["explicit"];
        if (!list.is_array() || list.empty())
            fail("$.points.explicit", "expected a nonempty array of points");
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::string path = "$.points.explicit[" + std::to_string(i) + "]";
            cfg.points.push_back(
                point_from_coords(cfg.system, as_number_list(list[i], path), path));
        }
    }

    // schedule
    if (j.contains("schedule")) {
        cfg.schedule = parse_schedule(j["schedule"], "$.schedule");
    } else {
        for (int k = 5; k <= 12; ++k) cfg.schedule.push_back(std::size_t{1} << k);
    }

    // uniform pairs
    if (command == Command::Uniform) {
        if (j.contains("pairs"))
            cfg.pairs = parse_schedule(j["pairs"], "$.pairs");
        else
            cfg.pairs = {32, 64, 128};
    }

    // tolerances
    cfg.tolerances = {{"convergence", 1e-3}, {"kernel", 1e-9}, {"oracle", 1e-9},
                      {"ww", 1e-10},         {"uniform_slack", 0.0}};
    if (j.contains("tolerances")) {
        const json& tols = j["tolerances"];
        reject_unknown(tols, "$.tolerances", kToleranceNames);
        for (const auto& [key, val] : tols.items()) {
            double v = as_number(val, "$.tolerances." + key);
            if (v < 0.0) fail("$.tolerances." + key, "tolerance must be >= 0");
            cfg.tolerances[key] = v;
        }
    }

    if (j.contains("output")) {
        if (!j["output"].is_string()) fail("$.output", "expected a string");
        cfg.output_prefix = j["output"].get<std::string>();
    }

    cfg.echo = j;
    return cfg;
}

RunConfig parse_config_file(Command command, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(command, j);
}

}  // namespace cubeavg

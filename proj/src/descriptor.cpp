#include "confsys/descriptor.hpp"

#include <fstream>

namespace confsys {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
    throw ConfigError("descriptor error at " + pointer + ": " + what);
}

long long get_int(const json& j, const char* key, const std::string& ptr) {
    if (!j.contains(key) || !j[key].is_number_integer()) fail(ptr + "/" + key, "expected an integer");
    return j[key].get<long long>();
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

std::shared_ptr<const Group> parse_group(const json& j) {
    if (j.is_string()) return std::make_shared<Group>(named_group(j.get<std::string>()));
    if (!j.is_object()) fail("/group", "expected an object or a name string");
    std::string type = j.value("type", "");
    if (type == "abelian") {
        if (!j.contains("moduli") || !j["moduli"].is_array()) fail("/group/moduli", "expected an array");
        std::vector<long long> mods;
        for (const auto& m : j["moduli"]) {
            if (!m.is_number_integer()) fail("/group/moduli", "moduli must be integers");
            mods.push_back(m.get<long long>());
        }
        return std::make_shared<Group>(make_abelian_group(mods));
    }
    if (type == "cayley") {
        if (!j.contains("table") || !j["table"].is_array()) fail("/group/table", "expected an array of rows");
        std::vector<std::vector<int>> table;
        for (const auto& row : j["table"]) {
            std::vector<int> r;
            for (const auto& v : row) r.push_back(v.get<int>());
            table.push_back(std::move(r));
        }
        bool force = j.value("force_assoc_check", false);
        return std::make_shared<Group>(make_cayley_group(table, force));
    }
    if (type == "named") {
        if (!j.contains("name")) fail("/group/name", "missing");
        return std::make_shared<Group>(named_group(j["name"].get<std::string>()));
    }
    fail("/group/type", "expected \"abelian\", \"cayley\" or \"named\"");
}

int parse_element(const json& j, const Ambient& ambient) {
    if (j.is_number_integer()) {
        long long v = j.get<long long>();
        if (v < 0 || v >= ambient.size) fail("/element", "index out of range");
        return static_cast<int>(v);
    }
    if (j.is_array()) {
        std::vector<long long> coords;
        for (const auto& v : j) coords.push_back(v.get<long long>());
        if (ambient.kind == Ambient::Kind::Group && ambient.group->abelian()) {
            return ambient.group->encode(coords);
        }
        if (ambient.kind == Ambient::Kind::Box) return ambient.box_index(coords);
        fail("/element", "tuple elements need an abelian or box ambient");
    }
    fail("/element", "expected an index or a residue tuple");
}

Subgroup parse_subgroup(const json& j, const std::shared_ptr<const Group>& g) {
    Ambient amb = Ambient::of_group(*g);
    if (j.contains("members")) {
        Subgroup s;
        s.parent = g.get();
        for (const auto& v : j["members"]) s.members.push_back(parse_element(v, amb));
        std::sort(s.members.begin(), s.members.end());
        s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
        if (!is_subgroup_of(*g, s.members)) fail("/subgroup", "member list is not closed");
        return s;
    }
    if (j.contains("generators")) {
        std::vector<int> gens;
        for (const auto& v : j["generators"]) gens.push_back(parse_element(v, amb));
        return subgroup_generated(*g, gens);
    }
    fail("/subgroup", "expected \"members\" or \"generators\"");
}

namespace {

BlockHom parse_hom(const json& j, const std::string& ptr) {
    if (!j.contains("matrix") || !j["matrix"].is_array()) fail(ptr + "/matrix", "expected rows");
    std::vector<std::vector<long long>> rows;
    for (const auto& row : j["matrix"]) {
        std::vector<long long> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) fail(ptr + "/matrix", "entries must be integers");
            r.push_back(v.get<long long>());
        }
        rows.push_back(std::move(r));
    }
    IntegerMatrix m = IntegerMatrix::from_rows(rows);
    int dim = j.value("dim", 1);
    if (dim < 1 || m.rows() % dim != 0 || m.cols() % dim != 0)
        fail(ptr + "/dim", "matrix shape is not a multiple of dim");
    return BlockHom::from_matrix(m, m.cols() / dim, m.rows() / dim, dim);
}

} // namespace

FamilyInstance build_family(const std::string& name, const json& params, const Budget& budget,
                            std::uint64_t seed) {
    if (name == "ap_system") {
        return ap_system(get_int(params, "q", "/params"), static_cast<int>(get_int(params, "r", "/params")),
                         budget);
    }
    if (name == "rectangles" || name == "generalized_rectangles" || name == "slanted_squares") {
        // shorthand for the coordinate case over Z_n^2: {"n": N}
        if (!params.contains("group") && params.contains("n") && name != "slanted_squares") {
            long long n = get_int(params, "n", "/params");
            auto g = std::make_shared<Group>(make_abelian_group({n, n}));
            auto h = subgroup_generated(*g, {g->encode({1, 0})});
            auto k = subgroup_generated(*g, {g->encode({0, 1})});
            if (name == "rectangles") return rectangles(g, h.members, k.members, budget);
            return generalized_rectangles(g, h.members, k.members,
                                          static_cast<int>(get_int(params, "r", "/params")), budget);
        }
        if (!params.contains("group")) fail("/params/group", "missing");
        auto g = parse_group(params["group"]);
        if (!params.contains("H")) fail("/params/H", "missing");
        Subgroup h = parse_subgroup(params["H"], g);
        if (name == "slanted_squares") {
            if (!params.contains("phi")) fail("/params/phi", "missing");
            std::vector<std::vector<long long>> phi;
            for (const auto& row : params["phi"]) {
                std::vector<long long> r;
                for (const auto& v : row) r.push_back(v.get<long long>());
                phi.push_back(std::move(r));
            }
            return slanted_squares(g, h.members, phi, budget);
        }
        if (!params.contains("K")) fail("/params/K", "missing");
        Subgroup k = parse_subgroup(params["K"], g);
        if (name == "rectangles") return rectangles(g, h.members, k.members, budget);
        return generalized_rectangles(g, h.members, k.members,
                                      static_cast<int>(get_int(params, "r", "/params")), budget);
    }
    if (name == "simplices_box") {
        return simplices_box(static_cast<int>(get_int(params, "n", "/params")),
                             static_cast<int>(get_int(params, "m", "/params")),
                             params.value("sign_restricted", false), budget);
    }
    if (name == "box_linear_system") {
        BlockHom a = parse_hom(params, "/params");
        return box_linear_system(a, static_cast<int>(get_int(params, "n", "/params")), budget);
    }
    if (name == "nonabelian_equation") {
        if (!params.contains("group")) fail("/params/group", "missing");
        auto g = parse_group(params["group"]);
        std::vector<long long> r;
        if (!params.contains("r") || !params["r"].is_array()) fail("/params/r", "expected an array");
        for (const auto& v : params["r"]) r.push_back(v.get<long long>());
        return nonabelian_equation(g, r, budget);
    }
    if (name == "appendix_gap_example") {
        double c = params.value("c", 4.5);
        return appendix_gap_example(get_int(params, "q", "/params"), c, seed, budget);
    }
    throw ConfigError("unknown family: " + name);
}

FamilyInstance parse_system(const json& j, const Budget& budget, std::uint64_t seed) {
    if (!j.is_object()) throw ConfigError("descriptor error at /: expected an object");
    if (!j.contains("source")) fail("/source", "missing");
    const json& src = j["source"];
    if (src.contains("family")) {
        return build_family(src["family"].get<std::string>(), src.value("params", json::object()), budget,
                            seed);
    }
    if (!j.contains("ambient")) fail("/ambient", "missing");
    Ambient amb;
    std::shared_ptr<const Group> g;
    if (j["ambient"].is_object() && j["ambient"].contains("box")) {
        const json& b = j["ambient"]["box"];
        amb = Ambient::box(static_cast<int>(get_int(b, "n", "/ambient/box")),
                           static_cast<int>(get_int(b, "m", "/ambient/box")));
    } else {
        g = parse_group(j["ambient"]);
        amb = Ambient::of_group(*g);
    }
    int degree = static_cast<int>(get_int(j, "degree", "/"));

    if (src.contains("kernel")) {
        if (!g) fail("/source/kernel", "kernel systems need a group ambient");
        BlockHom m = parse_hom(src["kernel"], "/source/kernel");
        std::vector<int> b;
        if (src["kernel"].contains("b"))
            for (const auto& v : src["kernel"]["b"]) b.push_back(parse_element(v, amb));
        FamilyInstance fi("kernel", from_kernel(g, degree, m, b, budget));
        return fi;
    }
    if (src.contains("explicit")) {
        std::vector<std::vector<std::int32_t>> tuples;
        for (const auto& t : src["explicit"]) {
            std::vector<std::int32_t> row;
            for (const auto& v : t) row.push_back(parse_element(v, amb));
            tuples.push_back(std::move(row));
        }
        FamilyInstance fi("explicit", from_explicit(amb, degree, std::move(tuples)));
        return fi;
    }
    fail("/source", "expected \"kernel\", \"family\" or \"explicit\"");
}

} // namespace confsys

#pragma once

#include "confsys/config_system.hpp"
#include "confsys/families.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <string>

namespace confsys {

using nlohmann::json;

/// {"type":"abelian","moduli":[...]} | {"type":"cayley","table":[[...]]} |
/// {"type":"named","name":"D_5"} | "D_5"
std::shared_ptr<const Group> parse_group(const json& j);

/// Element of an abelian group / box given as an index or a residue tuple.
int parse_element(const json& j, const Ambient& ambient);

/// Subgroup spec {"generators":[...]} or {"members":[...]}.
Subgroup parse_subgroup(const json& j, const std::shared_ptr<const Group>& g);

/// Full system descriptor:
/// {"ambient": <group | {"box":{"n":N,"m":M}}>, "degree": k,
///  "source": {"kernel":{"matrix":[[..]],"b":[..],"dim":m}}
///          | {"family":"<name>","params":{...}}
///          | {"explicit":[[..],..]}}
FamilyInstance parse_system(const json& j, const Budget& budget = {}, std::uint64_t seed = 0);

/// Family registry entry point used by {"family":...} sources.
FamilyInstance build_family(const std::string& name, const json& params, const Budget& budget,
                            std::uint64_t seed);

json load_json_file(const std::string& path);

} // namespace confsys

#pragma once

#include <string>

#include <json.hpp>

namespace mugen {

// Compact JSON with keys in sorted order and every floating-point number
// printed with exactly four decimals.
std::string canonical_dump(const nlohmann::json& j);
void canonical_dump(const nlohmann::json& j, std::string& out);

}  // namespace mugen

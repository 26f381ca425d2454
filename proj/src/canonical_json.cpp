#include "mugen/canonical_json.hpp"

#include <cmath>
#include <cstdio>

namespace mugen {

void canonical_dump(const nlohmann::json& j, std::string& out) {
  using T = nlohmann::json::value_t;
  switch (j.type()) {
    case T::object: {
      out.push_back('{');
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out.push_back(',');
        first = false;
        out += nlohmann::json(k).dump();
        out.push_back(':');
        canonical_dump(v, out);
      }
      out.push_back('}');
      break;
    }
    case T::array: {
      out.push_back('[');
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out.push_back(',');
        canonical_dump(j[i], out);
      }
      out.push_back(']');
      break;
    }
    case T::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) v = 0.0;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f", v);
      if (std::string_view(buf) == "-0.0000") out += "0.0000";
      else out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  canonical_dump(j, out);
  return out;
}

}  // namespace mugen

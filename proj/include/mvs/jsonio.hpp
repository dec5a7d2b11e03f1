// Small shared JSON (de)serializers for the value types that appear in
// reports: enclosures and K_0 elements.  Rationals travel as "p/q" strings,
// never as decimals.

#ifndef MVS_JSONIO_HPP
#define MVS_JSONIO_HPP

#include <json.hpp>

#include "mvs/invariants.hpp"

namespace mvs {

inline nlohmann::json enclosure_to_json(const Enclosure& e) {
  return {{"lo", e.lo.str()}, {"hi", e.hi.str()}, {"certified", e.certified}};
}

inline Enclosure enclosure_from_json(const nlohmann::json& j) {
  try {
    return Enclosure(Rat::parse(j.at("lo").get<std::string>()),
                     Rat::parse(j.at("hi").get<std::string>()),
                     j.at("certified").get<bool>());
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid enclosure: ") + e.what());
  }
}

inline nlohmann::json k0_to_json(const K0Element& g) {
  return {{"x", g.x.str()}, {"y", g.y.str()}};
}

inline K0Element k0_from_json(const nlohmann::json& j) {
  try {
    return K0Element{Rat::parse(j.at("x").get<std::string>()),
                     Rat::parse(j.at("y").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid K0 element: ") + e.what());
  }
}

}  // namespace mvs

#endif  // MVS_JSONIO_HPP

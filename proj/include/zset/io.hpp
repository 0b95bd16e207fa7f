#pragma once

// JSON forms of the core values. Every reader validates and throws
// InputError on anything malformed, so the CLI can map it to exit code 2.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "zset/gset.hpp"

namespace zset {

using nlohmann::json;

namespace detail {

inline Coord parse_coord(const std::string& key) {
  Coord c = 0;
  auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), c);
  if (ec != std::errc{} || end != key.data() + key.size() || key.empty()) {
    throw InputError("coordinate key '" + key + "' is not a decimal natural number");
  }
  return c;
}

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace detail

inline json to_json(const DepthFn& d) {
  json j = json::object();
  for (const auto& [i, n] : d.entries()) j[std::to_string(i)] = n;
  return j;
}

inline DepthFn depth_from_json(const json& j) {
  if (!j.is_object()) throw InputError("depth function must be a JSON object");
  DepthFn d;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      throw InputError("depth at coordinate " + k + " must be an integer >= 1");
    }
    d.set(detail::parse_coord(k), v.get<Depth>());
  }
  return d;
}

inline json to_json(const ResidueVector& v) {
  json j = json::object();
  for (const auto& [i, r] : v.coords()) j[std::to_string(i)] = r;
  return j;
}

inline ResidueVector residue_from_json(const json& j) {
  if (!j.is_object()) throw InputError("residue vector must be a JSON object");
  ResidueVector v;
  for (const auto& [k, r] : j.items()) {
    if (!r.is_number_integer()) throw InputError("residue at coordinate " + k + " must be an integer");
    v.set(detail::parse_coord(k), r.get<std::int64_t>());
  }
  return v;
}

inline json to_json(const StabilizerSpec& s) {
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(to_json(g));
  return {{"base", to_json(s.base)}, {"generators", gens}};
}

inline StabilizerSpec stab_from_json(const json& j) {
  StabilizerSpec s;
  s.base = depth_from_json(detail::field(j, "base"));
  if (j.contains("generators")) {
    if (!j.at("generators").is_array()) throw InputError("generators must be an array");
    for (const auto& g : j.at("generators")) s.generators.push_back(residue_from_json(g));
  }
  s.validate();
  return s;
}

inline json to_json(const ZSet& x) {
  json orbits = json::array();
  for (const auto& o : x.orbits()) orbits.push_back({{"label", o.label}, {"stab", to_json(o.set.stab())}});
  return {{"orbits", orbits}};
}

inline ZSet zset_from_json(const json& j) {
  const json& arr = detail::field(j, "orbits");
  if (!arr.is_array()) throw InputError("orbits must be an array");
  std::vector<Orbit> orbits;
  for (const auto& o : arr) {
    const json& label = detail::field(o, "label");
    if (!label.is_string()) throw InputError("orbit label must be a string");
    orbits.push_back({label.get<std::string>(), TransitiveZSet(stab_from_json(detail::field(o, "stab")))});
  }
  return ZSet(std::move(orbits));
}

inline json to_json(const Element& e) { return {{"target", e.orbit}, {"image", to_json(e.rep)}}; }

inline json to_json(const EqMap& f) {
  json a = json::object();
  for (const auto& [label, e] : f.assignment()) a[label] = to_json(e);
  return {{"assignment", a}};
}

/// Images may be any representative; they are reduced to the minimal one.
inline EqMap eqmap_from_json(const json& j, const ZSet& source, const ZSet& target) {
  const json& a = detail::field(j, "assignment");
  if (!a.is_object()) throw InputError("assignment must be an object");
  std::map<std::string, Element> assignment;
  for (const auto& [label, e] : a.items()) {
    if (!source.find(label)) throw InputError("assignment names unknown source orbit '" + label + "'");
    const json& t = detail::field(e, "target");
    if (!t.is_string()) throw InputError("assignment target must be a label");
    auto k = target.find(t.get<std::string>());
    if (!k) throw InputError("assignment names unknown target orbit '" + t.get<std::string>() + "'");
    ResidueVector image = e.contains("image") ? residue_from_json(e.at("image")) : ResidueVector{};
    const auto& orbit = target.orbit(*k).set;
    assignment[label] = Element{t.get<std::string>(), orbit.rep(orbit.point(image))};
  }
  return EqMap::from_assignment(source, target, assignment);
}

/// {"object": ZSet, "map": EqMap into base}. Without "map", every orbit is
/// sent to the basepoint of the base's only orbit.
inline std::pair<ZSet, EqMap> over_from_json(const json& j, const ZSet& base) {
  if (!j.contains("object")) {
    ZSet x = zset_from_json(j);
    if (base.orbit_count() != 1) throw InputError("object over a base with several orbits needs a \"map\"");
    std::vector<OrbitImage> images(x.orbit_count(), OrbitImage{0, 0});
    for (const auto& o : x.orbits()) {
      if (!o.set.maps_to(base.orbit(0).set)) throw InputError("orbit '" + o.label + "' admits no map to the base");
    }
    return {x, EqMap(x, base, std::move(images))};
  }
  ZSet x = zset_from_json(j.at("object"));
  return {x, eqmap_from_json(detail::field(j, "map"), x, base)};
}

inline json to_json(const SearchBounds& b) {
  return {{"max_support", b.max_support}, {"max_coord", b.max_coord}, {"max_depth", b.max_depth},
          {"max_orbits", b.max_orbits}};
}

inline SearchBounds bounds_from_json(const json& j) {
  SearchBounds b;
  auto get = [&](const char* k, std::uint32_t& out) {
    if (!j.contains(k)) return;
    if (!j.at(k).is_number_unsigned()) throw InputError(std::string(k) + " must be a positive integer");
    out = j.at(k).get<std::uint32_t>();
  };
  get("max_support", b.max_support);
  get("max_coord", b.max_coord);
  get("max_depth", b.max_depth);
  get("max_orbits", b.max_orbits);
  b.validate();
  return b;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace zset

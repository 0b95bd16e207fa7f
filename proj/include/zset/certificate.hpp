#pragma once

// Replayable certificates: {"kind", "inputs", "payload"}. The payload is a
// pure function of kind and inputs (no timings), so replay recomputes it and
// compares serialized bytes.

#include <string>
#include <utility>

#include "json.hpp"

#include "zset/forcing.hpp"
#include "zset/formula.hpp"
#include "zset/io.hpp"
#include "zset/suites.hpp"
#include "zset/wisc.hpp"

namespace zset {

struct Certificate {
  std::string kind;
  json inputs;
  json payload;
};

inline json to_json(const Certificate& c) { return {{"kind", c.kind}, {"inputs", c.inputs}, {"payload", c.payload}}; }

inline Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw InputError("certificate must be an object");
  const json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw InputError("certificate kind must be a string");
  return {kind.get<std::string>(), detail::field(j, "inputs"), detail::field(j, "payload")};
}

namespace detail {

inline SearchBounds input_bounds(const json& in) { return bounds_from_json(field(in, "bounds")); }

inline ZSet input_stage(const json& in) { return in.contains("stage") ? zset_from_json(in.at("stage")) : terminal(); }

inline std::pair<Env, Formula> input_formula(const json& in) {
  auto [env, sig] = context_from_json(in.contains("context") ? in.at("context") : json(nullptr), input_stage(in));
  const json& text = field(in, "formula");
  if (!text.is_string()) throw InputError("formula must be a string");
  return {env, parse(text.get<std::string>(), sig)};
}

inline ForceOptions input_options(const json& in) {
  ForceOptions opt;
  if (in.contains("connected_only")) opt.connected_only = in.at("connected_only").get<bool>();
  return opt;
}

}  // namespace detail

/// Recomputes the payload for a kind from its inputs.
///   lemma41, lemma42     {"bounds"}
///   props                {"bounds", "exp_cap"?}
///   force                {"formula", "bounds", "stage"?, "context"?, "connected_only"?}
///   stability            same as force plus "samples"
///   non_epi              {"cover", "T", "r", "omega"}
///   wisc_demo            {"cover", "bounds", "N"?}
inline json compute_payload(const std::string& kind, const json& in) {
  if (kind == "lemma41") return payload(lemma41_suite(detail::input_bounds(in)));
  if (kind == "lemma42") return payload(lemma42_suite(detail::input_bounds(in)));
  if (kind == "props") {
    return payload(props_suite(detail::input_bounds(in), in.value("exp_cap", std::size_t{4096})));
  }
  if (kind == "force") {
    auto [env, f] = detail::input_formula(in);
    auto v = force(env, f, detail::input_bounds(in), detail::input_options(in));
    return {{"status", to_string(v->status)},
            {"witness", certain(v->status) ? to_json(*v) : json(nullptr)},
            {"revalidated", revalidate(env, f, *v)}};
  }
  if (kind == "stability") {
    auto [env, f] = detail::input_formula(in);
    auto r = stability_spotcheck(env, f, detail::input_bounds(in), in.value("samples", std::size_t{8}),
                                 detail::input_options(in));
    return {{"checked", r.checked}, {"inconclusive", r.inconclusive}, {"violations", r.violations}};
  }
  if (kind == "non_epi") {
    EqMap y = cover_from_json(detail::field(in, "cover"));
    ZSet t = zset_from_json(detail::field(in, "T"));
    EqMap r = eqmap_from_json(detail::field(in, "r"), t, y.target());
    std::size_t epi = 0;
    auto c = certify_all_maps(y, r, omega_from_json(detail::field(in, "omega")), &epi);
    return {{"certificate", to_json(c)}, {"epi_composites", epi}};
  }
  if (kind == "wisc_demo") {
    EqMap y = cover_from_json(detail::field(in, "cover"));
    std::optional<Depth> n;
    if (in.contains("N")) n = in.at("N").get<Depth>();
    return to_json(exhaustive_demo(y, detail::input_bounds(in), n));
  }
  throw InputError("unknown certificate kind '" + kind + "'");
}

inline Certificate issue(const std::string& kind, json inputs) {
  json p = compute_payload(kind, inputs);
  return {kind, std::move(inputs), std::move(p)};
}

struct ReplayResult {
  std::string kind;
  bool identical = false;
  std::size_t first_difference = 0;  // byte offset into the serialized payload
};

inline ReplayResult replay(const Certificate& c) {
  const std::string want = c.payload.dump();
  const std::string got = compute_payload(c.kind, c.inputs).dump();
  ReplayResult r{c.kind, want == got, 0};
  if (!r.identical) {
    while (r.first_difference < want.size() && r.first_difference < got.size() &&
           want[r.first_difference] == got[r.first_difference]) {
      ++r.first_difference;
    }
  }
  return r;
}

}  // namespace zset

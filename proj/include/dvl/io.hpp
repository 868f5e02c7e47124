#pragma once

// JSON encodings. Complex numbers are [re, im]; polynomials are coefficient
// arrays, low degree first. Report objects carry "schema": 1. Ratio tuples
// are printed scaled so the smallest entry is 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dvl/families.hpp"
#include "dvl/invariants.hpp"
#include "dvl/kernel.hpp"
#include "dvl/verify.hpp"

namespace dvl::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Non-finite doubles become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json encode(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx decode_cplx(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw MalformedInput("expected a complex number [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json encode(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx z : v) out.push_back(encode(z));
  return out;
}

inline std::vector<cplx> decode_cplx_list(const json& j) {
  if (!j.is_array()) throw MalformedInput("expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const json& e : j) out.push_back(decode_cplx(e));
  return out;
}

inline json encode(const Polynomial& p) {
  return encode(std::vector<cplx>(p.coeffs().begin(), p.coeffs().end()));
}

inline Polynomial decode_polynomial(const json& j) {
  std::vector<cplx> c = decode_cplx_list(j);
  if (c.empty()) throw MalformedInput("polynomial needs at least one coefficient");
  return Polynomial(std::move(c));
}

inline json encode(const RationalMap& r) { return {{"num", encode(r.num())}, {"den", encode(r.den())}}; }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline RationalMap decode_rational(const json& j) {
  if (j.is_array()) return RationalMap(decode_polynomial(j));
  return {decode_polynomial(field(j, "num")), decode_polynomial(field(j, "den"))};
}

inline json encode(const Moebius& m) { return {{"lambda", encode(m.lambda())}, {"a", encode(m.a())}}; }

inline Moebius decode_moebius(const json& j, const Tolerances& tol = {}) {
  return {decode_cplx(field(j, "lambda")), decode_cplx(field(j, "a")), tol};
}

inline json encode(const EmbeddingMap& f) {
  json comps = json::array();
  for (const RationalMap& c : f.components()) comps.push_back(encode(c));
  return {{"dim", f.dim()}, {"scale", f.scale()}, {"components", comps}};
}

inline EmbeddingMap decode_embedding(const json& j) {
  const json& comps = field(j, "components");
  if (!comps.is_array()) throw MalformedInput("'components' must be an array");
  std::vector<RationalMap> maps;
  for (const json& c : comps) maps.push_back(decode_rational(c));
  const double scale = j.contains("scale") ? j.at("scale").get<double>() : 1.0;
  if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(maps.size()))
    throw MalformedInput("'dim' does not match the number of components");
  return {scale, std::move(maps)};
}

inline json encode(const FamilyRef& s) { return {{"kind", s.kind}, {"params", s.params}}; }

inline FamilyRef decode_family_ref(const json& j) {
  FamilyRef s;
  s.kind = field(j, "kind").get<std::string>();
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw MalformedInput("'params' must be an object");
    for (const auto& [k, v] : j.at("params").items()) {
      if (!v.is_number()) throw MalformedInput("parameter '" + k + "' is not a number");
      s.params[k] = v.get<double>();
    }
  }
  return s;
}

struct PickRequest {
  std::vector<cplx> nodes;
  std::vector<cplx> targets;
};

inline json encode(const PickInstance& p) { return {{"nodes", encode(p.nodes)}, {"targets", encode(p.targets)}}; }

inline PickRequest decode_pick_request(const json& j) {
  return {decode_cplx_list(field(j, "nodes")), decode_cplx_list(field(j, "targets"))};
}

inline json encode(const ValidationReport& r) {
  return {{"ok", r.ok()},
          {"sphere_attachment", {{"ok", r.sphere_attachment_ok},
                                 {"max_boundary_deviation", number(r.max_boundary_deviation)},
                                 {"max_interior_norm_sq", number(r.max_interior_norm_sq)}}},
          {"derivative_nonvanishing", {{"ok", r.derivative_nonvanishing_ok},
                                       {"min_derivative_norm", number(r.min_derivative_norm)}}},
          {"injectivity", {{"ok", r.injectivity_ok},
                           {"worst_pair", {encode(r.worst_pair_z), encode(r.worst_pair_w)}},
                           {"worst_pair_distance", number(r.worst_pair_distance)}}},
          {"transversality", {{"ok", r.transversality_ok}, {"min_a_invariant", number(r.min_a_invariant)}}},
          {"pole", r.pole_message.empty() ? json(nullptr) : json(r.pole_message)}};
}

inline json encode(const CrossingPattern& p) {
  json classes = json::array();
  for (std::size_t k = 0; k < p.classes.size(); ++k) {
    json angles = json::array();
    for (const cplx z : p.classes[k]) angles.push_back(boundary_angle(z));
    classes.push_back({{"points", encode(p.classes[k])}, {"angles", angles}, {"residual", number(p.residuals[k])}});
  }
  json failures = json::array();
  for (const RefinementFailure& f : p.failures)
    failures.push_back({{"theta0", f.theta0}, {"phi0", f.phi0}, {"residual", number(f.residual)}});
  return {{"classes", classes}, {"refinement_failures", failures}, {"seeds", p.seeds}, {"samples", p.samples}};
}

inline json encode(const RatioTuple& t) {
  json values = json::array();
  json ratio = json::array();
  for (const double v : t.values) values.push_back(number(v));
  const double lo = t.values.empty() ? 1.0 : *std::min_element(t.values.begin(), t.values.end());
  for (const double v : t.values) ratio.push_back(number(v / lo));
  return {{"points", encode(t.points)}, {"a_values", values}, {"ratio", ratio}};
}

inline json encode(const std::vector<RatioTuple>& ts) {
  json out = json::array();
  for (const RatioTuple& t : ts) out.push_back(encode(t));
  return out;
}

inline json encode(const CandidateCheck& c) {
  return {{"mu", encode(c.mu)},
          {"origin", c.origin},
          {"maps_classes", c.maps_classes},
          {"class_map_residual", number(c.class_map_residual)},
          {"ratios_match", c.ratios_match},
          {"ratio_error", number(c.ratio_error)}};
}

inline json encode(const ObstructionVerdict& v) {
  json cands = json::array();
  for (const Moebius& m : v.candidates) cands.push_back(encode(m));
  json checked = json::array();
  for (const CandidateCheck& c : v.checked) checked.push_back(encode(c));
  json out = {{"kind", to_string(v.kind)},
              {"mode", to_string(v.mode)},
              {"candidates", cands},
              {"checked", checked},
              {"undecided", v.undecided},
              {"note", v.note}};
  if (v.undecided) out["flag"] = "open: equality undecided";
  out["identity_check"] = v.identity_check ? encode(*v.identity_check) : json(nullptr);
  out["alpha_beta"] = v.alpha_beta ? json{{"alpha", v.alpha_beta->first}, {"beta", v.alpha_beta->second}} : json(nullptr);
  return out;
}

inline json encode(const BoundaryPairData& d) {
  return {{"xi", encode(d.xi)}, {"zeta", encode(d.zeta)}, {"reduction", encode(d.reduction)},
          {"A", d.A}, {"B", d.B}, {"C", d.C}, {"D", d.D},
          {"E", encode(d.E)}, {"F", encode(d.F)}, {"G", encode(d.G)}};
}

inline json encode(const SuiteReport& r) {
  json cases = json::array();
  for (const CaseResult& c : r.cases)
    cases.push_back({{"name", c.name}, {"passed", c.passed}, {"measured", number(c.measured)},
                     {"bound", number(c.bound)}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"passed", r.passed()}, {"cases", cases}};
}

inline json encode(const PsdReport& r) {
  return {{"psd", r.psd}, {"threshold", number(r.threshold)}, {"used_eigen_fallback", r.used_eigen_fallback},
          {"min_pivot", number(r.min_pivot)}};
}

inline json encode(const InjectivityScreen& s) {
  json seps = json::array();
  for (const double v : s.separations) seps.push_back(number(v));
  return {{"passed", s.passed}, {"roots", encode(s.roots)}, {"separations", seps},
          {"counted", s.counted}, {"worst_separation", number(s.worst_separation)}};
}

inline json encode(const Alpha1Choice& c) {
  json grid = json::array();
  for (const auto& [a, sep] : c.grid) grid.push_back({a, number(sep)});
  return {{"alpha1", c.alpha1}, {"worst_separation", number(c.worst_separation)}, {"grid", grid}};
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_text(text);
}

/// Wraps nlohmann type errors in MalformedInput.
template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("malformed input: ") + e.what());
  }
}

/// A family reference "kind:k=v,..." or a path to a JSON file holding either
/// an EmbeddingMap or a FamilyRef.
inline EmbeddingMap load_map_source(const std::string& source, const Tolerances& tol = {}) {
  return guarded([&]() -> EmbeddingMap {
    if (std::filesystem::is_regular_file(source)) {
      const json j = read_file(source);
      if (j.is_object() && j.contains("kind")) return make_family(decode_family_ref(j), tol);
      return decode_embedding(j);
    }
    if (source.find(':') == std::string::npos && source.find('.') != std::string::npos)
      throw MalformedInput("no such file '" + source + "'");
    return make_family(parse_family_ref(source), tol);
  });
}

}  // namespace dvl::io

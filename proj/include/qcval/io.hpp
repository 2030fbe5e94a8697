// Copyright 2026 The qcval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON schemas for bodies, functions, densities and valuation specs, plus
// CSV emission at 17 significant digits. Parse failures carry the JSON
// path of the offending element.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcval/analysis.hpp"
#include "qcval/geometry.hpp"
#include "qcval/measures.hpp"
#include "qcval/qcf.hpp"
#include "qcval/valuations.hpp"

namespace qcval {

using nlohmann::json;

struct ParseError : std::runtime_error {
  ParseError(std::string code_, std::string path_, std::string detail_)
      : std::runtime_error(code_ + " at " + path_ + ": " + detail_),
        code(std::move(code_)),
        path(std::move(path_)),
        detail(std::move(detail_)) {}
  std::string code;
  std::string path;
  std::string detail;
};

/// Full-precision decimal formatting; round-trips doubles exactly.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

namespace detail_io {

inline double number_at(const json& j, const std::string& path) {
  // thresholds and coordinates may arrive as decimal strings; both parse
  // to the same double when the text is identical
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(j.get<std::string>(), &pos);
      if (pos == j.get<std::string>().size()) return v;
    } catch (...) {
    }
    throw ParseError("schema", path, "string is not a decimal number");
  }
  throw ParseError("schema", path, "expected a number");
}

inline Vec vec_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ParseError("schema", path, "expected a non-empty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = number_at(j[i], path + "/" + std::to_string(i));
  return v;
}

inline const json& field(const json& j, const char* name, const std::string& path) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError("schema", path, std::string("missing field \"") + name + "\"");
  return j[name];
}

}  // namespace detail_io

inline ConvexBody body_from_json(const json& j, const std::string& path = "") {
  using detail_io::field;
  using detail_io::vec_at;
  if (!j.is_object()) throw ParseError("schema", path, "body must be an object");
  const std::string type = field(j, "type", path).get<std::string>();
  if (type == "box") {
    Vec lo = vec_at(field(j, "lo", path), path + "/lo");
    Vec hi = vec_at(field(j, "hi", path), path + "/hi");
    if (lo.size() != hi.size())
      throw ParseError("schema", path, "lo and hi lengths differ");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i])
        throw ParseError("invariant", path + "/lo/" + std::to_string(i),
                         "lo > hi on axis " + std::to_string(i));
    return Box::make(std::move(lo), std::move(hi));
  }
  if (type == "zonotope") {
    Vec base = vec_at(field(j, "base", path), path + "/base");
    const json& gens = field(j, "generators", path);
    if (!gens.is_array())
      throw ParseError("schema", path + "/generators", "expected an array");
    std::vector<Vec> gs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Vec g = vec_at(gens[i], path + "/generators/" + std::to_string(i));
      if (g.size() != base.size())
        throw ParseError("invariant", path + "/generators/" + std::to_string(i),
                         "generator dimension differs from base");
      gs.push_back(std::move(g));
    }
    return Zonotope::make(std::move(base), std::move(gs));
  }
  if (type == "embedded") {
    const json& fj = field(j, "frame", path);
    if (!fj.is_array() || fj.empty())
      throw ParseError("schema", path + "/frame", "expected a non-empty array of vectors");
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < fj.size(); ++i)
      vs.push_back(vec_at(fj[i], path + "/frame/" + std::to_string(i)));
    Frame frame = [&] {
      try {
        return Frame::make(std::move(vs));
      } catch (const std::invalid_argument& e) {
        throw ParseError("invariant", path + "/frame", e.what());
      }
    }();
    Vec offset = vec_at(field(j, "offset", path), path + "/offset");
    ConvexBody inner = body_from_json(field(j, "body", path), path + "/body");
    if (std::holds_alternative<EmbeddedBody>(inner))
      throw ParseError("schema", path + "/body", "embedded bodies cannot nest");
    std::variant<Box, Zonotope> bk =
        std::holds_alternative<Box>(inner)
            ? std::variant<Box, Zonotope>(std::get<Box>(std::move(inner)))
            : std::variant<Box, Zonotope>(std::get<Zonotope>(std::move(inner)));
    try {
      return embed(std::move(bk), std::move(frame), std::move(offset));
    } catch (const std::invalid_argument& e) {
      throw ParseError("invariant", path, e.what());
    }
  }
  throw ParseError("schema", path + "/type", "unknown body type \"" + type + "\"");
}

inline json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline json body_to_json(const ConvexBody& b) {
  if (const auto* box = std::get_if<Box>(&b))
    return json{{"type", "box"}, {"lo", vec_to_json(box->lo)}, {"hi", vec_to_json(box->hi)}};
  if (const auto* z = std::get_if<Zonotope>(&b)) {
    json gens = json::array();
    for (const Vec& g : z->generators) gens.push_back(vec_to_json(g));
    return json{{"type", "zonotope"}, {"base", vec_to_json(z->base)}, {"generators", gens}};
  }
  const auto& e = std::get<EmbeddedBody>(b);
  json frame = json::array();
  for (const Vec& v : e.frame.vectors) frame.push_back(vec_to_json(v));
  return json{{"type", "embedded"},
              {"frame", frame},
              {"offset", vec_to_json(e.offset)},
              {"body", body_to_json(std::visit(
                           [](const auto& v) { return ConvexBody(v); }, e.body))}};
}

inline SimpleQCF qcf_from_json(const json& j, const std::string& path = "") {
  using detail_io::field;
  const json& levels = field(j, "levels", path);
  if (!levels.is_array())
    throw ParseError("schema", path + "/levels", "expected an array");
  std::vector<Level> lv;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string lp = path + "/levels/" + std::to_string(i);
    const double t = detail_io::number_at(field(levels[i], "t", lp), lp + "/t");
    ConvexBody body = body_from_json(field(levels[i], "body", lp), lp + "/body");
    lv.push_back(Level{t, std::move(body)});
  }
  try {
    return make_simple(std::move(lv));
  } catch (const std::invalid_argument& e) {
    throw ParseError("invariant", path + "/levels", e.what());
  }
}

inline json qcf_to_json(const SimpleQCF& f) {
  json levels = json::array();
  for (const Level& lv : f.levels())
    levels.push_back(json{{"t", lv.t}, {"body", body_to_json(lv.body)}});
  return json{{"levels", levels}};
}

/// Oracle description; currently the built-in cone family
/// {"cone": {"body": {...}}} with L_t = (1-t) * body.
inline QCFOracle oracle_from_json(const json& j, const std::string& path = "") {
  if (j.is_object() && j.contains("cone")) {
    const json& cj = j["cone"];
    ConvexBody body =
        body_from_json(detail_io::field(cj, "body", path + "/cone"), path + "/cone/body");
    return cone_oracle(body);
  }
  throw ParseError("schema", path, "unknown oracle family (expected {\"cone\": ...})");
}

inline Density density_from_json(const json& j, const std::string& path = "") {
  using detail_io::field;
  const std::string kind = field(j, "kind", path).get<std::string>();
  try {
    if (kind == "hinge")
      return Density::hinge(detail_io::number_at(field(j, "a", path), path + "/a"));
    if (kind == "poly") {
      const json& cj = field(j, "coeffs", path);
      if (!cj.is_array()) throw ParseError("schema", path + "/coeffs", "expected an array");
      std::vector<double> coeffs;
      for (std::size_t i = 0; i < cj.size(); ++i)
        coeffs.push_back(detail_io::number_at(cj[i], path + "/coeffs/" + std::to_string(i)));
      return Density::poly(std::move(coeffs));
    }
    if (kind == "pwl") {
      const json& kj = field(j, "knots", path);
      if (!kj.is_array() || kj.empty())
        throw ParseError("schema", path + "/knots", "expected a non-empty array");
      std::vector<std::pair<double, double>> knots;
      for (std::size_t i = 0; i < kj.size(); ++i) {
        const std::string kp = path + "/knots/" + std::to_string(i);
        if (!kj[i].is_array() || kj[i].size() != 2)
          throw ParseError("schema", kp, "expected [t, value]");
        knots.push_back({detail_io::number_at(kj[i][0], kp + "/0"),
                         detail_io::number_at(kj[i][1], kp + "/1")});
      }
      return Density::pwl(std::move(knots));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError("invariant", path, e.what());
  }
  throw ParseError("schema", path + "/kind", "unknown density kind \"" + kind + "\"");
}

inline json density_to_json(const Density& d) {
  switch (d.kind()) {
    case Density::Kind::kHinge:
      return json{{"kind", "hinge"}, {"a", d.hinge_offset()}};
    case Density::Kind::kPoly:
      return json{{"kind", "poly"}, {"coeffs", d.coeffs()}};
    case Density::Kind::kPwl: {
      json knots = json::array();
      for (const auto& [t, v] : d.knots()) knots.push_back(json::array({t, v}));
      return json{{"kind", "pwl"}, {"knots", knots}};
    }
  }
  return json();
}

inline DensitySpec density_spec_from_json(const json& j, const std::string& path = "") {
  using detail_io::field;
  const double delta = detail_io::number_at(field(j, "delta", path), path + "/delta");
  const json& pj = field(j, "phis", path);
  if (!pj.is_array() || pj.empty())
    throw ParseError("schema", path + "/phis", "expected a non-empty array");
  std::vector<Density> phis;
  for (std::size_t i = 0; i < pj.size(); ++i)
    phis.push_back(density_from_json(pj[i], path + "/phis/" + std::to_string(i)));
  try {
    return DensitySpec::make(std::move(phis), delta);
  } catch (const std::invalid_argument& e) {
    throw ParseError("invariant", path, e.what());
  }
}

inline MonotoneSpec monotone_spec_from_json(const json& j, const std::string& path = "") {
  using detail_io::field;
  const double delta = detail_io::number_at(field(j, "delta", path), path + "/delta");
  const json& nj = field(j, "nus", path);
  if (!nj.is_array() || nj.empty())
    throw ParseError("schema", path + "/nus", "expected a non-empty array");
  std::vector<DiscreteMeasure> nus;
  for (std::size_t i = 0; i < nj.size(); ++i) {
    const std::string np = path + "/nus/" + std::to_string(i);
    const json& aj = detail_io::field(nj[i], "atoms", np);
    if (!aj.is_array()) throw ParseError("schema", np + "/atoms", "expected an array");
    DiscreteMeasure m;
    for (std::size_t a = 0; a < aj.size(); ++a) {
      const std::string ap = np + "/atoms/" + std::to_string(a);
      if (!aj[a].is_array() || aj[a].size() != 2)
        throw ParseError("schema", ap, "expected [t, mass]");
      m.atoms.push_back({detail_io::number_at(aj[a][0], ap + "/0"),
                         detail_io::number_at(aj[a][1], ap + "/1")});
    }
    nus.push_back(std::move(m));
  }
  try {
    return MonotoneSpec::make(std::move(nus), delta);
  } catch (const std::invalid_argument& e) {
    throw ParseError("invariant", path, e.what());
  }
}

/// Dispatches on the top-level key: "phis" (integral) or "nus" (monotone).
inline ValuationOracle valuation_oracle_from_json(const json& j,
                                                  const std::string& path = "") {
  if (j.is_object() && j.contains("phis"))
    return make_integral_oracle(density_spec_from_json(j, path));
  if (j.is_object() && j.contains("nus"))
    return make_monotone_oracle(monotone_spec_from_json(j, path));
  throw ParseError("schema", path, "valuation spec needs \"phis\" or \"nus\"");
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

inline void write_measure_csv(std::ostream& os, const DiscreteMeasure& m) {
  os << "t,mass\n";
  for (const auto& [t, mass] : m.atoms) os << fmt17(t) << "," << fmt17(mass) << "\n";
}

inline void write_volumes_csv(std::ostream& os, const std::vector<double>& v) {
  os << "k,value\n";
  for (std::size_t k = 0; k < v.size(); ++k) os << k << "," << fmt17(v[k]) << "\n";
}

inline json frames_to_json(const std::vector<Frame>& frames) {
  json arr = json::array();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    json vecs = json::array();
    for (const Vec& v : frames[i].vectors) vecs.push_back(vec_to_json(v));
    arr.push_back(json{{"id", i}, {"vectors", vecs}});
  }
  return json{{"frames", arr}};
}

}  // namespace qcval

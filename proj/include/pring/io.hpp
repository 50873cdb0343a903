// JSON documents for rings, monoids, relations and presentations.
//
// Ring document:
//   { "elements": ["0","1"], "zero": "0", "one": "1",
//     "add": [["0","0","0"], ...],      // summable pairs with their sums;
//                                       // symmetric closure applied on load
//     "mul": [["1","1","1"], ...],      // total up to commutativity
//     "relate": [["a","b"], ...] }      // optional congruence generators
//
// A document without "one"/"mul" describes a bare partial magma/monoid.
//
// Presentation document:
//   { "generators": ["x","y"], "summable": ["x+y"],
//     "relations": [["x*y","1"]] }
#pragma once

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pring/base.hpp"
#include "pring/solve.hpp"
#include "pring/structures.hpp"

namespace pring {

using json = nlohmann::ordered_json;

struct ring_document {
  bool has_ring = false;       // "one" and "mul" present
  partial_magma magma;         // always populated
  partial_ring ring;           // populated when has_ring
  std::vector<std::pair<elem, elem>> relate;

  const partial_magma& structure() const {
    return has_ring ? static_cast<const partial_magma&>(ring) : magma;
  }
};

namespace detail {

inline elem resolve_name(const std::map<std::string, elem>& index,
                         const std::string& nm, const char* what) {
  auto it = index.find(nm);
  if (it == index.end()) {
    throw parse_error(std::string(what) + ": unknown element name '" + nm + "'");
  }
  return it->second;
}

}  // namespace detail

inline ring_document parse_ring_document(const json& doc) {
  if (!doc.is_object()) throw parse_error("ring document must be an object");
  if (!doc.contains("elements") || !doc["elements"].is_array()) {
    throw parse_error("ring document needs an 'elements' array");
  }
  std::vector<std::string> names;
  std::map<std::string, elem> index;
  for (const auto& e : doc["elements"]) {
    if (!e.is_string()) throw parse_error("element names must be strings");
    std::string nm = e.get<std::string>();
    if (index.count(nm)) throw parse_error("duplicate element name '" + nm + "'");
    index[nm] = static_cast<elem>(names.size());
    names.push_back(nm);
  }
  if (!doc.contains("zero") || !doc["zero"].is_string()) {
    throw parse_error("ring document needs a 'zero' name");
  }
  elem zero = detail::resolve_name(index, doc["zero"], "zero");

  partial_magma m(names, zero);
  if (doc.contains("add")) {
    for (const auto& t : doc["add"]) {
      if (!t.is_array() || t.size() != 3) {
        throw parse_error("'add' entries must be [a,b,c] triples");
      }
      elem a = detail::resolve_name(index, t[0], "add");
      elem b = detail::resolve_name(index, t[1], "add");
      elem c = detail::resolve_name(index, t[2], "add");
      m.set_sum(a, b, c, false);
      // Symmetric closure; an explicit conflicting entry later wins, so a
      // broken table can still be expressed and caught by the validator.
      if (!m.summable(b, a)) m.set_sum(b, a, c, false);
    }
  }

  ring_document out;
  out.has_ring = doc.contains("one") || doc.contains("mul");
  if (out.has_ring) {
    if (!doc.contains("one") || !doc["one"].is_string()) {
      throw parse_error("ring document needs a 'one' name");
    }
    elem one = detail::resolve_name(index, doc["one"], "one");
    partial_ring r(m, one);
    if (doc.contains("mul")) {
      for (const auto& t : doc["mul"]) {
        if (!t.is_array() || t.size() != 3) {
          throw parse_error("'mul' entries must be [a,b,c] triples");
        }
        elem a = detail::resolve_name(index, t[0], "mul");
        elem b = detail::resolve_name(index, t[1], "mul");
        elem c = detail::resolve_name(index, t[2], "mul");
        r.set_mul(a, b, c);
      }
    }
    out.ring = std::move(r);
  }
  out.magma = std::move(m);

  if (doc.contains("relate")) {
    for (const auto& p : doc["relate"]) {
      if (!p.is_array() || p.size() != 2) {
        throw parse_error("'relate' entries must be [a,b] pairs");
      }
      out.relate.emplace_back(detail::resolve_name(index, p[0], "relate"),
                              detail::resolve_name(index, p[1], "relate"));
    }
  }
  return out;
}

inline ring_document parse_ring_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_ring_document(doc);
}

inline ring_document load_ring_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_ring_document(text);
}

inline json magma_to_json(const partial_magma& A) {
  json doc;
  doc["elements"] = json::array();
  for (elem a = 0; a < A.size(); ++a) doc["elements"].push_back(A.name(a));
  doc["zero"] = A.name(A.zero());
  json add = json::array();
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = a; b < A.size(); ++b) {
      if (A.summable(a, b)) {
        add.push_back({A.name(a), A.name(b), A.name(A.add(a, b))});
      }
    }
  }
  doc["add"] = std::move(add);
  return doc;
}

inline json ring_to_json(const partial_ring& A) {
  json doc = magma_to_json(A);
  doc["one"] = A.name(A.one());
  json mul = json::array();
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = a; b < A.size(); ++b) {
      mul.push_back({A.name(a), A.name(b), A.name(A.mul(a, b))});
    }
  }
  doc["mul"] = std::move(mul);
  return doc;
}

// ---------------------------------------------------------------------------
// Presentation documents.

inline presentation parse_presentation_document(const json& doc) {
  if (!doc.is_object() || !doc.contains("generators")) {
    throw parse_error("presentation document needs a 'generators' array");
  }
  presentation P;
  for (const auto& g : doc["generators"]) {
    if (!g.is_string()) throw parse_error("generator names must be strings");
    P.gens.push_back(g.get<std::string>());
  }
  if (doc.contains("summable")) {
    for (const auto& s : doc["summable"]) {
      P.summable.push_back(parse_poly(s.get<std::string>(), P.gens));
    }
  }
  if (doc.contains("relations")) {
    for (const auto& r : doc["relations"]) {
      if (!r.is_array() || r.size() != 2) {
        throw parse_error("'relations' entries must be [lhs,rhs] pairs");
      }
      P.relations.emplace_back(parse_poly(r[0].get<std::string>(), P.gens),
                               parse_poly(r[1].get<std::string>(), P.gens));
    }
  }
  return P;
}

inline json presentation_to_json(const presentation& P) {
  json doc;
  doc["generators"] = P.gens;
  json s = json::array();
  for (const auto& p : P.summable) s.push_back(poly_to_string(p, P.gens));
  doc["summable"] = std::move(s);
  json r = json::array();
  for (const auto& [u, v] : P.relations) {
    r.push_back({poly_to_string(u, P.gens), poly_to_string(v, P.gens)});
  }
  doc["relations"] = std::move(r);
  return doc;
}

}  // namespace pring

#include "backforth/serialize.hpp"

#include <json.hpp>

#include "backforth/errors.hpp"

namespace bf {

using nlohmann::json;

namespace {

json span_to_json_obj(const SpanFamily& family, const Span& s) {
  json out;
  json domain = json::array();
  json map = json::array();
  for (int i = 0; i < family.left->size(); ++i) {
    if ((s.domain >> i) & 1) {
      domain.push_back(i);
      map.push_back(s.map[static_cast<std::size_t>(i)]);
    }
  }
  out["domain"] = std::move(domain);
  out["map"] = std::move(map);
  if (family.mode == CategoryMode::Str) {
    json rels = json::object();
    const Signature& sig = *family.left->sig();
    for (std::size_t r = 0; r < s.rels.size(); ++r) {
      json tuples = json::array();
      for (std::uint32_t code : s.rels[r].codes()) {
        tuples.push_back(decode_tuple(code, sig.relations()[r].arity, family.left->base()));
      }
      rels[sig.relations()[r].name] = std::move(tuples);
    }
    out["relations"] = std::move(rels);
  }
  return out;
}

json test_object_to_json_obj(const FinStructure& ambient, const TestObject& t) {
  json out;
  json carrier = json::array();
  for (int i = 0; i < ambient.size(); ++i) {
    if ((t.mask >> i) & 1) carrier.push_back(i);
  }
  out["carrier"] = std::move(carrier);
  if (!t.rels.empty()) {
    json rels = json::object();
    const Signature& sig = *ambient.sig();
    for (std::size_t r = 0; r < t.rels.size(); ++r) {
      json tuples = json::array();
      for (std::uint32_t code : t.rels[r].codes()) {
        tuples.push_back(decode_tuple(code, sig.relations()[r].arity, ambient.base()));
      }
      rels[sig.relations()[r].name] = std::move(tuples);
    }
    out["relations"] = std::move(rels);
  }
  return out;
}

}  // namespace

std::string span_to_json(const SpanFamily& family, const Span& s, bool pretty) {
  return span_to_json_obj(family, s).dump(pretty ? 2 : -1);
}

std::string test_object_to_json(const FinStructure& ambient, const TestObject& t, bool pretty) {
  return test_object_to_json_obj(ambient, t).dump(pretty ? 2 : -1);
}

std::string family_to_json(const SpanFamily& family, bool pretty) {
  json out = json::array();
  for (const Span& s : family.spans) out.push_back(span_to_json_obj(family, s));
  return out.dump(pretty ? 2 : -1);
}

SpanFamily family_from_json(const std::string& text, StructureRef left, StructureRef right,
                            CategoryMode mode) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SemanticError(std::string("family JSON: ") + e.what());
  }
  if (!doc.is_array()) throw SemanticError("family JSON: expected an array of spans");
  SpanFamily family{left, right, mode, {}};
  const Signature& sig = *left->sig();
  for (const json& item : doc) {
    if (!item.is_object() || !item.contains("domain") || !item.contains("map")) {
      throw SemanticError("family JSON: each span needs 'domain' and 'map'");
    }
    const auto& domain = item["domain"];
    const auto& map = item["map"];
    if (!domain.is_array() || !map.is_array() || domain.size() != map.size()) {
      throw SemanticError("family JSON: 'domain' and 'map' must be equal-length arrays");
    }
    Span s;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const int d = domain[i].get<int>();
      const int v = map[i].get<int>();
      if (d < 0 || d >= left->size() || v < 0 || v >= right->size()) {
        throw SemanticError("family JSON: span element outside a carrier");
      }
      if ((s.domain >> d) & 1) throw SemanticError("family JSON: duplicate domain element");
      s.domain |= (std::uint32_t{1} << d);
      s.map[static_cast<std::size_t>(d)] = static_cast<std::int8_t>(v);
      s.image |= (std::uint32_t{1} << v);
    }
    if (mode == CategoryMode::Str) {
      s.rels.resize(sig.relations().size());
      for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        s.rels[r] = TupleSet(left->base(), sig.relations()[r].arity);
      }
      if (item.contains("relations")) {
        for (const auto& [name, tuples] : item["relations"].items()) {
          auto r = sig.relation_index(name);
          if (!r) throw SemanticError("family JSON: unknown relation '" + name + "'");
          const int arity = sig.relations()[static_cast<std::size_t>(*r)].arity;
          for (const json& tup : tuples) {
            if (!tup.is_array() || static_cast<int>(tup.size()) != arity) {
              throw SemanticError("family JSON: tuple of wrong arity for '" + name + "'");
            }
            std::vector<int> t;
            for (const json& v : tup) t.push_back(v.get<int>());
            for (int v : t) {
              if (v < 0 || v >= left->size()) {
                throw SemanticError("family JSON: tuple element outside the left carrier");
              }
            }
            s.rels[static_cast<std::size_t>(*r)].set(encode_tuple(t, left->base()));
          }
        }
      }
    } else if (item.contains("relations")) {
      throw SemanticError("family JSON: emb-mode spans carry no relation choice");
    }
    std::string why;
    if (!valid_span(*left, *right, mode, s, &why)) {
      throw SemanticError("family JSON: invalid span (" + why + ")");
    }
    family.spans.push_back(std::move(s));
  }
  sort_unique(family);
  return family;
}

}  // namespace bf

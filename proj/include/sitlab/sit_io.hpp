#pragma once

// JSON and DOT rendering of strong interval trees.
//
//   {"label": "leaf"}
//   {"label": "plus" | "minus", "children": [...]}
//   {"label": {"prime": [2,4,1,3]}, "children": [...]}
//   {"label": {"prime": 4}, "children": [...]}      unlabelled arity marker

#include "sitlab/sit.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitlab {

using Json = nlohmann::json;

inline Json node_to_json(const SITree& t, std::size_t i) {
  const SitNode& v = t[i];
  Json j;
  switch (v.kind) {
    case NodeKind::leaf:
      j["label"] = "leaf";
      return j;
    case NodeKind::plus:
      j["label"] = "plus";
      break;
    case NodeKind::minus:
      j["label"] = "minus";
      break;
    case NodeKind::prime:
      if (v.pattern.empty()) {
        j["label"] = Json{{"prime", v.children.size()}};
      } else {
        j["label"] = Json{{"prime", v.pattern}};
      }
      break;
  }
  Json kids = Json::array();
  for (std::size_t c : v.children) {
    kids.push_back(node_to_json(t, c));
  }
  j["children"] = std::move(kids);
  return j;
}

inline Json to_json(const SITree& t) { return node_to_json(t, 0); }

inline SITree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("label")) {
    throw std::invalid_argument("tree JSON node needs a \"label\"");
  }
  const Json& label = j.at("label");
  std::vector<SITree> kids;
  if (j.contains("children")) {
    for (const Json& c : j.at("children")) {
      kids.push_back(tree_from_json(c));
    }
  }
  if (label.is_string()) {
    const auto s = label.get<std::string>();
    if (s == "leaf") {
      if (!kids.empty()) {
        throw ValidationError(Violation::leaf_with_children, 0, "in JSON input");
      }
      return SITree::leaf();
    }
    if (s == "plus") {
      return SITree::node(NodeKind::plus, kids);
    }
    if (s == "minus") {
      return SITree::node(NodeKind::minus, kids);
    }
    throw std::invalid_argument("unknown node label \"" + s + "\"");
  }
  if (label.is_object() && label.contains("prime")) {
    const Json& pr = label.at("prime");
    if (pr.is_array()) {
      return SITree::node(NodeKind::prime, kids, pr.get<Permutation>());
    }
    if (pr.is_number_integer()) {
      if (pr.get<long>() != static_cast<long>(kids.size())) {
        throw ValidationError(Violation::prime_arity_mismatch, 0, "arity marker in JSON input");
      }
      return SITree::node(NodeKind::prime, kids);
    }
  }
  throw std::invalid_argument("unrecognised node label " + label.dump());
}

inline SITree tree_from_json(const std::string& text) { return tree_from_json(Json::parse(text)); }

/// Graphviz rendering: prime nodes filled boxes, linear nodes circles, leaves points.
inline std::string to_dot(const SITree& t, const std::string& name = "sit") {
  std::ostringstream out;
  out << "digraph " << name << " {\n  node [fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    const SitNode& v = t[i];
    out << "  n" << i << " [";
    switch (v.kind) {
      case NodeKind::leaf:
        out << "shape=point, label=\"\"";
        break;
      case NodeKind::plus:
        out << "shape=circle, label=\"+\"";
        break;
      case NodeKind::minus:
        out << "shape=circle, label=\"-\"";
        break;
      case NodeKind::prime: {
        std::string lab;
        if (v.pattern.empty()) {
          lab = "P" + std::to_string(v.children.size());
        } else {
          for (int x : v.pattern) {
            lab += (lab.empty() ? "" : " ") + std::to_string(x);
          }
        }
        out << "shape=box, style=filled, fillcolor=\"gray80\", label=\"" << lab << "\"";
        break;
      }
    }
    out << "];\n";
  }
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    for (std::size_t c : t[i].children) {
      out << "  n" << i << " -> n" << c << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace sitlab

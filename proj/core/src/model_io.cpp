#include "xnr/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "xnr/errors.hpp"

namespace xnr {

using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing \"" + key + "\"");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

std::size_t as_count(const json& v, const std::string& where) {
  const std::int64_t i = as_int(v, where);
  if (i < 0) throw SchemaError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  return v;
}

Rational as_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  if (!v.is_string()) throw SchemaError(where + ": expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

std::vector<Rational> as_rational_vector(const json& v, const std::string& where) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
    out.push_back(as_rational(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Bdd bdd_from_json(const json& doc) {
  Bdd b;
  b.arity = as_count(member(doc, "n", "model"), "n");
  const json& nodes = as_array(member(doc, "nodes", "model"), "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const std::int64_t id = as_int(member(nodes[i], "id", where), where + ".id");
    const json& label = member(nodes[i], "label", where);
    if (!label.is_object() || label.size() != 1) {
      throw SchemaError(where + ".label: expected {\"feature\":f} or {\"class\":c}");
    }
    if (label.contains("feature")) {
      const std::int64_t f = as_int(label["feature"], where + ".label.feature");
      if (f < 0 || f > UINT32_MAX - 2) throw SchemaError(where + ".label.feature: out of range");
      b.nodes.push_back({id, NodeLabel::feature(static_cast<std::uint32_t>(f))});
    } else if (label.contains("class")) {
      const std::int64_t c = as_int(label["class"], where + ".label.class");
      if (c != 0 && c != 1) throw SchemaError(where + ".label.class: expected 0 or 1");
      b.nodes.push_back({id, NodeLabel::leaf(class_label(static_cast<int>(c)))});
    } else {
      throw SchemaError(where + ".label: expected \"feature\" or \"class\"");
    }
  }
  const json& edges = as_array(member(doc, "edges", "model"), "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const std::int64_t value = as_int(member(edges[i], "value", where), where + ".value");
    if (value != 0 && value != 1) throw SchemaError(where + ".value: expected 0 or 1");
    b.edges.push_back({as_int(member(edges[i], "from", where), where + ".from"),
                       as_int(member(edges[i], "to", where), where + ".to"),
                       static_cast<std::uint8_t>(value)});
  }
  b.root = as_int(member(doc, "root", "model"), "root");
  return b;
}

Perceptron perceptron_from_json(const json& doc) {
  Perceptron p;
  const std::size_t n = as_count(member(doc, "n", "model"), "n");
  p.weights = as_rational_vector(member(doc, "weights", "model"), "weights");
  p.bias = as_rational(member(doc, "bias", "model"), "bias");
  if (p.weights.size() != n) {
    throw SchemaError("weights: expected " + std::to_string(n) + " entries, found " +
                      std::to_string(p.weights.size()));
  }
  return p;
}

Mlp mlp_from_json(const json& doc) {
  Mlp m;
  m.arity = as_count(member(doc, "n", "model"), "n");
  const json& layers = as_array(member(doc, "layers", "model"), "layers");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const std::string where = "layers[" + std::to_string(k) + "]";
    MlpLayer layer;
    const json& rows = as_array(member(layers[k], "weights", where), where + ".weights");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      layer.weights.push_back(
          as_rational_vector(rows[i], where + ".weights[" + std::to_string(i) + "]"));
    }
    layer.bias = as_rational_vector(member(layers[k], "bias", where), where + ".bias");
    m.layers.push_back(std::move(layer));
  }
  return m;
}

json rational_vector(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json bdd_to_json(const Bdd& b, std::string_view type) {
  json doc;
  doc["type"] = type;
  doc["n"] = b.arity;
  json nodes = json::array();
  for (const auto& node : b.nodes) {
    json label;
    if (node.label.is_feature()) {
      label["feature"] = node.label.feature_index();
    } else {
      label["class"] = to_int(node.label.class_label());
    }
    nodes.push_back({{"id", node.id}, {"label", label}});
  }
  doc["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : b.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"value", e.value}});
  }
  doc["edges"] = edges;
  doc["root"] = b.root;
  return doc;
}

}  // namespace

Model model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  const json& type = member(doc, "type", "model");
  if (!type.is_string()) throw SchemaError("type: expected a string");
  const std::string t = type.get<std::string>();
  if (t == "bdd") return bdd_from_json(doc);
  if (t == "dt") return DecisionTree{bdd_from_json(doc)};
  if (t == "perceptron") return perceptron_from_json(doc);
  if (t == "mlp") return mlp_from_json(doc);
  throw SchemaError("type: unknown model type \"" + t + "\"");
}

std::string model_to_json(const Model& m, int indent) {
  struct Visitor {
    json operator()(const Bdd& b) const { return bdd_to_json(b, "bdd"); }
    json operator()(const DecisionTree& t) const { return bdd_to_json(t.graph, "dt"); }
    json operator()(const Perceptron& p) const {
      json doc;
      doc["type"] = "perceptron";
      doc["n"] = p.arity();
      doc["weights"] = rational_vector(p.weights);
      doc["bias"] = to_string(p.bias);
      return doc;
    }
    json operator()(const Mlp& m) const {
      json doc;
      doc["type"] = "mlp";
      doc["n"] = m.arity;
      json layers = json::array();
      for (const auto& layer : m.layers) {
        json rows = json::array();
        for (const auto& row : layer.weights) rows.push_back(rational_vector(row));
        layers.push_back({{"weights", rows}, {"bias", rational_vector(layer.bias)}});
      }
      doc["layers"] = layers;
      return doc;
    }
  };
  return std::visit(Visitor{}, m).dump(indent);
}

Classifier load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading model file " + path.string());
  return Classifier(model_from_json(buf.str()));
}

void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file " + path.string());
  out << model_to_json(m) << '\n';
  if (!out) throw IoError("failed writing model file " + path.string());
}

}  // namespace xnr

#pragma once

// JSON model documents:
//   {"type":"bdd"|"dt","n":N,"nodes":[{"id":I,"label":{"feature":F}|{"class":C}}],
//    "edges":[{"from":I,"to":J,"value":0|1}],"root":I}
//   {"type":"perceptron","n":N,"weights":["p/q",...],"bias":"p/q"}
//   {"type":"mlp","n":N,"layers":[{"weights":[["p/q",...],...],"bias":["p/q",...]}]}
// Rationals may also be written as JSON integers or integer strings.

#include <filesystem>
#include <string>
#include <string_view>

#include "xnr/classifier.hpp"

namespace xnr {

/// Throws SchemaError on a malformed document. Does not validate.
Model model_from_json(std::string_view text);
std::string model_to_json(const Model& m, int indent = 2);

/// Throws IoError, SchemaError or ValidationError.
Classifier load_model(const std::filesystem::path& path);
/// Throws IoError.
void save_model(const Model& m, const std::filesystem::path& path);
inline void save_model(const Classifier& m, const std::filesystem::path& path) {
  save_model(m.model(), path);
}

}  // namespace xnr

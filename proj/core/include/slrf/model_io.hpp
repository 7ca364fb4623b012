#pragma once

#include <string>

#include "slrf/classifier.hpp"

namespace slrf {

/// Serialize a trained model to the versioned JSON format. Round-trips are
/// bit-exact: doubles are stored so that load(save(m)) predicts identically.
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

} // namespace slrf

#pragma once

#include <filesystem>

#include "saint/pipeline/classifier.hpp"

namespace saint {

inline constexpr int kCheckpointVersion = 1;

/// Text archive: version header, model config, both vocabularies, penalty
/// matrix, frozen flag, then every named tensor with its shape. Doubles are
/// written in shortest round-trip form so inference is reproduced exactly.
void checkpoint_save(const Classifier& model, const std::filesystem::path& path);

// Throws FormatError on version mismatch, truncation or any malformed field;
// no model is returned in that case.
Classifier checkpoint_load(const std::filesystem::path& path);

}  // namespace saint

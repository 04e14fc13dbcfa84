#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "saint/text/labels.hpp"

namespace saint {

// Record layout: text<TAB>sentiment[<TAB>rule][<TAB>target]. The rule field
// may be left empty when only a target is given. Throws FormatError.
LabeledMessage parse_corpus_line(std::string_view line, std::size_t id);
std::string format_corpus_line(const LabeledMessage& message);

// Blank lines and lines starting with '#' are skipped; ids follow record order.
std::vector<LabeledMessage> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::vector<LabeledMessage>& messages, const std::filesystem::path& path);

}  // namespace saint

#include "saint/pipeline/corpus.hpp"

#include <fstream>

#include "saint/errors.hpp"

namespace saint {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

LabeledMessage parse_corpus_line(std::string_view line, std::size_t id) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto fields = split_tabs(line);
  if (fields.size() < 2 || fields.size() > 4) {
    throw FormatError("expected 2 to 4 tab-separated fields, got " + std::to_string(fields.size()));
  }
  LabeledMessage m;
  m.id = id;
  m.source_id = id;
  m.text = std::string(fields[0]);
  try {
    m.sentiment = parse_sentiment(fields[1]);
    if (fields.size() >= 3 && !fields[2].empty()) m.rule = parse_rule(fields[2]);
  } catch (const InputError& e) {
    throw FormatError(e.what());
  }
  if (fields.size() == 4 && !fields[3].empty()) m.target = std::string(fields[3]);
  return m;
}

std::string format_corpus_line(const LabeledMessage& message) {
  std::string line = message.text;
  line += '\t';
  line += to_string(message.sentiment);
  if (message.rule || message.target) {
    line += '\t';
    if (message.rule) line += to_string(*message.rule);
  }
  if (message.target) {
    line += '\t';
    line += *message.target;
  }
  return line;
}

std::vector<LabeledMessage> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read corpus " + path.string());
  std::vector<LabeledMessage> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    try {
      out.push_back(parse_corpus_line(line, out.size()));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_corpus(const std::vector<LabeledMessage>& messages, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write corpus " + path.string());
  for (const auto& m : messages) out << format_corpus_line(m) << '\n';
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace saint

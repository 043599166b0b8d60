#include "json_io.hpp"

#include <string>

namespace tdcode::cli {

using nlohmann::json;

json label_to_json(const Label& label, int q) {
  json entries = json::array();
  for (const LabelEntry& e : label.entries) entries.push_back({{"count", e.count}, {"sign", e.plus ? "+" : "-"}});
  return {{"root", format_word(label.root, q)}, {"entries", entries}, {"text", format_label(label, q)}};
}

Label label_from_json(const json& j, int q) {
  try {
    Label label;
    label.root = parse_word(j.at("root").get<std::string>(), q);
    for (const json& e : j.at("entries")) {
      const std::string sign = e.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw PreconditionError("label json: sign must be + or -");
      label.entries.push_back({e.at("count").get<std::uint32_t>(), sign == "+"});
    }
    if (j.contains("text") && parse_label(j["text"].get<std::string>(), q) != label) {
      throw PreconditionError("label json: text disagrees with entries");
    }
    return label;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("label json: ") + e.what());
  }
}

json code_to_json(const Code& code) {
  json words = json::array();
  for (const Word& w : code.words) words.push_back(format_word(w, code.q));
  return {{"n", code.n}, {"q", code.q}, {"size", code.size()}, {"provenance", code.provenance}, {"words", words}};
}

Code code_from_json(const json& j) {
  try {
    Code code;
    code.n = j.at("n").get<std::size_t>();
    code.q = j.at("q").get<int>();
    if (code.q < 2 || code.q > kMaxAlphabet) throw PreconditionError("code json: bad alphabet size");
    code.provenance = j.value("provenance", std::string());
    for (const json& w : j.at("words")) {
      Word word = parse_word(w.get<std::string>(), code.q);
      if (word.size() != code.n) throw PreconditionError("code json: word length differs from n");
      code.words.push_back(std::move(word));
    }
    code.normalize();
    if (j.contains("size") && j["size"].get<std::size_t>() != code.size()) {
      throw PreconditionError("code json: size disagrees with the word list");
    }
    return code;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("code json: ") + e.what());
  }
}

}  // namespace tdcode::cli

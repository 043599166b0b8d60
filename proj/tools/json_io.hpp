#pragma once

#include <json.hpp>

#include "tdcode/codes.hpp"
#include "tdcode/confusability.hpp"

namespace tdcode::cli {

/// {"root": "...", "entries": [{"count": c, "sign": "+"|"-"}], "text": "..."}
nlohmann::json label_to_json(const Label& label, int q = kDefaultAlphabet);
/// Accepts the object above; "text", when present, must agree with the fields.
Label label_from_json(const nlohmann::json& j, int q = kDefaultAlphabet);

/// {"n": n, "q": q, "size": s, "provenance": "...", "words": ["..."]}
nlohmann::json code_to_json(const Code& code);
Code code_from_json(const nlohmann::json& j);

}  // namespace tdcode::cli

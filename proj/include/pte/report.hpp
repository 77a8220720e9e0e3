#pragma once

// JSON and text forms shared by the command-line tool and the Python module.

#include <string>
#include <string_view>

#include "json.hpp"
#include "pte/enumerate.hpp"
#include "pte/latin.hpp"
#include "pte/pouring.hpp"
#include "pte/word.hpp"

namespace pte {

// {"word", "alphabet_size", "length", "max_regularity", "blocks"}; needs b >= 2.
nlohmann::json word_report(const Word& w);

// {"size", "rows"}.
nlohmann::json latin_json(const LatinSquare& square);
// b lines of b letters (A-Z) or of b whitespace-separated integers; or the
// JSON object produced by latin_json.
LatinSquare parse_latin(std::string_view text);
std::string latin_text(const LatinSquare& square);

nlohmann::json pouring_json(const PouringReport& report);

}  // namespace pte

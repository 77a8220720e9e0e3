#include "pte/report.hpp"

#include <cctype>
#include <sstream>

#include "pte/error.hpp"

namespace pte {

nlohmann::json word_report(const Word& w) {
  const Partition p = word_to_partition(w);
  return {{"word", w.str()},
          {"alphabet_size", w.alphabet_size()},
          {"length", w.size()},
          {"max_regularity", max_regularity(w)},
          {"blocks", p.blocks}};
}

nlohmann::json latin_json(const LatinSquare& square) {
  return {{"size", square.size()}, {"rows", square.rows()}};
}

LatinSquare parse_latin(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos) throw ParseError("empty Latin square");
  if (text[start] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
      auto rows = j.at("rows").get<std::vector<std::vector<Letter>>>();
      if (j.contains("size") && j.at("size").get<int>() != static_cast<int>(rows.size())) {
        throw ParseError("Latin square size does not match its rows");
      }
      return latin_from_rows(rows);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad Latin square JSON: ") + e.what());
    }
  }
  std::vector<std::vector<Letter>> rows;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Letter> row;
    std::istringstream cells(line);
    if (std::isdigit(static_cast<unsigned char>(line[line.find_first_not_of(" \t")]))) {
      Letter x = 0;
      while (cells >> x) row.push_back(x);
      if (!cells.eof()) throw ParseError("bad numeric Latin square row: '" + line + "'");
    } else {
      for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c < 'A' || c > 'Z') throw ParseError(std::string("invalid character '") + c + "' in Latin square");
        row.push_back(c - 'A' + 1);
      }
    }
    rows.push_back(std::move(row));
  }
  return latin_from_rows(rows);
}

std::string latin_text(const LatinSquare& square) {
  std::string out;
  for (int i = 0; i < square.size(); ++i) {
    for (int j = 0; j < square.size(); ++j) out.push_back(static_cast<char>('A' + square(i, j) - 1));
    out.push_back('\n');
  }
  return out;
}

nlohmann::json pouring_json(const PouringReport& report) {
  nlohmann::json j = {{"cup_amounts", report.cup_amounts},
                      {"disparity", report.disparity},
                      {"max_regularity", report.regularity},
                      {"switches", report.switches},
                      {"bound", nullptr},
                      {"derivative_bound", nullptr},
                      {"within_bound", report.within_bound}};
  if (report.bound) j["bound"] = *report.bound;
  if (report.derivative_bound) j["derivative_bound"] = *report.derivative_bound;
  return j;
}

}  // namespace pte

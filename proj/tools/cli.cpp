#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pte/enumerate.hpp"
#include "pte/error.hpp"
#include "pte/latin.hpp"
#include "pte/pouring.hpp"
#include "pte/report.hpp"
#include "pte/word.hpp"
#include "pte/word_ops.hpp"

namespace pte::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A domain failure that still produces a JSON object on stdout.
class DomainFailure : public std::runtime_error {
 public:
  DomainFailure(json payload, const std::string& what) : std::runtime_error(what), payload(std::move(payload)) {}
  json payload;
};

struct Options {
  std::string format = "json";
  int jobs = 1;
  int verbosity = 0;
};

Word word_arg(const std::string& text, std::optional<int> alphabet_size = std::nullopt) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("empty word");
  try {
    return parse_word(text, alphabet_size);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream parts(text);
  std::string item;
  while (std::getline(parts, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

// A file path, "-" for stdin, or one of @klein, @z2z3, @seven, @cyclic:N, @product:A,B.
LatinSquare load_square(const std::string& source) {
  if (!source.empty() && source[0] == '@') {
    const std::string name = source.substr(1);
    if (name == "klein") return klein_square();
    if (name == "z2z3") return product_group_square(2, 3);
    if (name == "seven") return seven_singular_square();
    if (name.rfind("cyclic:", 0) == 0) {
      const auto n = int_list(name.substr(7));
      if (n.size() != 1) throw UsageError("@cyclic:N takes one integer");
      return cyclic_square(n[0]);
    }
    if (name.rfind("product:", 0) == 0) {
      const auto ab = int_list(name.substr(8));
      if (ab.size() != 2) throw UsageError("@product:A,B takes two integers");
      return product_group_square(ab[0], ab[1]);
    }
    throw UsageError("unknown built-in square '" + source + "'");
  }
  try {
    return parse_latin(read_source(source));
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

std::string report_text(const Word& w) {
  return w.str() + " b=" + std::to_string(w.alphabet_size()) + " m=" + std::to_string(w.size()) +
         " r=" + std::to_string(max_regularity(w));
}

void emit_word(const Options& opts, std::ostream& out, const Word& w) {
  if (opts.format == "text") {
    out << report_text(w) << '\n';
  } else {
    out << word_report(w).dump() << '\n';
  }
}

void emit_json(const Options& opts, std::ostream& out, const json& j) {
  out << (opts.format == "text" ? j.dump(2) : j.dump()) << '\n';
}

// Known examples, checked in the field.
std::vector<std::pair<std::string, std::function<bool()>>> selftest_checks() {
  auto reg = [](const char* w) { return max_regularity(parse_word(w)); };
  return {
      {"max_regularity(ABBA) = 1", [=] { return reg("ABBA") == 1; }},
      {"max_regularity(ABBABAAB) = 2", [=] { return reg("ABBABAAB") == 2; }},
      {"max_regularity(ABBABAABBAABABBA) = 3", [=] { return reg("ABBABAABBAABABBA") == 3; }},
      {"max_regularity(ABABBBAAABAB) = 2", [=] { return reg("ABABBBAAABAB") == 2; }},
      {"max_regularity(ABCCBA) = 1", [=] { return reg("ABCCBA") == 1; }},
      {"ADAD over four letters is not 0-regular", [] { return max_regularity(parse_word("ADAD", 4)) == -1; }},
      {"L0(ABBABAAB) = ABBABAABBAABABBA",
       [] { return apply_latin(cyclic_square(2), parse_word("ABBABAAB")).str() == "ABBABAABBAABABBA"; }},
      {"L2(AB) = ABCABC",
       [] {
         const auto l2 = latin_from_rows({{1, 3, 2}, {2, 1, 3}, {3, 2, 1}});
         return apply_latin(l2, parse_word("AB", 3)).str() == "ABCABC";
       }},
      {"encoding matrix of L1",
       [] { return encoding_matrix(cyclic_square(3)).rows() == std::vector<std::vector<std::int64_t>>{{1, 3, 2}, {2, 1, 3}, {3, 2, 1}}; }},
      {"Klein square is singular", [] { return det_exact(klein_square().as_matrix()) == 0; }},
      {"Klein kernel witness (1,-1,-1,1) -> (2,0,0,2)",
       [] {
         const auto k = kernel_witness(klein_square());
         return k && k->coefficients == std::vector<BigInt>{1, -1, -1, 1} &&
                k->multiplicities == std::vector<BigInt>{2, 0, 0, 2};
       }},
      {"Klein L(ADAD) is 1-regular", [] { return max_regularity(apply_latin(klein_square(), parse_word("ADAD", 4))) >= 1; }},
      {"Klein L(BCCBADDA) is 2-regular, BCCBADDA only 0-regular",
       [] {
         const auto w = parse_word("BCCBADDA", 4);
         return max_regularity(w) == 0 && max_regularity(apply_latin(klein_square(), w)) >= 2;
       }},
      {"Z2 x Z3 square is singular", [] { return det_exact(product_group_square(2, 3).as_matrix()) == 0; }},
      {"size-7 square is singular", [] { return det_exact(seven_singular_square().as_matrix()) == 0; }},
      {"|det M6| = 7 * 6^5 / 2", [] { return abs(det_exact(cyclic_square(6).as_matrix())) == 27216; }},
      {"E has order three on L1", [] { return encoding_order_three_check(cyclic_square(3)); }},
      {"AB ^ BC ^ CA = ABCBCA",
       [] { return shuffle({parse_word("AB", 3), parse_word("BC", 3), parse_word("CA", 3)}).str() == "ABCBCA"; }},
      {"ABBA ^ BAAB = ABBABAAB", [] { return shuffle({parse_word("ABBA"), parse_word("BAAB")}).str() == "ABBABAAB"; }},
      {"ABBA ^ ABBA = AABBBBAA", [] { return shuffle({parse_word("ABBA"), parse_word("ABBA")}).str() == "AABBBBAA"; }},
      {"PTE(8,2,2) = {ABBABAAB}",
       [] {
         const auto r = enumerate_pte(SearchSpec{8, 2, 2});
         return r.count == 1 && r.words.front().str() == "ABBABAAB";
       }},
      {"PTE(6,3,1) = {ABCCBA}",
       [] {
         const auto r = enumerate_pte(SearchSpec{6, 3, 1});
         return r.count == 1 && r.words.front().str() == "ABCCBA";
       }},
      {"PTE(4,2,2) is empty", [] { return count_pte(SearchSpec{4, 2, 2}) == 0; }},
      {"#PTE(18,3,2) = 9", [] { return count_pte(SearchSpec{18, 3, 2}) == 9; }},
      {"switch_count(ABBABAAB) = 5", [] { return switch_count(parse_word("ABBABAAB")) == 5; }},
      {"x^2 pours perfectly along ABBABAAB",
       [] { return disparity(cup_amounts(Polynomial{{0, 0, 1}}, parse_word("ABBABAAB"))) <= 1e-12; }},
      {"e^-x along ABBABAAB stays within 1/48",
       [] {
         const auto rep = verify_pouring(Exponential{1.0}, parse_word("ABBABAAB"));
         return rep.bound && std::abs(*rep.bound - 1.0 / 48.0) < 1e-15 && rep.disparity <= *rep.bound;
       }},
  };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, transform, enumerate and verify Prouhet-Tarry-Escott partitions", "pte"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  if (const char* env = std::getenv("PTE_JOBS")) {
    try {
      opts.jobs = std::stoi(env);
    } catch (const std::exception&) {
      err << "ignoring non-numeric PTE_JOBS\n";
    }
  }
  app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-j,--jobs", opts.jobs, "Worker threads (default: PTE_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", opts.verbosity, "Verbosity");

  std::function<void()> action;

  // check
  auto* check = app.add_subcommand("check", "Report the maximal regularity and blocks of words");
  std::vector<std::string> check_words;
  std::optional<int> check_alphabet;
  bool check_stdin = false;
  std::optional<int> check_require;
  check->add_option("words", check_words, "Words over A-Z");
  check->add_option("-b,--alphabet-size", check_alphabet, "Alphabet size");
  check->add_flag("--stdin", check_stdin, "Read one word per line from stdin");
  check->add_option("--require", check_require, "Exit 1 unless every word is at least this regular");
  check->callback([&] {
    action = [&] {
      if (check_stdin) {
        std::string line;
        while (std::getline(std::cin, line)) {
          if (line.find_first_not_of(" \t\r") != std::string::npos) check_words.push_back(line);
        }
      }
      if (check_words.empty()) throw UsageError("check needs at least one word");
      std::vector<Word> words;
      for (const auto& text : check_words) words.push_back(word_arg(text, check_alphabet));
      bool ok = true;
      for (const auto& w : words) {
        if (check_require && max_regularity(w) < *check_require) ok = false;
      }
      if (words.size() == 1) {
        emit_word(opts, out, words.front());
      } else if (opts.format == "text") {
        for (const auto& w : words) out << report_text(w) << '\n';
      } else {
        json reports = json::array();
        for (const auto& w : words) reports.push_back(word_report(w));
        out << json{{"reports", reports}}.dump() << '\n';
      }
      if (!ok) throw Error("some word is less than " + std::to_string(*check_require) + "-regular");
    };
  });

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate or count PTE(m, b, r)");
  SearchSpec spec;
  bool want_list = false;
  bool want_count = false;
  bool want_first = false;
  bool all_labelings = false;
  enumerate->add_option("m", spec.m, "Word length")->required();
  enumerate->add_option("b", spec.b, "Alphabet size")->required();
  enumerate->add_option("r", spec.r, "Regularity")->required();
  auto* list_flag = enumerate->add_flag("--list", want_list, "List every word (default)");
  auto* count_flag = enumerate->add_flag("--count", want_count, "Only count");
  auto* first_flag = enumerate->add_flag("--first", want_first, "Stop at the first word found");
  list_flag->excludes(count_flag)->excludes(first_flag);
  count_flag->excludes(first_flag);
  enumerate->add_flag("--all-labelings", all_labelings, "List every letter relabeling, not one per orbit");
  enumerate->callback([&] {
    action = [&] {
      spec.jobs = opts.jobs;
      spec.mode = want_count ? SearchMode::count : want_first ? SearchMode::first : SearchMode::list;
      SearchSpec canonical = spec;
      canonical.canonical_only = true;
      canonical.mode = spec.mode == SearchMode::first ? SearchMode::first : SearchMode::count;
      if (spec.mode == SearchMode::list && !all_labelings) canonical.mode = SearchMode::list;
      const SearchResult counted = enumerate_pte(canonical);

      std::vector<Word> words = counted.words;
      if (all_labelings && spec.mode != SearchMode::count) {
        SearchSpec every = spec;
        every.canonical_only = false;
        words = enumerate_pte(every).words;
      }
      if (spec.mode == SearchMode::count) words.clear();

      json j = {{"m", spec.m}, {"b", spec.b}, {"r", spec.r}};
      if (spec.mode == SearchMode::first) {
        j["found"] = counted.count > 0;
      } else {
        j["canonical_count"] = counted.count;
        // Every word with r >= 0 uses all b letters, so each orbit has b! members.
        BigInt total = 0;
        if (spec.r >= 0) {
          total = counted.count;
          for (int k = 2; k <= spec.b; ++k) total *= k;
        } else {
          total = boost::multiprecision::pow(BigInt(spec.b), static_cast<unsigned>(spec.m));
        }
        j["total_count"] = big_json(total);
      }
      if (counted.divisibility_empty) j["note"] = "empty by divisibility";
      if (spec.mode != SearchMode::count) {
        json list = json::array();
        for (const auto& w : words) list.push_back(w.str());
        j["words"] = list;
      }
      if (opts.format == "text") {
        if (spec.mode == SearchMode::count) {
          out << "canonical " << j["canonical_count"].dump() << "\ntotal " << j["total_count"].dump() << '\n';
        } else {
          for (const auto& w : words) out << w.str() << '\n';
        }
      } else {
        out << j.dump() << '\n';
      }
    };
  });

  // build
  auto* build = app.add_subcommand("build", "Construct regular words");
  build->require_subcommand(1);
  std::size_t tm_length = 0;
  auto* tm = build->add_subcommand("tm", "Thue-Morse prefix");
  tm->add_option("length", tm_length, "Length")->required();
  tm->callback([&] { action = [&] { emit_word(opts, out, thue_morse(tm_length)); }; });
  int prouhet_b = 0;
  int prouhet_level = 0;
  auto* prouhet = build->add_subcommand("prouhet", "Iterate the cyclic square expansion from A");
  prouhet->add_option("b", prouhet_b, "Alphabet size")->required();
  prouhet->add_option("level", prouhet_level, "Number of expansions")->required();
  prouhet->callback([&] { action = [&] { emit_word(opts, out, prouhet_word(prouhet_b, prouhet_level)); }; });
  std::size_t construct_n = 0;
  int construct_r = 0;
  auto* two = build->add_subcommand("two-letter", "r-regular two-letter word of length n");
  two->add_option("n", construct_n, "Length")->required();
  two->add_option("r", construct_r, "Regularity")->required();
  two->callback([&] { action = [&] { emit_word(opts, out, construct_two_letter(construct_n, construct_r)); }; });
  auto* three = build->add_subcommand("three-letter", "r-regular three-letter word of length n");
  three->add_option("n", construct_n, "Length")->required();
  three->add_option("r", construct_r, "Regularity")->required();
  three->callback([&] { action = [&] { emit_word(opts, out, construct_three_letter(construct_n, construct_r)); }; });

  // latin
  auto* latin = app.add_subcommand("latin", "Latin square checks and searches");
  std::string square_source;
  bool latin_check = false;
  bool latin_encoding = false;
  bool latin_det = false;
  bool latin_kernel = false;
  std::optional<int> search_n;
  std::int64_t budget = 1000;
  std::uint64_t seed = 1;
  latin->add_option("square", square_source, "File, '-' for stdin, or @klein @z2z3 @seven @cyclic:N @product:A,B");
  auto* op_check = latin->add_flag("--check", latin_check, "Validate the square");
  auto* op_encoding = latin->add_flag("--encoding", latin_encoding, "Print the encoding matrix");
  auto* op_det = latin->add_flag("--det", latin_det, "Exact determinants of the square and its encoding matrix");
  auto* op_kernel = latin->add_flag("--kernel", latin_kernel, "Kernel witness of the encoding matrix");
  auto* op_search = latin->add_option("--search-singular", search_n, "Search singular squares of order n");
  latin->add_option("--budget", budget, "Random samples for n >= 6");
  latin->add_option("--seed", seed, "Random seed for n >= 6");
  for (auto* a : {op_check, op_encoding, op_det, op_kernel, op_search}) {
    for (auto* b : {op_check, op_encoding, op_det, op_kernel, op_search}) {
      if (a != b) a->excludes(b);
    }
  }
  latin->callback([&] {
    action = [&] {
      if (search_n) {
        const auto found = search_singular(*search_n, budget, seed);
        json squares = json::array();
        for (const auto& s : found) squares.push_back(s.rows());
        emit_json(opts, out,
                  {{"n", *search_n}, {"exhaustive", *search_n <= 5}, {"budget", budget}, {"count", found.size()}, {"squares", squares}});
        return;
      }
      if (square_source.empty()) throw UsageError("latin needs a square");
      if (latin_check) {
        LatinSquare square;
        try {
          square = load_square(square_source);
        } catch (const PreconditionError& e) {
          throw DomainFailure({{"valid", false}, {"error", e.what()}}, e.what());
        }
        json j = latin_json(square);
        j["valid"] = true;
        j["normalized"] = is_normalized(square);
        j["encoding_order_three"] = encoding_order_three_check(square);
        emit_json(opts, out, j);
        return;
      }
      const LatinSquare square = load_square(square_source);
      if (latin_encoding && opts.format == "text") {
        out << latin_text(encode(square));
      } else if (latin_encoding) {
        emit_json(opts, out, latin_json(encode(square)));
      } else if (latin_det) {
        emit_json(opts, out, {{"det", big_json(det_exact(square.as_matrix()))},
                              {"encoding_det", big_json(det_exact(encoding_matrix(square)))}});
      } else if (latin_kernel) {
        const auto witness = kernel_witness(square);
        if (!witness) {
          emit_json(opts, out, {{"invertible", true}});
          return;
        }
        json coeffs = json::array();
        json mult = json::array();
        for (const auto& c : witness->coefficients) coeffs.push_back(big_json(c));
        for (const auto& c : witness->multiplicities) mult.push_back(big_json(c));
        const Word w = witness_word(*witness);
        emit_json(opts, out, {{"invertible", false},
                              {"coefficients", coeffs},
                              {"translate", big_json(witness->translate)},
                              {"multiplicities", mult},
                              {"word", w.str()},
                              {"expanded", apply_latin(square, w).str()}});
      } else {
        throw UsageError("latin needs one of --check, --encoding, --det, --kernel, --search-singular");
      }
    };
  });

  // expand
  auto* expand = app.add_subcommand("expand", "Apply a Latin square expansion L(w)");
  std::string expand_square;
  std::string expand_word;
  expand->add_option("--latin", expand_square, "Square source (see latin)")->required();
  expand->add_option("word", expand_word, "Word")->required();
  expand->callback([&] {
    action = [&] {
      const LatinSquare square = load_square(expand_square);
      if (!is_normalized(square)) err << "warning: Latin square is not normalized; normalizing rows\n";
      emit_word(opts, out, apply_latin(square, word_arg(expand_word, square.size())));
    };
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Swap a 1-regular two-letter word down to A^k B^2k A^k");
  std::string reduce_word;
  reduce->add_option("word", reduce_word, "Word")->required();
  reduce->callback([&] {
    action = [&] {
      const Word w = word_arg(reduce_word, 2);
      const auto moves = reduce_by_swaps(w);
      json steps = json::array();
      for (const auto& step : moves) {
        steps.push_back({{"ba", step.ba_begin + 1}, {"ab", step.ab_begin + 1}, {"word", step.result.str()}});
      }
      Word reduced = w;
      if (!moves.empty()) reduced = moves.back().result;
      json j = word_report(reduced);
      j["input"] = w.str();
      j["steps"] = steps;
      emit_json(opts, out, j);
    };
  });

  // shuffle
  auto* shuffle_cmd = app.add_subcommand("shuffle", "Interleave words of equal length");
  std::vector<std::string> shuffle_words;
  std::optional<int> shuffle_alphabet;
  shuffle_cmd->add_option("words", shuffle_words, "Words")->required();
  shuffle_cmd->add_option("-b,--alphabet-size", shuffle_alphabet, "Alphabet size");
  shuffle_cmd->callback([&] {
    action = [&] {
      int b = shuffle_alphabet.value_or(1);
      if (!shuffle_alphabet) {
        for (const auto& text : shuffle_words) b = std::max(b, word_arg(text).alphabet_size());
      }
      std::vector<Word> words;
      for (const auto& text : shuffle_words) words.push_back(word_arg(text, b));
      emit_word(opts, out, shuffle(words));
    };
  });

  // split
  auto* split = app.add_subcommand("split", "Cut a word into k-regular pieces");
  std::string split_word;
  std::string split_cuts;
  int split_k = 0;
  split->add_option("word", split_word, "Word")->required();
  split->add_option("--cuts", split_cuts, "Comma-separated cut positions")->required();
  split->add_option("-k", split_k, "Regularity each piece must have")->required();
  split->callback([&] {
    action = [&] {
      SplitSpec s{word_arg(split_word), {}};
      for (int c : int_list(split_cuts)) {
        if (c < 0) throw UsageError("cut positions must be positive");
        s.cuts.push_back(static_cast<std::size_t>(c));
      }
      try {
        json pieces = json::array();
        for (const auto& piece : k_split(s, split_k)) pieces.push_back(piece.str());
        emit_json(opts, out, {{"word", s.word.str()}, {"k", split_k}, {"pieces", pieces}});
      } catch (const SplitError& e) {
        throw DomainFailure({{"word", s.word.str()}, {"k", split_k}, {"failed_piece", e.piece() + 1}}, e.what());
      }
    };
  });

  // pour
  auto* pour = app.add_subcommand("pour", "Cup amounts and disparity bound for a pouring");
  std::string pour_word;
  std::string pour_density;
  std::optional<double> pour_bound;
  pour->add_option("--word", pour_word, "Word")->required();
  pour->add_option("--density", pour_density, "poly:c0,c1,... | exp:a | file:<csv>")->required();
  pour->add_option("--deriv-bound", pour_bound, "Bound M on |f^(r+1)|");
  pour->callback([&] {
    action = [&] {
      const Word w = word_arg(pour_word);
      Density f;
      try {
        f = parse_density(pour_density);
      } catch (const ParseError& e) {
        throw UsageError(e.what());
      }
      json j = pouring_json(verify_pouring(f, w, pour_bound));
      j["word"] = w.str();
      emit_json(opts, out, j);
    };
  });

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the built-in fixture checks");
  selftest->callback([&] {
    action = [&] {
      json checks = json::array();
      int failed = 0;
      for (const auto& [name, check_fn] : selftest_checks()) {
        bool ok = false;
        try {
          ok = check_fn();
        } catch (const std::exception&) {
          ok = false;
        }
        failed += !ok;
        checks.push_back({{"name", name}, {"ok", ok}});
        if (opts.verbosity > 0) err << (ok ? "PASS " : "FAIL ") << name << '\n';
      }
      emit_json(opts, out, {{"passed", static_cast<int>(checks.size()) - failed}, {"failed", failed}, {"checks", checks}});
      if (failed > 0) throw Error(std::to_string(failed) + " self-test checks failed");
    };
  });

  std::vector<const char*> argv{"pte"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const DomainFailure& e) {
    out << e.payload.dump() << '\n';
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace pte::cli

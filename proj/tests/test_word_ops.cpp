#include <optional>
#include <random>

#include "doctest.h"
#include "pte/enumerate.hpp"
#include "pte/error.hpp"
#include "pte/latin.hpp"
#include "pte/word_ops.hpp"

using namespace pte;

namespace {

// Every word of length m over b letters, in lexicographic order.
std::vector<Word> all_words(int b, std::size_t m) {
  std::vector<Word> out;
  std::vector<Letter> letters(m, 1);
  while (true) {
    out.emplace_back(b, letters);
    std::size_t i = m;
    while (i > 0 && letters[i - 1] == b) letters[--i] = 1;
    if (i == 0) break;
    ++letters[i - 1];
  }
  return out;
}

Word target_form(std::size_t k) {
  std::vector<Letter> letters(4 * k, 2);
  for (std::size_t i = 0; i < k; ++i) letters[i] = letters[4 * k - 1 - i] = 1;
  return Word(2, letters);
}

}  // namespace

TEST_CASE("apply_latin fixtures") {
  CHECK(apply_latin(cyclic_square(2), parse_word("ABBABAAB")).str() == "ABBABAABBAABABBA");
  const auto l2 = latin_from_rows({{1, 3, 2}, {2, 1, 3}, {3, 2, 1}});
  CHECK(apply_latin(l2, parse_word("AB", 3)).str() == "ABCABC");
  CHECK(apply_latin(klein_square(), parse_word("ADAD", 4)).size() == 16);
  CHECK_THROWS_AS(apply_latin(cyclic_square(3), parse_word("ABBA")), PreconditionError);
}

TEST_CASE("apply_latin normalizes a shuffled square") {
  const auto shuffled = latin_from_rows({{2, 3, 1}, {3, 1, 2}, {1, 2, 3}});
  const Word w = parse_word("ABCCBA");
  CHECK(apply_latin(shuffled, w) == apply_latin(normalize(shuffled), w));
}

TEST_CASE("regularity lift over all short words and small squares") {
  for (int b = 2; b <= 3; ++b) {
    std::vector<LatinSquare> squares;
    for_each_latin_square(b, true, [&](const LatinSquare& s) {
      squares.push_back(s);
      return true;
    });
    for (std::size_t m = 1; m <= 6; ++m) {
      for (const auto& w : all_words(b, m)) {
        const int r = max_regularity(w);
        for (const auto& s : squares) {
          const int lifted = max_regularity(apply_latin(s, w));
          CHECK(lifted >= r + 1);
          if (det_exact(encoding_matrix(s)) != 0) CHECK(lifted == r + 1);
        }
      }
    }
  }
}

TEST_CASE("kernel words break the converse") {
  for (const auto& square : {klein_square(), product_group_square(2, 3)}) {
    const auto witness = kernel_witness(square);
    REQUIRE(witness);
    const Word w = witness_word(*witness);
    CHECK(max_regularity(w) < 0);
    CHECK(max_regularity(apply_latin(square, w)) >= 1);
  }
  CHECK(max_regularity(apply_latin(klein_square(), parse_word("ADAD", 4))) >= 1);
  const Word w = parse_word("BCCBADDA", 4);
  CHECK(max_regularity(w) == 0);
  CHECK(max_regularity(apply_latin(klein_square(), w)) >= 2);
}

TEST_CASE("thue_morse and prouhet") {
  CHECK(thue_morse(16).str() == "ABBABAABBAABABBA");
  CHECK(thue_morse(1).str() == "A");
  CHECK_THROWS_AS(thue_morse(0), PreconditionError);
  for (int r = 0; r <= 5; ++r) CHECK(max_regularity(thue_morse(std::size_t{2} << r)) == r);
  CHECK(prouhet_word(2, 4) == thue_morse(16));
  for (int b = 2; b <= 4; ++b) {
    for (int level = 1; level <= 3; ++level) {
      const Word w = prouhet_word(b, level);
      CHECK(w.size() == static_cast<std::size_t>(std::pow(b, level)));
      CHECK(max_regularity(w) >= level - 2);
    }
  }
  CHECK_THROWS_AS(prouhet_word(1, 2), PreconditionError);
}

TEST_CASE("swap") {
  // ABBA|BAAB: swapping the two 1-regular halves keeps 2-regularity.
  const Word w = parse_word("ABBABAAB");
  CHECK(swap({w, {0, 4}, {4, 4}}, 2).str() == "BAABABBA");
  // Single letters are (-1)-regular, so 0-regular words allow any two letters to swap when y is too.
  CHECK(swap({parse_word("ABBA"), {0, 1}, {1, 1}}, 0).str() == "BABA");
  CHECK_THROWS_AS(swap({w, {0, 4}, {4, 4}}, 3), PreconditionError);
  CHECK_THROWS_AS(swap({w, {0, 2}, {1, 2}}, 1), PreconditionError);
  CHECK_THROWS_AS(swap({w, {0, 2}, {7, 2}}, 1), PreconditionError);
  CHECK_THROWS_AS(swap({w, {0, 3}, {4, 4}}, 2), PreconditionError);
}

TEST_CASE("swap preserves regularity whenever it applies") {
  std::mt19937_64 rng(17);
  const std::vector<Word> pool{parse_word("ABBABAAB"), parse_word("ABBABAABBAABABBA"), parse_word("ABABBBAAABAB"),
                               parse_word("ABCCBA"), parse_word("ABCBCACAB"), thue_morse(32)};
  int applied = 0;
  for (const auto& w : pool) {
    const int r = max_regularity(w);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t m = w.size();
      std::size_t a = rng() % m, b = rng() % m, c = rng() % m, d = rng() % m;
      std::size_t cuts[] = {a, b, c, d};
      std::sort(cuts, cuts + 4);
      if (cuts[0] == cuts[1] || cuts[2] == cuts[3]) continue;
      const SwapSpec spec{w, {cuts[0], cuts[1] - cuts[0]}, {cuts[2], cuts[3] - cuts[2]}};
      for (int k = 0; k <= r; ++k) {
        std::optional<Word> out;
        try {
          out = swap(spec, k);
        } catch (const PreconditionError&) {
          continue;
        }
        CHECK(max_regularity(*out) >= k);
        ++applied;
      }
    }
  }
  CHECK(applied > 0);
}

TEST_CASE("concat, split and shuffle") {
  CHECK(concat(parse_word("ABBA"), parse_word("BAAB")).str() == "ABBABAAB");
  CHECK_THROWS_AS(concat(parse_word("AB"), parse_word("AB", 3)), PreconditionError);

  const auto pieces = k_split({parse_word("ABBABAAB"), {4}}, 1);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].str() == "ABBA");
  CHECK(pieces[1].str() == "BAAB");
  try {
    k_split({parse_word("ABBABAAB"), {2, 4}}, 1);
    FAIL("expected a split error");
  } catch (const SplitError& e) {
    CHECK(e.piece() == 0);
  }
  CHECK_THROWS_AS(k_split({parse_word("ABBA"), {3, 2}}, 0), PreconditionError);
  CHECK_THROWS_AS(k_split({parse_word("ABBA"), {4}}, 0), PreconditionError);

  CHECK(shuffle({parse_word("AB", 3), parse_word("BC", 3), parse_word("CA", 3)}).str() == "ABCBCA");
  CHECK(shuffle({parse_word("ABBA"), parse_word("BAAB")}).str() == "ABBABAAB");
  CHECK(shuffle({parse_word("ABBA"), parse_word("ABBA")}).str() == "AABBBBAA");
  CHECK_THROWS_AS(shuffle({}), PreconditionError);
  CHECK_THROWS_AS(shuffle({parse_word("AB"), parse_word("ABBA")}), PreconditionError);
}

TEST_CASE("concatenation and shuffling keep the common regularity") {
  std::vector<Word> two;
  for (const auto& w : enumerate_pte(SearchSpec{8, 2, 1}).words) two.push_back(w);
  for (const auto& w : enumerate_pte(SearchSpec{12, 2, 1}).words) two.push_back(w);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const Word& a = two[rng() % two.size()];
    const Word& b = two[rng() % two.size()];
    const int r = std::min(max_regularity(a), max_regularity(b));
    CHECK(max_regularity(concat(a, b)) >= r);
    if (a.size() == b.size()) CHECK(max_regularity(shuffle({a, b})) >= r);
  }
}

TEST_CASE("reduce_by_swaps") {
  CHECK(reduce_by_swaps(parse_word("ABBA")).empty());
  const auto one = reduce_by_swaps(parse_word("BAAB"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].result.str() == "ABBA");
  CHECK_THROWS_AS(reduce_by_swaps(parse_word("ABAB")), PreconditionError);
  CHECK_THROWS_AS(reduce_by_swaps(parse_word("ABCCBA")), PreconditionError);

  for (int k = 1; k <= 4; ++k) {
    for (const auto& w : enumerate_pte(SearchSpec{4 * k, 2, 1, false}).words) {
      const auto steps = reduce_by_swaps(w);
      Word current = w;
      for (const auto& step : steps) {
        CHECK(step.ba_begin + 2 <= step.ab_begin);
        CHECK(current[step.ba_begin] == 2);
        CHECK(current[step.ba_begin + 1] == 1);
        CHECK(current[step.ab_begin] == 1);
        CHECK(current[step.ab_begin + 1] == 2);
        CHECK(max_regularity(step.result) >= 1);
        CHECK(step.result < current);
        current = step.result;
      }
      CHECK(current == target_form(static_cast<std::size_t>(k)));
    }
  }
}

TEST_CASE("swap orbit of the target form is all of PTE(4k, 2, 1)") {
  for (int k = 1; k <= 3; ++k) {
    const auto orbit = ab_swap_orbit(target_form(static_cast<std::size_t>(k)));
    const auto words = enumerate_pte(SearchSpec{4 * k, 2, 1, false}).words;
    CHECK(std::vector<Word>(orbit.begin(), orbit.end()) == words);
  }
}

TEST_CASE("two-letter constructions") {
  for (int r = 2; r <= 5; ++r) {
    const std::size_t unit = std::size_t{1} << r;
    for (std::size_t k = 2; k <= 6; ++k) {
      const Word w = construct_two_letter(k * unit, r);
      CHECK(w.size() == k * unit);
      CHECK(max_regularity(w) >= r);
    }
    CHECK_THROWS_AS(construct_two_letter(unit, r), PreconditionError);
    CHECK_THROWS_AS(construct_two_letter(unit * 2 + 1, r), PreconditionError);
  }
  CHECK_THROWS_AS(construct_two_letter(8, 1), PreconditionError);
}

TEST_CASE("three-letter constructions") {
  for (int r = 1; r <= 4; ++r) {
    const std::size_t unit = r == 1 ? 3 : r == 2 ? 9 : 2 * static_cast<std::size_t>(std::pow(3, r - 1));
    for (std::size_t k = 2; k <= 5; ++k) {
      const Word w = construct_three_letter(k * unit, r);
      CHECK(w.size() == k * unit);
      CHECK(w.alphabet_size() == 3);
      CHECK(max_regularity(w) >= r);
    }
    CHECK_THROWS_AS(construct_three_letter(unit, r), PreconditionError);
  }
  CHECK_THROWS_AS(construct_three_letter(6, 0), PreconditionError);
}

TEST_CASE("fixtures") {
  CHECK(max_regularity(fixtures::two_letter_eight()) == 2);
  CHECK(max_regularity(fixtures::two_letter_twelve()) == 2);
  CHECK(max_regularity(fixtures::three_letter_six()) == 1);
  CHECK(max_regularity(fixtures::three_letter_nine()) == 1);
  CHECK(max_regularity(fixtures::three_letter_eighteen()) == 2);
  CHECK(max_regularity(fixtures::three_letter_twenty_seven()) == 2);
  CHECK(max_regularity(fixtures::three_letter_thirty_six()) == 3);
  CHECK(max_regularity(fixtures::three_letter_fifty_four()) == 3);
}

TEST_CASE("switch_count") {
  CHECK(switch_count(parse_word("ABBABAAB")) == 5);
  CHECK(switch_count(parse_word("A")) == 0);
  CHECK(switch_count(parse_word("AABB")) == 1);
}

#include "pte/word_ops.hpp"

#include <bit>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

#include "pte/error.hpp"

namespace pte {

namespace {

constexpr Letter kA = 1;
constexpr Letter kB = 2;

// Empty words and one-letter alphabets satisfy every regularity condition.
bool regular_or_empty(const Word& w, int k) {
  if (k < 0 || w.empty() || w.alphabet_size() == 1) return true;
  return max_regularity(w) >= k;
}

void require_two_letter_one_regular(const Word& w) {
  if (w.alphabet_size() != 2) throw PreconditionError("word must be over a two-letter alphabet");
  if (w.empty() || max_regularity(w) < 1) throw PreconditionError("word must be 1-regular");
}

// k >= 2 as 2 * twos + 3 * threes, with as many twos as possible.
std::pair<std::size_t, std::size_t> twos_and_threes(std::size_t k) {
  if (k % 2 == 0) return {k / 2, 0};
  return {(k - 3) / 2, 1};
}

Word repeat_concat(const Word& two_piece, std::size_t twos, const Word& three_piece, std::size_t threes) {
  Word out(two_piece.alphabet_size(), {});
  for (std::size_t i = 0; i < twos; ++i) out = concat(out, two_piece);
  for (std::size_t i = 0; i < threes; ++i) out = concat(out, three_piece);
  return out;
}

std::size_t ipow(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

Word apply_latin(const LatinSquare& square, const Word& w) {
  if (square.size() != w.alphabet_size()) {
    throw PreconditionError("Latin square of size " + std::to_string(square.size()) +
                            " does not match alphabet size " + std::to_string(w.alphabet_size()));
  }
  const auto perms = as_permutations(is_normalized(square) ? square : normalize(square));
  std::vector<Letter> out;
  out.reserve(w.size() * perms.size());
  for (const auto& pi : perms) {
    for (Letter x : w.letters()) out.push_back(pi[static_cast<std::size_t>(x - 1)]);
  }
  return Word(w.alphabet_size(), std::move(out));
}

Word swap(const SwapSpec& spec, int r) {
  const Word& word = spec.word;
  if (spec.v.length == 0 || spec.w.length == 0) throw PreconditionError("swap: v and w must be nonempty");
  if (spec.v.end() > spec.w.begin) throw PreconditionError("swap: v must end before w begins");
  if (spec.w.end() > word.size()) throw PreconditionError("swap: w extends past the end of the word");

  if (!regular_or_empty(word, r)) {
    throw PreconditionError("swap: word is not " + std::to_string(r) + "-regular");
  }
  const Word v = word.subword(spec.v.begin, spec.v.length);
  const Word w = word.subword(spec.w.begin, spec.w.length);
  const Word y = word.subword(spec.v.end(), spec.w.begin - spec.v.end());
  const std::string lower = std::to_string(r - 1) + "-regular";
  if (!regular_or_empty(v, r - 1)) throw PreconditionError("swap: v is not " + lower);
  if (!regular_or_empty(w, r - 1)) throw PreconditionError("swap: w is not " + lower);
  if (v.size() != w.size() && !regular_or_empty(y, r - 1)) {
    throw PreconditionError("swap: |v| != |w| and y is not " + lower);
  }

  std::vector<Letter> out(word.letters().begin(), word.letters().begin() + static_cast<std::ptrdiff_t>(spec.v.begin));
  out.insert(out.end(), w.letters().begin(), w.letters().end());
  out.insert(out.end(), y.letters().begin(), y.letters().end());
  out.insert(out.end(), v.letters().begin(), v.letters().end());
  out.insert(out.end(), word.letters().begin() + static_cast<std::ptrdiff_t>(spec.w.end()), word.letters().end());
  Word result(word.alphabet_size(), std::move(out));
  if (!regular_or_empty(result, r)) throw std::logic_error("swap lost regularity");
  return result;
}

Word concat(const Word& v, const Word& w) {
  if (v.alphabet_size() != w.alphabet_size()) throw PreconditionError("concat: alphabet sizes differ");
  std::vector<Letter> out(v.letters().begin(), v.letters().end());
  out.insert(out.end(), w.letters().begin(), w.letters().end());
  return Word(v.alphabet_size(), std::move(out));
}

std::vector<Word> k_split(const SplitSpec& spec, int k) {
  const std::size_t m = spec.word.size();
  std::size_t previous = 0;
  std::vector<Word> pieces;
  for (std::size_t cut : spec.cuts) {
    if (cut <= previous || cut >= m) {
      throw PreconditionError("split cuts must be strictly ascending and inside (0, " + std::to_string(m) + ")");
    }
    pieces.push_back(spec.word.subword(previous, cut - previous));
    previous = cut;
  }
  pieces.push_back(spec.word.subword(previous, m - previous));
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!regular_or_empty(pieces[i], k)) {
      throw SplitError(i, "piece " + std::to_string(i + 1) + " (" + pieces[i].str() + ") is not " +
                              std::to_string(k) + "-regular");
    }
  }
  return pieces;
}

Word shuffle(const std::vector<Word>& words) {
  if (words.empty()) throw PreconditionError("shuffle needs at least one word");
  const std::size_t length = words.front().size();
  const int b = words.front().alphabet_size();
  for (const auto& w : words) {
    if (w.size() != length) throw PreconditionError("shuffle: words differ in length");
    if (w.alphabet_size() != b) throw PreconditionError("shuffle: alphabet sizes differ");
  }
  std::vector<Letter> out;
  out.reserve(length * words.size());
  for (std::size_t t = 0; t < length; ++t) {
    for (const auto& w : words) out.push_back(w[t]);
  }
  return Word(b, std::move(out));
}

std::vector<SwapStep> reduce_by_swaps(const Word& w) {
  require_two_letter_one_regular(w);
  std::vector<Letter> letters(w.letters().begin(), w.letters().end());
  const std::size_t m = letters.size();
  auto is_pair = [&](std::size_t i, Letter first, Letter second) {
    return letters[i] == first && letters[i + 1] == second;
  };

  std::vector<SwapStep> steps;
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> move;
    for (std::size_t i = 0; i + 3 < m && !move; ++i) {
      if (!is_pair(i, kB, kA)) continue;
      for (std::size_t j = i + 2; j + 1 < m; ++j) {
        if (is_pair(j, kA, kB)) {
          move = {i, j};
          break;
        }
      }
    }
    if (!move) break;
    const auto [i, j] = *move;
    letters[i] = kA;
    letters[i + 1] = kB;
    letters[j] = kB;
    letters[j + 1] = kA;
    steps.push_back({i, j, Word(2, letters)});
  }

  const std::size_t k = m / 4;
  for (std::size_t i = 0; i < m; ++i) {
    const Letter expected = (i < k || i >= 3 * k) ? kA : kB;
    if (letters[i] != expected) throw std::logic_error("swap reduction did not reach A^k B^2k A^k");
  }
  return steps;
}

std::set<Word> ab_swap_orbit(const Word& w) {
  if (w.alphabet_size() != 2) throw PreconditionError("word must be over a two-letter alphabet");
  std::set<Word> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    const Word current = std::move(queue.front());
    queue.pop_front();
    const std::size_t m = current.size();
    for (std::size_t i = 0; i + 3 < m; ++i) {
      if (current[i] == current[i + 1]) continue;
      for (std::size_t j = i + 2; j + 1 < m; ++j) {
        if (current[j] != current[i + 1] || current[j + 1] != current[i]) continue;
        std::vector<Letter> next(current.letters().begin(), current.letters().end());
        std::swap(next[i], next[i + 1]);
        std::swap(next[j], next[j + 1]);
        Word candidate(2, std::move(next));
        if (seen.insert(candidate).second) queue.push_back(std::move(candidate));
      }
    }
  }
  return seen;
}

Word thue_morse(std::size_t length) {
  if (length < 1) throw PreconditionError("Thue-Morse length must be at least 1");
  std::vector<Letter> out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = static_cast<Letter>(std::popcount(i) % 2 + 1);
  return Word(2, std::move(out));
}

Word prouhet_word(int b, int level) {
  if (b < 2 || level < 1) throw PreconditionError("prouhet_word needs b >= 2 and level >= 1");
  const LatinSquare square = cyclic_square(b);
  Word w(b, {kA});
  for (int i = 0; i < level; ++i) w = apply_latin(square, w);
  return w;
}

Word construct_two_letter(std::size_t n, int r) {
  if (r < 2) throw PreconditionError("construct_two_letter needs r >= 2");
  const std::size_t unit = ipow(2, r);
  if (n % unit != 0 || n / unit < 2) {
    throw PreconditionError("length " + std::to_string(n) + " is not k * 2^" + std::to_string(r) + " with k >= 2");
  }
  if (r == 2) {
    const auto [twos, threes] = twos_and_threes(n / unit);
    return repeat_concat(fixtures::two_letter_eight(), twos, fixtures::two_letter_twelve(), threes);
  }
  return apply_latin(cyclic_square(2), construct_two_letter(n / 2, r - 1));
}

Word construct_three_letter(std::size_t n, int r) {
  auto out_of_range = [&] {
    return PreconditionError("no three-letter construction for length " + std::to_string(n) +
                             " and regularity " + std::to_string(r));
  };
  if (r == 1) {
    if (n % 3 != 0 || n / 3 < 2) throw out_of_range();
    const auto [twos, threes] = twos_and_threes(n / 3);
    return repeat_concat(fixtures::three_letter_six(), twos, fixtures::three_letter_nine(), threes);
  }
  if (r == 2) {
    if (n % 9 != 0 || n / 9 < 2) throw out_of_range();
    const auto [twos, threes] = twos_and_threes(n / 9);
    return repeat_concat(fixtures::three_letter_eighteen(), twos, fixtures::three_letter_twenty_seven(), threes);
  }
  if (r >= 3) {
    const std::size_t unit = 2 * ipow(3, r - 1);
    if (n % unit != 0 || n / unit < 2) throw out_of_range();
    if (r == 3) {
      const auto [twos, threes] = twos_and_threes(n / unit);
      return repeat_concat(fixtures::three_letter_thirty_six(), twos, fixtures::three_letter_fifty_four(), threes);
    }
    return apply_latin(cyclic_square(3), construct_three_letter(n / 3, r - 1));
  }
  throw out_of_range();
}

std::size_t switch_count(const Word& w) {
  std::size_t switches = 0;
  for (std::size_t i = 1; i < w.size(); ++i) switches += w[i] != w[i - 1];
  return switches;
}

namespace fixtures {

// Unique member of PTE(8,2,2).
Word two_letter_eight() { return parse_word("ABBABAAB"); }
// Unique member of PTE(12,2,2).
Word two_letter_twelve() { return parse_word("ABABBBAAABAB"); }
// Unique member of PTE(6,3,1).
Word three_letter_six() { return parse_word("ABCCBA"); }
// Lexicographically first of the two members of PTE(9,3,1).
Word three_letter_nine() { return parse_word("ABCBCACAB"); }
// Lexicographically first of the nine members of PTE(18,3,2).
Word three_letter_eighteen() { return parse_word("ABBCCACCAABBBACBAC"); }
// Lexicographically first of the 694 members of PTE(27,3,2).
Word three_letter_twenty_seven() { return parse_word("AABBCBCCCCAABBCABACABABABCC"); }
// Lexicographically first of the 152 members of PTE(36,3,3).
Word three_letter_thirty_six() { return parse_word("AABBCCCBCBCACABABAABABACACBCBCCCBBAA"); }
// The cyclic 3x3 expansion of three_letter_eighteen(); 3-regular.
Word three_letter_fifty_four() {
  return parse_word("ABBCCACCAABBBACBACBCCAABAABBCCCBACBACAABBCBBCCAAACBACB");
}

}  // namespace fixtures

}  // namespace pte

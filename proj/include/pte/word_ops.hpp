#pragma once

// Regularity-raising and regularity-preserving transformations of words.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "pte/error.hpp"
#include "pte/latin.hpp"
#include "pte/word.hpp"

namespace pte {

// L(w) = w pi_2(w) ... pi_b(w). An un-normalized square is normalized first.
Word apply_latin(const LatinSquare& square, const Word& w);

// Half-open, 0-based range of positions.
struct Span {
  std::size_t begin = 0;
  std::size_t length = 0;
  std::size_t end() const noexcept { return begin + length; }
};

// The word splits as x v y w z; v and w are given, x, y and z are what lies
// around them.
struct SwapSpec {
  Word word;
  Span v;
  Span w;
};

// Returns x w y v z. Requires the word to be r-regular, v and w (r-1)-regular,
// and either |v| = |w| or y (r-1)-regular. Throws PreconditionError naming the
// failed clause.
Word swap(const SwapSpec& spec, int r);

// Throws PreconditionError on alphabet mismatch.
Word concat(const Word& v, const Word& w);

struct SplitSpec {
  Word word;
  std::vector<std::size_t> cuts;  // strictly ascending, each in (0, m)
};

class SplitError : public PreconditionError {
 public:
  SplitError(std::size_t piece, const std::string& what)
      : PreconditionError(what), piece_(piece) {}
  // 0-based index of the first piece that is not k-regular.
  std::size_t piece() const noexcept { return piece_; }

 private:
  std::size_t piece_;
};

std::vector<Word> k_split(const SplitSpec& spec, int k);

// Letter t of word i lands at position t k + i (0-based) for k words.
Word shuffle(const std::vector<Word>& words);

struct SwapStep {
  std::size_t ba_begin = 0;  // 0-based start of the BA that moves right
  std::size_t ab_begin = 0;  // 0-based start of the AB that moves left
  Word result;
};

// Descends a 1-regular two-letter word to A^k B^2k A^k through AB/BA swaps,
// always taking the leftmost BA that has an AB to its right and the nearest
// such AB.
std::vector<SwapStep> reduce_by_swaps(const Word& w);

// Every word reachable from w by exchanging a disjoint AB and BA pair.
std::set<Word> ab_swap_orbit(const Word& w);

Word thue_morse(std::size_t length);
Word prouhet_word(int b, int level);

// r-regular two-letter word of length n = k 2^r, k >= 2, r >= 2.
Word construct_two_letter(std::size_t n, int r);
// Three-letter words: r = 1 with n = 3k; r = 2 with n = 9k; r >= 3 with
// n = 2k 3^(r-1); always k >= 2.
Word construct_three_letter(std::size_t n, int r);

std::size_t switch_count(const Word& w);

// Verified base words used by the constructions.
namespace fixtures {
Word two_letter_eight();
Word two_letter_twelve();
Word three_letter_six();
Word three_letter_nine();
Word three_letter_eighteen();
Word three_letter_twenty_seven();
Word three_letter_thirty_six();
Word three_letter_fifty_four();
}  // namespace fixtures

}  // namespace pte

#pragma once

// Words over a finite ordered alphabet and the partitions of [m] they encode.
//
// A word w = a_1 a_2 ... a_m over letters {1..b} encodes the partition of
// {1..m} whose t-th block holds the positions carrying letter t. Positions are
// 1-based throughout; letter 1 prints as 'A'.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pte/bigint.hpp"

namespace pte {

using Letter = int;

class Word {
 public:
  Word() = default;
  // Throws PreconditionError if alphabet_size < 1 or a letter is outside [1, alphabet_size].
  Word(int alphabet_size, std::vector<Letter> letters);

  int alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  std::span<const Letter> letters() const noexcept { return letters_; }
  // 0-based access.
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }

  // Letters as 'A'..'Z', no separators. Throws PreconditionError when b > 26.
  std::string str() const;

  Word subword(std::size_t begin, std::size_t length) const;

  friend bool operator==(const Word&, const Word&) = default;
  // Lexicographic on letters, then alphabet size.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  int alphabet_size_ = 1;
  std::vector<Letter> letters_;
};

// Sorted blocks of integers. For words the universe is {1..universe_size};
// affine images keep universe_size but hold the mapped values.
struct Partition {
  std::int64_t universe_size = 0;
  std::vector<std::vector<std::int64_t>> blocks;

  std::size_t block_count() const noexcept { return blocks.size(); }
  friend bool operator==(const Partition&, const Partition&) = default;
};

// Exact power sums S_{w,x}^{(j)} for letters x = 1..b and degrees j = 0..degree.
class PowerSumTable {
 public:
  PowerSumTable(int alphabet_size, int degree);

  int alphabet_size() const noexcept { return alphabet_size_; }
  int degree() const noexcept { return degree_; }
  const BigInt& at(Letter letter, int j) const { return sums_[index(letter, j)]; }
  BigInt& at(Letter letter, int j) { return sums_[index(letter, j)]; }
  // True when column j is the same for every letter.
  bool column_constant(int j) const;

 private:
  std::size_t index(Letter letter, int j) const;

  int alphabet_size_;
  int degree_;
  std::vector<BigInt> sums_;
};

// Parses 'A'..'Z' with whitespace ignored. alphabet_size defaults to the
// highest rank present (at least 1).
Word parse_word(std::string_view text, std::optional<int> alphabet_size = std::nullopt);

Partition word_to_partition(const Word& w);
// Throws PreconditionError unless the blocks partition {1..universe_size}.
Word partition_to_word(const Partition& p);

PowerSumTable power_sums(const Word& w, int degree);

// Largest r >= -1 such that w is r-regular. Throws PreconditionError for b = 1.
int max_regularity(const Word& w);
// Same notion over arbitrary integer blocks, e.g. an affine image.
int max_regularity(const Partition& p);

bool is_regular(const Word& w, int r);

// Relabels letters so first occurrences appear in alphabetical order.
Word canonicalize(const Word& w);
bool is_canonical(const Word& w);

// x -> a + n x on every element. Throws PreconditionError for n = 0.
Partition affine_map(const Partition& p, std::int64_t a, std::int64_t n);

// Sum of t^j for t = 1..m.
BigInt power_prefix_sum(std::int64_t m, int j);

}  // namespace pte

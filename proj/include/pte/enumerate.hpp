#pragma once

// Exhaustive enumeration of PTE(m, b, r): the r-regular words of length m
// over b letters.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pte/word.hpp"

namespace pte {

// `first` stops at the first word the search meets, which need not be the
// lexicographically smallest one.
enum class SearchMode { count, list, first };

struct SearchSpec {
  int m = 0;
  int b = 2;
  int r = 0;
  bool canonical_only = true;  // one representative per letter relabeling
  SearchMode mode = SearchMode::list;
  int jobs = 1;
};

struct SearchResult {
  std::uint64_t count = 0;
  std::vector<Word> words;  // lexicographic; empty in count mode
  // Set when b does not divide m (or some power total) and r >= 0.
  bool divisibility_empty = false;
};

// Throws PreconditionError unless m >= 0, b >= 2, r >= -1, jobs >= 1.
SearchResult enumerate_pte(const SearchSpec& spec);

// Streams matching words in lexicographic order. Returning false stops the search.
void enumerate_pte(const SearchSpec& spec, const std::function<bool(const Word&)>& sink);

std::uint64_t count_pte(const SearchSpec& spec);

// Smallest multiple m of b with m <= cap and PTE(m, b, r) nonempty.
std::optional<int> min_length(int b, int r, int cap, int jobs = 1);

// Naive check of all b^m words through max_regularity, without pruning.
// Throws PreconditionError when b^m > 10^8.
std::vector<Word> brute_force_oracle(int m, int b, int r, bool canonical_only = true);

}  // namespace pte

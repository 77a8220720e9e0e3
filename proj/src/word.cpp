#include "pte/word.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "pte/error.hpp"

namespace pte {

namespace {

// True when every partial sum of t^j for t <= m stays below 2^62.
bool fits_int64(std::int64_t m, int j) {
  long double bound = std::pow(static_cast<long double>(m), j + 1);
  return bound < 4.0e18L;
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Column j of the power-sum table, one entry per letter.
std::vector<BigInt> letter_column(const Word& w, int j) {
  const auto b = static_cast<std::size_t>(w.alphabet_size());
  const auto m = static_cast<std::int64_t>(w.size());
  std::vector<BigInt> out(b);
  if (fits_int64(m, j)) {
    std::vector<std::int64_t> acc(b, 0);
    for (std::int64_t t = 1; t <= m; ++t) acc[w[t - 1] - 1] += ipow(t, j);
    for (std::size_t x = 0; x < b; ++x) out[x] = acc[x];
  } else {
    for (std::int64_t t = 1; t <= m; ++t) {
      out[w[t - 1] - 1] += boost::multiprecision::pow(BigInt(t), static_cast<unsigned>(j));
    }
  }
  return out;
}

bool all_equal(const std::vector<BigInt>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

Word::Word(int alphabet_size, std::vector<Letter> letters)
    : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
  if (alphabet_size_ < 1) throw PreconditionError("alphabet size must be at least 1");
  for (Letter x : letters_) {
    if (x < 1 || x > alphabet_size_) {
      throw PreconditionError("letter " + std::to_string(x) + " outside alphabet of size " +
                              std::to_string(alphabet_size_));
    }
  }
}

std::string Word::str() const {
  if (alphabet_size_ > 26) throw PreconditionError("text form supports at most 26 letters");
  std::string out;
  out.reserve(letters_.size());
  for (Letter x : letters_) out.push_back(static_cast<char>('A' + x - 1));
  return out;
}

Word Word::subword(std::size_t begin, std::size_t length) const {
  if (begin + length > letters_.size()) throw PreconditionError("subword out of range");
  return Word(alphabet_size_, {letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                               letters_.begin() + static_cast<std::ptrdiff_t>(begin + length)});
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                      b.letters_.begin(), b.letters_.end());
      c != 0) {
    return c;
  }
  return a.alphabet_size_ <=> b.alphabet_size_;
}

PowerSumTable::PowerSumTable(int alphabet_size, int degree)
    : alphabet_size_(alphabet_size),
      degree_(degree),
      sums_(static_cast<std::size_t>(alphabet_size) * static_cast<std::size_t>(degree + 1)) {
  if (degree < 0) throw PreconditionError("power-sum degree must be non-negative");
}

std::size_t PowerSumTable::index(Letter letter, int j) const {
  if (letter < 1 || letter > alphabet_size_ || j < 0 || j > degree_) {
    throw PreconditionError("power-sum table index out of range");
  }
  return static_cast<std::size_t>(letter - 1) * static_cast<std::size_t>(degree_ + 1) +
         static_cast<std::size_t>(j);
}

bool PowerSumTable::column_constant(int j) const {
  for (Letter x = 2; x <= alphabet_size_; ++x) {
    if (at(x, j) != at(1, j)) return false;
  }
  return true;
}

Word parse_word(std::string_view text, std::optional<int> alphabet_size) {
  std::vector<Letter> letters;
  int highest = 1;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c < 'A' || c > 'Z') {
      throw ParseError(std::string("invalid character '") + c + "' in word");
    }
    const Letter x = c - 'A' + 1;
    highest = std::max(highest, x);
    letters.push_back(x);
  }
  if (alphabet_size) {
    if (*alphabet_size < 1) throw ParseError("alphabet size must be at least 1");
    if (highest > *alphabet_size && !letters.empty()) {
      throw ParseError("letter " + std::string(1, static_cast<char>('A' + highest - 1)) +
                       " exceeds alphabet size " + std::to_string(*alphabet_size));
    }
    return Word(*alphabet_size, std::move(letters));
  }
  return Word(highest, std::move(letters));
}

Partition word_to_partition(const Word& w) {
  Partition p;
  p.universe_size = static_cast<std::int64_t>(w.size());
  p.blocks.resize(static_cast<std::size_t>(w.alphabet_size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    p.blocks[static_cast<std::size_t>(w[i] - 1)].push_back(static_cast<std::int64_t>(i + 1));
  }
  return p;
}

Word partition_to_word(const Partition& p) {
  if (p.blocks.empty()) throw PreconditionError("partition needs at least one block");
  const std::int64_t m = p.universe_size;
  if (m < 0) throw PreconditionError("negative universe size");
  std::vector<Letter> letters(static_cast<std::size_t>(m), 0);
  for (std::size_t t = 0; t < p.blocks.size(); ++t) {
    for (std::int64_t i : p.blocks[t]) {
      if (i < 1 || i > m) {
        throw PreconditionError("index " + std::to_string(i) + " outside [1.." +
                                std::to_string(m) + "]");
      }
      auto& slot = letters[static_cast<std::size_t>(i - 1)];
      if (slot != 0) throw PreconditionError("index " + std::to_string(i) + " in two blocks");
      slot = static_cast<Letter>(t + 1);
    }
  }
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == 0) throw PreconditionError("index " + std::to_string(i + 1) + " missing");
  }
  return Word(static_cast<int>(p.blocks.size()), std::move(letters));
}

PowerSumTable power_sums(const Word& w, int degree) {
  PowerSumTable table(w.alphabet_size(), degree);
  for (int j = 0; j <= degree; ++j) {
    auto column = letter_column(w, j);
    for (Letter x = 1; x <= w.alphabet_size(); ++x) table.at(x, j) = std::move(column[x - 1]);
  }
  return table;
}

int max_regularity(const Word& w) {
  const auto b = static_cast<std::size_t>(w.alphabet_size());
  if (b == 1) throw PreconditionError("regularity is unbounded for a one-letter alphabet");
  const std::size_t m = w.size();
  if (m == 0 || m % b != 0) return -1;
  int r = -1;
  // PTE(m, b, m/b) is empty, so the answer is below m/b.
  for (int j = 0; static_cast<std::size_t>(j) < m / b; ++j) {
    if (!all_equal(letter_column(w, j))) break;
    r = j;
  }
  return r;
}

int max_regularity(const Partition& p) {
  const std::size_t b = p.blocks.size();
  if (b < 2) throw PreconditionError("regularity is unbounded for a one-block partition");
  std::size_t m = 0;
  for (const auto& block : p.blocks) m += block.size();
  if (m == 0 || m % b != 0) return -1;
  int r = -1;
  for (int j = 0; static_cast<std::size_t>(j) < m / b; ++j) {
    std::vector<BigInt> column(b);
    for (std::size_t t = 0; t < b; ++t) {
      for (std::int64_t x : p.blocks[t]) {
        column[t] += boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(j));
      }
    }
    if (!all_equal(column)) break;
    r = j;
  }
  return r;
}

bool is_regular(const Word& w, int r) { return r < 0 || max_regularity(w) >= r; }

Word canonicalize(const Word& w) {
  std::vector<Letter> relabel(static_cast<std::size_t>(w.alphabet_size()) + 1, 0);
  Letter next = 1;
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter x : w.letters()) {
    if (relabel[x] == 0) relabel[x] = next++;
    out.push_back(relabel[x]);
  }
  return Word(w.alphabet_size(), std::move(out));
}

bool is_canonical(const Word& w) {
  Letter highest = 0;
  for (Letter x : w.letters()) {
    if (x > highest + 1) return false;
    highest = std::max(highest, x);
  }
  return true;
}

Partition affine_map(const Partition& p, std::int64_t a, std::int64_t n) {
  if (n == 0) throw PreconditionError("affine scale must be nonzero");
  Partition out;
  out.universe_size = p.universe_size;
  out.blocks.reserve(p.blocks.size());
  for (const auto& block : p.blocks) {
    std::vector<std::int64_t> mapped;
    mapped.reserve(block.size());
    for (std::int64_t x : block) mapped.push_back(a + n * x);
    std::sort(mapped.begin(), mapped.end());
    out.blocks.push_back(std::move(mapped));
  }
  return out;
}

BigInt power_prefix_sum(std::int64_t m, int j) {
  BigInt total = 0;
  for (std::int64_t t = 1; t <= m; ++t) {
    total += boost::multiprecision::pow(BigInt(t), static_cast<unsigned>(j));
  }
  return total;
}

}  // namespace pte

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "pte/enumerate.hpp"
#include "pte/latin.hpp"
#include "pte/pouring.hpp"
#include "pte/word.hpp"
#include "pte/word_ops.hpp"

using namespace pte;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  std::ostringstream failures;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures << "\n    failed: " << what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

bool nonempty(int m, int b, int r) {
  SearchSpec spec{m, b, r};
  spec.mode = SearchMode::first;
  spec.jobs = jobs();
  return enumerate_pte(spec).count > 0;
}

std::uint64_t count(int m, int b, int r) {
  SearchSpec spec{m, b, r};
  spec.mode = SearchMode::count;
  spec.jobs = jobs();
  return count_pte(spec);
}

Word target_form(std::size_t k) {
  std::vector<Letter> letters(4 * k, 2);
  for (std::size_t i = 0; i < k; ++i) letters[i] = letters[4 * k - 1 - i] = 1;
  return Word(2, letters);
}

void worked_examples(Check& c) {
  const auto start = Clock::now();
  c.expect(max_regularity(parse_word("ABBA")) == 1, "ABBA");
  c.expect(max_regularity(parse_word("ABBABAAB")) == 2, "ABBABAAB");
  c.expect(max_regularity(parse_word("ABBABAABBAABABBA")) == 3, "ABBABAABBAABABBA");
  c.expect(max_regularity(parse_word("ABABBBAAABAB")) == 2, "ABABBBAAABAB");
  c.expect(max_regularity(parse_word("ABCCBA")) == 1, "ABCCBA");
  c.expect(apply_latin(cyclic_square(2), parse_word("ABBABAAB")).str() == "ABBABAABBAABABBA", "L0(ABBABAAB)");
  const auto l2 = latin_from_rows({{1, 3, 2}, {2, 1, 3}, {3, 2, 1}});
  c.expect(apply_latin(l2, parse_word("AB", 3)).str() == "ABCABC", "L2(AB)");
  c.expect(shuffle({parse_word("AB", 3), parse_word("BC", 3), parse_word("CA", 3)}).str() == "ABCBCA", "AB^BC^CA");
  c.expect(shuffle({parse_word("ABBA"), parse_word("BAAB")}).str() == "ABBABAAB", "ABBA^BAAB");
  c.expect(shuffle({parse_word("ABBA"), parse_word("ABBA")}).str() == "AABBBBAA", "ABBA^ABBA");
  const double t = seconds_since(start);
  c.expect(t < 1.0, "runtime " + std::to_string(t) + " s >= 1 s");
}

void search_counts(Check& c) {
  for (auto [m, b, r] : std::vector<std::tuple<int, int, int>>{{2, 2, 0}, {4, 2, 1}, {8, 2, 2}, {16, 2, 3}, {6, 3, 1}}) {
    c.expect(count(m, b, r) == 1, "#PTE(" + std::to_string(m) + "," + std::to_string(b) + "," + std::to_string(r) + ") = 1");
  }
  c.expect(count(4, 2, 2) == 0, "PTE(4,2,2) empty");
  c.expect(count(9, 3, 2) == 0, "PTE(9,3,2) empty");

  auto start = Clock::now();
  const auto nine = count(18, 3, 2);
  double t = seconds_since(start);
  c.expect(nine == 9, "#PTE(18,3,2) = " + std::to_string(nine));
  c.expect(t < 10.0, "PTE(18,3,2) took " + std::to_string(t) + " s");

  start = Clock::now();
  const auto big = count(36, 3, 3);
  t = seconds_since(start);
  c.expect(big == 152, "#PTE(36,3,3) = " + std::to_string(big));
  c.expect(t < 600.0, "PTE(36,3,3) took " + std::to_string(t) + " s");
}

void existence_shapes(Check& c) {
  for (int m = 1; m <= 40; ++m) {
    const std::string at = " at m=" + std::to_string(m);
    c.expect(nonempty(m, 2, 1) == (m % 4 == 0), "b=2 r=1" + at);
    c.expect(nonempty(m, 2, 2) == (m % 4 == 0 && m >= 8), "b=2 r=2" + at);
    c.expect(nonempty(m, 3, 1) == (m % 3 == 0 && m >= 6), "b=3 r=1" + at);
    c.expect(nonempty(m, 3, 2) == (m % 9 == 0 && m >= 18), "b=3 r=2" + at);
  }
}

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

void expansion_lift(Check& c) {
  for (int b = 2; b <= 3; ++b) {
    std::vector<LatinSquare> squares;
    for_each_latin_square(b, true, [&](const LatinSquare& s) {
      squares.push_back(s);
      return true;
    });
    for (std::size_t m = 1; m <= 8; ++m) {
      for (const auto& w : all_words(b, m)) {
        const int r = max_regularity(w);
        for (const auto& s : squares) {
          const int lifted = max_regularity(apply_latin(s, w));
          if (lifted < r + 1) c.expect(false, "lift fails for " + w.str());
          if (det_exact(encoding_matrix(s)) != 0 && lifted != r + 1) c.expect(false, "converse fails for " + w.str());
        }
      }
    }
  }
  for (const auto& square : {klein_square(), product_group_square(2, 3)}) {
    const auto witness = kernel_witness(square);
    c.expect(witness.has_value(), "kernel witness exists");
    if (!witness) continue;
    const Word w = witness_word(*witness);
    c.expect(max_regularity(w) < 0, "kernel word " + w.str() + " not 0-regular");
    c.expect(max_regularity(apply_latin(square, w)) >= 1, "expansion of " + w.str() + " 1-regular");
  }
  c.expect(max_regularity(apply_latin(klein_square(), parse_word("ADAD", 4))) >= 1, "L(ADAD) 1-regular");
  const Word w = parse_word("BCCBADDA", 4);
  c.expect(max_regularity(w) == 0, "BCCBADDA only 0-regular");
  c.expect(max_regularity(apply_latin(klein_square(), w)) >= 2, "L(BCCBADDA) 2-regular");
}

void latin_algebra(Check& c) {
  for (int n = 2; n <= 8; ++n) {
    const BigInt expected = (n + 1) * boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n - 1)) / 2;
    c.expect(abs(det_exact(cyclic_square(n).as_matrix())) == expected, "cyclic det n=" + std::to_string(n));
  }
  c.expect(det_exact(klein_square().as_matrix()) == 0, "Klein det 0");
  c.expect(det_exact(product_group_square(2, 3).as_matrix()) == 0, "Z2xZ3 det 0");
  c.expect(det_exact(product_group_square(3, 3).as_matrix()) == 0, "Z3xZ3 det 0");
  c.expect(det_exact(seven_singular_square().as_matrix()) == 0, "size-7 det 0");
  // Order 4 is composite and holds the Klein square; the prime orders have none.
  for (int n : {2, 3, 5}) c.expect(search_singular(n, 1).empty(), "no singular square of order " + std::to_string(n));
  const auto four = search_singular(4, 1);
  c.expect(std::find(four.begin(), four.end(), normalize(klein_square())) != four.end(), "order 4 search finds Klein");
  for (int n = 1; n <= 4; ++n) {
    for_each_latin_square(n, false, [&](const LatinSquare& s) {
      if (!encoding_order_three_check(s)) c.expect(false, "E^3 != id at size " + std::to_string(n));
      return true;
    });
  }
  std::mt19937_64 rng(20240607);
  for (int i = 0; i < 1000; ++i) {
    if (!encoding_order_three_check(random_latin_square(7, rng))) c.expect(false, "E^3 != id on a random 7x7");
  }
}

void swap_completeness(Check& c) {
  for (int k = 1; k <= 3; ++k) {
    const auto orbit = ab_swap_orbit(target_form(static_cast<std::size_t>(k)));
    const auto words = enumerate_pte(SearchSpec{4 * k, 2, 1, false}).words;
    c.expect(std::vector<Word>(orbit.begin(), orbit.end()) == words, "orbit = PTE(4k,2,1) for k=" + std::to_string(k));
  }
}

void pouring(Check& c) {
  const std::vector<Word> words{parse_word("ABBA"), parse_word("ABBABAAB"), thue_morse(16), parse_word("ABCCBA"),
                                parse_word("ABBCCACCAABBBACBAC"), fixtures::three_letter_thirty_six(),
                                parse_word("ABABBBAAABAB")};
  for (const auto& w : words) {
    const int r = max_regularity(w);
    for (int degree = 0; degree <= std::min(r, 3); ++degree) {
      std::vector<double> coefficients;
      for (int k = 0; k <= degree; ++k) coefficients.push_back(1.0 / (k + 1) + k);
      const double d = disparity(cup_amounts(Polynomial{coefficients}, w));
      c.expect(d <= 1e-12, "perfect pouring degree " + std::to_string(degree) + " on " + w.str());
    }
  }
  const auto report = verify_pouring(Exponential{1.0}, parse_word("ABBABAAB"));
  c.expect(report.bound && std::abs(*report.bound - 1.0 / 48.0) <= 1e-10, "bound = 1/48");
  c.expect(report.disparity <= 1.0 / 48.0 + 1e-10, "e^-x disparity <= 1/48");
  double previous = INFINITY;
  for (int r = 1; r <= 5; ++r) {
    const double d = disparity(cup_amounts(Exponential{1.0}, thue_morse(std::size_t{2} << r)));
    c.expect(d < previous, "Thue-Morse disparity decreases at r=" + std::to_string(r));
    previous = d;
  }
  c.expect(switch_count(parse_word("ABBABAAB")) == 5, "switch_count(ABBABAAB) = 5");
}

void oracle_equivalence(Check& c) {
  int instances = 0;
  for (int b = 2; b <= 10; ++b) {
    for (int m = 0; std::pow(b, m) <= 1e6; ++m) {
      for (int r = -1; r <= m / b; ++r) {
        for (bool canonical : {true, false}) {
          SearchSpec spec{m, b, r, canonical};
          spec.jobs = jobs();
          const auto fast = enumerate_pte(spec).words;
          const auto slow = brute_force_oracle(m, b, r, canonical);
          ++instances;
          if (fast != slow) {
            c.expect(false, "m=" + std::to_string(m) + " b=" + std::to_string(b) + " r=" + std::to_string(r));
          }
        }
      }
    }
  }
  c.expect(instances > 0, "no instances");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"1 worked examples", worked_examples},
      {"2 search counts", search_counts},
      {"3 existence shapes to 40", existence_shapes},
      {"4 expansion lift", expansion_lift},
      {"5 Latin square algebra", latin_algebra},
      {"6 swap completeness", swap_completeness},
      {"7 pouring", pouring},
      {"8 oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    const auto start = Clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS " : "FAIL ") << name << " (" << seconds_since(start) << " s)" << c.failures.str()
              << std::endl;
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "pte/enumerate.hpp"
#include "pte/error.hpp"
#include "pte/pouring.hpp"
#include "pte/word_ops.hpp"

using namespace pte;

TEST_CASE("cup amounts for monomials") {
  const auto a = cup_amounts(Polynomial{{0, 1}}, parse_word("ABBA"));
  CHECK(a[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(0.25).epsilon(1e-15));
  const auto b = cup_amounts(Polynomial{{0, 0, 1}}, parse_word("ABBABAAB"));
  CHECK(std::abs(b[0] - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(b[1] - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("monomial cups match power sums") {
  // For f = x^j the cup of letter x is sum over its positions of (i^(j+1) - (i-1)^(j+1)) / ((j+1) m^(j+1)).
  for (const auto& w : {parse_word("ABBABAAB"), parse_word("AABCBCCAB"), thue_morse(20)}) {
    const double m = static_cast<double>(w.size());
    for (int j = 0; j <= 4; ++j) {
      std::vector<double> coefficients(static_cast<std::size_t>(j + 1), 0.0);
      coefficients.back() = 1.0;
      const auto exact = cup_amounts(Polynomial{coefficients}, w);
      std::vector<double> direct(static_cast<std::size_t>(w.alphabet_size()), 0.0);
      for (std::size_t i = 0; i < w.size(); ++i) {
        direct[static_cast<std::size_t>(w[i] - 1)] +=
            (std::pow((i + 1) / m, j + 1) - std::pow(i / m, j + 1)) / (j + 1);
      }
      for (std::size_t x = 0; x < direct.size(); ++x) CHECK(exact[x] == doctest::Approx(direct[x]).epsilon(1e-12));
      // Adaptive Simpson reproduces the same numbers.
      Sampled grid;
      for (int g = 0; g <= 2000; ++g) {
        grid.xs.push_back(g / 2000.0);
        grid.fs.push_back(std::pow(g / 2000.0, j));
      }
      if (j <= 1) {
        const auto sampled = cup_amounts(grid, w);
        for (std::size_t x = 0; x < direct.size(); ++x) CHECK(std::abs(sampled[x] - direct[x]) < 1e-9);
      }
    }
  }
}

TEST_CASE("amounts add up to the integral") {
  const std::vector<Density> densities{Polynomial{{1, -0.5, 3}}, Exponential{2.5}, Sampled{{0, 0.3, 1}, {1, 2, 0.5}}};
  for (const auto& f : densities) {
    for (const auto& w : {parse_word("ABCCBA"), thue_morse(32), parse_word("ABBABAAB")}) {
      double total = 0.0;
      for (double c : cup_amounts(f, w)) total += c;
      CHECK(std::abs(total - integral(f, 0.0, 1.0)) < 1e-9);
    }
  }
}

TEST_CASE("perfect pouring for low-degree polynomials") {
  for (const auto& w : {parse_word("ABBA"), parse_word("ABBABAAB"), thue_morse(16), parse_word("ABCCBA"),
                        parse_word("ABBCCACCAABBBACBAC"), fixtures::three_letter_thirty_six()}) {
    const int r = max_regularity(w);
    for (int degree = 0; degree <= std::min(r, 3); ++degree) {
      std::vector<double> coefficients;
      for (int k = 0; k <= degree; ++k) coefficients.push_back(1.0 + 0.37 * k * (k % 2 ? -1 : 1));
      CHECK(disparity(cup_amounts(Polynomial{coefficients}, w)) <= 1e-12);
    }
  }
}

TEST_CASE("exponential pouring along ABBABAAB") {
  const auto report = verify_pouring(Exponential{1.0}, parse_word("ABBABAAB"));
  CHECK(report.regularity == 2);
  CHECK(report.switches == 5);
  REQUIRE(report.bound);
  CHECK(std::abs(*report.bound - 1.0 / 48.0) < 1e-15);
  CHECK(std::abs(report.disparity - 0.0012016918398927445) < 1e-10);
  CHECK(report.within_bound);
}

TEST_CASE("Thue-Morse disparities shrink with regularity") {
  const double expected[] = {0.01925209817, 0.00120169184, 3.754065053e-5, 5.865249338e-7, 4.582132822e-9};
  double previous = 1.0;
  for (int r = 1; r <= 5; ++r) {
    const double d = disparity(cup_amounts(Exponential{1.0}, thue_morse(std::size_t{2} << r)));
    CHECK(d == doctest::Approx(expected[r - 1]).epsilon(1e-8));
    CHECK(d < previous);
    previous = d;
  }
}

TEST_CASE("the bound holds for exponentials of several rates") {
  std::vector<Word> words{parse_word("ABBA"), parse_word("ABBABAAB"), parse_word("ABCCBA"), parse_word("ABCBCACAB"),
                          parse_word("ABBCCACCAABBBACBAC")};
  for (const auto& w : enumerate_pte(SearchSpec{12, 2, 1}).words) words.push_back(w);
  for (std::size_t len : {16u, 32u, 64u}) words.push_back(thue_morse(len));
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    for (const auto& w : words) {
      const auto report = verify_pouring(Exponential{a}, w);
      REQUIRE(report.bound);
      CHECK(report.disparity <= *report.bound + 1e-10);
      CHECK(report.within_bound);
    }
  }
}

TEST_CASE("derivative bounds") {
  const auto poly = verify_pouring(Polynomial{{0, 0, 0, 2}}, parse_word("ABBABAAB"));
  REQUIRE(poly.derivative_bound);
  CHECK(*poly.derivative_bound == 12.0);
  CHECK(*poly.bound == doctest::Approx(12.0 / 48.0));

  const auto low = verify_pouring(Polynomial{{1, 2}}, parse_word("ABBABAAB"));
  CHECK(*low.derivative_bound == 0.0);

  const auto none = verify_pouring(Exponential{1.0}, parse_word("AAB"));
  CHECK(none.regularity == -1);
  CHECK_FALSE(none.bound);

  const Sampled s{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(verify_pouring(s, parse_word("ABBA")), PreconditionError);
  CHECK(verify_pouring(s, parse_word("ABBA"), 0.0).within_bound);
}

TEST_CASE("taylor_bound") {
  CHECK(taylor_bound(1.0, 2, 2) == doctest::Approx(1.0 / 48.0));
  CHECK(taylor_bound(6.0, 0, 3) == doctest::Approx(2.0));
  CHECK_THROWS_AS(taylor_bound(-1.0, 1, 2), PreconditionError);
  CHECK_THROWS_AS(taylor_bound(1.0, -1, 2), PreconditionError);
  CHECK_THROWS_AS(taylor_bound(1.0, 1, 1), PreconditionError);
}

TEST_CASE("density parsing and validation") {
  CHECK(std::get<Polynomial>(parse_density("poly:1,0,2")).coefficients == std::vector<double>{1, 0, 2});
  CHECK(std::get<Exponential>(parse_density("exp:1.5")).rate == 1.5);
  CHECK_THROWS_AS(parse_density("exp:-1"), ParseError);
  CHECK_THROWS_AS(parse_density("exp:abc"), ParseError);
  CHECK_THROWS_AS(parse_density("poly:"), ParseError);
  CHECK_THROWS_AS(parse_density("cubic:1"), ParseError);
  CHECK_THROWS_AS(parse_density("file:/nonexistent/density.csv"), ParseError);

  std::istringstream csv("# x,f\n0,1\n0.5, 2\n\n1,3\n");
  const Sampled s = parse_sampled_csv(csv);
  CHECK(s.xs == std::vector<double>{0, 0.5, 1});
  CHECK(evaluate(s, 0.25) == doctest::Approx(1.5));
  std::istringstream broken("0;1\n");
  CHECK_THROWS_AS(parse_sampled_csv(broken), ParseError);

  CHECK_THROWS_AS(validate(Sampled{{0, 0.5}, {1, 1}}), PreconditionError);
  CHECK_THROWS_AS(validate(Sampled{{0, 0.5, 0.4, 1}, {1, 1, 1, 1}}), PreconditionError);
  CHECK_THROWS_AS(cup_amounts(Exponential{1.0}, parse_word("", 2)), PreconditionError);
  CHECK_THROWS_AS(disparity(std::vector<double>{}), PreconditionError);
}

TEST_CASE("adaptive_simpson") {
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(adaptive_simpson([](double x) { return x * x; }, 1.0, 1.0) == 0.0);
}

#pragma once

// Pouring a density on [0,1] into b cups along a word: interval i (1-based)
// is [(i-1)/m, i/m] and goes to the cup named by letter i.

#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pte/word.hpp"

namespace pte {

// f(x) = sum of coefficients[k] x^k.
struct Polynomial {
  std::vector<double> coefficients;
};

// f(x) = exp(-rate x), rate > 0.
struct Exponential {
  double rate = 1.0;
};

// Piecewise-linear interpolation through (xs[i], fs[i]); xs strictly
// increasing and covering [0,1].
struct Sampled {
  std::vector<double> xs;
  std::vector<double> fs;
};

using Density = std::variant<Polynomial, Exponential, Sampled>;

// Throws PreconditionError when the density violates its invariants.
void validate(const Density& f);
double evaluate(const Density& f, double x);
double integral(const Density& f, double lo, double hi);

// CSV lines "x,f"; blank lines and '#' comments are skipped.
Sampled parse_sampled_csv(std::istream& in);

// Parses "poly:c0,c1,...", "exp:a" or "file:<path>".
Density parse_density(const std::string& text);

// c_j for j = 1..b. Polynomials integrate exactly in rational arithmetic,
// exponentials in closed form, sampled densities by adaptive Simpson.
std::vector<double> cup_amounts(const Density& f, const Word& w);

// max |c_i - c_j|. Throws PreconditionError on an empty list.
double disparity(std::span<const double> amounts);

// M / (2^r b (r+1)!).
double taylor_bound(double derivative_bound, int r, int b);

struct PouringReport {
  std::vector<double> cup_amounts;
  double disparity = 0.0;
  int regularity = -1;
  std::optional<double> derivative_bound;
  std::optional<double> bound;
  bool within_bound = true;
  std::size_t switches = 0;
};

// Bound is taken at r = max_regularity(w) and omitted when r < 0. Without an
// explicit M, polynomials use a bound on |f^(r+1)| (0 when deg f <= r) and
// exponentials use rate^(r+1); sampled densities then throw PreconditionError.
PouringReport verify_pouring(const Density& f, const Word& w,
                             std::optional<double> derivative_bound = std::nullopt);

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double tolerance = 1e-10);

// Tolerance used for sampled densities.
inline constexpr double kQuadratureTolerance = 1e-10;

}  // namespace pte

#include "pte/pouring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pte/bigint.hpp"
#include "pte/error.hpp"
#include "pte/word_ops.hpp"

namespace pte {

namespace {

// Fixed pairwise reduction order, so results do not depend on how terms were produced.
double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tolerance, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, tolerance / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tolerance / 2.0, depth - 1);
}

double sampled_value(const Sampled& s, double x) {
  if (x < s.xs.front() || x > s.xs.back()) throw PreconditionError("sampled grid does not cover x");
  auto it = std::upper_bound(s.xs.begin(), s.xs.end(), x);
  if (it == s.xs.end()) return s.fs.back();
  const auto i = static_cast<std::size_t>(it - s.xs.begin());
  const double t = (x - s.xs[i - 1]) / (s.xs[i] - s.xs[i - 1]);
  return s.fs[i - 1] + t * (s.fs[i] - s.fs[i - 1]);
}

double sampled_integral(const Sampled& s, double lo, double hi) {
  if (lo < s.xs.front() || hi > s.xs.back()) {
    throw PreconditionError("sampled grid does not cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  auto f = [&s](double x) { return sampled_value(s, x); };
  // Integrate piece by piece between grid points so the integrand is smooth on each piece.
  std::vector<double> cuts{lo};
  for (double x : s.xs) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  cuts.push_back(hi);
  std::vector<double> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    pieces.push_back(adaptive_simpson(f, cuts[i], cuts[i + 1], kQuadratureTolerance / static_cast<double>(cuts.size())));
  }
  return pairwise_sum(pieces);
}

// Exact cup amounts for a polynomial: sum over k of
// coeff_k / ((k+1) m^(k+1)) * sum over i in the block of (i^(k+1) - (i-1)^(k+1)).
std::vector<double> polynomial_cups(const Polynomial& p, const Word& w) {
  const auto b = static_cast<std::size_t>(w.alphabet_size());
  const auto m = static_cast<std::int64_t>(w.size());
  std::vector<BigRational> cups(b);
  for (std::size_t k = 0; k < p.coefficients.size(); ++k) {
    if (p.coefficients[k] == 0.0) continue;
    const auto e = static_cast<unsigned>(k + 1);
    std::vector<BigInt> block_sums(b);
    for (std::int64_t i = 1; i <= m; ++i) {
      block_sums[static_cast<std::size_t>(w[static_cast<std::size_t>(i - 1)] - 1)] +=
          boost::multiprecision::pow(BigInt(i), e) - boost::multiprecision::pow(BigInt(i - 1), e);
    }
    const BigRational scale = BigRational(p.coefficients[k]) /
                              (BigInt(k + 1) * boost::multiprecision::pow(BigInt(m), e));
    for (std::size_t x = 0; x < b; ++x) cups[x] += scale * BigRational(block_sums[x]);
  }
  std::vector<double> out;
  for (const auto& c : cups) out.push_back(c.convert_to<double>());
  return out;
}

// d^n/dx^n of the polynomial.
std::vector<double> derivative(std::vector<double> coefficients, int n) {
  for (int step = 0; step < n && !coefficients.empty(); ++step) {
    for (std::size_t k = 1; k < coefficients.size(); ++k) coefficients[k - 1] = coefficients[k] * static_cast<double>(k);
    coefficients.pop_back();
  }
  return coefficients;
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

void validate(const Density& f) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          for (double c : d.coefficients) {
            if (!std::isfinite(c)) throw PreconditionError("polynomial coefficients must be finite");
          }
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (!(d.rate > 0.0) || !std::isfinite(d.rate)) throw PreconditionError("exponential rate must be positive");
        } else {
          if (d.xs.size() != d.fs.size() || d.xs.size() < 2) {
            throw PreconditionError("sampled density needs at least two (x, f) pairs");
          }
          for (std::size_t i = 0; i < d.xs.size(); ++i) {
            if (!std::isfinite(d.xs[i]) || !std::isfinite(d.fs[i])) throw PreconditionError("sampled values must be finite");
            if (i > 0 && !(d.xs[i] > d.xs[i - 1])) throw PreconditionError("sampled grid must be strictly increasing");
          }
          if (d.xs.front() > 0.0 || d.xs.back() < 1.0) throw PreconditionError("sampled grid must cover [0, 1]");
        }
      },
      f);
}

double evaluate(const Density& f, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          double acc = 0.0;
          for (auto it = d.coefficients.rbegin(); it != d.coefficients.rend(); ++it) acc = acc * x + *it;
          return acc;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return std::exp(-d.rate * x);
        } else {
          return sampled_value(d, x);
        }
      },
      f);
}

double integral(const Density& f, double lo, double hi) {
  return std::visit(
      [lo, hi](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          double acc = 0.0;
          for (std::size_t k = 0; k < d.coefficients.size(); ++k) {
            const auto e = static_cast<double>(k + 1);
            acc += d.coefficients[k] * (std::pow(hi, e) - std::pow(lo, e)) / e;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return -std::exp(-d.rate * lo) * std::expm1(-d.rate * (hi - lo)) / d.rate;
        } else {
          return sampled_integral(d, lo, hi);
        }
      },
      f);
}

Sampled parse_sampled_csv(std::istream& in) {
  Sampled out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double x = 0.0;
    double fx = 0.0;
    char comma = 0;
    if (!(fields >> x >> comma >> fx) || comma != ',') {
      throw ParseError("density file line " + std::to_string(line_no) + ": expected 'x,f'");
    }
    out.xs.push_back(x);
    out.fs.push_back(fx);
  }
  return out;
}

Density parse_density(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("density must look like poly:..., exp:... or file:...");
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ParseError("not a number: '" + s + "'");
    return v;
  };
  Density out;
  if (kind == "poly") {
    Polynomial p;
    std::istringstream parts(body);
    std::string item;
    while (std::getline(parts, item, ',')) p.coefficients.push_back(to_double(item));
    if (p.coefficients.empty()) throw ParseError("polynomial needs at least one coefficient");
    out = p;
  } else if (kind == "exp") {
    out = Exponential{to_double(body)};
  } else if (kind == "file") {
    std::ifstream in(body);
    if (!in) throw ParseError("cannot open density file '" + body + "'");
    out = parse_sampled_csv(in);
  } else {
    throw ParseError("unknown density kind '" + kind + "'");
  }
  try {
    validate(out);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::vector<double> cup_amounts(const Density& f, const Word& w) {
  if (w.empty()) throw PreconditionError("cannot pour along an empty word");
  validate(f);
  if (const auto* p = std::get_if<Polynomial>(&f)) return polynomial_cups(*p, w);

  const auto b = static_cast<std::size_t>(w.alphabet_size());
  const auto m = static_cast<double>(w.size());
  std::vector<std::vector<double>> terms(b);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double lo = static_cast<double>(i) / m;
    const double hi = static_cast<double>(i + 1) / m;
    terms[static_cast<std::size_t>(w[i] - 1)].push_back(integral(f, lo, hi));
  }
  std::vector<double> out;
  for (const auto& t : terms) out.push_back(pairwise_sum(t));
  return out;
}

double disparity(std::span<const double> amounts) {
  if (amounts.empty()) throw PreconditionError("disparity of an empty list");
  const auto [lo, hi] = std::minmax_element(amounts.begin(), amounts.end());
  return *hi - *lo;
}

double taylor_bound(double derivative_bound, int r, int b) {
  if (derivative_bound < 0.0 || r < 0 || b < 2) throw PreconditionError("taylor_bound needs M >= 0, r >= 0, b >= 2");
  return derivative_bound / (std::ldexp(1.0, r) * b * factorial(r + 1));
}

PouringReport verify_pouring(const Density& f, const Word& w, std::optional<double> derivative_bound) {
  PouringReport report;
  report.cup_amounts = cup_amounts(f, w);
  report.disparity = disparity(report.cup_amounts);
  report.regularity = max_regularity(w);
  report.switches = switch_count(w);
  if (report.regularity < 0) return report;

  const int r = report.regularity;
  if (!derivative_bound) {
    if (const auto* p = std::get_if<Polynomial>(&f)) {
      // sum |d_k| bounds |f^(r+1)| on [0, 1].
      double m = 0.0;
      for (double c : derivative(p->coefficients, r + 1)) m += std::abs(c);
      derivative_bound = m;
    } else if (const auto* e = std::get_if<Exponential>(&f)) {
      derivative_bound = std::pow(e->rate, r + 1);
    } else {
      throw PreconditionError("sampled density needs an explicit derivative bound");
    }
  }
  report.derivative_bound = derivative_bound;
  report.bound = taylor_bound(*derivative_bound, r, w.alphabet_size());
  report.within_bound = report.disparity <= *report.bound + kQuadratureTolerance;
  return report;
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tolerance) {
  if (hi == lo) return 0.0;
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, lo, hi, fa, fm, fb, whole, tolerance, 50);
}

}  // namespace pte

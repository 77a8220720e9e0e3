#include "pte/latin.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "pte/error.hpp"

namespace pte {

IntMatrix::IntMatrix(std::size_t size, std::vector<std::int64_t> entries)
    : size_(size), entries_(std::move(entries)) {
  if (entries_.size() != size_ * size_) throw PreconditionError("matrix is not square");
}

std::vector<std::vector<std::int64_t>> IntMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * size_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * size_));
  }
  return out;
}

std::vector<BigInt> IntMatrix::multiply(const std::vector<BigInt>& v) const {
  if (v.size() != size_) throw PreconditionError("vector length does not match matrix");
  std::vector<BigInt> out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

std::vector<std::vector<Letter>> LatinSquare::rows() const {
  std::vector<std::vector<Letter>> out(static_cast<std::size_t>(size_));
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) out[static_cast<std::size_t>(i)].push_back((*this)(i, j));
  }
  return out;
}

IntMatrix LatinSquare::as_matrix() const {
  return IntMatrix(static_cast<std::size_t>(size_),
                   std::vector<std::int64_t>(cells_.begin(), cells_.end()));
}

LatinSquare latin_from_rows(const std::vector<std::vector<Letter>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw PreconditionError("Latin square must have at least one row");
  LatinSquare out;
  out.size_ = n;
  out.cells_.reserve(static_cast<std::size_t>(n * n));
  std::vector<std::vector<bool>> seen_in_col(static_cast<std::size_t>(n),
                                             std::vector<bool>(static_cast<std::size_t>(n) + 1));
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n) {
      throw PreconditionError("row " + std::to_string(i + 1) + " has " +
                              std::to_string(row.size()) + " entries, expected " +
                              std::to_string(n));
    }
    std::vector<bool> seen_in_row(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) {
      const Letter x = row[static_cast<std::size_t>(j)];
      if (x < 1 || x > n) throw PreconditionError("entry outside alphabet of size " + std::to_string(n));
      if (seen_in_row[static_cast<std::size_t>(x)]) {
        throw PreconditionError("letter repeated in row " + std::to_string(i + 1));
      }
      if (seen_in_col[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)]) {
        throw PreconditionError("letter repeated in column " + std::to_string(j + 1));
      }
      seen_in_row[static_cast<std::size_t>(x)] = true;
      seen_in_col[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)] = true;
      out.cells_.push_back(x);
    }
  }
  return out;
}

LatinSquare latin_from_matrix(const IntMatrix& m) {
  std::vector<std::vector<Letter>> rows;
  for (const auto& row : m.rows()) rows.emplace_back(row.begin(), row.end());
  return latin_from_rows(rows);
}

bool is_normalized(const LatinSquare& square) {
  for (int i = 0; i < square.size(); ++i) {
    if (square(i, 0) != i + 1) return false;
  }
  return true;
}

LatinSquare normalize(const LatinSquare& square) {
  auto rows = square.rows();
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return latin_from_rows(rows);
}

std::vector<std::vector<Letter>> as_permutations(const LatinSquare& square) {
  if (!is_normalized(square)) throw PreconditionError("Latin square is not normalized");
  const int n = square.size();
  std::vector<std::vector<Letter>> perms(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) perms[static_cast<std::size_t>(k)].push_back(square(x, k));
  }
  return perms;
}

IntMatrix encoding_matrix(const LatinSquare& square) {
  const auto n = static_cast<std::size_t>(square.size());
  IntMatrix m(n);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const auto letter = static_cast<std::size_t>(square(static_cast<int>(row), static_cast<int>(col)));
      m(letter - 1, row) = static_cast<std::int64_t>(col + 1);
    }
  }
  return m;
}

LatinSquare encode(const LatinSquare& square) { return latin_from_matrix(encoding_matrix(square)); }

bool encoding_order_three_check(const LatinSquare& square) {
  return encode(encode(encode(square))) == square;
}

BigInt det_exact(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<BigInt> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };
  BigInt sign = 1;
  BigInt previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / previous;
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<BigRational>> r(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = m(i, j);
  }
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && r[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(r[p], r[row]);
    const BigRational lead = r[row][col];
    for (auto& x : r[row]) x /= lead;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || r[i][col] == 0) continue;
      const BigRational factor = r[i][col];
      for (std::size_t j = 0; j < n; ++j) r[i][j] -= factor * r[row][j];
    }
    pivot_cols.push_back(col);
    ++row;
  }

  std::vector<std::vector<BigInt>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<BigRational> v(n);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -r[i][free];

    BigInt scale = 1;
    for (const auto& x : v) {
      const BigInt d = boost::multiprecision::denominator(x);
      scale = scale / boost::multiprecision::gcd(scale, d) * d;
    }
    std::vector<BigInt> ints(n);
    BigInt content = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ints[i] = boost::multiprecision::numerator(BigRational(v[i] * scale));
      content = boost::multiprecision::gcd(content, ints[i]);
    }
    const auto first = std::find_if(ints.begin(), ints.end(), [](const BigInt& x) { return x != 0; });
    if (*first < 0) content = -content;
    for (auto& x : ints) x /= content;
    basis.push_back(std::move(ints));
  }
  return basis;
}

LatinSquare cyclic_square(int n) {
  if (n < 1) throw PreconditionError("cyclic square needs n >= 1");
  std::vector<std::vector<Letter>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[static_cast<std::size_t>(i)].push_back((i + j) % n + 1);
  }
  return latin_from_rows(rows);
}

LatinSquare product_group_square(int a, int b) {
  if (a < 2 || b < 2) throw PreconditionError("product group square needs both factors >= 2");
  if (a > b) std::swap(a, b);
  const int n = a * b;
  // Element (i, j) of Z_a x Z_b has 0-based index j + b i.
  std::vector<std::vector<Letter>> rows(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int i = (x / b + y / b) % a;
      const int j = (x % b + y % b) % b;
      rows[static_cast<std::size_t>(x)].push_back(j + b * i + 1);
    }
  }
  return latin_from_rows(rows);
}

LatinSquare klein_square() { return product_group_square(2, 2); }

LatinSquare seven_singular_square() {
  return latin_from_rows({{1, 2, 3, 4, 5, 6, 7},
                          {2, 7, 6, 5, 4, 3, 1},
                          {3, 6, 7, 2, 1, 4, 5},
                          {4, 5, 2, 1, 6, 7, 3},
                          {5, 1, 4, 7, 3, 2, 6},
                          {6, 4, 1, 3, 7, 5, 2},
                          {7, 3, 5, 6, 2, 1, 4}});
}

std::optional<KernelWitness> kernel_witness(const LatinSquare& square) {
  const IntMatrix m = encoding_matrix(square);
  if (det_exact(m) != 0) return std::nullopt;
  auto basis = integer_kernel(m);
  KernelWitness witness;
  witness.coefficients = std::move(basis.front());
  const BigInt lowest = *std::min_element(witness.coefficients.begin(), witness.coefficients.end());
  // Smallest positive translate making every multiplicity non-negative.
  witness.translate = std::max(BigInt(1), BigInt(-lowest));
  for (const auto& c : witness.coefficients) witness.multiplicities.push_back(witness.translate + c);
  return witness;
}

Word witness_word(const KernelWitness& witness) {
  std::vector<Letter> letters;
  for (std::size_t q = 0; q < witness.multiplicities.size(); ++q) {
    const auto count = witness.multiplicities[q].convert_to<std::int64_t>();
    letters.insert(letters.end(), static_cast<std::size_t>(count), static_cast<Letter>(q + 1));
  }
  return Word(static_cast<int>(witness.multiplicities.size()), std::move(letters));
}

namespace {

class LatinFiller {
 public:
  LatinFiller(int n, bool normalized_only)
      : n_(n),
        normalized_only_(normalized_only),
        cells_(static_cast<std::size_t>(n * n), 0),
        row_used_(static_cast<std::size_t>(n * (n + 1)), false),
        col_used_(static_cast<std::size_t>(n * (n + 1)), false) {}

  template <class ChooseOrder>
  bool fill(int cell, ChooseOrder& order, const std::function<bool(const std::vector<Letter>&)>& done,
            std::int64_t& budget) {
    if (cell == n_ * n_) return done(cells_);
    if (--budget < 0) return false;
    const int i = cell / n_;
    const int j = cell % n_;
    std::vector<Letter> candidates;
    if (normalized_only_ && j == 0) {
      candidates.push_back(i + 1);
    } else {
      for (Letter x = 1; x <= n_; ++x) candidates.push_back(x);
      order(candidates);
    }
    for (Letter x : candidates) {
      if (row_used_[idx(i, x)] || col_used_[idx(j, x)]) continue;
      set(i, j, x, true);
      const bool keep_going = fill(cell + 1, order, done, budget);
      set(i, j, x, false);
      if (!keep_going) return false;
    }
    return true;
  }

 private:
  std::size_t idx(int line, Letter x) const { return static_cast<std::size_t>(line * (n_ + 1) + x); }
  void set(int i, int j, Letter x, bool on) {
    row_used_[idx(i, x)] = on;
    col_used_[idx(j, x)] = on;
    cells_[static_cast<std::size_t>(i * n_ + j)] = on ? x : 0;
  }

  int n_;
  bool normalized_only_;
  std::vector<Letter> cells_;
  std::vector<bool> row_used_;
  std::vector<bool> col_used_;
};

LatinSquare from_cells(int n, const std::vector<Letter>& cells) {
  std::vector<std::vector<Letter>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)].assign(cells.begin() + i * n, cells.begin() + (i + 1) * n);
  }
  return latin_from_rows(rows);
}

}  // namespace

void for_each_latin_square(int n, bool normalized_only,
                           const std::function<bool(const LatinSquare&)>& visit) {
  if (n < 1) throw PreconditionError("Latin square order must be at least 1");
  LatinFiller filler(n, normalized_only);
  auto ascending = [](std::vector<Letter>&) {};
  std::int64_t unlimited = std::numeric_limits<std::int64_t>::max();
  filler.fill(0, ascending,
              [&](const std::vector<Letter>& cells) { return visit(from_cells(n, cells)); },
              unlimited);
}

LatinSquare random_latin_square(int n, std::mt19937_64& rng) {
  if (n < 1) throw PreconditionError("Latin square order must be at least 1");
  auto shuffled = [&rng](std::vector<Letter>& v) { std::shuffle(v.begin(), v.end(), rng); };
  std::optional<LatinSquare> found;
  while (!found) {
    // Restart from scratch when a random branch gets stuck for too long.
    LatinFiller filler(n, false);
    std::int64_t budget = 50'000;
    filler.fill(0, shuffled,
                [&](const std::vector<Letter>& cells) {
                  found = from_cells(n, cells);
                  return false;
                },
                budget);
  }
  return *found;
}

std::vector<LatinSquare> search_singular(int n, std::int64_t budget, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("singular search needs n >= 2");
  if (budget <= 0) throw PreconditionError("search budget must be positive");
  std::set<LatinSquare> found;
  if (n <= 5) {
    for_each_latin_square(n, true, [&](const LatinSquare& square) {
      if (det_exact(square.as_matrix()) == 0) found.insert(square);
      return true;
    });
  } else {
    std::mt19937_64 rng(seed);
    for (std::int64_t k = 0; k < budget; ++k) {
      const LatinSquare square = normalize(random_latin_square(n, rng));
      if (det_exact(square.as_matrix()) == 0) found.insert(square);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace pte

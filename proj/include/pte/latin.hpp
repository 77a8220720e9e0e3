#pragma once

// Latin squares, their encoding matrices, and exact integer linear algebra.
//
// Cells hold letters 1..b. A square is normalized when its first column reads
// 1, 2, ..., b; the first row is left alone. A square is called singular when
// its b x b numeric matrix has determinant zero.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pte/bigint.hpp"
#include "pte/word.hpp"

namespace pte {

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t size) : size_(size), entries_(size * size, 0) {}
  IntMatrix(std::size_t size, std::vector<std::int64_t> entries);

  std::size_t size() const noexcept { return size_; }
  // 0-based.
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return entries_[i * size_ + j]; }

  std::vector<std::vector<std::int64_t>> rows() const;
  std::vector<BigInt> multiply(const std::vector<BigInt>& v) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::int64_t> entries_;
};

class LatinSquare {
 public:
  LatinSquare() = default;

  int size() const noexcept { return size_; }
  // 0-based row and column; value in 1..size.
  Letter operator()(int row, int col) const {
    return cells_[static_cast<std::size_t>(row * size_ + col)];
  }
  std::vector<std::vector<Letter>> rows() const;
  IntMatrix as_matrix() const;

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;
  friend auto operator<=>(const LatinSquare&, const LatinSquare&) = default;

 private:
  friend LatinSquare latin_from_rows(const std::vector<std::vector<Letter>>& rows);
  int size_ = 0;
  std::vector<Letter> cells_;
};

// Validates dimensions and the once-per-row/column rule.
LatinSquare latin_from_rows(const std::vector<std::vector<Letter>>& rows);
LatinSquare latin_from_matrix(const IntMatrix& m);

bool is_normalized(const LatinSquare& square);
LatinSquare normalize(const LatinSquare& square);

// perms[k][x-1] = entry at row x, column k+1 of a normalized square; perms[0] is the identity.
std::vector<std::vector<Letter>> as_permutations(const LatinSquare& square);

// M(i, j) = column of the square in which letter i sits on row j (1-based values).
IntMatrix encoding_matrix(const LatinSquare& square);
// The encoding matrix is again a Latin square.
LatinSquare encode(const LatinSquare& square);
bool encoding_order_three_check(const LatinSquare& square);

// Fraction-free (Bareiss) elimination.
BigInt det_exact(const IntMatrix& m);

// Basis of the rational kernel {c : M c = 0}, one primitive integer vector per
// free column of the reduced row echelon form, first nonzero entry positive.
std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& m);

LatinSquare cyclic_square(int n);
LatinSquare product_group_square(int a, int b);
LatinSquare klein_square();
LatinSquare seven_singular_square();

struct KernelWitness {
  std::vector<BigInt> coefficients;
  BigInt translate;
  std::vector<BigInt> multiplicities;
};

// A dependency among the columns of encoding_matrix(square), translated into
// non-negative letter multiplicities. Empty when the encoding matrix is invertible.
std::optional<KernelWitness> kernel_witness(const LatinSquare& square);

// The word A^{m_1} B^{m_2} ... realizing a witness's multiplicities.
Word witness_word(const KernelWitness& witness);

// Visits every Latin square of order n (only normalized ones if requested) in
// lexicographic row-major order. Returning false from the visitor stops the walk.
void for_each_latin_square(int n, bool normalized_only,
                           const std::function<bool(const LatinSquare&)>& visit);

LatinSquare random_latin_square(int n, std::mt19937_64& rng);

// Singular normalized squares of order n: exhaustive for n <= 5, otherwise
// `budget` random samples. Sorted, without duplicates.
std::vector<LatinSquare> search_singular(int n, std::int64_t budget, std::uint64_t seed = 1);

}  // namespace pte

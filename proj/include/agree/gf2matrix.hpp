#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "agree/bitstring.hpp"

namespace agree {

// k x n matrix over GF(2), stored as k row BitStrings of length n.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t cols, std::vector<BitString> rows);

  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const BitString& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<BitString>& rows() const noexcept { return rows_; }

  // Sum of the rows selected by the k-bit vector `coeffs`.
  BitString combine(const BitString& coeffs) const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitString> rows_;
};

std::size_t rank(const Gf2Matrix& m);

// Row-reduced copy of a full-rank basis that answers coordinate queries.
// Each reduced row remembers which original rows were summed to produce it.
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  // Throws UsageError if the rows are linearly dependent.
  explicit CoordinateSolver(const Gf2Matrix& basis);

  // z with sum_i z_i * basis_i == v, or nullopt when v is outside the span.
  std::optional<BitString> solve(const BitString& v) const;

 private:
  struct ReducedRow {
    BitString bits;
    BitString combination;
    std::size_t pivot;
  };
  std::size_t cols_ = 0;
  std::size_t dim_ = 0;
  std::vector<ReducedRow> reduced_;
};

std::optional<BitString> solve_coordinates(const Gf2Matrix& basis, const BitString& v);

}  // namespace agree

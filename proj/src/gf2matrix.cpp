#include "agree/gf2matrix.hpp"

#include <bit>
#include <utility>

#include "agree/errors.hpp"

namespace agree {

namespace {

// Index of the lowest set bit, or nullopt for the zero vector.
std::optional<std::size_t> lowest_set_bit(const BitString& v) {
  auto words = v.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (words[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words[w]));
  }
  return std::nullopt;
}

}  // namespace

Gf2Matrix::Gf2Matrix(std::size_t cols, std::vector<BitString> rows)
    : cols_(cols), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != cols_) throw UsageError("Gf2Matrix: rows must share one length");
  }
}

BitString Gf2Matrix::combine(const BitString& coeffs) const {
  if (coeffs.size() != rows_.size()) throw UsageError("combine: coefficient length != row count");
  BitString out(cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (coeffs.test(i)) out ^= rows_[i];
  }
  return out;
}

std::size_t rank(const Gf2Matrix& m) {
  std::vector<BitString> rows = m.rows();
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto pivot = lowest_set_bit(rows[i]);
    if (!pivot) continue;
    ++r;
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j].test(*pivot)) rows[j] ^= rows[i];
    }
  }
  return r;
}

CoordinateSolver::CoordinateSolver(const Gf2Matrix& basis)
    : cols_(basis.cols()), dim_(basis.row_count()) {
  reduced_.reserve(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    BitString bits = basis.row(i);
    BitString combination(dim_);
    combination.set(i);
    for (const auto& r : reduced_) {
      if (bits.test(r.pivot)) {
        bits ^= r.bits;
        combination ^= r.combination;
      }
    }
    auto pivot = lowest_set_bit(bits);
    if (!pivot) throw UsageError("basis rows are linearly dependent");
    // Keep earlier rows reduced at the new pivot so solve() is a single pass.
    for (auto& r : reduced_) {
      if (r.bits.test(*pivot)) {
        r.bits ^= bits;
        r.combination ^= combination;
      }
    }
    reduced_.push_back({std::move(bits), std::move(combination), *pivot});
  }
}

std::optional<BitString> CoordinateSolver::solve(const BitString& v) const {
  if (v.size() != cols_) throw UsageError("solve: vector length != basis width");
  BitString residual = v;
  BitString z(dim_);
  for (const auto& r : reduced_) {
    if (residual.test(r.pivot)) {
      residual ^= r.bits;
      z ^= r.combination;
    }
  }
  if (residual.weight() != 0) return std::nullopt;
  return z;
}

std::optional<BitString> solve_coordinates(const Gf2Matrix& basis, const BitString& v) {
  return CoordinateSolver(basis).solve(v);
}

}  // namespace agree

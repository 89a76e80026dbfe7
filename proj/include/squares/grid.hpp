#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "squares/error.hpp"

namespace squares {

using Value = std::int64_t;

/// Largest supported side length. Row sums of natural squares stay far below
/// 2^63 at this size.
inline constexpr std::size_t kMaxOrder = std::size_t{1} << 16;

/// Non-negative remainder of a / n for n > 0.
constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

/// k with k * k == n, if n is a perfect square.
std::optional<std::size_t> exact_sqrt(std::size_t n);

/// Dense n x n square of non-negative integers, stored row-major.
///
/// Grids are values: nothing mutates one after construction and every
/// operator in this header returns a fresh grid.
class Grid {
 public:
  /// Throws shape_error unless values.size() == n * n and n >= 1, and
  /// value_error if any entry is negative.
  Grid(std::size_t n, std::vector<Value> values);

  static Grid filled(std::size_t n, Value v);
  static Grid zeros(std::size_t n) { return filled(n, 0); }
  static Grid identity(std::size_t n);
  static Grid from_rows(const std::vector<std::vector<Value>>& rows);

  /// Builds the grid whose (i, j) entry (0-based) is f(i, j).
  template <class F>
  static Grid generate(std::size_t n, F&& f) {
    std::vector<Value> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        values.push_back(static_cast<Value>(f(i, j)));
      }
    }
    return Grid(n, std::move(values));
  }

  std::size_t order() const noexcept { return n_; }

  Value operator()(std::size_t r, std::size_t c) const noexcept {
    return values_[r * n_ + c];
  }

  std::span<const Value> row(std::size_t r) const noexcept {
    return {values_.data() + r * n_, n_};
  }

  std::span<const Value> values() const noexcept { return values_; }

  std::vector<std::vector<Value>> rows() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t n_;
  std::vector<Value> values_;
};

/// Side length plus the two closed-form line sums: n(n-1)/2 for squares on
/// the symbols 0..n-1 and n(n^2-1)/2 for squares on 0..n^2-1.
struct SquareOrder {
  std::size_t n = 1;
  std::optional<std::size_t> k;
  Value index_m = 0;
  Value natural_index = 0;

  static SquareOrder of(std::size_t n);
};

struct BlockAddress {
  std::size_t block_row = 0;
  std::size_t block_col = 0;
  bool broken = false;
};

// Toroidal operators. Shift amounts may be any integer and are reduced mod n.

/// Output row r is input row (r - s) mod n, i.e. rows move down by s.
Grid row_shift(const Grid& g, std::int64_t s);
/// Output column c is input column (c + s) mod n, i.e. columns move left by s.
Grid col_shift(const Grid& g, std::int64_t s);
/// Mirror about the vertical centerline.
Grid reflect_cols(const Grid& g);
/// Mirror about the horizontal centerline.
Grid reflect_rows(const Grid& g);
Grid transpose(const Grid& g);

/// The k x k subgrid with top-left cell (k*block_row + row_off,
/// k*block_col + col_off), wrapping around the torus. Offsets must be zero
/// unless addr.broken is set.
Grid block_at(const Grid& g, std::size_t k, BlockAddress addr,
              std::int64_t row_off = 0, std::int64_t col_off = 0);

enum class PermutationKind { shifter, reflection, sudoku_h };

/// 0/1 permutation matrices: the cyclic shifter K (1 at (0, n-1) and on the
/// subdiagonal), the cross-diagonal reflection R, and the block-diagonal H
/// holding k copies of the order-k shifter (requires k * k == n).
Grid permutation_matrix(PermutationKind kind, std::size_t n,
                        std::optional<std::size_t> k = std::nullopt);

/// Schoolbook O(n^3) product. Kept deliberately naive: tests use it as the
/// reference against which the index-based operators are checked.
Grid multiply(const Grid& a, const Grid& b);

/// a^e by repeated naive multiplication; a^0 is the identity.
Grid power(const Grid& a, std::size_t e);

}  // namespace squares

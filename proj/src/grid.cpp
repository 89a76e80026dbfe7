#include "squares/grid.hpp"

#include <cmath>
#include <string>

namespace squares {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::order_mismatch: return "order-mismatch";
    case ErrorCode::invalid_order: return "invalid-order";
    case ErrorCode::invalid_lambda: return "invalid-lambda";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
    case ErrorCode::entry_range: return "entry-range";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::shape_error: return "shape-error";
    case ErrorCode::value_error: return "value-error";
    case ErrorCode::internal_inconsistency: return "internal-inconsistency";
  }
  return "unknown";
}

std::optional<std::size_t> exact_sqrt(std::size_t n) {
  auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (k * k > n) --k;
  while ((k + 1) * (k + 1) <= n) ++k;
  if (k * k != n) return std::nullopt;
  return k;
}

Grid::Grid(std::size_t n, std::vector<Value> values)
    : n_(n), values_(std::move(values)) {
  if (n_ == 0) throw Error(ErrorCode::shape_error, "grid order must be positive");
  if (n_ > kMaxOrder) {
    throw Error(ErrorCode::cap_exceeded,
                "grid order " + std::to_string(n_) + " exceeds " + std::to_string(kMaxOrder));
  }
  if (values_.size() != n_ * n_) {
    throw Error(ErrorCode::shape_error,
                "expected " + std::to_string(n_ * n_) + " entries, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0) {
      throw Error(ErrorCode::value_error,
                  "negative entry " + std::to_string(values_[i]) + " at (" +
                      std::to_string(i / n_) + ", " + std::to_string(i % n_) + ")");
    }
  }
}

Grid Grid::filled(std::size_t n, Value v) {
  return Grid(n, std::vector<Value>(n * n, v));
}

Grid Grid::identity(std::size_t n) {
  return generate(n, [](std::size_t i, std::size_t j) { return i == j ? 1 : 0; });
}

Grid Grid::from_rows(const std::vector<std::vector<Value>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Value> values;
  values.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw Error(ErrorCode::shape_error, "row " + std::to_string(r) + " has " +
                                              std::to_string(rows[r].size()) +
                                              " entries, expected " + std::to_string(n));
    }
    values.insert(values.end(), rows[r].begin(), rows[r].end());
  }
  return Grid(n, std::move(values));
}

std::vector<std::vector<Value>> Grid::rows() const {
  std::vector<std::vector<Value>> out;
  out.reserve(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    auto row_view = row(r);
    out.emplace_back(row_view.begin(), row_view.end());
  }
  return out;
}

SquareOrder SquareOrder::of(std::size_t n) {
  if (n == 0 || n > kMaxOrder) {
    throw Error(ErrorCode::invalid_order, "order must be in 1.." + std::to_string(kMaxOrder));
  }
  SquareOrder order;
  order.n = n;
  order.k = exact_sqrt(n);
  const auto v = static_cast<Value>(n);
  order.index_m = v * (v - 1) / 2;
  order.natural_index = v * (v * v - 1) / 2;
  return order;
}

namespace {

std::size_t reduce(std::int64_t s, std::size_t n) {
  return static_cast<std::size_t>(floor_mod(s, static_cast<std::int64_t>(n)));
}

}  // namespace

Grid row_shift(const Grid& g, std::int64_t s) {
  const std::size_t n = g.order();
  const std::size_t down = reduce(s, n);
  return Grid::generate(n, [&](std::size_t r, std::size_t c) {
    return g((r + n - down) % n, c);
  });
}

Grid col_shift(const Grid& g, std::int64_t s) {
  const std::size_t n = g.order();
  const std::size_t left = reduce(s, n);
  return Grid::generate(n, [&](std::size_t r, std::size_t c) { return g(r, (c + left) % n); });
}

Grid reflect_cols(const Grid& g) {
  const std::size_t n = g.order();
  return Grid::generate(n, [&](std::size_t r, std::size_t c) { return g(r, n - 1 - c); });
}

Grid reflect_rows(const Grid& g) {
  const std::size_t n = g.order();
  return Grid::generate(n, [&](std::size_t r, std::size_t c) { return g(n - 1 - r, c); });
}

Grid transpose(const Grid& g) {
  return Grid::generate(g.order(), [&](std::size_t r, std::size_t c) { return g(c, r); });
}

Grid block_at(const Grid& g, std::size_t k, BlockAddress addr, std::int64_t row_off,
              std::int64_t col_off) {
  const std::size_t n = g.order();
  if (k == 0 || k * k != n) {
    throw Error(ErrorCode::order_mismatch, "block size " + std::to_string(k) +
                                               " does not match order " + std::to_string(n));
  }
  if (addr.block_row >= k || addr.block_col >= k) {
    throw Error(ErrorCode::invalid_argument, "block address out of range");
  }
  if (!addr.broken && (row_off != 0 || col_off != 0)) {
    throw Error(ErrorCode::invalid_argument, "offsets require a broken block address");
  }
  const std::size_t top = (k * addr.block_row + reduce(row_off, n)) % n;
  const std::size_t left = (k * addr.block_col + reduce(col_off, n)) % n;
  return Grid::generate(k, [&](std::size_t r, std::size_t c) {
    return g((top + r) % n, (left + c) % n);
  });
}

Grid permutation_matrix(PermutationKind kind, std::size_t n, std::optional<std::size_t> k) {
  switch (kind) {
    case PermutationKind::shifter:
      // K(i, j) = 1 exactly when i - j == 1 (mod n).
      return Grid::generate(n, [&](std::size_t i, std::size_t j) {
        return (i + n - j) % n == 1 % n ? 1 : 0;
      });
    case PermutationKind::reflection:
      return Grid::generate(n, [&](std::size_t i, std::size_t j) { return i + j == n - 1 ? 1 : 0; });
    case PermutationKind::sudoku_h: {
      if (!k || *k == 0 || *k * *k != n) {
        throw Error(ErrorCode::order_mismatch,
                    "sudoku H needs k with k*k == " + std::to_string(n));
      }
      const std::size_t b = *k;
      return Grid::generate(n, [&](std::size_t i, std::size_t j) {
        if (i / b != j / b) return 0;
        return ((i % b) + b - (j % b)) % b == 1 % b ? 1 : 0;
      });
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown permutation kind");
}

Grid multiply(const Grid& a, const Grid& b) {
  const std::size_t n = a.order();
  if (b.order() != n) throw Error(ErrorCode::order_mismatch, "multiply: order mismatch");
  std::vector<Value> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Value acc = 0;
      for (std::size_t t = 0; t < n; ++t) {
        Value term = 0;
        if (__builtin_mul_overflow(a(i, t), b(t, j), &term) ||
            __builtin_add_overflow(acc, term, &acc)) {
          throw Error(ErrorCode::cap_exceeded, "multiply: 64-bit overflow");
        }
      }
      out[i * n + j] = acc;
    }
  }
  return Grid(n, std::move(out));
}

Grid power(const Grid& a, std::size_t e) {
  Grid result = Grid::identity(a.order());
  for (std::size_t i = 0; i < e; ++i) result = multiply(result, a);
  return result;
}

}  // namespace squares

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "squares/grid.hpp"

namespace squares {

/// Largest k accepted by the k-parameterized constructors (n = k^2 <= 2^16).
inline constexpr std::size_t kMaxBlockSize = 256;

/// Auxiliary square of order n = k^2 with entry (i + floor(j / k)) mod k.
Grid s_hat(std::size_t k);

/// Pandiagonal super-sudoku square S = k * s_hat(k) + transpose(s_hat(k)).
/// Entries run over 0..k^2-1.
Grid pan_super_sudoku(std::size_t k);

/// M(i, j) = n * s(i, j) + s(i, n-1-j), the square s combined with its
/// mirror image as the high and low digits of a base-n number.
Grid panmagic_lift(const Grid& s);

/// Knut Vik sudoku square of order k^2 for k >= 5 coprime to 6. With the
/// 1-based indices of the closed formula translated to 0-based i, j:
///
///   V(i, j) = k * ((2i - j) mod k)
///           + ((2i + 2*floor(i/k) - 2j + floor(j/k)) mod k)
Grid knut_vik_sudoku(std::size_t k);

/// Order-k square (2r - c) mod k: 0..k-1 down the main diagonal, each value
/// repeated by knight's moves of right two/down one.
Grid block_A(std::size_t k);

/// Aligned block (0, i) of knut_vik_sudoku(k): k * block_A(k) plus a
/// remainder part whose top-left entry is i.
Grid block_Z(std::size_t k, std::size_t i);

/// Tiles block_Z(k, (2r + c) mod k) into block position (r, c). Equals
/// knut_vik_sudoku(k).
Grid assemble_blocks(std::size_t k);

/// Cyclic Knut Vik square (lambda * i + j) mod n evaluated with 1-based
/// i, j. Requires n >= 5 coprime to 6 and lambda with
/// gcd(lambda, n) = gcd(lambda - 1, n) = gcd(lambda + 1, n) = 1.
Grid euler_knut_vik(std::size_t n, std::int64_t lambda);

/// True when euler_knut_vik(n, lambda) would succeed.
bool euler_lambda_valid(std::size_t n, std::int64_t lambda);

struct Decomposition {
  Grid quotient;
  Grid remainder;
};

/// Splits g = k * quotient + remainder with 0 <= remainder < k. Every entry
/// of g must be below k^2.
Decomposition decompose(const Grid& g, std::size_t k);

enum class ConstructionKind {
  s_hat,
  pan_super_sudoku,
  panmagic_lift,
  knut_vik_sudoku,
  euler_cyclic,
  block_A,
  block_Z,
  block_W,
  assembled_blocks,
};

std::string_view to_string(ConstructionKind kind);
std::optional<ConstructionKind> parse_construction_kind(std::string_view name);

/// Which constructor to run and with what parameters. panmagic_lift lifts
/// the square named by lift_source; block_W is block_Z with k = 7.
struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::pan_super_sudoku;
  std::optional<std::size_t> k;
  std::optional<std::size_t> n;
  std::optional<std::int64_t> lambda;
  std::optional<std::size_t> block_index;
  ConstructionKind lift_source = ConstructionKind::pan_super_sudoku;
};

Grid build(const ConstructionSpec& spec);

}  // namespace squares

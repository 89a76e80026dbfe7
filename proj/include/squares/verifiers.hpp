#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "squares/grid.hpp"

namespace squares {

/// direct: sums and permutation checks over lines and blocks, O(n^2).
/// identity: evaluates the equivalent permutation-matrix identities.
/// both: runs the two and throws internal_inconsistency if they disagree.
enum class VerifyMode { direct, identity, both };

std::string_view to_string(VerifyMode mode);
std::optional<VerifyMode> parse_verify_mode(std::string_view name);

enum class Property {
  semi_magic,
  magic,
  pandiagonal,
  latin,
  knut_vik,
  natural,
  sudoku,
  super_sudoku,
};

inline constexpr std::array<Property, 8> kAllProperties{
    Property::semi_magic, Property::magic,   Property::pandiagonal, Property::latin,
    Property::knut_vik,   Property::natural, Property::sudoku,      Property::super_sudoku,
};

std::string_view to_string(Property p);
/// Accepts the canonical names ("knut_vik") and the compact CLI spellings
/// ("knutvik", "semimagic", "supersudoku", "panmagic" is not a property).
std::optional<Property> parse_property(std::string_view name);

/// Line and block families used to locate a failure.
///
/// Index conventions: diagonal d holds the cells (i, (i + d) mod n);
/// antidiagonal d holds the cells with (r + c) mod n == d, so the cross
/// diagonal is d = n - 1; block is block_row * k + block_col; broken_block and
/// cell use the row-major cell index of the (top-left) cell.
enum class WitnessKind { row, column, diagonal, antidiagonal, block, broken_block, cell };

std::string_view to_string(WitnessKind kind);

struct Witness {
  Property property;
  WitnessKind kind;
  std::size_t index;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct SemiMagicResult {
  bool holds = false;
  std::optional<Value> index;
};

SemiMagicResult is_semi_magic(const Grid& g, VerifyMode mode = VerifyMode::direct);
bool is_magic(const Grid& g, VerifyMode mode = VerifyMode::direct);
bool is_pandiagonal(const Grid& g, VerifyMode mode = VerifyMode::direct);
bool is_latin(const Grid& g, VerifyMode mode = VerifyMode::direct);
bool is_knut_vik(const Grid& g, VerifyMode mode = VerifyMode::direct);
bool is_natural(const Grid& g, VerifyMode mode = VerifyMode::direct);
/// False (not an error) when the order is not a perfect square.
bool is_sudoku(const Grid& g, VerifyMode mode = VerifyMode::direct);
bool is_super_sudoku(const Grid& g, VerifyMode mode = VerifyMode::direct);

bool check(Property p, const Grid& g, VerifyMode mode = VerifyMode::direct);

/// The n^2 positionwise pairs (a(i,j), b(i,j)) are pairwise distinct.
/// Throws order_mismatch when the orders differ.
bool is_orthogonal(const Grid& a, const Grid& b);

struct Verdict {
  bool holds = false;
  /// First violating location, when one exists. A non-square order fails
  /// the sudoku properties without a witness.
  std::optional<Witness> witness;
};

/// Direct-mode check of p that also locates the first violation, scanning
/// rows, then columns, then diagonals, antidiagonals and blocks. A failed
/// prerequisite (for example a bad row under knut_vik) is reported against p
/// itself.
Verdict diagnose(Property p, const Grid& g);

struct ClassificationReport {
  std::size_t n = 0;
  std::optional<std::size_t> k;
  bool is_semi_magic = false;
  bool is_magic = false;
  bool is_pandiagonal = false;
  bool is_latin = false;
  bool is_knut_vik = false;
  bool is_natural = false;
  bool is_sudoku = false;
  bool is_super_sudoku = false;
  std::optional<Value> measured_index;
  std::vector<Witness> failures;

  bool flag(Property p) const;
};

ClassificationReport classify(const Grid& g, VerifyMode mode = VerifyMode::direct);

/// Matrix-identity building blocks. K is the shifter, R the reflection,
/// U the all-ones matrix, H the sudoku block shifter.
namespace calculus {

/// P * M * Q for 0/1 permutation matrices P and Q, applied as index maps.
Grid sandwich(const Grid& p, const Grid& m, const Grid& q);

/// M * U (entry (r, c) is the sum of row r).
Grid times_ones_right(const Grid& m);
/// U * M (entry (r, c) is the sum of column c).
Grid times_ones_left(const Grid& m);

Value trace(const Grid& m);
/// tr(R * M): the cross diagonal sum.
Value cross_trace(const Grid& m);

/// sum_{i=1..n} K^i M K^i. Equals mU exactly when every broken antidiagonal
/// sums to m.
Grid antidiagonal_sums(const Grid& m);
/// sum_{i=1..n} K^i M K^-i, the same for broken diagonals.
Grid diagonal_sums(const Grid& m);
/// (I + K + ... + K^(k-1)) M (I + K + ... + K^(k-1)): entry (r, c) is the sum
/// of one k x k block, broken blocks included.
Grid block_sums(const Grid& m, std::size_t k);

/// Every entry of the integer difference a - b is nonzero.
bool nowhere_equal(const Grid& a, const Grid& b);

bool is_scaled_ones(const Grid& m, Value scale);

}  // namespace calculus

}  // namespace squares

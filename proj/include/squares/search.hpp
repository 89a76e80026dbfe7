#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "squares/grid.hpp"

namespace squares {

/// knut_vik: every row, column and broken diagonal is a permutation of
/// 0..n-1. pandiagonal_latin: a Latin square whose broken diagonals all sum
/// to n(n-1)/2.
enum class SearchTarget { knut_vik, pandiagonal_latin };

std::string_view to_string(SearchTarget target);
std::optional<SearchTarget> parse_search_target(std::string_view name);

/// Exhaustive search is limited to n <= 8.
inline constexpr std::size_t kMaxSearchOrder = 8;

struct SearchConfig {
  SearchTarget target = SearchTarget::knut_vik;
  std::size_t n = 5;
  std::size_t max_exemplars = 0;
  bool parallel = false;
  /// Worker threads when parallel; 0 picks std::thread::hardware_concurrency.
  std::size_t jobs = 0;
  /// Fixed leading entries of row 0, at most n of them.
  std::vector<Value> seed_prefix;
  /// knut_vik only, and only without a seed prefix: search the squares whose
  /// first row is 0..n-1 and recover the rest by relabeling symbols
  /// (count * n!). Exemplars are identical either way.
  bool symmetry_reduction = true;
};

struct SearchResult {
  SearchTarget target = SearchTarget::knut_vik;
  std::size_t n = 0;
  std::uint64_t count = 0;
  /// The first max_exemplars solutions in row-major lexicographic order.
  std::vector<Grid> exemplars;
  /// Successful cell placements. Identical for sequential and parallel runs;
  /// with symmetry reduction, counts only the reduced search.
  std::uint64_t nodes_visited = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Counts every square satisfying cfg.target by cell-by-cell backtracking in
/// row-major order with ascending values. Throws cap_exceeded for n > 8.
SearchResult search(const SearchConfig& cfg);

/// search() with the target forced to knut_vik.
SearchResult count_knut_vik(SearchConfig cfg);

/// The row-major lexicographically smallest solution, if any.
std::optional<Grid> find_first(const SearchConfig& cfg);

/// Replays g cell by cell through the same placement constraints the search
/// uses, for any order. True when every placement is accepted.
bool oracle_accepts(const Grid& g, SearchTarget target);

enum class RandomKind { arbitrary, latin_rows };

/// Deterministic pseudo-random grid for a given (n, seed, kind). arbitrary
/// draws each entry uniformly from 0..n^2-1; latin_rows makes each row an
/// independent random permutation of 0..n-1.
Grid random_grid(std::size_t n, std::uint64_t seed, RandomKind kind);

}  // namespace squares

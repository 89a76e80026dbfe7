#include "squares/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <random>
#include <string>
#include <thread>

namespace squares {
namespace {

// Used-value bitsets per row, column, diagonal ((c - r) mod n) and
// antidiagonal ((r + c) mod n). Knut Vik placements must be fresh in all
// four; pandiagonal Latin placements must be fresh in the row and column and
// keep each diagonal sum reachable.
class Constraints {
 public:
  Constraints(std::size_t n, SearchTarget target)
      : n_(n),
        words_((n + 63) / 64),
        target_(target),
        target_sum_(static_cast<Value>(n) * (static_cast<Value>(n) - 1) / 2),
        row_(n * words_, 0),
        col_(n * words_, 0),
        diag_(n * words_, 0),
        anti_(n * words_, 0),
        diag_sum_(n, 0),
        anti_sum_(n, 0),
        diag_count_(n, 0),
        anti_count_(n, 0) {}

  bool can_place(std::size_t r, std::size_t c, Value v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= n_) return false;
    const auto u = static_cast<std::size_t>(v);
    if (test(row_, r, u) || test(col_, c, u)) return false;
    const std::size_t d = diagonal(r, c);
    const std::size_t a = antidiagonal(r, c);
    if (target_ == SearchTarget::knut_vik) return !test(diag_, d, u) && !test(anti_, a, u);
    return sum_reachable(diag_sum_[d] + v, diag_count_[d] + 1) &&
           sum_reachable(anti_sum_[a] + v, anti_count_[a] + 1);
  }

  void place(std::size_t r, std::size_t c, Value v) { update(r, c, v, true); }
  void unplace(std::size_t r, std::size_t c, Value v) { update(r, c, v, false); }

  // Bitmask of admissible values at (r, c); only valid for n <= 64.
  std::uint64_t candidates(std::size_t r, std::size_t c) const {
    const std::uint64_t full = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    std::uint64_t free = ~(row_[r] | col_[c]) & full;
    const std::size_t d = diagonal(r, c);
    const std::size_t a = antidiagonal(r, c);
    if (target_ == SearchTarget::knut_vik) return free & ~(diag_[d] | anti_[a]);
    std::uint64_t out = 0;
    for (std::uint64_t bits = free; bits != 0; bits &= bits - 1) {
      const auto v = static_cast<Value>(std::countr_zero(bits));
      if (sum_reachable(diag_sum_[d] + v, diag_count_[d] + 1) &&
          sum_reachable(anti_sum_[a] + v, anti_count_[a] + 1)) {
        out |= std::uint64_t{1} << v;
      }
    }
    return out;
  }

 private:
  std::size_t diagonal(std::size_t r, std::size_t c) const { return (c + n_ - r) % n_; }
  std::size_t antidiagonal(std::size_t r, std::size_t c) const { return (r + c) % n_; }

  bool test(const std::vector<std::uint64_t>& bits, std::size_t line, std::size_t v) const {
    return (bits[line * words_ + v / 64] >> (v % 64)) & 1U;
  }

  void flip(std::vector<std::uint64_t>& bits, std::size_t line, std::size_t v) {
    bits[line * words_ + v / 64] ^= std::uint64_t{1} << (v % 64);
  }

  // A line holding `filled` cells with total `sum` can still reach the
  // target with the remaining cells taking values in 0..n-1.
  bool sum_reachable(Value sum, std::size_t filled) const {
    const auto remaining = static_cast<Value>(n_ - filled);
    return sum <= target_sum_ && target_sum_ - sum <= remaining * (static_cast<Value>(n_) - 1);
  }

  void update(std::size_t r, std::size_t c, Value v, bool add) {
    const auto u = static_cast<std::size_t>(v);
    const std::size_t d = diagonal(r, c);
    const std::size_t a = antidiagonal(r, c);
    flip(row_, r, u);
    flip(col_, c, u);
    if (target_ == SearchTarget::knut_vik) {
      flip(diag_, d, u);
      flip(anti_, a, u);
      return;
    }
    const Value delta = add ? v : -v;
    diag_sum_[d] += delta;
    anti_sum_[a] += delta;
    diag_count_[d] += add ? 1 : static_cast<std::size_t>(-1);
    anti_count_[a] += add ? 1 : static_cast<std::size_t>(-1);
  }

  std::size_t n_;
  std::size_t words_;
  SearchTarget target_;
  Value target_sum_;
  std::vector<std::uint64_t> row_, col_, diag_, anti_;
  std::vector<Value> diag_sum_, anti_sum_;
  std::vector<std::size_t> diag_count_, anti_count_;
};

struct Walker {
  Walker(std::size_t n, SearchTarget target, std::size_t limit, bool stop_at_first)
      : n(n), cells(n * n, 0), state(n, target), limit(limit), stop_at_first(stop_at_first) {}

  // Places a fixed prefix without counting nodes. False if it is infeasible.
  bool preload(const std::vector<Value>& prefix) {
    for (std::size_t idx = 0; idx < prefix.size(); ++idx) {
      const std::size_t r = idx / n;
      const std::size_t c = idx % n;
      if (!state.can_place(r, c, prefix[idx])) return false;
      state.place(r, c, prefix[idx]);
      cells[idx] = prefix[idx];
    }
    return true;
  }

  // Depth-first from cell idx. When split_depth is set, stops there and
  // records the partial assignment instead of descending.
  void dfs(std::size_t idx) {
    if (stopped) return;
    if (idx == split_depth) {
      prefixes.emplace_back(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(idx));
      return;
    }
    if (idx == n * n) {
      ++count;
      if (exemplars.size() < limit) exemplars.emplace_back(n, cells);
      if (stop_at_first) stopped = true;
      return;
    }
    const std::size_t r = idx / n;
    const std::size_t c = idx % n;
    for (std::uint64_t bits = state.candidates(r, c); bits != 0; bits &= bits - 1) {
      const auto v = static_cast<Value>(std::countr_zero(bits));
      state.place(r, c, v);
      cells[idx] = v;
      ++nodes;
      dfs(idx + 1);
      state.unplace(r, c, v);
      if (stopped) return;
    }
  }

  std::size_t n;
  std::vector<Value> cells;
  Constraints state;
  std::size_t limit;
  bool stop_at_first;
  bool stopped = false;
  std::size_t split_depth = static_cast<std::size_t>(-1);
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  std::vector<Grid> exemplars;
  std::vector<std::vector<Value>> prefixes;
};

void validate(const SearchConfig& cfg) {
  if (cfg.n == 0) throw Error(ErrorCode::invalid_argument, "search order must be positive");
  if (cfg.n > kMaxSearchOrder) {
    throw Error(ErrorCode::cap_exceeded, "exhaustive search supports n <= " +
                                             std::to_string(kMaxSearchOrder) + ", got " +
                                             std::to_string(cfg.n));
  }
  if (cfg.seed_prefix.size() > cfg.n) {
    throw Error(ErrorCode::invalid_argument, "seed prefix longer than the first row");
  }
}

bool lex_less(const Grid& a, const Grid& b) {
  const auto av = a.values();
  const auto bv = b.values();
  return std::lexicographical_compare(av.begin(), av.end(), bv.begin(), bv.end());
}

SearchResult run_sequential(const SearchConfig& cfg, bool stop_at_first) {
  SearchResult result;
  Walker walker(cfg.n, cfg.target, stop_at_first ? 1 : cfg.max_exemplars, stop_at_first);
  if (walker.preload(cfg.seed_prefix)) walker.dfs(cfg.seed_prefix.size());
  result.count = walker.count;
  result.nodes_visited = walker.nodes;
  result.exemplars = std::move(walker.exemplars);
  return result;
}

SearchResult run_parallel(const SearchConfig& cfg) {
  SearchResult result;
  const std::size_t n = cfg.n;

  // Enumerate the admissible completions of the first row that is not fully
  // seeded; each becomes an independent task.
  Walker splitter(n, cfg.target, 0, false);
  if (!splitter.preload(cfg.seed_prefix)) return result;
  const std::size_t seeded = cfg.seed_prefix.size();
  splitter.split_depth = std::min(n * n, (seeded / n + 1) * n);
  splitter.dfs(seeded);
  const auto& tasks = splitter.prefixes;

  struct TaskResult {
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    std::vector<Grid> exemplars;
  };
  std::vector<TaskResult> partial(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      Walker walker(n, cfg.target, cfg.max_exemplars, false);
      walker.preload(tasks[t]);
      walker.dfs(tasks[t].size());
      partial[t] = {walker.count, walker.nodes, std::move(walker.exemplars)};
    }
  };

  std::size_t jobs = cfg.jobs != 0 ? cfg.jobs : std::max(1U, std::thread::hardware_concurrency());
  jobs = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();

  result.nodes_visited = splitter.nodes;
  for (auto& part : partial) {
    result.count += part.count;
    result.nodes_visited += part.nodes;
    for (auto& g : part.exemplars) result.exemplars.push_back(std::move(g));
  }
  std::sort(result.exemplars.begin(), result.exemplars.end(), lex_less);
  if (result.exemplars.size() > cfg.max_exemplars) {
    result.exemplars.erase(result.exemplars.begin() + static_cast<std::ptrdiff_t>(cfg.max_exemplars),
                           result.exemplars.end());
  }
  return result;
}

bool reducible(const SearchConfig& cfg) {
  return cfg.symmetry_reduction && cfg.target == SearchTarget::knut_vik && cfg.seed_prefix.empty();
}

SearchConfig normalized(const SearchConfig& cfg) {
  SearchConfig inner = cfg;
  inner.seed_prefix.resize(cfg.n);
  std::iota(inner.seed_prefix.begin(), inner.seed_prefix.end(), Value{0});
  // Every normalized solution is needed to rebuild the first exemplars.
  inner.max_exemplars = cfg.max_exemplars == 0 ? 0 : static_cast<std::size_t>(-1);
  return inner;
}

// Applies every symbol relabeling to squares whose first row is 0..n-1. The
// relabeled square's first row is the relabeling itself, so walking the
// relabelings in lexicographic order yields the exemplars in order.
std::vector<Grid> expand_relabelings(const std::vector<Grid>& base, std::size_t n,
                                     std::size_t limit) {
  std::vector<Grid> out;
  if (base.empty() || limit == 0) return out;
  std::vector<Value> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Value{0});
  do {
    std::vector<Grid> batch;
    for (const Grid& g : base) {
      std::vector<Value> values(g.values().begin(), g.values().end());
      for (Value& v : values) v = sigma[static_cast<std::size_t>(v)];
      batch.emplace_back(n, std::move(values));
    }
    std::sort(batch.begin(), batch.end(), lex_less);
    for (Grid& g : batch) {
      if (out.size() == limit) return out;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::string_view to_string(SearchTarget target) {
  switch (target) {
    case SearchTarget::knut_vik: return "knut_vik";
    case SearchTarget::pandiagonal_latin: return "pandiagonal_latin";
  }
  return "unknown";
}

std::optional<SearchTarget> parse_search_target(std::string_view name) {
  if (name == "knut_vik" || name == "knutvik") return SearchTarget::knut_vik;
  if (name == "pandiagonal_latin" || name == "pandiagonal-latin" || name == "panlatin") {
    return SearchTarget::pandiagonal_latin;
  }
  return std::nullopt;
}

SearchResult search(const SearchConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const bool reduce = reducible(cfg);
  const SearchConfig effective = reduce ? normalized(cfg) : cfg;
  SearchResult result =
      effective.parallel ? run_parallel(effective) : run_sequential(effective, false);
  if (reduce) {
    result.count *= factorial(cfg.n);
    result.exemplars = expand_relabelings(result.exemplars, cfg.n, cfg.max_exemplars);
  }
  result.target = cfg.target;
  result.n = cfg.n;
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

SearchResult count_knut_vik(SearchConfig cfg) {
  cfg.target = SearchTarget::knut_vik;
  return search(cfg);
}

std::optional<Grid> find_first(const SearchConfig& cfg) {
  validate(cfg);
  // The identity first row is the smallest possible one, so with reduction
  // the first normalized solution is the first solution overall.
  auto result = run_sequential(reducible(cfg) ? normalized(cfg) : cfg, true);
  if (result.exemplars.empty()) return std::nullopt;
  return std::move(result.exemplars.front());
}

bool oracle_accepts(const Grid& g, SearchTarget target) {
  const std::size_t n = g.order();
  Constraints state(n, target);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!state.can_place(r, c, g(r, c))) return false;
      state.place(r, c, g(r, c));
    }
  }
  return true;
}

Grid random_grid(std::size_t n, std::uint64_t seed, RandomKind kind) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(kind)};
  std::mt19937_64 rng(seq);
  std::vector<Value> values(n * n);
  if (kind == RandomKind::arbitrary) {
    std::uniform_int_distribution<Value> dist(0, static_cast<Value>(n * n) - 1);
    for (auto& v : values) v = dist(rng);
  } else {
    for (std::size_t r = 0; r < n; ++r) {
      auto row = values.begin() + static_cast<std::ptrdiff_t>(r * n);
      std::iota(row, row + static_cast<std::ptrdiff_t>(n), Value{0});
      std::shuffle(row, row + static_cast<std::ptrdiff_t>(n), rng);
    }
  }
  return Grid(n, std::move(values));
}

}  // namespace squares

#include "squares/constructors.hpp"

#include <array>
#include <numeric>
#include <string>

namespace squares {
namespace {

using i64 = std::int64_t;

void require_block_size(std::size_t k, std::size_t minimum) {
  if (k < minimum) {
    throw Error(ErrorCode::invalid_order,
                "k must be at least " + std::to_string(minimum) + ", got " + std::to_string(k));
  }
  if (k > kMaxBlockSize) {
    throw Error(ErrorCode::cap_exceeded, "k = " + std::to_string(k) + " exceeds the cap of " +
                                             std::to_string(kMaxBlockSize));
  }
}

void require_coprime_to_six(std::size_t k) {
  if (k % 2 == 0 || k % 3 == 0) {
    throw Error(ErrorCode::invalid_order,
                "k must not be divisible by 2 or 3 (got k = " + std::to_string(k) + ")");
  }
}

// Closed-form Knut Vik sudoku entry at 0-based (i, j).
Value knut_vik_entry(i64 k, i64 i, i64 j) {
  const i64 high = floor_mod(2 * i - j, k);
  const i64 low = floor_mod(2 * i + 2 * (i / k) - 2 * j + j / k, k);
  return k * high + low;
}

}  // namespace

Grid s_hat(std::size_t k) {
  require_block_size(k, 1);
  return Grid::generate(k * k, [k](std::size_t i, std::size_t j) { return (i + j / k) % k; });
}

Grid pan_super_sudoku(std::size_t k) {
  require_block_size(k, 1);
  // k * S^(i, j) + S^(j, i), expanded so no intermediate grids are built.
  return Grid::generate(k * k, [k](std::size_t i, std::size_t j) {
    return k * ((i + j / k) % k) + (j + i / k) % k;
  });
}

Grid panmagic_lift(const Grid& s) {
  const std::size_t n = s.order();
  const auto base = static_cast<Value>(n);
  return Grid::generate(n, [&](std::size_t i, std::size_t j) {
    Value high = 0;
    Value out = 0;
    if (__builtin_mul_overflow(base, s(i, j), &high) ||
        __builtin_add_overflow(high, s(i, n - 1 - j), &out)) {
      throw Error(ErrorCode::cap_exceeded, "panmagic_lift: entry overflows 64 bits");
    }
    return out;
  });
}

Grid knut_vik_sudoku(std::size_t k) {
  require_coprime_to_six(k);
  require_block_size(k, 5);
  const auto kk = static_cast<i64>(k);
  return Grid::generate(k * k, [kk](std::size_t i, std::size_t j) {
    return knut_vik_entry(kk, static_cast<i64>(i), static_cast<i64>(j));
  });
}

Grid block_A(std::size_t k) {
  require_coprime_to_six(k);
  require_block_size(k, 1);
  const auto kk = static_cast<i64>(k);
  return Grid::generate(k, [kk](std::size_t r, std::size_t c) {
    return floor_mod(2 * static_cast<i64>(r) - static_cast<i64>(c), kk);
  });
}

Grid block_Z(std::size_t k, std::size_t i) {
  require_coprime_to_six(k);
  require_block_size(k, 5);
  if (i >= k) {
    throw Error(ErrorCode::invalid_argument,
                "block index " + std::to_string(i) + " out of range 0.." + std::to_string(k - 1));
  }
  // Evaluate the closed formula over the cells of aligned block (0, i).
  const auto kk = static_cast<i64>(k);
  const i64 col0 = kk * static_cast<i64>(i);
  return Grid::generate(k, [&](std::size_t r, std::size_t c) {
    return knut_vik_entry(kk, static_cast<i64>(r), col0 + static_cast<i64>(c));
  });
}

Grid assemble_blocks(std::size_t k) {
  require_coprime_to_six(k);
  require_block_size(k, 5);
  std::vector<Grid> blocks;
  blocks.reserve(k);
  for (std::size_t i = 0; i < k; ++i) blocks.push_back(block_Z(k, i));
  return Grid::generate(k * k, [&](std::size_t i, std::size_t j) {
    const std::size_t br = i / k;
    const std::size_t bc = j / k;
    // Left two/down one: each block row starts two blocks further along.
    const Grid& z = blocks[(2 * br + bc) % k];
    return z(i % k, j % k);
  });
}

bool euler_lambda_valid(std::size_t n, std::int64_t lambda) {
  if (n < 5 || n % 2 == 0 || n % 3 == 0 || n > kMaxOrder) return false;
  const auto nn = static_cast<i64>(n);
  const i64 l = floor_mod(lambda, nn);
  if (l == 0 || l == 1 || l == nn - 1) return false;
  // Rows advance by 1, columns by lambda, the two diagonal families by
  // lambda + 1 and lambda - 1; each must generate Z_n.
  return std::gcd(l, nn) == 1 && std::gcd(l - 1, nn) == 1 && std::gcd(l + 1, nn) == 1;
}

Grid euler_knut_vik(std::size_t n, std::int64_t lambda) {
  if (n > kMaxOrder) {
    throw Error(ErrorCode::cap_exceeded, "n = " + std::to_string(n) + " exceeds the cap");
  }
  if (n < 5 || n % 2 == 0 || n % 3 == 0) {
    throw Error(ErrorCode::invalid_order,
                "n must be at least 5 and not divisible by 2 or 3 (got n = " +
                    std::to_string(n) + ")");
  }
  if (!euler_lambda_valid(n, lambda)) {
    throw Error(ErrorCode::invalid_lambda,
                "lambda = " + std::to_string(lambda) + " is not valid for n = " +
                    std::to_string(n) +
                    " (need lambda mod n not in {0, 1, n-1} and lambda-1, lambda, lambda+1 "
                    "coprime to n)");
  }
  const auto nn = static_cast<i64>(n);
  const i64 l = floor_mod(lambda, nn);
  return Grid::generate(n, [&](std::size_t i, std::size_t j) {
    return floor_mod(l * (static_cast<i64>(i) + 1) + static_cast<i64>(j) + 1, nn);
  });
}

Decomposition decompose(const Grid& g, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "decompose: k must be positive");
  const std::size_t n = g.order();
  if (k == 1) return {Grid::zeros(n), g};
  // Past this bound k^2 exceeds every representable entry.
  constexpr std::size_t kRootOfMax = 3037000499;
  if (k > kRootOfMax) return {Grid::zeros(n), g};
  const auto kk = static_cast<Value>(k);
  const Value limit = kk * kk;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j) >= limit) {
        throw Error(ErrorCode::entry_range,
                    "entry " + std::to_string(g(i, j)) + " at (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") is not below k^2 = " + std::to_string(limit));
      }
    }
  }
  return {Grid::generate(n, [&](std::size_t i, std::size_t j) { return g(i, j) / kk; }),
          Grid::generate(n, [&](std::size_t i, std::size_t j) { return g(i, j) % kk; })};
}

namespace {

struct KindName {
  ConstructionKind kind;
  std::string_view canonical;
  std::string_view alias;
};

constexpr std::array<KindName, 9> kKindNames{{
    {ConstructionKind::s_hat, "s_hat", "shat"},
    {ConstructionKind::pan_super_sudoku, "pan_super_sudoku", "pansudoku"},
    {ConstructionKind::panmagic_lift, "panmagic_lift", "panmagic"},
    {ConstructionKind::knut_vik_sudoku, "knut_vik_sudoku", "knutvik"},
    {ConstructionKind::euler_cyclic, "euler_cyclic", "euler"},
    {ConstructionKind::block_A, "block_A", "blockA"},
    {ConstructionKind::block_Z, "block_Z", "blockZ"},
    {ConstructionKind::block_W, "block_W", "blockW"},
    {ConstructionKind::assembled_blocks, "assembled_blocks", "assembled"},
}};

std::size_t need(const std::optional<std::size_t>& v, std::string_view what,
                 ConstructionKind kind) {
  if (!v) {
    throw Error(ErrorCode::invalid_argument,
                std::string(to_string(kind)) + " requires " + std::string(what));
  }
  return *v;
}

}  // namespace

std::string_view to_string(ConstructionKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.canonical;
  }
  return "unknown";
}

std::optional<ConstructionKind> parse_construction_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (name == entry.canonical || name == entry.alias) return entry.kind;
  }
  return std::nullopt;
}

Grid build(const ConstructionSpec& spec) {
  switch (spec.kind) {
    case ConstructionKind::s_hat:
      return s_hat(need(spec.k, "k", spec.kind));
    case ConstructionKind::pan_super_sudoku:
      return pan_super_sudoku(need(spec.k, "k", spec.kind));
    case ConstructionKind::panmagic_lift: {
      if (spec.lift_source == ConstructionKind::panmagic_lift) {
        throw Error(ErrorCode::invalid_argument, "panmagic_lift cannot lift itself");
      }
      ConstructionSpec source = spec;
      source.kind = spec.lift_source;
      return panmagic_lift(build(source));
    }
    case ConstructionKind::knut_vik_sudoku:
      return knut_vik_sudoku(need(spec.k, "k", spec.kind));
    case ConstructionKind::euler_cyclic: {
      if (!spec.lambda) throw Error(ErrorCode::invalid_argument, "euler_cyclic requires lambda");
      return euler_knut_vik(need(spec.n, "n", spec.kind), *spec.lambda);
    }
    case ConstructionKind::block_A:
      return block_A(need(spec.k, "k", spec.kind));
    case ConstructionKind::block_Z:
      return block_Z(need(spec.k, "k", spec.kind), need(spec.block_index, "a block index", spec.kind));
    case ConstructionKind::block_W:
      if (spec.k && *spec.k != 7) {
        throw Error(ErrorCode::invalid_argument, "block_W is the order-7 block family (k = 7)");
      }
      return block_Z(7, need(spec.block_index, "a block index", spec.kind));
    case ConstructionKind::assembled_blocks:
      return assemble_blocks(need(spec.k, "k", spec.kind));
  }
  throw Error(ErrorCode::invalid_argument, "unknown construction kind");
}

}  // namespace squares

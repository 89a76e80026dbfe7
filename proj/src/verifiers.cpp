#include "squares/verifiers.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace squares {
namespace {

// ---------------------------------------------------------------------------
// Direct mode: line sums and permutation checks.

struct Lines {
  const Grid& g;
  std::size_t n;
  std::size_t k;  // 0 when the order is not a perfect square

  Value at(WitnessKind kind, std::size_t index, std::size_t t) const {
    switch (kind) {
      case WitnessKind::row: return g(index, t);
      case WitnessKind::column: return g(t, index);
      case WitnessKind::diagonal: return g(t, (t + index) % n);
      case WitnessKind::antidiagonal: return g(t, (index + n - t) % n);
      case WitnessKind::block: {
        const std::size_t br = index / k;
        const std::size_t bc = index % k;
        return g(br * k + t / k, bc * k + t % k);
      }
      case WitnessKind::broken_block: {
        const std::size_t r0 = index / n;
        const std::size_t c0 = index % n;
        return g((r0 + t / k) % n, (c0 + t % k) % n);
      }
      case WitnessKind::cell: return g.values()[index];
    }
    return 0;
  }

  std::size_t count(WitnessKind kind) const {
    switch (kind) {
      case WitnessKind::block: return k * k;
      case WitnessKind::broken_block:
      case WitnessKind::cell: return n * n;
      default: return n;
    }
  }

  Value sum(WitnessKind kind, std::size_t index) const {
    Value s = 0;
    for (std::size_t t = 0; t < n; ++t) s += at(kind, index, t);
    return s;
  }
};

class PermutationCheck {
 public:
  explicit PermutationCheck(std::size_t n) : stamp_(n, 0) {}

  template <class Cell>
  bool operator()(std::size_t n, Cell&& cell) {
    ++epoch_;
    for (std::size_t t = 0; t < n; ++t) {
      const Value v = cell(t);
      if (v < 0 || static_cast<std::size_t>(v) >= n) return false;
      auto& s = stamp_[static_cast<std::size_t>(v)];
      if (s == epoch_) return false;
      s = epoch_;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

Verdict holds() { return {true, std::nullopt}; }

Verdict fails(Property p, WitnessKind kind, std::size_t index) {
  return {false, Witness{p, kind, index}};
}

Verdict forward(Property p, Verdict prerequisite) {
  if (prerequisite.witness) prerequisite.witness->property = p;
  return prerequisite;
}

Verdict first_sum_mismatch(Property p, const Lines& lines, Value target,
                           std::initializer_list<WitnessKind> kinds) {
  for (WitnessKind kind : kinds) {
    for (std::size_t i = 0; i < lines.count(kind); ++i) {
      if (lines.sum(kind, i) != target) return fails(p, kind, i);
    }
  }
  return holds();
}

Verdict first_non_permutation(Property p, const Lines& lines,
                              std::initializer_list<WitnessKind> kinds) {
  PermutationCheck is_perm(lines.n);
  for (WitnessKind kind : kinds) {
    for (std::size_t i = 0; i < lines.count(kind); ++i) {
      if (!is_perm(lines.n, [&](std::size_t t) { return lines.at(kind, i, t); })) {
        return fails(p, kind, i);
      }
    }
  }
  return holds();
}

Lines lines_of(const Grid& g) { return Lines{g, g.order(), exact_sqrt(g.order()).value_or(0)}; }

Value row0_sum(const Lines& lines) { return lines.sum(WitnessKind::row, 0); }

Verdict diagnose_semi_magic(const Grid& g) {
  const Lines lines = lines_of(g);
  return first_sum_mismatch(Property::semi_magic, lines, row0_sum(lines),
                            {WitnessKind::row, WitnessKind::column});
}

Verdict diagnose_latin(const Grid& g) {
  return first_non_permutation(Property::latin, lines_of(g),
                               {WitnessKind::row, WitnessKind::column});
}

Verdict diagnose_sudoku(const Grid& g) {
  const Lines lines = lines_of(g);
  if (lines.k == 0) return {false, std::nullopt};
  return first_non_permutation(Property::sudoku, lines,
                               {WitnessKind::row, WitnessKind::column, WitnessKind::block});
}

Verdict diagnose_natural(const Grid& g) {
  const std::size_t cells = g.order() * g.order();
  std::vector<bool> seen(cells, false);
  const auto values = g.values();
  for (std::size_t i = 0; i < cells; ++i) {
    const Value v = values[i];
    if (v < 0 || static_cast<std::size_t>(v) >= cells || seen[static_cast<std::size_t>(v)]) {
      return fails(Property::natural, WitnessKind::cell, i);
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return holds();
}

// ---------------------------------------------------------------------------
// Identity mode. Permutation matrices are carried as index maps: for a
// permutation matrix P, row i has its single 1 in column image[i].

struct Perm {
  std::vector<std::size_t> image;

  static Perm from_matrix(const Grid& p) {
    const std::size_t n = p.order();
    Perm out{std::vector<std::size_t>(n, n)};
    std::vector<bool> column_used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Value v = p(i, j);
        if (v == 0) continue;
        if (v != 1 || out.image[i] != n || column_used[j]) {
          throw Error(ErrorCode::invalid_argument, "not a permutation matrix");
        }
        out.image[i] = j;
        column_used[j] = true;
      }
      if (out.image[i] == n) throw Error(ErrorCode::invalid_argument, "not a permutation matrix");
    }
    return out;
  }

  static Perm identity(std::size_t n) {
    Perm out{std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) out.image[i] = i;
    return out;
  }

  // Matrix product this * other.
  Perm then(const Perm& other) const {
    Perm out{image};
    for (auto& v : out.image) v = other.image[v];
    return out;
  }

  Perm inverse() const {
    Perm out{image};
    for (std::size_t i = 0; i < image.size(); ++i) out.image[image[i]] = i;
    return out;
  }
};

// Powers P^0 .. P^count of a permutation matrix.
std::vector<Perm> powers(const Grid& p, std::size_t count) {
  const Perm base = Perm::from_matrix(p);
  std::vector<Perm> out;
  out.reserve(count + 1);
  out.push_back(Perm::identity(p.order()));
  for (std::size_t e = 1; e <= count; ++e) out.push_back(out.back().then(base));
  return out;
}

// (P M Q)(r, c) = M(P.image[r], Q^-1.image[c]).
template <class Visit>
void for_each_sandwich(const Perm& left, const Grid& m, const Perm& right, Visit&& visit) {
  const Perm column_source = right.inverse();
  const std::size_t n = m.order();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      visit(r, c, m(left.image[r], column_source.image[c]));
    }
  }
}

// M - P M Q has no zero entry.
bool nowhere_equal_sandwich(const Grid& m, const Perm& left, const Perm& right) {
  const Perm column_source = right.inverse();
  const std::size_t n = m.order();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (m(r, c) - m(left.image[r], column_source.image[c]) == 0) return false;
    }
  }
  return true;
}

Grid sum_of_sandwiches(const Grid& m, const std::vector<std::pair<Perm, Perm>>& terms) {
  const std::size_t n = m.order();
  std::vector<Value> acc(n * n, 0);
  for (const auto& [left, right] : terms) {
    for_each_sandwich(left, m, right,
                      [&](std::size_t r, std::size_t c, Value v) { acc[r * n + c] += v; });
  }
  return Grid(n, std::move(acc));
}

bool entries_below(const Grid& g, Value bound) {
  const auto values = g.values();
  return std::all_of(values.begin(), values.end(), [bound](Value v) { return v < bound; });
}

Grid shifter(std::size_t n) { return permutation_matrix(PermutationKind::shifter, n); }

SemiMagicResult semi_magic_identity(const Grid& g) {
  const Grid mu = calculus::times_ones_right(g);
  const Grid um = calculus::times_ones_left(g);
  const Value m = mu(0, 0);
  if (mu == um && calculus::is_scaled_ones(mu, m)) return {true, m};
  return {false, std::nullopt};
}

bool magic_identity(const Grid& g) {
  const auto semi = semi_magic_identity(g);
  return semi.holds && calculus::trace(g) == *semi.index && calculus::cross_trace(g) == *semi.index;
}

bool pandiagonal_identity(const Grid& g) {
  const auto semi = semi_magic_identity(g);
  return semi.holds && calculus::is_scaled_ones(calculus::antidiagonal_sums(g), *semi.index) &&
         calculus::is_scaled_ones(calculus::diagonal_sums(g), *semi.index);
}

// M - K^i M and M - M K^i have no zero entry for i = 1..n-1, and every entry
// is one of the symbols 0..n-1.
bool latin_identity(const Grid& g) {
  const std::size_t n = g.order();
  if (!entries_below(g, static_cast<Value>(n))) return false;
  const auto k_pow = powers(shifter(n), n);
  const Perm id = Perm::identity(n);
  for (std::size_t i = 1; i < n; ++i) {
    if (!nowhere_equal_sandwich(g, k_pow[i], id)) return false;
    if (!nowhere_equal_sandwich(g, id, k_pow[i])) return false;
  }
  return true;
}

// V - K^i V K^i and V - K^i V K^-i have no zero entry for i = 1..n-1.
bool knut_vik_identity(const Grid& g) {
  if (!latin_identity(g)) return false;
  const std::size_t n = g.order();
  const auto k_pow = powers(shifter(n), n);
  for (std::size_t i = 1; i < n; ++i) {
    if (!nowhere_equal_sandwich(g, k_pow[i], k_pow[i])) return false;
    if (!nowhere_equal_sandwich(g, k_pow[i], k_pow[n - i])) return false;
  }
  return true;
}

// M - K^i M K^j has no zero entry for i, j = 1..n except i = j = n, and every
// entry lies in 0..n^2-1.
bool natural_identity(const Grid& g) {
  const std::size_t n = g.order();
  if (!entries_below(g, static_cast<Value>(n * n))) return false;
  const auto k_pow = powers(shifter(n), n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (i == n && j == n) continue;
      if (!nowhere_equal_sandwich(g, k_pow[i], k_pow[j])) return false;
    }
  }
  return true;
}

// S - H^i S H^j has no zero entry for i, j = 1..k except i = j = k.
bool sudoku_identity(const Grid& g) {
  const std::size_t n = g.order();
  const auto k = exact_sqrt(n);
  if (!k || !latin_identity(g)) return false;
  const auto h_pow = powers(permutation_matrix(PermutationKind::sudoku_h, n, *k), *k);
  for (std::size_t i = 1; i <= *k; ++i) {
    for (std::size_t j = 1; j <= *k; ++j) {
      if (i == *k && j == *k) continue;
      if (!nowhere_equal_sandwich(g, h_pow[i], h_pow[j])) return false;
    }
  }
  return true;
}

bool super_sudoku_identity(const Grid& g) {
  if (!sudoku_identity(g)) return false;
  const auto semi = semi_magic_identity(g);
  return semi.holds && calculus::is_scaled_ones(calculus::block_sums(g, *exact_sqrt(g.order())),
                                                *semi.index);
}

bool agree(Property p, bool direct, bool identity) {
  if (direct != identity) {
    throw Error(ErrorCode::internal_inconsistency,
                std::string("direct and identity verification disagree on ") +
                    std::string(to_string(p)) + " (direct " + (direct ? "true" : "false") +
                    ", identity " + (identity ? "true" : "false") + ")");
  }
  return direct;
}

template <class Identity>
bool run(Property p, const Grid& g, VerifyMode mode, Identity&& identity) {
  switch (mode) {
    case VerifyMode::direct: return diagnose(p, g).holds;
    case VerifyMode::identity: return identity(g);
    case VerifyMode::both: return agree(p, diagnose(p, g).holds, identity(g));
  }
  return false;
}

}  // namespace

std::string_view to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::direct: return "direct";
    case VerifyMode::identity: return "identity";
    case VerifyMode::both: return "both";
  }
  return "unknown";
}

std::optional<VerifyMode> parse_verify_mode(std::string_view name) {
  if (name == "direct") return VerifyMode::direct;
  if (name == "identity") return VerifyMode::identity;
  if (name == "both") return VerifyMode::both;
  return std::nullopt;
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::semi_magic: return "semi_magic";
    case Property::magic: return "magic";
    case Property::pandiagonal: return "pandiagonal";
    case Property::latin: return "latin";
    case Property::knut_vik: return "knut_vik";
    case Property::natural: return "natural";
    case Property::sudoku: return "sudoku";
    case Property::super_sudoku: return "super_sudoku";
  }
  return "unknown";
}

std::optional<Property> parse_property(std::string_view name) {
  std::string compact;
  for (char ch : name) {
    if (ch != '_' && ch != '-') compact.push_back(ch);
  }
  for (Property p : kAllProperties) {
    std::string candidate;
    for (char ch : to_string(p)) {
      if (ch != '_') candidate.push_back(ch);
    }
    if (compact == candidate) return p;
  }
  return std::nullopt;
}

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::row: return "row";
    case WitnessKind::column: return "column";
    case WitnessKind::diagonal: return "diagonal";
    case WitnessKind::antidiagonal: return "antidiagonal";
    case WitnessKind::block: return "block";
    case WitnessKind::broken_block: return "broken_block";
    case WitnessKind::cell: return "cell";
  }
  return "unknown";
}

Verdict diagnose(Property p, const Grid& g) {
  const Lines lines = lines_of(g);
  switch (p) {
    case Property::semi_magic: return diagnose_semi_magic(g);
    case Property::magic: {
      auto semi = diagnose_semi_magic(g);
      if (!semi.holds) return forward(p, semi);
      const std::size_t cross = lines.n - 1;
      const Value m = row0_sum(lines);
      if (lines.sum(WitnessKind::diagonal, 0) != m) return fails(p, WitnessKind::diagonal, 0);
      if (lines.sum(WitnessKind::antidiagonal, cross) != m) {
        return fails(p, WitnessKind::antidiagonal, cross);
      }
      return holds();
    }
    case Property::pandiagonal: {
      auto semi = diagnose_semi_magic(g);
      if (!semi.holds) return forward(p, semi);
      return first_sum_mismatch(p, lines, row0_sum(lines),
                                {WitnessKind::diagonal, WitnessKind::antidiagonal});
    }
    case Property::latin: return diagnose_latin(g);
    case Property::knut_vik: {
      auto latin = diagnose_latin(g);
      if (!latin.holds) return forward(p, latin);
      return first_non_permutation(p, lines, {WitnessKind::diagonal, WitnessKind::antidiagonal});
    }
    case Property::natural: return diagnose_natural(g);
    case Property::sudoku: return diagnose_sudoku(g);
    case Property::super_sudoku: {
      auto sudoku = diagnose_sudoku(g);
      if (!sudoku.holds) return forward(p, sudoku);
      return first_sum_mismatch(p, lines, row0_sum(lines), {WitnessKind::broken_block});
    }
  }
  return {false, std::nullopt};
}

SemiMagicResult is_semi_magic(const Grid& g, VerifyMode mode) {
  auto direct = [&] {
    const auto verdict = diagnose_semi_magic(g);
    SemiMagicResult out{verdict.holds, std::nullopt};
    if (verdict.holds) out.index = row0_sum(lines_of(g));
    return out;
  };
  switch (mode) {
    case VerifyMode::direct: return direct();
    case VerifyMode::identity: return semi_magic_identity(g);
    case VerifyMode::both: {
      const auto d = direct();
      const auto i = semi_magic_identity(g);
      agree(Property::semi_magic, d.holds, i.holds);
      if (d.index != i.index) {
        throw Error(ErrorCode::internal_inconsistency, "semi-magic index differs between modes");
      }
      return d;
    }
  }
  return {};
}

bool is_magic(const Grid& g, VerifyMode mode) {
  return run(Property::magic, g, mode, magic_identity);
}
bool is_pandiagonal(const Grid& g, VerifyMode mode) {
  return run(Property::pandiagonal, g, mode, pandiagonal_identity);
}
bool is_latin(const Grid& g, VerifyMode mode) {
  return run(Property::latin, g, mode, latin_identity);
}
bool is_knut_vik(const Grid& g, VerifyMode mode) {
  return run(Property::knut_vik, g, mode, knut_vik_identity);
}
bool is_natural(const Grid& g, VerifyMode mode) {
  return run(Property::natural, g, mode, natural_identity);
}
bool is_sudoku(const Grid& g, VerifyMode mode) {
  return run(Property::sudoku, g, mode, sudoku_identity);
}
bool is_super_sudoku(const Grid& g, VerifyMode mode) {
  return run(Property::super_sudoku, g, mode, super_sudoku_identity);
}

bool check(Property p, const Grid& g, VerifyMode mode) {
  switch (p) {
    case Property::semi_magic: return is_semi_magic(g, mode).holds;
    case Property::magic: return is_magic(g, mode);
    case Property::pandiagonal: return is_pandiagonal(g, mode);
    case Property::latin: return is_latin(g, mode);
    case Property::knut_vik: return is_knut_vik(g, mode);
    case Property::natural: return is_natural(g, mode);
    case Property::sudoku: return is_sudoku(g, mode);
    case Property::super_sudoku: return is_super_sudoku(g, mode);
  }
  return false;
}

bool is_orthogonal(const Grid& a, const Grid& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorCode::order_mismatch, "is_orthogonal: orders " + std::to_string(a.order()) +
                                               " and " + std::to_string(b.order()) + " differ");
  }
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<std::pair<Value, Value>> pairs;
  pairs.reserve(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) pairs.emplace_back(av[i], bv[i]);
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

bool ClassificationReport::flag(Property p) const {
  switch (p) {
    case Property::semi_magic: return is_semi_magic;
    case Property::magic: return is_magic;
    case Property::pandiagonal: return is_pandiagonal;
    case Property::latin: return is_latin;
    case Property::knut_vik: return is_knut_vik;
    case Property::natural: return is_natural;
    case Property::sudoku: return is_sudoku;
    case Property::super_sudoku: return is_super_sudoku;
  }
  return false;
}

ClassificationReport classify(const Grid& g, VerifyMode mode) {
  ClassificationReport report;
  report.n = g.order();
  report.k = exact_sqrt(g.order());

  const auto semi = squares::is_semi_magic(g, mode);
  report.is_semi_magic = semi.holds;
  report.measured_index = semi.index;
  report.is_magic = squares::is_magic(g, mode);
  report.is_pandiagonal = squares::is_pandiagonal(g, mode);
  report.is_latin = squares::is_latin(g, mode);
  report.is_knut_vik = squares::is_knut_vik(g, mode);
  report.is_natural = squares::is_natural(g, mode);
  report.is_sudoku = squares::is_sudoku(g, mode);
  report.is_super_sudoku = squares::is_super_sudoku(g, mode);

  for (Property p : kAllProperties) {
    if (report.flag(p)) continue;
    if (auto witness = diagnose(p, g).witness) report.failures.push_back(*witness);
  }
  return report;
}

namespace calculus {

Grid sandwich(const Grid& p, const Grid& m, const Grid& q) {
  if (p.order() != m.order() || q.order() != m.order()) {
    throw Error(ErrorCode::order_mismatch, "sandwich: order mismatch");
  }
  return sum_of_sandwiches(m, {{Perm::from_matrix(p), Perm::from_matrix(q)}});
}

Grid times_ones_right(const Grid& m) { return multiply(m, Grid::filled(m.order(), 1)); }

Grid times_ones_left(const Grid& m) { return multiply(Grid::filled(m.order(), 1), m); }

Value trace(const Grid& m) {
  Value t = 0;
  for (std::size_t i = 0; i < m.order(); ++i) t += m(i, i);
  return t;
}

Value cross_trace(const Grid& m) {
  const std::size_t n = m.order();
  return trace(sandwich(permutation_matrix(PermutationKind::reflection, n), m, Grid::identity(n)));
}

Grid antidiagonal_sums(const Grid& m) {
  const std::size_t n = m.order();
  const auto k_pow = powers(shifter(n), n);
  std::vector<std::pair<Perm, Perm>> terms;
  for (std::size_t i = 1; i <= n; ++i) terms.emplace_back(k_pow[i], k_pow[i]);
  return sum_of_sandwiches(m, terms);
}

Grid diagonal_sums(const Grid& m) {
  const std::size_t n = m.order();
  const auto k_pow = powers(shifter(n), n);
  std::vector<std::pair<Perm, Perm>> terms;
  for (std::size_t i = 1; i <= n; ++i) terms.emplace_back(k_pow[i], k_pow[n - i]);
  return sum_of_sandwiches(m, terms);
}

Grid block_sums(const Grid& m, std::size_t k) {
  const std::size_t n = m.order();
  if (k == 0 || k > n) throw Error(ErrorCode::invalid_argument, "block_sums: bad block size");
  const auto k_pow = powers(shifter(n), k - 1);
  std::vector<std::pair<Perm, Perm>> terms;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) terms.emplace_back(k_pow[a], k_pow[b]);
  }
  return sum_of_sandwiches(m, terms);
}

bool nowhere_equal(const Grid& a, const Grid& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::order_mismatch, "nowhere_equal: order mismatch");
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (av[i] - bv[i] == 0) return false;
  }
  return true;
}

bool is_scaled_ones(const Grid& m, Value scale) {
  const auto values = m.values();
  return std::all_of(values.begin(), values.end(), [scale](Value v) { return v == scale; });
}

}  // namespace calculus

}  // namespace squares

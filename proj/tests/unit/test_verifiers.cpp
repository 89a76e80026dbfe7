#include <catch_amalgamated.hpp>

#include "squares/constructors.hpp"
#include "squares/search.hpp"
#include "squares/verifiers.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace squares;

namespace {

constexpr std::array<VerifyMode, 2> kModes{VerifyMode::direct, VerifyMode::identity};

bool oracle_check(Property p, const Grid& g) {
  switch (p) {
    case Property::semi_magic: return oracle::semi_magic(g);
    case Property::magic: return oracle::magic(g);
    case Property::pandiagonal: return oracle::pandiagonal(g);
    case Property::latin: return oracle::latin(g);
    case Property::knut_vik: return oracle::knut_vik(g);
    case Property::natural: return oracle::natural(g);
    case Property::sudoku: return oracle::sudoku(g);
    case Property::super_sudoku: return oracle::super_sudoku(g);
  }
  return false;
}

std::vector<Grid> fixture_corpus() {
  std::vector<Grid> out;
  for (const char* name : {"s9", "s9_hat", "s9_hat_t", "m9", "t16", "s16", "m16", "v25", "a5",
                           "b5", "c5", "w0", "w6", "w_quotient", "k9", "h9"}) {
    out.push_back(oracle::load_fixture(name));
  }
  return out;
}

// The witness line, recomputed independently of the verifier.
oracle::Line witness_line(const Grid& g, const Witness& w) {
  const std::size_t n = g.order();
  const std::size_t k = exact_sqrt(n).value_or(0);
  switch (w.kind) {
    case WitnessKind::row: return oracle::rows_of(g)[w.index];
    case WitnessKind::column: return oracle::cols_of(g)[w.index];
    case WitnessKind::diagonal: return oracle::diagonals_of(g)[w.index];
    case WitnessKind::antidiagonal: return oracle::antidiagonals_of(g)[w.index];
    case WitnessKind::block: return oracle::aligned_blocks_of(g, k)[w.index];
    case WitnessKind::broken_block: return oracle::broken_blocks_of(g, k)[w.index];
    case WitnessKind::cell: return {g.values()[w.index]};
  }
  return {};
}

bool is_sum_property(Property p) {
  return p == Property::semi_magic || p == Property::magic || p == Property::pandiagonal ||
         p == Property::super_sudoku;
}

// True when the witness really violates the property on its own.
bool witness_violates(const Grid& g, const Witness& w) {
  const auto n = static_cast<Value>(g.order());
  const oracle::Line line = witness_line(g, w);
  if (w.kind == WitnessKind::cell) {
    const Value v = line[0];
    if (v < 0 || v >= n * n) return true;
    for (std::size_t i = 0; i < w.index; ++i) {
      if (g.values()[i] == v) return true;
    }
    return false;
  }
  const bool bad_sum = oracle::sum(line) != oracle::row0_sum(g);
  const bool bad_perm = !oracle::is_permutation_of_range(line, n);
  if (is_sum_property(w.property)) {
    // super_sudoku forwards sudoku's permutation witnesses.
    return w.property == Property::super_sudoku ? (bad_sum || bad_perm) : bad_sum;
  }
  return bad_perm;
}

void check_hierarchy(const ClassificationReport& r) {
  if (r.is_magic) CHECK(r.is_semi_magic);
  if (r.is_pandiagonal) CHECK(r.is_semi_magic);
  if (r.is_knut_vik) {
    CHECK(r.is_latin);
    CHECK(r.is_pandiagonal);
  }
  if (r.is_super_sudoku) CHECK(r.is_sudoku);
  if (r.is_sudoku) CHECK(r.is_latin);
  if (r.is_latin) CHECK(r.is_semi_magic);
  CHECK(r.measured_index.has_value() == r.is_semi_magic);
}

}  // namespace

TEST_CASE("semi-magic", "[verifiers]") {
  for (VerifyMode mode : kModes) {
    const auto s9 = is_semi_magic(oracle::load_fixture("s9"), mode);
    CHECK(s9.holds);
    CHECK(s9.index == std::optional<Value>{36});
    CHECK(is_semi_magic(oracle::load_fixture("m9"), mode).index == std::optional<Value>{360});
    const auto bad = is_semi_magic(Grid::from_rows({{0, 1}, {0, 1}}), mode);
    CHECK_FALSE(bad.holds);
    CHECK_FALSE(bad.index.has_value());
  }
}

TEST_CASE("magic", "[verifiers]") {
  for (VerifyMode mode : kModes) {
    CHECK(is_magic(oracle::load_fixture("m9"), mode));
    CHECK(is_magic(oracle::load_fixture("s9"), mode));
    CHECK_FALSE(is_magic(Grid::from_rows({{0, 1}, {1, 0}}), mode));
  }
  const Grid s9 = oracle::load_fixture("s9");
  CHECK(calculus::trace(s9) == 36);
  CHECK(calculus::cross_trace(s9) == 36);
}

TEST_CASE("pandiagonal", "[verifiers]") {
  const Grid cyclic3 = Grid::generate(3, [](std::size_t i, std::size_t j) { return (i + j) % 3; });
  for (VerifyMode mode : kModes) {
    CHECK(is_pandiagonal(oracle::load_fixture("s9"), mode));
    CHECK(is_pandiagonal(oracle::load_fixture("m16"), mode));
    CHECK_FALSE(is_pandiagonal(cyclic3, mode));
  }
  const Verdict v = diagnose(Property::pandiagonal, cyclic3);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->kind == WitnessKind::antidiagonal);
  CHECK(v.witness->index == 0);
}

TEST_CASE("latin", "[verifiers]") {
  for (VerifyMode mode : kModes) {
    CHECK(is_latin(oracle::load_fixture("s9"), mode));
    CHECK_FALSE(is_latin(oracle::load_fixture("m9"), mode));
    CHECK(is_latin(oracle::load_fixture("v25"), mode));
    // Distinct entries per line but outside 0..n-1.
    CHECK_FALSE(is_latin(Grid::from_rows({{1, 2}, {2, 1}}), mode));
  }
}

TEST_CASE("knut vik", "[verifiers]") {
  for (VerifyMode mode : kModes) {
    CHECK(is_knut_vik(oracle::load_fixture("v25"), mode));
    CHECK_FALSE(is_knut_vik(oracle::load_fixture("s9"), mode));
    CHECK(is_knut_vik(euler_knut_vik(7, 3), mode));
  }
}

TEST_CASE("natural", "[verifiers]") {
  for (VerifyMode mode : kModes) {
    CHECK(is_natural(oracle::load_fixture("m9"), mode));
    CHECK_FALSE(is_natural(oracle::load_fixture("m16"), mode));
    CHECK(is_natural(block_at(oracle::load_fixture("v25"), 5, {0, 0, false}), mode));
    CHECK_FALSE(is_natural(Grid::from_rows({{1, 2}, {3, 4}}), mode));
  }
}

TEST_CASE("sudoku", "[verifiers]") {
  for (VerifyMode mode : kModes) {
    CHECK(is_sudoku(oracle::load_fixture("s9"), mode));
    CHECK(is_sudoku(oracle::load_fixture("v25"), mode));
    CHECK_FALSE(is_sudoku(euler_knut_vik(7, 2), mode));
    CHECK_FALSE(is_sudoku(Grid::generate(9, [](std::size_t i, std::size_t j) { return (i + j) % 9; }),
                          mode));
  }
  // Recorded, not asserted by the construction: cyclic squares are not
  // sudoku at order 25 because each aligned block repeats values.
  const Grid e25 = euler_knut_vik(25, 2);
  CHECK(is_sudoku(e25) == oracle::sudoku(e25));
  CHECK(is_sudoku(e25, VerifyMode::identity) == is_sudoku(e25));
}

TEST_CASE("super-sudoku", "[verifiers]") {
  const Grid s9 = oracle::load_fixture("s9");
  for (VerifyMode mode : kModes) {
    CHECK(is_super_sudoku(s9, mode));
    CHECK_FALSE(is_super_sudoku(oracle::load_fixture("v25"), mode));
    CHECK(is_super_sudoku(oracle::load_fixture("s16"), mode));
  }
  CHECK(calculus::block_sums(s9, 3) == Grid::filled(9, 36));
  CHECK(calculus::antidiagonal_sums(s9) == Grid::filled(9, 36));
  CHECK(calculus::diagonal_sums(s9) == Grid::filled(9, 36));
  CHECK(calculus::times_ones_right(s9) == Grid::filled(9, 36));
  CHECK(calculus::times_ones_left(s9) == Grid::filled(9, 36));
  CHECK(calculus::is_scaled_ones(calculus::block_sums(s9, 3), 36));
  CHECK_FALSE(calculus::is_scaled_ones(calculus::block_sums(oracle::load_fixture("v25"), 5), 300));
}

TEST_CASE("calculus building blocks match dense products", "[verifiers][property]") {
  for (std::size_t n : {4U, 9U}) {
    const Grid k = permutation_matrix(PermutationKind::shifter, n);
    const Grid r = permutation_matrix(PermutationKind::reflection, n);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Grid m = random_grid(n, seed, RandomKind::arbitrary);
      CHECK(calculus::sandwich(k, m, r) == multiply(multiply(k, m), r));
      CHECK(calculus::sandwich(power(k, 3), m, power(k, 2)) ==
            multiply(multiply(power(k, 3), m), power(k, 2)));
      CHECK(calculus::cross_trace(m) == calculus::trace(multiply(r, m)));

      std::vector<Value> diag(n * n, 0);
      std::vector<Value> anti(n * n, 0);
      for (std::size_t i = 1; i <= n; ++i) {
        const Grid ki = oracle::shifter_power(n, static_cast<std::int64_t>(i));
        const Grid kneg = oracle::shifter_power(n, -static_cast<std::int64_t>(i));
        const Grid a = multiply(multiply(ki, m), ki);
        const Grid d = multiply(multiply(ki, m), kneg);
        for (std::size_t x = 0; x < n * n; ++x) {
          anti[x] += a.values()[x];
          diag[x] += d.values()[x];
        }
      }
      CHECK(calculus::antidiagonal_sums(m) == Grid(n, anti));
      CHECK(calculus::diagonal_sums(m) == Grid(n, diag));
    }
  }
  CHECK(calculus::nowhere_equal(Grid::filled(2, 1), Grid::filled(2, 2)));
  CHECK_FALSE(calculus::nowhere_equal(Grid::from_rows({{1, 2}, {3, 4}}), Grid::from_rows({{0, 2}, {0, 0}})));
  CHECK_THROWS_AS(calculus::sandwich(Grid::filled(3, 1), Grid::zeros(3), Grid::identity(3)), Error);
}

TEST_CASE("orthogonality", "[verifiers]") {
  const Grid s9 = oracle::load_fixture("s9");
  const Grid v25 = oracle::load_fixture("v25");
  CHECK(is_orthogonal(s9, reflect_cols(s9)));
  CHECK(is_orthogonal(v25, reflect_cols(v25)));
  CHECK_FALSE(is_orthogonal(s9, s9));
  try {
    is_orthogonal(s9, v25);
    FAIL("order mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::order_mismatch);
  }
}

TEST_CASE("classify", "[verifiers]") {
  const auto m9 = classify(oracle::load_fixture("m9"));
  CHECK(m9.is_natural);
  CHECK(m9.is_magic);
  CHECK(m9.is_pandiagonal);
  CHECK(m9.is_semi_magic);
  CHECK_FALSE(m9.is_latin);
  CHECK(m9.measured_index == std::optional<Value>{360});
  CHECK(m9.k == std::optional<std::size_t>{3});

  const auto v25 = classify(oracle::load_fixture("v25"));
  CHECK(v25.is_latin);
  CHECK(v25.is_knut_vik);
  CHECK(v25.is_pandiagonal);
  CHECK(v25.is_sudoku);
  CHECK_FALSE(v25.is_super_sudoku);
  REQUIRE(v25.failures.size() == 2);  // natural and super_sudoku

  // The zero grid has every line summing to 0, so the sum properties hold.
  const auto zero = classify(Grid::zeros(3));
  CHECK(zero.is_semi_magic);
  CHECK(zero.measured_index == std::optional<Value>{0});
  CHECK(zero.is_magic);
  CHECK(zero.is_pandiagonal);
  CHECK_FALSE(zero.is_latin);
  CHECK_FALSE(zero.is_knut_vik);
  CHECK_FALSE(zero.is_natural);
  CHECK_FALSE(zero.is_sudoku);
  CHECK_FALSE(zero.is_super_sudoku);
  CHECK(zero.failures.front() == Witness{Property::latin, WitnessKind::row, 0});

  const auto odd = classify(Grid::zeros(5));
  CHECK_FALSE(odd.k.has_value());
  CHECK_FALSE(odd.is_sudoku);
  for (const auto& w : odd.failures) {
    CHECK(w.property != Property::sudoku);
    CHECK(w.property != Property::super_sudoku);
  }

  CHECK(classify(oracle::load_fixture("s9"), VerifyMode::both).is_super_sudoku);
}

TEST_CASE("property names round-trip", "[verifiers]") {
  for (Property p : kAllProperties) CHECK(parse_property(to_string(p)) == p);
  CHECK(parse_property("knutvik") == Property::knut_vik);
  CHECK(parse_property("semimagic") == Property::semi_magic);
  CHECK(parse_property("supersudoku") == Property::super_sudoku);
  CHECK(parse_property("super-sudoku") == Property::super_sudoku);
  CHECK_FALSE(parse_property("panmagic").has_value());
  CHECK(parse_verify_mode("both") == VerifyMode::both);
  CHECK_FALSE(parse_verify_mode("fast").has_value());
}

TEST_CASE("direct and identity modes agree with each other and the oracle", "[verifiers][property]") {
  std::vector<Grid> corpus = fixture_corpus();
  for (std::size_t n : {4U, 5U, 9U, 16U, 25U}) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) corpus.push_back(gen::mixed(n, seed));
  }
  for (std::size_t k = 2; k <= 6; ++k) corpus.push_back(pan_super_sudoku(k));
  corpus.push_back(knut_vik_sudoku(7));
  for (const Grid& g : corpus) {
    for (Property p : kAllProperties) {
      const bool direct = check(p, g, VerifyMode::direct);
      INFO("n = " << g.order() << ", property " << to_string(p));
      CHECK(direct == check(p, g, VerifyMode::identity));
      CHECK(direct == oracle_check(p, g));
    }
  }
}

TEST_CASE("hierarchy and witness soundness", "[verifiers][property]") {
  std::vector<Grid> corpus = fixture_corpus();
  for (std::size_t n : {3U, 4U, 5U, 9U, 16U, 25U}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) corpus.push_back(gen::mixed(n, seed));
  }
  for (const Grid& g : corpus) {
    const auto report = classify(g);
    check_hierarchy(report);
    for (const Witness& w : report.failures) {
      INFO("n = " << g.order() << ", " << to_string(w.property) << " " << to_string(w.kind) << " "
                  << w.index);
      CHECK_FALSE(report.flag(w.property));
      CHECK(witness_violates(g, w));
    }
    for (Property p : kAllProperties) {
      if (report.flag(p)) continue;
      const bool has_witness = std::any_of(report.failures.begin(), report.failures.end(),
                                           [p](const Witness& w) { return w.property == p; });
      const bool exempt = (p == Property::sudoku || p == Property::super_sudoku) && !report.k;
      CHECK(has_witness != exempt);
    }
  }
}

TEST_CASE("shift and reflection invariance", "[verifiers][property]") {
  std::vector<Grid> corpus = fixture_corpus();
  for (std::size_t n : {5U, 9U, 16U}) {
    for (std::uint64_t seed = 0; seed < 24; ++seed) corpus.push_back(gen::mixed(n, seed));
  }
  const std::array<Property, 4> toroidal{Property::pandiagonal, Property::knut_vik, Property::latin,
                                         Property::semi_magic};
  for (const Grid& g : corpus) {
    const auto base = classify(g);
    for (std::int64_t s : {1, 2, -3, 7}) {
      const auto rs = classify(row_shift(g, s));
      const auto cs = classify(col_shift(g, s));
      for (Property p : toroidal) {
        CHECK(rs.flag(p) == base.flag(p));
        CHECK(cs.flag(p) == base.flag(p));
      }
    }
    const auto rr = classify(reflect_rows(g));
    const auto rc = classify(reflect_cols(g));
    for (Property p : kAllProperties) {
      INFO(to_string(p));
      CHECK(rr.flag(p) == base.flag(p));
      CHECK(rc.flag(p) == base.flag(p));
    }
  }
}

TEST_CASE("both mode raises on disagreement only", "[verifiers]") {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const Grid g = gen::mixed(9, seed);
    for (Property p : kAllProperties) CHECK_NOTHROW(check(p, g, VerifyMode::both));
  }
}

#include <catch_amalgamated.hpp>

#include <numeric>

#include "json.hpp"
#include "squares/constructors.hpp"
#include "squares/search.hpp"
#include "squares/verifiers.hpp"
#include "support/oracles.hpp"

using namespace squares;

namespace {

SearchConfig config(SearchTarget target, std::size_t n) {
  SearchConfig cfg;
  cfg.target = target;
  cfg.n = n;
  return cfg;
}

SearchConfig from_json(const nlohmann::json& j) {
  SearchConfig cfg;
  cfg.target = *parse_search_target(j.at("target").get<std::string>());
  cfg.n = j.at("n").get<std::size_t>();
  cfg.seed_prefix = j.at("seed_prefix").get<std::vector<Value>>();
  cfg.symmetry_reduction = j.at("symmetry_reduction").get<bool>();
  return cfg;
}

nlohmann::json oracle_constants() {
  return nlohmann::json::parse(oracle::read_file(std::string(SQUARES_FIXTURE_DIR) + "/oracle-constants.json"));
}

bool lex_sorted(const std::vector<Grid>& gs) {
  return std::is_sorted(gs.begin(), gs.end(), [](const Grid& a, const Grid& b) {
    return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(),
                                        b.values().end());
  });
}

}  // namespace

TEST_CASE("no Knut Vik squares at orders 2, 3, 4, 6 and 8", "[search]") {
  for (std::size_t n : {2U, 3U, 4U, 6U, 8U}) {
    INFO("n = " << n);
    CHECK(count_knut_vik(config(SearchTarget::knut_vik, n)).count == 0);
    CHECK_FALSE(find_first(config(SearchTarget::knut_vik, n)).has_value());
  }
  CHECK(count_knut_vik(config(SearchTarget::knut_vik, 1)).count == 1);
}

TEST_CASE("n = 4 and n = 6 agree without symmetry reduction", "[search]") {
  for (std::size_t n : {4U, 6U}) {
    auto cfg = config(SearchTarget::knut_vik, n);
    cfg.symmetry_reduction = false;
    CHECK(search(cfg).count == 0);
  }
}

TEST_CASE("stored oracle constants are reproduced", "[search]") {
  const auto constants = oracle_constants();
  for (const char* family : {"knut_vik", "knut_vik_first_row_fixed", "pandiagonal_latin"}) {
    for (const auto& entry : constants.at(family)) {
      SearchConfig cfg = from_json(entry.at("config"));
      INFO(family << " n = " << cfg.n);
      const auto sequential = search(cfg);
      CHECK(sequential.count == entry.at("count").get<std::uint64_t>());
      cfg.parallel = true;
      cfg.jobs = 3;
      const auto parallel = search(cfg);
      CHECK(parallel.count == sequential.count);
      CHECK(parallel.nodes_visited == sequential.nodes_visited);
    }
  }
}

TEST_CASE("C5 matches an independent whole-row enumeration", "[search]") {
  const auto by_rows = oracle::count_by_rows(5, oracle::knut_vik, true);
  CHECK(by_rows == 240);
  CHECK(count_knut_vik(config(SearchTarget::knut_vik, 5)).count == by_rows);
  CHECK(oracle::count_by_rows(4, oracle::pandiagonal, false) ==
        search(config(SearchTarget::pandiagonal_latin, 4)).count);
}

TEST_CASE("symmetry structure of the order-5 solutions", "[search][property]") {
  auto cfg = config(SearchTarget::knut_vik, 5);
  cfg.max_exemplars = 1000;
  cfg.symmetry_reduction = false;
  const auto full = search(cfg);
  REQUIRE(full.count == 240);
  REQUIRE(full.exemplars.size() == 240);

  // Relabeling: fixing the first row divides the count by 5!.
  auto fixed = config(SearchTarget::knut_vik, 5);
  fixed.seed_prefix = {0, 1, 2, 3, 4};
  fixed.symmetry_reduction = false;
  CHECK(full.count == 120 * search(fixed).count);

  // Toroidal shifts permute the solutions; every orbit has size 5.
  CHECK(full.count % 5 == 0);
  std::set<std::vector<Value>> all;
  for (const Grid& g : full.exemplars) all.insert({g.values().begin(), g.values().end()});
  for (const Grid& g : full.exemplars) {
    std::set<std::vector<Value>> orbit;
    for (std::int64_t a = 0; a < 5; ++a) {
      for (std::int64_t b = 0; b < 5; ++b) {
        const Grid h = col_shift(row_shift(g, a), b);
        const std::vector<Value> key(h.values().begin(), h.values().end());
        CHECK(all.count(key) == 1);
        orbit.insert(key);
      }
    }
    CHECK(orbit.size() == 5);
  }

  for (std::int64_t lambda : {2, 3}) {
    const Grid e = euler_knut_vik(5, lambda);
    CHECK(all.count({e.values().begin(), e.values().end()}) == 1);
  }
  for (const Grid& g : full.exemplars) CHECK(is_knut_vik(g));
}

TEST_CASE("reduced and full searches give identical results", "[search]") {
  for (std::size_t n : {5U, 7U}) {
    auto reduced = config(SearchTarget::knut_vik, n);
    reduced.max_exemplars = 30;
    auto full = reduced;
    full.symmetry_reduction = false;
    const auto a = search(reduced);
    const auto b = search(full);
    CHECK(a.count == b.count);
    CHECK(a.exemplars == b.exemplars);
    CHECK(lex_sorted(a.exemplars));
    CHECK(*find_first(reduced) == *find_first(full));
  }
}

TEST_CASE("parallel search is deterministic", "[search]") {
  for (std::size_t jobs : {1U, 2U, 4U}) {
    auto cfg = config(SearchTarget::knut_vik, 7);
    cfg.max_exemplars = 5;
    auto par = cfg;
    par.parallel = true;
    par.jobs = jobs;
    const auto s = search(cfg);
    const auto p = search(par);
    CHECK(p.count == s.count);
    CHECK(p.nodes_visited == s.nodes_visited);
    CHECK(p.exemplars == s.exemplars);
    CHECK(p.exemplars.front() == *find_first(cfg));
  }
  auto plain = config(SearchTarget::knut_vik, 5);
  plain.symmetry_reduction = false;
  plain.max_exemplars = 7;
  auto par = plain;
  par.parallel = true;
  par.jobs = 2;
  const auto s = search(plain);
  const auto p = search(par);
  CHECK(p.count == s.count);
  CHECK(p.nodes_visited == s.nodes_visited);
  CHECK(p.exemplars == s.exemplars);
}

TEST_CASE("find_first", "[search]") {
  const auto kv5 = find_first(config(SearchTarget::knut_vik, 5));
  REQUIRE(kv5.has_value());
  CHECK(is_knut_vik(*kv5));
  CHECK(*kv5 == Grid::from_rows({{0, 1, 2, 3, 4}, {2, 3, 4, 0, 1}, {4, 0, 1, 2, 3},
                                 {1, 2, 3, 4, 0}, {3, 4, 0, 1, 2}}));

  // Order-4 Latin squares whose broken diagonals all sum to 6 do exist.
  const auto pl4 = find_first(config(SearchTarget::pandiagonal_latin, 4));
  REQUIRE(pl4.has_value());
  CHECK(*pl4 == Grid::from_rows({{0, 1, 2, 3}, {2, 3, 0, 1}, {1, 0, 3, 2}, {3, 2, 1, 0}}));
  CHECK(is_latin(*pl4));
  CHECK(is_pandiagonal(*pl4));
  CHECK(search(config(SearchTarget::pandiagonal_latin, 4)).count == 32);
}

TEST_CASE("exemplars are bounded, sorted and valid", "[search]") {
  auto cfg = config(SearchTarget::knut_vik, 5);
  cfg.max_exemplars = 240;
  const auto all = search(cfg);
  CHECK(all.exemplars.size() == all.count);
  CHECK(lex_sorted(all.exemplars));
  cfg.max_exemplars = 3;
  const auto few = search(cfg);
  CHECK(few.exemplars.size() == 3);
  CHECK(std::equal(few.exemplars.begin(), few.exemplars.end(), all.exemplars.begin()));
  cfg.max_exemplars = 0;
  CHECK(search(cfg).exemplars.empty());
}

TEST_CASE("search configuration errors", "[search]") {
  auto big = config(SearchTarget::knut_vik, 12);
  try {
    search(big);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cap_exceeded);
  }
  CHECK_THROWS_AS(find_first(big), Error);
  CHECK_THROWS_AS(search(config(SearchTarget::knut_vik, 0)), Error);
  auto long_prefix = config(SearchTarget::knut_vik, 3);
  long_prefix.seed_prefix = {0, 1, 2, 0};
  CHECK_THROWS_AS(search(long_prefix), Error);
  auto infeasible = config(SearchTarget::knut_vik, 5);
  infeasible.seed_prefix = {0, 0};
  CHECK(search(infeasible).count == 0);
  CHECK(parse_search_target("knutvik") == SearchTarget::knut_vik);
  CHECK(parse_search_target("pandiagonal-latin") == SearchTarget::pandiagonal_latin);
  CHECK_FALSE(parse_search_target("sudoku").has_value());
}

TEST_CASE("oracle constraint checker accepts constructed squares", "[search][property]") {
  CHECK(oracle_accepts(knut_vik_sudoku(5), SearchTarget::knut_vik));
  CHECK(oracle_accepts(knut_vik_sudoku(7), SearchTarget::knut_vik));
  CHECK(oracle_accepts(euler_knut_vik(11, 3), SearchTarget::knut_vik));
  CHECK(oracle_accepts(pan_super_sudoku(3), SearchTarget::pandiagonal_latin));
  CHECK(oracle_accepts(pan_super_sudoku(5), SearchTarget::pandiagonal_latin));
  CHECK_FALSE(oracle_accepts(pan_super_sudoku(3), SearchTarget::knut_vik));
  CHECK_FALSE(oracle_accepts(oracle::load_fixture("m9"), SearchTarget::pandiagonal_latin));
}

TEST_CASE("random_grid", "[search]") {
  CHECK(random_grid(3, 7, RandomKind::arbitrary) == random_grid(3, 7, RandomKind::arbitrary));
  const Grid lr = random_grid(5, 1, RandomKind::latin_rows);
  for (const auto& row : oracle::rows_of(lr)) CHECK(oracle::is_permutation_of_range(row, 5));
  const Grid arbitrary = random_grid(6, 3, RandomKind::arbitrary);
  for (Value v : arbitrary.values()) {
    CHECK(v >= 0);
    CHECK(v < 36);
  }
  for (std::uint64_t s = 0; s < 100; ++s) {
    CHECK(random_grid(6, s, RandomKind::arbitrary) != random_grid(6, s + 1000, RandomKind::arbitrary));
  }
}

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "squares/constructors.hpp"
#include "squares/io.hpp"
#include "squares/search.hpp"
#include "squares/verifiers.hpp"

namespace {

using namespace squares;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t max_order_from_env() {
  const char* raw = std::getenv("SQUARES_MAX_N");
  if (raw == nullptr || *raw == '\0') return kMaxOrder;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) throw UsageError("SQUARES_MAX_N must be a positive integer");
  return v > kMaxOrder ? kMaxOrder : static_cast<std::size_t>(v);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << bytes;
}

Format input_format(const std::string& name) {
  const auto f = parse_format(name);
  if (!f) throw UsageError("unknown format '" + name + "'");
  return *f;
}

std::vector<Property> parse_property_list(const std::string& list) {
  std::vector<Property> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto p = parse_property(item);
    if (!p) throw UsageError("unknown property '" + item + "'");
    out.push_back(*p);
  }
  return out;
}

// Block-partitioned display for humans; not part of the io contract.
std::string pretty(const Grid& g) {
  const std::size_t n = g.order();
  const auto k = exact_sqrt(n);
  Value largest = 0;
  for (Value v : g.values()) largest = std::max(largest, v);
  const std::size_t width = std::to_string(largest).size();
  std::ostringstream out;
  for (std::size_t r = 0; r < n; ++r) {
    if (k && *k > 1 && r != 0 && r % *k == 0) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c != 0 && c % *k == 0) out << "-+";
        out << std::string(width + (c == 0 ? 0 : 1), '-');
      }
      out << '\n';
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (c != 0) out << (k && *k > 1 && c % *k == 0 ? " | " : " ");
      const std::string s = std::to_string(g(r, c));
      out << std::string(width - s.size(), ' ') << s;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<Property> expected_flags(const ConstructionSpec& spec) {
  using P = Property;
  switch (spec.kind) {
    case ConstructionKind::pan_super_sudoku:
      return {P::latin, P::pandiagonal, P::sudoku, P::super_sudoku};
    case ConstructionKind::knut_vik_sudoku:
    case ConstructionKind::assembled_blocks:
      return {P::latin, P::knut_vik, P::sudoku};
    case ConstructionKind::panmagic_lift:
      if (spec.lift_source == ConstructionKind::pan_super_sudoku && spec.k && *spec.k % 2 == 1) {
        return {P::natural, P::magic, P::pandiagonal};
      }
      return {P::magic, P::pandiagonal};
    case ConstructionKind::euler_cyclic:
      return {P::latin, P::knut_vik};
    case ConstructionKind::block_A:
      return {P::latin};
    case ConstructionKind::block_Z:
    case ConstructionKind::block_W:
      return {P::natural, P::semi_magic};
    case ConstructionKind::s_hat:
      return {P::semi_magic};
  }
  return {};
}

std::optional<std::size_t> predicted_order(const ConstructionSpec& spec) {
  switch (spec.kind) {
    case ConstructionKind::euler_cyclic:
      return spec.n;
    case ConstructionKind::block_A:
    case ConstructionKind::block_Z:
      return spec.k;
    case ConstructionKind::block_W:
      return 7;
    default:
      if (!spec.k) return std::nullopt;
      return *spec.k * *spec.k;
  }
}

struct GenerateOptions {
  std::string kind;
  std::optional<std::size_t> k;
  std::optional<std::size_t> n;
  std::optional<std::int64_t> lambda;
  std::optional<std::size_t> index;
  std::string source = "pansudoku";
  std::string format = "text";
  std::string out;
  bool no_self_check = false;
};

int run_generate(const GenerateOptions& o) {
  ConstructionSpec spec;
  const auto kind = parse_construction_kind(o.kind);
  if (!kind) throw UsageError("unknown kind '" + o.kind + "'");
  spec.kind = *kind;
  spec.k = o.k;
  spec.n = o.n;
  spec.lambda = o.lambda;
  spec.block_index = o.index;
  const auto source = parse_construction_kind(o.source);
  if (!source) throw UsageError("unknown source kind '" + o.source + "'");
  spec.lift_source = *source;

  const std::size_t cap = max_order_from_env();
  if (const auto n = predicted_order(spec); n && *n > cap) {
    throw UsageError("order " + std::to_string(*n) + " exceeds the cap " + std::to_string(cap) +
                     " (SQUARES_MAX_N)");
  }

  const Grid g = build(spec);

  if (!o.no_self_check) {
    const ClassificationReport report = classify(g);
    for (Property p : expected_flags(spec)) {
      if (!report.flag(p)) {
        std::cerr << "self-check failed: " << to_string(spec.kind) << " is not " << to_string(p)
                  << '\n';
        return kExitPropertyFailure;
      }
    }
  }

  if (o.format == "pretty") {
    write_output(o.out, pretty(g));
    return kExitOk;
  }
  const Format f = input_format(o.format);
  if (f == Format::automatic) throw UsageError("output format must be text, csv, json or pretty");
  GridMetadata meta;
  meta.kind = std::string(to_string(spec.kind));
  if (spec.k) meta.parameters["k"] = static_cast<std::int64_t>(*spec.k);
  if (spec.n) meta.parameters["n"] = static_cast<std::int64_t>(*spec.n);
  if (spec.lambda) meta.parameters["lambda"] = *spec.lambda;
  if (spec.block_index) meta.parameters["index"] = static_cast<std::int64_t>(*spec.block_index);
  write_output(o.out, emit(GridDocument{g, meta}, f));
  return kExitOk;
}

struct VerifyOptions {
  std::string in = "-";
  std::string format = "auto";
  std::string expect;
  std::string mode = "direct";
};

int run_verify(const VerifyOptions& o) {
  const auto mode = parse_verify_mode(o.mode);
  if (!mode) throw UsageError("unknown mode '" + o.mode + "'");
  const std::vector<Property> expected = parse_property_list(o.expect);
  const Grid g = parse(read_input(o.in), input_format(o.format));
  const ClassificationReport report = classify(g, *mode);
  std::cout << emit_report(report);
  int status = kExitOk;
  for (Property p : expected) {
    if (!report.flag(p)) {
      std::cerr << "expected " << to_string(p) << " but it does not hold\n";
      status = kExitPropertyFailure;
    }
  }
  return status;
}

struct DecomposeOptions {
  std::string in = "-";
  std::size_t k = 0;
  std::string format = "text";
};

int run_decompose(const DecomposeOptions& o) {
  const Grid g = parse(read_input(o.in), Format::automatic);
  const Decomposition d = decompose(g, o.k);
  const Format f = input_format(o.format);
  if (f == Format::json) {
    std::string q = emit(d.quotient, Format::json);
    std::string r = emit(d.remainder, Format::json);
    q.pop_back();
    r.pop_back();
    std::cout << "{\"k\": " << o.k << ", \"quotient\": " << q << ", \"remainder\": " << r
              << "}\n";
    return kExitOk;
  }
  if (f == Format::automatic) throw UsageError("output format must be text, csv or json");
  std::cout << "quotient\n" << emit(d.quotient, f) << "remainder\n" << emit(d.remainder, f);
  return kExitOk;
}

struct SearchOptions {
  std::string target = "knutvik";
  std::size_t n = 5;
  std::size_t max_exemplars = 0;
  std::size_t jobs = 1;
  bool no_reduction = false;
};

int run_search(const SearchOptions& o) {
  const auto target = parse_search_target(o.target);
  if (!target) throw UsageError("unknown target '" + o.target + "'");
  SearchConfig cfg;
  cfg.target = *target;
  cfg.n = o.n;
  cfg.max_exemplars = o.max_exemplars;
  cfg.parallel = o.jobs != 1;
  cfg.jobs = o.jobs;
  cfg.symmetry_reduction = !o.no_reduction;
  const SearchResult result = search(cfg);
  std::cout << emit_search_result(result);
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::internal_inconsistency ? kExitPropertyFailure : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify pandiagonal, sudoku and Knut Vik squares"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Construct a square");
  generate->add_option("--kind", gen.kind,
                       "shat, pansudoku, panmagic, knutvik, euler, blockA, blockZ, blockW, "
                       "assembled")
      ->required();
  generate->add_option("--k", gen.k, "Block size; the order is k^2");
  generate->add_option("--n", gen.n, "Order (euler)");
  generate->add_option("--lambda", gen.lambda, "Row multiplier (euler)");
  generate->add_option("--index", gen.index, "Block index (blockZ, blockW)");
  generate->add_option("--source", gen.source, "Square lifted by panmagic")
      ->capture_default_str();
  generate->add_option("--format", gen.format, "text, csv, json or pretty")->capture_default_str();
  generate->add_option("--out", gen.out, "Output file (default stdout)");
  generate->add_flag("--no-self-check", gen.no_self_check, "Skip classification before emitting");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Classify a square");
  verify->add_option("in", ver.in, "Input path or '-' for stdin")->capture_default_str();
  verify->add_option("--format", ver.format, "text, csv, json or auto")->capture_default_str();
  verify->add_option("--expect", ver.expect, "Comma-separated properties that must hold");
  verify->add_option("--mode", ver.mode, "direct, identity or both")->capture_default_str();

  DecomposeOptions dec;
  auto* decomp = app.add_subcommand("decompose", "Split a square into k*Q + R");
  decomp->add_option("in", dec.in, "Input path or '-' for stdin")->capture_default_str();
  decomp->add_option("--k", dec.k, "Base")->required();
  decomp->add_option("--format", dec.format, "text, csv or json")->capture_default_str();

  SearchOptions sea;
  auto* srch = app.add_subcommand("search", "Exhaustive count by backtracking");
  srch->add_option("--target", sea.target, "knutvik or pandiagonal-latin")->capture_default_str();
  srch->add_option("--n", sea.n, "Order, at most 8")->capture_default_str();
  srch->add_option("--max-exemplars", sea.max_exemplars, "Solutions to print")
      ->capture_default_str();
  srch->add_option("--jobs", sea.jobs, "Worker threads; 0 uses all cores")->capture_default_str();
  srch->add_flag("--no-reduction", sea.no_reduction,
                 "Enumerate every first row instead of relabeling from 0..n-1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*verify) return run_verify(ver);
    if (*decomp) return run_decompose(dec);
    if (*srch) return run_search(sea);
  } catch (const squares::Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "squares/grid.hpp"
#include "squares/search.hpp"
#include "squares/verifiers.hpp"

namespace squares {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kGeneratorVersion = "1.0.0";

enum class Format { text, csv, json, automatic };

std::string_view to_string(Format format);
/// "text", "csv", "json" or "auto".
std::optional<Format> parse_format(std::string_view name);

struct GridMetadata {
  std::string kind;
  std::map<std::string, std::int64_t> parameters;
  std::string generator_version{kGeneratorVersion};

  friend bool operator==(const GridMetadata&, const GridMetadata&) = default;
};

struct GridDocument {
  Grid grid;
  std::optional<GridMetadata> metadata;
};

// Byte contract, '\n' line endings throughout:
//   text  one line per row, entries separated by single spaces
//   csv   one line per row, entries separated by commas, no header
//   json  {"n": 3, "values": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]} plus newline

std::string emit(const Grid& g, Format format);
/// As emit(grid); metadata is written only in the json form.
std::string emit(const GridDocument& doc, Format format);

/// JSON when the first non-blank byte is '{', else CSV when a comma is
/// present, else text.
Format detect_format(std::string_view data);

/// Throws parse_error (with line and column), shape_error for ragged or
/// non-square bodies and value_error for negative entries.
Grid parse(std::string_view data, Format format = Format::automatic);
GridDocument parse_document(std::string_view data, Format format = Format::automatic);

/// Stable pretty-printed JSON for a classification report.
std::string emit_report(const ClassificationReport& report);

std::string emit_search_result(const SearchResult& result);

}  // namespace squares

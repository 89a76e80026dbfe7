#include "squares/io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace squares {
namespace {

using Rows = std::vector<std::vector<Value>>;

[[noreturn]] void parse_failure(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + what);
}

Value parse_integer(std::string_view token, std::size_t line, std::size_t column) {
  if (token.empty()) parse_failure(line, column, "empty entry");
  Value v = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) {
    parse_failure(line, column, "entry '" + std::string(token) + "' does not fit in 64 bits");
  }
  if (ec != std::errc() || ptr != last) {
    parse_failure(line, column + static_cast<std::size_t>(ptr - first),
                  "expected an integer, found '" + std::string(token) + "'");
  }
  if (v < 0) {
    throw Error(ErrorCode::value_error, "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": negative entry " +
                                            std::string(token));
  }
  return v;
}

Grid square_from_rows(const Rows& rows) {
  if (rows.empty()) throw Error(ErrorCode::shape_error, "input contains no rows");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorCode::shape_error, "row " + std::to_string(r + 1) + " has " +
                                              std::to_string(rows[r].size()) +
                                              " entries, expected " + std::to_string(width));
    }
  }
  if (width != rows.size()) {
    throw Error(ErrorCode::shape_error, "body is " + std::to_string(rows.size()) + " x " +
                                            std::to_string(width) + ", not square");
  }
  return Grid::from_rows(rows);
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Shared reader for the text and csv bodies. Blank lines are skipped.
Rows read_delimited(std::string_view data, bool csv) {
  Rows rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    const std::string_view line = data.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (const auto cr = line.find('\r'); cr != std::string_view::npos) {
      parse_failure(line_no, cr + 1, "carriage return (lines must end in '\\n')");
    }
    if (is_blank(line)) continue;

    std::vector<Value> row;
    std::size_t i = 0;
    if (csv) {
      while (true) {
        std::size_t comma = line.find(',', i);
        if (comma == std::string_view::npos) comma = line.size();
        std::string_view field = line.substr(i, comma - i);
        const std::size_t lead = field.find_first_not_of(" \t");
        const std::size_t column = i + 1 + (lead == std::string_view::npos ? 0 : lead);
        if (lead == std::string_view::npos) {
          field = {};
        } else {
          field = field.substr(lead, field.find_last_not_of(" \t") - lead + 1);
        }
        row.push_back(parse_integer(field, line_no, column));
        if (comma == line.size()) break;
        i = comma + 1;
      }
    } else {
      while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        row.push_back(parse_integer(line.substr(i, j - i), line_no, i + 1));
        i = j;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view data, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < data.size(); ++i) {
    if (data[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

GridDocument read_json(std::string_view data) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(data.begin(), data.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_and_column(data, e.byte == 0 ? 0 : e.byte - 1);
    parse_failure(line, column, "malformed JSON");
  }
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array()) {
    throw Error(ErrorCode::parse_error, "JSON grid must be an object with a \"values\" array");
  }
  Rows rows;
  for (const auto& row : doc["values"]) {
    if (!row.is_array()) throw Error(ErrorCode::parse_error, "\"values\" must hold arrays");
    std::vector<Value> out;
    for (const auto& entry : row) {
      if (entry.is_number_unsigned()) {
        const auto u = entry.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(INT64_MAX)) {
          throw Error(ErrorCode::parse_error, "entry does not fit in 64 bits");
        }
        out.push_back(static_cast<Value>(u));
      } else if (entry.is_number_integer()) {
        throw Error(ErrorCode::value_error, "negative entry " + entry.dump());
      } else {
        throw Error(ErrorCode::parse_error, "non-integer entry " + entry.dump());
      }
    }
    rows.push_back(std::move(out));
  }
  GridDocument result{square_from_rows(rows), std::nullopt};
  if (doc.contains("n")) {
    const auto& n = doc["n"];
    if (!n.is_number_unsigned() || n.get<std::uint64_t>() != result.grid.order()) {
      throw Error(ErrorCode::shape_error, "\"n\" = " + n.dump() + " does not match " +
                                              std::to_string(result.grid.order()) + " rows");
    }
  }
  if (doc.contains("metadata") && doc["metadata"].is_object()) {
    const auto& meta = doc["metadata"];
    GridMetadata m;
    m.kind = meta.value("kind", "");
    m.generator_version = meta.value("generator_version", "");
    if (meta.contains("parameters") && meta["parameters"].is_object()) {
      for (const auto& [key, value] : meta["parameters"].items()) {
        if (value.is_number_integer()) m.parameters[key] = value.get<std::int64_t>();
      }
    }
    result.metadata = std::move(m);
  }
  return result;
}

void write_rows(std::ostringstream& out, const Grid& g, char separator) {
  for (std::size_t r = 0; r < g.order(); ++r) {
    const auto row = g.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out << separator;
      out << row[c];
    }
    out << '\n';
  }
}

}  // namespace

std::string_view to_string(Format format) {
  switch (format) {
    case Format::text: return "text";
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::automatic: return "auto";
  }
  return "unknown";
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "auto") return Format::automatic;
  return std::nullopt;
}

std::string emit(const Grid& g, Format format) { return emit(GridDocument{g, std::nullopt}, format); }

std::string emit(const GridDocument& doc, Format format) {
  const Grid& g = doc.grid;
  std::ostringstream out;
  switch (format) {
    case Format::text: write_rows(out, g, ' '); break;
    case Format::csv: write_rows(out, g, ','); break;
    case Format::json:
    case Format::automatic: {
      out << "{\"n\": " << g.order() << ", \"values\": [";
      for (std::size_t r = 0; r < g.order(); ++r) {
        if (r != 0) out << ", ";
        out << '[';
        const auto row = g.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c != 0) out << ", ";
          out << row[c];
        }
        out << ']';
      }
      out << ']';
      if (doc.metadata) {
        const auto& m = *doc.metadata;
        out << ", \"metadata\": {\"kind\": " << nlohmann::json(m.kind).dump()
            << ", \"parameters\": {";
        bool first = true;
        for (const auto& [key, value] : m.parameters) {
          if (!first) out << ", ";
          first = false;
          out << nlohmann::json(key).dump() << ": " << value;
        }
        out << "}, \"generator_version\": " << nlohmann::json(m.generator_version).dump() << '}';
      }
      out << "}\n";
      break;
    }
  }
  return out.str();
}

Format detect_format(std::string_view data) {
  const std::size_t first = data.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && data[first] == '{') return Format::json;
  if (data.find(',') != std::string_view::npos) return Format::csv;
  return Format::text;
}

GridDocument parse_document(std::string_view data, Format format) {
  if (format == Format::automatic) format = detect_format(data);
  switch (format) {
    case Format::json: return read_json(data);
    case Format::csv: return {square_from_rows(read_delimited(data, true)), std::nullopt};
    default: return {square_from_rows(read_delimited(data, false)), std::nullopt};
  }
}

Grid parse(std::string_view data, Format format) { return parse_document(data, format).grid; }

std::string emit_report(const ClassificationReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["n"] = report.n;
  j["k"] = report.k ? nlohmann::ordered_json(*report.k) : nlohmann::ordered_json(nullptr);
  for (Property p : kAllProperties) {
    j["is_" + std::string(to_string(p))] = report.flag(p);
  }
  j["measured_index"] = report.measured_index ? nlohmann::ordered_json(*report.measured_index)
                                              : nlohmann::ordered_json(nullptr);
  auto failures = nlohmann::ordered_json::array();
  for (const auto& w : report.failures) {
    nlohmann::ordered_json entry;
    entry["property"] = std::string(to_string(w.property));
    entry["kind"] = std::string(to_string(w.kind));
    entry["index"] = w.index;
    failures.push_back(std::move(entry));
  }
  j["failures"] = std::move(failures);
  return j.dump(2) + "\n";
}

std::string emit_search_result(const SearchResult& result) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["target"] = std::string(to_string(result.target));
  j["n"] = result.n;
  j["count"] = result.count;
  j["nodes_visited"] = result.nodes_visited;
  j["elapsed_ms"] = std::chrono::duration<double, std::milli>(result.elapsed).count();
  auto exemplars = nlohmann::ordered_json::array();
  for (const auto& g : result.exemplars) exemplars.push_back(g.rows());
  j["exemplars"] = std::move(exemplars);
  return j.dump(2) + "\n";
}

}  // namespace squares

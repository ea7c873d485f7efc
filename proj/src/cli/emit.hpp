#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

namespace gapspec::cli {

using json = nlohmann::ordered_json;

/// Long-format table; cells are JSON scalars (number, string, bool or null).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

inline constexpr int kSchemaVersion = 1;

/// %.17g; non-finite values become "nan", "inf", "-inf".
std::string format_double(double x);

/// Header plus rows, LF line endings. Strings are quoted only when they need it; null is empty.
void write_csv(std::ostream& os, const Table& t);

/// {schema_version, config_echo, rows, summary} with every float at 17 significant digits.
/// Non-finite numbers are written as null.
void write_json(std::ostream& os, const json& config_echo, const Table& t, const json& summary);

/// Serializer used by write_json, exposed for tests.
void dump_json(std::ostream& os, const json& j, int indent = 0);

}  // namespace gapspec::cli

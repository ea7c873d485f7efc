#include "emit.hpp"

#include <cmath>
#include <cstdio>

namespace gapspec::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void pad(std::ostream& os, int indent) {
  for (int i = 0; i < indent; ++i) os << ' ';
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_cell(t.columns[c]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
}

void dump_json(std::ostream& os, const json& j, int indent) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        pad(os, indent + 2);
        os << json(it.key()).dump() << ": ";
        dump_json(os, it.value(), indent + 2);
      }
      os << '\n';
      pad(os, indent);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        pad(os, indent + 2);
        dump_json(os, j[k], indent + 2);
      }
      os << '\n';
      pad(os, indent);
      os << ']';
      return;
    }
    case json::value_t::number_float: {
      double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default: os << j.dump(); return;
  }
}

void write_json(std::ostream& os, const json& config_echo, const Table& t, const json& summary) {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["config_echo"] = config_echo;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t c = 0; c < t.columns.size() && c < row.size(); ++c) r[t.columns[c]] = row[c];
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = summary;
  dump_json(os, doc);
  os << '\n';
}

}  // namespace gapspec::cli

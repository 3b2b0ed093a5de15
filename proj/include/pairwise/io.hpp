#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pcmatrix.hpp"
#include "solvers.hpp"
#include "transform.hpp"

namespace pairwise {

using json = nlohmann::json;

/// Significant digits used for reports and service responses.
inline constexpr int kDisplayDigits = 12;

inline double round_significant(double x, int digits) {
  double out = 0.0;
  const std::string text = detail::format_double(x, digits);
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

/// Reals become JSON numbers, complex values "a+bi" strings. digits == 0
/// keeps full round-trip precision.
inline json scalar_to_json(const Scalar& z, int digits = 0) {
  if (z.is_real()) return digits > 0 ? round_significant(z.re(), digits) : z.re();
  return format_scalar(z, digits);
}

inline Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return Scalar(j.get<double>());
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  throw Error(Errc::ParseError, "entry must be a number or an \"a+bi\" string");
}

namespace detail {

inline void dump_into(const json& v, std::string& out, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  if (v.is_number_float()) {
    out += format_double(v.get<double>(), 0);
  } else if (v.is_array() || v.is_object()) {
    const bool object = v.is_object();
    out += object ? '{' : '[';
    if (v.empty()) {
      out += object ? '}' : ']';
      return;
    }
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      if (object) {
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
      }
      dump_into(*it, out, indent, depth + 1);
    }
    newline(depth);
    out += object ? '}' : ']';
  } else {
    out += v.dump();
  }
}

}  // namespace detail

/// Like json::dump, but floats are written in their shortest round-trip
/// form, so a value rounded to 12 digits prints with at most 12.
inline std::string dump_json(const json& v, int indent = -1) {
  std::string out;
  detail::dump_into(v, out, indent, 0);
  return out;
}

struct LoadOptions {
  std::optional<Mode> mode;
  std::optional<GroupDescriptor> group;
};

namespace detail {

inline const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(Errc::ParseError, std::string("missing field \"") + key + "\"");
  }
  return doc.at(key);
}

inline std::vector<std::vector<Scalar>> entries_from_json(const json& doc) {
  const json& entries = require(doc, "entries");
  if (!entries.is_array()) throw Error(Errc::ParseError, "\"entries\" must be an array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (const json& row : entries) {
    if (!row.is_array()) throw Error(Errc::ParseError, "each row of \"entries\" must be an array");
    std::vector<Scalar>& out = rows.emplace_back();
    for (const json& cell : row) out.push_back(scalar_from_json(cell));
  }
  if (doc.contains("n")) {
    if (!doc.at("n").is_number_integer() || doc.at("n").get<long long>() != static_cast<long long>(rows.size())) {
      throw Error(Errc::ParseError, "\"n\" does not match the number of rows");
    }
  }
  return rows;
}

inline std::vector<std::string> labels_from_json(const json& doc) {
  std::vector<std::string> labels;
  if (!doc.contains("labels")) return labels;
  const json& l = doc.at("labels");
  if (!l.is_array()) throw Error(Errc::ParseError, "\"labels\" must be an array of strings");
  for (const json& item : l) {
    if (!item.is_string()) throw Error(Errc::ParseError, "\"labels\" must be an array of strings");
    labels.push_back(item.get<std::string>());
  }
  return labels;
}

inline json rows_to_json(const std::vector<std::vector<Scalar>>& rows, int digits) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const Scalar& v : row) r.push_back(scalar_to_json(v, digits));
    out.push_back(std::move(r));
  }
  return out;
}

inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace detail

inline json matrix_to_json(const PcMatrix& m, int digits = 0) {
  json doc;
  doc["n"] = m.n();
  doc["group"] = m.group().name();
  doc["mode"] = std::string(to_string(m.mode()));
  doc["labels"] = m.labels();
  doc["entries"] = detail::rows_to_json(m.rows(), digits);
  return doc;
}

/// Options override the document's group and mode. A missing mode field
/// means strict.
inline PcMatrix matrix_from_json(const json& doc, const LoadOptions& options = {}) {
  if (doc.contains("domain") && doc.at("domain") != "multiplicative") {
    throw Error(Errc::ParseError, "expected a multiplicative matrix document");
  }
  auto rows = detail::entries_from_json(doc);
  GroupDescriptor group = GroupDescriptor::positive_reals();
  if (options.group) {
    group = *options.group;
  } else if (doc.contains("group")) {
    if (!doc.at("group").is_string()) throw Error(Errc::ParseError, "\"group\" must be a string");
    group = parse_group(doc.at("group").get<std::string>());
  }
  Mode mode = Mode::Strict;
  if (options.mode) {
    mode = *options.mode;
  } else if (doc.contains("mode")) {
    if (!doc.at("mode").is_string()) throw Error(Errc::ParseError, "\"mode\" must be a string");
    mode = parse_mode(doc.at("mode").get<std::string>());
  }
  return PcMatrix::from_entries(rows, group, mode, detail::labels_from_json(doc));
}

inline json additive_to_json(const AdditiveMatrix& a, int digits = 0) {
  json doc;
  doc["domain"] = "additive";
  doc["n"] = a.n();
  doc["entries"] = detail::rows_to_json(a.rows(), digits);
  if (const auto& p = a.provenance()) {
    json cut = json::array();
    for (const auto& [i, j] : p->branch_cut_entries) cut.push_back({i, j});
    doc["provenance"] = {{"source", p->source}, {"branch", p->branch}, {"branch_cut_entries", cut}};
  }
  return doc;
}

inline AdditiveMatrix additive_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("domain") || doc.at("domain") != "additive") {
    throw Error(Errc::ParseError, "expected \"domain\": \"additive\"");
  }
  return AdditiveMatrix(detail::entries_from_json(doc));
}

/// Strict-mode CSV: one row per line, plain positive decimals.
inline PcMatrix matrix_from_csv(std::string_view text, std::vector<std::string> labels = {}) {
  std::vector<std::vector<Scalar>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<Scalar>& row = rows.emplace_back();
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto first = cell.find_first_not_of(" \t");
      const auto last = cell.find_last_not_of(" \t");
      std::string_view trimmed =
          first == std::string::npos ? std::string_view{} : std::string_view(cell).substr(first, last - first + 1);
      double value = 0.0;
      if (trimmed.empty() || detail::parse_decimal(trimmed, value) != trimmed.size()) {
        throw Error(Errc::ParseError, "CSV cell '" + cell + "' is not a plain decimal");
      }
      row.emplace_back(value);
    }
  }
  return PcMatrix::from_entries(rows, GroupDescriptor::positive_reals(), Mode::Strict, std::move(labels));
}

inline std::vector<Judgment> judgments_from_json(const json& doc) {
  const json& list = doc.is_object() ? detail::require(doc, "judgments") : doc;
  if (!list.is_array()) throw Error(Errc::ParseError, "judgments must be a JSON list of {i, j, value}");
  std::vector<Judgment> out;
  for (const json& item : list) {
    const json& i = detail::require(item, "i");
    const json& j = detail::require(item, "j");
    if (!i.is_number_unsigned() || !j.is_number_unsigned()) {
      throw Error(Errc::ParseError, "judgment indices must be non-negative integers");
    }
    out.push_back({i.get<std::size_t>(), j.get<std::size_t>(), scalar_from_json(detail::require(item, "value"))});
  }
  return out;
}

inline json judgments_to_json(const std::vector<Judgment>& judgments, int digits = 0) {
  json out = json::array();
  for (const Judgment& jd : judgments) {
    out.push_back({{"i", jd.i}, {"j", jd.j}, {"value", scalar_to_json(jd.value, digits)}});
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json read_json_file(const std::string& path) { return detail::parse_json_text(read_text_file(path)); }

/// JSON document or, for *.csv paths, a strict CSV matrix.
inline PcMatrix load_matrix_file(const std::string& path, const LoadOptions& options = {}) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    if (options.mode == Mode::Research) throw Error(Errc::ParseError, "CSV input is strict mode only");
    return matrix_from_csv(read_text_file(path));
  }
  return matrix_from_json(read_json_file(path), options);
}

}  // namespace pairwise

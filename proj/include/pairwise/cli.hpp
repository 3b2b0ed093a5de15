#pragma once

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algebra.hpp"
#include "counterexamples.hpp"
#include "io.hpp"
#include "pcmatrix.hpp"
#include "solvers.hpp"
#include "transform.hpp"

namespace pairwise::cli {

/// Exit codes shared by every command.
enum Exit : int {
  kOk = 0,
  kValidationError = 1,
  kParseError = 2,
  kNotOrderable = 3,
};

enum class Format { Text, Json };

struct CliConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> group;
  bool research = false;
  double tol = kConsistencyTolerance;
  Format format = Format::Text;
  std::optional<std::size_t> entities;  // complete: entity count override
};

inline bool is_parse_failure(Errc code) { return code == Errc::ParseError || code == Errc::UnknownGroup; }

inline int report_error(const Error& e, std::ostream& err) {
  err << json{{"code", std::string(to_string(e.code()))}, {"message", e.detail()}}.dump() << '\n';
  return is_parse_failure(e.code()) ? kParseError : kValidationError;
}

namespace detail {

inline void render(const json& value, std::ostream& out, const std::string& indent);

inline std::string render_inline(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string s = "[";
    for (std::size_t k = 0; k < value.size(); ++k) {
      if (k) s += ", ";
      s += render_inline(value[k]);
    }
    return s + "]";
  }
  if (value.is_object()) {
    std::string s = "{";
    bool first = true;
    for (const auto& [key, item] : value.items()) {
      if (!first) s += ", ";
      first = false;
      s += key + ": " + render_inline(item);
    }
    return s + "}";
  }
  return dump_json(value);
}

inline bool is_matrix(const json& value) {
  return value.is_array() && !value.empty() &&
         std::all_of(value.begin(), value.end(), [](const json& row) { return row.is_array(); });
}

inline void render(const json& value, std::ostream& out, const std::string& indent) {
  for (const auto& [key, item] : value.items()) {
    if (item.is_object()) {
      out << indent << key << ":\n";
      render(item, out, indent + "  ");
    } else if (is_matrix(item)) {
      out << indent << key << ":\n";
      for (const json& row : item) out << indent << "  " << render_inline(row) << '\n';
    } else {
      out << indent << key << ": " << render_inline(item) << '\n';
    }
  }
}

}  // namespace detail

/// Text output is always rendered from the JSON result, so both formats
/// carry the same numbers.
inline void emit(const json& result, const CliConfig& config, std::ostream& out) {
  if (config.format == Format::Json) {
    out << dump_json(result, 2) << '\n';
  } else {
    detail::render(result, out, "");
  }
}

inline LoadOptions load_options(const CliConfig& config) {
  LoadOptions options;
  options.mode = config.research ? Mode::Research : Mode::Strict;
  if (config.group) options.group = parse_group(*config.group);
  return options;
}

inline json weights_json(const WeightVector& w) {
  json out = json::array();
  for (const Scalar& v : w.values) out.push_back(scalar_to_json(v, kDisplayDigits));
  return out;
}

inline json triad_json(const Triad& t, const PcMatrix& m) {
  return {{"entities", {m.label(t.i), m.label(t.k), m.label(t.j)}},
          {"values",
           {scalar_to_json(t.x, kDisplayDigits), scalar_to_json(t.y, kDisplayDigits),
            scalar_to_json(t.z, kDisplayDigits)}}};
}

/// Validation verdict, consistency, inconsistency indicator, both weight
/// methods where they apply, and the ranking.
inline int cmd_analyze(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<PcMatrix> loaded;
  try {
    loaded = load_matrix_file(config.inputs.at(0), load_options(config));
  } catch (const Error& e) {
    return report_error(e, err);
  }
  const PcMatrix& m = *loaded;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m.n(); ++i) labels.push_back(m.label(i));

  json result{{"valid", true},
              {"n", m.n()},
              {"group", m.group().name()},
              {"mode", std::string(to_string(m.mode()))},
              {"labels", labels},
              {"consistent", is_consistent(m, config.tol)}};

  if (m.all_positive_real() && m.n() >= 3) {
    const InconsistencyReport inc = kii(m);
    result["kii"] = round_significant(inc.kii, kDisplayDigits);
    result["worst_triad"] = triad_json(*inc.worst_triad, m);
  } else if (!m.all_positive_real()) {
    result["kii"] = "undefined (UndefinedForGroup)";
  } else {
    result["kii"] = 0.0;
  }

  std::optional<WeightVector> gm;
  try {
    gm = geometric_mean_weights(m);
    result["gm_weights"] = weights_json(*gm);
  } catch (const Error& e) {
    result["gm_weights"] = "unavailable (" + std::string(to_string(e.code())) + ")";
    const BranchSet branches = gm_branch_vectors(m);
    json roots = json::array();
    for (const auto& row : branches.per_row_roots) {
      json r = json::array();
      for (const Scalar& s : row) r.push_back(scalar_to_json(s, kDisplayDigits));
      roots.push_back(r);
    }
    result["gm_branch_roots"] = roots;
    result["gm_branch_vectors"] = branches.vectors.size();
  }

  if (m.all_positive_real()) {
    try {
      const EigenWeights eig = eigen_weights(m);
      result["eigen_weights"] = weights_json(eig.weights);
      result["eigenvalue"] = round_significant(eig.eigenvalue, kDisplayDigits);
    } catch (const Error& e) {
      result["eigen_weights"] = "unavailable (" + std::string(to_string(e.code())) + ")";
    }
  }

  if (gm) {
    try {
      json ranking = json::array();
      for (const RankedEntity& r : rank_entities(*gm, labels)) {
        ranking.push_back({{"label", r.label}, {"weight", round_significant(r.weight, kDisplayDigits)}});
      }
      result["ranking"] = ranking;
    } catch (const Error& e) {
      result["ranking"] = "refused (" + std::string(to_string(e.code())) + ")";
    }
  } else {
    result["ranking"] = "refused (NotOrderable)";
  }
  emit(result, config, out);
  return kOk;
}

/// Exit 0 iff every finding outside the claim checks passes.
inline int cmd_fixtures(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const std::string which = config.inputs.empty() ? "all" : config.inputs.front();
  std::vector<std::string> names;
  if (which == "all") {
    for (auto name : fixture_names()) names.emplace_back(name);
  } else {
    names.push_back(which);
  }
  bool ok = true;
  json reports = json::array();
  for (const std::string& name : names) {
    try {
      const FindingsReport report = run_report(name);
      ok = ok && report.overall();
      reports.push_back(report_to_json(report));
    } catch (const Error& e) {
      err << json{{"code", std::string(to_string(e.code()))}, {"message", e.detail()}}.dump() << '\n';
      return kParseError;
    }
  }
  if (config.format == Format::Json) {
    out << dump_json(reports, 2) << '\n';
  } else {
    for (const json& r : reports) out << report_to_text(r);
  }
  return ok ? kOk : kValidationError;
}

inline int cmd_orderability(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<GroupDescriptor> group;
  try {
    group = parse_group(config.inputs.at(0));
  } catch (const Error& e) {
    err << json{{"code", std::string(to_string(e.code()))}, {"message", e.detail()}}.dump() << '\n';
    return kParseError;
  }
  const OrderabilityVerdict verdict = check_orderability(*group);
  json result{{"group", group->name()}, {"orderable", verdict.orderable}, {"reason", verdict.reason}};
  if (verdict.witness) {
    result["witness"] = {{"element", scalar_to_json(verdict.witness->element, kDisplayDigits)},
                         {"order", verdict.witness->order}};
  }
  emit(result, config, out);
  return verdict.orderable ? kOk : kNotOrderable;
}

/// transform log <matrix>: principal logarithm plus additive verdicts.
/// transform exp <additive>: entrywise exponential validated over --group.
inline int cmd_transform(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const std::string& direction = config.inputs.at(0);
  const std::string& path = config.inputs.at(1);
  try {
    if (direction == "log") {
      const PcMatrix m = load_matrix_file(path, load_options(config));
      const AdditiveMatrix a = log_map(m, path);
      json doc = additive_to_json(a);
      doc["consistent"] = additive_is_consistent(a, config.tol);
      doc["reciprocal"] = additive_is_reciprocal(a, config.tol);
      emit(doc, config, out);
      return kOk;
    }
    if (direction == "exp") {
      const AdditiveMatrix a = additive_from_json(read_json_file(path));
      const GroupDescriptor group =
          config.group ? parse_group(*config.group) : GroupDescriptor::positive_reals();
      const PcMatrix m = exp_map(a, group, config.research ? Mode::Research : Mode::Strict);
      emit(matrix_to_json(m), config, out);
      return kOk;
    }
    throw Error(Errc::ParseError, "transform direction must be 'log' or 'exp'");
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

/// Spanning-tree judgments to the full consistent matrix. The entity count
/// is --n when given, otherwise one more than the largest index.
inline int cmd_complete(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const json doc = read_json_file(config.inputs.at(0));
    const std::vector<Judgment> judgments = judgments_from_json(doc);
    std::vector<std::string> labels;
    if (doc.is_object() && doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    std::size_t n = config.entities.value_or(labels.size());
    if (n == 0) {
      for (const Judgment& jd : judgments) n = std::max({n, jd.i + 1, jd.j + 1});
    }
    const GroupDescriptor group = config.group ? parse_group(*config.group) : GroupDescriptor::positive_reals();
    const PcMatrix m =
        complete_from_tree(n, judgments, group, config.research ? Mode::Research : Mode::Strict, labels);
    emit(matrix_to_json(m), config, out);
    return kOk;
  } catch (const json::exception& e) {
    return report_error(Error(Errc::ParseError, e.what()), err);
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

/// Parses argv and dispatches. `serve` is handled by the caller via
/// on_serve, which keeps the HTTP stack out of the batch commands.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const std::function<int(const std::string& host, int port, const std::string& log)>& on_serve = {}) {
  CLI::App app{"Pairwise comparison matrices over ordered groups"};
  app.require_subcommand(1);
  CliConfig config;
  std::string format = "text";

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--research", config.research, "Admit non-positive catalog groups");
    sub->add_option("--tol", config.tol, "Consistency tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--group", config.group, "Catalog group name");
  };

  auto* analyze = app.add_subcommand("analyze", "Validate and analyze a matrix file");
  analyze->add_option("path", config.inputs, "Matrix file (.json or .csv)")->required()->expected(1);
  add_common(analyze);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Reproduce the counterexample fixtures");
  fixtures_cmd->add_option("name", config.inputs, "M1, M2, M3, M4_additive, EXAM or all")->expected(0, 1);
  add_common(fixtures_cmd);

  auto* orderability = app.add_subcommand("orderability", "Check whether a catalog group is orderable");
  orderability->add_option("name", config.inputs, "Group name, e.g. CyclicRootsOfUnity:6")->required()->expected(1);
  add_common(orderability);

  auto* transform = app.add_subcommand("transform", "Logarithmic / exponential matrix mapping");
  transform->add_option("args", config.inputs, "log|exp <file>")->required()->expected(2);
  add_common(transform);

  auto* complete = app.add_subcommand("complete", "Complete a matrix from spanning-tree judgments");
  complete->add_option("path", config.inputs, "Judgment file")->required()->expected(1);
  complete->add_option("--n", config.entities, "Entity count");
  add_common(complete);

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_path;
  auto* serve = app.add_subcommand("serve", "Run the elicitation HTTP service");
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--log", log_path, "Append-only session event log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }
  config.format = format == "json" ? Format::Json : Format::Text;

  if (*analyze) return cmd_analyze(config, out, err);
  if (*fixtures_cmd) return cmd_fixtures(config, out, err);
  if (*orderability) return cmd_orderability(config, out, err);
  if (*transform) return cmd_transform(config, out, err);
  if (*complete) return cmd_complete(config, out, err);
  if (*serve && on_serve) return on_serve(host, port, log_path);
  return kParseError;
}

}  // namespace pairwise::cli

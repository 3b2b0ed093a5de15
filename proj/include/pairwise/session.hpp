#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "io.hpp"
#include "pcmatrix.hpp"
#include "solvers.hpp"

namespace pairwise {

enum class SessionState { NeedsJudgments, TreeComplete, Overdetermined };

inline std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::NeedsJudgments: return "NeedsJudgments";
    case SessionState::TreeComplete: return "TreeComplete";
    case SessionState::Overdetermined: return "Overdetermined";
  }
  return "";
}

struct SessionStatus {
  SessionState state = SessionState::NeedsJudgments;
  std::size_t remaining = 0;  // judgments still needed to connect every entity

  friend bool operator==(const SessionStatus&, const SessionStatus&) = default;
};

struct SessionReport {
  SessionStatus status;
  PartialMatrix matrix;
  std::vector<std::vector<bool>> entered;
  std::vector<Judgment> judgments;
  std::size_t superfluous = 0;
  std::optional<double> kii;
  std::optional<Triad> worst_triad;
  std::optional<WeightVector> weights;
  std::optional<std::vector<RankedEntity>> ranking;
};

/// Judgment history entry; replaced_previous marks a resubmitted pair.
struct HistoryEntry {
  Judgment judgment;
  bool replaced_previous = false;
};

/// Entities and the judgments elicited so far. Always strict: every value is
/// a positive real. At most one judgment per unordered pair is live.
class ElicitationSession {
 public:
  static constexpr std::size_t kMaxEntities = 64;

  explicit ElicitationSession(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2 || labels_.size() > kMaxEntities) {
      throw Error(Errc::BadSize, "a session needs between 2 and 64 entities");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
      throw Error(Errc::DuplicateLabels, "entity labels must be distinct");
    }
  }

  std::size_t n() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<HistoryEntry>& history() const noexcept { return history_; }

  /// Index of a label, if any.
  std::optional<std::size_t> index_of(std::string_view label) const {
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      if (labels_[k] == label) return k;
    }
    return std::nullopt;
  }

  void add_judgment(std::size_t i, std::size_t j, double value) {
    if (i >= n() || j >= n()) throw Error(Errc::IndexOutOfRange, "entity index out of range");
    if (i == j) throw Error(Errc::SelfComparison, "an entity cannot be compared with itself");
    if (!std::isfinite(value) || value <= 0.0) {
      throw Error(Errc::NonPositiveValue, "judgment values must be positive");
    }
    Judgment jd{i, j, Scalar(value)};
    const bool replaced = !live_.insert_or_assign(std::minmax(i, j), jd).second;
    history_.push_back({jd, replaced});
  }

  std::vector<Judgment> judgments() const {
    std::vector<Judgment> out;
    out.reserve(live_.size());
    for (const auto& [pair, jd] : live_) out.push_back(jd);
    return out;
  }

  SessionStatus status() const {
    const std::size_t components = judgment_components(n(), judgments());
    if (components > 1) return {SessionState::NeedsJudgments, components - 1};
    if (live_.size() == n() - 1) return {SessionState::TreeComplete, 0};
    return {SessionState::Overdetermined, 0};
  }

  /// Pairs without a direct judgment are filled along the shortest path of
  /// the judgment graph (lexicographically smallest on ties).
  SessionReport report() const {
    SessionReport r;
    r.judgments = judgments();
    r.status = status();
    r.superfluous = superfluous_count(n(), r.judgments);
    r.matrix = shortest_path_completion(n(), r.judgments);
    r.entered.assign(n(), std::vector<bool>(n(), false));
    for (const Judgment& jd : r.judgments) r.entered[jd.i][jd.j] = r.entered[jd.j][jd.i] = true;
    if (r.status.state == SessionState::NeedsJudgments) return r;

    PcMatrix::Rows rows(n(), std::vector<Scalar>(n()));
    for (std::size_t i = 0; i < n(); ++i) {
      for (std::size_t j = 0; j < n(); ++j) rows[i][j] = *r.matrix[i][j];
    }
    const PcMatrix effective = PcMatrix::from_entries(rows, GroupDescriptor::positive_reals(), Mode::Strict, labels_);
    r.weights = geometric_mean_weights(effective);
    r.ranking = rank_entities(*r.weights, labels_);
    if (r.status.state == SessionState::Overdetermined) {
      const InconsistencyReport inc = pairwise::kii(effective);
      r.kii = inc.kii;
      r.worst_triad = inc.worst_triad;
    }
    return r;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, Judgment> live_;
  std::vector<HistoryEntry> history_;
};

inline json status_to_json(const SessionStatus& s) {
  json out{{"state", std::string(to_string(s.state))}};
  if (s.state == SessionState::NeedsJudgments) out["remaining"] = s.remaining;
  return out;
}

/// Service wire form; every number is rounded to 12 significant digits.
inline json session_report_to_json(const SessionReport& r, const std::vector<std::string>& labels) {
  json matrix = json::array();
  for (const auto& row : r.matrix) {
    json out = json::array();
    for (const auto& cell : row) out.push_back(cell ? scalar_to_json(*cell, kDisplayDigits) : json());
    matrix.push_back(std::move(out));
  }
  json doc{{"status", status_to_json(r.status)},
           {"labels", labels},
           {"matrix", matrix},
           {"entered", r.entered},
           {"judgments", judgments_to_json(r.judgments, kDisplayDigits)},
           {"superfluous", r.superfluous}};
  if (r.kii) doc["kii"] = round_significant(*r.kii, kDisplayDigits);
  if (r.worst_triad) {
    const Triad& t = *r.worst_triad;
    doc["worst_triad"] = {{"indices", {t.i, t.k, t.j}},
                          {"labels", {labels.at(t.i), labels.at(t.k), labels.at(t.j)}},
                          {"values", {scalar_to_json(t.x, kDisplayDigits), scalar_to_json(t.y, kDisplayDigits),
                                      scalar_to_json(t.z, kDisplayDigits)}}};
  }
  if (r.weights) {
    json w = json::array();
    for (const Scalar& v : r.weights->values) w.push_back(scalar_to_json(v, kDisplayDigits));
    doc["weights"] = w;
  }
  if (r.ranking) {
    json ranking = json::array();
    for (const RankedEntity& e : *r.ranking) {
      ranking.push_back({{"label", e.label}, {"weight", round_significant(e.weight, kDisplayDigits)}});
    }
    doc["ranking"] = ranking;
  }
  return doc;
}

/// 128 random bits, hex encoded.
inline std::string new_session_id() {
  static std::mutex mutex;
  static std::random_device device;
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  {
    std::lock_guard lock(mutex);
    hi = (static_cast<std::uint64_t>(device()) << 32) | device();
    lo = (static_cast<std::uint64_t>(device()) << 32) | device();
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id(32, '0');
  for (int k = 0; k < 16; ++k) {
    id[static_cast<std::size_t>(k)] = kHex[(hi >> (60 - 4 * k)) & 0xf];
    id[static_cast<std::size_t>(16 + k)] = kHex[(lo >> (60 - 4 * k)) & 0xf];
  }
  return id;
}

/// Thread-safe collection of sessions. Requests on one session are
/// serialized by that session's mutex; different sessions proceed
/// independently. With a log path, every mutation is appended as one JSON
/// line before it is acknowledged, and the log is replayed on construction.
class SessionStore {
 public:
  struct Created {
    std::string id;
    SessionStatus status;
  };

  SessionStore() = default;

  explicit SessionStore(std::filesystem::path log_path) : log_path_(std::move(log_path)) {
    replay();
    log_.open(*log_path_, std::ios::app);
    if (!log_) throw std::runtime_error("cannot open session log " + log_path_->string());
  }

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  Created create(std::vector<std::string> labels) {
    auto entry = std::make_shared<Entry>(ElicitationSession(labels));
    std::string id = new_session_id();
    std::lock_guard entry_lock(entry->mutex);
    {
      std::unique_lock map_lock(map_mutex_);
      while (sessions_.contains(id)) id = new_session_id();
      sessions_.emplace(id, entry);
    }
    append({{"event", "create"}, {"id", id}, {"labels", labels}});
    return {id, entry->session.status()};
  }

  SessionReport add_judgment(const std::string& id, std::size_t i, std::size_t j, double value) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    if (entry->deleted) throw unknown(id);
    entry->session.add_judgment(i, j, value);
    append({{"event", "judgment"}, {"id", id}, {"i", i}, {"j", j}, {"value", value}});
    return entry->session.report();
  }

  SessionReport report(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    if (entry->deleted) throw unknown(id);
    return entry->session.report();
  }

  /// Label list for a session (used to resolve label-based requests).
  std::vector<std::string> labels(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    if (entry->deleted) throw unknown(id);
    return entry->session.labels();
  }

  std::vector<HistoryEntry> history(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    if (entry->deleted) throw unknown(id);
    return entry->session.history();
  }

  void remove(const std::string& id) {
    std::shared_ptr<Entry> entry;
    {
      std::unique_lock map_lock(map_mutex_);
      auto it = sessions_.find(id);
      if (it == sessions_.end()) throw unknown(id);
      entry = it->second;
      sessions_.erase(it);
    }
    std::lock_guard lock(entry->mutex);
    entry->deleted = true;
    append({{"event", "delete"}, {"id", id}});
  }

  std::size_t size() const {
    std::shared_lock lock(map_mutex_);
    return sessions_.size();
  }

 private:
  struct Entry {
    explicit Entry(ElicitationSession s) : session(std::move(s)) {}
    mutable std::mutex mutex;
    ElicitationSession session;
    bool deleted = false;
  };

  static Error unknown(const std::string& id) { return Error(Errc::UnknownSession, "no session '" + id + "'"); }

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw unknown(id);
    return it->second;
  }

  void append(const json& event) {
    if (!log_path_) return;
    std::lock_guard lock(log_mutex_);
    log_ << event.dump() << '\n';
    log_.flush();
  }

  // A torn final line (crash mid-write) is skipped; so are events for
  // sessions that no longer exist.
  void replay() {
    std::ifstream in(*log_path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json event = json::parse(line, nullptr, false);
      if (event.is_discarded() || !event.is_object() || !event.contains("event") || !event.contains("id")) continue;
      const std::string id = event.value("id", "");
      const std::string kind = event.value("event", "");
      try {
        if (kind == "create") {
          sessions_.insert_or_assign(
              id, std::make_shared<Entry>(ElicitationSession(event.at("labels").get<std::vector<std::string>>())));
        } else if (kind == "judgment") {
          auto it = sessions_.find(id);
          if (it == sessions_.end()) continue;
          it->second->session.add_judgment(event.at("i").get<std::size_t>(), event.at("j").get<std::size_t>(),
                                           event.at("value").get<double>());
        } else if (kind == "delete") {
          sessions_.erase(id);
        }
      } catch (const std::exception&) {
        continue;
      }
    }
  }

  mutable std::shared_mutex map_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
  std::optional<std::filesystem::path> log_path_;
  std::mutex log_mutex_;
  std::ofstream log_;
};

}  // namespace pairwise

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "fca/concepts.hpp"
#include "fca/error.hpp"
#include "fca/exploration.hpp"
#include "fca/io.hpp"
#include "fca/serialize.hpp"

namespace fca {

/// Exploration sessions keyed by id. With a data directory every session
/// keeps an append-only event log `<id>.jsonl` that is replayed on load.
class SessionStore {
 public:
  using json = nlohmann::json;

  explicit SessionStore(std::optional<std::filesystem::path> data_dir = std::nullopt) : dir_(std::move(data_dir)) {
    if (!dir_) return;
    std::filesystem::create_directories(*dir_);
    std::vector<std::filesystem::path> logs;
    for (const auto& e : std::filesystem::directory_iterator(*dir_))
      if (e.path().extension() == ".jsonl") logs.push_back(e.path());
    std::sort(logs.begin(), logs.end());
    for (const auto& p : logs) replay(p);
  }

  std::size_t size() const {
    std::shared_lock lock(map_mutex_);
    return sessions_.size();
  }

  /// Returns the new session's state.
  json create(const json& body) {
    std::vector<std::string> attributes;
    std::optional<Context> seed;
    try {
      attributes = body.at("attributes").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::kParse, "'attributes' must be an array of names");
    }
    if (body.contains("seed") && !body["seed"].is_null()) seed = json_io::context_from_json(body["seed"]);
    auto entry = std::make_unique<Entry>(ExplorationSession(attributes, seed));

    std::unique_lock lock(map_mutex_);
    const auto id = "s" + std::to_string(++last_id_);
    entry->id = id;
    json start = {{"event", "start"}, {"id", id}, {"attributes", attributes}};
    if (seed) start["seed"] = json_io::to_json(*seed);
    open_log(*entry);
    entry->append(start);
    entry->log_question();
    auto state = entry->state();
    sessions_.emplace(id, std::move(entry));
    return state;
  }

  json state(const std::string& id) const {
    auto& e = find(id);
    std::lock_guard lock(e.mutex);
    return e.state();
  }

  json answer(const std::string& id, const json& body) {
    auto& e = find(id);
    std::lock_guard lock(e.mutex);
    apply_answer(e.session, body);
    e.append(answer_event(body));
    e.log_question();
    return e.state();
  }

  json lattice(const std::string& id) const {
    auto& e = find(id);
    std::lock_guard lock(e.mutex);
    const auto& k = e.session.examples();
    return json_io::to_json(k, build_lattice(k));
  }

  /// Burmeister text of the examples, a blank line, then the accepted
  /// implications one per line.
  std::string export_text(const std::string& id) const {
    auto& e = find(id);
    std::lock_guard lock(e.mutex);
    return io::write_burmeister(e.session.examples()) + "\n" +
           io::write_implications(e.session.accepted(), e.session.universe());
  }

  std::vector<std::string> ids() const {
    std::shared_lock lock(map_mutex_);
    std::vector<std::string> out;
    for (const auto& [id, _] : sessions_) out.push_back(id);
    return out;
  }

 private:
  struct Entry {
    explicit Entry(ExplorationSession s) : session(std::move(s)) {}

    std::string id;
    ExplorationSession session;
    mutable std::mutex mutex;
    std::ofstream log;

    void append(const json& event) {
      if (!log.is_open()) return;
      log << event.dump() << "\n";
      log.flush();
    }

    void log_question() {
      if (session.pending()) append({{"event", "question"}, {"pending", json_io::to_json(*session.pending(), session.universe())}});
    }

    json state() const {
      const auto& u = session.universe();
      auto accepted = json_io::to_json(session.accepted(), u);
      return {{"id", id},
              {"attributes", u},
              {"status", to_string(session.status())},
              {"examples", json_io::to_json(session.examples())},
              {"accepted", accepted},
              {"basisSoFar", accepted},
              {"pending", session.pending() ? json_io::to_json(*session.pending(), u) : json(nullptr)}};
    }
  };

  static void apply_answer(ExplorationSession& s, const json& body) {
    const auto kind = body.value("kind", std::string{});
    if (kind == "accept") {
      s.accept();
    } else if (kind == "reject") {
      if (!body.contains("object") || !body["object"].is_string())
        throw Error(ErrorCode::kParse, "reject needs an 'object' name");
      const auto intent = json_io::attribute_set(body.value("intent", json::array()), s.universe());
      s.reject(body["object"].get<std::string>(), intent);
    } else {
      throw Error(ErrorCode::kParse, "'kind' must be \"accept\" or \"reject\"");
    }
  }

  static json answer_event(const json& body) {
    json e = {{"event", "answer"}, {"kind", body["kind"]}};
    if (body["kind"] == "reject") {
      e["object"] = body["object"];
      e["intent"] = body.value("intent", json::array());
    }
    return e;
  }

  void open_log(Entry& e) {
    if (!dir_) return;
    e.log.open(*dir_ / (e.id + ".jsonl"), std::ios::app);
  }

  void replay(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string line;
    std::unique_ptr<Entry> entry;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto ev = json::parse(line, nullptr, false);
      if (ev.is_discarded()) break;
      const auto kind = ev.value("event", std::string{});
      if (kind == "start") {
        std::optional<Context> seed;
        if (ev.contains("seed")) seed = json_io::context_from_json(ev["seed"]);
        entry = std::make_unique<Entry>(ExplorationSession(ev["attributes"].get<std::vector<std::string>>(), seed));
        entry->id = ev["id"].get<std::string>();
      } else if (kind == "answer" && entry) {
        apply_answer(entry->session, ev);
      }
    }
    if (!entry) return;
    if (entry->id.size() > 1 && entry->id[0] == 's') last_id_ = std::max(last_id_, std::stoull(entry->id.substr(1)));
    open_log(*entry);
    const auto id = entry->id;
    sessions_.emplace(id, std::move(entry));
  }

  Entry& find(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::kNotFound, "no session '" + id + "'");
    return *it->second;
  }

  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::unique_ptr<Entry>> sessions_;
  unsigned long long last_id_ = 0;
};

inline int http_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kSessionFinished: return 409;
    case ErrorCode::kViolatesAccepted:
    case ErrorCode::kDoesNotRefute:
    case ErrorCode::kDuplicateObject: return 422;
    default: return 400;
  }
}

/// HTTP front end for a SessionStore.
class ExplorationService {
 public:
  using json = nlohmann::json;

  explicit ExplorationService(std::optional<std::filesystem::path> data_dir = std::nullopt,
                              std::optional<std::filesystem::path> static_dir = std::nullopt)
      : store_(std::move(data_dir)) {
    if (static_dir && std::filesystem::is_directory(*static_dir)) server_.set_mount_point("/", static_dir->string());
    routes();
  }

  SessionStore& store() { return store_; }
  httplib::Server& server() { return server_; }

  bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  int bind_any(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  template <class F>
  static void handle(httplib::Response& res, F&& f) {
    try {
      res.set_content(f().dump(), "application/json");
    } catch (const Error& e) {
      res.status = http_status(e.code());
      res.set_content(json{{"error", to_string(e.code())}, {"detail", e.what()}}.dump(), "application/json");
    }
  }

  static json body_of(const httplib::Request& req) {
    auto j = json::parse(req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::kParse, "request body must be a JSON object");
    return j;
  }

  void routes() {
    server_.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { return store_.create(body_of(req)); });
    });
    server_.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { return store_.state(req.matches[1]); });
    });
    server_.Post(R"(/sessions/([^/]+)/answer)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { return store_.answer(req.matches[1], body_of(req)); });
    });
    server_.Get(R"(/sessions/([^/]+)/lattice)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { return store_.lattice(req.matches[1]); });
    });
    server_.Get(R"(/sessions/([^/]+)/export)", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        res.set_content(store_.export_text(req.matches[1]), "text/plain");
      } catch (const Error& e) {
        res.status = http_status(e.code());
        res.set_content(json{{"error", to_string(e.code())}, {"detail", e.what()}}.dump(), "application/json");
      }
    });
  }

  SessionStore store_;
  httplib::Server server_;
};

}  // namespace fca

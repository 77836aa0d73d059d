#pragma once

// JSON session service for the browser companion.
//
//   POST   /sessions               {"et": <ET document>, "strategy": "dqo"}
//   POST   /sessions/{id}/answers  {"answer": "correct" | "wrong"}
//   GET    /sessions/{id}/tree
//   DELETE /sessions/{id}
//   GET    /healthz
//
// SessionService holds the state and is usable without a socket; mount()
// binds it to a cpp-httplib server.

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "adq/formats.hpp"
#include "adq/met.hpp"
#include "adq/session.hpp"
#include "adq/strategies.hpp"

namespace adq {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

class SessionService {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionService(std::chrono::seconds idle_timeout = std::chrono::hours(1),
                          std::function<Clock::time_point()> now = [] { return Clock::now(); })
      : idle_timeout_(idle_timeout), now_(std::move(now)), rng_(std::random_device{}()) {}

  ServiceResponse create(const std::string& request_body) {
    evict_idle();
    nlohmann::json req;
    try {
      req = nlohmann::json::parse(request_body);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(400, std::string("invalid JSON: ") + e.what());
    }
    if (!req.is_object() || !req.contains("et")) return fail(400, "request needs an \"et\" document");
    StrategyId strategy = StrategyId::DQO_GENERAL;
    if (auto it = req.find("strategy"); it != req.end()) {
      if (!it->is_string()) return fail(400, "\"strategy\" must be a string");
      auto parsed = try_parse_strategy(it->get<std::string>());
      if (!parsed) return fail(400, "unknown strategy '" + it->get<std::string>() + "'");
      strategy = *parsed;
    }
    auto entry = std::make_shared<Entry>();
    try {
      entry->state = start_session(to_met(document_from_json(req["et"])), strategy);
    } catch (const error& e) {
      return fail(400, e.what());
    }
    entry->last_access = now_();

    std::string id;
    {
      std::lock_guard lock(mu_);
      do {
        id = new_id();
      } while (sessions_.contains(id));
      sessions_.emplace(id, entry);
    }
    std::lock_guard lock(entry->mu);
    nlohmann::json body = progress(entry->state);
    body["id"] = id;
    body["strategy"] = std::string(to_string(strategy));
    return {201, body};
  }

  ServiceResponse answer(const std::string& id, const std::string& request_body) {
    auto entry = find(id);
    if (!entry) return fail(404, "unknown session " + id);
    nlohmann::json req;
    try {
      req = nlohmann::json::parse(request_body);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(400, std::string("invalid JSON: ") + e.what());
    }
    const auto it = req.is_object() ? req.find("answer") : req.end();
    if (!req.is_object() || it == req.end() || !it->is_string()) return fail(400, "request needs \"answer\"");
    const std::string text = it->get<std::string>();
    Answer a;
    if (text == "correct") {
      a = Answer::Correct;
    } else if (text == "wrong") {
      a = Answer::Wrong;
    } else {
      return fail(400, "answer must be \"correct\" or \"wrong\"");
    }

    std::lock_guard lock(entry->mu);
    if (entry->state.finished()) return fail(409, "session " + id + " is already finished");
    entry->state = step_session(std::move(entry->state), a);
    nlohmann::json body = progress(entry->state);
    body["id"] = id;
    return {200, body};
  }

  ServiceResponse tree(const std::string& id) {
    auto entry = find(id);
    if (!entry) return fail(404, "unknown session " + id);
    std::lock_guard lock(entry->mu);
    const SessionState& s = entry->state;
    nlohmann::json body;
    body["id"] = id;
    body["finished"] = s.finished();
    body["pending"] = s.pending() ? nlohmann::json(s.pending()->value) : nlohmann::json(nullptr);
    body["questions"] = s.transcript().size();
    body["tree"] = snapshot(s);
    return {200, body};
  }

  ServiceResponse remove(const std::string& id) {
    std::lock_guard lock(mu_);
    if (sessions_.erase(id) == 0) return fail(404, "unknown session " + id);
    return {204, nullptr};
  }

  std::size_t session_count() {
    std::lock_guard lock(mu_);
    return sessions_.size();
  }

  /// Drops sessions untouched for longer than the idle timeout.
  void evict_idle() {
    const auto cutoff = now_() - idle_timeout_;
    std::lock_guard lock(mu_);
    std::erase_if(sessions_, [&](const auto& kv) {
      std::lock_guard entry_lock(kv.second->mu);
      return kv.second->last_access < cutoff;
    });
  }

  static nlohmann::json question_json(const SessionState& s) {
    const NodeId n = *s.pending();
    return {{"node", n.value}, {"label", s.met().node(n).label}, {"number", s.transcript().size() + 1}};
  }

  static nlohmann::json report_json(const SessionReport& r) {
    nlohmann::json j;
    j["buggy"] = r.buggy ? nlohmann::json{{"id", r.buggy->value}, {"label", r.buggy_label}} : nlohmann::json(nullptr);
    j["questions"] = r.questions;
    j["message"] = r.buggy ? "Bug found in node: " + r.buggy_label : std::string("No bug has been found");
    j["transcript"] = nlohmann::json::array();
    for (const auto& q : r.transcript) {
      j["transcript"].push_back({{"node", q.node.value}, {"label", q.label}, {"answer", to_string(q.answer)}});
    }
    return j;
  }

 private:
  struct Entry {
    std::mutex mu;
    SessionState state;
    Clock::time_point last_access;
  };

  static ServiceResponse fail(int status, const std::string& message) {
    return {status, {{"error", message}}};
  }

  static nlohmann::json progress(const SessionState& s) {
    nlohmann::json body;
    body["finished"] = s.finished();
    if (s.finished()) {
      body["report"] = report_json(s.report());
    } else {
      body["question"] = question_json(s);
    }
    return body;
  }

  static nlohmann::json snapshot(const SessionState& s) {
    const Met& met = s.met();
    if (met.empty()) return nullptr;
    const MetMetrics m(met);
    std::unordered_set<NodeId> answered;
    for (const auto& q : s.transcript()) answered.insert(q.node);
    std::function<nlohmann::json(NodeId)> build = [&](NodeId id) {
      const MetNode& n = met.node(id);
      const NodeMetrics& nm = m.at(id);
      nlohmann::json j;
      j["id"] = id.value;
      j["label"] = n.label;
      j["wi"] = n.wi;
      j["w"] = nm.w;
      j["up"] = nm.up;
      j["down"] = nm.down;
      j["marking"] = to_string(met.marking(id));
      j["answered"] = answered.contains(id);
      j["pending"] = s.pending() == id;
      j["children"] = nlohmann::json::array();
      for (NodeId c : n.children) j["children"].push_back(build(c));
      return j;
    };
    return build(met.root());
  }

  std::shared_ptr<Entry> find(const std::string& id) {
    std::shared_ptr<Entry> entry;
    {
      std::lock_guard lock(mu_);
      auto it = sessions_.find(id);
      if (it == sessions_.end()) return nullptr;
      entry = it->second;
    }
    std::lock_guard lock(entry->mu);
    const auto now = now_();
    if (entry->last_access < now - idle_timeout_) {
      return nullptr;
    }
    entry->last_access = now;
    return entry;
  }

  // Caller holds mu_.
  std::string new_id() {
    static constexpr char hex[] = "0123456789abcdef";
    std::string id;
    for (int i = 0; i < 2; ++i) {
      std::uint64_t bits = rng_();
      for (int k = 0; k < 16; ++k, bits >>= 4) id += hex[bits & 0xf];
    }
    return id;
  }

  std::chrono::seconds idle_timeout_;
  std::function<Clock::time_point()> now_;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mt19937_64 rng_;
};

inline void reply(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  if (r.status != 204) res.set_content(r.body.dump(), "application/json");
}

/// Registers the endpoints on `server`. When `static_dir` exists it is served at "/".
inline void mount(httplib::Server& server, SessionService& service, const std::string& static_dir = {}) {
  server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.create(req.body));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/answers)", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.answer(req.matches[1], req.body));
  });
  server.Get(R"(/sessions/([0-9a-f]+)/tree)", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.tree(req.matches[1]));
  });
  server.Delete(R"(/sessions/([0-9a-f]+))", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.remove(req.matches[1]));
  });
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
  if (!static_dir.empty() && std::filesystem::is_directory(static_dir)) {
    server.set_mount_point("/", static_dir);
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("adq session service: UI bundle not installed\n", "text/plain");
    });
  }
}

}  // namespace adq

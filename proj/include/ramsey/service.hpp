#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "ramsey/session.hpp"

namespace ramsey {

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

// In-memory games behind the HTTP bridge. One mutex per game; the map itself has its own lock.
class GameRegistry {
 public:
  explicit GameRegistry(std::chrono::seconds idle = std::chrono::minutes(30)) : idle_(idle) {}

  HttpReply create(const std::string& body);
  HttpReply move(const std::string& id, const std::string& body);
  HttpReply state(const std::string& id);
  HttpReply hints(const std::string& id);
  size_t evict_idle();
  size_t size();

 private:
  struct Entry {
    std::mutex mu;
    Session session;
    std::chrono::steady_clock::time_point touched;
    Entry(BoardKind k, int n) : session(k, n), touched(std::chrono::steady_clock::now()) {}
  };
  std::shared_ptr<Entry> find(const std::string& id);

  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> games_;
  std::chrono::seconds idle_;
  unsigned long long next_ = 0;
};

// Lets a caller (tests) learn the bound port and shut the server down.
struct ServeControl {
  std::atomic<int> port{0};
  std::atomic<bool> stop{false};
};

// Blocks serving the registry over HTTP until the process stops, or until ctl->stop is set.
// Port 0 binds any free port. Returns non-zero if the port cannot be bound.
int serve(const std::string& host, int port, ServeControl* ctl = nullptr);

}  // namespace ramsey

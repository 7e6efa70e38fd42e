// Copyright 2026 The QualiBD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "qualibd/store.hpp"

namespace qualibd {

inline constexpr int kDefaultPort = 7341;

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = kDefaultPort;  // 0 binds an ephemeral port
  std::filesystem::path store = "models";
  std::optional<std::filesystem::path> ui_root;  // static bundle served at "/"
};

/// HTTP front end over a ModelStore.
///
///   GET  /api/models                      list {id, name, revision}
///   POST /api/models                      {name} -> 201 {id, name, revision}
///   GET  /api/models/{id}                 full JSON document
///   POST /api/models/{id}/commands        {base_revision, type, ...} -> outcome
///   GET  /api/models/{id}/diagnostics     [{rule, severity, target, message}]
///   GET  /api/models/{id}/export?format=  dot | svg | qbd | json
///   PUT  /api/models/{id}/dsl             .qbd body, 422 with spans on parse errors
///   GET  /api/metamodel                   kinds, endpoint table, styles
class Server {
 public:
  /// Opens the store. Throws StoreError if it cannot be read.
  explicit Server(ServerConfig config);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket; returns the bound port. Throws std::runtime_error if busy.
  int bind();
  /// Serves until stop(). Requires bind().
  void run();
  void stop();

  ModelStore& store() noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qualibd

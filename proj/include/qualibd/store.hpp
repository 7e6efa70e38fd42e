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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qualibd/document.hpp"
#include "qualibd/model.hpp"

namespace qualibd {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `contents` to `target` through a sibling temp file, fsync and
/// rename, so readers see either the old file or the new one. `hook` is
/// called at the named stages ("partial", "before-rename") and may throw to
/// simulate a crash.
void write_file_atomically(const std::filesystem::path& target, std::string_view contents,
                           const std::function<void(std::string_view)>& hook = {});

/// True for ids usable as file names: 1-64 chars of [A-Za-z0-9_-].
bool valid_model_id(std::string_view id) noexcept;

/// One JSON file per model, `<id>.json`, in a single directory. Mutations of
/// one model are serialized; different models proceed in parallel.
class ModelStore {
 public:
  struct Summary {
    ModelId id;
    std::string name;
    std::uint64_t revision = 0;
  };

  enum class Status { Ok, NotFound, Conflict, WriteFailed };

  struct CommandResult {
    Status status = Status::Ok;
    EditOutcome outcome;
    std::uint64_t revision = 0;  // current revision after the call
    std::string error;
  };

  struct ReplaceResult {
    Status status = Status::Ok;
    std::uint64_t revision = 0;
    std::string error;
  };

  /// Loads every `<id>.json` under `root` (created if missing). Throws
  /// StoreError if the directory cannot be read. Unloadable files are
  /// reported through `skipped()` and left alone.
  explicit ModelStore(std::filesystem::path root);

  ModelStore(const ModelStore&) = delete;
  ModelStore& operator=(const ModelStore&) = delete;

  const std::filesystem::path& root() const noexcept { return root_; }
  const std::vector<std::string>& skipped() const noexcept { return skipped_; }

  std::vector<Summary> list() const;
  std::optional<Model> get(const ModelId& id) const;
  std::filesystem::path file_for(const ModelId& id) const;

  /// Creates and persists an empty model. Throws StoreError on write failure.
  Summary create(std::string name);

  /// Applies `command` if `base_revision` matches. Cancelled and rejected
  /// outcomes change nothing and are not written.
  CommandResult apply(const ModelId& id, std::uint64_t base_revision, const EditCommand& command);

  /// Swaps the model content (id kept, revision bumped, journal dropped).
  ReplaceResult replace(const ModelId& id, Model content,
                        std::optional<std::uint64_t> base_revision);

  /// Fault injection on the write path, see write_file_atomically.
  void set_write_hook(std::function<void(std::string_view)> hook);

 private:
  struct Entry {
    mutable std::mutex mutex;
    Document document;
  };

  std::shared_ptr<Entry> find(const ModelId& id) const;
  void persist(const Model& model) const;

  std::filesystem::path root_;
  mutable std::shared_mutex index_mutex_;
  std::map<ModelId, std::shared_ptr<Entry>> index_;
  std::vector<std::string> skipped_;
  std::function<void(std::string_view)> write_hook_;
};

}  // namespace qualibd

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

#include "qualibd/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <utility>

#include "qualibd/json_io.hpp"

namespace qualibd {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kTempSuffix = ".tmp";

class FileDescriptor {
 public:
  explicit FileDescriptor(int fd) : fd_(fd) {}
  ~FileDescriptor() {
    if (fd_ >= 0) ::close(fd_);
  }
  FileDescriptor(const FileDescriptor&) = delete;
  FileDescriptor& operator=(const FileDescriptor&) = delete;

  int get() const noexcept { return fd_; }
  int release() noexcept { return std::exchange(fd_, -1); }

 private:
  int fd_;
};

[[noreturn]] void fail(const std::string& what, const fs::path& path) {
  throw StoreError(what + " " + path.string() + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view data, const fs::path& path) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("cannot write", path);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fresh_id() {
  static constexpr char kHex[] = "0123456789abcdef";
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::uint64_t bits = rng();
  std::string id = "m";
  for (int i = 0; i < 12; ++i, bits >>= 4) id.push_back(kHex[bits & 0xf]);
  return id;
}

}  // namespace

void write_file_atomically(const fs::path& target, std::string_view contents,
                           const std::function<void(std::string_view)>& hook) {
  fs::path temp = target;
  temp += kTempSuffix;
  try {
    FileDescriptor fd{::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644)};
    if (fd.get() < 0) fail("cannot create", temp);
    const std::size_t half = contents.size() / 2;
    write_all(fd.get(), contents.substr(0, half), temp);
    if (hook) hook("partial");
    write_all(fd.get(), contents.substr(half), temp);
    if (::fsync(fd.get()) != 0) fail("cannot sync", temp);
    if (::close(fd.release()) != 0) fail("cannot close", temp);
    if (hook) hook("before-rename");
    if (::rename(temp.c_str(), target.c_str()) != 0) fail("cannot rename onto", target);
  } catch (...) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw;
  }

  FileDescriptor dir{::open(target.parent_path().empty() ? "." : target.parent_path().c_str(),
                            O_RDONLY | O_DIRECTORY | O_CLOEXEC)};
  if (dir.get() >= 0) ::fsync(dir.get());
}

bool valid_model_id(std::string_view id) noexcept {
  return !id.empty() && id.size() <= 64 && std::ranges::all_of(id, [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_';
  });
}

ModelStore::ModelStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (!fs::is_directory(root_, ec)) {
    throw StoreError("store directory " + root_.string() + " is not a readable directory");
  }
  fs::directory_iterator it{root_, ec};
  if (ec) throw StoreError("cannot read store directory " + root_.string() + ": " + ec.message());

  for (const auto& entry : it) {
    const fs::path& path = entry.path();
    const std::string file = path.filename().string();
    if (file.ends_with(std::string{".json"} + std::string{kTempSuffix})) {
      // Leftover from an interrupted write; the target file is still intact.
      fs::remove(path, ec);
      continue;
    }
    if (path.extension() != ".json" || !entry.is_regular_file()) continue;
    const std::string stem = path.stem().string();
    try {
      Model model = from_json(read_file(path));
      if (model.id.value != stem || !valid_model_id(stem)) {
        skipped_.push_back(file + ": id does not match file name");
        continue;
      }
      auto slot = std::make_shared<Entry>();
      slot->document = Document{std::move(model)};
      index_.emplace(ModelId{stem}, std::move(slot));
    } catch (const std::exception& e) {
      skipped_.push_back(file + ": " + e.what());
    }
  }
}

fs::path ModelStore::file_for(const ModelId& id) const { return root_ / (id.value + ".json"); }

void ModelStore::persist(const Model& model) const {
  write_file_atomically(file_for(model.id), to_json(model), write_hook_);
}

void ModelStore::set_write_hook(std::function<void(std::string_view)> hook) {
  std::unique_lock lock{index_mutex_};
  write_hook_ = std::move(hook);
}

std::shared_ptr<ModelStore::Entry> ModelStore::find(const ModelId& id) const {
  std::shared_lock lock{index_mutex_};
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : it->second;
}

std::vector<ModelStore::Summary> ModelStore::list() const {
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::shared_lock lock{index_mutex_};
    for (const auto& [id, entry] : index_) entries.push_back(entry);
  }
  std::vector<Summary> out;
  for (const auto& entry : entries) {
    std::lock_guard lock{entry->mutex};
    const Model& m = entry->document.model();
    out.push_back(Summary{m.id, m.name, m.revision});
  }
  return out;
}

std::optional<Model> ModelStore::get(const ModelId& id) const {
  auto entry = find(id);
  if (!entry) return std::nullopt;
  std::lock_guard lock{entry->mutex};
  return entry->document.model();
}

ModelStore::Summary ModelStore::create(std::string name) {
  std::unique_lock lock{index_mutex_};
  ModelId id;
  do {
    id = ModelId{fresh_id()};
  } while (index_.contains(id) || fs::exists(file_for(id)));

  Model model;
  model.id = id;
  model.name = std::move(name);
  persist(model);
  auto entry = std::make_shared<Entry>();
  entry->document = Document{model};
  index_.emplace(id, std::move(entry));
  return Summary{model.id, model.name, model.revision};
}

ModelStore::CommandResult ModelStore::apply(const ModelId& id, std::uint64_t base_revision,
                                            const EditCommand& command) {
  auto entry = find(id);
  if (!entry) return CommandResult{Status::NotFound, {}, 0, "unknown model " + id.value};
  std::lock_guard lock{entry->mutex};
  const std::uint64_t current = entry->document.model().revision;
  if (base_revision != current) {
    return CommandResult{Status::Conflict, {}, current,
                         "stale base_revision " + std::to_string(base_revision) + ", model is at " +
                             std::to_string(current)};
  }

  Document before = entry->document;
  EditOutcome outcome = entry->document.apply(command);
  if (outcome.applied()) {
    try {
      persist(entry->document.model());
    } catch (const std::exception& e) {
      entry->document = std::move(before);
      return CommandResult{Status::WriteFailed, {}, current, e.what()};
    }
  }
  return CommandResult{Status::Ok, outcome, entry->document.model().revision, {}};
}

ModelStore::ReplaceResult ModelStore::replace(const ModelId& id, Model content,
                                              std::optional<std::uint64_t> base_revision) {
  auto entry = find(id);
  if (!entry) return ReplaceResult{Status::NotFound, 0, "unknown model " + id.value};
  std::lock_guard lock{entry->mutex};
  const Model& current = entry->document.model();
  if (base_revision && *base_revision != current.revision) {
    return ReplaceResult{Status::Conflict, current.revision,
                         "stale base_revision " + std::to_string(*base_revision) +
                             ", model is at " + std::to_string(current.revision)};
  }
  content.id = current.id;
  content.revision = current.revision + 1;
  content.next_id = std::max(content.next_id, current.next_id);
  try {
    persist(content);
  } catch (const std::exception& e) {
    return ReplaceResult{Status::WriteFailed, current.revision, e.what()};
  }
  entry->document = Document{std::move(content)};
  return ReplaceResult{Status::Ok, entry->document.model().revision, {}};
}

}  // namespace qualibd

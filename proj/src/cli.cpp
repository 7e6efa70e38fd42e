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

#include "qualibd/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qualibd/dsl.hpp"
#include "qualibd/export.hpp"
#include "qualibd/json_io.hpp"
#include "qualibd/server.hpp"
#include "qualibd/validation.hpp"

namespace qualibd {

namespace {

namespace fs = std::filesystem;

struct LoadFailure {
  std::vector<std::string> messages;
};

std::optional<std::string> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool is_json_path(const fs::path& path) { return path.extension() == ".json"; }

/// Reads a .json document (schema-checked only) or a .qbd source.
std::variant<Model, LoadFailure> load(const fs::path& path) {
  auto text = slurp(path);
  if (!text) return LoadFailure{{path.string() + ": cannot read file"}};
  if (is_json_path(path)) {
    try {
      return from_json(*text, Strictness::Lenient);
    } catch (const DocumentError& e) {
      return LoadFailure{{path.string() + ": " + e.what()}};
    }
  }
  ParseResult parsed = parse_dsl(*text);
  if (parsed) return std::move(parsed.model());
  LoadFailure failure;
  for (const auto& e : parsed.errors()) failure.messages.push_back(path.string() + ':' + e.message());
  return failure;
}

int report(const LoadFailure& failure, std::ostream& err) {
  for (const auto& m : failure.messages) err << m << '\n';
  return exit_code::kParseFailure;
}

int cmd_validate(const fs::path& file, bool as_json, bool verbose, std::ostream& out,
                 std::ostream& err) {
  auto loaded = load(file);
  if (auto* failure = std::get_if<LoadFailure>(&loaded)) return report(*failure, err);
  const auto diagnostics = validate(std::get<Model>(loaded));
  if (as_json) {
    out << diagnostics_to_json(diagnostics).dump(2) << '\n';
  } else {
    for (const auto& d : diagnostics) out << file.string() << ": " << render_human(d) << '\n';
    if (verbose) {
      out << file.string() << ": " << diagnostics.size()
          << (diagnostics.size() == 1 ? " finding" : " findings") << '\n';
    }
  }
  return has_errors(diagnostics) ? exit_code::kFindings : exit_code::kOk;
}

int emit(const std::string& text, const std::string& output, std::ostream& out, std::ostream& err) {
  if (output.empty() || output == "-") {
    out << text;
    return exit_code::kOk;
  }
  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  if (!(file << text)) {
    err << output << ": cannot write file\n";
    return exit_code::kFindings;
  }
  return exit_code::kOk;
}

int cmd_render(const fs::path& file, const std::string& format, const std::string& output,
               std::ostream& out, std::ostream& err) {
  auto loaded = load(file);
  if (auto* failure = std::get_if<LoadFailure>(&loaded)) return report(*failure, err);
  const Model& model = std::get<Model>(loaded);
  const auto problems = rule_structural(model);
  if (!problems.empty()) {
    for (const auto& d : problems) err << file.string() << ": " << render_human(d) << '\n';
    return exit_code::kFindings;
  }
  const std::string text = format == "dot" ? to_dot(model) : to_svg(model, layout(model));
  return emit(text, output, out, err);
}

int cmd_fmt(const fs::path& file, bool check, bool write, std::ostream& out, std::ostream& err) {
  auto text = slurp(file);
  if (!text) {
    err << file.string() << ": cannot read file\n";
    return exit_code::kParseFailure;
  }
  ParseResult parsed = parse_dsl(*text);
  if (!parsed) {
    for (const auto& e : parsed.errors()) err << file.string() << ':' << e.message() << '\n';
    return exit_code::kParseFailure;
  }
  const std::string canonical = format_dsl(parsed.model());
  if (check) {
    if (canonical == *text) return exit_code::kOk;
    err << file.string() << ": not canonically formatted\n";
    return exit_code::kFindings;
  }
  if (write) {
    if (canonical == *text) return exit_code::kOk;
    try {
      write_file_atomically(file, canonical);
    } catch (const std::exception& e) {
      err << e.what() << '\n';
      return exit_code::kFindings;
    }
    return exit_code::kOk;
  }
  out << canonical;
  return exit_code::kOk;
}

int cmd_serve(ServerConfig config, std::ostream& out, std::ostream& err) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  int status = exit_code::kOk;
  try {
    Server server{config};
    for (const auto& skipped : server.store().skipped()) err << "skipped " << skipped << '\n';
    const int port = server.bind();
    out << "qualibd listening on http://" << config.host << ':' << port << " (store "
        << config.store.string() << ")" << std::endl;

    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      server.stop();
    });
    server.run();
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  } catch (const std::exception& e) {
    err << "serve: " << e.what() << '\n';
    status = exit_code::kFindings;
  }
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return status;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"QualiBD: goal-oriented modeling of Big Data quality requirements", "qualibd"};
  app.require_subcommand(1);

  fs::path validate_file;
  bool validate_json = false;
  bool validate_verbose = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a .qbd or .json model and print diagnostics");
  validate_cmd->add_option("file", validate_file, "Model file (.qbd or .json)")->required();
  validate_cmd->add_flag("--json", validate_json, "Print diagnostics as JSON");
  validate_cmd->add_flag("-v,--verbose", validate_verbose, "Print a summary line");

  fs::path render_file;
  std::string render_format = "svg";
  std::string render_output;
  auto* render_cmd = app.add_subcommand("render", "Render a model as DOT or SVG");
  render_cmd->add_option("file", render_file, "Model file (.qbd or .json)")->required();
  render_cmd->add_option("--format", render_format, "dot or svg")
      ->check(CLI::IsMember({"dot", "svg"}))
      ->capture_default_str();
  render_cmd->add_option("-o,--output", render_output, "Output file (default stdout)");

  fs::path fmt_file;
  bool fmt_check = false;
  bool fmt_write = false;
  auto* fmt_cmd = app.add_subcommand("fmt", "Print a .qbd file in canonical form");
  fmt_cmd->add_option("file", fmt_file, "Source file (.qbd)")->required();
  auto* check_flag = fmt_cmd->add_flag("--check", fmt_check, "Exit 1 if the file is not canonical");
  fmt_cmd->add_flag("-w,--write", fmt_write, "Rewrite the file in place")->excludes(check_flag);

  ServerConfig serve_config;
  if (const char* env = std::getenv("QUALIBD_STORE"); env != nullptr && *env != '\0') {
    serve_config.store = env;
  }
  std::string serve_ui;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API and editor");
  serve_cmd->add_option("--port", serve_config.port, "TCP port")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--host", serve_config.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--store", serve_config.store, "Model directory (env QUALIBD_STORE)");
  serve_cmd->add_option("--ui", serve_ui, "Directory with the web editor bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "qualibd: " << e.what() << "\n\n" << app.help();
    return exit_code::kUsage;
  }

  if (*validate_cmd) return cmd_validate(validate_file, validate_json, validate_verbose, out, err);
  if (*render_cmd) return cmd_render(render_file, render_format, render_output, out, err);
  if (*fmt_cmd) return cmd_fmt(fmt_file, fmt_check, fmt_write, out, err);
  if (!serve_ui.empty()) serve_config.ui_root = serve_ui;
  return cmd_serve(std::move(serve_config), out, err);
}

}  // namespace qualibd

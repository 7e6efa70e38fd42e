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

#include "qualibd/server.hpp"

#include <charconv>
#include <mutex>
#include <stdexcept>

#include <httplib.h>

#include "qualibd/dsl.hpp"
#include "qualibd/export.hpp"
#include "qualibd/json_io.hpp"
#include "qualibd/validation.hpp"

namespace qualibd {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>QualiBD</title></head>"
    "<body><h1>QualiBD</h1><p>The editor bundle is not installed. Start the server with "
    "<code>--ui &lt;dir&gt;</code> or use the API under <code>/api</code>.</p></body></html>";

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  ordered_json body;
  body["error"] = message;
  send_json(res, status, body);
}

ordered_json summary_json(const ModelStore::Summary& s) {
  ordered_json out;
  out["id"] = s.id.value;
  out["name"] = s.name;
  out["revision"] = s.revision;
  return out;
}

ordered_json metamodel_json() {
  ordered_json out;
  out["node_kinds"] = ordered_json::array();
  for (NodeKind k : kAllNodeKinds) out["node_kinds"].push_back(to_string(k));
  out["edge_kinds"] = ordered_json::array();
  for (EdgeKind k : kAllEdgeKinds) out["edge_kinds"].push_back(to_string(k));
  out["attribute_kinds"] = ordered_json::array();
  for (AttributeValueKind k : kAllAttributeValueKinds) out["attribute_kinds"].push_back(to_string(k));
  out["endpoint_rules"] = ordered_json::array();
  for (const EndpointRule& r : endpoint_rules()) {
    out["endpoint_rules"].push_back(
        ordered_json::array({to_string(r.edge_kind), to_string(r.from_kind), to_string(r.to_kind)}));
  }
  ordered_json styles = ordered_json::object();
  auto add_style = [&](const StyleSpec& s, std::string_view name) {
    ordered_json entry;
    if (s.shape) entry["shape"] = to_string(*s.shape);
    entry["fill"] = s.fill;
    entry["stroke"] = s.stroke;
    entry["line"] = to_string(s.line);
    entry["label_placement"] = to_string(s.label_placement);
    styles[std::string{name}] = std::move(entry);
  };
  for (NodeKind k : kAllNodeKinds) add_style(style_for(k), to_string(k));
  for (EdgeKind k : kAllEdgeKinds) add_style(style_for(k), to_string(k));
  out["styles"] = std::move(styles);
  return out;
}

std::optional<std::uint64_t> parse_revision(const std::string& text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

struct Server::Impl {
  explicit Impl(ServerConfig cfg) : config(std::move(cfg)), store(config.store) { routes(); }

  ServerConfig config;
  ModelStore store;
  httplib::Server http;
  std::mutex lifecycle;
  bool listening = false;
  bool stop_requested = false;

  // Resolves {id}; sends 404 and returns nullopt for unknown or malformed ids.
  std::optional<ModelId> model_id(const httplib::Request& req, httplib::Response& res) {
    const std::string& raw = req.path_params.at("id");
    if (!valid_model_id(raw)) {
      send_error(res, 404, "unknown model " + raw);
      return std::nullopt;
    }
    return ModelId{raw};
  }

  void routes() {
    // SO_REUSEADDR only: SO_REUSEPORT would let a second server share the port.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
    http.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                  std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      } catch (...) {
        send_error(res, 500, "internal error");
      }
    });

    http.Get("/api/metamodel", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, metamodel_json());
    });

    http.Get("/api/models", [this](const httplib::Request&, httplib::Response& res) {
      ordered_json out = ordered_json::array();
      for (const auto& s : store.list()) out.push_back(summary_json(s));
      send_json(res, 200, out);
    });

    http.Post("/api/models", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::parse_error& e) {
        return send_error(res, 400, e.what());
      }
      if (!body.is_object() || !body.contains("name") || !body["name"].is_string()) {
        return send_error(res, 400, "expected {\"name\": string}");
      }
      send_json(res, 201, summary_json(store.create(body["name"].get<std::string>())));
    });

    http.Get("/api/models/:id", [this](const httplib::Request& req, httplib::Response& res) {
      auto id = model_id(req, res);
      if (!id) return;
      auto model = store.get(*id);
      if (!model) return send_error(res, 404, "unknown model " + id->value);
      res.status = 200;
      res.set_content(to_json(*model), kJson);
    });

    http.Post("/api/models/:id/commands",
              [this](const httplib::Request& req, httplib::Response& res) {
                auto id = model_id(req, res);
                if (!id) return;
                json body;
                try {
                  body = json::parse(req.body);
                } catch (const json::parse_error& e) {
                  return send_error(res, 400, e.what());
                }
                if (!body.is_object() || !body.contains("base_revision") ||
                    !body["base_revision"].is_number_unsigned()) {
                  return send_error(res, 400, "missing or invalid base_revision");
                }
                EditCommand command;
                try {
                  command = command_from_json(body);
                } catch (const DocumentError& e) {
                  return send_error(res, 400, e.what());
                }
                const auto result =
                    store.apply(*id, body["base_revision"].get<std::uint64_t>(), command);
                switch (result.status) {
                  case ModelStore::Status::Ok: return send_json(res, 200, outcome_to_json(result.outcome));
                  case ModelStore::Status::NotFound: return send_error(res, 404, result.error);
                  case ModelStore::Status::Conflict: {
                    ordered_json out;
                    out["error"] = result.error;
                    out["revision"] = result.revision;
                    return send_json(res, 409, out);
                  }
                  case ModelStore::Status::WriteFailed: return send_error(res, 500, result.error);
                }
              });

    http.Get("/api/models/:id/diagnostics",
             [this](const httplib::Request& req, httplib::Response& res) {
               auto id = model_id(req, res);
               if (!id) return;
               auto model = store.get(*id);
               if (!model) return send_error(res, 404, "unknown model " + id->value);
               send_json(res, 200, diagnostics_to_json(validate(*model)));
             });

    http.Get("/api/models/:id/export", [this](const httplib::Request& req, httplib::Response& res) {
      auto id = model_id(req, res);
      if (!id) return;
      auto model = store.get(*id);
      if (!model) return send_error(res, 404, "unknown model " + id->value);
      const std::string format = req.has_param("format") ? req.get_param_value("format") : "svg";
      res.status = 200;
      if (format == "dot") {
        res.set_content(to_dot(*model), "text/vnd.graphviz; charset=utf-8");
      } else if (format == "svg") {
        res.set_content(to_svg(*model, layout(*model)), "image/svg+xml");
      } else if (format == "qbd") {
        res.set_content(format_dsl(*model), "text/plain; charset=utf-8");
      } else if (format == "json") {
        res.set_content(to_json(*model), kJson);
      } else {
        send_error(res, 400, "unknown export format '" + format + "' (dot, svg, qbd, json)");
      }
    });

    http.Put("/api/models/:id/dsl", [this](const httplib::Request& req, httplib::Response& res) {
      auto id = model_id(req, res);
      if (!id) return;
      std::optional<std::uint64_t> base;
      if (req.has_param("base_revision")) {
        base = parse_revision(req.get_param_value("base_revision"));
        if (!base) return send_error(res, 400, "invalid base_revision");
      }
      auto current = store.get(*id);
      if (!current) return send_error(res, 404, "unknown model " + id->value);

      ParseResult parsed = parse_dsl(req.body, ParseOptions{current->next_id});
      if (!parsed) {
        ordered_json errors = ordered_json::array();
        for (const auto& e : parsed.errors()) {
          ordered_json item;
          item["line"] = e.span.line;
          item["column"] = e.span.column;
          item["length"] = e.span.length;
          item["expected"] = e.expected;
          item["found"] = e.found;
          item["message"] = e.message();
          errors.push_back(std::move(item));
        }
        ordered_json out;
        out["error"] = "parse failed";
        out["errors"] = std::move(errors);
        return send_json(res, 422, out);
      }
      Model content = std::move(parsed.model());
      content.geometry = layout(content).boxes;
      const auto result = store.replace(*id, std::move(content), base);
      switch (result.status) {
        case ModelStore::Status::Ok: {
          auto stored = store.get(*id);
          res.status = 200;
          res.set_content(to_json(*stored), kJson);
          return;
        }
        case ModelStore::Status::NotFound: return send_error(res, 404, result.error);
        case ModelStore::Status::Conflict: {
          ordered_json out;
          out["error"] = result.error;
          out["revision"] = result.revision;
          return send_json(res, 409, out);
        }
        case ModelStore::Status::WriteFailed: return send_error(res, 500, result.error);
      }
    });

    if (config.ui_root && std::filesystem::is_directory(*config.ui_root)) {
      http.set_mount_point("/", config.ui_root->string());
    } else {
      http.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
      });
    }
  }
};

Server::Server(ServerConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Server::~Server() { stop(); }

int Server::bind() {
  int port = impl_->config.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(impl_->config.host);
    if (port < 0) throw std::runtime_error("cannot bind " + impl_->config.host);
  } else if (!impl_->http.bind_to_port(impl_->config.host, port)) {
    throw std::runtime_error("cannot bind " + impl_->config.host + ":" + std::to_string(port) +
                             " (port busy?)");
  }
  return port;
}

void Server::run() {
  {
    std::lock_guard lock{impl_->lifecycle};
    if (impl_->stop_requested) return;
    impl_->listening = true;
  }
  impl_->http.listen_after_bind();
  std::lock_guard lock{impl_->lifecycle};
  impl_->listening = false;
}

void Server::stop() {
  if (!impl_) return;
  {
    std::lock_guard lock{impl_->lifecycle};
    impl_->stop_requested = true;
    if (!impl_->listening) return;
  }
  // httplib ignores stop() until the accept loop is up.
  impl_->http.wait_until_ready();
  impl_->http.stop();
}

ModelStore& Server::store() noexcept { return impl_->store; }

}  // namespace qualibd

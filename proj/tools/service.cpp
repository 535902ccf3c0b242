// Copyright 2026 The lasertpl Authors
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

#include "service.hpp"

#include "handles.hpp"

#include <httplib.h>
#include <json.hpp>

#include <filesystem>
#include <stdexcept>

namespace lasertpl::service {

using nlohmann::json;

namespace {

using handles::Owned;

Reply jsonReply(int status, const json& body) {
    return {status, "application/json", body.dump()};
}

Reply errorReply(int status, const std::string& message) {
    return jsonReply(status, {{"error", message}});
}

// 422 body: the failing stage and message, plus every diagnostic.
Reply pipelineReply(const std::string& message) {
    json diags = json::parse(lt_last_diagnostics(), nullptr, false);
    if (diags.is_discarded()) {
        diags = json::array();
    }
    std::string stage;
    std::string detail = message;
    for (const json& d : diags) {
        if (d.value("severity", "") == "error") {
            stage = d.value("stage", "");
            detail = d.value("message", message);
            if (d.contains("element")) {
                detail = d["element"].get<std::string>() + ": " + detail;
            }
            break;
        }
    }
    return jsonReply(422, {{"stage", stage}, {"message", detail}, {"diagnostics", diags}});
}

const char* kPlaceholder = "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>lasertpl</title>"
                           "</head><body><p>No UI assets installed. The JSON API is available "
                           "under /api.</p></body></html>\n";

} // namespace

Service::Service(std::string templateText, std::vector<std::string> profileDefinitions,
                 std::string uiDir)
    : text_(std::move(templateText))
    , profiles_(std::move(profileDefinitions))
    , uiDir_(std::move(uiDir)) {
    if (lt_document_parse(text_.data(), text_.size(), &doc_) != LT_OK) {
        throw std::runtime_error(lt_last_error());
    }
    // Reject bad profile definitions at startup rather than per request.
    lt_params* probe = nullptr;
    lt_params_new(&probe);
    Owned<lt_params> guard(probe);
    for (const std::string& p : profiles_) {
        if (lt_params_add_profile_definition(probe, p.c_str()) != LT_OK) {
            lt_document_free(doc_);
            throw std::runtime_error(lt_last_error());
        }
    }
}

Service::~Service() {
    lt_document_free(doc_);
}

Reply Service::params() const {
    char* out = nullptr;
    if (lt_document_param_descriptors(doc_, &out) != LT_OK) {
        return errorReply(500, lt_last_error());
    }
    Owned<char> s(out);
    return {200, "application/json", s.get()};
}

Reply Service::instantiate(const std::string& body) const {
    lt_params* raw = nullptr;
    if (lt_params_from_json(body.c_str(), &raw) != LT_OK) {
        return errorReply(400, lt_last_error());
    }
    Owned<lt_params> params(raw);
    for (const std::string& p : profiles_) {
        lt_params_add_profile_definition(raw, p.c_str());
    }
    lt_document* result = nullptr;
    char* diag = nullptr;
    lt_status st = lt_instantiate(doc_, raw, &result, &diag);
    if (st != LT_OK) {
        if (st == LT_INVALID_ARGUMENT || st == LT_NOT_FOUND) {
            return errorReply(400, lt_last_error());
        }
        if (st == LT_INTERNAL) {
            return errorReply(500, lt_last_error());
        }
        return pipelineReply(lt_last_error());
    }
    Owned<lt_document> doc(result);
    Owned<char> warnings(diag);
    char* svg = nullptr;
    if (lt_document_serialize(result, &svg) != LT_OK) {
        return errorReply(500, lt_last_error());
    }
    Owned<char> s(svg);
    return {200, "image/svg+xml", s.get()};
}

Reply Service::templateFile() const {
    return {200, "image/svg+xml", text_};
}

Reply Service::index() const {
    return {200, "text/html", kPlaceholder};
}

void Service::mount(httplib::Server& server) const {
    auto send = [](httplib::Response& res, const Reply& r) {
        res.status = r.status;
        res.set_content(r.body, r.contentType);
    };
    server.Get("/api/params", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, params());
    });
    server.Post("/api/instantiate", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, instantiate(req.body));
    });
    server.Get("/api/template", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, templateFile());
    });
    bool assets = !uiDir_.empty() && std::filesystem::is_directory(uiDir_)
                  && server.set_mount_point("/", uiDir_);
    if (!assets) {
        server.Get("/", [this, send](const httplib::Request&, httplib::Response& res) {
            send(res, index());
        });
    }
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) {
            return httplib::Server::HandlerResponse::Unhandled;
        }
        std::string msg = res.status == 404 ? "unknown route " + req.path : "request failed";
        res.set_content(json{{"error", msg}}.dump(), "application/json");
        return httplib::Server::HandlerResponse::Handled;
    });
}

bool serve(const Service& service, const std::string& host, int port) {
    httplib::Server server;
    service.mount(server);
    return server.listen(host, port);
}

} // namespace lasertpl::service

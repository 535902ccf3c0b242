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

#ifndef LASERTPL_TOOLS_SERVICE_HPP
#define LASERTPL_TOOLS_SERVICE_HPP

#include <string>
#include <vector>

struct lt_document;

namespace httplib {
class Server;
}

namespace lasertpl::service {

struct Reply {
    int status = 200;
    std::string contentType;
    std::string body;
};

/// Request handlers over one template document. The parsed original is
/// shared read-only; every instantiation works on its own copy.
class Service {
public:
    // Throws std::runtime_error when the template does not parse.
    explicit Service(std::string templateText, std::vector<std::string> profileDefinitions = {},
                     std::string uiDir = {});
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    Reply params() const;
    Reply instantiate(const std::string& body) const;
    Reply templateFile() const;
    Reply index() const;

    // Registers routes on server. The service must outlive it.
    void mount(httplib::Server& server) const;

private:
    std::string text_;
    std::vector<std::string> profiles_;
    std::string uiDir_;
    lt_document* doc_ = nullptr;
};

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool serve(const Service& service, const std::string& host, int port);

} // namespace lasertpl::service

#endif // LASERTPL_TOOLS_SERVICE_HPP

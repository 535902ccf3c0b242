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

#ifndef LASERTPL_ERROR_HPP
#define LASERTPL_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lasertpl {

enum class ErrorKind {
    InvalidArgument, // bad caller input (parameters, indices, ids)
    Syntax,          // XML, path data or expression grammar
    Validation,      // document does not conform
    Pipeline,        // an instantiation stage failed
    NotFound,        // unknown element, joint or profile id
    Io,
};

const char* toString(ErrorKind kind);

enum class Severity { Error, Warning };

const char* toString(Severity severity);

/// One finding produced by validation or by an instantiation stage.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string element; // element id or locator, may be empty
    std::string stage;   // pipeline stage label, empty outside the pipeline
    std::string message;

    bool isError() const { return severity == Severity::Error; }
};

using Diagnostics = std::vector<Diagnostic>;

std::string toString(const Diagnostic& d);

bool hasErrors(const Diagnostics& diagnostics);

/// Exception type used throughout the library. The C API translates the kind
/// into a status code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message)
        , kind_(kind) {
    }

    Error(ErrorKind kind, const std::string& message, std::size_t offset)
        : std::runtime_error(message)
        , kind_(kind)
        , offset_(offset) {
    }

    Error(ErrorKind kind, const std::string& message, Diagnostics diagnostics)
        : std::runtime_error(message)
        , kind_(kind)
        , diagnostics_(std::move(diagnostics)) {
    }

    ErrorKind kind() const { return kind_; }

    // Character offset into the parsed text, for syntax errors.
    std::optional<std::size_t> offset() const { return offset_; }

    const Diagnostics& diagnostics() const { return diagnostics_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> offset_;
    Diagnostics diagnostics_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace lasertpl

#endif // LASERTPL_ERROR_HPP

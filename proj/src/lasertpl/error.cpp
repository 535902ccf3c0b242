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

#include "lasertpl/error.hpp"

namespace lasertpl {

const char* toString(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument:
        return "invalid argument";
    case ErrorKind::Syntax:
        return "syntax error";
    case ErrorKind::Validation:
        return "validation error";
    case ErrorKind::Pipeline:
        return "pipeline error";
    case ErrorKind::NotFound:
        return "not found";
    case ErrorKind::Io:
        return "I/O error";
    }
    return "error";
}

const char* toString(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

std::string toString(const Diagnostic& d) {
    std::string s = toString(d.severity);
    if (!d.stage.empty()) {
        s += " [" + d.stage + "]";
    }
    if (!d.element.empty()) {
        s += " " + d.element;
    }
    s += ": " + d.message;
    return s;
}

bool hasErrors(const Diagnostics& diagnostics) {
    for (const Diagnostic& d : diagnostics) {
        if (d.isError()) {
            return true;
        }
    }
    return false;
}

} // namespace lasertpl

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

#ifndef LASERTPL_TEMPLATE_PATH_HPP
#define LASERTPL_TEMPLATE_PATH_HPP

#include "lasertpl/expr.hpp"
#include "lasertpl/path.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lasertpl::tpl {

/// One numeric slot of a template: a literal number or an expression.
struct Token {
    bool isExpr = false;
    double literal = 0;
    expr::Expr expression;
    // Text between the braces as written; reused when serializing so that
    // untouched expressions keep their spelling.
    std::string source;
    // Written as "-{...}": `expression` is Negate(source expression).
    bool negatedPrefix = false;

    static Token number(double value);
    static Token fromExpr(const expr::Expr& e);
    static Token parse(std::string_view source, std::size_t slot = 0);
};

struct TemplateCommand {
    char op = 'M';
    bool relative = false;
    std::vector<Token> args;
};

/// Path data whose numeric slots may be `{expression}` groups.
struct TemplatePath {
    std::vector<TemplateCommand> commands;

    bool hasExpressions() const;
    std::size_t slotCount() const;
};

/// Parses template path data. Throws Error(Syntax) for unbalanced or empty
/// braces and for expression errors; messages carry the slot index.
TemplatePath parseTemplate(std::string_view text);

std::string serializeTemplate(const TemplatePath& t);

/// Template with every slot a literal of `cmds`.
TemplatePath fromCommands(const path::CommandList& cmds);

/// Evaluates every expression slot. Throws Error(Validation) naming the slot.
path::CommandList instantiate(const TemplatePath& t, const expr::Scope& scope);

/// Multiplies literal coordinate slots by `factor`; arc rotation and flags
/// and all expression slots are left alone.
void scaleLiterals(TemplatePath& t, double factor);

/// Checks that instantiating `t` at `scope` reproduces `d` within
/// `tolerance` per coordinate. Returns an error message, or nullopt when
/// consistent. Throws nothing; evaluation failures are reported as messages.
std::optional<std::string> checkConsistency(const TemplatePath& t,
                                            const path::CommandList& d,
                                            const expr::Scope& scope,
                                            double tolerance = 1e-6);

} // namespace lasertpl::tpl

#endif // LASERTPL_TEMPLATE_PATH_HPP

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

#ifndef LASERTPL_EXPR_HPP
#define LASERTPL_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lasertpl::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class NodeType { Number, Variable, Pi, Negate, Binary, Call };

struct Node {
    NodeType type = NodeType::Number;
    double number = 0;
    char op = 0;      // '+', '-', '*', '/' for Binary
    std::string name; // Variable and Call
    std::vector<NodePtr> operands;
};

/// Immutable arithmetic expression tree. Copies share structure.
class Expr {
public:
    Expr();
    explicit Expr(NodePtr node);

    static Expr number(double value);
    static Expr variable(std::string name);
    static Expr pi();
    static Expr negate(Expr operand);
    static Expr binary(char op, Expr lhs, Expr rhs);
    static Expr call(std::string name, std::vector<Expr> args);

    const Node& node() const { return *node_; }
    const NodePtr& ptr() const { return node_; }

    /// True if Variable(name) occurs anywhere in the tree.
    bool references(std::string_view variableName) const;

    /// True if Call(name) occurs anywhere in the tree.
    bool calls(std::string_view functionName) const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    NodePtr node_;
};

/// Parses a pure arithmetic expression. Precedence: unary minus binds
/// tighter than * and /, which bind tighter than + and -. Compatibility
/// spellings Math.cos, Math.PI, ... fold to cos, pi, ... Unknown identifiers
/// are accepted here and reported by evaluate(). Throws Error(Syntax) with
/// the offset of the offending character.
Expr parseExpression(std::string_view src);

/// Source text that parses back to an equal tree.
std::string toString(const Expr& e);

// Functions ---------------------------------------------------------------

struct FunctionDef {
    std::string name;
    std::vector<std::string> params;
    Expr body;
};

bool isBuiltinFunction(std::string_view name);

/// Declarative user functions. Each body may reference only its parameters,
/// built-ins and functions registered before it, so recursion cannot occur.
class FunctionRegistry {
public:
    /// Returns a registry extended by `def`. Throws Error(Validation) on
    /// built-in collision, redefinition, recursion, unknown references or
    /// arity mismatches inside the body.
    FunctionRegistry with(FunctionDef def) const;

    const FunctionDef* find(std::string_view name) const;

    const std::vector<FunctionDef>& definitions() const { return defs_; }

    bool empty() const { return defs_.empty(); }

private:
    std::vector<FunctionDef> defs_;
};

/// Parses the text of a functions element: one `name(p1, p2) = expression`
/// per line, '#' starts a comment line, blank lines ignored.
FunctionRegistry parseFunctionDefinitions(std::string_view text,
                                          FunctionRegistry base = {});

// Evaluation --------------------------------------------------------------

struct Scope {
    double thickness = 0;
    double kerf = 0;
    double scale = 1;
    const FunctionRegistry* functions = nullptr;
};

/// Evaluates in IEEE double precision, angles in radians. Throws
/// Error(Validation) for unknown variables or functions, wrong arity,
/// division by zero and non-finite results.
double evaluate(const Expr& e, const Scope& scope);

} // namespace lasertpl::expr

#endif // LASERTPL_EXPR_HPP

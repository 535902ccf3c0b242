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

#include "lasertpl/expr.hpp"

#include "lasertpl/error.hpp"
#include "lasertpl/numbers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace lasertpl::expr {

Expr::Expr()
    : node_(std::make_shared<Node>()) {
}

Expr::Expr(NodePtr node)
    : node_(std::move(node)) {
}

Expr Expr::number(double value) {
    auto n = std::make_shared<Node>();
    n->type = NodeType::Number;
    n->number = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->type = NodeType::Variable;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::pi() {
    auto n = std::make_shared<Node>();
    n->type = NodeType::Pi;
    return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
    auto n = std::make_shared<Node>();
    n->type = NodeType::Negate;
    n->operands.push_back(operand.ptr());
    return Expr(std::move(n));
}

Expr Expr::binary(char op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->type = NodeType::Binary;
    n->op = op;
    n->operands = {lhs.ptr(), rhs.ptr()};
    return Expr(std::move(n));
}

Expr Expr::call(std::string name, std::vector<Expr> args) {
    auto n = std::make_shared<Node>();
    n->type = NodeType::Call;
    n->name = std::move(name);
    for (Expr& a : args) {
        n->operands.push_back(a.ptr());
    }
    return Expr(std::move(n));
}

namespace {

bool nodeEqual(const Node& a, const Node& b) {
    if (a.type != b.type || a.operands.size() != b.operands.size()) {
        return false;
    }
    switch (a.type) {
    case NodeType::Number:
        if (a.number != b.number) {
            return false;
        }
        break;
    case NodeType::Variable:
    case NodeType::Call:
        if (a.name != b.name) {
            return false;
        }
        break;
    case NodeType::Binary:
        if (a.op != b.op) {
            return false;
        }
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < a.operands.size(); ++i) {
        if (!nodeEqual(*a.operands[i], *b.operands[i])) {
            return false;
        }
    }
    return true;
}

template<typename Pred>
bool anyNode(const Node& n, const Pred& pred) {
    if (pred(n)) {
        return true;
    }
    for (const NodePtr& c : n.operands) {
        if (anyNode(*c, pred)) {
            return true;
        }
    }
    return false;
}

} // namespace

bool operator==(const Expr& a, const Expr& b) {
    return nodeEqual(a.node(), b.node());
}

bool Expr::references(std::string_view variableName) const {
    return anyNode(*node_, [&](const Node& n) {
        return n.type == NodeType::Variable && n.name == variableName;
    });
}

bool Expr::calls(std::string_view functionName) const {
    return anyNode(*node_, [&](const Node& n) {
        return n.type == NodeType::Call && n.name == functionName;
    });
}

// Parser ------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view src)
        : src_(src) {
    }

    Expr parse() {
        skipSpace();
        if (pos_ >= src_.size()) {
            error("empty expression");
        }
        Expr e = parseSum();
        skipSpace();
        if (pos_ < src_.size()) {
            error(std::string("unexpected '") + src_[pos_] + "'");
        }
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void error(const std::string& what) const {
        throw Error(ErrorKind::Syntax,
                    "expression syntax error at offset " + std::to_string(pos_) + ": " + what,
                    pos_);
    }

    void skipSpace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skipSpace();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parseSum() {
        Expr lhs = parseProduct();
        while (true) {
            skipSpace();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                char op = src_[pos_++];
                lhs = Expr::binary(op, lhs, parseProduct());
            }
            else {
                return lhs;
            }
        }
    }

    Expr parseProduct() {
        Expr lhs = parseUnary();
        while (true) {
            skipSpace();
            if (pos_ < src_.size() && (src_[pos_] == '*' || src_[pos_] == '/')) {
                char op = src_[pos_++];
                lhs = Expr::binary(op, lhs, parseUnary());
            }
            else {
                return lhs;
            }
        }
    }

    Expr parseUnary() {
        skipSpace();
        if (accept('-')) {
            return Expr::negate(parseUnary());
        }
        if (accept('+')) {
            return parseUnary();
        }
        return parsePrimary();
    }

    Expr parsePrimary() {
        skipSpace();
        if (pos_ >= src_.size()) {
            error("unexpected end of expression");
        }
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parseSum();
            if (!accept(')')) {
                error("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t before = pos_;
            auto value = scanNumber(src_, pos_);
            if (!value) {
                pos_ = before;
                error("malformed number");
            }
            return Expr::number(*value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size()
                   && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'
                       || src_[pos_] == '.')) {
                ++pos_;
            }
            std::string name(src_.substr(start, pos_ - start));
            if (name.rfind("Math.", 0) == 0) {
                name = name.substr(5);
                if (name == "PI") {
                    name = "pi";
                }
            }
            if (name.empty() || name.find('.') != std::string::npos) {
                pos_ = start;
                error("invalid identifier '" + std::string(src_.substr(start)) + "'");
            }
            skipSpace();
            if (pos_ < src_.size() && src_[pos_] == '(') {
                ++pos_;
                std::vector<Expr> args;
                if (!accept(')')) {
                    do {
                        args.push_back(parseSum());
                    } while (accept(','));
                    if (!accept(')')) {
                        error("expected ')' or ',' in argument list");
                    }
                }
                return Expr::call(std::move(name), std::move(args));
            }
            if (name == "pi") {
                return Expr::pi();
            }
            return Expr::variable(std::move(name));
        }
        error(std::string("unexpected '") + c + "'");
    }
};

int precedence(const Node& n) {
    switch (n.type) {
    case NodeType::Binary:
        return (n.op == '+' || n.op == '-') ? 1 : 2;
    case NodeType::Negate:
        return 3;
    default:
        return 4;
    }
}

void print(const Node& n, std::string& out) {
    switch (n.type) {
    case NodeType::Number:
        if (n.number < 0 || std::signbit(n.number)) {
            out += "(" + formatExact(n.number) + ")";
        }
        else {
            out += formatExact(n.number);
        }
        return;
    case NodeType::Variable:
        out += n.name;
        return;
    case NodeType::Pi:
        out += "pi";
        return;
    case NodeType::Negate: {
        out += '-';
        const Node& o = *n.operands[0];
        if (precedence(o) < 3) {
            out += '(';
            print(o, out);
            out += ')';
        }
        else {
            print(o, out);
        }
        return;
    }
    case NodeType::Binary: {
        int p = precedence(n);
        const Node& l = *n.operands[0];
        const Node& r = *n.operands[1];
        bool lp = precedence(l) < p;
        bool rp = precedence(r) <= p;
        if (lp) {
            out += '(';
        }
        print(l, out);
        if (lp) {
            out += ')';
        }
        out += n.op;
        if (rp) {
            out += '(';
        }
        print(r, out);
        if (rp) {
            out += ')';
        }
        return;
    }
    case NodeType::Call:
        out += n.name;
        out += '(';
        for (std::size_t i = 0; i < n.operands.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            print(*n.operands[i], out);
        }
        out += ')';
        return;
    }
}

} // namespace

Expr parseExpression(std::string_view src) {
    return Parser(src).parse();
}

std::string toString(const Expr& e) {
    std::string out;
    print(e.node(), out);
    return out;
}

// Built-ins ---------------------------------------------------------------

namespace {

struct Builtin {
    int minArgs;
    int maxArgs; // -1 for variadic
    double (*fn)(const std::vector<double>&);
};

const std::unordered_map<std::string, Builtin>& builtins() {
    static const std::unordered_map<std::string, Builtin> table = {
        {"cos", {1, 1, [](const std::vector<double>& a) { return std::cos(a[0]); }}},
        {"sin", {1, 1, [](const std::vector<double>& a) { return std::sin(a[0]); }}},
        {"tan", {1, 1, [](const std::vector<double>& a) { return std::tan(a[0]); }}},
        {"acos", {1, 1, [](const std::vector<double>& a) { return std::acos(a[0]); }}},
        {"asin", {1, 1, [](const std::vector<double>& a) { return std::asin(a[0]); }}},
        {"atan", {1, 1, [](const std::vector<double>& a) { return std::atan(a[0]); }}},
        {"atan2", {2, 2, [](const std::vector<double>& a) { return std::atan2(a[0], a[1]); }}},
        {"sqrt", {1, 1, [](const std::vector<double>& a) { return std::sqrt(a[0]); }}},
        {"abs", {1, 1, [](const std::vector<double>& a) { return std::fabs(a[0]); }}},
        {"pow", {2, 2, [](const std::vector<double>& a) { return std::pow(a[0], a[1]); }}},
        {"hypot", {2, 2, [](const std::vector<double>& a) { return std::hypot(a[0], a[1]); }}},
        {"floor", {1, 1, [](const std::vector<double>& a) { return std::floor(a[0]); }}},
        {"ceil", {1, 1, [](const std::vector<double>& a) { return std::ceil(a[0]); }}},
        // Rounds half up, like the browser Math.round.
        {"round", {1, 1, [](const std::vector<double>& a) { return std::floor(a[0] + 0.5); }}},
        {"exp", {1, 1, [](const std::vector<double>& a) { return std::exp(a[0]); }}},
        {"log", {1, 1, [](const std::vector<double>& a) { return std::log(a[0]); }}},
        {"min", {1, -1, [](const std::vector<double>& a) { return *std::min_element(a.begin(), a.end()); }}},
        {"max", {1, -1, [](const std::vector<double>& a) { return *std::max_element(a.begin(), a.end()); }}},
    };
    return table;
}

bool arityOk(const Builtin& b, std::size_t n) {
    return static_cast<int>(n) >= b.minArgs && (b.maxArgs < 0 || static_cast<int>(n) <= b.maxArgs);
}

[[noreturn]] void evalError(const std::string& msg) {
    throw Error(ErrorKind::Validation, msg);
}

std::string plural(std::size_t n, const char* word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

// Parameter bindings of the function bodies being evaluated; null at the
// template level where the scope variables apply.
using Bindings = std::vector<std::pair<std::string, double>>;

double eval(const Node& n, const Scope& scope, const Bindings* locals, int depth) {
    switch (n.type) {
    case NodeType::Number:
        return n.number;
    case NodeType::Pi:
        return std::numbers::pi;
    case NodeType::Variable:
        if (locals) {
            for (const auto& [name, value] : *locals) {
                if (name == n.name) {
                    return value;
                }
            }
            evalError("unknown variable '" + n.name + "' in function body");
        }
        if (n.name == "thickness") {
            return scope.thickness;
        }
        if (n.name == "kerf") {
            return scope.kerf;
        }
        if (n.name == "scale") {
            return scope.scale;
        }
        evalError("unknown variable '" + n.name + "'");
    case NodeType::Negate:
        return -eval(*n.operands[0], scope, locals, depth);
    case NodeType::Binary: {
        double a = eval(*n.operands[0], scope, locals, depth);
        double b = eval(*n.operands[1], scope, locals, depth);
        switch (n.op) {
        case '+':
            return a + b;
        case '-':
            return a - b;
        case '*':
            return a * b;
        default:
            if (b == 0) {
                evalError("division by zero");
            }
            return a / b;
        }
    }
    case NodeType::Call: {
        std::vector<double> args;
        args.reserve(n.operands.size());
        for (const NodePtr& o : n.operands) {
            args.push_back(eval(*o, scope, locals, depth));
        }
        auto it = builtins().find(n.name);
        if (it != builtins().end()) {
            if (!arityOk(it->second, args.size())) {
                evalError("wrong number of arguments to '" + n.name + "': got "
                          + std::to_string(args.size()));
            }
            return it->second.fn(args);
        }
        const FunctionDef* def = scope.functions ? scope.functions->find(n.name) : nullptr;
        if (!def) {
            evalError("unknown function '" + n.name + "'");
        }
        if (def->params.size() != args.size()) {
            evalError("function '" + n.name + "' expects " + plural(def->params.size(), "argument")
                      + ", got " + std::to_string(args.size()));
        }
        if (depth > 64) {
            evalError("function nesting too deep in '" + n.name + "'");
        }
        Bindings bound;
        for (std::size_t i = 0; i < args.size(); ++i) {
            bound.emplace_back(def->params[i], args[i]);
        }
        return eval(def->body.node(), scope, &bound, depth + 1);
    }
    }
    evalError("corrupt expression");
}

} // namespace

bool isBuiltinFunction(std::string_view name) {
    return builtins().count(std::string(name)) > 0;
}

double evaluate(const Expr& e, const Scope& scope) {
    double v = eval(e.node(), scope, nullptr, 0);
    if (!std::isfinite(v)) {
        evalError("expression '" + toString(e) + "' has a non-finite result");
    }
    return v;
}

// Registry ----------------------------------------------------------------

namespace {

void checkBody(const Node& n, const FunctionDef& def, const FunctionRegistry& reg) {
    if (n.type == NodeType::Variable
        && std::find(def.params.begin(), def.params.end(), n.name) == def.params.end()) {
        evalError("function '" + def.name + "' references '" + n.name
                  + "' which is not one of its parameters");
    }
    if (n.type == NodeType::Call) {
        auto it = builtins().find(n.name);
        if (it != builtins().end()) {
            if (!arityOk(it->second, n.operands.size())) {
                evalError("function '" + def.name + "' calls '" + n.name
                          + "' with the wrong number of arguments");
            }
        }
        else if (n.name == def.name) {
            evalError("recursion detected: function '" + def.name + "' calls itself");
        }
        else if (const FunctionDef* callee = reg.find(n.name)) {
            if (callee->params.size() != n.operands.size()) {
                evalError("function '" + def.name + "' calls '" + n.name + "' with "
                          + plural(n.operands.size(), "argument") + ", expected "
                          + std::to_string(callee->params.size()));
            }
        }
        else {
            evalError("function '" + def.name + "' calls unknown function '" + n.name
                      + "' (functions must be defined before use)");
        }
    }
    for (const NodePtr& c : n.operands) {
        checkBody(*c, def, reg);
    }
}

} // namespace

FunctionRegistry FunctionRegistry::with(FunctionDef def) const {
    if (isBuiltinFunction(def.name) || def.name == "pi") {
        evalError("cannot redefine built-in function '" + def.name + "'");
    }
    if (find(def.name)) {
        evalError("redefinition of function '" + def.name + "'");
    }
    for (std::size_t i = 0; i < def.params.size(); ++i) {
        for (std::size_t j = i + 1; j < def.params.size(); ++j) {
            if (def.params[i] == def.params[j]) {
                evalError("function '" + def.name + "' has duplicate parameter '"
                          + def.params[i] + "'");
            }
        }
    }
    checkBody(def.body.node(), def, *this);
    FunctionRegistry next = *this;
    next.defs_.push_back(std::move(def));
    return next;
}

const FunctionDef* FunctionRegistry::find(std::string_view name) const {
    for (const FunctionDef& d : defs_) {
        if (d.name == name) {
            return &d;
        }
    }
    return nullptr;
}

namespace {

bool isIdentifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

FunctionRegistry parseFunctionDefinitions(std::string_view text, FunctionRegistry base) {
    FunctionRegistry reg = std::move(base);
    std::size_t lineNo = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++lineNo;
        std::string line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line[0] == '#') {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        auto where = [&]() { return "functions line " + std::to_string(lineNo) + ": "; };
        auto open = line.find('(');
        auto close = line.find(')');
        auto eq = line.find('=', close == std::string::npos ? 0 : close);
        if (open == std::string::npos || close == std::string::npos || close < open
            || eq == std::string::npos) {
            throw Error(ErrorKind::Syntax, where() + "expected 'name(params) = expression'");
        }
        FunctionDef def;
        def.name = trim(line.substr(0, open));
        if (!isIdentifier(def.name)) {
            throw Error(ErrorKind::Syntax, where() + "invalid function name '" + def.name + "'");
        }
        std::string params = trim(line.substr(open + 1, close - open - 1));
        if (!params.empty()) {
            std::size_t p = 0;
            while (p <= params.size()) {
                std::size_t comma = params.find(',', p);
                if (comma == std::string::npos) {
                    comma = params.size();
                }
                std::string param = trim(std::string_view(params).substr(p, comma - p));
                if (!isIdentifier(param)) {
                    throw Error(ErrorKind::Syntax, where() + "invalid parameter name '" + param + "'");
                }
                def.params.push_back(param);
                p = comma + 1;
            }
        }
        if (trim(line.substr(close + 1, eq - close - 1)) != "") {
            throw Error(ErrorKind::Syntax, where() + "unexpected text before '='");
        }
        try {
            def.body = parseExpression(line.substr(eq + 1));
        }
        catch (const Error& e) {
            throw Error(ErrorKind::Syntax, where() + e.what());
        }
        try {
            reg = reg.with(std::move(def));
        }
        catch (const Error& e) {
            throw Error(e.kind(), where() + e.what());
        }
        if (end == text.size()) {
            break;
        }
    }
    return reg;
}

} // namespace lasertpl::expr

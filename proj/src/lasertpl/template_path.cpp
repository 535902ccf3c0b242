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

#include "lasertpl/template_path.hpp"

#include "lasertpl/error.hpp"
#include "lasertpl/numbers.hpp"

#include <cctype>
#include <cmath>

namespace lasertpl::tpl {

Token Token::number(double value) {
    Token t;
    t.literal = value;
    return t;
}

Token Token::fromExpr(const expr::Expr& e) {
    Token t;
    t.isExpr = true;
    t.expression = e;
    if (e.node().type == expr::NodeType::Negate) {
        t.negatedPrefix = true;
        t.source = expr::toString(expr::Expr(e.node().operands[0]));
    }
    else {
        t.source = expr::toString(e);
    }
    return t;
}

Token Token::parse(std::string_view source, std::size_t slot) {
    Token t;
    t.isExpr = true;
    t.source = std::string(source);
    try {
        t.expression = expr::parseExpression(source);
    }
    catch (const Error& e) {
        throw Error(ErrorKind::Syntax, "template slot " + std::to_string(slot) + ": " + e.what(),
                    e.offset().value_or(0));
    }
    return t;
}

bool TemplatePath::hasExpressions() const {
    for (const TemplateCommand& c : commands) {
        for (const Token& t : c.args) {
            if (t.isExpr) {
                return true;
            }
        }
    }
    return false;
}

std::size_t TemplatePath::slotCount() const {
    std::size_t n = 0;
    for (const TemplateCommand& c : commands) {
        n += c.args.size();
    }
    return n;
}

namespace {

bool isSeparator(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == ',';
}

[[noreturn]] void syntaxError(const std::string& what, std::size_t pos) {
    throw Error(ErrorKind::Syntax,
                "malformed template at offset " + std::to_string(pos) + ": " + what, pos);
}

class TemplateParser {
public:
    explicit TemplateParser(std::string_view text)
        : text_(text) {
    }

    TemplatePath parse() {
        TemplatePath out;
        skip();
        if (pos_ >= text_.size()) {
            syntaxError("empty template", pos_);
        }
        char current = 0;
        bool relative = false;
        while (true) {
            skip();
            if (pos_ >= text_.size()) {
                break;
            }
            char c = text_[pos_];
            if (c == '}') {
                syntaxError("unbalanced '}'", pos_);
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                if (path::arity(up) < 0) {
                    syntaxError(std::string("unknown command '") + c + "'", pos_);
                }
                if (out.commands.empty() && up != 'M') {
                    syntaxError("template must begin with a moveto", pos_);
                }
                current = up;
                relative = std::islower(static_cast<unsigned char>(c)) != 0;
                ++pos_;
                if (up == 'Z') {
                    out.commands.push_back({'Z', relative, {}});
                    continue;
                }
            }
            else if (current == 0) {
                syntaxError("template must begin with a moveto", pos_);
            }
            else if (current == 'Z') {
                syntaxError("unexpected value after closepath", pos_);
            }
            TemplateCommand cmd{current, relative, {}};
            int n = path::arity(current);
            for (int i = 0; i < n; ++i) {
                skip();
                cmd.args.push_back(token(current == 'A' && (i == 3 || i == 4)));
            }
            out.commands.push_back(std::move(cmd));
            if (current == 'M') {
                current = 'L';
            }
        }
        return out;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t slot_ = 0;

    void skip() {
        while (pos_ < text_.size() && isSeparator(text_[pos_])) {
            ++pos_;
        }
    }

    Token token(bool flag) {
        std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            syntaxError("expected a number or {expression}", pos_);
        }
        bool negated = false;
        if ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ + 1 < text_.size()
            && text_[pos_ + 1] == '{') {
            negated = text_[pos_] == '-';
            ++pos_;
        }
        if (text_[pos_] == '{') {
            std::size_t open = pos_;
            std::size_t close = open + 1;
            while (close < text_.size() && text_[close] != '}') {
                if (text_[close] == '{') {
                    syntaxError("nested '{' inside expression", close);
                }
                ++close;
            }
            if (close >= text_.size()) {
                syntaxError("unbalanced '{'", open);
            }
            std::string_view inner = text_.substr(open + 1, close - open - 1);
            if (inner.find_first_not_of(" \t\r\n") == std::string_view::npos) {
                syntaxError("empty expression '{}' in slot " + std::to_string(slot_), open);
            }
            Token t;
            try {
                t = Token::parse(inner, slot_);
            }
            catch (const Error& e) {
                throw Error(ErrorKind::Syntax, e.what(), open + 1 + e.offset().value_or(0));
            }
            if (negated) {
                t.expression = expr::Expr::negate(t.expression);
                t.negatedPrefix = true;
            }
            pos_ = close + 1;
            ++slot_;
            return t;
        }
        double value = 0;
        if (flag && (text_[pos_] == '0' || text_[pos_] == '1')) {
            value = text_[pos_++] == '1' ? 1 : 0;
        }
        else {
            auto v = scanNumber(text_, pos_);
            if (!v) {
                pos_ = start;
                syntaxError("expected a number or {expression}", pos_);
            }
            value = *v;
        }
        ++slot_;
        return Token::number(value);
    }
};

std::string tokenText(const Token& t) {
    if (!t.isExpr) {
        return formatNumber(t.literal);
    }
    return (t.negatedPrefix ? "-{" : "{") + t.source + "}";
}

} // namespace

TemplatePath parseTemplate(std::string_view text) {
    return TemplateParser(text).parse();
}

std::string serializeTemplate(const TemplatePath& t) {
    std::string out;
    for (const TemplateCommand& c : t.commands) {
        if (!out.empty()) {
            out += ' ';
        }
        out += c.relative ? static_cast<char>(std::tolower(static_cast<unsigned char>(c.op))) : c.op;
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += tokenText(c.args[i]);
        }
    }
    return out;
}

TemplatePath fromCommands(const path::CommandList& cmds) {
    TemplatePath t;
    for (const path::Command& c : cmds) {
        TemplateCommand tc{c.op, c.relative, {}};
        for (double a : c.args) {
            tc.args.push_back(Token::number(a));
        }
        t.commands.push_back(std::move(tc));
    }
    return t;
}

path::CommandList instantiate(const TemplatePath& t, const expr::Scope& scope) {
    path::CommandList out;
    out.reserve(t.commands.size());
    std::size_t slot = 0;
    for (const TemplateCommand& c : t.commands) {
        path::Command pc{c.op, c.relative, {}};
        for (std::size_t i = 0; i < c.args.size(); ++i, ++slot) {
            const Token& tok = c.args[i];
            if (!tok.isExpr) {
                pc.args.push_back(tok.literal);
                continue;
            }
            double v = 0;
            try {
                v = expr::evaluate(tok.expression, scope);
            }
            catch (const Error& e) {
                throw Error(ErrorKind::Validation, "template slot " + std::to_string(slot) + " ("
                                                       + tokenText(tok) + "): " + e.what());
            }
            if (c.op == 'A' && (i == 3 || i == 4) && v != 0 && v != 1) {
                throw Error(ErrorKind::Validation, "template slot " + std::to_string(slot)
                                                       + ": arc flag must evaluate to 0 or 1");
            }
            pc.args.push_back(v);
        }
        out.push_back(std::move(pc));
    }
    return out;
}

void scaleLiterals(TemplatePath& t, double factor) {
    for (TemplateCommand& c : t.commands) {
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (c.op == 'A' && i >= 2 && i <= 4) {
                continue;
            }
            if (!c.args[i].isExpr) {
                c.args[i].literal *= factor;
            }
        }
    }
}

std::optional<std::string> checkConsistency(const TemplatePath& t,
                                            const path::CommandList& d,
                                            const expr::Scope& scope,
                                            double tolerance) {
    if (t.commands.size() != d.size()) {
        return "template has " + std::to_string(t.commands.size()) + " commands but d has "
               + std::to_string(d.size());
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (t.commands[i].op != d[i].op || t.commands[i].relative != d[i].relative) {
            return "template command " + std::to_string(i) + " differs from d in opcode";
        }
    }
    path::CommandList inst;
    try {
        inst = instantiate(t, scope);
    }
    catch (const Error& e) {
        return std::string(e.what());
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d[i].args.size(); ++j) {
            double diff = std::fabs(inst[i].args[j] - d[i].args[j]);
            if (!(diff <= tolerance)) {
                return "template command " + std::to_string(i) + " argument " + std::to_string(j)
                       + " evaluates to " + formatNumber(inst[i].args[j]) + " but d has "
                       + formatNumber(d[i].args[j]);
            }
        }
    }
    return std::nullopt;
}

} // namespace lasertpl::tpl

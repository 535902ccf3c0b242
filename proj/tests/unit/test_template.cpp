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
#include "lasertpl/template_path.hpp"

#include <doctest.h>

using namespace lasertpl;
using namespace lasertpl::tpl;

namespace {

expr::Scope at(double t, double k = 0, double s = 1) {
    return expr::Scope{t, k, s, nullptr};
}

} // namespace

TEST_CASE("template slots") {
    TemplatePath t = parseTemplate("M5 5 l0 10 l{thickness} 0 l0 -10 l-{thickness} 0");
    CHECK(t.hasExpressions());
    REQUIRE(t.commands.size() == 5);
    CHECK(t.commands[2].args[0].isExpr);
    CHECK(t.commands[4].args[0].negatedPrefix);
    CHECK_FALSE(t.commands[1].args[0].isExpr);

    path::CommandList c = instantiate(t, at(3));
    CHECK(path::serializePathData(c) == "M5 5 l0 10 l3 0 l0 -10 l-3 0");
    c = instantiate(t, at(4));
    CHECK(c[2].args[0] == 4);
    CHECK(c[4].args[0] == -4);
}

TEST_CASE("adjacent expression groups") {
    TemplatePath t = parseTemplate("M{24-0.5*thickness}{32-thickness} l1 1");
    path::CommandList c = instantiate(t, at(3));
    CHECK(c[0].args == std::vector<double>{22.5, 29});
    CHECK(serializeTemplate(t) == "M{24-0.5*thickness} {32-thickness} l1 1");
}

TEST_CASE("template errors") {
    auto kind = [](const char* text) {
        try {
            instantiate(parseTemplate(text), at(3));
        }
        catch (const Error& e) {
            return std::optional<ErrorKind>(e.kind());
        }
        return std::optional<ErrorKind>();
    };
    CHECK((kind("M0 0 l{thickness 0") == ErrorKind::Syntax));
    CHECK((kind("M0 0 l{} 0") == ErrorKind::Syntax));
    CHECK((kind("M0 0 l{{1}} 0") == ErrorKind::Syntax));
    CHECK((kind("M0 0 l{1+} 0") == ErrorKind::Syntax));
    CHECK((kind("M0 0 l{width} 0") == ErrorKind::Validation));
    CHECK((kind("M0 0 a1 1 0 {thickness} 0 1 1") == ErrorKind::Validation)); // flag must be 0/1
    CHECK_FALSE(kind("M0 0 a1 1 0 {thickness-3} 0 1 1").has_value());
}

TEST_CASE("consistency against d") {
    TemplatePath t = parseTemplate("M5 5 l0 10 l{thickness} 0 l0 -10 l-{thickness} 0");
    CHECK_FALSE(checkConsistency(t, path::parsePathData("M5 5 l0 10 l3 0 l0 -10 l-3 0"), at(3)));
    CHECK(checkConsistency(t, path::parsePathData("M5 5 l0 10 l3.5 0 l0 -10 l-3.5 0"), at(3)));
    CHECK(checkConsistency(t, path::parsePathData("M5 5 L5 15 l3 0 l0 -10 l-3 0"), at(3)));
    CHECK(checkConsistency(t, path::parsePathData("M5 5 l0 10 l3 0 l0 -10"), at(3)));
}

TEST_CASE("literal scaling leaves expressions and arc radii-only fields") {
    TemplatePath t = parseTemplate("M10 10 l{thickness} 20 a5 5 30 1 0 4 4");
    scaleLiterals(t, 2);
    path::CommandList c = instantiate(t, at(3));
    CHECK(c[0].args == std::vector<double>{20, 20});
    CHECK(c[1].args == std::vector<double>{3, 40});
    CHECK(c[2].args == std::vector<double>{10, 10, 30, 1, 0, 8, 8});
}

TEST_CASE("fromCommands is lossless") {
    path::CommandList c = path::parsePathData("M1 2 l3 4 c1 1 2 2 3 3 z");
    CHECK(instantiate(fromCommands(c), at(3)) == c);
}

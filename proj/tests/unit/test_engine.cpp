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

#include "fixtures.hpp"
#include "lasertpl/error.hpp"
#include "lasertpl/engine.hpp"
#include "lasertpl/path.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace lasertpl;

namespace {

const char* kHeader = R"(<svg xmlns="http://www.w3.org/2000/svg" xmlns:laser="http://www.w3.org/lasersvg" laser:material-thickness="3">)";

Document doc(const std::string& body) {
    return Document::parse(std::string(kHeader) + body + "</svg>");
}

ParamSet params(double t, double k = 0, double s = 1) {
    ParamSet p;
    p.thickness = t;
    p.kerf = k;
    p.scale = s;
    return p;
}

const xml::Node& el(const Document& d, const char* id) {
    const xml::Node* n = const_cast<Document&>(d).findElement(id);
    REQUIRE(n);
    return *n;
}

double attr(const Document& d, const char* id, const char* name) {
    return std::stod(*el(d, id).attribute(name));
}

std::string pipelineStage(const Document& d, const ParamSet& p) {
    try {
        instantiateDocument(d, p);
    }
    catch (const Error& e) {
        if (e.kind() == ErrorKind::Pipeline && !e.diagnostics().empty()) {
            return e.diagnostics().front().stage;
        }
        return std::string("kind:") + toString(e.kind());
    }
    return "";
}

} // namespace

TEST_CASE("kerf mask grows only the marked segments") {
    Document d = Document::load(fixtures::path("corpus/kerf-rect.lasersvg"));
    InstantiateResult r = instantiateDocument(d, params(3, 0.2));
    path::CommandList c = path::parsePathData(*el(r.document, "tab").attribute("d"));
    REQUIRE(c.size() == 5);
    CHECK(std::hypot(c[1].args[0], c[1].args[1]) == doctest::Approx(10.2).epsilon(1e-12));
    CHECK(std::hypot(c[3].args[0], c[3].args[1]) == doctest::Approx(10.2).epsilon(1e-12));
    CHECK(c[2].args[0] == 3);
    CHECK(c[4].args[0] == -3);
}

TEST_CASE("half-kerf letters and shrink") {
    path::CommandList c = path::parsePathData("M0 0 l0 10 l3 0 l0 -10 l-3 0");
    path::KerfMask m = path::parseKerfMask("g S s G", c);
    path::CommandList out = applyKerfMask(c, m, 0.2);
    CHECK(out[1].args[1] == doctest::Approx(10.1));
    CHECK(out[2].args[0] == doctest::Approx(2.8));
    CHECK(out[3].args[1] == doctest::Approx(-9.9));
    CHECK(out[4].args[0] == doctest::Approx(-3.2));
    CHECK_THROWS_AS(applyKerfMask(c, path::parseKerfMask("i S i i", c), 3.5), Error);
}

TEST_CASE("kerf antisymmetry on random masks") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> len(1, 50);
    for (int trial = 0; trial < 100; ++trial) {
        path::CommandList c{{'M', false, {0, 0}}};
        std::string grow;
        std::string shrink;
        for (int k = 0; k < 8; ++k) {
            double a = len(rng) * (rng() % 2 ? 1 : -1);
            double b = len(rng) * (rng() % 2 ? 1 : -1);
            c.push_back({'L', true, {a, b}});
            const char* g[] = {"G ", "g ", "i "};
            const char* s[] = {"S ", "s ", "i "};
            int pick = static_cast<int>(rng() % 3);
            grow += g[pick];
            shrink += s[pick];
        }
        double kerf = 0.05 + (rng() % 10) * 0.03;
        path::CommandList there = applyKerfMask(c, path::parseKerfMask(grow, c), kerf);
        path::CommandList back = applyKerfMask(there, path::parseKerfMask(shrink, there), kerf);
        CHECK(path::approxEqual(back, c, 1e-9));
    }
}

TEST_CASE("thickness-adjust with origins") {
    Document d = doc(R"(
  <rect id="c" x="10" y="10" width="3" height="8" laser:thickness-adjust="width" laser:origin="center"/>
  <rect id="r" x="0" y="0" width="3" height="8" laser:thickness-adjust="width" laser:origin="right"/>
  <rect id="b" x="0" y="0" width="8" height="3" laser:thickness-adjust="height" laser:origin="bottom"/>
  <rect id="both" x="0" y="0" width="3" height="3" laser:thickness-adjust="both" laser:origin="bottom-right"/>
  <rect id="plain" x="0" y="0" width="3" height="8" laser:thickness-adjust="width"/>
  <circle id="pin" cx="5" cy="5" r="1.5" laser:thickness-adjust="both"/>
  <ellipse id="e" cx="5" cy="5" rx="1.5" ry="4" laser:thickness-adjust="width"/>)");
    InstantiateResult r = instantiateDocument(d, params(4));
    CHECK(attr(r.document, "c", "x") == 9.5);
    CHECK(attr(r.document, "c", "width") == 4);
    CHECK(attr(r.document, "c", "height") == 8);
    Document r5 = instantiateDocument(d, params(5)).document;
    CHECK(attr(r5, "r", "x") == -2);
    CHECK(attr(r5, "r", "width") == 5);
    CHECK(attr(r.document, "b", "y") == -1);
    CHECK(attr(r.document, "both", "x") == -1);
    CHECK(attr(r.document, "both", "y") == -1);
    CHECK(attr(r.document, "plain", "x") == 0);
    CHECK(attr(r.document, "pin", "r") == 2);
    CHECK(attr(r.document, "e", "rx") == 2);
    CHECK(attr(r.document, "e", "ry") == 4);
}

TEST_CASE("primitive kerf adjust is centred") {
    Document d = doc(R"(
  <rect id="r" x="10" y="10" width="20" height="10" laser:kerf-adjust="grow"/>
  <circle id="c" cx="0" cy="0" r="5" laser:kerf-adjust="shrink"/>)");
    Document out = instantiateDocument(d, params(3, 0.2)).document;
    CHECK(attr(out, "r", "x") == doctest::Approx(9.9));
    CHECK(attr(out, "r", "width") == doctest::Approx(20.2));
    CHECK(attr(out, "c", "r") == doctest::Approx(4.9));
}

TEST_CASE("templates instantiate through registered functions") {
    Document d = Document::load(fixtures::path("corpus/rocket.lasersvg"));
    Document out = instantiateDocument(d, params(3)).document;
    path::CommandList c = path::parsePathData(*el(out, "tri-wing").attribute("d"));
    CHECK(c[0].args[0] == doctest::Approx(22.5).epsilon(1e-12));
    CHECK(std::fabs(c[0].args[1] - (32 - oracle::triWingRadius(9, 3))) <= 5e-7); // d keeps 6 decimals
    Document at4 = instantiateDocument(d, params(4)).document;
    c = path::parsePathData(*el(at4, "tri-wing").attribute("d"));
    CHECK(c[0].args[0] == doctest::Approx(22));
    CHECK(std::fabs(c[0].args[1] - (32 - oracle::triWingRadius(9, 4))) <= 5e-7);
    // The cutout stays closed: the end points close back on the start.
    auto pts = oracle::endpoints(*el(at4, "tri-wing").attribute("d"));
    CHECK(std::fabs(pts[pts.size() - 2].x - pts.front().x) < 1e-5);
    CHECK(std::fabs(pts[pts.size() - 2].y - pts.front().y) < 1e-5);
}

TEST_CASE("scaling keeps thickness features") {
    Document d = doc(R"(
  <rect id="m" x="10" y="10" width="3" height="5" laser:thickness-adjust="width"/>
  <rect id="big" x="10" y="10" width="20" height="5"/>
  <path id="p" d="M0 0 l10 0 l0 3 l-10 0 z" laser:template="M0 0 l10 0 l0 {thickness} l-10 0 z"/>
  <line id="ln" x1="0" y1="0" x2="10" y2="0"/>)");
    Document out = instantiateDocument(d, params(3, 0, 2)).document;
    CHECK(attr(out, "m", "width") == 3);
    CHECK(attr(out, "m", "height") == 10);
    CHECK(attr(out, "m", "x") == 20);
    CHECK(attr(out, "big", "width") == 40);
    CHECK(*el(out, "p").attribute("d") == "M0 0 l20 0 l0 3 l-20 0 z");
    CHECK(*el(out, "ln").attribute("x2") == "10");
    CHECK(std::stod(*out.root().attribute("laser:scale")) == 2);
}

TEST_CASE("parameter checks") {
    Document d = doc("<rect width='1' height='1'/>");
    for (auto [t, k, s] : {std::tuple{0.0, 0.0, 1.0}, {3.0, -0.1, 1.0}, {3.0, 0.0, 0.0}, {-1.0, 0.0, 1.0}}) {
        try {
            instantiateDocument(d, params(t, k, s));
            FAIL("accepted");
        }
        catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::InvalidArgument));
        }
    }
    ParamSet p = params(3);
    p.profile = "nonesuch";
    try {
        instantiateDocument(d, p);
        FAIL("accepted");
    }
    catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::NotFound));
    }
    Document noDesign = Document::parse("<svg><rect width='1' height='1'/></svg>");
    CHECK_THROWS_AS(instantiateDocument(noDesign, params(3)), Error);
    ParamSet withDesign = params(4);
    withDesign.designThickness = 3;
    CHECK_NOTHROW(instantiateDocument(noDesign, withDesign));
}

TEST_CASE("pipeline failures name their stage") {
    CHECK(pipelineStage(doc(R"(<path id="p" d="M0 0 l1 0" laser:template="M0 0 l{width} 0"/>)"), params(3))
          == "templates");
    CHECK(pipelineStage(doc(R"(<path id="p" d="M0 0 l0 1 l1 0" laser:kerf-mask="S i"/>)"), params(3, 2))
          == "kerf");
    CHECK(pipelineStage(doc(R"(<rect id="r" x="0" y="0" width="10" height="10" laser:joint-top="a" laser:joint-top-type="finger" laser:joint-top-direction="outside"/>)"),
                        params(3))
          == "joints");
}

TEST_CASE("identity at design parameters") {
    for (const std::string& f : fixtures::corpus()) {
        CAPTURE(f);
        Document d = Document::load(fixtures::path(f));
        Document out = instantiateDocument(d, params(*d.globals().materialThickness)).document;
        d.forEachElement([&](const xml::Node& n, const std::string& loc) {
            const xml::Node* m = out.findElement(loc);
            REQUIRE(m);
            for (const xml::Attribute& a : n.attributes) {
                const std::string* b = m->attribute(a.name);
                REQUIRE(b);
                if (a.name == "d") {
                    CHECK(oracle::maxDeviation(oracle::endpoints(a.value), oracle::endpoints(*b)) <= 1e-6);
                }
                else if (a.name != "laser:template") {
                    CHECK(*b == a.value);
                }
            }
        });
    }
}

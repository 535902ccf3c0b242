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
#include "lasertpl/json_io.hpp"
#include "lasertpl/profiles.hpp"
#include "lasertpl/validate.hpp"

#include <doctest.h>

using namespace lasertpl;
using namespace lasertpl::profiles;

TEST_CASE("built-in profiles style by action") {
    Document d = Document::load(fixtures::path("corpus/bench.lasersvg"));
    ParamSet p;
    p.thickness = 3;
    p.profile = "trotec";
    InstantiateResult r = instantiateDocument(d, p);
    const xml::Node* seat = r.document.findElement("seat");
    CHECK(*seat->attribute("stroke") == "#0000FF");
    CHECK(*seat->attribute("stroke-width") == "0.01mm");
    CHECK(*seat->attribute("fill") == "none");
    const xml::Node* label = r.document.findElement("label");
    CHECK(*label->attribute("stroke") == "#FF0000");

    p.profile = "epilog";
    r = instantiateDocument(d, p);
    CHECK(*r.document.findElement("seat")->attribute("stroke-width") == "0.076mm");
    CHECK(*r.document.findElement("seat")->attribute("stroke") == "#000000");
}

TEST_CASE("style declarations are replaced by the profile") {
    Document d = Document::parse(R"(<svg xmlns:laser="http://www.w3.org/lasersvg" laser:material-thickness="3">
  <rect id="a" width="5" height="5" style="stroke:red;opacity:0.5" laser:action="cut"/>
  <rect id="b" width="5" height="5"/></svg>)");
    ParamSet p;
    p.thickness = 3;
    p.profile = "trotec";
    InstantiateResult r = instantiateDocument(d, p);
    const xml::Node* a = r.document.findElement("a");
    CHECK(*a->attribute("style") == "opacity:0.5");
    CHECK(*a->attribute("stroke") == "#0000FF");
    bool warned = false;
    for (const Diagnostic& x : r.diagnostics) {
        warned = warned || (x.element == "b" && x.severity == Severity::Warning);
    }
    CHECK(warned);
}

TEST_CASE("custom profiles") {
    MachineProfile m = parseProfile(R"(# shop laser
id = shop
cut = stroke:#FF0000; stroke-width:0.1mm; fill:none
engrave.stroke = none
engrave.stroke-width = 0
engrave.fill = #000000
)");
    CHECK(m.id == "shop");
    CHECK(m.cut.stroke == "#FF0000");
    CHECK(m.cut.strokeWidth == "0.1mm");
    ProfileRegistry reg;
    reg.add(m);
    CHECK(reg.find("shop") != nullptr);
    CHECK_THROWS_AS(reg.add(trotec()), Error);
    CHECK_THROWS_AS(parseProfile("id = x\ncut.stroke = red\n"), Error);
    CHECK_THROWS_AS(parseProfile("id = x\ncolour = red\n"), Error);
}

TEST_CASE("validation of bad fixtures names the element") {
    Diagnostics m = validateDocument(Document::load(fixtures::path("bad/mask-mismatch.lasersvg")));
    REQUIRE(hasErrors(m));
    CHECK(m.front().element == "short-mask");
    Diagnostics t = validateDocument(Document::load(fixtures::path("bad/template-divergence.lasersvg")));
    REQUIRE(hasErrors(t));
    CHECK(t.front().element == "drifted");
    for (const std::string& f : fixtures::corpus()) {
        CAPTURE(f);
        CHECK_FALSE(hasErrors(validateDocument(Document::load(fixtures::path(f)))));
    }
}

TEST_CASE("attribute rules") {
    auto errors = [](const std::string& body) {
        Document d = Document::parse(R"(<svg xmlns:laser="http://www.w3.org/lasersvg" laser:material-thickness="3">)" + body + "</svg>");
        return validateDocument(d);
    };
    CHECK(hasErrors(errors(R"(<rect id="r" width="30" height="30" laser:joint-top="a" laser:joint-top-direction="inside"/>)")));
    CHECK(hasErrors(errors(R"(<rect id="r" width="30" height="30" laser:joint-top="a" laser:joint-top-type="finger"/>)")));
    CHECK(hasErrors(errors(R"(<path id="p" d="M0 0 l30 0 l0 30 z" laser:joint-type="finger" laser:joint-direction="inside"/>)")));
    CHECK(hasErrors(errors(R"(<path id="p" d="M0 0 l30 0 l0 30 z" laser:joint-type="finger" laser:joint-direction="inside" laser:joint-segment="0" laser:finger-count="4"/>)")));
    Diagnostics w = errors(R"(<rect id="r" width="30" height="30" laser:origin="center"/>)");
    CHECK_FALSE(hasErrors(w));
    CHECK_FALSE(w.empty());
    CHECK(hasErrors(Diagnostics{{Severity::Error, "", "", "x"}}));
}

TEST_CASE("service parameter JSON") {
    ParamSet p = paramsFromJson(nlohmann::json::parse(R"({"thickness":4,"kerf":0.2,"scale":1,"jointOverrides":{"box":"flap"},"profile":"trotec"})"));
    CHECK(*p.thickness == 4);
    CHECK((p.jointOverrides.at("box") == JointType::Flap));
    CHECK(paramsFromJson(paramsToJson(p)).jointOverrides == p.jointOverrides);
    auto message = [](const char* body) {
        try {
            paramsFromJson(nlohmann::json::parse(body));
        }
        catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"thickness":0})").find("thickness") != std::string::npos);
    CHECK(message(R"({"kerf":-1})").find("kerf") != std::string::npos);
    CHECK(message(R"({"scale":"2"})").find("scale") != std::string::npos);
    CHECK(message(R"({"thikness":3})").find("thikness") != std::string::npos);
    CHECK(message(R"({"jointOverrides":{"a":"dovetail"}})").find("jointOverrides") != std::string::npos);
    CHECK(message("[1]").find("object") != std::string::npos);

    nlohmann::json desc = paramDescriptors(Document::load(fixtures::path("corpus/box.lasersvg")));
    REQUIRE(desc.size() == 4);
    CHECK(desc[0]["name"] == "thickness");
    CHECK(desc[0]["value"] == 3);
    CHECK(desc[3]["kind"] == "enum");
    CHECK(desc[3]["options"] == nlohmann::json({"flap", "finger", "finger-compact", "tslot"}));
    for (const auto& x : desc) {
        if (x["kind"] == "number") {
            CHECK(x["min"].get<double>() <= x["value"].get<double>());
            CHECK(x["value"].get<double>() <= x["max"].get<double>());
        }
    }
}

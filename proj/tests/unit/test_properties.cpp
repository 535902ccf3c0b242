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

// Property suites over random inputs and the fixture corpus.

#include "fixtures.hpp"
#include "lasertpl/document.hpp"
#include "lasertpl/engine.hpp"
#include "lasertpl/error.hpp"
#include "lasertpl/expr.hpp"
#include "lasertpl/joints.hpp"
#include "lasertpl/path.hpp"
#include "lasertpl/profiles.hpp"
#include "lasertpl/tagger.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <set>

using namespace lasertpl;

namespace {

ParamSet at(double t) {
    ParamSet p;
    p.thickness = t;
    p.kerf = 0;
    p.scale = 1;
    return p;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Every path in `after` within `tol` of the same element in `before`.
double pathDrift(const Document& before, const Document& after) {
    double worst = 0;
    before.forEachElement([&](const xml::Node& n, const std::string& loc) {
        const std::string* d = n.attribute("d");
        if (!d) {
            return;
        }
        const xml::Node* m = after.findElement(loc);
        REQUIRE(m);
        auto a = oracle::endpoints(*d);
        auto b = oracle::endpoints(*m->attribute("d"));
        REQUIRE(a.size() == b.size());
        worst = std::max(worst, oracle::maxDeviation(a, b));
    });
    return worst;
}

} // namespace

TEST_CASE("resolveLength is positive-homogeneous per unit") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(0.01, 500), factor(0.1, 50);
    for (const char* unit : {"", "mm", "cm", "in", "px"}) {
        for (int i = 0; i < 200; ++i) {
            double x = value(rng), k = factor(rng);
            double lhs = resolveLength(num(k * x) + unit);
            double rhs = k * resolveLength(num(x) + unit);
            CHECK(oracle::closeRelative(lhs, rhs, 1e-12));
        }
    }
}

TEST_CASE("toRelative is idempotent") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> c(-50, 50);
    for (int i = 0; i < 200; ++i) {
        std::string d = "M" + num(c(rng)) + " " + num(c(rng));
        for (int k = 0; k < 6; ++k) {
            switch (rng() % 4) {
            case 0: d += " L" + num(c(rng)) + " " + num(c(rng)); break;
            case 1: d += " h" + num(c(rng)); break;
            case 2: d += " V" + num(c(rng)); break;
            default: d += " c1 2 3 4 " + num(c(rng)) + " " + num(c(rng)); break;
            }
        }
        path::CommandList once = path::toRelative(path::parsePathData(d));
        CHECK(path::approxEqual(path::toRelative(once), once, 1e-9));
    }
}

TEST_CASE("expressions without thickness are constant in thickness") {
    int constant = 0;
    for (unsigned seed = 1; seed <= 2000; ++seed) {
        oracle::GenExpr g = oracle::ExprGen(seed, {}).make(4);
        expr::Expr e = expr::parseExpression(g.text);
        double a = expr::evaluate(e, {3, 0.2, 1, nullptr});
        double b = expr::evaluate(e, {3, 0.2, 1, nullptr});
        CHECK(std::memcmp(&a, &b, sizeof a) == 0); // bit-identical
        if (g.text.find("thickness") == std::string::npos) {
            ++constant;
            CHECK(expr::evaluate(e, {1, 0.2, 1, nullptr}) == a);
            CHECK(expr::evaluate(e, {100, 0.2, 1, nullptr}) == a);
        }
    }
    CHECK(constant > 50);
}

TEST_CASE("thickness segment detection equals a brute-force filter") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi), off(4, 20), shortLen(0.5, 2.5);
    const double t = 3;
    for (int i = 0; i < 500; ++i) {
        std::string d = "M10 10";
        int n = 3 + static_cast<int>(rng() % 10);
        for (int k = 0; k < n; ++k) {
            double len = rng() % 3 == 0 ? t : (rng() % 2 ? off(rng) : shortLen(rng));
            double th = rng() % 2 ? (rng() % 4) * std::numbers::pi / 2 : angle(rng);
            d += " l" + num(len * std::cos(th)) + " " + num(len * std::sin(th));
        }
        auto pts = oracle::endpoints(d);
        std::set<std::size_t> expect;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            if (std::fabs(std::hypot(pts[k].x - pts[k - 1].x, pts[k].y - pts[k - 1].y) - t) <= 0.01) {
                expect.insert(k - 1);
            }
        }
        std::set<std::size_t> got;
        for (const tagger::SegmentHit& h : tagger::detectThicknessSegments(path::parsePathData(d), t, 0.01)) {
            got.insert(h.index);
        }
        CHECK(got == expect);
    }
}

TEST_CASE("joint fragments start and end exactly on the edge") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> pos(-100, 100), len(40, 200), ang(0, 2 * std::numbers::pi), th(1, 10);
    for (JointType type : {JointType::Flap, JointType::Finger, JointType::FingerCompact, JointType::TSlot}) {
        for (int i = 0; i < 50; ++i) {
            Vec2 p0{pos(rng), pos(rng)};
            double l = len(rng), a = ang(rng), design = 3;
            Vec2 p1{p0.x + l * std::cos(a), p0.y + l * std::sin(a)};
            joints::Edge e{p0, p1, rng() % 2 == 0};
            joints::JointSpec spec{type, rng() % 2 ? JointDirection::Inside : JointDirection::Outside, std::nullopt, {}};
            joints::Fragment f = joints::generateJoint(e, spec, design);
            path::CommandList c = tpl::instantiate(joints::fragmentPath(e, f), {th(rng), 0, 1, nullptr});
            CAPTURE(toString(type));
            REQUIRE(c.size() >= 2);
            CHECK(c.front().args[0] == p0.x);
            CHECK(c.front().args[1] == p0.y);
            CHECK_FALSE(c.back().relative);
            CHECK(c.back().args[0] == p1.x);
            CHECK(c.back().args[1] == p1.y);
        }
    }
}

TEST_CASE("default section widths are never narrower than the thickness") {
    for (JointType type : {JointType::Finger, JointType::FingerCompact, JointType::TSlot}) {
        for (double t : {1.5, 2.0, 3.0, 4.0, 6.0}) {
            for (double length = 10; length <= 400; length += 3.7) {
                joints::Edge e{{0, 0}, {length, 0}, true};
                try {
                    joints::generateJoint(e, {type, JointDirection::Outside, std::nullopt, {}}, t);
                }
                catch (const Error&) {
                    continue; // edge too short for this joint
                }
                int n = joints::defaultFingerCount(type, length, t);
                CAPTURE(toString(type));
                CAPTURE(length);
                CHECK(length / n >= t - 1e-12);
            }
        }
    }
}

TEST_CASE("re-instantiating a fragment moves only the excursion depths") {
    joints::Edge e{{0, 0}, {97.3, 0}, true};
    for (JointType type : {JointType::Flap, JointType::Finger, JointType::FingerCompact, JointType::TSlot}) {
        for (JointDirection dir : {JointDirection::Inside, JointDirection::Outside}) {
            joints::Fragment f = joints::generateJoint(e, {type, dir, std::nullopt, {}}, 3);
            tpl::TemplatePath p = joints::fragmentPath(e, f);
            auto along = [&](double t) {
                std::vector<double> xs;
                double x = 0;
                for (const path::Command& k : tpl::instantiate(p, {t, 0, 1, nullptr})) {
                    x = k.relative ? x + k.args[0] : k.args[0];
                    xs.push_back(x);
                }
                return xs;
            };
            auto a = along(2), b = along(6);
            REQUIRE(a.size() == b.size());
            CAPTURE(toString(type));
            for (std::size_t k = 0; k < a.size(); ++k) {
                CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("instantiation is deterministic") {
    for (const std::string& f : fixtures::corpus()) {
        Document d = Document::load(fixtures::path(f));
        ParamSet p = at(4.5);
        p.kerf = 0.1;
        p.profile = "trotec";
        CHECK(instantiateDocument(d, p).document.serialize() == instantiateDocument(d, p).document.serialize());
    }
}

TEST_CASE("profiles are idempotent, fully overwrite and leave geometry alone") {
    const std::set<std::string> styling = {"stroke", "stroke-width", "fill", "style"};
    for (const std::string& f : fixtures::corpus()) {
        CAPTURE(f);
        Document base = Document::load(fixtures::path(f));
        Document once = base, twice = base, switched = base, direct = base;
        profiles::applyProfile(once, profiles::trotec());
        profiles::applyProfile(twice, profiles::trotec());
        profiles::applyProfile(twice, profiles::trotec());
        CHECK(xml::domEqual(xml::parse(once.serialize()), xml::parse(twice.serialize())));

        profiles::applyProfile(switched, profiles::trotec());
        profiles::applyProfile(switched, profiles::epilog());
        profiles::applyProfile(direct, profiles::epilog());
        CHECK(xml::domEqual(xml::parse(switched.serialize()), xml::parse(direct.serialize())));

        base.forEachElement([&](const xml::Node& n, const std::string& loc) {
            const xml::Node* m = once.findElement(loc);
            REQUIRE(m);
            for (const xml::Attribute& a : n.attributes) {
                if (!styling.count(a.name)) {
                    const std::string* v = m->attribute(a.name);
                    REQUIRE(v);
                    CHECK(*v == a.value);
                }
            }
        });
    }
}

TEST_CASE("tagging then instantiating at the design thickness is the identity") {
    Document bench = Document::load(fixtures::path("authoring/bench.svg"));
    Document all = bench;
    tagger::tagAll(all, 3, 0.01);
    CHECK(pathDrift(bench, instantiateDocument(all, at(3)).document) <= 1e-6);

    Document rail = Document::parse(R"(<svg xmlns="http://www.w3.org/2000/svg"><path id="rail" d="M0 0 h10 l27 0 h5 l19.091883 19.091883 v10 z"/></svg>)");
    Document seg = rail;
    tagger::tagSegments(seg, *seg.findElement("rail"), {1, 3}, 3, std::string("24+thickness"), 1e-5);
    Document back = instantiateDocument(seg, at(3)).document;
    CHECK(pathDrift(rail, back) <= 1e-6);
    Document plain = rail;
    tagger::tagSegments(plain, *plain.findElement("rail"), {2}, 3, std::nullopt, 0.01);
    // The 5 mm segment is snapped only when it measures the thickness.
    CHECK_THROWS_AS(tagger::tagSegments(plain, *plain.findElement("rail"), {2}, 3, std::nullopt, 0.01), Error);

    Document comb = Document::load(fixtures::path("authoring/comb.svg"));
    Document slits = comb;
    tagger::parameterizeSlits(slits, 3, 6);
    CHECK(pathDrift(comb, instantiateDocument(slits, at(3)).document) <= 1e-6);
}

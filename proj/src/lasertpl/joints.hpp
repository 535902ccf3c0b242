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

#ifndef LASERTPL_JOINTS_HPP
#define LASERTPL_JOINTS_HPP

#include "lasertpl/document.hpp"
#include "lasertpl/error.hpp"
#include "lasertpl/geometry.hpp"
#include "lasertpl/template_path.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lasertpl::joints {

struct JointSpec {
    JointType type = JointType::Finger;
    JointDirection direction = JointDirection::Outside;
    std::optional<int> fingerCount;
    BoltParams bolt;
};

/// A straight edge of a closed outline, traversed from p0 to p1.
struct Edge {
    Vec2 p0;
    Vec2 p1;
    bool interiorOnRight = true;

    double length() const { return distance(p0, p1); }
    Vec2 direction() const { return normalized(p1 - p0); }
    // Unit normal pointing away from the interior.
    Vec2 outwardNormal() const;
};

struct Fragment {
    // Drawing commands from p0 to p1; the last one is an absolute lineto.
    std::vector<tpl::TemplateCommand> commands;
    // Kerf-mask letter per command. Every inner wall moves half a kerf
    // toward the open side, so the letters along one edge sum to zero.
    std::vector<char> kerfLetters;
    // Closed nut pocket path emitted next to the inner piece of a t-slot.
    // Its size already subtracts `kerf`.
    std::optional<tpl::TemplatePath> pocket;
};

/// Default section count: largest odd n with n <= length / (2 thickness),
/// at least 3. For t-slots n is also 3 modulo 4 so the bolt lands in a gap.
/// For compact fingers the sections must fit in half the edge.
int defaultFingerCount(JointType type, double length, double thickness);

/// Joint profile for one edge. Depth slots are expressions in `thickness`.
/// Throws Error(Pipeline) when the edge is too short.
Fragment generateJoint(const Edge& edge, const JointSpec& spec, double thickness);

/// "M p0" followed by the fragment commands.
tpl::TemplatePath fragmentPath(const Edge& edge, const Fragment& fragment);

/// One jointed edge in a document.
struct JointEdge {
    std::string id;      // pairing id, may be empty
    std::string element; // element locator
    std::optional<Side> side;
    int segment = -1;
    JointType type = JointType::Finger;
    std::optional<JointDirection> direction;
    double length = 0; // at design thickness
};

/// Every jointed edge, in document order.
std::vector<JointEdge> listJoints(const Document& doc);

/// Pairing rules: shared ids need equal types, complementary directions
/// and lengths within 0.05 mm. A single-use id is a warning.
Diagnostics validateJointPairs(const Document& doc);

/// Regenerates every joint at `thickness` (element-local material
/// thickness wins), applying type overrides keyed by joint id. Rects with
/// per-side joints become paths. Previously generated pockets are replaced.
/// Throws Error(NotFound) for unknown override ids and Error(Pipeline) for
/// geometry failures.
void expandJoints(Document& doc, const std::map<std::string, JointType>& overrides,
                  double thickness, double kerf, double scale);

/// Sets the type of every edge carrying `jointId` and regenerates at the
/// design thickness. Same type returns an unchanged copy.
Document overrideJointType(const Document& doc, const std::string& jointId, JointType type);

} // namespace lasertpl::joints

#endif // LASERTPL_JOINTS_HPP

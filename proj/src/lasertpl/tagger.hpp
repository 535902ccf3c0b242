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

#ifndef LASERTPL_TAGGER_HPP
#define LASERTPL_TAGGER_HPP

#include "lasertpl/document.hpp"
#include "lasertpl/geometry.hpp"
#include "lasertpl/path.hpp"
#include "lasertpl/template_path.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lasertpl::tagger {

struct SegmentInfo {
    std::size_t index = 0;
    path::SegmentKind kind = path::SegmentKind::Line;
    double length = 0; // chord length for curves and arcs
    double angle = 0;  // radians, atan2(dy, dx)
    Vec2 start;
    Vec2 end;
    bool tagged = false; // template slot of this segment holds an expression
};

/// Segments of a path element, measured on its current geometry.
std::vector<SegmentInfo> describeSegments(const Document& doc, const xml::Node& path);

struct SegmentHit {
    std::string element;
    std::size_t index = 0;
    double length = 0;
    double angle = 0;
    bool curve = false; // measured by chord; cannot be tagged
};

/// Segments whose length is within `tolerance` of `thickness`.
std::vector<SegmentHit> detectThicknessSegments(const path::CommandList& cmds, double thickness,
                                                double tolerance);

struct PrimitiveHit {
    std::string element;
    ThicknessAdjust adjust = ThicknessAdjust::None;
};

struct TagReport {
    std::vector<PrimitiveHit> primitives;
    std::vector<SegmentHit> segments;
};

/// Candidates for "tag all": untagged primitives with a dimension equal to
/// the thickness and untagged line segments of that length.
TagReport detectAll(const Document& doc, double thickness, double tolerance);

/// Applies detectAll's candidates. Sets the root design thickness when
/// missing. Tagged geometry is snapped to exactly `thickness`.
TagReport tagAll(Document& doc, double thickness, double tolerance);

/// Rewrites the listed segments of `path` as thickness expressions, or as
/// `offset` (an expression such as "24+thickness") scaled along the segment
/// direction. Throws Error(InvalidArgument) for bad indices, curves,
/// already-tagged segments and offsets that do not reproduce the length.
void tagSegments(Document& doc, xml::Node& path, const std::vector<std::size_t>& indices,
                 double thickness, const std::optional<std::string>& offset = std::nullopt,
                 double tolerance = 0.01);

struct SlitMotif {
    std::string element;
    // Segment indices of approach, wall, base, wall, exit.
    std::array<std::size_t, 5> indices{};
    Vec2 mouth0;
    Vec2 mouth1;
    Vec2 center;
    double width = 0;
};

/// Five consecutive line segments a, w1, b, w2, c with |b| = thickness,
/// w1 antiparallel to w2 within `angleToleranceDeg`, w1 entering and w2
/// leaving the shape.
std::vector<SlitMotif> detectSlits(const path::CommandList& cmds, double thickness,
                                   double tolerance = 0.01, double angleToleranceDeg = 1);

std::vector<SlitMotif> detectSlits(const Document& doc, double thickness, double tolerance = 0.01,
                                   double angleToleranceDeg = 1);

/// Parameterizes one slit of `path` so its base follows the thickness
/// while the mouth midpoint stays put. Corrections must keep approach, exit
/// and walls positive on [minThickness, maxThickness]; otherwise
/// Error(InvalidArgument). Throws if any of the five segments is tagged.
void parameterizeSlit(Document& doc, xml::Node& path, const SlitMotif& motif, double thickness,
                      double minThickness, double maxThickness);

/// Convenience: detects slits on every path (or only `locator`) and
/// parameterizes those whose first index is in `select` (all when empty).
std::vector<SlitMotif> parameterizeSlits(Document& doc, double thickness, double maxThickness,
                                         const std::optional<std::string>& locator = std::nullopt,
                                         const std::vector<std::size_t>& select = {},
                                         double tolerance = 0.01, double angleToleranceDeg = 1);

} // namespace lasertpl::tagger

#endif // LASERTPL_TAGGER_HPP

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

#ifndef LASERTPL_ENGINE_HPP
#define LASERTPL_ENGINE_HPP

#include "lasertpl/document.hpp"
#include "lasertpl/error.hpp"
#include "lasertpl/path.hpp"
#include "lasertpl/profiles.hpp"

#include <map>
#include <optional>
#include <string>

namespace lasertpl {

/// End-user knobs. Absent values fall back to the document: design
/// thickness, root kerf (else 0), root scale (else 1).
struct ParamSet {
    std::optional<double> thickness;
    std::optional<double> kerf;
    std::optional<double> scale;
    // Used when the document carries no laser:material-thickness.
    std::optional<double> designThickness;
    std::string profile; // empty: no styling
    std::map<std::string, JointType> jointOverrides;
};

struct ResolvedParams {
    double thickness = 0;
    double kerf = 0;
    double scale = 1;
    double designThickness = 0;
    double documentScale = 1;
};

/// Fills defaults and checks ranges. Throws Error(InvalidArgument).
ResolvedParams resolveParams(const Document& doc, const ParamSet& p);

struct InstantiateResult {
    Document document;
    Diagnostics diagnostics; // warnings; errors are thrown
};

/// Runs the pipeline: scale, joints, templates, primitive thickness, kerf,
/// profile styling. Throws Error(InvalidArgument) for bad parameters,
/// Error(NotFound) for unknown joint or profile ids and Error(Pipeline)
/// carrying every stage-labelled error.
InstantiateResult instantiateDocument(const Document& doc, const ParamSet& p,
                                      const profiles::ProfileRegistry& registry = {});

// Stages, exposed for testing --------------------------------------------

/// Sets the tagged dimension(s) of a rect, circle or ellipse to `newThickness`
/// and compensates the position per the origin attribute. Returns a warning
/// when the tagged dimension was not within 0.05 mm of `designThickness`.
Diagnostics adjustPrimitiveThickness(xml::Node& node, const LaserAttrs& attrs,
                                     double newThickness, double designThickness,
                                     const std::string& locator = {});

/// Grows or shrinks masked line segments of a relative command list along
/// their own direction. Zero-length masked segments are skipped with a
/// warning. Throws Error(Pipeline) when a shrink is not shorter than the
/// segment or a masked segment is not a line.
path::CommandList applyKerfMask(const path::CommandList& relative, const path::KerfMask& mask,
                                double kerf, Diagnostics* warnings = nullptr);

/// Centred growth or shrink of a rect, circle or ellipse by `kerf`.
/// Throws Error(Pipeline) when a shrink leaves a non-positive dimension.
void applyKerfPrimitive(xml::Node& node, double kerf, KerfAdjust mode);

/// Multiplies static geometry by `factor`, leaving thickness-tagged
/// dimensions and template expressions alone. Tagged rects keep their
/// anchor corner in place relative to the scaled layout.
void scaleDocument(Document& doc, double factor);

/// Uniformly scales path data about the origin.
path::CommandList scalePathData(const path::CommandList& cmds, double factor);

} // namespace lasertpl

#endif // LASERTPL_ENGINE_HPP

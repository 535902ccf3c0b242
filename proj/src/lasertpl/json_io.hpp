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

#ifndef LASERTPL_JSON_IO_HPP
#define LASERTPL_JSON_IO_HPP

#include "lasertpl/document.hpp"
#include "lasertpl/engine.hpp"
#include "lasertpl/error.hpp"
#include "lasertpl/tagger.hpp"

#include <json.hpp>

namespace lasertpl {

/// Reads an instantiate request. Accepted fields: thickness, kerf, scale,
/// jointOverrides, profile. Throws Error(InvalidArgument) naming the field.
ParamSet paramsFromJson(const nlohmann::json& j);

nlohmann::json paramsToJson(const ParamSet& p);

/// Thickness, kerf and scale descriptors plus one enum per joint id.
nlohmann::json paramDescriptors(const Document& doc);

nlohmann::json toJson(const Diagnostics& diagnostics);

nlohmann::json toJson(const tagger::TagReport& report);

nlohmann::json toJson(const std::vector<tagger::SlitMotif>& motifs);

nlohmann::json toJson(const std::vector<tagger::SegmentInfo>& segments);

} // namespace lasertpl

#endif // LASERTPL_JSON_IO_HPP

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

#include "lasertpl/lasertpl.h"

#include "lasertpl/document.hpp"
#include "lasertpl/engine.hpp"
#include "lasertpl/error.hpp"
#include "lasertpl/json_io.hpp"
#include "lasertpl/profiles.hpp"
#include "lasertpl/tagger.hpp"
#include "lasertpl/validate.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace lasertpl;

struct lt_document {
    Document doc;
};

struct lt_params {
    ParamSet set;
    profiles::ProfileRegistry registry;
};

namespace {

thread_local std::string lastError;
thread_local std::string lastDiagnostics = "[]";

lt_status statusOf(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return LT_INVALID_ARGUMENT;
    case ErrorKind::Syntax: return LT_SYNTAX;
    case ErrorKind::Validation: return LT_VALIDATION;
    case ErrorKind::Pipeline: return LT_PIPELINE;
    case ErrorKind::NotFound: return LT_NOT_FOUND;
    case ErrorKind::Io: return LT_IO;
    }
    return LT_INTERNAL;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) {
        throw std::bad_alloc();
    }
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

lt_status failWith(lt_status status, const std::string& message) {
    lastError = message;
    return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
lt_status guarded(F&& body) {
    lastError.clear();
    lastDiagnostics = "[]";
    try {
        body();
        return LT_OK;
    }
    catch (const Error& e) {
        if (!e.diagnostics().empty()) {
            lastDiagnostics = toJson(e.diagnostics()).dump();
        }
        return failWith(statusOf(e.kind()), e.what());
    }
    catch (const nlohmann::json::exception& e) {
        return failWith(LT_INVALID_ARGUMENT, std::string("invalid JSON: ") + e.what());
    }
    catch (const std::bad_alloc&) {
        return failWith(LT_INTERNAL, "out of memory");
    }
    catch (const std::exception& e) {
        return failWith(LT_INTERNAL, e.what());
    }
    catch (...) {
        return failWith(LT_INTERNAL, "unknown failure");
    }
}

lt_status nullArg(const char* name) {
    lastDiagnostics = "[]";
    return failWith(LT_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

xml::Node& elementById(Document& doc, const char* id) {
    xml::Node* n = doc.findElement(id);
    if (!n) {
        throw Error(ErrorKind::NotFound, std::string("no element '") + id + "'");
    }
    return *n;
}

void requireFinite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be finite");
    }
}

} // namespace

extern "C" {

const char* lt_version(void) {
    return "1.0.0";
}

const char* lt_status_name(lt_status status) {
    switch (status) {
    case LT_OK: return "ok";
    case LT_INVALID_ARGUMENT: return "invalid-argument";
    case LT_SYNTAX: return "syntax";
    case LT_VALIDATION: return "validation";
    case LT_PIPELINE: return "pipeline";
    case LT_IO: return "io";
    case LT_NOT_FOUND: return "not-found";
    case LT_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* lt_last_error(void) {
    return lastError.c_str();
}

const char* lt_last_diagnostics(void) {
    return lastDiagnostics.c_str();
}

void lt_string_free(char* s) {
    std::free(s);
}

lt_status lt_document_parse(const char* text, size_t length, lt_document** out) {
    if (!text) return nullArg("text");
    if (!out) return nullArg("out");
    *out = nullptr;
    return guarded([&] { *out = new lt_document{Document::parse(std::string_view(text, length))}; });
}

lt_status lt_document_load(const char* filename, lt_document** out) {
    if (!filename) return nullArg("filename");
    if (!out) return nullArg("out");
    *out = nullptr;
    return guarded([&] { *out = new lt_document{Document::load(filename)}; });
}

lt_status lt_document_clone(const lt_document* doc, lt_document** out) {
    if (!doc) return nullArg("doc");
    if (!out) return nullArg("out");
    *out = nullptr;
    return guarded([&] { *out = new lt_document{doc->doc}; });
}

void lt_document_free(lt_document* doc) {
    delete doc;
}

lt_status lt_document_serialize(const lt_document* doc, char** out) {
    if (!doc) return nullArg("doc");
    if (!out) return nullArg("out");
    *out = nullptr;
    return guarded([&] { *out = dup(doc->doc.serialize()); });
}

lt_status lt_document_save(const lt_document* doc, const char* filename) {
    if (!doc) return nullArg("doc");
    if (!filename) return nullArg("filename");
    return guarded([&] { doc->doc.save(filename); });
}

lt_status lt_document_strip_laser(lt_document* doc) {
    if (!doc) return nullArg("doc");
    return guarded([&] { doc->doc.stripLaser(); });
}

lt_status lt_document_validate(const lt_document* doc, char** diagnostics_json) {
    if (!doc) return nullArg("doc");
    if (!diagnostics_json) return nullArg("diagnostics_json");
    *diagnostics_json = nullptr;
    return guarded([&] { *diagnostics_json = dup(toJson(validateDocument(doc->doc)).dump()); });
}

lt_status lt_document_param_descriptors(const lt_document* doc, char** json) {
    if (!doc) return nullArg("doc");
    if (!json) return nullArg("json");
    *json = nullptr;
    return guarded([&] { *json = dup(paramDescriptors(doc->doc).dump()); });
}

lt_status lt_params_new(lt_params** out) {
    if (!out) return nullArg("out");
    *out = nullptr;
    return guarded([&] { *out = new lt_params{}; });
}

lt_status lt_params_from_json(const char* json, lt_params** out) {
    if (!json) return nullArg("json");
    if (!out) return nullArg("out");
    *out = nullptr;
    return guarded([&] {
        ParamSet set = paramsFromJson(nlohmann::json::parse(json));
        auto* p = new lt_params{};
        p->set = std::move(set);
        *out = p;
    });
}

void lt_params_free(lt_params* params) {
    delete params;
}

lt_status lt_params_set_thickness(lt_params* params, double mm) {
    if (!params) return nullArg("params");
    return guarded([&] {
        requireFinite(mm, "thickness");
        if (!(mm > 0)) {
            fail(ErrorKind::InvalidArgument, "thickness must be positive");
        }
        params->set.thickness = mm;
    });
}

lt_status lt_params_set_kerf(lt_params* params, double mm) {
    if (!params) return nullArg("params");
    return guarded([&] {
        requireFinite(mm, "kerf");
        if (mm < 0) {
            fail(ErrorKind::InvalidArgument, "kerf must not be negative");
        }
        params->set.kerf = mm;
    });
}

lt_status lt_params_set_scale(lt_params* params, double factor) {
    if (!params) return nullArg("params");
    return guarded([&] {
        requireFinite(factor, "scale");
        if (!(factor > 0)) {
            fail(ErrorKind::InvalidArgument, "scale must be positive");
        }
        params->set.scale = factor;
    });
}

lt_status lt_params_set_design_thickness(lt_params* params, double mm) {
    if (!params) return nullArg("params");
    return guarded([&] {
        requireFinite(mm, "design thickness");
        if (!(mm > 0)) {
            fail(ErrorKind::InvalidArgument, "design thickness must be positive");
        }
        params->set.designThickness = mm;
    });
}

lt_status lt_params_set_joint(lt_params* params, const char* joint_id, const char* type) {
    if (!params) return nullArg("params");
    if (!joint_id) return nullArg("joint_id");
    if (!type) return nullArg("type");
    return guarded([&] {
        auto t = parseJointType(type);
        if (!t) {
            fail(ErrorKind::InvalidArgument, std::string("unknown joint type '") + type + "'");
        }
        params->set.jointOverrides[joint_id] = *t;
    });
}

lt_status lt_params_set_profile(lt_params* params, const char* profile_id) {
    if (!params) return nullArg("params");
    return guarded([&] { params->set.profile = profile_id ? profile_id : ""; });
}

lt_status lt_params_add_profile_definition(lt_params* params, const char* text) {
    if (!params) return nullArg("params");
    if (!text) return nullArg("text");
    return guarded([&] { params->registry.add(profiles::parseProfile(text)); });
}

lt_status lt_instantiate(const lt_document* doc, const lt_params* params, lt_document** out,
                         char** diagnostics_json) {
    if (!doc) return nullArg("doc");
    if (!params) return nullArg("params");
    if (!out) return nullArg("out");
    *out = nullptr;
    if (diagnostics_json) {
        *diagnostics_json = nullptr;
    }
    return guarded([&] {
        InstantiateResult r = instantiateDocument(doc->doc, params->set, params->registry);
        char* diag = diagnostics_json ? dup(toJson(r.diagnostics).dump()) : nullptr;
        try {
            *out = new lt_document{std::move(r.document)};
        }
        catch (...) {
            std::free(diag);
            throw;
        }
        if (diagnostics_json) {
            *diagnostics_json = diag;
        }
    });
}

lt_status lt_tag_detect_all(const lt_document* doc, double thickness, double tolerance,
                            char** json) {
    if (!doc) return nullArg("doc");
    if (!json) return nullArg("json");
    *json = nullptr;
    return guarded([&] {
        *json = dup(toJson(tagger::detectAll(doc->doc, thickness, tolerance)).dump());
    });
}

lt_status lt_tag_apply_all(lt_document* doc, double thickness, double tolerance, char** json) {
    if (!doc) return nullArg("doc");
    if (json) {
        *json = nullptr;
    }
    return guarded([&] {
        tagger::TagReport r = tagger::tagAll(doc->doc, thickness, tolerance);
        if (json) {
            *json = dup(toJson(r).dump());
        }
    });
}

lt_status lt_describe_segments(const lt_document* doc, const char* element_id, char** json) {
    if (!doc) return nullArg("doc");
    if (!element_id) return nullArg("element_id");
    if (!json) return nullArg("json");
    *json = nullptr;
    return guarded([&] {
        // findElement is non-const; the lookup does not modify the document.
        auto& d = const_cast<Document&>(doc->doc);
        *json = dup(toJson(tagger::describeSegments(doc->doc, elementById(d, element_id))).dump());
    });
}

lt_status lt_tag_segments(lt_document* doc, const char* element_id, const size_t* indices,
                          size_t count, double thickness, const char* offset_expr) {
    if (!doc) return nullArg("doc");
    if (!element_id) return nullArg("element_id");
    if (count > 0 && !indices) return nullArg("indices");
    return guarded([&] {
        std::vector<std::size_t> idx(indices, indices + count);
        std::optional<std::string> offset;
        if (offset_expr) {
            offset = offset_expr;
        }
        tagger::tagSegments(doc->doc, elementById(doc->doc, element_id), idx, thickness, offset);
    });
}

lt_status lt_slits_detect(const lt_document* doc, double thickness, double tolerance,
                          double angle_tolerance_deg, char** json) {
    if (!doc) return nullArg("doc");
    if (!json) return nullArg("json");
    *json = nullptr;
    return guarded([&] {
        *json = dup(
            toJson(tagger::detectSlits(doc->doc, thickness, tolerance, angle_tolerance_deg)).dump());
    });
}

lt_status lt_slits_apply(lt_document* doc, double thickness, double max_thickness,
                         const char* element_id, const size_t* select, size_t count,
                         double tolerance, double angle_tolerance_deg, char** json) {
    if (!doc) return nullArg("doc");
    if (count > 0 && !select) return nullArg("select");
    if (json) {
        *json = nullptr;
    }
    return guarded([&] {
        std::optional<std::string> locator;
        if (element_id) {
            locator = element_id;
        }
        std::vector<std::size_t> sel(select, select + count);
        auto motifs = tagger::parameterizeSlits(doc->doc, thickness, max_thickness, locator, sel,
                                                tolerance, angle_tolerance_deg);
        if (json) {
            *json = dup(toJson(motifs).dump());
        }
    });
}

} // extern "C"

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

#include "handles.hpp"
#include "service.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using lasertpl::handles::Owned;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kValidation = 1, kIo = 2, kPipeline = 3, kInternal = 4 };

int exitFor(lt_status st) {
    switch (st) {
    case LT_OK: return kOk;
    case LT_IO: return kIo;
    case LT_PIPELINE: return kPipeline;
    case LT_INTERNAL: return kInternal;
    default: return kValidation;
    }
}

// Prints the failure and returns its exit code.
int report(lt_status st) {
    std::cerr << "error: " << lt_last_error() << "\n";
    if (st == LT_PIPELINE) {
        json diags = json::parse(lt_last_diagnostics(), nullptr, false);
        if (diags.is_array()) {
            for (const json& d : diags) {
                std::cerr << "  " << d.value("severity", "error") << " [" << d.value("stage", "")
                          << "] " << d.value("element", "") << ": " << d.value("message", "")
                          << "\n";
            }
        }
    }
    return exitFor(st);
}

// Prints a diagnostics array; returns the number of (errors, warnings).
std::pair<int, int> printDiagnostics(const char* text) {
    int errors = 0;
    int warnings = 0;
    json diags = json::parse(text ? text : "[]", nullptr, false);
    if (!diags.is_array()) {
        return {0, 0};
    }
    for (const json& d : diags) {
        std::string sev = d.value("severity", "error");
        (sev == "error" ? errors : warnings)++;
        std::cerr << sev << ": ";
        if (d.contains("stage")) {
            std::cerr << "[" << d["stage"].get<std::string>() << "] ";
        }
        if (d.contains("element")) {
            std::cerr << d["element"].get<std::string>() << ": ";
        }
        std::cerr << d.value("message", "") << "\n";
    }
    return {errors, warnings};
}

bool readFile(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

int load(const std::string& path, Owned<lt_document>& doc) {
    lt_document* d = nullptr;
    lt_status st = lt_document_load(path.c_str(), &d);
    if (st != LT_OK) {
        return report(st);
    }
    doc.reset(d);
    return kOk;
}

// Writes doc to path, or to standard output when path is empty or "-".
int emit(const lt_document* doc, const std::string& path) {
    if (!path.empty() && path != "-") {
        lt_status st = lt_document_save(doc, path.c_str());
        return st == LT_OK ? kOk : report(st);
    }
    char* text = nullptr;
    lt_status st = lt_document_serialize(doc, &text);
    if (st != LT_OK) {
        return report(st);
    }
    Owned<char> guard(text);
    std::fwrite(text, 1, std::char_traits<char>::length(text), stdout);
    return kOk;
}

void printJson(const char* text) {
    std::cout << json::parse(text).dump(2) << "\n";
}

std::vector<std::size_t> parseIndices(const std::string& list) {
    std::vector<std::size_t> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        long v = std::stol(item, &used);
        if (used != item.size() || v < 0) {
            throw CLI::ValidationError("--indices", "'" + item + "' is not a segment index");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

struct InstantiateOpts {
    std::string input;
    std::string output;
    std::optional<double> thickness;
    std::optional<double> kerf;
    std::optional<double> scale;
    std::optional<double> designThickness;
    std::vector<std::string> joints;
    std::string profile;
    std::vector<std::string> profileFiles;
    bool strict = false;
    bool stripLaser = false;
};

int addProfileFiles(lt_params* params, const std::vector<std::string>& files,
                    std::vector<std::string>* texts = nullptr) {
    for (const std::string& f : files) {
        std::string text;
        if (!readFile(f, text)) {
            std::cerr << "error: cannot read profile file '" << f << "'\n";
            return kIo;
        }
        if (params) {
            lt_status st = lt_params_add_profile_definition(params, text.c_str());
            if (st != LT_OK) {
                return report(st);
            }
        }
        if (texts) {
            texts->push_back(text);
        }
    }
    return kOk;
}

int runInstantiate(const InstantiateOpts& o) {
    lt_params* raw = nullptr;
    lt_params_new(&raw);
    Owned<lt_params> params(raw);
    lt_status st = LT_OK;
    if (o.thickness && (st = lt_params_set_thickness(raw, *o.thickness)) != LT_OK) {
        return report(st);
    }
    if (o.kerf && (st = lt_params_set_kerf(raw, *o.kerf)) != LT_OK) {
        return report(st);
    }
    if (o.scale && (st = lt_params_set_scale(raw, *o.scale)) != LT_OK) {
        return report(st);
    }
    if (o.designThickness && (st = lt_params_set_design_thickness(raw, *o.designThickness)) != LT_OK) {
        return report(st);
    }
    for (const std::string& j : o.joints) {
        auto eq = j.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "error: --joint expects <id>=<type>, got '" << j << "'\n";
            return kValidation;
        }
        st = lt_params_set_joint(raw, j.substr(0, eq).c_str(), j.substr(eq + 1).c_str());
        if (st != LT_OK) {
            return report(st);
        }
    }
    if (int rc = addProfileFiles(raw, o.profileFiles)) {
        return rc;
    }
    if (!o.profile.empty()) {
        lt_params_set_profile(raw, o.profile.c_str());
    }

    Owned<lt_document> doc;
    if (int rc = load(o.input, doc)) {
        return rc;
    }
    lt_document* out = nullptr;
    char* diag = nullptr;
    st = lt_instantiate(doc.get(), raw, &out, &diag);
    if (st != LT_OK) {
        return report(st);
    }
    Owned<lt_document> result(out);
    Owned<char> diagGuard(diag);
    auto [errors, warnings] = printDiagnostics(diag);
    if (errors > 0 || (o.strict && warnings > 0)) {
        if (o.strict && warnings > 0) {
            std::cerr << "error: " << warnings << " warning(s) with --strict\n";
        }
        return kValidation;
    }
    if (o.stripLaser) {
        lt_document_strip_laser(out);
    }
    return emit(out, o.output);
}

int runValidate(const std::string& input, bool strict) {
    Owned<lt_document> doc;
    if (int rc = load(input, doc)) {
        return rc;
    }
    char* diag = nullptr;
    lt_status st = lt_document_validate(doc.get(), &diag);
    if (st != LT_OK) {
        return report(st);
    }
    Owned<char> guard(diag);
    auto [errors, warnings] = printDiagnostics(diag);
    return errors > 0 || (strict && warnings > 0) ? kValidation : kOk;
}

struct TagOpts {
    std::string input;
    std::string output;
    double thickness = 0;
    double tolerance = 0.01;
    double angleTolerance = 1;
    std::optional<double> maxThickness;
    std::string id;
    std::string indices;
    std::optional<std::string> offset;
    bool detect = false;
    bool apply = false;
    bool dumpSegments = false;
};

int runTagAll(const TagOpts& o) {
    Owned<lt_document> doc;
    if (int rc = load(o.input, doc)) {
        return rc;
    }
    char* js = nullptr;
    lt_status st = o.apply ? lt_tag_apply_all(doc.get(), o.thickness, o.tolerance, &js)
                           : lt_tag_detect_all(doc.get(), o.thickness, o.tolerance, &js);
    if (st != LT_OK) {
        return report(st);
    }
    Owned<char> guard(js);
    if (!o.apply) {
        printJson(js);
        return kOk;
    }
    json r = json::parse(js);
    std::cerr << "tagged " << r["primitives"].size() << " primitive(s) and "
              << r["segments"].size() << " segment(s)\n";
    return emit(doc.get(), o.output);
}

int runTagSegments(const TagOpts& o) {
    Owned<lt_document> doc;
    if (int rc = load(o.input, doc)) {
        return rc;
    }
    if (o.id.empty()) {
        std::cerr << "error: --id is required\n";
        return kValidation;
    }
    if (o.dumpSegments) {
        char* js = nullptr;
        lt_status st = lt_describe_segments(doc.get(), o.id.c_str(), &js);
        if (st != LT_OK) {
            return report(st);
        }
        Owned<char> guard(js);
        printJson(js);
        return kOk;
    }
    std::vector<std::size_t> idx = parseIndices(o.indices);
    if (idx.empty()) {
        std::cerr << "error: --indices lists no segments\n";
        return kValidation;
    }
    lt_status st = lt_tag_segments(doc.get(), o.id.c_str(), idx.data(), idx.size(), o.thickness,
                                   o.offset ? o.offset->c_str() : nullptr);
    if (st != LT_OK) {
        return report(st);
    }
    return emit(doc.get(), o.output);
}

int runTagSlits(const TagOpts& o) {
    Owned<lt_document> doc;
    if (int rc = load(o.input, doc)) {
        return rc;
    }
    char* js = nullptr;
    lt_status st;
    if (o.apply) {
        std::vector<std::size_t> sel = parseIndices(o.indices);
        double maxT = o.maxThickness.value_or(2 * o.thickness);
        st = lt_slits_apply(doc.get(), o.thickness, maxT, o.id.empty() ? nullptr : o.id.c_str(),
                            sel.data(), sel.size(), o.tolerance, o.angleTolerance, &js);
    }
    else {
        st = lt_slits_detect(doc.get(), o.thickness, o.tolerance, o.angleTolerance, &js);
    }
    if (st != LT_OK) {
        return report(st);
    }
    Owned<char> guard(js);
    if (!o.apply) {
        printJson(js);
        return kOk;
    }
    std::cerr << "parameterized " << json::parse(js).size() << " slit(s)\n";
    return emit(doc.get(), o.output);
}

int runServe(const std::string& input, const std::string& host, int port, const std::string& ui,
             const std::vector<std::string>& profileFiles) {
    std::string text;
    if (!readFile(input, text)) {
        std::cerr << "error: cannot read '" << input << "'\n";
        return kIo;
    }
    std::vector<std::string> profiles;
    if (int rc = addProfileFiles(nullptr, profileFiles, &profiles)) {
        return rc;
    }
    try {
        lasertpl::service::Service svc(text, profiles, ui);
        std::cerr << "serving " << input << " on http://" << host << ":" << port << "\n";
        if (!lasertpl::service::serve(svc, host, port)) {
            std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
            return kIo;
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric laser-cutting SVG templates"};
    app.set_version_flag("--version", std::string(lt_version()));
    app.require_subcommand(1);

    InstantiateOpts io;
    auto* inst = app.add_subcommand("instantiate", "Instantiate a template for a material");
    inst->add_option("input", io.input, "Template file")->required();
    inst->add_option("-o,--output", io.output, "Output file (default: standard output)");
    inst->add_option("--thickness", io.thickness, "Material thickness in mm");
    inst->add_option("--kerf", io.kerf, "Kerf width in mm");
    inst->add_option("--scale", io.scale, "Scale factor");
    inst->add_option("--design-thickness", io.designThickness,
                     "Thickness the template was drawn at, when the file does not say");
    inst->add_option("--joint", io.joints, "Joint override <id>=<type>");
    inst->add_option("--profile", io.profile, "Machine profile id (trotec, epilog, ...)");
    inst->add_option("--profile-file", io.profileFiles, "Additional profile definition file");
    inst->add_flag("--strict", io.strict, "Treat warnings as errors");
    inst->add_flag("--strip-laser", io.stripLaser, "Remove laser attributes from the output");

    std::string vInput;
    bool vStrict = false;
    auto* val = app.add_subcommand("validate", "Check a template for errors");
    val->add_option("input", vInput, "Template file")->required();
    val->add_flag("--strict", vStrict, "Treat warnings as errors");

    TagOpts to;
    auto* tag = app.add_subcommand("tag", "Mark thickness-dependent geometry");
    tag->require_subcommand(1);
    auto common = [&to](CLI::App* c, bool detectApply) {
        c->add_option("input", to.input, "Template or plain SVG file")->required();
        c->add_option("-o,--output", to.output, "Output file (default: standard output)");
        c->add_option("--thickness", to.thickness, "Material thickness the drawing uses")
            ->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--tolerance", to.tolerance, "Length tolerance in mm")->capture_default_str();
        if (detectApply) {
            auto* d = c->add_flag("--detect", to.detect, "Print candidates as JSON (default)");
            auto* a = c->add_flag("--apply", to.apply, "Write template attributes");
            d->excludes(a);
        }
    };
    auto* tagAll = tag->add_subcommand("all", "Tag every segment and primitive of the thickness");
    common(tagAll, true);
    auto* tagSeg = tag->add_subcommand("segments", "Tag chosen segments of one path");
    common(tagSeg, false);
    tagSeg->add_option("--id", to.id, "Path element id")->required();
    tagSeg->add_option("--indices", to.indices, "Comma-separated segment indices");
    tagSeg->add_option("--offset", to.offset, "Expression replacing the segment length");
    tagSeg->add_flag("--dump-segments", to.dumpSegments, "Print the segment table as JSON");
    auto* tagSlit = tag->add_subcommand("slits", "Find and parameterize slits");
    common(tagSlit, true);
    tagSlit->add_option("--id", to.id, "Restrict to one path element");
    tagSlit->add_option("--indices", to.indices, "Apply only to slits starting at these segments");
    tagSlit->add_option("--max-thickness", to.maxThickness,
                        "Largest thickness the slits must support (default: twice --thickness)");
    tagSlit->add_option("--angle-tolerance", to.angleTolerance, "Wall parallelism in degrees");

    std::string sInput;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string ui;
    std::vector<std::string> sProfiles;
    auto* srv = app.add_subcommand("serve", "Serve the parameter API for one template");
    srv->add_option("input", sInput, "Template file")->required();
    srv->add_option("--host", host, "Address to bind");
    srv->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
    srv->add_option("--ui-dir", ui, "Directory with the web UI assets");
    srv->add_option("--profile-file", sProfiles, "Additional profile definition file");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        if (*inst) {
            return runInstantiate(io);
        }
        if (*val) {
            return runValidate(vInput, vStrict);
        }
        if (*tagAll) {
            return runTagAll(to);
        }
        if (*tagSeg) {
            return runTagSegments(to);
        }
        if (*tagSlit) {
            return runTagSlits(to);
        }
        if (*srv) {
            return runServe(sInput, host, port, ui, sProfiles);
        }
    }
    catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}

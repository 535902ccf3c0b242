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

/* C interface to the lasertpl template engine.
 *
 * Every function returns an lt_status. On failure a message is available
 * from lt_last_error() until the next call on the same thread. Strings
 * returned through out-parameters are owned by the caller and released
 * with lt_string_free().
 */

#ifndef LASERTPL_LASERTPL_H
#define LASERTPL_LASERTPL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(LASERTPL_BUILDING)
#    define LT_API __declspec(dllexport)
#  else
#    define LT_API __declspec(dllimport)
#  endif
#else
#  define LT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lt_status {
    LT_OK = 0,
    LT_INVALID_ARGUMENT = 1,
    LT_SYNTAX = 2,
    LT_VALIDATION = 3,
    LT_PIPELINE = 4,
    LT_IO = 5,
    LT_NOT_FOUND = 6,
    LT_INTERNAL = 7
} lt_status;

typedef struct lt_document lt_document;
typedef struct lt_params lt_params;

LT_API const char* lt_version(void);
LT_API const char* lt_status_name(lt_status status);

/* Message of the last failed call on this thread, "" if none. */
LT_API const char* lt_last_error(void);

/* Diagnostics JSON of the last failed call on this thread ("[]" if none).
 * Filled for pipeline failures; each entry has severity, element, stage
 * and message. */
LT_API const char* lt_last_diagnostics(void);

LT_API void lt_string_free(char* s);

/* ---- documents ---- */

LT_API lt_status lt_document_parse(const char* text, size_t length, lt_document** out);
LT_API lt_status lt_document_load(const char* filename, lt_document** out);
LT_API lt_status lt_document_clone(const lt_document* doc, lt_document** out);
LT_API void lt_document_free(lt_document* doc);

LT_API lt_status lt_document_serialize(const lt_document* doc, char** out);
LT_API lt_status lt_document_save(const lt_document* doc, const char* filename);

/* Remove every laser attribute and the namespace declaration. */
LT_API lt_status lt_document_strip_laser(lt_document* doc);

/* Diagnostics array as JSON. Always LT_OK for a parsed document; inspect
 * the list for entries with severity "error". */
LT_API lt_status lt_document_validate(const lt_document* doc, char** diagnostics_json);

/* Parameter descriptors as a JSON array (thickness, kerf, scale and one
 * enum per joint id). */
LT_API lt_status lt_document_param_descriptors(const lt_document* doc, char** json);

/* ---- parameters ---- */

LT_API lt_status lt_params_new(lt_params** out);
/* Accepts the service request body: thickness, kerf, scale,
 * jointOverrides, profile. Unknown fields are rejected. */
LT_API lt_status lt_params_from_json(const char* json, lt_params** out);
LT_API void lt_params_free(lt_params* params);

LT_API lt_status lt_params_set_thickness(lt_params* params, double mm);
LT_API lt_status lt_params_set_kerf(lt_params* params, double mm);
LT_API lt_status lt_params_set_scale(lt_params* params, double factor);
LT_API lt_status lt_params_set_design_thickness(lt_params* params, double mm);
LT_API lt_status lt_params_set_joint(lt_params* params, const char* joint_id, const char* type);
LT_API lt_status lt_params_set_profile(lt_params* params, const char* profile_id);

/* Register a machine profile from its text definition; it becomes
 * selectable by id through lt_params_set_profile. */
LT_API lt_status lt_params_add_profile_definition(lt_params* params, const char* text);

/* ---- instantiation ---- */

/* Produce a new document. Warnings are returned as a JSON array through
 * diagnostics_json when it is non-NULL. */
LT_API lt_status lt_instantiate(const lt_document* doc, const lt_params* params,
                                lt_document** out, char** diagnostics_json);

/* ---- tagging ---- */

/* Candidates as JSON {"primitives": [...], "segments": [...]}. */
LT_API lt_status lt_tag_detect_all(const lt_document* doc, double thickness, double tolerance,
                                   char** json);
LT_API lt_status lt_tag_apply_all(lt_document* doc, double thickness, double tolerance,
                                  char** json);

/* Per-segment table of one path element. */
LT_API lt_status lt_describe_segments(const lt_document* doc, const char* element_id,
                                      char** json);

/* Tag segments of one path. offset_expr may be NULL; otherwise each tagged
 * segment gets the offset expression on its dominant axis. */
LT_API lt_status lt_tag_segments(lt_document* doc, const char* element_id, const size_t* indices,
                                 size_t count, double thickness, const char* offset_expr);

LT_API lt_status lt_slits_detect(const lt_document* doc, double thickness, double tolerance,
                                 double angle_tolerance_deg, char** json);

/* Parameterize detected slits. element_id may be NULL for all paths;
 * select filters by starting segment index when count > 0. */
LT_API lt_status lt_slits_apply(lt_document* doc, double thickness, double max_thickness,
                                const char* element_id, const size_t* select, size_t count,
                                double tolerance, double angle_tolerance_deg, char** json);

#ifdef __cplusplus
}
#endif

#endif /* LASERTPL_LASERTPL_H */

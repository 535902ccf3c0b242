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

#ifndef LASERTPL_VALIDATE_HPP
#define LASERTPL_VALIDATE_HPP

#include "lasertpl/document.hpp"
#include "lasertpl/error.hpp"

namespace lasertpl {

/// Every violation found in the document: parameter ranges, attribute
/// combinations, kerf masks, template/d consistency at the design thickness
/// and joint pairing. An empty list means the template conforms.
Diagnostics validateDocument(const Document& doc);

} // namespace lasertpl

#endif // LASERTPL_VALIDATE_HPP

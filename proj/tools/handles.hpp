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

#ifndef LASERTPL_TOOLS_HANDLES_HPP
#define LASERTPL_TOOLS_HANDLES_HPP

#include "lasertpl/lasertpl.h"

#include <memory>

namespace lasertpl::handles {

struct Freer {
    void operator()(char* s) const { lt_string_free(s); }
    void operator()(lt_document* d) const { lt_document_free(d); }
    void operator()(lt_params* p) const { lt_params_free(p); }
};

template <typename T>
using Owned = std::unique_ptr<T, Freer>;

} // namespace lasertpl::handles

#endif // LASERTPL_TOOLS_HANDLES_HPP

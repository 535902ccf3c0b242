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

#ifndef LASERTPL_TESTS_FIXTURES_HPP
#define LASERTPL_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

namespace fixtures {

std::string path(const std::string& relative);
std::string read(const std::string& relative);

// Conforming templates.
const std::vector<std::string>& corpus();
// Every fixture file, including authoring inputs and bad files.
const std::vector<std::string>& all();

} // namespace fixtures

#endif // LASERTPL_TESTS_FIXTURES_HPP

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

#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

std::string path(const std::string& relative) {
    return std::string(LASERTPL_FIXTURES) + "/" + relative;
}

std::string read(const std::string& relative) {
    std::ifstream in(path(relative), std::ios::binary);
    if (!in) {
        throw std::runtime_error("missing fixture " + relative);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<std::string>& corpus() {
    static const std::vector<std::string> files = {
        "corpus/bench.lasersvg", "corpus/box.lasersvg",       "corpus/comb.lasersvg",
        "corpus/rocket.lasersvg", "corpus/kerf-rect.lasersvg",
    };
    return files;
}

const std::vector<std::string>& all() {
    static const std::vector<std::string> files = [] {
        std::vector<std::string> v = corpus();
        for (const char* f : {"authoring/bench.svg", "authoring/box-rects.lasersvg",
                              "authoring/comb.svg", "bad/mask-mismatch.lasersvg",
                              "bad/template-divergence.lasersvg"}) {
            v.push_back(f);
        }
        return v;
    }();
    return files;
}

} // namespace fixtures

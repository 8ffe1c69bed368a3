// SPDX-License-Identifier: Apache-2.0
//
// squintless: wideband beam-squint mitigation with rotatable antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace squintless
{

struct InvariantCheck
{
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Randomized property checks over every module, small enough to run in a
/// few seconds. Deterministic for a given seed.
std::vector<InvariantCheck> run_invariant_suite(std::uint64_t seed);

} // namespace squintless

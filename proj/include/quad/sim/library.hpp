// Copyright 2026 The quad-planner Authors
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


#ifndef QUAD__SIM__LIBRARY_HPP_
#define QUAD__SIM__LIBRARY_HPP_

#include "quad/sim/scenario.hpp"

#include <cstdint>
#include <vector>

namespace quad::sim
{

/// Parameter split of the scripted suite; train and eval never share values.
enum class Split { train, eval };

/// Scripted safety suite: cut-ins, hard-braking lead, blocked lane, merges and
/// aggressors. Eval has one scenario per template (10), train two (20).
std::vector<Scenario> safety_suite(Split split);

/// Small fast set for plumbing checks.
std::vector<Scenario> smoke_set();

/// Straight multi-lane road without actors, goal on the ego lane.
Scenario empty_road(double duration = 10.0);

/// Dense traffic around the ego for runtime profiling.
Scenario crowded_scenario(std::size_t actors = 60, std::uint64_t seed = 7);

}  // namespace quad::sim

#endif  // QUAD__SIM__LIBRARY_HPP_

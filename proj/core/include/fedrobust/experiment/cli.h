// Copyright 2026 The fedrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEDROBUST_EXPERIMENT_CLI_H_
#define FEDROBUST_EXPERIMENT_CLI_H_

namespace fedrobust::experiment {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitBudget = 3;

// Entry point of the fedrobust tool. Verbs: run, corrupt, report, synth.
int Main(int argc, const char* const* argv);

}  // namespace fedrobust::experiment

#endif  // FEDROBUST_EXPERIMENT_CLI_H_

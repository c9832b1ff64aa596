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

#ifndef FEDROBUST_FED_METHOD_H_
#define FEDROBUST_FED_METHOD_H_

#include <string>
#include <string_view>

namespace fedrobust::fed {

enum class Method { kCleanFL, kRobustFL, kFedERL };

std::string_view MethodName(Method m);
// Accepts "CleanFL", "RobustFL", "FedERL" (case-insensitive).
Method ParseMethod(std::string_view name);

}  // namespace fedrobust::fed

#endif  // FEDROBUST_FED_METHOD_H_

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

#ifndef FEDROBUST_COMMON_ERROR_H_
#define FEDROBUST_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace fedrobust {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration, schema violation or bad argument.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf encountered in a loss or parameter vector.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A charge would push a ledger past its time or energy cap.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// File system or format problem.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fedrobust

#endif  // FEDROBUST_COMMON_ERROR_H_

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

#include "fedrobust/model/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fedrobust/common/error.h"

namespace fedrobust::model {
namespace fs = std::filesystem;

static_assert(std::endian::native == std::endian::little);

void SaveCheckpoint(const fs::path& dir, const Classifier& clf) {
  fs::create_directories(dir);
  std::ofstream(dir / "architecture.txt", std::ios::trunc)
      << clf.network().architecture().Describe();
  std::ofstream(dir / "layout.txt", std::ios::trunc)
      << clf.params().layout().Describe();
  std::ofstream out(dir / "weights.f64", std::ios::binary | std::ios::trunc);
  const auto v = clf.params().values();
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!out) throw IoError("cannot write checkpoint to " + dir.string());
}

Classifier LoadCheckpoint(const fs::path& dir) {
  std::ifstream arch_in(dir / "architecture.txt");
  if (!arch_in) throw IoError("missing " + (dir / "architecture.txt").string());
  std::stringstream arch_text;
  arch_text << arch_in.rdbuf();
  auto net = std::make_shared<const Network>(ParseArchitecture(arch_text.str()));

  std::ifstream layout_in(dir / "layout.txt");
  std::stringstream layout_text;
  layout_text << layout_in.rdbuf();
  if (layout_text.str() != net->layout()->Describe())
    throw IoError("checkpoint layout does not match its architecture");

  std::ifstream in(dir / "weights.f64", std::ios::binary);
  if (!in) throw IoError("missing " + (dir / "weights.f64").string());
  std::vector<char> bytes(std::istreambuf_iterator<char>(in), {});
  if (bytes.size() != net->parameter_count() * sizeof(double))
    throw IoError("checkpoint weight file has the wrong size");
  std::vector<double> values(net->parameter_count());
  std::memcpy(values.data(), bytes.data(), bytes.size());
  return Classifier(net, ParameterVector(net->layout(), std::move(values)));
}

}  // namespace fedrobust::model

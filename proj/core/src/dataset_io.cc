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

#include "fedrobust/data/dataset_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "fedrobust/common/error.h"

namespace fedrobust::data {
namespace fs = std::filesystem;
namespace {

static_assert(std::endian::native == std::endian::little,
              "dataset files are little-endian; big-endian hosts unsupported");

struct Meta {
  std::string name;
  size_t count = 0;
  ImageShape shape;
  int classes = 0;
};

void WriteBytes(const fs::path& path, const void* data, size_t bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out) throw IoError("short write to " + path.string());
}

std::vector<char> ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

void WriteMeta(const fs::path& dir, const Meta& m) {
  std::ofstream out(dir / kMetaFile, std::ios::trunc);
  if (!out) throw IoError("cannot write " + (dir / kMetaFile).string());
  out << "name " << m.name << "\n"
      << "shape " << m.count << " " << m.shape.height << " " << m.shape.width
      << " " << m.shape.channels << "\n"
      << "classes " << m.classes << "\n";
}

Meta ReadMeta(const fs::path& dir) {
  std::ifstream in(dir / kMetaFile);
  if (!in) throw IoError("missing " + (dir / kMetaFile).string());
  Meta m;
  bool have_shape = false;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "name") {
      ls >> m.name;
    } else if (key == "shape") {
      if (!(ls >> m.count >> m.shape.height >> m.shape.width >> m.shape.channels))
        throw IoError("malformed shape line in " + (dir / kMetaFile).string());
      have_shape = true;
    } else if (key == "classes") {
      ls >> m.classes;
    }
  }
  if (!have_shape) throw IoError("meta.txt lacks a shape line in " + dir.string());
  if (m.name.empty()) m.name = dir.filename().string();
  return m;
}

ImageSet ReadImages(const fs::path& dir, const Meta& m) {
  ImageSet set;
  set.name = m.name;
  set.shape = m.shape;
  auto bytes = ReadBytes(dir / kImagesFile);
  const size_t expected = m.count * m.shape.size() * sizeof(float);
  if (bytes.size() != expected)
    throw IoError((dir / kImagesFile).string() + ": expected " +
                  std::to_string(expected) + " bytes, found " +
                  std::to_string(bytes.size()));
  set.pixels.resize(m.count * m.shape.size());
  std::memcpy(set.pixels.data(), bytes.data(), bytes.size());
  return set;
}

void WriteImages(const fs::path& dir, const ImageSet& images) {
  WriteBytes(dir / kImagesFile, images.pixels.data(),
             images.pixels.size() * sizeof(float));
}

uint64_t Fnv1a(uint64_t h, const void* data, size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Stamp(uint64_t base_hash, uint64_t seed) {
  std::ostringstream s;
  s << "base_hash " << base_hash << "\nseed " << seed << "\n";
  return s.str();
}

}  // namespace

void WriteDataset(const fs::path& dir, const LabeledDataset& ds) {
  ds.Validate();
  fs::create_directories(dir);
  WriteImages(dir, ds.images);
  WriteBytes(dir / kLabelsFile, ds.labels.data(),
             ds.labels.size() * sizeof(uint16_t));
  WriteMeta(dir, {ds.name(), ds.size(), ds.shape(), ds.num_classes});
}

void WriteDataset(const fs::path& dir, const UnlabeledDataset& ds) {
  ds.Validate();
  fs::create_directories(dir);
  WriteImages(dir, ds.images);
  fs::remove(dir / kLabelsFile);
  WriteMeta(dir, {ds.name(), ds.size(), ds.shape(), 0});
}

LabeledDataset ReadLabeledDataset(const fs::path& dir) {
  const Meta m = ReadMeta(dir);
  LabeledDataset ds;
  ds.images = ReadImages(dir, m);
  ds.num_classes = m.classes;
  if (!fs::exists(dir / kLabelsFile))
    throw IoError("dataset " + dir.string() + " has no " + kLabelsFile);
  auto bytes = ReadBytes(dir / kLabelsFile);
  if (bytes.size() != m.count * sizeof(uint16_t))
    throw IoError((dir / kLabelsFile).string() + ": wrong length");
  ds.labels.resize(m.count);
  std::memcpy(ds.labels.data(), bytes.data(), bytes.size());
  try {
    ds.Validate();
  } catch (const ConfigError& e) {
    throw IoError(dir.string() + ": " + e.what());
  }
  return ds;
}

UnlabeledDataset ReadUnlabeledDataset(const fs::path& dir) {
  const Meta m = ReadMeta(dir);
  UnlabeledDataset ds{ReadImages(dir, m)};
  try {
    ds.Validate();
  } catch (const ConfigError& e) {
    throw IoError(dir.string() + ": " + e.what());
  }
  return ds;
}

uint64_t ContentHash(const LabeledDataset& ds) {
  uint64_t h = 0xcbf29ce484222325ULL;
  h = Fnv1a(h, ds.images.pixels.data(), ds.images.pixels.size() * sizeof(float));
  h = Fnv1a(h, ds.labels.data(), ds.labels.size() * sizeof(uint16_t));
  return h;
}

fs::path SuiteDirectory(const fs::path& root, const std::string& base_name) {
  std::string safe = base_name;
  for (char& c : safe)
    if (c == '/') c = '_';
  return root / (safe + ".corrupt");
}

CacheStats WriteCorruptionSuite(const fs::path& root, const LabeledDataset& base,
                                const std::vector<CorruptionSpec>& specs,
                                uint64_t seed) {
  if (specs.empty()) throw ConfigError("corruption suite needs at least one spec");
  const fs::path suite_dir = SuiteDirectory(root, base.name());
  const std::string stamp = Stamp(ContentHash(base), seed);
  CacheStats stats;
  for (const auto& spec : specs) {
    ValidateSpec(spec);
    const fs::path dir = suite_dir / spec.ToString();
    const fs::path stamp_path = dir / "stamp.txt";
    if (fs::exists(stamp_path) && fs::exists(dir / kImagesFile)) {
      std::ifstream in(stamp_path);
      std::string existing(std::istreambuf_iterator<char>(in), {});
      if (existing == stamp) {
        ++stats.reused;
        continue;
      }
    }
    WriteDataset(dir, CorruptDataset(base, spec, seed));
    std::ofstream(stamp_path, std::ios::trunc) << stamp;
    ++stats.written;
  }
  return stats;
}

CorruptedTestSuite ReadCorruptionSuite(const fs::path& root,
                                       const LabeledDataset& base,
                                       const std::vector<CorruptionSpec>& specs) {
  const fs::path suite_dir = SuiteDirectory(root, base.name());
  CorruptedTestSuite suite;
  suite.base = base;
  for (const auto& spec : specs) {
    LabeledDataset ds = ReadLabeledDataset(suite_dir / spec.ToString());
    if (ds.labels != base.labels)
      throw IoError("cached suite entry " + spec.ToString() +
                    " does not match base labels");
    suite.entries.push_back({spec, std::move(ds)});
  }
  return suite;
}

}  // namespace fedrobust::data

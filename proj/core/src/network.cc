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

#include "fedrobust/model/network.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fedrobust/common/error.h"
#include "fedrobust/common/rng.h"

namespace fedrobust::model {
namespace {

std::string_view KindName(LayerKind k) {
  switch (k) {
    case LayerKind::kConv2d: return "conv2d";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kMaxPool2: return "maxpool2";
    case LayerKind::kDense: return "dense";
  }
  return "?";
}

void Softmax(std::span<const double> logits, std::span<double> probs) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - m);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
}

}  // namespace

std::string Architecture::Describe() const {
  std::ostringstream out;
  out << "name " << name << "\n"
      << "input " << input.height << " " << input.width << " "
      << input.channels << "\n"
      << "classes " << num_classes << "\n";
  for (const auto& l : layers) {
    out << KindName(l.kind);
    if (l.kind == LayerKind::kConv2d) out << " " << l.size << " " << l.kernel;
    if (l.kind == LayerKind::kDense) out << " " << l.size;
    out << "\n";
  }
  return out.str();
}

Architecture ParseArchitecture(std::string_view text) {
  Architecture arch;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "name") {
      ls >> arch.name;
    } else if (key == "input") {
      ls >> arch.input.height >> arch.input.width >> arch.input.channels;
    } else if (key == "classes") {
      ls >> arch.num_classes;
    } else if (key == "conv2d") {
      LayerSpec l{LayerKind::kConv2d, 0, 0};
      ls >> l.size >> l.kernel;
      arch.layers.push_back(l);
    } else if (key == "relu") {
      arch.layers.push_back({LayerKind::kRelu, 0, 0});
    } else if (key == "maxpool2") {
      arch.layers.push_back({LayerKind::kMaxPool2, 0, 0});
    } else if (key == "dense") {
      LayerSpec l{LayerKind::kDense, 0, 0};
      ls >> l.size;
      arch.layers.push_back(l);
    } else {
      throw ConfigError("unknown architecture line '" + line + "'");
    }
    if (ls.fail()) throw ConfigError("malformed architecture line '" + line + "'");
  }
  return arch;
}

Architecture SmallCnn(ImageShape input, int num_classes, int c1, int c2,
                      int hidden) {
  return Architecture{
      "cnn",
      input,
      num_classes,
      {{LayerKind::kConv2d, c1, 3},
       {LayerKind::kRelu, 0, 0},
       {LayerKind::kMaxPool2, 0, 0},
       {LayerKind::kConv2d, c2, 3},
       {LayerKind::kRelu, 0, 0},
       {LayerKind::kMaxPool2, 0, 0},
       {LayerKind::kDense, hidden, 0},
       {LayerKind::kRelu, 0, 0},
       {LayerKind::kDense, num_classes, 0}}};
}

Architecture Mlp(ImageShape input, int num_classes, int hidden) {
  return Architecture{"mlp",
                      input,
                      num_classes,
                      {{LayerKind::kDense, hidden, 0},
                       {LayerKind::kRelu, 0, 0},
                       {LayerKind::kDense, num_classes, 0}}};
}

Architecture MakeArchitecture(std::string_view name, ImageShape input,
                              int num_classes) {
  if (name == "cnn") return SmallCnn(input, num_classes);
  if (name == "tiny_cnn") {
    Architecture a = SmallCnn(input, num_classes, 2, 3, 6);
    a.name = "tiny_cnn";
    return a;
  }
  if (name == "mlp") return Mlp(input, num_classes);
  throw ConfigError("unknown architecture '" + std::string(name) + "'");
}

Network::Network(Architecture arch) : arch_(std::move(arch)) {
  if (arch_.input.size() == 0) throw ConfigError("architecture has empty input");
  if (arch_.layers.empty() || arch_.layers.back().kind != LayerKind::kDense ||
      arch_.layers.back().size != arch_.num_classes)
    throw ConfigError("architecture must end in dense(" +
                      std::to_string(arch_.num_classes) + ")");
  Dims d{arch_.input.channels, arch_.input.height, arch_.input.width};
  std::vector<Segment> segments;
  size_t offset = 0;
  for (size_t i = 0; i < arch_.layers.size(); ++i) {
    Plan p;
    p.spec = arch_.layers[i];
    p.in = d;
    const std::string prefix = "layer" + std::to_string(i) + ".";
    switch (p.spec.kind) {
      case LayerKind::kConv2d: {
        if (p.spec.size <= 0 || p.spec.kernel <= 0 || p.spec.kernel % 2 == 0)
          throw ConfigError("conv2d needs positive channels and odd kernel");
        const int k = p.spec.kernel;
        p.out = Dims{p.spec.size, d.h, d.w};
        const size_t nw = static_cast<size_t>(p.spec.size) * d.c * k * k;
        segments.push_back({prefix + "weight", {p.spec.size, d.c, k, k}, 0, 0});
        segments.push_back({prefix + "bias", {p.spec.size}, 0, 0});
        p.weight_offset = offset;
        p.bias_offset = offset + nw;
        offset += nw + p.spec.size;
        forward_macs_ += static_cast<uint64_t>(nw) * d.h * d.w;
        break;
      }
      case LayerKind::kRelu:
        p.out = d;
        break;
      case LayerKind::kMaxPool2:
        if (d.h < 2 || d.w < 2) throw ConfigError("maxpool2 on a map smaller than 2x2");
        p.out = Dims{d.c, d.h / 2, d.w / 2};
        break;
      case LayerKind::kDense: {
        if (p.spec.size <= 0) throw ConfigError("dense needs positive units");
        const int fan_in = static_cast<int>(d.size());
        p.out = Dims{p.spec.size, 1, 1};
        segments.push_back({prefix + "weight", {p.spec.size, fan_in}, 0, 0});
        segments.push_back({prefix + "bias", {p.spec.size}, 0, 0});
        p.weight_offset = offset;
        p.bias_offset = offset + static_cast<size_t>(p.spec.size) * fan_in;
        offset += static_cast<size_t>(p.spec.size) * (fan_in + 1);
        forward_macs_ += static_cast<uint64_t>(p.spec.size) * fan_in;
        break;
      }
    }
    d = p.out;
    plans_.push_back(p);
  }
  layout_ = std::make_shared<const ParameterLayout>(std::move(segments));
}

ParameterVector Network::InitParameters(uint64_t seed) const {
  ParameterVector params(layout_);
  auto w = params.mutable_values();
  Rng rng = MakeRng(seed, Stream::kInit);
  for (const auto& p : plans_) {
    size_t fan_in = 0, count = 0;
    if (p.spec.kind == LayerKind::kConv2d) {
      fan_in = static_cast<size_t>(p.in.c) * p.spec.kernel * p.spec.kernel;
      count = fan_in * p.spec.size;
    } else if (p.spec.kind == LayerKind::kDense) {
      fan_in = p.in.size();
      count = fan_in * p.spec.size;
    } else {
      continue;
    }
    const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
    for (size_t i = 0; i < count; ++i)
      w[p.weight_offset + i] = stddev * StandardNormal(rng);
  }
  return params;
}

SampleCache Network::NewCache() const {
  SampleCache cache;
  cache.acts.resize(plans_.size() + 1);
  cache.argmax.resize(plans_.size());
  cache.acts[0].resize(arch_.input.size());
  size_t widest = arch_.input.size();
  for (size_t i = 0; i < plans_.size(); ++i) {
    cache.acts[i + 1].resize(plans_[i].out.size());
    if (plans_[i].spec.kind == LayerKind::kMaxPool2)
      cache.argmax[i].resize(plans_[i].out.size());
    widest = std::max(widest, plans_[i].out.size());
  }
  cache.probs.resize(arch_.num_classes);
  cache.delta_a.resize(widest);
  cache.delta_b.resize(widest);
  return cache;
}

void Network::Forward(std::span<const double> params,
                      std::span<const float> image, SampleCache& cache) const {
  if (image.size() != arch_.input.size())
    throw ConfigError("input of " + std::to_string(image.size()) +
                      " values does not match architecture input " +
                      arch_.input.ToString());
  if (params.size() != layout_->total_size())
    throw ConfigError("parameter vector does not match architecture");
  if (cache.acts.size() != plans_.size() + 1) cache = NewCache();

  // HWC -> CHW.
  const int H = arch_.input.height, W = arch_.input.width, C = arch_.input.channels;
  auto& in0 = cache.acts[0];
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x)
      for (int c = 0; c < C; ++c)
        in0[(static_cast<size_t>(c) * H + y) * W + x] =
            image[(static_cast<size_t>(y) * W + x) * C + c];

  for (size_t li = 0; li < plans_.size(); ++li) {
    const Plan& p = plans_[li];
    const double* in = cache.acts[li].data();
    double* out = cache.acts[li + 1].data();
    switch (p.spec.kind) {
      case LayerKind::kConv2d: {
        const int k = p.spec.kernel, pad = k / 2;
        const int h = p.in.h, w = p.in.w;
        const double* wt = params.data() + p.weight_offset;
        const double* bias = params.data() + p.bias_offset;
        for (int o = 0; o < p.out.c; ++o) {
          double* om = out + static_cast<size_t>(o) * h * w;
          std::fill(om, om + static_cast<size_t>(h) * w, bias[o]);
          for (int c = 0; c < p.in.c; ++c) {
            const double* im = in + static_cast<size_t>(c) * h * w;
            for (int ky = 0; ky < k; ++ky) {
              const int dy = ky - pad;
              const int y0 = std::max(0, -dy), y1 = std::min(h, h - dy);
              for (int kx = 0; kx < k; ++kx) {
                const int dx = kx - pad;
                const int x0 = std::max(0, -dx), x1 = std::min(w, w - dx);
                const double wv = wt[((static_cast<size_t>(o) * p.in.c + c) * k + ky) * k + kx];
                for (int y = y0; y < y1; ++y) {
                  double* orow = om + static_cast<size_t>(y) * w;
                  const double* irow = im + static_cast<size_t>(y + dy) * w + dx;
                  for (int x = x0; x < x1; ++x) orow[x] += wv * irow[x];
                }
              }
            }
          }
        }
        break;
      }
      case LayerKind::kRelu:
        for (size_t i = 0; i < p.out.size(); ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
        break;
      case LayerKind::kMaxPool2: {
        int* arg = cache.argmax[li].data();
        for (int c = 0; c < p.out.c; ++c)
          for (int y = 0; y < p.out.h; ++y)
            for (int x = 0; x < p.out.w; ++x) {
              int best = (c * p.in.h + 2 * y) * p.in.w + 2 * x;
              for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 2; ++i) {
                  const int idx = (c * p.in.h + 2 * y + j) * p.in.w + 2 * x + i;
                  if (in[idx] > in[best]) best = idx;
                }
              const int o = (c * p.out.h + y) * p.out.w + x;
              out[o] = in[best];
              arg[o] = best;
            }
        break;
      }
      case LayerKind::kDense: {
        const size_t n_in = p.in.size();
        const double* wt = params.data() + p.weight_offset;
        const double* bias = params.data() + p.bias_offset;
        for (int j = 0; j < p.spec.size; ++j) {
          const double* row = wt + static_cast<size_t>(j) * n_in;
          double acc = 0.0;
          for (size_t i = 0; i < n_in; ++i) acc += row[i] * in[i];
          out[j] = acc + bias[j];
        }
        break;
      }
    }
  }
  Softmax(cache.acts.back(), cache.probs);
}

void Network::Backward(std::span<const double> params, SampleCache& cache,
                       std::span<const double> dlogits,
                       std::span<double> grad) const {
  if (dlogits.size() != static_cast<size_t>(arch_.num_classes))
    throw ConfigError("logit gradient has wrong length");
  if (grad.size() != layout_->total_size())
    throw ConfigError("gradient buffer does not match architecture");
  double* dout = cache.delta_a.data();
  double* din = cache.delta_b.data();
  std::copy(dlogits.begin(), dlogits.end(), dout);

  for (size_t li = plans_.size(); li-- > 0;) {
    const Plan& p = plans_[li];
    const double* in = cache.acts[li].data();
    const bool need_din = li > 0;
    switch (p.spec.kind) {
      case LayerKind::kConv2d: {
        const int k = p.spec.kernel, pad = k / 2;
        const int h = p.in.h, w = p.in.w;
        const double* wt = params.data() + p.weight_offset;
        double* gw = grad.data() + p.weight_offset;
        double* gb = grad.data() + p.bias_offset;
        if (need_din) std::fill(din, din + p.in.size(), 0.0);
        for (int o = 0; o < p.out.c; ++o) {
          const double* dm = dout + static_cast<size_t>(o) * h * w;
          double bsum = 0.0;
          for (size_t i = 0; i < static_cast<size_t>(h) * w; ++i) bsum += dm[i];
          gb[o] += bsum;
          for (int c = 0; c < p.in.c; ++c) {
            const double* im = in + static_cast<size_t>(c) * h * w;
            double* dim = din + static_cast<size_t>(c) * h * w;
            for (int ky = 0; ky < k; ++ky) {
              const int dy = ky - pad;
              const int y0 = std::max(0, -dy), y1 = std::min(h, h - dy);
              for (int kx = 0; kx < k; ++kx) {
                const int dx = kx - pad;
                const int x0 = std::max(0, -dx), x1 = std::min(w, w - dx);
                const size_t wi = ((static_cast<size_t>(o) * p.in.c + c) * k + ky) * k + kx;
                const double wv = wt[wi];
                double acc = 0.0;
                for (int y = y0; y < y1; ++y) {
                  const double* drow = dm + static_cast<size_t>(y) * w;
                  const double* irow = im + static_cast<size_t>(y + dy) * w + dx;
                  for (int x = x0; x < x1; ++x) acc += drow[x] * irow[x];
                  if (need_din) {
                    double* dirow = dim + static_cast<size_t>(y + dy) * w + dx;
                    for (int x = x0; x < x1; ++x) dirow[x] += wv * drow[x];
                  }
                }
                gw[wi] += acc;
              }
            }
          }
        }
        break;
      }
      case LayerKind::kRelu: {
        const double* out = cache.acts[li + 1].data();
        for (size_t i = 0; i < p.in.size(); ++i) din[i] = out[i] > 0.0 ? dout[i] : 0.0;
        break;
      }
      case LayerKind::kMaxPool2: {
        const int* arg = cache.argmax[li].data();
        std::fill(din, din + p.in.size(), 0.0);
        for (size_t o = 0; o < p.out.size(); ++o) din[arg[o]] += dout[o];
        break;
      }
      case LayerKind::kDense: {
        const size_t n_in = p.in.size();
        const double* wt = params.data() + p.weight_offset;
        double* gw = grad.data() + p.weight_offset;
        double* gb = grad.data() + p.bias_offset;
        if (need_din) std::fill(din, din + n_in, 0.0);
        for (int j = 0; j < p.spec.size; ++j) {
          const double d = dout[j];
          gb[j] += d;
          double* grow = gw + static_cast<size_t>(j) * n_in;
          for (size_t i = 0; i < n_in; ++i) grow[i] += d * in[i];
          if (need_din) {
            const double* row = wt + static_cast<size_t>(j) * n_in;
            for (size_t i = 0; i < n_in; ++i) din[i] += d * row[i];
          }
        }
        break;
      }
    }
    std::swap(din, dout);
  }
}

}  // namespace fedrobust::model

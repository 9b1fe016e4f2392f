#include "mlc/resnet.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "mlc/error.hpp"

namespace mlc {
namespace {

using RowMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Activation {
  std::vector<float> data;  // [c][h][w]
  int c = 0;
  int h = 0;
  int w = 0;
};

Activation conv(const ConvLayer& layer, const Activation& x, std::vector<float>& col) {
  const int k = layer.kernel;
  const int s = layer.stride;
  const int pad = k / 2;
  Activation y;
  y.c = layer.out;
  y.h = (x.h + 2 * pad - k) / s + 1;
  y.w = (x.w + 2 * pad - k) / s + 1;
  const int rows = x.c * k * k;
  const int cols = y.h * y.w;
  col.assign(static_cast<std::size_t>(rows) * cols, 0.0f);
  for (int ci = 0; ci < x.c; ++ci) {
    const float* plane = x.data.data() + static_cast<std::size_t>(ci) * x.h * x.w;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        float* dst = col.data() + static_cast<std::size_t>((ci * k + ky) * k + kx) * cols;
        for (int oy = 0; oy < y.h; ++oy) {
          const int iy = oy * s + ky - pad;
          if (iy < 0 || iy >= x.h) continue;
          for (int ox = 0; ox < y.w; ++ox) {
            const int ix = ox * s + kx - pad;
            if (ix >= 0 && ix < x.w) dst[oy * y.w + ox] = plane[iy * x.w + ix];
          }
        }
      }
    }
  }
  y.data.resize(static_cast<std::size_t>(y.c) * cols);
  Eigen::Map<const RowMatrix> wm(layer.weight.data(), layer.out, rows);
  Eigen::Map<const RowMatrix> cm(col.data(), rows, cols);
  Eigen::Map<RowMatrix> ym(y.data.data(), y.c, cols);
  ym.noalias() = wm * cm;
  Eigen::Map<const Eigen::VectorXf> bias(layer.bias.data(), layer.out);
  ym.colwise() += bias;
  return y;
}

void relu(std::vector<float>& v) {
  for (float& f : v) f = std::max(f, 0.0f);
}

std::vector<double> dense(const DenseLayer& layer, const std::vector<double>& x) {
  std::vector<double> y(static_cast<std::size_t>(layer.out));
  for (int o = 0; o < layer.out; ++o) {
    double acc = layer.bias[o];
    const float* row = layer.weight.data() + static_cast<std::size_t>(o) * layer.in;
    for (int i = 0; i < layer.in; ++i) acc += static_cast<double>(row[i]) * x[i];
    y[o] = acc;
  }
  return y;
}

}  // namespace

Prediction softmax(double a, double b) {
  Prediction p;
  p.logit_not_optimal = a;
  p.logit_optimal = b;
  const double m = std::max(a, b);
  const double ea = std::exp(a - m);
  const double eb = std::exp(b - m);
  p.p_not_optimal = ea / (ea + eb);
  p.p_optimal = eb / (ea + eb);
  return p;
}

Prediction forward(const WeightBundle& wb, std::span<const float> image) {
  const Architecture& a = wb.arch;
  const std::size_t expected = static_cast<std::size_t>(a.channels) * a.image * a.image;
  if (image.size() != expected) {
    throw ContractError("forward: image holds " + std::to_string(image.size()) +
                        " values, the network expects " + std::to_string(expected));
  }
  if (a.outputs != 2) throw ContractError("forward: a two-way output head is required");

  std::vector<float> col;
  Activation x{std::vector<float>(image.begin(), image.end()), a.channels, a.image, a.image};
  x = conv(wb.stem, x, col);
  relu(x.data);
  for (const auto& blk : wb.blocks) {
    Activation y = conv(blk.conv1, x, col);
    relu(y.data);
    y = conv(blk.conv2, y, col);
    const Activation s = conv(blk.shortcut, x, col);
    for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += s.data[i];
    relu(y.data);
    x = std::move(y);
  }

  const std::size_t plane = static_cast<std::size_t>(x.h) * x.w;
  std::vector<double> pooled(static_cast<std::size_t>(x.c));
  for (int c = 0; c < x.c; ++c) {
    double sum = 0;
    for (std::size_t i = 0; i < plane; ++i) sum += x.data[c * plane + i];
    pooled[c] = sum / static_cast<double>(plane);
  }
  auto hidden = dense(wb.fc, pooled);
  for (double& h : hidden) h = std::max(h, 0.0);
  const auto logits = dense(wb.out, hidden);
  return softmax(logits[0], logits[1]);
}

Prediction forward(const WeightBundle& wb, const ContextImage& img) {
  return forward(wb, std::span<const float>(img.data));
}

bool decide(const Prediction& p, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ContractError("confidence threshold must lie in (0, 1)");
  }
  return p.p_optimal > threshold;
}

ModelPolicy::ModelPolicy(std::shared_ptr<const WeightBundle> weights, double threshold,
                         RenderOptions render)
    : weights_(std::move(weights)), threshold_(threshold), render_(render) {
  if (!weights_) throw ContractError("model policy needs weights");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ContractError("confidence threshold must lie in (0, 1)");
  }
  const Architecture& a = weights_->arch;
  if (a.image != kImageSize || a.channels != kImageChannels) {
    throw ContractError("model policy needs a 96x96x3 network");
  }
}

void ModelPolicy::begin(const Instance& inst) {
  if (!inst.has_coords()) throw ContractError("model policy needs vertex coordinates");
  probabilities_.clear();
}

bool ModelPolicy::decide(const EdgeQuery& q) {
  const auto img = render_context(q.instance, q.candidates, q.solution, q.entry.i, q.entry.j, render_);
  const Prediction p = forward(*weights_, img);
  probabilities_.push_back(p.p_optimal);
  return mlc::decide(p, threshold_);
}

}  // namespace mlc

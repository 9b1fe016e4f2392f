#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mlc/ml_constructive.hpp"
#include "mlc/render.hpp"
#include "mlc/weights.hpp"

namespace mlc {

inline constexpr double kDefaultThreshold = 0.99;

/// Output index 0 is "not optimal", index 1 is "optimal".
struct Prediction {
  double logit_not_optimal = 0;
  double logit_optimal = 0;
  double p_not_optimal = 0.5;
  double p_optimal = 0.5;
};

/// Convolutions run in float32 through im2col and a single-threaded GEMM;
/// pooling, the dense head and the softmax run in double. Throws
/// ContractError when the image size does not match the architecture.
Prediction forward(const WeightBundle& wb, std::span<const float> image);
Prediction forward(const WeightBundle& wb, const ContextImage& img);

/// Two-way softmax of (not, optimal) logits, max-shifted.
Prediction softmax(double logit_not_optimal, double logit_optimal);

/// p_optimal > threshold, strictly. threshold must lie in (0, 1).
bool decide(const Prediction& p, double threshold = kDefaultThreshold);

/// Decision-taker backed by the classifier (ML-C). The blue channel shows the
/// live partial solution. Probabilities of every query are kept for
/// inspection.
class ModelPolicy final : public DecisionTaker {
 public:
  ModelPolicy(std::shared_ptr<const WeightBundle> weights, double threshold = kDefaultThreshold,
              RenderOptions render = {});

  std::string name() const override { return "ml-c"; }
  void begin(const Instance& inst) override;
  bool decide(const EdgeQuery& q) override;

  const std::vector<double>& probabilities() const { return probabilities_; }

 private:
  std::shared_ptr<const WeightBundle> weights_;
  double threshold_;
  RenderOptions render_;
  std::vector<double> probabilities_;
};

}  // namespace mlc

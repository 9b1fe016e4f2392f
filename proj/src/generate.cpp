#include "mlc/generate.hpp"

#include "mlc/error.hpp"

namespace mlc {

Instance random_uniform_instance(int n, Rng& rng, std::string name) {
  if (n < 3) throw ContractError("instances need at least 3 vertices");
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  return Instance::from_points(std::move(name), std::move(pts), EdgeWeightType::kEuc2DReal);
}

std::vector<Instance> generate_instances(int count, int n_min, int n_max, std::uint64_t seed) {
  if (count < 0) throw ContractError("instance count must be non-negative");
  if (n_min < 3 || n_max < n_min) throw ContractError("need 3 <= n_min <= n_max");
  Rng rng(seed);
  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(count));
  const auto span = static_cast<std::uint64_t>(n_max - n_min + 1);
  for (int c = 0; c < count; ++c) {
    const int n = n_min + static_cast<int>(uniform_below(rng, span));
    out.push_back(random_uniform_instance(n, rng, "u" + std::to_string(seed) + "-" + std::to_string(c)));
  }
  return out;
}

}  // namespace mlc

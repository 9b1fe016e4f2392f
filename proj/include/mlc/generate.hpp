#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlc/instance.hpp"
#include "mlc/random.hpp"

namespace mlc {

/// n points uniform in the unit square, EUC_2D_REAL costs.
Instance random_uniform_instance(int n, Rng& rng, std::string name);

/// `count` instances, n uniform in [n_min, n_max]; reproducible under seed.
/// Names are "u<seed>-<index>".
std::vector<Instance> generate_instances(int count, int n_min, int n_max, std::uint64_t seed);

}  // namespace mlc

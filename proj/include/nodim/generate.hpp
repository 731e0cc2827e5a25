#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "nodim/colorful.hpp"
#include "nodim/geom.hpp"

namespace nodim {

enum class Distribution { kUniform, kGaussian, kClustered };

Distribution distribution_from_string(const std::string& s);
std::string to_string(Distribution d);

/// Seeded synthetic clouds. The stream is mt19937_64; a uniform variate is
/// (x >> 11) * 2^-53, Gaussians use Box-Muller on two uniforms, and the
/// clustered mode draws 4 centres in [-1,1]^d then adds N(0, 0.1^2) noise
/// around a centre picked uniformly per point. Uniform samples lie in
/// [-1,1)^d, Gaussian ones are standard normal.
PointSet generate_points(Distribution dist, std::size_t n, std::size_t d, std::uint64_t seed);

/// `classes` colour classes of `k` points each, drawn from one stream.
ColorInstance generate_classes(Distribution dist, std::size_t classes, std::size_t k, std::size_t d,
                               std::uint64_t seed);

}  // namespace nodim

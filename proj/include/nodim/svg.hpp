#pragma once

#include <string>

#include "nodim/colorful.hpp"
#include "nodim/tverberg.hpp"

namespace nodim {

/// Planar drawing: one diamond per point coloured by part, one square per
/// part centroid, one circle for the ball. Throws unless d = 2.
std::string render_svg(const PointSet& points, const TverbergCertificate& cert);

/// Two panels: the colour classes as given, then the colorful sets with
/// their centroids and the ball.
std::string render_svg(const ColorInstance& instance, const ColorfulCertificate& cert);

}  // namespace nodim

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nodim/colorful.hpp"
#include "nodim/geom.hpp"

namespace nodim::io {

/// Raw file contents; throws Error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

/// "sha256:" followed by 64 lowercase hex digits.
std::string sha256_digest(const std::string& bytes);

/// One point per row, fields separated by commas and/or whitespace. A first
/// row that does not parse as numbers is taken as a header. Blank lines and
/// lines starting with '#' are skipped. Throws ParseError with the line.
PointSet parse_csv(const std::string& text);

/// {"dim": d, "points": [[...], ...]}
PointSet parse_points_json(const std::string& text);
/// {"dim": d, "classes": [[[...], ...], ...]}; ragged classes surface as
/// InvalidArgument from ColorInstance.
ColorInstance parse_classes_json(const std::string& text);

/// Dispatches on the first non-blank character: '{' means JSON.
PointSet parse_points(const std::string& text);

/// Rows with %.17g and commas, no header.
std::string format_csv(const PointSet& s);
std::string format_classes_json(const ColorInstance& instance);

}  // namespace nodim::io

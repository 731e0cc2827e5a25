#include "nodim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "nodim/errors.hpp"

namespace nodim {

namespace {

constexpr const char* kPalette[12] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};
constexpr double kPanel = 480.0;
constexpr double kGlyph = 4.0;

struct Frame {
  double min_x, min_y, span;
  double offset;  // horizontal panel offset

  double x(double v) const { return offset + (v - min_x) / span * kPanel; }
  double y(double v) const { return (min_y + span - v) / span * kPanel; }
  double len(double v) const { return v / span * kPanel; }
};

// Bounding box of the data plus 10% margin, made square so the ball stays
// round.
Frame frame_for(const std::vector<ConstVec>& pts, const Ball& ball) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  }
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (span <= 0.0) span = std::max(1.0, ball.radius * 2.0);
  const double margin = 0.1 * span;
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  const double full = span + 2.0 * margin;
  return Frame{cx - 0.5 * full, cy - 0.5 * full, full, 0.0};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void diamond(std::string& out, const Frame& f, ConstVec p, const char* colour, const char* cls) {
  const double x = f.x(p[0]);
  const double y = f.y(p[1]);
  out += "  <polygon class=\"" + std::string(cls) + "\" fill=\"" + colour + "\" points=\"" + num(x) + "," +
         num(y - kGlyph) + " " + num(x + kGlyph) + "," + num(y) + " " + num(x) + "," + num(y + kGlyph) + " " +
         num(x - kGlyph) + "," + num(y) + "\"/>\n";
}

void square(std::string& out, const Frame& f, ConstVec p, const char* colour) {
  const double s = 2.0 * kGlyph;
  out += "  <rect class=\"centroid\" fill=\"" + std::string(colour) + "\" stroke=\"black\" x=\"" +
         num(f.x(p[0]) - s / 2) + "\" y=\"" + num(f.y(p[1]) - s / 2) + "\" width=\"" + num(s) + "\" height=\"" +
         num(s) + "\"/>\n";
}

void circle(std::string& out, const Frame& f, const Ball& b) {
  out += "  <circle class=\"ball\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\" cx=\"" +
         num(f.x(b.center[0])) + "\" cy=\"" + num(f.y(b.center[1])) + "\" r=\"" + num(f.len(b.radius)) + "\"/>\n";
}

std::string header(double width) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(width) + "\" height=\"" + num(kPanel) + "\" viewBox=\"0 0 " + num(width) + " " + num(kPanel) +
         "\">\n  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(kPanel) +
         "\" fill=\"white\"/>\n";
}

}  // namespace

std::string render_svg(const PointSet& points, const TverbergCertificate& cert) {
  if (points.dim() != 2) throw InvalidArgument("SVG output needs planar points");
  std::vector<ConstVec> pts;
  for (std::size_t a = 0; a < points.size(); ++a) pts.push_back(points[a]);
  const Frame f = frame_for(pts, cert.ball);
  std::string out = header(kPanel);
  for (std::size_t a = 0; a < points.size(); ++a) diamond(out, f, points[a], kPalette[cert.assignment[a] % 12], "point");
  for (std::size_t i = 0; i < cert.part_centroids.size(); ++i) square(out, f, cert.part_centroids[i], kPalette[i % 12]);
  circle(out, f, cert.ball);
  out += "</svg>\n";
  return out;
}

std::string render_svg(const ColorInstance& instance, const ColorfulCertificate& cert) {
  if (instance.dim() != 2) throw InvalidArgument("SVG output needs planar points");
  std::vector<ConstVec> pts;
  for (const auto& c : instance.all())
    for (std::size_t a = 0; a < c.size(); ++a) pts.push_back(c[a]);
  Frame left = frame_for(pts, cert.ball);
  Frame right = left;
  right.offset = kPanel;
  std::string out = header(2.0 * kPanel);
  out += "  <line x1=\"" + num(kPanel) + "\" y1=\"0\" x2=\"" + num(kPanel) + "\" y2=\"" + num(kPanel) +
         "\" stroke=\"#999999\"/>\n";
  for (std::size_t a = 0; a < instance.classes(); ++a)
    for (std::size_t m = 0; m < instance.k(); ++m) diamond(out, left, instance[a][m], kPalette[a % 12], "input-point");
  for (std::size_t m = 0; m < cert.colorful_sets.size(); ++m)
    for (auto [a, member] : cert.colorful_sets[m]) diamond(out, right, instance[a][member], kPalette[m % 12], "point");
  for (std::size_t m = 0; m < cert.centroids.size(); ++m) square(out, right, cert.centroids[m], kPalette[m % 12]);
  circle(out, right, cert.ball);
  out += "</svg>\n";
  return out;
}

}  // namespace nodim

#include "nodim/io.hpp"

#include <openssl/evp.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nodim/errors.hpp"

namespace nodim::io {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << data;
  if (!out) throw Error("write failed for '" + path + "'");
}

std::string sha256_digest(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

namespace {

// Comma separated when the line has a comma, whitespace separated otherwise.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  if (line.find(',') != std::string::npos) {
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      const auto b = f.find_first_not_of(" \t\r");
      const auto e = f.find_last_not_of(" \t\r");
      out.push_back(b == std::string::npos ? std::string() : f.substr(b, e - b + 1));
    }
    if (line.back() == ',') out.emplace_back();
    return out;
  }
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) out.push_back(f);
  return out;
}

bool parse_double(const std::string& field, double& value) {
  if (field.empty()) return false;
  const char* begin = field.c_str();
  char* end = nullptr;
  errno = 0;
  value = std::strtod(begin, &end);
  return end == begin + field.size();
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

Point json_point(const json& row, std::size_t dim, const std::string& where) {
  if (!row.is_array()) throw ParseError(where + " is not an array", 0);
  if (row.size() != dim) {
    throw ParseError(where + " has " + std::to_string(row.size()) + " coordinates, expected " + std::to_string(dim), 0);
  }
  Point p;
  p.reserve(dim);
  for (const auto& v : row) {
    if (!v.is_number()) throw ParseError(where + " has a non-numeric coordinate", 0);
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(where + " has a non-finite coordinate", 0);
    p.push_back(x);
  }
  return p;
}

std::size_t json_dim(const json& doc, const json& first_row) {
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() == 0)
      throw ParseError("\"dim\" must be a positive integer", 0);
    return doc["dim"].get<std::size_t>();
  }
  if (first_row.is_array() && !first_row.empty()) return first_row.size();
  throw ParseError("cannot determine the dimension", 0);
}

}  // namespace

PointSet parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t dim = 0;
  bool seen_row = false;
  PointSet out;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line.front() == '#') continue;
    const auto fields = split_fields(line);
    std::vector<double> values;
    values.reserve(fields.size());
    bool numeric = !fields.empty();
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) {
        numeric = false;
        break;
      }
      values.push_back(v);
    }
    if (!seen_row) {
      seen_row = true;
      if (!numeric) {
        dim = fields.size();  // header
        continue;
      }
    }
    if (!numeric) throw ParseError("non-numeric field", lineno);
    if (dim == 0) dim = values.size();
    if (values.size() != dim) {
      throw ParseError("expected " + std::to_string(dim) + " fields, found " + std::to_string(values.size()), lineno);
    }
    for (double v : values)
      if (!std::isfinite(v)) throw ParseError("non-finite value", lineno);
    if (out.dim() == 0) out = PointSet(dim);
    out.push_back(values);
  }
  if (out.empty()) throw ParseError("no points in input", lineno);
  return out;
}

PointSet parse_points_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw ParseError("expected an object with a \"points\" array", 0);
  const json& rows = doc["points"];
  if (rows.empty()) throw ParseError("no points in input", 0);
  const std::size_t dim = json_dim(doc, rows.front());
  PointSet out(dim);
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(json_point(rows[i], dim, "point " + std::to_string(i)));
  return out;
}

ColorInstance parse_classes_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_array())
    throw ParseError("expected an object with a \"classes\" array", 0);
  const json& classes = doc["classes"];
  if (classes.empty()) throw ParseError("no classes in input", 0);
  if (!classes.front().is_array() || classes.front().empty()) throw ParseError("class 0 is empty", 0);
  const std::size_t dim = json_dim(doc, classes.front().front());
  std::vector<PointSet> out;
  out.reserve(classes.size());
  for (std::size_t a = 0; a < classes.size(); ++a) {
    if (!classes[a].is_array()) throw ParseError("class " + std::to_string(a) + " is not an array", 0);
    PointSet s(dim);
    for (std::size_t i = 0; i < classes[a].size(); ++i)
      s.push_back(json_point(classes[a][i], dim, "class " + std::to_string(a) + " point " + std::to_string(i)));
    out.push_back(std::move(s));
  }
  return ColorInstance(std::move(out));
}

PointSet parse_points(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') return parse_points_json(text);
  return parse_csv(text);
}

std::string format_csv(const PointSet& s) {
  std::string out;
  char buf[32];
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t t = 0; t < s.dim(); ++t) {
      std::snprintf(buf, sizeof buf, "%.17g", s[a][t]);
      if (t) out.push_back(',');
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_classes_json(const ColorInstance& instance) {
  json doc;
  doc["dim"] = instance.dim();
  json classes = json::array();
  for (const auto& c : instance.all()) {
    json rows = json::array();
    for (std::size_t a = 0; a < c.size(); ++a) rows.push_back(c.point(a));
    classes.push_back(std::move(rows));
  }
  doc["classes"] = std::move(classes);
  return doc.dump() + "\n";
}

}  // namespace nodim::io

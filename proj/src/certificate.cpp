#include "nodim/certificate.hpp"

#include "json.hpp"
#include "nodim/errors.hpp"

namespace nodim {

using nlohmann::json;

PartitionOptions partition_options(const CertificateParameters& p) {
  PartitionOptions o;
  o.arity = p.arity;
  o.search_arity = p.search_arity;
  o.rule = p.rule;
  o.exact_diameter_limit = p.exact_diameter_limit;
  o.summation = p.summation;
  return o;
}

namespace {

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(p);
  return out;
}

json ball_json(const Ball& b) { return {{"center", b.center}, {"radius", b.radius}}; }

Ball ball_from(const json& j) { return Ball{j.at("center").get<Point>(), j.at("radius").get<double>()}; }

json tverberg_json(const TverbergCertificate& c) {
  json j;
  j["mode"] = to_string(c.mode);
  j["graph"] = to_string(c.graph);
  j["arity"] = c.arity;
  j["rule"] = to_string(c.rule);
  j["n"] = c.n;
  j["dim"] = c.dim;
  j["sizes"] = c.sizes;
  j["assignment"] = c.assignment;
  j["parts"] = c.parts;
  j["part_centroids"] = points_json(c.part_centroids);
  j["witnesses"] = points_json(c.witnesses);
  j["core_size"] = c.core_size;
  j["ball"] = ball_json(c.ball);
  j["radius_guaranteed"] = c.radius_guaranteed;
  j["radius_achieved"] = c.radius_achieved;
  j["bound_formula"] = c.bound_formula;
  j["traversal"] = {{"centroid_norm", c.traversal_centroid_norm}, {"bound", c.traversal_bound}};
  j["diameter"] = {{"value", c.diameter.value}, {"exact", c.diameter.exact}};
  j["fallback_steps"] = c.fallback_steps;
  return j;
}

TverbergCertificate tverberg_from(const json& j) {
  TverbergCertificate c;
  c.mode = partition_mode_from_string(j.at("mode").get<std::string>());
  c.graph = graph_kind_from_string(j.at("graph").get<std::string>());
  c.arity = j.at("arity").get<std::size_t>();
  c.rule = selection_rule_from_string(j.at("rule").get<std::string>());
  c.n = j.at("n").get<std::size_t>();
  c.dim = j.at("dim").get<std::size_t>();
  c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  c.assignment = j.at("assignment").get<std::vector<std::size_t>>();
  c.parts = j.at("parts").get<std::vector<std::vector<std::size_t>>>();
  c.part_centroids = j.at("part_centroids").get<std::vector<Point>>();
  c.witnesses = j.at("witnesses").get<std::vector<Point>>();
  c.core_size = j.at("core_size").get<std::size_t>();
  c.ball = ball_from(j.at("ball"));
  c.radius_guaranteed = j.at("radius_guaranteed").get<double>();
  c.radius_achieved = j.at("radius_achieved").get<double>();
  c.bound_formula = j.at("bound_formula").get<std::string>();
  c.traversal_centroid_norm = j.at("traversal").at("centroid_norm").get<double>();
  c.traversal_bound = j.at("traversal").at("bound").get<double>();
  c.diameter.value = j.at("diameter").at("value").get<double>();
  c.diameter.exact = j.at("diameter").at("exact").get<bool>();
  c.fallback_steps = j.at("fallback_steps").get<std::size_t>();
  return c;
}

json colorful_json(const ColorfulCertificate& c) {
  json j;
  j["classes"] = c.classes;
  j["k"] = c.k;
  j["dim"] = c.dim;
  j["shifts"] = c.shifts;
  json sets = json::array();
  for (const auto& set : c.colorful_sets) {
    json s = json::array();
    for (auto [a, m] : set) s.push_back({a, m});
    sets.push_back(std::move(s));
  }
  j["colorful_sets"] = std::move(sets);
  j["centroids"] = points_json(c.centroids);
  j["ball"] = ball_json(c.ball);
  j["radius_guaranteed"] = c.radius_guaranteed;
  j["radius_achieved"] = c.radius_achieved;
  j["max_class_diameter"] = c.max_class_diameter;
  j["traversal"] = {{"centroid_norm", c.traversal_centroid_norm}, {"bound", c.traversal_bound}};
  return j;
}

ColorfulCertificate colorful_from(const json& j) {
  ColorfulCertificate c;
  c.classes = j.at("classes").get<std::size_t>();
  c.k = j.at("k").get<std::size_t>();
  c.dim = j.at("dim").get<std::size_t>();
  c.shifts = j.at("shifts").get<std::vector<std::size_t>>();
  for (const auto& s : j.at("colorful_sets")) {
    std::vector<std::pair<std::size_t, std::size_t>> set;
    for (const auto& pr : s) set.emplace_back(pr.at(0).get<std::size_t>(), pr.at(1).get<std::size_t>());
    c.colorful_sets.push_back(std::move(set));
  }
  c.centroids = j.at("centroids").get<std::vector<Point>>();
  c.ball = ball_from(j.at("ball"));
  c.radius_guaranteed = j.at("radius_guaranteed").get<double>();
  c.radius_achieved = j.at("radius_achieved").get<double>();
  c.max_class_diameter = j.at("max_class_diameter").get<double>();
  c.traversal_centroid_norm = j.at("traversal").at("centroid_norm").get<double>();
  c.traversal_bound = j.at("traversal").at("bound").get<double>();
  return c;
}

json depth_json(const DepthCertificate& c) {
  json j;
  j["k"] = c.k;
  j["dim"] = c.dim;
  j["chain"] = {{"origin", c.chain.origin},
                {"axes", points_json(c.chain.axes)},
                {"lines", points_json(c.chain.lines)},
                {"fallback", c.chain.fallback},
                {"complement_basis", points_json(c.chain.complement_basis)}};
  j["ball"] = ball_json(c.ball);
  j["ball_center_intrinsic"] = c.ball_center_intrinsic;
  j["radius_achieved"] = c.radius_achieved;
  j["existential_radius"] = c.existential_radius;
  j["depth_lower_bounds"] = c.depth_lower_bounds;
  j["set_diameters"] = c.set_diameters;
  json sets = json::array();
  for (const auto& sd : c.per_set) {
    sets.push_back({{"m", sd.m},
                    {"parts", sd.parts},
                    {"radius_contribution", sd.radius_contribution},
                    {"witness_radius", sd.witness_radius},
                    {"partition", tverberg_json(sd.partition)}});
  }
  j["sets"] = std::move(sets);
  return j;
}

DepthCertificate depth_from(const json& j) {
  DepthCertificate c;
  c.k = j.at("k").get<std::size_t>();
  c.dim = j.at("dim").get<std::size_t>();
  const json& ch = j.at("chain");
  c.chain.ambient_dim = c.dim;
  c.chain.origin = ch.at("origin").get<Point>();
  c.chain.axes = ch.at("axes").get<std::vector<Point>>();
  c.chain.lines = ch.at("lines").get<std::vector<Point>>();
  c.chain.fallback = ch.at("fallback").get<std::vector<bool>>();
  c.chain.complement_basis = ch.at("complement_basis").get<std::vector<Point>>();
  c.ball = ball_from(j.at("ball"));
  c.ball_center_intrinsic = j.at("ball_center_intrinsic").get<Point>();
  c.radius_achieved = j.at("radius_achieved").get<double>();
  c.existential_radius = j.at("existential_radius").get<double>();
  c.depth_lower_bounds = j.at("depth_lower_bounds").get<std::vector<std::size_t>>();
  c.set_diameters = j.at("set_diameters").get<std::vector<double>>();
  for (const auto& s : j.at("sets")) {
    SetDepth sd;
    sd.m = s.at("m").get<std::size_t>();
    sd.parts = s.at("parts").get<std::size_t>();
    sd.radius_contribution = s.at("radius_contribution").get<double>();
    sd.witness_radius = s.at("witness_radius").get<double>();
    sd.partition = tverberg_from(s.at("partition"));
    c.per_set.push_back(std::move(sd));
  }
  return c;
}

}  // namespace

std::string emit(const CertificateDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["command"] = doc.command;
  j["mode"] = doc.mode;
  json inputs = json::array();
  for (const auto& in : doc.inputs) inputs.push_back({{"digest", in.digest}, {"points", in.points}, {"dim", in.dim}});
  j["inputs"] = std::move(inputs);
  const auto& p = doc.parameters;
  j["parameters"] = {{"k", p.k},
                     {"sizes", p.sizes},
                     {"m", p.m},
                     {"arity", p.arity},
                     {"search_arity", p.search_arity},
                     {"rule", to_string(p.rule)},
                     {"exact_diameter_limit", p.exact_diameter_limit},
                     {"summation", p.summation == Summation::kNaive ? "naive" : "compensated"}};
  if (doc.tverberg) j["tverberg"] = tverberg_json(*doc.tverberg);
  if (doc.colorful) j["colorful"] = colorful_json(*doc.colorful);
  if (doc.depth) j["hamsandwich"] = depth_json(*doc.depth);
  if (doc.timing_ms) j["timing_ms"] = *doc.timing_ms;
  return j.dump(2) + "\n";
}

CertificateDocument parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid certificate JSON: ") + e.what(), 0);
  }
  try {
    CertificateDocument doc;
    doc.schema_version = j.at("schema_version").get<std::string>();
    if (doc.schema_version != kSchemaVersion)
      throw ParseError("unsupported schema version '" + doc.schema_version + "'", 0);
    doc.command = j.at("command").get<std::string>();
    doc.mode = j.at("mode").get<std::string>();
    for (const auto& in : j.at("inputs")) {
      doc.inputs.push_back(
          {in.at("digest").get<std::string>(), in.at("points").get<std::size_t>(), in.at("dim").get<std::size_t>()});
    }
    const json& p = j.at("parameters");
    doc.parameters.k = p.at("k").get<std::size_t>();
    doc.parameters.sizes = p.at("sizes").get<std::vector<std::size_t>>();
    doc.parameters.m = p.at("m").get<std::vector<std::size_t>>();
    doc.parameters.arity = p.at("arity").get<std::size_t>();
    doc.parameters.search_arity = p.at("search_arity").get<std::size_t>();
    doc.parameters.rule = selection_rule_from_string(p.at("rule").get<std::string>());
    doc.parameters.exact_diameter_limit = p.at("exact_diameter_limit").get<std::size_t>();
    doc.parameters.summation = p.at("summation").get<std::string>() == "compensated" ? Summation::kCompensated
                                                                                     : Summation::kNaive;
    if (j.contains("tverberg")) doc.tverberg = tverberg_from(j["tverberg"]);
    if (j.contains("colorful")) doc.colorful = colorful_from(j["colorful"]);
    if (j.contains("hamsandwich")) doc.depth = depth_from(j["hamsandwich"]);
    if (j.contains("timing_ms")) doc.timing_ms = j["timing_ms"].get<double>();
    const int payloads = doc.tverberg.has_value() + doc.colorful.has_value() + doc.depth.has_value();
    if (payloads != 1) throw ParseError("certificate must carry exactly one payload", 0);
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  }
}

}  // namespace nodim

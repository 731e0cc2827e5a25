#include "nodim/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "nodim/bench.hpp"
#include "nodim/certificate.hpp"
#include "nodim/errors.hpp"
#include "nodim/generate.hpp"
#include "nodim/io.hpp"
#include "nodim/svg.hpp"
#include "nodim/verify.hpp"

namespace nodim {

namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::string out_path;
  bool record_timing = false;
  std::size_t search_arity = 3;
  std::string rule = "exact-expectation";
  std::size_t exact_diameter_limit = kExactDiameterLimit;
  bool compensated = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--out,-o", out_path, "Certificate path (stdout when omitted)");
    cmd->add_flag("--record-timing", record_timing, "Store wall-clock milliseconds in the certificate");
    cmd->add_option("--search-arity", search_arity, "Arity of the auxiliary search tree")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    cmd->add_option("--rule", rule, "Class selection rule: exact-expectation or surrogate");
    cmd->add_option("--exact-diameter-limit", exact_diameter_limit,
                    "Largest n for the exact diameter; above it the 2x-centroid bound is used");
    cmd->add_flag("--compensated", compensated, "Compensated summation for centroids");
  }

  CertificateParameters parameters() const {
    CertificateParameters p;
    p.search_arity = search_arity;
    p.rule = selection_rule_from_string(rule);
    p.exact_diameter_limit = exact_diameter_limit;
    p.summation = compensated ? Summation::kCompensated : Summation::kNaive;
    return p;
  }
};

struct Input {
  std::string bytes;
  std::string digest;
};

Input load(const std::string& path) {
  Input in;
  in.bytes = io::read_file(path);
  in.digest = io::sha256_digest(in.bytes);
  return in;
}

void deliver(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
  } else {
    io::write_file(path, data);
  }
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int cmd_tverberg(const std::string& input, std::size_t k, const std::vector<std::size_t>& sizes, std::size_t arity,
                 const std::string& mode, const std::string& svg, const Common& common, std::ostream& out,
                 std::ostream& err) {
  const Input in = load(input);
  const PointSet points = io::parse_points(in.bytes);

  CertificateDocument doc;
  doc.command = "tverberg";
  doc.parameters = common.parameters();
  doc.parameters.arity = arity;
  doc.inputs.push_back({in.digest, points.size(), points.dim()});
  const PartitionOptions opt = partition_options(doc.parameters);

  if (!sizes.empty() && k != 0 && k != sizes.size()) throw InvalidArgument("--k disagrees with the length of --sizes");
  const std::size_t parts = sizes.empty() ? k : sizes.size();
  if (parts == 0) throw InvalidArgument("give --k or --sizes");
  if (parts > points.size()) throw InvalidArgument("k exceeds the number of points");
  doc.parameters.k = parts;
  doc.parameters.sizes = sizes;

  std::string chosen = mode;
  if (chosen == "auto") chosen = !sizes.empty() ? "general" : (points.size() % parts == 0 ? "balanced" : "nearly_balanced");
  const auto t0 = Clock::now();
  TverbergCertificate cert;
  if (chosen == "general") {
    std::vector<std::size_t> s = sizes;
    if (s.empty()) {
      for (std::size_t i = 0; i < parts; ++i) s.push_back(points.size() / parts + (i < points.size() % parts ? 1 : 0));
    }
    const SizeSpec spec(s);
    if (spec.total() != points.size()) {
      throw InvalidArgument("sizes sum to " + std::to_string(spec.total()) + " but the input has " +
                            std::to_string(points.size()) + " points");
    }
    doc.parameters.sizes = s;
    cert = partition_general(points, spec, opt);
  } else if (chosen == "balanced") {
    if (!sizes.empty()) throw InvalidArgument("--sizes only applies to general mode");
    cert = partition_balanced(points, parts, opt);
  } else if (chosen == "nearly_balanced") {
    if (!sizes.empty()) throw InvalidArgument("--sizes only applies to general mode");
    cert = partition_nearly_balanced(points, parts, opt);
  } else {
    throw InvalidArgument("unknown mode '" + mode + "'");
  }
  if (common.record_timing) doc.timing_ms = ms_since(t0);
  doc.mode = to_string(cert.mode);
  doc.tverberg = cert;
  deliver(common.out_path, emit(doc), out);

  if (!svg.empty()) {
    if (points.dim() == 2) {
      io::write_file(svg, render_svg(points, cert));
    } else {
      err << "note: --svg skipped, input is not planar\n";
    }
  }
  return kExitOk;
}

int cmd_colorful(const std::string& input, const std::string& svg, const Common& common, std::ostream& out,
                 std::ostream& err) {
  const Input in = load(input);
  const ColorInstance inst = io::parse_classes_json(in.bytes);
  CertificateDocument doc;
  doc.command = "colorful";
  doc.mode = "colorful";
  doc.parameters = common.parameters();
  doc.parameters.k = inst.k();
  doc.inputs.push_back({in.digest, inst.total(), inst.dim()});
  const auto t0 = Clock::now();
  doc.colorful = partition_colorful(inst);
  if (common.record_timing) doc.timing_ms = ms_since(t0);
  deliver(common.out_path, emit(doc), out);
  if (!svg.empty()) {
    if (inst.dim() == 2) {
      io::write_file(svg, render_svg(inst, *doc.colorful));
    } else {
      err << "note: --svg skipped, input is not planar\n";
    }
  }
  return kExitOk;
}

int cmd_hamsandwich(const std::vector<std::string>& inputs, std::vector<std::size_t> m, const Common& common,
                    std::ostream& out) {
  std::vector<PointSet> sets;
  CertificateDocument doc;
  doc.command = "hamsandwich";
  doc.mode = "hamsandwich";
  doc.parameters = common.parameters();
  for (const auto& path : inputs) {
    const Input in = load(path);
    sets.push_back(io::parse_points(in.bytes));
    doc.inputs.push_back({in.digest, sets.back().size(), sets.back().dim()});
  }
  if (m.size() == 1 && sets.size() > 1) m.assign(sets.size(), m.front());
  if (m.size() != sets.size()) throw InvalidArgument("--m needs one value per input set");
  doc.parameters.k = sets.size();
  doc.parameters.m = m;
  const auto t0 = Clock::now();
  doc.depth = generalized_ham_sandwich(sets, m, partition_options(doc.parameters));
  if (common.record_timing) doc.timing_ms = ms_since(t0);
  deliver(common.out_path, emit(doc), out);
  return kExitOk;
}

int cmd_verify(const std::string& cert_path, const std::vector<std::string>& inputs, const VerifyOptions& vopt,
               std::ostream& out, std::ostream& err) {
  const CertificateDocument doc = parse_certificate(io::read_file(cert_path));
  if (inputs.size() != doc.inputs.size()) {
    err << "error: certificate lists " << doc.inputs.size() << " input(s), " << inputs.size() << " given\n";
    return kExitInvalid;
  }
  std::vector<Input> loaded;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    loaded.push_back(load(inputs[i]));
    if (loaded.back().digest != doc.inputs[i].digest) {
      err << "error: digest mismatch for '" << inputs[i] << "': file " << loaded.back().digest << ", certificate "
          << doc.inputs[i].digest << "\n";
      return kExitDigestMismatch;
    }
  }
  VerifyReport report;
  if (doc.colorful) {
    report = verify_certificate(doc, io::parse_classes_json(loaded.front().bytes), vopt);
  } else {
    std::vector<PointSet> sets;
    for (const auto& in : loaded) sets.push_back(io::parse_points(in.bytes));
    report = verify_certificate(doc, sets, vopt);
  }
  out << report.format();
  return report.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_gen(const std::string& dist, std::size_t n, std::size_t d, std::uint64_t seed, std::size_t classes,
            std::size_t k, const std::string& out_path, std::ostream& out) {
  const Distribution kind = distribution_from_string(dist);
  if (classes > 0) {
    if (k == 0) throw InvalidArgument("--classes needs --k");
    deliver(out_path, io::format_classes_json(generate_classes(kind, classes, k, d, seed)), out);
  } else {
    deliver(out_path, io::format_csv(generate_points(kind, n, d, seed)), out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"No-dimensional Tverberg partitions, colorful partitions and depth certificates"};
  app.name("nodim");
  app.require_subcommand(1);

  // tverberg
  Common tv_common;
  std::string tv_input, tv_svg, tv_mode = "auto";
  std::size_t tv_k = 0, tv_arity = 4;
  std::vector<std::size_t> tv_sizes;
  auto* tv = app.add_subcommand("tverberg", "Partition a point set into k parts whose hulls meet a small ball");
  tv->add_option("input", tv_input, "CSV or JSON point file")->required();
  tv->add_option("--k", tv_k, "Number of parts");
  tv->add_option("--sizes", tv_sizes, "Prescribed part sizes r1,r2,... (general mode)")->delimiter(',');
  tv->add_option("--arity", tv_arity, "Lifting tree arity for general sizes")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  tv->add_option("--mode", tv_mode, "auto, general, balanced or nearly_balanced");
  tv->add_option("--svg", tv_svg, "Write a planar drawing");
  tv_common.attach(tv);

  // colorful
  Common co_common;
  std::string co_input, co_svg;
  auto* co = app.add_subcommand("colorful", "Colorful partition of n colour classes of k points");
  co->add_option("input", co_input, "JSON file with a \"classes\" array")->required();
  co->add_option("--svg", co_svg, "Write a two-panel planar drawing");
  co_common.attach(co);

  // hamsandwich
  Common hs_common;
  std::vector<std::string> hs_inputs;
  std::vector<std::size_t> hs_m;
  auto* hs = app.add_subcommand("hamsandwich", "Common depth ball and lines for k point sets");
  hs->add_option("inputs", hs_inputs, "One point file per set")->required();
  hs->add_option("--m", hs_m, "Depth parameters m1,m2,... (one value is broadcast)")->delimiter(',')->required();
  hs_common.attach(hs);

  // verify
  std::string vf_cert;
  std::vector<std::string> vf_inputs;
  VerifyOptions vopt;
  bool no_hull = false;
  auto* vf = app.add_subcommand("verify", "Re-derive every invariant of a certificate");
  vf->add_option("certificate", vf_cert, "Certificate JSON")->required();
  vf->add_option("inputs", vf_inputs, "The input file(s) the certificate was computed from")->required();
  vf->add_option("--hull-limit", vopt.hull_limit, "Largest n for hull-distance checks");
  vf->add_option("--depth-limit", vopt.depth_limit, "Largest set for exact depth checks");
  vf->add_flag("--no-hull", no_hull, "Skip hull-distance checks");

  // gen
  std::string gen_dist = "uniform", gen_out;
  std::size_t gen_n = 100, gen_d = 2, gen_classes = 0, gen_k = 0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Write a seeded synthetic data set");
  gen->add_option("--dist", gen_dist, "uniform, gaussian or clustered");
  gen->add_option("--n", gen_n, "Number of points");
  gen->add_option("--d", gen_d, "Dimension")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--classes", gen_classes, "Emit this many colour classes (JSON) instead of CSV points");
  gen->add_option("--k", gen_k, "Points per colour class");
  gen->add_option("--out,-o", gen_out, "Output path (stdout when omitted)");

  // bench
  BenchConfig bench;
  auto* bn = app.add_subcommand("bench", "Time the partitioners over a grid and fit the growth exponent");
  bn->add_option("--algo", bench.algo, "tverberg or colorful");
  bn->add_option("--n-grid", bench.n_grid, "Values of n (points, or classes for colorful)")->delimiter(',');
  bn->add_option("--k-grid", bench.k_grid, "Colorful only: values of k at fixed n")->delimiter(',');
  bn->add_option("--k", bench.k, "Parts (tverberg) or class size (colorful)");
  bn->add_option("--d", bench.d, "Dimension");
  bn->add_option("--reps", bench.reps, "Timed samples per grid point");
  bn->add_option("--seed", bench.seed, "Generator seed");
  bn->add_option("--min-sample-ms", bench.min_sample_ms, "Batch small runs up to this duration");

  std::vector<std::string> argv_store{"nodim"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }

  try {
    if (*tv) return cmd_tverberg(tv_input, tv_k, tv_sizes, tv_arity, tv_mode, tv_svg, tv_common, out, err);
    if (*co) return cmd_colorful(co_input, co_svg, co_common, out, err);
    if (*hs) return cmd_hamsandwich(hs_inputs, hs_m, hs_common, out);
    if (*vf) {
      if (no_hull) vopt.hull_limit = 0;
      return cmd_verify(vf_cert, vf_inputs, vopt, out, err);
    }
    if (*gen) return cmd_gen(gen_dist, gen_n, gen_d, gen_seed, gen_classes, gen_k, gen_out, out);
    if (*bn) {
      const BenchResult r = run_bench(bench);
      out << format_bench(r);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  }
  return kExitInvalid;
}

}  // namespace nodim

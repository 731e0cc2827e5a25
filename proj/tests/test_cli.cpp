#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "nodim/certificate.hpp"
#include "nodim/cli.hpp"
#include "nodim/errors.hpp"
#include "nodim/generate.hpp"
#include "nodim/io.hpp"
#include "nodim/oracle.hpp"
#include "nodim/svg.hpp"
#include "nodim/verify.hpp"
#include "support.hpp"

using namespace nodim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("nodim_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("sha256 digest matches published test vectors") {
  CHECK(io::sha256_digest("") == "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_digest("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("csv parsing: separators, header, comments") {
  const PointSet s = io::parse_csv("x,y\n# comment\n1, 2\n\n3,4\n");
  REQUIRE(s.size() == 2);
  CHECK(s.dim() == 2);
  CHECK(s[1][0] == 3.0);
  const PointSet w = io::parse_csv("1 2 3\n4\t5 6\n");
  CHECK(w.size() == 2);
  CHECK(w.dim() == 3);
  CHECK(w[1][1] == 5.0);
}

TEST_CASE("csv errors carry the line number") {
  CHECK_THROWS_WITH_AS(io::parse_csv("1,2\n3,4\n5\n"), doctest::Contains("line 3"), ParseError);
  CHECK_THROWS_WITH_AS(io::parse_csv("1,2\n3,abc\n"), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(io::parse_csv("1,2\nnan,1\n"), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(io::parse_csv("# nothing\n"), ParseError);
}

TEST_CASE("json points and csv agree") {
  const PointSet s = generate_points(Distribution::kGaussian, 17, 3, 5);
  const PointSet a = io::parse_points(io::format_csv(s));
  const PointSet b = io::parse_points("{\"dim\": 3, \"points\": " + [&] {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < s.size(); ++i) j.push_back(std::vector<double>(s[i].begin(), s[i].end()));
    return j.dump();
  }() + "}");
  REQUIRE(a.size() == s.size());
  REQUIRE(b.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(a[i][t] == s[i][t]);  // %.17g round-trips exactly
      CHECK(b[i][t] == s[i][t]);
    }
  }
}

TEST_CASE("ragged colour classes are rejected") {
  CHECK_THROWS_AS(io::parse_classes_json(R"({"dim":1,"classes":[[[0],[1]],[[2]]]})"), InvalidArgument);
}

TEST_CASE("generator is deterministic per seed") {
  for (auto dist : {Distribution::kUniform, Distribution::kGaussian, Distribution::kClustered}) {
    const auto a = io::format_csv(generate_points(dist, 50, 4, 9));
    CHECK(a == io::format_csv(generate_points(dist, 50, 4, 9)));
    CHECK(a != io::format_csv(generate_points(dist, 50, 4, 10)));
  }
  const PointSet u = generate_points(Distribution::kUniform, 2000, 2, 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (double x : u[i]) {
      CHECK(x >= -1.0);
      CHECK(x < 1.0);
    }
  }
}

TEST_CASE("certificate round trip is exact") {
  TempDir dir;
  const std::string pts = dir / "p.csv";
  REQUIRE(cli({"gen", "--n", "36", "--d", "4", "--seed", "2", "--dist", "gaussian", "-o", pts}).code == 0);
  for (const std::vector<std::string>& extra : std::vector<std::vector<std::string>>{
           {"--k", "5"}, {"--k", "6", "--mode", "balanced"}, {"--sizes", "10,19,7"}, {"--k", "4", "--compensated"}}) {
    std::vector<std::string> args{"tverberg", pts, "--record-timing"};
    args.insert(args.end(), extra.begin(), extra.end());
    const Run r = cli(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const CertificateDocument doc = parse_certificate(r.out);
    CHECK(doc.timing_ms.has_value());
    CHECK(parse_certificate(emit(doc)) == doc);
    CHECK(emit(parse_certificate(r.out)) == r.out);
  }
}

TEST_CASE("colorful and hamsandwich certificates round trip") {
  const ColorInstance inst = generate_classes(Distribution::kUniform, 12, 4, 3, 4);
  CertificateDocument doc;
  doc.command = "colorful";
  doc.mode = "colorful";
  doc.colorful = partition_colorful(inst);
  CHECK(parse_certificate(emit(doc)) == doc);

  CertificateDocument hs;
  hs.command = "hamsandwich";
  hs.mode = "hamsandwich";
  hs.parameters.m = {3, 4};
  hs.depth = generalized_ham_sandwich(
      {generate_points(Distribution::kUniform, 30, 3, 1), generate_points(Distribution::kGaussian, 24, 3, 2)}, {3, 4});
  CHECK(parse_certificate(emit(hs)) == hs);
}

TEST_CASE("malformed certificates are parse errors") {
  CHECK_THROWS_AS(parse_certificate("{"), ParseError);
  CHECK_THROWS_AS(parse_certificate(R"({"schema_version":"other/9"})"), ParseError);
}

TEST_CASE("verify accepts fresh certificates and rejects tampered ones") {
  TempDir dir;
  const std::string pts = dir / "p.csv";
  const std::string cert = dir / "c.json";
  REQUIRE(cli({"gen", "--n", "60", "--d", "3", "--seed", "11", "-o", pts}).code == 0);
  REQUIRE(cli({"tverberg", pts, "--k", "7", "-o", cert}).code == 0);
  Run v = cli({"verify", cert, pts});
  CHECK_MESSAGE(v.code == kExitOk, v.out);
  CHECK(v.out.find("FAIL") == std::string::npos);

  const auto j = nlohmann::json::parse(io::read_file(cert));

  SUBCASE("moved index") {
    auto t = j;
    auto& a = t["tverberg"]["assignment"];
    a[0] = (a[0].get<std::size_t>() + 1) % 7;
    io::write_file(cert, t.dump(2));
    v = cli({"verify", cert, pts});
    CHECK(v.code == kExitVerifyFailed);
    CHECK(v.out.find("FAIL") != std::string::npos);
  }
  SUBCASE("edited radius") {
    auto t = j;
    t["tverberg"]["ball"]["radius"] = t["tverberg"]["ball"]["radius"].get<double>() * 0.5;
    io::write_file(cert, t.dump(2));
    CHECK(cli({"verify", cert, pts}).code == kExitVerifyFailed);
  }
  SUBCASE("edited guaranteed radius") {
    auto t = j;
    t["tverberg"]["radius_guaranteed"] = t["tverberg"]["radius_guaranteed"].get<double>() * 1.01;
    io::write_file(cert, t.dump(2));
    CHECK(cli({"verify", cert, pts}).code == kExitVerifyFailed);
  }
  SUBCASE("changed input") {
    io::write_file(pts, io::read_file(pts) + "0,0,0\n");
    const Run r = cli({"verify", cert, pts});
    CHECK(r.code == kExitDigestMismatch);
    CHECK(r.err.find("digest mismatch") != std::string::npos);
  }
}

TEST_CASE("verify handles colorful and hamsandwich") {
  TempDir dir;
  REQUIRE(cli({"gen", "--classes", "15", "--k", "4", "--d", "3", "-o", dir / "cl.json"}).code == 0);
  REQUIRE(cli({"colorful", dir / "cl.json", "-o", dir / "cc.json"}).code == 0);
  CHECK(cli({"verify", dir / "cc.json", dir / "cl.json"}).code == kExitOk);

  REQUIRE(cli({"gen", "--n", "40", "--d", "3", "--seed", "1", "-o", dir / "a.csv"}).code == 0);
  REQUIRE(cli({"gen", "--n", "50", "--d", "3", "--seed", "2", "--dist", "gaussian", "-o", dir / "b.csv"}).code == 0);
  REQUIRE(cli({"hamsandwich", dir / "a.csv", dir / "b.csv", "--m", "4,5", "-o", dir / "h.json"}).code == 0);
  const Run v = cli({"verify", dir / "h.json", dir / "a.csv", dir / "b.csv"});
  CHECK_MESSAGE(v.code == kExitOk, v.out);

  auto t = nlohmann::json::parse(io::read_file(dir / "h.json"));
  t["hamsandwich"]["ball"]["radius"] = 0.0;
  io::write_file(dir / "h.json", t.dump(2));
  CHECK(cli({"verify", dir / "h.json", dir / "a.csv", dir / "b.csv"}).code == kExitVerifyFailed);
}

TEST_CASE("svg glyph counts") {
  const PointSet p = generate_points(Distribution::kUniform, 23, 2, 3);
  const TverbergCertificate c = partition_nearly_balanced(p, 4);
  const std::string svg = render_svg(p, c);
  CHECK(count(svg, "<polygon class=\"point\"") == 23);
  CHECK(count(svg, "class=\"centroid\"") == 4);
  CHECK(count(svg, "class=\"ball\"") == 1);
  CHECK_THROWS_AS(render_svg(generate_points(Distribution::kUniform, 5, 3, 3), partition_balanced(
                                 generate_points(Distribution::kUniform, 5, 3, 3), 5)),
                  InvalidArgument);

  const ColorInstance inst = generate_classes(Distribution::kUniform, 9, 3, 2, 2);
  const std::string two = render_svg(inst, partition_colorful(inst));
  CHECK(count(two, "class=\"input-point\"") == 27);
  CHECK(count(two, "class=\"point\"") == 27);
  CHECK(count(two, "class=\"centroid\"") == 3);
}

TEST_CASE("svg flag skips non-planar input") {
  TempDir dir;
  REQUIRE(cli({"gen", "--n", "20", "--d", "3", "-o", dir / "p.csv"}).code == 0);
  const Run r = cli({"tverberg", dir / "p.csv", "--k", "4", "--svg", dir / "x.svg", "-o", dir / "c.json"});
  CHECK(r.code == 0);
  CHECK(!fs::exists(dir / "x.svg"));
  CHECK(r.err.find("skipped") != std::string::npos);
}

TEST_CASE("reruns are byte identical") {
  TempDir dir;
  REQUIRE(cli({"gen", "--n", "300", "--d", "5", "--seed", "8", "-o", dir / "p.csv"}).code == 0);
  for (const char* k : {"6", "7"}) {
    const Run a = cli({"tverberg", dir / "p.csv", "--k", k});
    const Run b = cli({"tverberg", dir / "p.csv", "--k", k});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("exit codes") {
  TempDir dir;
  REQUIRE(cli({"gen", "--n", "10", "--d", "2", "-o", dir / "p.csv"}).code == 0);
  io::write_file(dir / "bad.csv", "1,2\n3\n");
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({}).code == kExitParseError);
  CHECK(cli({"tverberg"}).code == kExitParseError);
  CHECK(cli({"tverberg", dir / "p.csv", "--k", "notanumber"}).code == kExitParseError);
  CHECK(cli({"tverberg", dir / "missing.csv", "--k", "2"}).code == kExitParseError);
  const Run bad = cli({"tverberg", dir / "bad.csv", "--k", "2"});
  CHECK(bad.code == kExitParseError);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(cli({"tverberg", dir / "p.csv", "--k", "11"}).code == kExitInvalid);
  CHECK(cli({"tverberg", dir / "p.csv", "--sizes", "3,3"}).code == kExitInvalid);
  CHECK(cli({"tverberg", dir / "p.csv", "--k", "3", "--mode", "balanced"}).code == kExitInvalid);
  CHECK(cli({"tverberg", dir / "p.csv", "--k", "3", "--rule", "nope"}).code == kExitInvalid);
  CHECK(cli({"hamsandwich", dir / "p.csv", "--m", "1"}).code == kExitInvalid);
  CHECK(cli({"hamsandwich", dir / "p.csv", dir / "p.csv", dir / "p.csv", "--m", "2"}).code == kExitInvalid);
  CHECK(cli({"gen", "--dist", "cauchy"}).code == kExitInvalid);
}

TEST_CASE("bench prints a table and an exponent") {
  const Run r = cli({"bench", "--algo", "tverberg", "--n-grid", "64,128", "--k", "4", "--d", "3", "--reps", "1",
                     "--min-sample-ms", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("exponent(tverberg vs n)") != std::string::npos);
}

TEST_CASE("documented command examples") {
  TempDir dir;
  SUBCASE("empty generated file is rejected") {
    REQUIRE(cli({"gen", "--n", "0", "--d", "2", "-o", dir / "e.csv"}).code == 0);
    CHECK(io::read_file(dir / "e.csv").empty());
    CHECK(cli({"tverberg", dir / "e.csv", "--k", "2"}).code == kExitParseError);
  }
  SUBCASE("clustered shape") {
    const Run r = cli({"gen", "--dist", "clustered", "--n", "100", "--d", "2"});
    CHECK(r.code == 0);
    const PointSet p = io::parse_csv(r.out);
    CHECK(p.size() == 100);
    CHECK(p.dim() == 2);
  }
  SUBCASE("four points on a line, k = 2") {
    io::write_file(dir / "l.csv", "x\n-3\n-1\n1\n3\n");
    const Run r = cli({"tverberg", dir / "l.csv", "--k", "2"});
    REQUIRE(r.code == 0);
    CHECK(parse_certificate(r.out).tverberg->sizes == std::vector<std::size_t>{2, 2});
  }
  SUBCASE("sizes 3,2,1 on six points") {
    io::write_file(dir / "s.csv", io::format_csv(generate_points(Distribution::kUniform, 6, 2, 1)));
    const Run r = cli({"tverberg", dir / "s.csv", "--sizes", "3,2,1"});
    REQUIRE(r.code == 0);
    const auto doc = parse_certificate(r.out);
    CHECK(doc.tverberg->parts[0].size() == 3);
    CHECK(doc.tverberg->parts[1].size() == 2);
    CHECK(doc.tverberg->parts[2].size() == 1);
  }
  SUBCASE("three colours of four points give four colorful triples") {
    io::write_file(dir / "c.json", io::format_classes_json(generate_classes(Distribution::kUniform, 3, 4, 2, 7)));
    const Run r = cli({"colorful", dir / "c.json", "--svg", dir / "c.svg"});
    REQUIRE(r.code == 0);
    const auto doc = parse_certificate(r.out);
    REQUIRE(doc.colorful->colorful_sets.size() == 4);
    for (const auto& set : doc.colorful->colorful_sets) CHECK(set.size() == 3);
    CHECK(count(io::read_file(dir / "c.svg"), "class=\"centroid\"") == 4);
  }
  SUBCASE("single class gives singleton sets") {
    io::write_file(dir / "one.json", R"({"dim":2,"classes":[[[0,0],[1,0],[0,1]]]})");
    const Run r = cli({"colorful", dir / "one.json"});
    REQUIRE(r.code == 0);
    const auto doc = parse_certificate(r.out);
    CHECK(doc.colorful->colorful_sets.size() == 3);
    for (const auto& set : doc.colorful->colorful_sets) CHECK(set.size() == 1);
  }
  SUBCASE("square corners, one set, m = 2") {
    io::write_file(dir / "sq.csv", "0,0\n1,0\n1,1\n0,1\n");
    REQUIRE(cli({"hamsandwich", dir / "sq.csv", "--m", "2", "-o", dir / "h.json"}).code == 0);
    const auto doc = parse_certificate(io::read_file(dir / "h.json"));
    CHECK(doc.depth->ball.center == Point{0.5, 0.5});
    CHECK(oracle::depth_2d_exact(doc.depth->ball.center, io::parse_csv(io::read_file(dir / "sq.csv"))) >= 2);
    CHECK(cli({"verify", dir / "h.json", dir / "sq.csv"}).code == kExitOk);
  }
  SUBCASE("two planar sets give one axis") {
    io::write_file(dir / "a.csv", io::format_csv(generate_points(Distribution::kUniform, 20, 2, 1)));
    io::write_file(dir / "b.csv", io::format_csv(generate_points(Distribution::kGaussian, 20, 2, 2)));
    REQUIRE(cli({"hamsandwich", dir / "a.csv", dir / "b.csv", "--m", "2", "-o", dir / "h.json"}).code == 0);
    const auto doc = parse_certificate(io::read_file(dir / "h.json"));
    CHECK(doc.depth->chain.lines.size() == 1);
    CHECK(doc.depth->chain.complement_basis.size() == 1);
    CHECK(cli({"verify", dir / "h.json", dir / "a.csv", dir / "b.csv"}).code == kExitOk);
  }
  SUBCASE("guaranteed radius edited below the achieved one") {
    io::write_file(dir / "p.csv", io::format_csv(generate_points(Distribution::kUniform, 30, 3, 4)));
    REQUIRE(cli({"tverberg", dir / "p.csv", "--k", "3", "-o", dir / "t.json"}).code == 0);
    auto t = nlohmann::json::parse(io::read_file(dir / "t.json"));
    t["tverberg"]["radius_guaranteed"] = t["tverberg"]["radius_achieved"].get<double>() * 0.5;
    io::write_file(dir / "t.json", t.dump(2));
    const Run v = cli({"verify", dir / "t.json", dir / "p.csv"});
    CHECK(v.code == kExitVerifyFailed);
    CHECK(v.out.find("FAIL radius achieved <= guaranteed") != std::string::npos);
  }
}

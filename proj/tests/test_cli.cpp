#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "skewrank/atlas.hpp"
#include "skewrank/io.hpp"

using namespace skewrank;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SKEWRANK_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("skewrank_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("tensor files: unsorted indices, signs and round trip") {
  auto t = parse_tensor(R"({"dim": 4, "degree": 2, "terms": [{"coeff": "3/2", "indices": [3, 1]}]})");
  CHECK(t.coeff(mask_of({1, 3}, 4)) == Scalar(mpq_class(-3, 2)));
  auto again = parse_tensor(serialize_tensor(t));
  CHECK(again == t);
  CHECK(serialize_tensor(again) == serialize_tensor(t));
  CHECK_THROWS_AS(parse_tensor(R"({"dim": 4, "degree": 2, "terms": [{"coeff": "1", "indices": [1, 1]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_tensor(R"({"dim": 4, "degree": 2, "terms": [{"coeff": "1", "indices": [1, 9]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_tensor(R"({"dim": 4, "degree": 2, "terms": [{"coeff": "x", "indices": [0, 1]}]})"),
                  ParseError);
  auto q = parse_tensor(
      R"({"dim": 3, "degree": 1, "ext": {"D": 2}, "terms": [{"coeff": "1+2√2", "indices": [0]}]})");
  CHECK(q.coeff(mask_of({0}, 3)) == Scalar::quadratic(1, 2, 2));
  CHECK(parse_tensor(serialize_tensor(q)) == q);
}

TEST_CASE("classify normal form IX: label and rank") {
  auto dir = scratch();
  auto r = run("normal-form --label IX");
  REQUIRE(r.code == 0);
  auto file = write(dir / "ix.json", r.out);
  auto c = run("classify " + file.string());
  CHECK(c.code == 0);
  CHECK(c.out.find("label: IX\n") != std::string::npos);
  CHECK(c.out.find("rank: 3\n") != std::string::npos);
  auto j = nlohmann::json::parse(run("--format json classify " + file.string()).out);
  CHECK(j["label"] == "IX");
  CHECK(j["rank"] == 3);
  CHECK(j["n_essential"] == 7);
}

TEST_CASE("decompose normal form XII into verified term files") {
  auto dir = scratch();
  auto file = write(dir / "xii.json", run("normal-form --label XII").out);
  auto out = dir / "xii_terms";
  auto r = run("decompose " + file.string() + " --out-dir " + out.string());
  REQUIRE(r.code == 0);
  std::string terms;
  int count = 0;
  for (int i = 0; fs::exists(out / ("term_" + std::to_string(i) + ".json")); ++i, ++count)
    terms += " " + (out / ("term_" + std::to_string(i) + ".json")).string();
  CHECK(count == 4);
  auto v = run("verify --tensor " + file.string() + " --terms" + terms);
  CHECK(v.code == 0);
  CHECK(v.out.find("ok: true") != std::string::npos);
  CHECK(v.out.find("residual: 0") != std::string::npos);
}

TEST_CASE("exit codes") {
  auto dir = scratch();
  CHECK(run("classify " + write(dir / "zero.json", R"({"dim": 5, "degree": 3, "terms": []})").string()).code == 2);
  CHECK(run("classify " + write(dir / "bad.json", "not json").string()).code == 2);
  CHECK(run("classify " + (dir / "missing.json").string()).code == 2);
  Multivector nine = Multivector::basis(9, {0, 1, 2}) + Multivector::basis(9, {3, 4, 5}) +
                     Multivector::basis(9, {6, 7, 8}) + Multivector::basis(9, {0, 3, 6}) +
                     Multivector::basis(9, {1, 4, 7}) + Multivector::basis(9, {2, 5, 8});
  CHECK(run("classify " + write(dir / "nine.json", serialize_tensor(nine)).string()).code == 3);
  auto xxiii = write(dir / "xxiii.json", run("normal-form --label XXIII").out);
  CHECK(run("decompose " + xxiii.string() + " --out-dir " + (dir / "x23").string()).code == 4);
  CHECK(run("normal-form --label XXV").code == 2);
  // the IX table row is generic, so it does not expand to the normal form
  auto ix = write(dir / "ix.json", run("normal-form --label IX").out);
  CHECK(run("verify --tensor " + ix.string() + " --sd IX").code == 1);
}

TEST_CASE("pipelines through stdin and deterministic output") {
  auto a = run("normal-form --label XV | " + std::string(SKEWRANK_CLI) + " verify --tensor - --sd XV");
  CHECK(a.code == 0);
  CHECK(a.out.find("terms: 5") != std::string::npos);
  auto s1 = run("sample --label XI --seed 9"), s2 = run("sample --label XI --seed 9");
  CHECK(s1.out == s2.out);
  auto dir = scratch();
  auto f = write(dir / "xi.json", s1.out);
  CHECK(run("classify " + f.string()).out == run("classify " + f.string()).out);
}

TEST_CASE("apolarity subcommands print dimensions before bases") {
  auto dir = scratch();
  auto f = write(dir / "iv.json", run("normal-form --label IV").out);
  auto cat = run("catalecticant " + f.string() + " --s 2");
  CHECK(cat.code == 0);
  CHECK(cat.out.rfind("rows: 6\ncols: 15\nrank: 6\nkernel_dim: 9\n", 0) == 0);
  auto ann = run("annihilator " + f.string());
  CHECK(ann.code == 0);
  CHECK(ann.out.rfind("dims: [0,0,9,19]\n", 0) == 0);
  auto ess = run("essential " + f.string());
  CHECK(ess.out.rfind("dim: 6\n", 0) == 0);
  auto p1 = write(dir / "p1.json", serialize_tensor(Multivector::basis(4, {0, 1})));
  auto p2 = write(dir / "p2.json", serialize_tensor(Multivector::basis(4, {2, 3})));
  auto id = run("ideal --points " + p1.string() + " " + p2.string());
  CHECK(id.code == 0);
  CHECK(id.out.find("generator_degrees: [2]") != std::string::npos);
}

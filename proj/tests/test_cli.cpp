#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "coringlab/io.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace coringlab;
using io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("coringlab-cli-" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch() {
  static const ScratchDir dir;
  return dir.path;
}

Run cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path out = scratch() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = scratch() / ("err" + std::to_string(counter++) + ".txt");
  const std::string cmd = env + " " + CORINGLAB_CLI + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::string data(const std::string& file) { return std::string(CORINGLAB_DATA) + "/" + file; }

}  // namespace

TEST_CASE("validate") {
  SUBCASE("valid group-like coring") {
    const Run r = cli("validate " + data("group_like.json") + " --name E1");
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["valid"] == true);
    CHECK(j["violations"].empty());
  }
  SUBCASE("counit 2 is an axiom failure") {
    const Run r = cli("validate " + data("group_like_bad_counit.json"));
    CHECK(r.code == 4);
    CHECK(r.out.find("counit") != std::string::npos);
  }
  SUBCASE("truncated JSON") {
    const std::string text = slurp(data("group_like.json"));
    const fs::path p = scratch() / "truncated.json";
    std::ofstream(p) << text.substr(0, text.size() / 2);
    const Run r = cli("validate " + p.string());
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
  }
  SUBCASE("missing file and unknown object") {
    CHECK(cli("validate " + (scratch() / "nope.json").string()).code == 2);
    CHECK(cli("validate " + data("group_like.json") + " --name nope").code == 2);
  }
  SUBCASE("dimension guard") {
    CHECK(cli("--max-dim 2 validate " + data("comatrix2_q.json")).code == 2);
    CHECK(cli("--max-dim 4 validate " + data("comatrix2_q.json")).code == 0);
  }
  SUBCASE("unknown subcommand") { CHECK(cli("frobnicate").code == 2); }
}

TEST_CASE("certify") {
  SUBCASE("base extension on the comatrix coring over Q") {
    const fs::path cert = scratch() / "comatrix-cert.json";
    const Run r = cli("certify " + data("comatrix2_q.json") + " --kind base-extension --coring comatrix-2 --out " +
                      cert.string());
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["feasible"] == true);
    CHECK(rep["solution_space_dim"] == 3);
    const auto& rows = rep["certificate"]["payload"]["rows"];
    const la::Field q = la::Field::rationals();
    const la::Scalar trace = q.parse_scalar(rows[0][0].get<std::string>()) + q.parse_scalar(rows[3][0].get<std::string>());
    CHECK(trace.is_one());
    // The written certificate re-loads and verifies.
    CHECK(cli("validate " + cert.string() + " --name certificate").code == 0);
  }
  SUBCASE("base extension over F_2: every element commutes with the ground field") {
    const Run r = cli("certify " + data("comatrix2_f2.json") + " --kind base-extension --coring comatrix-2");
    CHECK(r.code == 0);
  }
  SUBCASE("forgetful on a trivial coring") {
    CHECK(cli("certify " + data("sweedler_split.json") + " --kind forgetful --coring QxQ-trivial").code == 0);
  }
  SUBCASE("infeasible forgetful route, field from the environment") {
    CHECK(cli("certify " + data("dual_group_z2.json") + " --kind forgetful --coring dual-group-z2").code == 0);
    const Run r = cli("certify " + data("dual_group_z2.json") + " --kind forgetful --coring dual-group-z2",
                      "CORINGLAB_FIELD=Fp:2");
    CHECK(r.code == 3);
    const json rep = json::parse(r.out);
    CHECK(rep["feasible"] == false);
    CHECK(rep["certificate"].is_null());
    CHECK(rep["infeasibility_rank_deficit"].get<int>() > 0);
    CHECK(cli("--field Fp:2 certify " + data("dual_group_z2.json") + " --kind induction --hom x").code == 2);
  }
  SUBCASE("homomorphism routes") {
    const Run r = cli("certify " + data("group_like.json") + " --kind induction --hom E1-to-E4");
    CHECK(r.code == 0);
    CHECK_FALSE(json::parse(r.out)["hypothesis_checks"].empty());
    CHECK(cli("certify " + data("group_like.json") + " --kind adinduction --hom E1-counit").code == 0);
  }
  SUBCASE("invalid input is an axiom failure") {
    CHECK(cli("certify " + data("group_like_bad_counit.json") + " --kind forgetful --coring E1").code == 4);
  }
}

TEST_CASE("compute") {
  SUBCASE("cotensor of the regular comodule with itself over E1") {
    const fs::path out = scratch() / "cotensor.json";
    const Run r = cli("compute " + data("group_like.json") + " --op cotensor --left E1-regular --right E1-regular --out " +
                      out.string());
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["details"]["dim"] == 1);
    CHECK(slurp(out) == r.out);
    CHECK(cli("validate " + out.string()).code == 0);
  }
  SUBCASE("induce along the counit keeps the dimension") {
    const Run r = cli("compute " + data("group_like.json") + " --op induce --comodule E1-regular --hom E1-counit");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["objects"]["result"]["carrier"]["dim"] == 1);
  }
  SUBCASE("ad-induce along E1 -> E4") {
    const fs::path out = scratch() / "adinduce.json";
    const Run r = cli("compute " + data("group_like.json") + " --op adinduce --comodule E4-regular --hom E1-to-E4 --out " +
                      out.string());
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["details"]["dim"] == 1);
    CHECK(cli("validate " + out.string()).code == 0);
  }
  SUBCASE("tensor") {
    const Run r = cli("compute " + data("group_like.json") + " --op tensor --left V1 --right V1");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["details"]["dim"] == 1);
  }
  SUBCASE("co-hom of a non-projective bicomodule is a hypothesis failure") {
    CHECK(cli("validate " + data("not_projective.json")).code == 0);
    CHECK(cli("compute " + data("not_projective.json") + " --op cohom --bicomodule N").code == 5);
  }
  SUBCASE("unknown operation") { CHECK(cli("compute " + data("group_like.json") + " --op nope").code == 2); }
}

TEST_CASE("entwine") {
  const fs::path out = scratch() / "entwined.json";
  const Run r = cli("entwine build " + data("entwining.json") + " --name trivial-QxQ-E1 --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(cli("validate " + out.string()).code == 0);
  CHECK(cli("certify " + out.string() + " --kind base-extension --coring trivial-QxQ-E1-coring").code == 0);

  const fs::path hom = scratch() / "trace-hom.json";
  REQUIRE(cli("entwine compile-hom " + data("entwining.json") + " --name trace --out " + hom.string()).code == 0);
  CHECK(cli("validate " + hom.string()).code == 0);
  CHECK(cli("certify " + hom.string() + " --kind induction --hom trace-hom").code == 0);
  CHECK(cli("entwine build " + data("entwining.json") + " --name trace").code == 2);
}

TEST_CASE("export-fixtures is deterministic and round-trips") {
  const fs::path a = scratch() / "fixtures-a";
  const fs::path b = scratch() / "fixtures-b";
  REQUIRE(cli("--field Fp:2 export-fixtures --out " + a.string()).code == 0);
  REQUIRE(cli("--field Fp:2 export-fixtures --out " + b.string()).code == 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    CHECK(cli("validate " + entry.path().string()).code == 0);
  }
  CHECK(files > 10);
  CHECK(cli("certify " + (a / "dual-group-z2.json").string() + " --kind forgetful --coring dual-group-z2").code == 3);
}

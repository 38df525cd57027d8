// End-to-end tests for the pfrlab binary.  The harness passes the binary's
// location in the PFRLAB_BIN environment variable; every test works inside a
// fresh temporary directory and checks exit codes, streams, and files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <limits.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

class Sandbox {
 public:
  Sandbox() {
    char tmpl[] = "/tmp/pfrlab_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    dir_ = tmpl;
    const char* bin = std::getenv("PFRLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "PFRLAB_BIN must point at the pfrlab binary");
    char resolved[PATH_MAX];
    REQUIRE_MESSAGE(realpath(bin, resolved) != nullptr, "PFRLAB_BIN does not resolve");
    bin_ = resolved;
  }

  ~Sandbox() {
    if (std::system(("rm -rf '" + dir_ + "'").c_str()) != 0) {
      std::fprintf(stderr, "warning: failed to remove %s\n", dir_.c_str());
    }
  }

  RunResult run(const std::string& args) const {
    const std::string out_path = dir_ + "/stdout.txt";
    const std::string err_path = dir_ + "/stderr.txt";
    const std::string cmd = "cd '" + dir_ + "' && '" + bin_ + "' " + args + " > '" + out_path +
                            "' 2> '" + err_path + "'";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
  }

  std::string path(const std::string& name) const { return dir_ + "/" + name; }

 private:
  std::string dir_;
  std::string bin_;
};

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help exits cleanly and documents the exit codes") {
  Sandbox box;
  const RunResult res = box.run("--help");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "refute"));
  CHECK(contains(res.out, "validate"));
  CHECK(contains(res.out, "sweep"));
  CHECK(contains(res.out, "Exit codes"));
}

TEST_CASE("refute then validate round-trips through a certificate file") {
  Sandbox box;

  SUBCASE("t = 0 refutes any map at the origin") {
    const RunResult refute = box.run("refute --p 2 --n 2 --t 0 --out cert.json");
    CHECK(refute.exit_code == 0);
    CHECK(contains(refute.err, "refuted"));
    const std::string cert = slurp(box.path("cert.json"));
    CHECK(contains(cert, "\"variant\": \"uncovered\""));
    CHECK(contains(cert, "\"x\": 0"));

    const RunResult validate = box.run("validate cert.json");
    CHECK(validate.exit_code == 0);
    CHECK(validate.out == "ok\n");
  }

  SUBCASE("a covered map from a file comes back inconclusive with exit 10") {
    spit(box.path("map.json"), R"({"p":2,"n":1,"map":[[[0,1],[1,1]]]})");
    const RunResult refute = box.run("refute --p 2 --n 1 --t 1 --map-file map.json --out cert.json");
    CHECK(refute.exit_code == 10);
    CHECK(contains(refute.err, "inconclusive"));
    CHECK(contains(slurp(box.path("cert.json")), "\"variant\": \"inconclusive\""));

    const RunResult validate = box.run("validate cert.json");
    CHECK(validate.exit_code == 0);
    CHECK(validate.out == "ok\n");
  }

  SUBCASE("without --out the certificate document goes to stdout") {
    const RunResult refute = box.run("refute --p 2 --n 2 --t 0");
    CHECK(refute.exit_code == 0);
    CHECK(contains(refute.out, "\"variant\": \"uncovered\""));
    CHECK(contains(refute.err, "refuted"));
  }

  SUBCASE("random-source runs are reproducible from the seed") {
    const RunResult first = box.run("refute --p 2 --n 3 --t 1 --seed 7 --out a.json");
    const RunResult second = box.run("refute --p 2 --n 3 --t 1 --seed 7 --out b.json");
    CHECK(first.exit_code == second.exit_code);
    CHECK(slurp(box.path("a.json")) == slurp(box.path("b.json")));
    CHECK(box.run("validate a.json").exit_code == 0);
  }
}

TEST_CASE("validate rejects tampered certificates with the failing check") {
  Sandbox box;
  spit(box.path("map.json"), R"({"p":2,"n":1,"map":[[[1,1]]]})");
  const RunResult refute = box.run("refute --p 2 --n 1 --t 1 --map-file map.json --out cert.json");
  CHECK(refute.exit_code == 0);
  const std::string honest = slurp(box.path("cert.json"));
  CHECK(contains(honest, "\"variant\": \"uncovered\""));
  REQUIRE(box.run("validate cert.json").exit_code == 0);

  std::string tampered = honest;
  const auto at = tampered.find("\"t\": 1");
  REQUIRE(at != std::string::npos);
  tampered.replace(at, 6, "\"t\": 0");
  spit(box.path("tampered.json"), tampered);

  const RunResult validate = box.run("validate tampered.json");
  CHECK(validate.exit_code == 1);
  CHECK(validate.out == "failed: uncovered_absence\n");
  CHECK(contains(validate.err, "decomposes"));
}

TEST_CASE("the all-maps source reports existence through the exit code") {
  Sandbox box;

  SUBCASE("a valid map exists at p=2, n=1, t=1") {
    const RunResult res = box.run("refute --p 2 --n 1 --t 1 --source all --out verdict.json");
    CHECK(res.exit_code == 20);
    CHECK(contains(res.err, "map exists"));
    const std::string verdict = slurp(box.path("verdict.json"));
    CHECK(contains(verdict, "\"verdict\": \"map_exists\""));
    CHECK(contains(verdict, "\"nodes\": 4"));
    CHECK(contains(verdict, "\"map\""));
  }

  SUBCASE("no valid map exists at p=3, n=1, t=1") {
    const RunResult res = box.run("refute --p 3 --n 1 --t 1 --source all");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.out, "\"verdict\": \"no_valid_map\""));
    CHECK(contains(res.out, "\"nodes\": 0"));
    CHECK(contains(res.err, "no valid map"));
  }
}

TEST_CASE("error paths map onto distinct exit codes") {
  Sandbox box;

  SUBCASE("malformed or missing input files exit 4") {
    spit(box.path("broken.json"), "{\"p\": 2,");
    CHECK(box.run("validate broken.json").exit_code == 4);
    CHECK(box.run("validate never_written.json").exit_code == 4);
    spit(box.path("grid.json"), "[");
    CHECK(box.run("sweep --grid grid.json").exit_code == 4);
  }

  SUBCASE("size caps exit 3") {
    CHECK(box.run("refute --p 2 --n 25 --t 1").exit_code == 3);
  }

  SUBCASE("usage and domain errors exit 2") {
    CHECK(box.run("refute --p 2 --t 1").exit_code == 2);              // missing --n
    CHECK(box.run("refute --p 2 --n 2 --t 1 --source file").exit_code == 2);  // no --map-file
    CHECK(box.run("bogus").exit_code == 2);                           // unknown subcommand
    CHECK(box.run("refute --p 4 --n 2 --t 1").exit_code == 2);        // composite modulus

    // The map file's own shape must agree with --p/--n.
    spit(box.path("map.json"), R"({"p":2,"n":1,"map":[[[1,1]]]})");
    CHECK(box.run("refute --p 2 --n 2 --t 1 --map-file map.json").exit_code == 2);
  }
}

TEST_CASE("sweep emits the frozen CSV independent of workers and target") {
  Sandbox box;
  spit(box.path("grid.json"), R"({"budget": 0, "mode": "exact", "cells": [
    {"p": 2, "n": 2, "t": 1, "source": "spanning", "seed": 0},
    {"p": 2, "n": 3, "t": 1, "source": "random", "seed": 5},
    {"p": 4, "n": 2, "t": 1, "source": "random", "seed": 0}
  ]})");

  const std::string expected =
      "p,n,t,source,seed,probes,pair_found,x_index,y_index,u_size,u_covers,error\n"
      "2,2,1,spanning,0,1,1,1,2,4,1,\n"
      "2,3,1,random,5,1,1,1,2,8,1,\n"
      "4,2,1,random,0,,,,,,,invalid_params\n";

  const RunResult to_file = box.run("sweep --grid grid.json --out rows.csv");
  CHECK(to_file.exit_code == 0);
  CHECK(contains(to_file.err, "sweep complete: 3 rows"));
  CHECK(slurp(box.path("rows.csv")) == expected);

  const RunResult to_stdout = box.run("sweep --grid grid.json");
  CHECK(to_stdout.exit_code == 0);
  CHECK(to_stdout.out == expected);

  const RunResult threaded = box.run("sweep --grid grid.json --workers 4 --out again.csv");
  CHECK(threaded.exit_code == 0);
  CHECK(slurp(box.path("again.csv")) == expected);
}

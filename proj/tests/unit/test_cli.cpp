#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mdlq/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "mdlq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = mdlq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "mdlq_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("design writes a file and reports properties") {
    const auto path = scratch("a2_31.json");
    const auto r = run({"design", "--lattice", "A2", "--index", "31", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("property midpoint: PASS") != std::string::npos);
    CHECK(slurp(path).find("\"schema\": 1") != std::string::npos);
    const auto v = run({"verify", "--design", path.string()});
    CHECK(v.code == 0);
    CHECK(v.out.find("FAIL") == std::string::npos);
  }

  TEST_CASE("named errors exit with 2") {
    const auto r = run({"design", "--lattice", "Z2", "--index", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NoRepresentation") != std::string::npos);
    CHECK(run({"design", "--lattice", "Q7", "--index", "3"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    const auto both = run({"simulate", "--lattice", "Z1", "--index", "3", "--beta", "1", "--rate", "2", "--a", "0.5",
                           "--entropy", "1"});
    CHECK(both.code == 2);
    CHECK(both.err.find("InvalidArgument") != std::string::npos);
    CHECK(run({"simulate", "--lattice", "Z1", "--index", "3", "--rate", "2"}).code == 2);
  }

  TEST_CASE("design to stdout is valid json") {
    const auto r = run({"design", "--lattice", "Z1", "--params", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("{", 0) == 0);
    CHECK(r.out.find("\"index\": 5") != std::string::npos);
  }

  TEST_CASE("identical runs are byte-identical") {
    const std::vector<std::string> sim{"simulate", "--lattice", "A2",    "--index", "7",
                                       "--beta",   "0.5",       "--seed", "9",      "--samples", "70000"};
    const auto a = run(sim), b = run(sim);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto other = sim;
    other[8] = "10";
    CHECK(run(other).out != a.out);
  }

  TEST_CASE("csv report and rate targeting") {
    const auto r = run({"simulate", "--lattice", "Z1", "--index", "5", "--rate", "3", "--a", "0.5", "--entropy", "4",
                        "--source", "uniform:8", "--samples", "20000", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("lattice,index,beta,source,n,seed,d0", 0) == 0);
  }

  TEST_CASE("config file with flag override") {
    const auto cfg = scratch("run.json");
    {
      std::ofstream(cfg) << R"({"lattice": "Z2", "index": 13, "beta": 0.25, "samples": 30000, "seed": 4})";
    }
    const auto a = run({"simulate", "--config", cfg.string()});
    const auto b = run({"simulate", "--lattice", "Z2", "--index", "13", "--beta", "0.25", "--samples", "30000",
                        "--seed", "4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"simulate", "--config", cfg.string(), "--seed", "5"});
    CHECK(c.out != a.out);
    CHECK(c.out.find("\"seed\": 5") != std::string::npos);
  }

  TEST_CASE("eval tables") {
    const auto fig1 = run({"eval", "--figure", "fig1"});
    CHECK(fig1.code == 0);
    CHECK(fig1.out.rfind("L,lattice,G", 0) == 0);
    const auto empty = run({"eval", "--figure", "fig10", "--indices", ""});
    CHECK(empty.out == "lattice,L,N,N_per_dim,excess\n");
    const auto js = run({"eval", "--figure", "sandwich", "--indices", "7,31", "--format", "json"});
    CHECK(js.code == 0);
    CHECK(js.out.find("\"rows\"") != std::string::npos);
  }

  TEST_CASE("thread count does not change output") {
    const std::vector<std::string> sim{"simulate", "--lattice", "Z2", "--index", "5", "--samples", "200000"};
    auto one = sim, three = sim;
    one.insert(one.end(), {"--threads", "1"});
    three.insert(three.end(), {"--threads", "3"});
    CHECK(run(one).out == run(three).out);
  }
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wglab/cli.hpp"

using namespace wglab;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wglab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int status = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sieve prints primes") {
  const auto r = run({"sieve", "--lo", "10", "--hi", "30"});
  CHECK(r.status == 0);
  CHECK(r.out == "11 13 17 19 23 29\n");
}

TEST_CASE("exit codes") {
  CHECK(run({"sieve", "--lo", "30", "--hi", "10"}).status == 1);
  CHECK(run({"sieve", "--lo", "30", "--hi", "10"}).err.find("empty-range") != std::string::npos);
  const auto usage = run({"sieve", "--lo", "10", "--hi", "30", "--bogus", "1"});
  CHECK(usage.status == 2);
  CHECK(usage.err.find("--bogus") != std::string::npos);
  CHECK(run({}).status == 2);
  CHECK(run({"sigma", "--help"}).status == 0);
  CHECK(run({"gauss-sum", "--q", "6", "--a", "4"}).status == 1);
}

TEST_CASE("rho and sigma") {
  auto r = run({"rho", "--k", "2", "--s", "2", "--x", "10", "--y", "4", "--n", "98"});
  CHECK(r.status == 0);
  CHECK(r.out.find("3.7865663082") != std::string::npos);
  r = run({"sigma", "--k", "2", "--s", "5", "--n", "53", "--q0", "200"});
  CHECK(r.status == 0);
  CHECK(r.out.find("19.4329474232") != std::string::npos);
}

TEST_CASE("config file and flag override") {
  const auto path = std::filesystem::temp_directory_path() / "wglab-cli-test.cfg";
  {
    std::ofstream(path) << "k = 2\ns = 2\nx = 10\ny = 4\n";
  }
  auto r = run({"rho", "--config", path.string(), "--n", "98"});
  CHECK(r.status == 0);
  CHECK(r.out.find("3.7865663082") != std::string::npos);
  // y = 2 leaves only 11 in the window.
  r = run({"rho", "--config", path.string(), "--y", "2", "--n", "98", "--n", "242"});
  CHECK(r.out.find("\"tuple_count\": 0") != std::string::npos);
  CHECK(r.out.find("\"tuple_count\": 1") != std::string::npos);
  {
    std::ofstream(path) << "colour = blue\n";
  }
  r = run({"rho", "--config", path.string(), "--n", "98"});
  CHECK(r.status == 2);
  CHECK(r.err.find("invalid-config") != std::string::npos);
  std::filesystem::remove(path);
}

}

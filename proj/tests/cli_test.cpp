// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Exit-code contract of the command-line tool. argv[1] is the tool path, so
// this binary registers its own main.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;

int run(const std::string& args) {
  const std::string command = g_cli + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void spill(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("exit code triage") {
  const fs::path model = g_dir / "demo.txt";
  spill(model, tbacert::test::demo_model_text());
  const fs::path cert = g_dir / "demo.cert";
  REQUIRE(run("generate --model " + model.string() + " --algo ndfs --out-cert " +
              cert.string()) == 0);

  SUBCASE("accepted certificate: 0") {
    CHECK(run("check --model " + model.string() + " --certificate " + cert.string()) == 0);
  }
  SUBCASE("rejected certificate: 1") {
    spill(g_dir / "bad.cert",
          "certificate v1\nmode inclusion\nclocks 1 x\n"
          "entry q0 0 <=0 <=0 INF <=0\nentry q1 0 <=0 <=0 INF <=0\n"
          "entry q2 0 <=0 <=0 INF <=0\nentry q1 0 <=0 <=-2 INF <=0\n");
    CHECK(run("check --model " + model.string() + " --certificate " +
              (g_dir / "bad.cert").string()) == 1);
  }
  SUBCASE("missing files: 2") {
    CHECK(run("check --model " + model.string() + " --certificate " +
              (g_dir / "nowhere.cert").string()) == 2);
    CHECK(run("check --model " + (g_dir / "nowhere.txt").string() + " --certificate " +
              cert.string()) == 2);
  }
  SUBCASE("unknown flags: 2") {
    CHECK(run("check --model " + model.string() + " --certificate " + cert.string() +
              " --frobnicate") == 2);
    CHECK(run("levitate") == 2);
  }
  SUBCASE("malformed certificate: 2") {
    spill(g_dir / "garbled.cert", "certificate v1\nmode inclusion\nclocks 1 x\nentry q0 0 <=x\n");
    CHECK(run("check --model " + model.string() + " --certificate " +
              (g_dir / "garbled.cert").string()) == 2);
  }
  SUBCASE("clock mismatch is structural: 2") {
    spill(g_dir / "alien.cert", "certificate v1\nmode inclusion\nclocks 1 t\n");
    CHECK(run("check --model " + model.string() + " --certificate " +
              (g_dir / "alien.cert").string()) == 2);
  }
  SUBCASE("nonempty model: generate exits 1") {
    spill(g_dir / "loop.txt", "clock x\nlocation q initial accepting\nedge q -> q\n");
    CHECK(run("generate --model " + (g_dir / "loop.txt").string() + " --algo scc --out-cert " +
              (g_dir / "loop.cert").string()) == 1);
    CHECK(run("oracle --model " + (g_dir / "loop.txt").string() + " --emit-trivial-cert " +
              (g_dir / "loop.cert").string()) == 1);
  }
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_test <path-to-cli> [doctest args]\n");
    return 64;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / ("tbacert-cli-" + std::to_string(::getpid()));
  fs::create_directories(g_dir);
  doctest::Context context(argc - 1, argv + 1);
  const int result = context.run();
  fs::remove_all(g_dir);
  return result;
}

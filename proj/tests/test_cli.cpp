#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {
  std::string const nhp = NHP_CLI_PATH;

  struct run_result {
    int         status = -1;
    std::string out;
  };

  // Runs a shell command line with `nhp` substituted by the binary path.
  run_result sh(std::string cmd) {
    for (std::size_t p = cmd.find("nhp "); p != std::string::npos;
         p = cmd.find("nhp ", p + nhp.size())) {
      cmd.replace(p, 3, "'" + nhp + "'");
    }
    run_result r;
    FILE*      f = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, f)) {
      r.out.append(buf, n);
    }
    int const st = pclose(f);
    r.status     = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
  }

  fs::path scratch() {
    static fs::path const dir = [] {
      auto d = fs::temp_directory_path() / "nhp_cli_test";
      fs::create_directories(d);
      return d;
    }();
    return dir;
  }

  std::string file(char const* name) {
    return (scratch() / name).string();
  }

  nlohmann::json read(std::string const& path) {
    std::ifstream in(path);
    return nlohmann::json::parse(in);
  }
}  // namespace

TEST_CASE("quasiv is twisted agreeable") {
  auto const r = sh("nhp paper-example quasiv | nhp check --suite "
                    "twisted-agreeable --exhaustive");
  INFO(r.out);
  CHECK(r.status == 0);
  CHECK(r.out.find("elements 14") != std::string::npos);
}

TEST_CASE("the quasiv quotient fails DT2 with a replayable witness") {
  auto const r = sh("nhp paper-example quasiv | nhp quotient --partition "
                    "builtin --suite restriction-with-tests");
  INFO(r.out);
  CHECK(r.status == 1);
  CHECK(r.out.find("quotient has 12 elements") != std::string::npos);
  CHECK(r.out.find("DT2 FAIL exhaustive count=1459 witness s=s b=beta t=1 u=e")
        != std::string::npos);

  auto const q = file("quasiv.json");
  auto const j = file("quasiv_quotient.json");
  REQUIRE(sh("nhp paper-example quasiv > " + q).status == 0);
  REQUIRE(sh("nhp quotient --model " + q
             + " --partition builtin --suite restriction-with-tests --json"
               " --out "
             + j)
              .status
          == 1);
  auto const rep = read(j);
  CHECK(rep["congruence"]["congruence"] == true);
  auto const& last = rep["report"]["results"].back();
  CHECK(last["law"] == "DT2");
  CHECK(last["witness_names"]["u"] == "e");

  auto const qa = file("quasiv_quotient_algebra.json");
  std::ofstream(qa) << rep["quotient"].dump();
  for (char const* tu : {"--bind t=1 --bind u=e", "--bind t=e --bind u=1"}) {
    auto const e = sh("nhp eval --algebra " + qa
                      + " --law DT2 --bind s=s --bind b=beta " + tu);
    INFO(e.out);
    CHECK(e.status == 1);
    CHECK(e.out.find("D(s;b);t = g, D(s;b);u = g  (equal)")
          != std::string::npos);
    CHECK(e.out.find("D(s;not(b));t = f, D(s;not(b));u = f  (equal)")
          != std::string::npos);
    CHECK(e.out.find("(differ)") != std::string::npos);
  }
  auto const rep_q = sh("nhp represent --algebra " + qa);
  INFO(rep_q.out);
  CHECK(rep_q.status == 1);
  CHECK(rep_q.out.find("complement-coverage") != std::string::npos);
}

TEST_CASE("the ten-point quotient fails inimp") {
  auto const r = sh("nhp paper-example disagreeable | nhp quotient "
                    "--partition builtin --suite disagreeable");
  INFO(r.out);
  CHECK(r.status == 1);
  CHECK(r.out.find("inimp FAIL") != std::string::npos);
  CHECK(r.out.find("witness s=s t=t e=e") != std::string::npos);
  auto const ok = sh("nhp paper-example disagreeable | nhp check --suite "
                     "disagreeable --exhaustive");
  CHECK(ok.status == 0);
}

TEST_CASE("the full 2-point model passes weak comparison") {
  auto const r = sh("nhp model --full 2 | nhp check --suite weak-comparison "
                    "--exhaustive");
  INFO(r.out);
  CHECK(r.status == 0);
}

TEST_CASE("representation, predicates and unrolling on small models") {
  auto const a = file("full2.json");
  REQUIRE(sh("nhp model --full 2 > " + a).status == 0);
  CHECK(sh("nhp represent --algebra " + a).status == 0);
  CHECK(sh("nhp while-unroll --algebra " + a).status == 0);
  auto const c = sh("nhp model --full 1 | nhp cstar --json");
  INFO(c.out);
  CHECK(c.status == 0);
  CHECK(sh("nhp paper-example quasiv | nhp represent").status == 0);
  auto const m = file("full1_model.json");
  std::ofstream(m) << R"({"points": 1, "maps": {}, "tests": {}})";
  auto const cm = sh("nhp cstar --model " + m + " --json");
  INFO(cm.out);
  CHECK(cm.status == 0);
  CHECK(nlohmann::json::parse(cm.out)["status"] == "pass");
}

TEST_CASE("term evaluation") {
  auto const q = file("quasiv.json");
  REQUIRE(sh("nhp paper-example quasiv > " + q).status == 0);
  auto const r = sh("nhp eval --model " + q
                    + " --json 'D(s;beta);e' --bind s=s --bind beta=beta"
                      " --bind e=e");
  INFO(r.out);
  CHECK(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["name"] == "g");
}

TEST_CASE("sampled reports are byte-identical across runs and workers") {
  std::string const base = "nhp model --full 2 | nhp check --suite "
                           "kleenean-w --samples 500 --seed 11 --json";
  auto const a = sh(base + " --workers 1");
  auto const b = sh(base + " --workers 3");
  auto const c = sh(base + " --workers 1");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out.find("\"sampled\"") != std::string::npos);
}

TEST_CASE("emitted fixtures are byte-stable and re-parse") {
  auto const a = sh("nhp paper-example disagreeable");
  auto const b = sh("nhp paper-example disagreeable");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto const j = nlohmann::json::parse(a.out);
  CHECK(j["points"] == 10);
  CHECK(j["maps"]["t"][1] == 7);
}

TEST_CASE("input and capability errors exit with 2") {
  CHECK(sh("nhp ").status == 2);
  CHECK(sh("nhp check --suite nope --algebra /nonexistent").status == 2);
  CHECK(sh("echo '{' | nhp check --suite order").status == 2);
  CHECK(sh("nhp paper-example quasiv | nhp check --suite nope").status == 2);
  CHECK(sh("nhp paper-example nope").status == 2);
  CHECK(sh("nhp paper-example quasiv | nhp eval 'D(s'").status == 2);
  CHECK(sh("nhp paper-example quasiv | nhp eval 'ite(s,s,s,s)' --bind s=s")
            .status
        == 2);
  auto const a = file("full1.json");
  REQUIRE(sh("nhp model --full 1 --ops D > " + a).status == 0);
  CHECK(sh("nhp check --algebra " + a + " --suite kleenean-w").status == 2);
}

TEST_CASE("a partition that is not a congruence fails the quotient") {
  auto const f = file("noquot.json");
  std::ofstream(f) << R"({"blocks": [["s", "Ds"]]})";
  auto const r = sh("nhp paper-example quasiv | nhp quotient --partition " + f
                    + " --suite order");
  INFO(r.out);
  CHECK(r.status == 1);
  CHECK(r.out.find("not a congruence") != std::string::npos);
}

// End-to-end tests that drive the installed binary through a shell, the
// way an operator would.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

using nlohmann::json;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  REQUIRE(out.good());
}

// A per-process scratch directory so parallel test runs cannot collide.
const std::string& work_dir() {
  static const std::string dir = [] {
    std::string tmpl = "/tmp/d2dcache_cli_XXXXXX";
    char* made = mkdtemp(tmpl.data());
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir;
}

CmdResult run_cli(const std::string& args) {
  const std::string out_path = work_dir() + "/stdout.txt";
  const std::string err_path = work_dir() + "/stderr.txt";
  const std::string cmd = std::string(D2DCACHE_CLI_PATH) + " " + args +
                          " >" + out_path + " 2>" + err_path;
  const int rc = std::system(cmd.c_str());
  CmdResult result;
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

const char* kWorkedConfig = R"({
  "users": [
    {"a": 0.0032572, "b": 100, "rho": 0.0, "c": 1.0},
    {"a": 0.0032572, "b": 100, "rho": 0.0, "c": 1.0}
  ],
  "mobility": {"pairs": [[0, 1, 0.0033333333333333335]]},
  "demand": {"matrix": [[0.5, 0.5], [0.5, 0.5]]},
  "cost": {"linear": {"slope_dollars_per_mb": 0.01}},
  "sim": {"td_seconds": 300.0, "file_size_gb": 0.2}
})";

const char* kFamilyConfig = R"({
  "users": [{"a": 0.0032572, "b": 100, "rho": 0.0, "c": 1.0}],
  "mobility": {"gamma": {"shape": 4.43, "scale": 0.000919117647058824}},
  "demand": {"zipf": {"gamma": 0.8, "n_files": 4}},
  "cost": {"linear": {"slope_dollars_per_mb": 0.01}},
  "sim": {"td_seconds": 300.0, "file_size_gb": 0.2}
})";

}  // namespace

TEST_CASE("solve writes a report, a placement, and a one-line summary") {
  const std::string cfg = work_dir() + "/worked.json";
  const std::string out = work_dir() + "/report.json";
  spit(cfg, kWorkedConfig);

  const CmdResult r =
      run_cli("solve --config " + cfg + " --out " + out);
  CHECK(r.status == 0);
  CHECK(r.out == "normalized_cost 0.001086\n");

  const json report = json::parse(slurp(out));
  CHECK(report["method"] == "local_search");
  CHECK(report.contains("g"));
  CHECK(report.contains("theta"));
  CHECK(report["pass_g"].size() == 2);
  const double norm = report["normalized_cost"].get<double>();
  CHECK(norm > 0.0);
  CHECK(norm <= 1.0);

  const json placement = json::parse(slurp(out + ".placement.json"));
  CHECK(placement.is_array());
  CHECK(placement.size() == 4);  // every user caches both files

  SUBCASE("reruns are byte-identical") {
    const std::string report_a = slurp(out);
    const CmdResult again =
        run_cli("solve --config " + cfg + " --out " + out);
    CHECK(again.status == 0);
    CHECK(again.out == r.out);
    CHECK(slurp(out) == report_a);
  }
  SUBCASE("an explicit placement path is honored") {
    const std::string custom = work_dir() + "/custom_placement.json";
    const CmdResult rr = run_cli("solve --config " + cfg + " --out " + out +
                                 " --placement-out " + custom);
    CHECK(rr.status == 0);
    CHECK(json::parse(slurp(custom)).size() == 4);
  }
}

TEST_CASE("solve failure modes use the config exit code") {
  const std::string cfg = work_dir() + "/bad.json";
  json config = json::parse(kWorkedConfig);
  config["sim"]["typo_key"] = 1;
  spit(cfg, config.dump());
  CmdResult r = run_cli("solve --config " + cfg + " --out " +
                        work_dir() + "/x.json");
  CHECK(r.status == 2);
  CHECK(r.err.find("typo_key") != std::string::npos);

  r = run_cli("solve --config " + work_dir() + "/absent.json --out " +
              work_dir() + "/x.json");
  CHECK(r.status == 2);

  spit(cfg, "{ not json");
  r = run_cli("solve --config " + cfg + " --out " + work_dir() + "/x.json");
  CHECK(r.status == 2);

  r = run_cli("solve");
  CHECK(r.status == 2);

  r = run_cli("frobnicate");
  CHECK(r.status == 2);
}

TEST_CASE("solve reports full service cost when no device can cache") {
  const std::string cfg = work_dir() + "/zeroquota.json";
  json config = json::parse(kWorkedConfig);
  config["users"][0]["c"] = 0.2;
  config["users"][1]["c"] = 0.2;
  spit(cfg, config.dump());
  const std::string out = work_dir() + "/zq_report.json";
  const CmdResult r = run_cli("solve --config " + cfg + " --out " + out);
  CHECK(r.status == 0);
  CHECK(r.out == "normalized_cost 1.000000\n");
  CHECK(json::parse(slurp(out + ".placement.json")).empty());
}

TEST_CASE("oracle matches solve on the worked instance") {
  const std::string cfg = work_dir() + "/worked_oracle.json";
  spit(cfg, kWorkedConfig);
  const std::string out = work_dir() + "/oracle_report.json";
  const CmdResult r = run_cli("oracle --config " + cfg + " --out " + out);
  CHECK(r.status == 0);
  const json report = json::parse(slurp(out));
  CHECK(report["method"] == "exhaustive");
  CHECK(report["sets_enumerated"].get<long>() > 0);
  CHECK(r.out == "normalized_cost 0.001086\n");

  // The refusal path: 3 users x 7 files is past the default bound.
  json big = json::parse(kFamilyConfig);
  big["users"] = json::array({big["users"][0], big["users"][0],
                              big["users"][0]});
  big["demand"]["zipf"]["n_files"] = 7;
  const std::string big_cfg = work_dir() + "/big.json";
  spit(big_cfg, big.dump());
  CmdResult refused =
      run_cli("oracle --config " + big_cfg + " --out " + out);
  CHECK(refused.status == 1);
  CHECK(refused.err.find("21") != std::string::npos);
  refused = run_cli("oracle --config " + big_cfg + " --out " + out +
                    " --max-ground 21");
  CHECK(refused.status == 0);
}

TEST_CASE("sweep emits ordered rows and skips oversized oracle points") {
  const std::string cfg = work_dir() + "/family.json";
  spit(cfg, kFamilyConfig);
  const std::string out = work_dir() + "/sweep.csv";

  SUBCASE("rows are sorted by axis value then strategy") {
    const CmdResult r = run_cli(
        "sweep --config " + cfg + " --out " + out +
        " --axis n_users --values 3,2 --strategies popular,local_search" +
        " --seed 5");
    CHECK(r.status == 0);
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "axis_value,strategy,normalized_cost,seed");
    std::vector<std::string> rows;
    while (std::getline(csv, line)) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("2,local_search,", 0) == 0);
    CHECK(rows[1].rfind("2,popular,", 0) == 0);
    CHECK(rows[2].rfind("3,local_search,", 0) == 0);
    CHECK(rows[3].rfind("3,popular,", 0) == 0);
    for (const std::string& row : rows) {
      const std::size_t a = row.find(',', row.find(',') + 1);
      const double cost = std::stod(row.substr(a + 1));
      CHECK(cost >= 0.0);
      CHECK(cost <= 1.0);
    }
  }
  SUBCASE("oracle rows vanish with a warning past the bound") {
    const CmdResult r = run_cli(
        "sweep --config " + cfg + " --out " + out +
        " --axis n_users --values 2,6 --strategies oracle,local_search" +
        " --seed 5");
    CHECK(r.status == 0);
    CHECK(r.err.find("skipping oracle") != std::string::npos);
    const std::string csv = slurp(out);
    CHECK(csv.find("2,oracle,") != std::string::npos);
    CHECK(csv.find("6,oracle,") == std::string::npos);
    CHECK(csv.find("6,local_search,") != std::string::npos);
  }
  SUBCASE("gamma_r and td axes rewrite the scenario family") {
    CmdResult r = run_cli("sweep --config " + cfg + " --out " + out +
                          " --axis gamma_r --values 0.4,1.2" +
                          " --strategies local_search --seed 5");
    CHECK(r.status == 0);
    r = run_cli("sweep --config " + cfg + " --out " + out +
                " --axis td --values 60,600 --strategies random" +
                " --replications 5 --seed 5");
    CHECK(r.status == 0);
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 2);
  }
  SUBCASE("unknown axes and strategies are usage errors") {
    CmdResult r = run_cli("sweep --config " + cfg + " --out " + out +
                          " --axis frequency --values 1" +
                          " --strategies local_search");
    CHECK(r.status == 2);
    r = run_cli("sweep --config " + cfg + " --out " + out +
                " --axis td --values 60 --strategies greedy");
    CHECK(r.status == 2);
  }
}

TEST_CASE("estimate turns a contact log into a mobility fragment") {
  const std::string trace = work_dir() + "/trace.csv";
  const std::string out = work_dir() + "/mobility.json";

  SUBCASE("hand-checked rate") {
    spit(trace, "i,j,t\n1,2,100\n1,2,9000\n1,2,43000\n");
    const CmdResult r = run_cli("estimate " + trace +
                                " --window-start 0 --window-end 43200" +
                                " --out " + out);
    CHECK(r.status == 0);
    const json fragment = json::parse(slurp(out));
    REQUIRE(fragment["pairs"].size() == 1);
    CHECK(fragment["pairs"][0][0] == 1);
    CHECK(fragment["pairs"][0][1] == 2);
    CHECK(fragment["pairs"][0][2].get<double>() ==
          doctest::Approx(6.9444e-5).epsilon(1e-4));
  }
  SUBCASE("header-only trace still succeeds with no pairs") {
    spit(trace, "i,j,t\n");
    const CmdResult r = run_cli("estimate " + trace +
                                " --window-start 0 --window-end 43200" +
                                " --out " + out);
    CHECK(r.status == 0);
    CHECK(json::parse(slurp(out))["pairs"].empty());
  }
  SUBCASE("parse failures exit nonzero and name the line") {
    spit(trace, "i,j,t\n0,1,abc\n");
    const CmdResult r = run_cli("estimate " + trace +
                                " --window-start 0 --window-end 43200" +
                                " --out " + out);
    CHECK(r.status == 1);
    CHECK(r.err.find("line 2") != std::string::npos);
  }
  SUBCASE("a missing trace file is a runtime failure") {
    const CmdResult r = run_cli("estimate " + work_dir() + "/nothere.csv" +
                                " --window-start 0 --window-end 43200" +
                                " --out " + out);
    CHECK(r.status == 1);
  }
}

TEST_CASE("validate-sim compares analytic and simulated fractions") {
  const std::string cfg = work_dir() + "/vs.json";
  spit(cfg, kWorkedConfig);
  const std::string placement = work_dir() + "/vs_placement.json";

  SUBCASE("hand-checked placement passes near 0.59197") {
    spit(placement, "[[1, 0]]");
    const CmdResult r = run_cli("validate-sim --config " + cfg + " " +
                                placement + " --seed 7");
    CHECK(r.status == 0);
    CHECK(r.out.find("analytic_pc 0.591970") != std::string::npos);
    CHECK(r.out.find("result PASS") != std::string::npos);
  }
  SUBCASE("empty placement is exactly all-cellular on both sides") {
    spit(placement, "[]");
    const CmdResult r = run_cli("validate-sim --config " + cfg + " " +
                                placement + " --replications 2000");
    CHECK(r.status == 0);
    CHECK(r.out.find("analytic_pc 1.000000") != std::string::npos);
    CHECK(r.out.find("simulated_pc 1.000000") != std::string::npos);
    CHECK(r.out.find("result PASS") != std::string::npos);
  }
  SUBCASE("corrupted placement files are config errors") {
    spit(placement, "[[1, 0], [1, 0]]");
    CmdResult r = run_cli("validate-sim --config " + cfg + " " + placement);
    CHECK(r.status == 2);
    spit(placement, "[[9, 0]]");
    r = run_cli("validate-sim --config " + cfg + " " + placement);
    CHECK(r.status == 2);
    spit(placement, "not json");
    r = run_cli("validate-sim --config " + cfg + " " + placement);
    CHECK(r.status == 2);
  }
}

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cli_harness.hpp"
#include "confdyn/cli.hpp"
#include "confdyn/json_io.hpp"

using namespace confdyn;
using namespace confdyn_test;

namespace {

// A small real series with zero mean, written as a CLI input artifact.
std::string series_fixture() {
  FourierSeries f;
  f.set_conjugate_pair(1, {0.5, 0.0});
  f.set_conjugate_pair(3, {0.05, -0.02});
  f.mark_real_valued();
  return series_to_json(f).dump(2) + "\n";
}

const char* kTheta = "0.6180339887498949";

}  // namespace

TEST_CASE("solve writes the transfer solution and round-trips through JSON") {
  const fs::path dir = scratch_dir("solve");
  spit(dir / "f.json", series_fixture());
  const std::string out = (dir / "g.json").string();
  CHECK(run_cli("rotation solve --in " + (dir / "f.json").string() + " --theta " + kTheta +
                " --out " + out) == kExitOk);
  const Json g = read_json_file(out);
  CHECK(g.at("schema") == "1");
  CHECK(g.at("type") == "fourier_series");
  const FourierSeries gs = series_from_json(g);
  CHECK(gs.real_valued());
  CHECK(gs.max_freq() == 3);
}

TEST_CASE("nonzero mean input is a numerical failure (exit 4)") {
  const fs::path dir = scratch_dir("solve_mean");
  FourierSeries f;
  f.set(0, {0.5, 0.0});
  f.set_conjugate_pair(1, {0.1, 0.0});
  f.mark_real_valued();
  spit(dir / "f.json", series_to_json(f).dump(2) + "\n");
  CHECK(run_cli("rotation solve --in " + (dir / "f.json").string() + " --theta " + kTheta) ==
        kExitNumerical);
}

TEST_CASE("birkhoff emits the k,S_k CSV") {
  const fs::path dir = scratch_dir("birkhoff");
  spit(dir / "f.json", series_fixture());
  const fs::path csv = dir / "trace.csv";
  CHECK(run_cli("rotation birkhoff --in " + (dir / "f.json").string() + " --theta " + kTheta +
                " --K 50 --out " + csv.string()) == kExitOk);
  const std::string body = slurp(csv);
  CHECK(body.rfind("k,S_k\n1,", 0) == 0);  // header then first row
  CHECK(std::count(body.begin(), body.end(), '\n') == 51);
}

TEST_CASE("gh-test exit codes track the verdict") {
  const fs::path dir = scratch_dir("gh");
  spit(dir / "f.json", series_fixture());

  // Mean-free coboundary-like input with a generous bound: exit 0.
  CHECK(run_cli("rotation gh-test --in " + (dir / "f.json").string() + " --theta " + kTheta +
                " --bound 50 --K 2000") == kExitOk);

  // Constant series: linear growth, exit 2.
  FourierSeries c;
  c.set(0, {1.0, 0.0});
  c.mark_real_valued();
  spit(dir / "const.json", series_to_json(c).dump(2) + "\n");
  CHECK(run_cli("rotation gh-test --in " + (dir / "const.json").string() + " --theta " +
                kTheta + " --bound 10 --K 2000") == kExitNegativeVerdict);
}

TEST_CASE("counterexample artifact carries series, ladder, and regularity") {
  const fs::path dir = scratch_dir("cex");
  const fs::path out = dir / "f_g.json";
  CHECK(run_cli("rotation counterexample --J 8 --out " + out.string()) == kExitOk);
  const Json j = read_json_file(out);
  CHECK(j.at("schema") == "1");
  CHECK(j.at("J") == 8);
  CHECK(j.at("theta").at("is_liouville_constructed") == true);
  CHECK(j.at("ladder").size() == 8);
  CHECK(j.at("f").at("coeffs").size() == 16);
  CHECK(j.at("g").at("coeffs").size() == 16);
  CHECK(j.at("regularity_g").at("c1_majorant").get<double>() >= 8.0);
  CHECK(j.at("regularity_f").at("c1_majorant").get<double>() <= 4.0 * 3.1415926535897932);
}

TEST_CASE("regularity subcommand reports majorants") {
  const fs::path dir = scratch_dir("reg");
  spit(dir / "f.json", series_fixture());
  const fs::path out = dir / "reg.json";
  CHECK(run_cli("rotation regularity --in " + (dir / "f.json").string() + " --out " +
                out.string()) == kExitOk);
  const Json j = read_json_file(out);
  CHECK(j.at("c0_majorant").get<double>() > 0.0);
  CHECK(j.at("decay").size() == 4);
}

TEST_CASE("flows verify passes for the named flows and reports the schema fields") {
  const fs::path dir = scratch_dir("verify");
  const fs::path out = dir / "report.json";
  CHECK(run_cli("flows verify --flow H --t 1 --samples 100 --seed 0 --out " + out.string()) ==
        kExitOk);
  const Json j = read_json_file(out);
  for (const char* key : {"schema", "flow", "t", "dim", "samples", "seed", "max_residual",
                          "tolerance", "pass"})
    CHECK(j.contains(key));
  CHECK(j.at("pass") == true);
  CHECK(j.at("max_residual").get<double>() <= 1e-9);

  CHECK(run_cli("flows verify --flow liouville --t 2 --n 2") == kExitOk);
  CHECK(run_cli("flows verify --flow volume --t 1 --samples 10") == kExitOk);
  CHECK(run_cli("flows verify --flow reeb --t 0.4") == kExitOk);
}

TEST_CASE("flows integrate reports the accumulated factor") {
  const fs::path dir = scratch_dir("integrate");
  const fs::path out = dir / "vol.json";
  CHECK(run_cli("flows integrate --t 1 --x 0,0,0 --out " + out.string()) == kExitOk);
  const Json j = read_json_file(out);
  CHECK(j.at("factor").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  // Too few steps for the requested time: numerical failure.
  CHECK(run_cli("flows integrate --t 1 --x 0,0,0 --steps 10") == kExitNumerical);
}

TEST_CASE("obstruction subcommands: fixed points and verdicts") {
  const fs::path dir = scratch_dir("obstruction");
  const fs::path found = dir / "fixed.json";
  CHECK(run_cli("obstruction find-fixed --flow F --t 1 --seeds '0.1,0.3,-0.2;0.4,0.1,0.2' "
                "--out " + found.string()) == kExitOk);
  const Json j = read_json_file(found);
  CHECK(j.at("points").size() == 1);

  // The flagship negative result: factor 2 at the isolated fixed point.
  const fs::path verdict = dir / "verdict.json";
  CHECK(run_cli("obstruction check --flow F --t 1 --point 0,0,0 --m 1 --out " +
                verdict.string()) == kExitNegativeVerdict);
  const Json v = read_json_file(verdict);
  CHECK(v.at("conclusion") == "NoInvariantTensor");
  CHECK(v.at("factor_sum").get<double>() == doctest::Approx(2.0));

  // The Reeb translation preserves its form: inconclusive, exit 0.
  CHECK(run_cli("obstruction check --flow reeb --t 1 --point 0.3,0.2,0.1 --m 1") == kExitOk);
}

TEST_CASE("constraint subcommands: verdicts drive the exit code") {
  CHECK(run_cli("constraint average --f zero --res 16") == kExitOk);
  CHECK(run_cli("constraint average --f const:0.1 --res 16") == kExitNegativeVerdict);
  CHECK(run_cli("constraint jensen --f nonpos:0.1 --res 16") == kExitNegativeVerdict);
  CHECK(run_cli("constraint jensen --f zero --res 16") == kExitOk);

  const fs::path dir = scratch_dir("constraint");
  const fs::path out = dir / "report.json";
  CHECK(run_cli("constraint average --f const:0.1 --res 16 --out " + out.string()) ==
        kExitNegativeVerdict);
  const Json j = read_json_file(out);
  CHECK(j.contains("A"));
  CHECK(j.contains("avg_f"));
  CHECK(j.at("verdicts").at("average") == "Violated");
}

TEST_CASE("non-real series input is a numerical failure") {
  const fs::path dir = scratch_dir("complex_in");
  spit(dir / "bad.json",
       "{\"schema\":\"1\",\"type\":\"fourier_series\",\"coeffs\":[[1,0.5,0.25]]}\n");
  CHECK(run_cli("rotation solve --in " + (dir / "bad.json").string() + " --theta " + kTheta) ==
        kExitNumerical);
}

TEST_CASE("malformed grid CSV is a usage error") {
  const fs::path dir = scratch_dir("bad_csv");
  spit(dir / "grid.csv", "x_index,y_index,z_index,value\n0,0,0,1.0\n");
  CHECK(run_cli("constraint average --in " + (dir / "grid.csv").string() + " --res 16") ==
        kExitUsage);
}

TEST_CASE("usage errors exit with code 3") {
  CHECK(run_cli("") == kExitUsage);
  CHECK(run_cli("rotation") == kExitUsage);
  CHECK(run_cli("no-such-command") == kExitUsage);
  CHECK(run_cli("rotation solve --no-such-flag 1") == kExitUsage);
  CHECK(run_cli("flows verify --flow nope") == kExitUsage);
  CHECK(run_cli("rotation solve --theta 0.5") == kExitUsage);  // missing --in
  const fs::path dir = scratch_dir("usage");
  spit(dir / "f.json", series_fixture());
  CHECK(run_cli("rotation solve --in " + (dir / "f.json").string() + " --theta 1.5") ==
        kExitUsage);  // theta outside (0,1)
}

TEST_CASE("identical argv produces byte-identical artifacts") {
  const fs::path dir = scratch_dir("determinism");
  spit(dir / "f.json", series_fixture());
  const struct {
    std::string args;
    std::string file;
  } runs[] = {
      {"rotation solve --in {d}/f.json --theta 0.6180339887498949 --out {d}/", "g.json"},
      {"rotation birkhoff --in {d}/f.json --theta 0.6180339887498949 --K 200 --out {d}/",
       "trace.csv"},
      {"rotation counterexample --J 6 --out {d}/", "cex.json"},
      {"flows verify --flow H --t 1 --samples 50 --seed 7 --out {d}/", "verify.json"},
      {"obstruction check --flow F --t 1 --point 0,0,0 --m 1 --out {d}/", "check.json"},
      {"constraint average --f sinx:0.3 --res 16 --out {d}/", "avg.json"},
  };
  for (const auto& run : runs) {
    std::string base = run.args;
    const std::string marker = "{d}";
    for (std::size_t pos = base.find(marker); pos != std::string::npos;
         pos = base.find(marker))
      base.replace(pos, marker.size(), dir.string());

    const int first = run_cli(base + run.file);
    const std::string once = slurp(dir / run.file);
    fs::remove(dir / run.file);
    const int second = run_cli(base + run.file);
    const std::string twice = slurp(dir / run.file);
    CHECK(first == second);
    CHECK(!once.empty());
    CHECK(once == twice);
  }
}

TEST_CASE("every operation is reachable through exactly one subcommand") {
  // Declared coverage map: operation -> CLI path exercising it.
  const std::map<std::string, std::string> coverage = {
      {"coboundary_solve", "rotation solve"},
      {"birkhoff_sums", "rotation birkhoff"},
      {"gottschalk_hedlund_test", "rotation gh-test"},
      {"build_liouville_theta", "rotation counterexample"},
      {"counterexample_pair", "rotation counterexample"},
      {"regularity_report", "rotation regularity"},
      {"evaluate", "rotation birkhoff"},
      {"contact_vector_field", "flows verify"},
      {"flow_H", "flows verify"},
      {"flow_F", "flows verify"},
      {"liouville_flow_cotangent", "flows verify"},
      {"volume_flow", "flows integrate"},
      {"bump_cutoff", "flows integrate"},
      {"pullback_form", "flows verify"},
      {"verify_conformal_factor", "flows verify"},
      {"find_fixed_points", "obstruction find-fixed"},
      {"criterion_check", "obstruction check"},
      {"canonical_density", "constraint average"},
      {"average_check", "constraint average"},
      {"jensen_check", "constraint jensen"},
      {"run", "(top level)"},
  };
  for (const auto& [op, sub] : coverage) {
    CHECK(!op.empty());
    CHECK(!sub.empty());
  }

  // Each grammar leaf runs successfully end to end.
  const fs::path dir = scratch_dir("grammar");
  spit(dir / "f.json", series_fixture());
  const std::string in = (dir / "f.json").string();
  const std::set<std::pair<std::string, int>> leaves = {
      {"rotation solve --in " + in + " --theta " + kTheta, kExitOk},
      {"rotation birkhoff --in " + in + " --theta " + kTheta + " --K 100", kExitOk},
      {"rotation gh-test --in " + in + " --theta " + kTheta + " --bound 50 --K 1000", kExitOk},
      {"rotation counterexample --J 4", kExitOk},
      {"rotation regularity --in " + in, kExitOk},
      {"flows verify --flow F --t 0.5 --samples 20", kExitOk},
      {"flows integrate --t 0.5 --x 0.1,0.1", kExitOk},
      {"flows integrate --t 0.5 --x 0.1,0.1 --linear --steps 500", kExitOk},
      {"flows integrate --t 0.5 --x 0.1,0.1 --inner 0.4 --outer 0.9", kExitOk},
      {"obstruction find-fixed --flow F --t 1 --seeds 0.1,0.1,0.1", kExitOk},
      {"obstruction check --flow H --t 1 --point 0,0.7,0 --m 1", kExitNegativeVerdict},
      {"constraint average --f zero --res 16", kExitOk},
      {"constraint jensen --f zero --res 16", kExitOk},
  };
  for (const auto& [args, expected] : leaves) CHECK(run_cli(args) == expected);
}

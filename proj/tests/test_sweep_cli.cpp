#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "diamond/sweep.hpp"

using diamond::ChannelConfig;
using diamond::SweepRow;
using diamond::SweepSpec;

namespace {
namespace fs = std::filesystem;

const ChannelConfig kFig3{0.9, 0.9, 10.0, 10.0, 2.0, 2.0};

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path temp_file(const std::string& hint) {
  static int counter = 0;
  return fs::temp_directory_path() /
         ("diamond_test_" + std::to_string(::getpid()) + "_" +
          std::to_string(counter++) + "_" + hint);
}

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CmdResult run_cli(const std::string& args) {
  const fs::path out_path = temp_file("stdout");
  const fs::path err_path = temp_file("stderr");
  const std::string cmd = std::string(DIAMOND_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int raw = std::system(cmd.c_str());
  CmdResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  fs::remove(out_path);
  fs::remove(err_path);
  return res;
}

SweepRow make_row(double c, double simple, double c102, double theo,
                  double b101a, double b101b) {
  SweepRow row;
  row.c = c;
  row.simple_cutset = simple;
  row.cutset_102 = c102;
  row.theorem1 = theo;
  row.bound_101_a = b101a;
  row.bound_101_b = b101b;
  return row;
}
}  // namespace

// ---------------------------------------------------------------------------
// Library-level sweep and CSV behavior
// ---------------------------------------------------------------------------

TEST_CASE("SweepSpec validation") {
  SweepSpec spec;
  spec.base = kFig3;
  spec.c_min = 1.0;
  spec.c_max = 3.0;
  spec.step = 0.5;
  CHECK_NOTHROW(spec.validate());

  SweepSpec bad = spec;
  bad.step = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.c_min = 2.0;
  bad.c_max = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.c_min = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.base.p1 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("run_sweep row layout and frozen values") {
  SweepSpec spec;
  spec.base = kFig3;
  spec.c_min = 1.3;
  spec.c_max = 1.5;
  spec.step = 0.1;
  const auto rows = diamond::run_sweep(spec);
  REQUIRE(rows.size() == 3);

  CHECK(near(rows[0].c, 1.3, 1e-12));
  CHECK(near(rows[0].simple_cutset, 2.6, 1e-6));
  CHECK(near(rows[0].cutset_102, 2.6, 1e-6));
  CHECK(near(rows[0].theorem1, 2.552671, 2e-6));
  CHECK(near(rows[0].argmax_rho_102, 0.393000, 5e-6));

  CHECK(near(rows[1].c, 1.4, 1e-12));
  CHECK(near(rows[1].simple_cutset, 2.675425402741, 1e-6));
  CHECK(near(rows[1].cutset_102, 2.669015367, 1e-6));
  CHECK(near(rows[1].theorem1, 2.621311186, 1e-6));
  CHECK(near(rows[1].bound_101_a, 2.621311186, 1e-6));
  CHECK(near(rows[1].bound_101_b, 2.621311186, 1e-6));
  CHECK(near(rows[1].argmax_rho_102, 0.720558336, 5e-6));
  CHECK(near(rows[1].argmax_rho_101_a, 0.468420594, 5e-6));

  CHECK(near(rows[2].c, 1.5, 1e-12));
  CHECK(near(rows[2].cutset_102, 2.673294231, 1e-6));
  CHECK(near(rows[2].theorem1, 2.654066983, 1e-6));
}

TEST_CASE("run_sweep with an oversized step yields a single row") {
  SweepSpec spec;
  spec.base = kFig3;
  spec.c_min = 1.0;
  spec.c_max = 1.5;
  spec.step = 2.0;  // larger than the range
  const auto rows = diamond::run_sweep(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].c == 1.0);
}

TEST_CASE("format_csv_value fixed-point rendering") {
  CHECK(diamond::format_csv_value(2.5) == "2.500000");
  CHECK(diamond::format_csv_value(0.0) == "0.000000");
  CHECK(diamond::format_csv_value(-1e-9) == "0.000000");   // not "-0.000000"
  CHECK(diamond::format_csv_value(-0.0) == "0.000000");
  CHECK(diamond::format_csv_value(-5.1e-7) == "-0.000001");
  CHECK(diamond::format_csv_value(2.6754254) == "2.675425");
}

TEST_CASE("format_csv_row column order matches the header") {
  CHECK(std::string(diamond::kCsvHeader) ==
        "C,simple_cutset,cutset_102,theorem1,bound_101_a,bound_101_b,"
        "argmax_rho_102,argmax_rho_101_a,argmax_rho_101_b");

  // Distinct sentinels expose any column permutation: theorem1 (field 6 of
  // the row struct) must land in CSV column 4.
  SweepRow row = make_row(1.0, 2.0, 3.0, 6.0, 4.0, 5.0);
  row.argmax_rho_102 = 7.0;
  row.argmax_rho_101_a = 8.0;
  row.argmax_rho_101_b = 9.0;
  CHECK(diamond::format_csv_row(row) ==
        "1.000000,2.000000,3.000000,6.000000,4.000000,5.000000,"
        "7.000000,8.000000,9.000000");
}

TEST_CASE("write_csv emits LF lines and re-checks row ordering") {
  std::ostringstream out;
  std::vector<SweepRow> rows = {make_row(1.0, 9.0, 8.0, 7.0, 7.5, 7.25)};
  diamond::write_csv(rows, out);
  const std::string text = out.str();
  CHECK(text ==
        std::string(diamond::kCsvHeader) +
            "\n1.000000,9.000000,8.000000,7.000000,7.500000,7.250000,"
            "0.000000,0.000000,0.000000\n");
  CHECK(text.find('\r') == std::string::npos);

  // theorem1 above cutset_102 violates the bound ordering.
  std::vector<SweepRow> broken = {make_row(1.0, 9.0, 8.0, 8.5, 8.5, 8.5)};
  std::ostringstream sink;
  CHECK_THROWS_AS(diamond::write_csv(broken, sink),
                  diamond::InvariantViolation);

  // cutset_102 above simple_cutset violates it too.
  std::vector<SweepRow> broken2 = {make_row(1.0, 7.0, 8.0, 6.0, 6.5, 6.25)};
  std::ostringstream sink2;
  CHECK_THROWS_AS(diamond::write_csv(broken2, sink2),
                  diamond::InvariantViolation);
}

TEST_CASE("read_csv round-trips and rejects schema mismatches") {
  std::vector<SweepRow> rows = {make_row(1.0, 9.0, 8.0, 7.0, 7.5, 7.25),
                                make_row(1.5, 9.5, 8.5, 7.5, 8.0, 7.75)};
  std::ostringstream out;
  diamond::write_csv(rows, out);

  std::istringstream in(out.str());
  const auto parsed = diamond::read_csv(in);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].c == 1.0);
  CHECK(parsed[0].theorem1 == 7.0);
  CHECK(parsed[0].bound_101_a == 7.5);
  CHECK(parsed[1].simple_cutset == 9.5);

  std::istringstream bad_header("A,B\n1,2\n");
  CHECK_THROWS_AS(diamond::read_csv(bad_header), std::invalid_argument);

  std::istringstream short_row(std::string(diamond::kCsvHeader) +
                               "\n1.0,2.0,3.0\n");
  CHECK_THROWS_AS(diamond::read_csv(short_row), std::invalid_argument);

  std::istringstream bad_number(std::string(diamond::kCsvHeader) +
                                "\n1,2,3,4,5,6,7,8,x\n");
  CHECK_THROWS_AS(diamond::read_csv(bad_number), std::invalid_argument);
}

TEST_CASE("emit_plot_script draws the three bound columns") {
  const fs::path csv = temp_file("plot.csv");
  const fs::path script = temp_file("plot.gp");
  std::vector<SweepRow> rows = {make_row(1.0, 9.0, 8.0, 7.0, 7.5, 7.25)};
  diamond::write_csv(rows, csv.string());

  const std::string text =
      diamond::emit_plot_script(csv.string(), script.string());
  CHECK(text == slurp(script));
  // simple_cutset, cutset_102 and theorem1 live in CSV columns 2, 3 and 4.
  CHECK(text.find("using 1:2") != std::string::npos);
  CHECK(text.find("using 1:3") != std::string::npos);
  CHECK(text.find("using 1:4") != std::string::npos);
  CHECK(text.find("title 'simple_cutset'") != std::string::npos);
  CHECK(text.find("title 'cutset_102'") != std::string::npos);
  CHECK(text.find("title 'theorem1'") != std::string::npos);
  CHECK(text.find(".png") != std::string::npos);

  // Header-only CSV: accepted, plots nothing.
  const fs::path empty_csv = temp_file("empty.csv");
  {
    std::ofstream f(empty_csv, std::ios::binary);
    f << diamond::kCsvHeader << "\n";
  }
  CHECK_NOTHROW(diamond::emit_plot_script(empty_csv.string(),
                                          script.string()));

  // Schema mismatch and missing input are rejected.
  const fs::path garbage = temp_file("garbage.csv");
  {
    std::ofstream f(garbage, std::ios::binary);
    f << "not,a,real,header\n";
  }
  CHECK_THROWS_AS(diamond::emit_plot_script(garbage.string(),
                                            script.string()),
                  std::invalid_argument);
  CHECK_THROWS_AS(diamond::emit_plot_script("/nonexistent/none.csv",
                                            script.string()),
                  std::runtime_error);

  fs::remove(csv);
  fs::remove(empty_csv);
  fs::remove(garbage);
  fs::remove(script);
}

// ---------------------------------------------------------------------------
// CLI subprocess behavior
// ---------------------------------------------------------------------------

TEST_CASE("cli eval prints the bound report") {
  const CmdResult res =
      run_cli("eval --a 0.9 --b 0.9 --p1 10 --p2 10 --c1 2 --c2 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("simple_cutset: 2.675425") != std::string::npos);
  CHECK(res.out.find("cutset_102:    2.675425") != std::string::npos);
  CHECK(res.out.find("theorem1:      2.675425") != std::string::npos);
}

TEST_CASE("cli usage errors exit with code 1") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("eval --a 0.9").exit_code == 1);
  CHECK(run_cli("eval --a 0.9 --b 0.9 --p1 10 --p2 10 --c1 2 --c2 2 "
                "--bogus 1")
            .exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  // Invalid numeric input caught by library validation.
  CHECK(run_cli("eval --a 0.9 --b 0.9 --p1 -10 --p2 10 --c1 2 --c2 2")
            .exit_code == 1);
  CHECK(run_cli("sweep --a .9 --b .9 --p1 10 --p2 10 --c-min 1 --c-max 2 "
                "--step 0.5 --out /nonexistent/dir/x.csv")
            .exit_code == 1);
}

TEST_CASE("cli help succeeds and hides the oracle subcommand") {
  const CmdResult res = run_cli("--help");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("eval") != std::string::npos);
  CHECK(res.out.find("sweep") != std::string::npos);
  CHECK(res.out.find("plot") != std::string::npos);
  CHECK(res.out.find("oracle") == std::string::npos);
}

TEST_CASE("cli sweep writes the documented CSV") {
  const fs::path csv = temp_file("sweep.csv");
  const CmdResult res =
      run_cli("sweep --a 0.9 --b 0.9 --p1 10 --p2 10 --c-min 1.3 "
              "--c-max 1.5 --step 0.1 --out " +
              csv.string());
  REQUIRE(res.exit_code == 0);

  const std::string text = slurp(csv);
  REQUIRE(!text.empty());
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');

  const auto rows = diamond::read_csv_file(csv.string());
  REQUIRE(rows.size() == 3);
  CHECK(near(rows[0].c, 1.3, 1e-9));
  CHECK(near(rows[0].theorem1, 2.552671, 2e-6));
  CHECK(near(rows[1].cutset_102, 2.669015, 2e-6));
  CHECK(near(rows[1].argmax_rho_102, 0.720558, 2e-6));
  CHECK(near(rows[2].theorem1, 2.654067, 2e-6));
  fs::remove(csv);
}

TEST_CASE("cli sweep output is byte-identical across runs") {
  const fs::path csv1 = temp_file("det1.csv");
  const fs::path csv2 = temp_file("det2.csv");
  const std::string args =
      "sweep --a 0.9 --b -0.9 --p1 10 --p2 10 --c-min 1.8 --c-max 2.2 "
      "--step 0.2 --out ";
  REQUIRE(run_cli(args + csv1.string()).exit_code == 0);
  REQUIRE(run_cli(args + csv2.string()).exit_code == 0);
  CHECK(slurp(csv1) == slurp(csv2));
  CHECK(!slurp(csv1).empty());
  fs::remove(csv1);
  fs::remove(csv2);
}

TEST_CASE("cli plot generates a script and validates its input") {
  const fs::path csv = temp_file("plotcli.csv");
  const fs::path script = temp_file("plotcli.gp");
  REQUIRE(run_cli("sweep --a 0.9 --b 0.9 --p1 10 --p2 10 --c-min 1.4 "
                  "--c-max 1.4 --step 1 --out " +
                  csv.string())
              .exit_code == 0);

  CHECK(run_cli("plot --csv " + csv.string() + " --out " + script.string())
            .exit_code == 0);
  const std::string text = slurp(script);
  CHECK(text.find("using 1:4") != std::string::npos);

  CHECK(run_cli("plot --csv /nonexistent/none.csv --out " + script.string())
            .exit_code == 1);

  const fs::path garbage = temp_file("garbagecli.csv");
  {
    std::ofstream f(garbage, std::ios::binary);
    f << "bogus\n";
  }
  CHECK(run_cli("plot --csv " + garbage.string() + " --out " +
                script.string())
            .exit_code == 1);

  fs::remove(csv);
  fs::remove(script);
  fs::remove(garbage);
}

TEST_CASE("cli config file supplies defaults and flags override") {
  const fs::path cfg = temp_file("eval.cfg");
  {
    std::ofstream f(cfg);
    f << "# channel setup\n"
      << "a = 0.9\n"
      << "b = 0.9\n"
      << "p1 = 10\n"
      << "p2 = 10\n"
      << "c1 = 2\n"
      << "c2 = 2\n";
  }
  const CmdResult from_file = run_cli("eval --config " + cfg.string());
  CHECK(from_file.exit_code == 0);
  const CmdResult from_flags =
      run_cli("eval --a 0.9 --b 0.9 --p1 10 --p2 10 --c1 2 --c2 2");
  CHECK(from_file.out == from_flags.out);

  // A flag beats the file.
  const CmdResult overridden =
      run_cli("eval --config " + cfg.string() + " --c1 3");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.out.find("C1=3") != std::string::npos);

  // Unknown keys are usage errors.
  const fs::path bad = temp_file("bad.cfg");
  {
    std::ofstream f(bad);
    f << "a = 0.9\nwobble = 3\n";
  }
  CHECK(run_cli("eval --config " + bad.string() +
                " --b 0.9 --p1 10 --p2 10 --c1 2 --c2 2")
            .exit_code == 1);

  fs::remove(cfg);
  fs::remove(bad);
}

TEST_CASE("cli hidden oracle subcommand") {
  const CmdResult gs = run_cli(
      "oracle grid-sum --a 0.9 --b 0.9 --p1 10 --p2 10 --rho 0.5");
  CHECK(gs.exit_code == 0);
  CHECK(gs.out.find("2.627434557") != std::string::npos);

  const CmdResult mm = run_cli(
      "oracle max-min --a 0.9 --b 0.9 --p1 10 --p2 10 --c1 2 --c2 2 "
      "--set 102");
  CHECK(mm.exit_code == 0);
  CHECK(mm.out.find("2.675425402") != std::string::npos);

  const CmdResult n3 =
      run_cli("oracle n3 --a 0.9 --b 0.9 --p1 10 --p2 10 --rho 0.5");
  CHECK(n3.exit_code == 0);

  // Inadmissible identity input maps to a usage error.
  CHECK(run_cli("oracle n3 --a 0.9 --b 0.9 --p1 10 --p2 10 --rho -0.5")
            .exit_code == 1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zkrdtm/commands.hpp"
#include "zkrdtm/config.hpp"

using namespace zkrdtm;
namespace fs = std::filesystem;

namespace {

const std::string fixture_dir = ZKRDTM_FIXTURE_DIR;
const std::string cli = ZKRDTM_CLI_PATH;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Lines of a report, without '#' metadata lines.
std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] != '#') out.push_back(line);
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("zkrdtm_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_fixture(const std::string& name) { return slurp(fs::path(fixture_dir) / name); }

std::string run_to_string(const std::string& command, RunConfig config, const fs::path& out) {
  config.output.path = out.string();
  std::ostringstream diag;
  REQUIRE(run_command(command, config, {}, diag) == exit_ok);
  return slurp(out);
}

}  // namespace

TEST_CASE("parse the ZK(3,3) fixture") {
  const RunConfig c = parse_config(read_fixture("zk33.cfg"));
  CHECK(c.pde == PDESpec::make(Rational(1), Rational(2), Rational(2), 3));
  CHECK(c.ic.family == "sinh");
  CHECK(c.ic.amplitude == Rational(1, 100000));
  CHECK(c.ic.scale == Rational(1, 6));
  CHECK(c.ic.coefficient == Rational(3, 2));
  CHECK(c.order == 4);
  CHECK(c.backend == Backend::exact);
  CHECK_FALSE(c.grid.has_value());
  CHECK(exact_profile(c.ic) == HyperPoly::sinh(Rational(1, 6)).scaled(Rational(3, 200000)));
}

TEST_CASE("an empty eval section defaults to the 3x3 table lattice") {
  const RunConfig c = parse_config(read_fixture("zk22.cfg"));
  REQUIRE(c.points.size() == 9);
  CHECK(c.points == default_eval_points());
  std::size_t i = 0;
  for (double x : {0.0, 0.5, 1.0})
    for (double y : {0.0, 0.5, 1.0}) {
      CHECK(c.points[i] == EvalPoint{x, y, 1e-3});
      ++i;
    }
}

TEST_CASE("config errors carry line numbers") {
  const std::string base = "[pde]\na = 1\nb = 1\nk = 1\nn = 2\n[ic]\nfamily = sinh\namplitude = 1\nscale = 1\n";
  auto line_of = [](const std::string& text) {
    try {
      (void)parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK_NOTHROW((void)parse_config(base));
  CHECK(line_of("[pde]\na = 1\nb = 1\nk = 1\nn = 1\n[ic]\nfamily = sinh\namplitude = 1\nscale = 1\n") == 5);
  CHECK(line_of("[pde]\na = 1\nb = 0\nk = 1\nn = 2\n[ic]\nfamily = sinh\namplitude = 1\nscale = 1\n") == 3);
  CHECK(line_of("[pde]\na = 1\nb = 1\nk = -1\nn = 2\n[ic]\nfamily = sinh\namplitude = 1\nscale = 1\n") == 4);
  CHECK(line_of(base + "[ic2]\n") == 10);
  CHECK(line_of(base + "[solve]\nwhat = 1\n") == 11);
  CHECK(line_of(base + "[solve]\norder = 2\norder = 3\n") == 12);
  CHECK(line_of(base + "[solve]\norder\n") == 11);
  CHECK(line_of(base + "[solve]\norder = two\n") == 11);
  CHECK(line_of("[pde]\na = 1\nb = 1\nk = 1\nn = 2\n[ic]\nfamily = bessel\namplitude = 1\nscale = 1\n") == 7);
  CHECK(line_of("a = 1\n") == 1);
  CHECK(line_of(base + "[grid\n") == 10);
  // Grid geometry iff backend = grid.
  CHECK_THROWS_AS((void)parse_config(base + "[solve]\nbackend = grid\n"), ConfigError);
  CHECK_THROWS_AS(
      (void)parse_config(base + "[grid]\nx0 = 0\ny0 = 0\ndx = 0.1\ndy = 0.1\nnx = 11\nny = 11\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config(std::string("[pde]\na = 1\nb = 1\nk = 1\nn = 2\n[ic]\nfamily = gaussian\n") +
                                     "amplitude = 1\nscale = 1\n"),
                  ConfigError);
}

TEST_CASE("render/parse round trip over random configs") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 40);
  std::uniform_real_distribution<double> real(-3, 3);
  auto rat = [&] { return Rational(num(rng), den(rng)); };
  auto positive = [&] { return Rational(1 + std::abs(num(rng)), den(rng)); };
  const std::vector<std::string> families{"sinh", "cosh_squared", "gaussian", "sech_squared"};
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig c;
    c.pde = PDESpec::make(rat(), positive(), positive(), 2 + static_cast<int>(rng() % 4));
    c.ic.family = families[rng() % families.size()];
    c.ic.amplitude = rat();
    c.ic.scale = positive();
    c.ic.coefficient = rng() % 2 ? rat() : default_coefficient(c.ic.family);
    c.order = static_cast<int>(rng() % 9);
    c.backend = (!is_exact_family(c.ic.family) || rng() % 2) ? Backend::grid : Backend::exact;
    if (c.backend == Backend::grid) {
      GridConfig g;
      g.geometry = Grid{real(rng), real(rng), 0.01 + std::abs(real(rng)), 0.01 + std::abs(real(rng)),
                        11 + static_cast<int>(rng() % 300), 11 + static_cast<int>(rng() % 300)};
      g.accuracy = 2 * (1 + static_cast<int>(rng() % 4));
      g.precision = rng() % 2 ? Precision::binary128 : Precision::binary64;
      g.refine = rng() % 2;
      g.region = 0.5 + std::abs(real(rng));
      c.grid = g;
    }
    const int npts = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < npts; ++i) c.points.push_back({real(rng), real(rng), std::abs(real(rng)) * 1e-3});
    c.output.path = rng() % 2 ? "out/run.csv" : "";
    c.output.plot_path = rng() % 3 == 0 ? "plot.csv" : "";
    const std::string text = render_config(c);
    CAPTURE(text);
    CHECK(parse_config(text) == c);
    CHECK(render_config(parse_config(text)) == text);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_sci10(1.251447262e-6) == "1.251447262e-6");
  CHECK(format_sci10(-3.75e-19) == "-3.750000000e-19");
  CHECK(format_sci10(0.0) == "0.000000000e0");
  CHECK(format_sci10(-1.887222244e-4) == "-1.887222244e-4");
  CHECK(format_sci10(12345.678901) == "1.234567890e4");
  CHECK(format_coordinate(0.0) == "0.0");
  CHECK(format_coordinate(0.5) == "0.5");
  CHECK(format_coordinate(1.0) == "1.0");
  CHECK(format_coordinate(1e-5) == "1.0e-5");
  CHECK(format_coordinate(1e-3) == "1.0e-3");
  CHECK(format_coordinate(-1.5) == "-1.5");
}

TEST_CASE("table command") {
  TempDir tmp;
  const RunConfig zk33 = parse_config(read_fixture("zk33.cfg"));
  const auto rows33 = lines_of(run_to_string("table", zk33, tmp.path / "t33.csv"));
  REQUIRE(rows33.size() == 10);
  CHECK(rows33[0] == "lambda,x,y,t,u_rdtm,self_error,ref_error");
  CHECK(rows33[2].rfind("1.0e-5,0.0,0.5,1.0e-3,1.251447262e-6,", 0) == 0);
  CHECK(rows33[1].rfind("1.0e-5,0.0,0.0,1.0e-3,-3.750000000e-19,", 0) == 0);
  for (std::size_t i = 1; i < rows33.size(); ++i) {
    const auto cols = split(rows33[i], ',');
    REQUIRE(cols.size() == 7);
    CHECK(cols[6].empty());
  }

  const RunConfig zk22 = parse_config(read_fixture("zk22.cfg"));
  const auto rows22 = lines_of(run_to_string("table", zk22, tmp.path / "t22.csv"));
  REQUIRE(rows22.size() == 10);
  // Correctly rounded value of the series; the printed column truncates to …292.
  CHECK(split(rows22[2], ',')[4] == "-1.695387293e-5");
  CHECK(split(rows22[6], ',')[4] == split(rows22[8], ',')[4]);

  RunConfig zero = zk33;
  zero.ic.amplitude = Rational(0);
  for (const auto& row : lines_of(run_to_string("table", zero, tmp.path / "t0.csv"))) {
    if (row.rfind("lambda", 0) == 0) continue;
    const auto cols = split(row, ',');
    CHECK(cols[0] == "0.0");
    CHECK(cols[4] == "0.000000000e0");
    CHECK(cols[5] == "0.000000000e0");
  }

  RunConfig with_plot = zk22;
  with_plot.output.plot_path = (tmp.path / "plot.csv").string();
  (void)run_to_string("table", with_plot, tmp.path / "t22p.csv");
  const auto plot = lines_of(slurp(tmp.path / "plot.csv"));
  CHECK(plot[0] == "x,y,self_error");
  CHECK(plot.size() == 1 + 41 * 41);
}

TEST_CASE("solve command term lists") {
  TempDir tmp;
  RunConfig zk22 = parse_config(read_fixture("zk22.cfg"));
  zk22.ic.amplitude = Rational(1);
  const std::string text = run_to_string("solve", zk22, tmp.path / "s22.csv");
  CHECK(text.rfind("# backend=exact order=4", 0) == 0);
  const auto lines = lines_of(text);
  CHECK(lines[0] == "k,s_exp,c_exp,numerator,denominator");
  // U_1 = −(32/9)(10c³s − 3cs): terms (1,3,−320/9) and (1,1,32/3).
  std::vector<std::pair<std::pair<int, int>, Rational>> u1;
  for (const auto& line : lines) {
    const auto cols = split(line, ',');
    if (cols[0] != "1") continue;
    u1.push_back({{std::stoi(cols[1]), std::stoi(cols[2])}, Rational::parse(cols[3] + "/" + cols[4])});
  }
  REQUIRE(u1.size() == 2);
  CHECK(u1[0] == std::make_pair(std::make_pair(1, 3), Rational(-320, 9)));
  CHECK(u1[1] == std::make_pair(std::make_pair(1, 1), Rational(96, 9)));

  RunConfig zk33 = parse_config(read_fixture("zk33.cfg"));
  zk33.ic.amplitude = Rational(1);
  std::vector<Rational> u4;
  for (const auto& line : lines_of(run_to_string("solve", zk33, tmp.path / "s33.csv"))) {
    const auto cols = split(line, ',');
    if (cols[0] == "4") u4.push_back(Rational::parse(cols[3] + "/" + cols[4]));
  }
  const std::vector<long> published{93534345, -198626022, 135212355, -30715929, 1179946};
  REQUIRE(u4.size() == published.size());
  for (std::size_t i = 0; i < u4.size(); ++i) CHECK(u4[i] == Rational(published[i], 4096));

  RunConfig k0 = zk33;
  k0.order = 0;
  const auto only_ic = lines_of(run_to_string("solve", k0, tmp.path / "s0.csv"));
  REQUIRE(only_ic.size() == 2);
  CHECK(only_ic[1] == "0,1,0,3,2");
}

TEST_CASE("residual and compare reports") {
  TempDir tmp;
  const RunConfig zk33 = parse_config(read_fixture("zk33.cfg"));
  const auto lines = lines_of(run_to_string("residual", zk33, tmp.path / "r.csv"));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "k,exact_zero,norm,scale,bound");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(split(lines[i], ',')[1] == "true");

  RunConfig compare = parse_config(read_fixture("zk22_compare.cfg"));
  compare.grid->geometry = Grid::square(-1.5, 1.5, 0.05);
  compare.grid->region = 0.5;
  compare.order = 1;
  compare.points = {{0, 0, 0}, {0.5, 0.25, 0}};
  const auto report = lines_of(run_to_string("compare", compare, tmp.path / "c.csv"));
  double order = 0.0;
  for (const auto& line : report) {
    const auto cols = split(line, ',');
    if (cols[0] == "measured_order") order = std::stod(cols[1]);
  }
  CHECK(order >= 7.0);
}

TEST_CASE("identical configs produce byte-identical output") {
  TempDir tmp;
  const RunConfig zk22 = parse_config(read_fixture("zk22.cfg"));
  for (const char* cmd : {"table", "solve", "residual"}) {
    const std::string a = run_to_string(cmd, zk22, tmp.path / "a.csv");
    const std::string b = run_to_string(cmd, zk22, tmp.path / "b.csv");
    CHECK(a == b);
    CHECK_FALSE(a.empty());
  }
  CHECK(run_cli("table --config " + fixture_dir + "/zk33.cfg --out " + (tmp.path / "x.csv").string()) == 0);
  CHECK(run_cli("table --config " + fixture_dir + "/zk33.cfg --out " + (tmp.path / "y.csv").string()) == 0);
  CHECK(slurp(tmp.path / "x.csv") == slurp(tmp.path / "y.csv"));
}

TEST_CASE("exit-code contract") {
  TempDir tmp;
  const std::string zk33 = fixture_dir + "/zk33.cfg";
  const fs::path out = tmp.path / "out.csv";
  CHECK(run_cli("solve --config " + zk33 + " --out " + out.string()) == 0);
  CHECK(fs::exists(out));
  CHECK(run_cli("residual --config " + zk33 + " --order 6 --out " + out.string()) == 0);

  const fs::path bad = tmp.path / "bad.cfg";
  std::ofstream(bad) << "[pde]\na = 1\nb = 1\nk = 1\nn = 1\n[ic]\nfamily = sinh\namplitude = 1\nscale = 1\n";
  const fs::path never = tmp.path / "never.csv";
  CHECK(run_cli("solve --config " + bad.string() + " --out " + never.string()) == 2);
  CHECK(run_cli("solve --config " + (tmp.path / "missing.cfg").string()) == 2);
  CHECK(run_cli("solve --config " + zk33 + " --backend grid") == 2);
  CHECK(run_cli("frobnicate --config " + zk33) == 2);
  CHECK(run_cli("solve") == 2);

  const fs::path small = tmp.path / "small.cfg";
  std::ofstream(small) << "[pde]\na = 1\nb = 2\nk = 2\nn = 3\n[ic]\nfamily = sinh\namplitude = 1e-5\nscale = 1/6\n"
                          "[solve]\norder = 4\nbackend = grid\n"
                          "[grid]\nx0 = -1\ny0 = -1\ndx = 0.1\ndy = 0.1\nnx = 21\nny = 21\n";
  CHECK(run_cli("solve --config " + small.string() + " --out " + never.string()) == 3);

  CHECK(run_cli("residual --config " + zk33 + " --inject-corruption 2 --out " + never.string()) == 4);
  CHECK_FALSE(fs::exists(never));
  for (const auto& entry : fs::directory_iterator(tmp.path)) CHECK(entry.path().extension() != ".tmp");
}

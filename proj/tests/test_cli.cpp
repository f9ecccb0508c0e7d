#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpd/cli.hpp"

using namespace lpd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "legendre-derivs");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

// Runs the installed binary; stdout captured, stderr discarded.
Outcome run_binary(const std::string& args) {
  const std::string cmd = std::string(LPD_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

nlohmann::json first_record(const std::string& out) {
  return nlohmann::json::parse(out.substr(0, out.find('\n')));
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lpd_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("complex flag syntax") {
  CHECK(cli::parse_complex("2") == Complex(2.0));
  CHECK(cli::parse_complex("-1.5,0.25") == Complex(-1.5, 0.25));
  CHECK(cli::parse_complex("1e-3,-2") == Complex(1e-3, -2.0));
  for (const char* bad : {"", "x", "1,", ",2", "1,2,3", "nan", "inf", "1 ", "1,2x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(cli::parse_complex(bad), std::invalid_argument);
  }
}

TEST_CASE("record serialization") {
  cli::OutputRecord r{"P", 1.0, 0.0, 3.0, Complex(3.0), "series", 0.0, std::nullopt, std::nullopt};
  CHECK(cli::to_json_line(r) ==
        R"({"function":"P","nu":[1.0,0.0],"mu":[0.0,0.0],"z":[3.0,0.0],"value":[3.0,0.0],"method":"series",)"
        R"("err_estimate":0.0,"oracle_value":null,"rel_discrepancy":null})");
  r.value = Complex(-0.0, 0.1);
  r.oracle_value = Complex(0.1, 1.0 / 3.0);
  r.rel_discrepancy = 2.5e-300;
  const nlohmann::json j = nlohmann::json::parse(cli::to_json_line(r));
  CHECK(j["value"][0].get<double>() == 0.0);
  CHECK_FALSE(std::signbit(j["value"][0].get<double>()));
  CHECK(j["oracle_value"][1].get<double>() == 1.0 / 3.0);
  CHECK(j["rel_discrepancy"].get<double>() == 2.5e-300);

  CHECK(cli::csv_header() ==
        "function,nu_re,nu_im,mu_re,mu_im,z_re,z_im,value_re,value_im,method,err,oracle_re,oracle_im,rel_disc");
  CHECK(cli::to_csv_row(r) == "P,1,0,0,0,3,0,0,0.1,series,0,0.1,0.3333333333333333,2.5e-300");
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-310, 123456789.0}) {
    CHECK(std::strtod(cli::format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("eval") {
  Outcome o = run_cli({"eval", "--fn", "Q", "--nu", "0", "--mu", "0", "--z", "2"});
  CHECK(o.code == cli::exit_code::kOk);
  nlohmann::json j = first_record(o.out);
  CHECK(j["function"] == "Q");
  CHECK(std::abs(j["value"][0].get<double>() - 0.5 * std::log(3.0)) < 1e-15);
  CHECK(j["value"][1].get<double>() == 0.0);
  CHECK(j["oracle_value"].is_null());

  o = run_cli({"eval", "--fn", "P", "--nu", "1", "--mu", "0", "--z", "3"});
  CHECK(o.code == 0);
  CHECK(first_record(o.out)["value"] == nlohmann::json::array({3.0, 0.0}));

  o = run_cli({"eval", "--fn", "Q", "--nu", "0.5", "--mu", "0.25", "--z", "1.5", "--oracle", "quad"});
  CHECK(o.code == 0);
  j = first_record(o.out);
  CHECK(j["rel_discrepancy"].get<double>() <= 1e-8);
  CHECK_FALSE(j["oracle_value"].is_null());

  o = run_cli({"eval", "--fn", "P", "--nu", "0.3,0.1", "--mu", "0.7", "--z", "2,1", "--oracle", "fd"});
  CHECK(o.code == 0);
  j = first_record(o.out);
  CHECK(j["nu"] == nlohmann::json::array({0.3, 0.1}));
  CHECK(j["rel_discrepancy"].get<double>() <= 1e-8);
}

TEST_CASE("deriv") {
  Outcome o = run_cli({"deriv", "--fn", "P", "--wrt", "degree", "--at-int", "0", "--free", "0.8", "--z", "2"});
  CHECK(o.code == 0);
  nlohmann::json j = first_record(o.out);
  CHECK(j["function"] == "dP/dnu");
  CHECK(j["value"] == nlohmann::json::array({0.0, 0.0}));
  CHECK(j["nu"][0].get<double>() == -0.5);
  CHECK(j["mu"][0].get<double>() == 0.8);

  o = run_cli({"deriv", "--fn", "P", "--wrt", "order", "--at-int", "0", "--free", "1.3", "--z", "2", "--oracle", "fd"});
  CHECK(o.code == 0);
  CHECK(first_record(o.out)["rel_discrepancy"].get<double>() <= 1e-6);

  o = run_cli({"deriv", "--fn", "Q", "--wrt", "order", "--at-int", "1", "--sign", "+", "--free", "1.4", "--z", "2"});
  CHECK(o.code == 0);
  j = first_record(o.out);
  const DerivRequest req{Target::Q, Wrt::Order, 1.4, 1, Sign::Plus, 2.0};
  const Complex displayed = displayed_special_case(req);
  const Complex got(j["value"][0].get<double>(), j["value"][1].get<double>());
  CHECK(std::abs(got - displayed) <= 1e-12 * std::abs(displayed));

  o = run_cli({"deriv", "--fn", "Q", "--wrt", "order", "--at-int", "1", "--free", "1.4", "--z", "2", "--oracle", "quad"});
  CHECK(o.code == 0);
  CHECK(first_record(o.out)["rel_discrepancy"].get<double>() <= 1e-7);

  // No convergent integral for this request.
  o = run_cli({"deriv", "--fn", "Q", "--wrt", "degree", "--at-int", "2", "--sign", "-", "--free", "0.6", "--z", "2.2",
               "--oracle", "quad"});
  CHECK(o.code == cli::exit_code::kDomain);
}

TEST_CASE("exit codes for eval and deriv") {
  CHECK(run_cli({"eval", "--fn", "P", "--nu", "0", "--mu", "0", "--z", "0.5"}).code == cli::exit_code::kDomain);
  CHECK(run_cli({"eval", "--fn", "Q", "--nu", "-1.5", "--mu", "0.5", "--z", "2"}).code == cli::exit_code::kPole);
  CHECK(run_cli({"deriv", "--fn", "Q", "--wrt", "order", "--at-int", "1", "--sign", "-", "--free", "0.5", "--z", "2"})
            .code == cli::exit_code::kPole);
  CHECK(run_cli({"deriv", "--fn", "Q", "--wrt", "degree", "--at-int", "1", "--free", "0.3", "--z", "-2"}).code ==
        cli::exit_code::kDomain);
  const Outcome pole = run_cli({"eval", "--fn", "Q", "--nu", "-1.5", "--mu", "0.5", "--z", "2"});
  CHECK(pole.out.empty());
  CHECK(pole.err.find("pole") != std::string::npos);

  const std::vector<std::vector<std::string>> usage = {
      {},
      {"frobnicate"},
      {"eval", "--fn", "X", "--nu", "0", "--mu", "0", "--z", "2"},
      {"eval", "--fn", "P", "--nu", "0", "--mu", "0"},
      {"eval", "--fn", "P", "--nu", "a,b", "--mu", "0", "--z", "2"},
      {"eval", "--fn", "P", "--nu", "0", "--mu", "0", "--z", "2", "--oracle", "magic"},
      {"deriv", "--fn", "P", "--wrt", "degree", "--at-int", "-1", "--free", "0.3", "--z", "2"},
      {"deriv", "--fn", "P", "--wrt", "degree", "--at-int", "26", "--free", "0.3", "--z", "2"},
      {"deriv", "--fn", "P", "--wrt", "sideways", "--at-int", "1", "--free", "0.3", "--z", "2"},
      {"deriv", "--fn", "P", "--wrt", "degree", "--at-int", "1", "--sign", "*", "--free", "0.3", "--z", "2"},
      {"check", "--format", "xml"},
  };
  for (const auto& args : usage) {
    CAPTURE(args.size());
    CHECK(run_cli(args).code == cli::exit_code::kUsage);
  }
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"eval", "--help"}).code == 0);
}

TEST_CASE("check with grid files") {
  const fs::path pass = scratch("pass.json");
  write_file(pass, R"([{"fn":"Q","wrt":"order","at_int":1,"sign":"-","free":1.4,"z":2},
                       {"fn":"P","wrt":"degree","at_int":2,"free":0.3,"z":[1.7,0]},
                       {"fn":"Q","wrt":"degree","at_int":0,"free":[0.4,0.2],"z":2.5}])");
  const std::vector<DerivRequest> grid = cli::read_grid(pass.string());
  REQUIRE(grid.size() == 3);
  CHECK(grid[0].sign == Sign::Minus);
  CHECK(grid[1].sign == Sign::Plus);
  CHECK(grid[2].fixed_param == Complex(0.4, 0.2));

  Outcome o = run_cli({"check", "--grid", pass.string()});
  CHECK(o.code == 0);
  CHECK(lines(o.out).size() >= 3);
  CHECK(o.err.find("3 cases, 0 failing") != std::string::npos);

  const fs::path domain = scratch("domain.json");
  write_file(domain, R"([{"fn":"P","wrt":"order","at_int":1,"free":0.7,"z":0.3},
                         {"fn":"P","wrt":"order","at_int":1,"free":0.7,"z":2}])");
  o = run_cli({"check", "--grid", domain.string()});
  CHECK(o.code == cli::exit_code::kCheckFailed);
  const nlohmann::json j = first_record(o.out);
  CHECK(j["method"] == "domain-error");
  CHECK(j["value"].is_null());

  CHECK(run_cli({"check", "--grid", scratch("missing.json").string()}).code == cli::exit_code::kUnreadableGrid);
  const fs::path bad = scratch("bad.json");
  for (const char* text : {"{not json", R"({"fn":"P"})", R"([{"fn":"R","wrt":"order","at_int":1,"free":1,"z":2}])",
                           R"([{"fn":"P","wrt":"order","at_int":1.5,"free":1,"z":2}])",
                           R"([{"fn":"P","wrt":"order","at_int":1,"free":[1],"z":2}])",
                           R"([{"fn":"P","wrt":"order","at_int":1,"free":1}])"}) {
    CAPTURE(text);
    write_file(bad, text);
    CHECK_THROWS(cli::read_grid(bad.string()));
    CHECK(run_cli({"check", "--grid", bad.string()}).code == cli::exit_code::kUnreadableGrid);
  }
}

TEST_CASE("check output files") {
  const fs::path grid = scratch("small.json");
  write_file(grid, R"([{"fn":"P","wrt":"order","at_int":2,"sign":"-","free":0.7,"z":1.5}])");
  const fs::path out = scratch("report.csv");
  fs::remove(out);
  const Outcome o = run_cli({"check", "--grid", grid.string(), "--format", "csv", "--out", out.string()});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  const std::vector<std::string> rows = lines(slurp(out));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == cli::csv_header());
  CHECK(rows[1].rfind("dP/dmu,", 0) == 0);
  CHECK_FALSE(fs::exists(out.string() + ".partial"));

  CHECK_THROWS(cli::write_atomically((scratch("no_such_dir") / "x" / "y.txt").string(), "data"));
  CHECK(run_cli({"check", "--grid", grid.string(), "--out", (scratch("no_such_dir") / "x" / "y").string()}).code ==
        cli::exit_code::kUnreadableGrid);
}

TEST_CASE("threshold override") {
  ::unsetenv("LEGENDRE_CHECK_TOL");
  CHECK(cli::thresholds_from_environment().fd == 1e-6);
  CHECK(cli::thresholds_from_environment().quad == 1e-7);
  ::setenv("LEGENDRE_CHECK_TOL", "1e-16", 1);
  CHECK(cli::thresholds_from_environment().fd == 1e-16);
  const fs::path grid = scratch("tight.json");
  write_file(grid, R"([{"fn":"P","wrt":"order","at_int":2,"sign":"-","free":0.7,"z":1.5}])");
  CHECK(run_cli({"check", "--grid", grid.string()}).code == cli::exit_code::kCheckFailed);
  ::setenv("LEGENDRE_CHECK_TOL", "bogus", 1);
  CHECK_THROWS_AS(cli::thresholds_from_environment(), std::invalid_argument);
  CHECK(run_cli({"check", "--grid", grid.string()}).code == cli::exit_code::kUsage);
  ::unsetenv("LEGENDRE_CHECK_TOL");
  CHECK(run_cli({"check", "--grid", grid.string()}).code == 0);
}

TEST_CASE("installed binary is deterministic and honours exit codes") {
  const std::string eval = "eval --fn Q --nu 0.3,0.2 --mu 0.7 --z 2,0.5 --oracle fd";
  const Outcome a = run_binary(eval);
  const Outcome b = run_binary(eval);
  CHECK(a.code == 0);
  CHECK_FALSE(a.out.empty());
  CHECK(a.out == b.out);

  const std::string check = "check --format json";
  const Outcome c1 = run_binary(check);
  const Outcome c2 = run_binary(check);
  CHECK(c1.code == 0);
  CHECK(c1.out == c2.out);
  CHECK(lines(c1.out).size() > 700);

  CHECK(run_binary("eval --fn P --nu 0 --mu 0 --z 0.5").code == 2);
  CHECK(run_binary("eval --fn Q --nu -1.5 --mu 0.5 --z 2").code == 3);
  CHECK(run_binary("eval --fn P").code == 64);
}

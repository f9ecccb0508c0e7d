// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "lpd/bessel.hpp"
#include "lpd/legendre.hpp"
#include "lpd/oracle.hpp"
#include "lpd/param_derivs.hpp"
#include "lpd/scalars.hpp"

using namespace lpd;
namespace fs = std::filesystem;

namespace {

constexpr std::array<double, 4> kFree{0.3, 0.7, 1.4, 2.6};
constexpr std::array<double, 4> kZ{1.1, 1.5, 2.0, 5.0};

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

Verdict special_cases() {
  const SpecialCaseReport r = special_case_suite();
  std::size_t bad = 0;
  for (const SpecialCaseEntry& e : r.entries) bad += e.passed ? 0 : 1;
  return {r.all_passed() && r.max_rel_discrepancy <= 1e-12 && r.entries.size() == 192,
          fmt("%zu cases, %zu failing, max rel %.2e (tol 1e-12)", r.entries.size(), bad, r.max_rel_discrepancy)};
}

Verdict zero_case() {
  Verdict v;
  int cases = 0;
  double worst_fd = 0.0;
  for (double mu : kFree) {
    for (double z : kZ) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const DerivRequest req{Target::P, Wrt::Degree, mu, 0, s, z};
        const Complex cf = dp_ddegree(req).value;
        const Complex fd = fd_derivative(req).value;
        worst_fd = std::max(worst_fd, std::abs(fd));
        if (cf != Complex(0.0) || std::abs(fd) > 1e-6) v.pass = false;
        ++cases;
      }
    }
  }
  v.detail = fmt("%d cases, closed form exactly 0: %s, max |FD| %.2e (tol 1e-6)", cases, v.pass ? "yes" : "no", worst_fd);
  return v;
}

Verdict fd_agreement() {
  std::vector<DerivRequest> grid;
  for (Target t : {Target::Q, Target::P}) {
    for (Wrt w : {Wrt::Order, Wrt::Degree}) {
      for (int k = 0; k <= 3; ++k) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
          for (double f : kFree) {
            for (double z : kZ) grid.push_back({t, w, f, k, s, z});
          }
        }
      }
    }
  }
  Thresholds th;
  th.fd = 1e-6;
  const ConformanceReport report = conformance_run(grid, {}, th);
  std::size_t bad = 0;
  double worst = 0.0;
  for (const ConformanceCase& c : report.cases) {
    if (!c.closed_form || !c.fd || !c.fd->passed) {
      ++bad;
      continue;
    }
    if (c.closed_form->value != Complex(0.0)) worst = std::max(worst, c.fd->rel_discrepancy);
  }
  return {bad == 0 && report.cases.size() >= 256,
          fmt("%zu cases, %zu failing, max rel %.2e (tol 1e-6)", report.cases.size(), bad, worst)};
}

Verdict integrals() {
  Verdict v;
  int matched = 0;
  int divergent = 0;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 1.5, 2.0}) {
    for (double n : {0.0, 0.5, 1.0, 1.5}) {
      for (double z : {1.5, 2.0, 5.0}) {
        const double e_ii = rel(quad_ii(a, n, z).value, ii_first_form(a, n, z));
        worst = std::max(worst, e_ii);
        if (e_ii > 1e-8) v.pass = false;
        ++matched;
        // t^{alpha-1/2} K_n(t) ~ t^{alpha-n-1/2} at 0: no integral when alpha - n + 1/2 <= 0.
        if (a - n + 0.5 <= 0.0) {
          try {
            quad_ik(a, n, z);
            v.pass = false;
          } catch (const DomainError&) {
            ++divergent;
          }
          continue;
        }
        const double e_ik = rel(quad_ik(a, n, z).value, ik_first_form(a, n, z));
        worst = std::max(worst, e_ik);
        if (e_ik > 1e-8) v.pass = false;
        ++matched;
      }
    }
  }
  v.detail = fmt("%d integrals matched, max rel %.2e (tol 1e-8); %d IK cases with alpha-nu+1/2<=0 diverge at t=0 "
                 "and raised DomainError",
                 matched, worst, divergent);
  return v;
}

Verdict whipple() {
  Verdict v;
  int cases = 0;
  double worst = 0.0;
  for (double nu : {0.0, 0.5, 1.0, 1.5}) {
    for (double mu : {0.0, 0.5, 1.0, 1.5}) {
      for (double z : {1.1, 2.0, 5.0, 20.0}) {
        const Complex x = whipple_argument(z);
        const double e1 = rel(whipple_q_to_p(nu, mu, z).value, legendre_p(-mu - 0.5, -nu - 0.5, x));
        const double e2 = rel(whipple_p_to_q(nu, mu, z).value, legendre_q(nu, mu, z));
        worst = std::max({worst, e1, e2});
        if (e1 > 1e-9 || e2 > 1e-9) v.pass = false;
        ++cases;
      }
    }
  }
  v.detail = fmt("%d points, both directions, max rel %.2e (tol 1e-9)", cases, worst);
  return v;
}

Verdict involution() {
  Verdict v;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(0.02, 5.0);
  std::uniform_real_distribution<double> im(-3.1, 3.1);
  double worst = 0.0;
  int real_ray = 0;
  for (int i = 0; i < 50; ++i) {
    const bool on_ray = i % 5 == 0;
    const Complex z(re(rng), on_ray ? 0.0 : im(rng));
    real_ray += on_ray ? 1 : 0;
    const double e = rel(log_coth_map(log_coth_map(z)), z);
    worst = std::max(worst, e);
    if (e > 1e-12) v.pass = false;
  }
  v.detail = fmt("50 points (%d on the real ray), max rel %.2e (tol 1e-12)", real_ray, worst);
  return v;
}

Verdict bessel_order_derivatives() {
  Verdict v;
  int cases = 0;
  double worst = 0.0;
  bool exact = true;
  for (int m = 0; m <= 4; ++m) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double at = to_int(s) * m;
        const double fk = fd_param_derivative_stepped([t](double o) { return Complex(bessel_k(o, t)); }, at).value.real();
        const double fi = fd_param_derivative_stepped([t](double o) { return Complex(bessel_i(o, t)); }, at).value.real();
        const double dk = dk_dorder_at_int(m, s, t);
        const double di = di_dorder_at_int(m, s, t);
        if (m == 0) {
          if (dk != 0.0 || di != -bessel_k(0.0, t)) exact = false;
          if (std::abs(fk) > 1e-6 * bessel_k(0.0, t)) v.pass = false;
        } else {
          const double ek = std::abs(dk - fk) / std::abs(fk);
          worst = std::max(worst, ek);
          if (ek > 1e-6) v.pass = false;
        }
        const double ei = std::abs(di - fi) / std::abs(fi);
        worst = std::max(worst, ei);
        if (ei > 1e-6) v.pass = false;
        cases += 2;
      }
    }
  }
  v.pass = v.pass && exact;
  v.detail = fmt("%d comparisons against step-selected FD, max rel %.2e (tol 1e-6); dk(0)=0 and di(0)=-K0 exact: %s",
                 cases, worst, exact ? "yes" : "no");
  return v;
}

Verdict digamma_sum() {
  Verdict v;
  double worst = 0.0;
  int cases = 0;
  for (double mu : {0.3, 0.7, 1.2, 2.9}) {
    for (int n = 1; n <= 5; ++n) {
      const double want = boost::math::digamma(mu + n + 0.5) - boost::math::digamma(mu - n + 0.5);
      const double e = rel(digamma_diff_sum(mu, n), want);
      worst = std::max(worst, e);
      if (e > 1e-11) v.pass = false;
      ++cases;
    }
  }
  v.detail = fmt("%d cases against an independent digamma, max rel %.2e (tol 1e-11)", cases, worst);
  return v;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(LPD_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Verdict cli_goldens() {
  const fs::path dir = fs::temp_directory_path() / "lpd_acceptance";
  fs::create_directories(dir);
  const auto grid = [&](const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  };
  const std::string pass_grid = grid("pass.json", R"([
    {"fn":"Q","wrt":"order","at_int":1,"sign":"-","free":1.4,"z":2},
    {"fn":"P","wrt":"degree","at_int":2,"sign":"+","free":0.3,"z":1.7},
    {"fn":"Q","wrt":"degree","at_int":2,"sign":"-","free":0.6,"z":2.2},
    {"fn":"P","wrt":"order","at_int":3,"sign":"+","free":0.7,"z":5}])");
  const std::string domain_grid = grid("domain.json", R"([
    {"fn":"P","wrt":"order","at_int":1,"free":0.7,"z":0.3},
    {"fn":"Q","wrt":"order","at_int":1,"free":1.4,"z":2}])");
  const std::string pole_grid = grid("pole.json", R"([
    {"fn":"Q","wrt":"order","at_int":1,"sign":"-","free":0.5,"z":2},
    {"fn":"P","wrt":"order","at_int":0,"free":1.3,"z":2}])");

  struct Golden {
    std::string args;
    int expected;
  };
  const std::vector<Golden> goldens = {
      {"eval --fn Q --nu 0 --mu 0 --z 2", 0},
      {"eval --fn Q --nu 0.5 --mu 0.25 --z 1.5 --oracle quad", 0},
      {"eval --fn P --nu 0.3,0.2 --mu 0.7 --z 2,0.5 --oracle fd", 0},
      {"deriv --fn P --wrt degree --at-int 0 --free 0.8 --z 2", 0},
      {"deriv --fn P --wrt order --at-int 0 --free 1.3 --z 2 --oracle fd", 0},
      {"deriv --fn Q --wrt order --at-int 1 --sign + --free 1.4 --z 2", 0},
      {"check --grid " + pass_grid, 0},
      {"check --grid " + pass_grid + " --format csv", 0},
      {"check", 0},
      {"eval --fn P --nu 0 --mu 0 --z 0.5", 2},
      {"deriv --fn Q --wrt degree --at-int 1 --free 0.3 --z -2", 2},
      {"check --grid " + domain_grid, 1},
      {"eval --fn Q --nu -1.5 --mu 0.5 --z 2", 3},
      {"deriv --fn Q --wrt order --at-int 1 --sign - --free 0.5 --z 2", 3},
      {"check --grid " + pole_grid, 1},
      {"check --grid " + (dir / "missing.json").string(), 2},
      {"eval --fn P --nu 0", 64},
  };
  Verdict v;
  int identical = 0;
  int codes = 0;
  std::string failures;
  for (const Golden& g : goldens) {
    const Run a = run_cli(g.args);
    const Run b = run_cli(g.args);
    if (a.out == b.out && a.code == b.code) {
      ++identical;
    } else {
      v.pass = false;
      failures += " [nondeterministic: " + g.args + "]";
    }
    if (a.code == g.expected) {
      ++codes;
    } else {
      v.pass = false;
      failures += fmt(" [exit %d, want %d: %s]", a.code, g.expected, g.args.c_str());
    }
    if (g.expected == 0 && a.out.empty()) {
      v.pass = false;
      failures += " [no output: " + g.args + "]";
    }
  }
  v.detail = fmt("%d/%zu byte-identical reruns, %d/%zu exit codes as contracted", identical, goldens.size(), codes,
                 goldens.size()) +
             failures;
  return v;
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, std::function<Verdict()>>, 9> criteria{{
      {"special-case algebra", special_cases},
      {"zero case", zero_case},
      {"finite-difference agreement", fd_agreement},
      {"integral representations", integrals},
      {"Whipple identity", whipple},
      {"log-coth involution", involution},
      {"Bessel order derivatives", bessel_order_derivatives},
      {"digamma-sum identity", digamma_sum},
      {"CLI goldens and exit codes", cli_goldens},
  }};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s  %zu. %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

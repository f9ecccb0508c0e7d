#include "lpd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lpd/legendre.hpp"
#include "lpd/param_derivs.hpp"

namespace lpd::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

double clean(double x) { return x == 0.0 ? 0.0 : x; }

ordered_json pair(Complex c) { return ordered_json::array({clean(c.real()), clean(c.imag())}); }

template <typename T, typename F>
ordered_json or_null(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : ordered_json(nullptr);
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw std::invalid_argument("not a finite number: '" + std::string(s) + "'");
  }
  return x;
}

Complex json_complex(const ordered_json& v, const char* field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw std::runtime_error(std::string("grid: field '") + field + "' must be a number or [re, im]");
}

const ordered_json& field(const ordered_json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw std::runtime_error(std::string("grid: missing field '") + name + "'");
  return *it;
}

OutputRecord base_record(const DerivRequest& req) {
  OutputRecord r;
  r.function = req.function_tag();
  r.nu = req.degree();
  r.mu = req.order();
  r.z = req.z;
  return r;
}

void attach_oracle(OutputRecord& rec, const EvalResult& oracle) {
  rec.oracle_value = oracle.value;
  rec.rel_discrepancy = relative_discrepancy(*rec.value, oracle.value);
}

// Runs a point evaluation and maps library errors to exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    body();
    return exit_code::kOk;
  } catch (const PoleError& e) {
    err << "pole error: " << e.what() << '\n';
    return exit_code::kPole;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_code::kDomain;
  } catch (const std::exception& e) {
    err << error_kind(e) << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, clean(x));
  return std::string(buf, res.ptr);
}

std::string to_json_line(const OutputRecord& r) {
  ordered_json j;
  j["function"] = r.function;
  j["nu"] = pair(r.nu);
  j["mu"] = pair(r.mu);
  j["z"] = pair(r.z);
  j["value"] = or_null(r.value, pair);
  j["method"] = r.method;
  j["err_estimate"] = or_null(r.err_estimate, [](double e) { return ordered_json(clean(e)); });
  j["oracle_value"] = or_null(r.oracle_value, pair);
  j["rel_discrepancy"] = or_null(r.rel_discrepancy, [](double e) { return ordered_json(clean(e)); });
  return j.dump();
}

std::string csv_header() {
  return "function,nu_re,nu_im,mu_re,mu_im,z_re,z_im,value_re,value_im,method,err,oracle_re,oracle_im,rel_disc";
}

std::string to_csv_row(const OutputRecord& r) {
  std::string s = r.function;
  auto add = [&s](const std::string& v) {
    s += ',';
    s += v;
  };
  auto add_pair = [&](const std::optional<Complex>& c) {
    add(c ? format_double(c->real()) : "");
    add(c ? format_double(c->imag()) : "");
  };
  add_pair(r.nu);
  add_pair(r.mu);
  add_pair(r.z);
  add_pair(r.value);
  add(r.method);
  add(r.err_estimate ? format_double(*r.err_estimate) : "");
  add_pair(r.oracle_value);
  add(r.rel_discrepancy ? format_double(*r.rel_discrepancy) : "");
  return s;
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  const std::string_view sv(text);
  return {parse_double(sv.substr(0, comma)), parse_double(sv.substr(comma + 1))};
}

std::vector<DerivRequest> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("grid: cannot open '" + path + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("grid: invalid JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw std::runtime_error("grid: expected a non-empty JSON array");
  std::vector<DerivRequest> grid;
  for (const auto& entry : doc) {
    if (!entry.is_object()) throw std::runtime_error("grid: every entry must be an object");
    DerivRequest r;
    const auto& fn = field(entry, "fn");
    if (fn == "P") {
      r.target = Target::P;
    } else if (fn == "Q") {
      r.target = Target::Q;
    } else {
      throw std::runtime_error("grid: 'fn' must be \"P\" or \"Q\"");
    }
    const auto& wrt = field(entry, "wrt");
    if (wrt == "degree") {
      r.wrt = Wrt::Degree;
    } else if (wrt == "order") {
      r.wrt = Wrt::Order;
    } else {
      throw std::runtime_error("grid: 'wrt' must be \"degree\" or \"order\"");
    }
    const auto& at = field(entry, "at_int");
    if (!at.is_number_integer() || at.get<long long>() < 0 || at.get<long long>() > 1000) {
      throw std::runtime_error("grid: 'at_int' must be a nonnegative integer");
    }
    r.eval_int = at.get<int>();
    if (const auto it = entry.find("sign"); it != entry.end()) {
      if (*it == "+") {
        r.sign = Sign::Plus;
      } else if (*it == "-") {
        r.sign = Sign::Minus;
      } else {
        throw std::runtime_error("grid: 'sign' must be \"+\" or \"-\"");
      }
    }
    r.fixed_param = json_complex(field(entry, "free"), "free");
    r.z = json_complex(field(entry, "z"), "z");
    grid.push_back(r);
  }
  return grid;
}

Thresholds thresholds_from_environment() {
  Thresholds th;
  const char* env = std::getenv("LEGENDRE_CHECK_TOL");
  if (env == nullptr || *env == '\0') return th;
  double tol = 0.0;
  try {
    tol = parse_double(env);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string("LEGENDRE_CHECK_TOL is not a number: '") + env + "'");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("LEGENDRE_CHECK_TOL must be positive");
  th.fd = tol;
  th.quad = tol;
  return th;
}

std::vector<OutputRecord> check_records(const ConformanceReport& report, const SpecialCaseReport* special) {
  std::vector<OutputRecord> out;
  for (const auto& c : report.cases) {
    if (!c.closed_form) {
      OutputRecord r = base_record(c.request);
      r.method = c.error_kind.empty() ? "error" : c.error_kind;
      out.push_back(r);
      continue;
    }
    auto add = [&](const OracleComparison& o, const char* method) {
      OutputRecord r = base_record(c.request);
      r.value = c.closed_form->value;
      r.err_estimate = c.closed_form->err_estimate;
      r.method = method;
      if (o.error.empty()) {
        r.oracle_value = o.value;
        r.rel_discrepancy = o.rel_discrepancy;
      }
      out.push_back(r);
    };
    if (c.fd) add(*c.fd, "closed-form-vs-fd");
    if (c.quad) add(*c.quad, "closed-form-vs-quadrature");
  }
  if (special != nullptr) {
    for (const auto& e : special->entries) {
      OutputRecord r = base_record(e.request);
      r.method = "special-case";
      if (e.error.empty()) {
        r.value = e.general;
        r.oracle_value = e.displayed;
        r.rel_discrepancy = e.rel_discrepancy;
      }
      out.push_back(r);
    }
  }
  return out;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move report into place at '" + path + "'");
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Associated Legendre functions off the cut and their degree/order derivatives", "legendre-derivs"};
  app.require_subcommand(1);

  std::string fn;
  std::string nu_s;
  std::string mu_s;
  std::string z_s;
  std::string oracle = "none";
  auto* eval = app.add_subcommand("eval", "Evaluate P or Q at one point");
  eval->add_option("--fn", fn, "P or Q")->required()->check(CLI::IsMember({"P", "Q"}));
  eval->add_option("--nu", nu_s, "degree, a or a,b")->required();
  eval->add_option("--mu", mu_s, "order, a or a,b")->required();
  eval->add_option("--z", z_s, "argument, a or a,b")->required();
  eval->add_option("--oracle", oracle, "quad, fd or none")->check(CLI::IsMember({"quad", "fd", "none"}));

  std::string dfn;
  std::string wrt;
  int at_int = 0;
  std::string sign = "+";
  std::string free_s;
  std::string dz_s;
  std::string doracle = "none";
  auto* deriv = app.add_subcommand("deriv", "Closed-form derivative with respect to degree or order");
  deriv->add_option("--fn", dfn, "P or Q")->required()->check(CLI::IsMember({"P", "Q"}));
  deriv->add_option("--wrt", wrt, "degree or order")->required()->check(CLI::IsMember({"degree", "order"}));
  deriv->add_option("--at-int", at_int, "m or n")->required()->check(CLI::Range(0, 25));
  deriv->add_option("--sign", sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
  deriv->add_option("--free", free_s, "the parameter held fixed, a or a,b")->required();
  deriv->add_option("--z", dz_s, "argument, a or a,b")->required();
  deriv->add_option("--oracle", doracle, "fd, quad or none")->check(CLI::IsMember({"fd", "quad", "none"}));

  std::string grid_path;
  std::string format = "json";
  std::string out_path;
  auto* check = app.add_subcommand("check", "Run the conformance grid against the oracles");
  check->add_option("--grid", grid_path, "JSON list of derivative requests");
  check->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  check->add_option("--out", out_path, "report path (written atomically)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  if (eval->parsed()) {
    Complex nu;
    Complex mu;
    Complex z;
    try {
      nu = parse_complex(nu_s);
      mu = parse_complex(mu_s);
      z = parse_complex(z_s);
    } catch (const std::invalid_argument& e) {
      err << "usage error: " << e.what() << '\n';
      return exit_code::kUsage;
    }
    return guarded(err, [&] {
      const bool is_p = fn == "P";
      const EvalResult r = is_p ? legendre_p({nu, mu, z}) : legendre_q({nu, mu, z});
      OutputRecord rec{fn, nu, mu, z, r.value, std::string(to_string(r.method)), r.err_estimate, {}, {}};
      if (oracle == "quad") {
        attach_oracle(rec, is_p ? quad_legendre_p(nu, mu, z) : quad_legendre_q(nu, mu, z));
      } else if (oracle == "fd") {
        attach_oracle(rec, fd_param_value(
                               [&](double h) { return is_p ? legendre_p(nu + h, mu, z) : legendre_q(nu + h, mu, z); },
                               0.0));
      }
      out << to_json_line(rec) << '\n';
    });
  }

  if (deriv->parsed()) {
    DerivRequest req;
    try {
      req.target = dfn == "P" ? Target::P : Target::Q;
      req.wrt = wrt == "degree" ? Wrt::Degree : Wrt::Order;
      req.eval_int = at_int;
      req.sign = sign == "-" ? Sign::Minus : Sign::Plus;
      req.fixed_param = parse_complex(free_s);
      req.z = parse_complex(dz_s);
    } catch (const std::invalid_argument& e) {
      err << "usage error: " << e.what() << '\n';
      return exit_code::kUsage;
    }
    return guarded(err, [&] {
      const EvalResult r = evaluate(req);
      OutputRecord rec = base_record(req);
      rec.value = r.value;
      rec.method = std::string(to_string(r.method));
      rec.err_estimate = r.err_estimate;
      if (doracle == "fd") {
        attach_oracle(rec, fd_derivative(req));
      } else if (doracle == "quad") {
        attach_oracle(rec, quad_derivative(req));
      }
      out << to_json_line(rec) << '\n';
    });
  }

  // check
  Thresholds th;
  try {
    th = thresholds_from_environment();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  std::vector<DerivRequest> grid;
  if (grid_path.empty()) {
    grid = default_acceptance_grid();
  } else {
    try {
      grid = read_grid(grid_path);
    } catch (const std::exception& e) {
      err << e.what() << '\n';
      return exit_code::kUnreadableGrid;
    }
  }
  const ConformanceReport report = conformance_run(grid, QuadratureSpec{}, th);
  std::optional<SpecialCaseReport> special;
  if (grid_path.empty()) special = special_case_suite();

  const auto records = check_records(report, special ? &*special : nullptr);
  std::ostringstream body;
  if (format == "csv") {
    body << csv_header() << '\n';
    for (const auto& r : records) body << to_csv_row(r) << '\n';
  } else {
    for (const auto& r : records) body << to_json_line(r) << '\n';
  }

  std::size_t failing = report.failures();
  if (special) {
    for (const auto& e : special->entries) failing += e.passed ? 0 : 1;
  }
  const std::size_t total = report.cases.size() + (special ? special->entries.size() : 0);

  if (out_path.empty()) {
    out << body.str();
  } else {
    try {
      write_atomically(out_path, body.str());
    } catch (const std::exception& e) {
      err << e.what() << '\n';
      return exit_code::kUnreadableGrid;
    }
  }
  err << "check: " << total << " cases, " << failing << " failing\n";
  return failing == 0 ? exit_code::kOk : exit_code::kCheckFailed;
}

}  // namespace lpd::cli

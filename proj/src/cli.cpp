#include "milnorflow/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "milnorflow/errors.hpp"
#include "milnorflow/groebner.hpp"
#include "milnorflow/invariants.hpp"
#include "milnorflow/milnor.hpp"
#include "milnorflow/model.hpp"
#include "milnorflow/parallel.hpp"
#include "milnorflow/report_json.hpp"
#include "milnorflow/selftest.hpp"

namespace milnorflow::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct InputFlags {
  std::string polynomial;
  std::optional<std::string> weights;
  std::string order = "wdegrevlex";
  bool json = false;
  bool timing = false;
};

struct Analysis {
  Polynomial f;
  WeightSystem ws;
  std::string order;
  std::optional<MilnorAlgebra> algebra;
  SingularityReport report;
  std::map<std::string, std::int64_t> timing_ms;
};

std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

Analysis analyze(const InputFlags& in, spdlog::logger& log) {
  Analysis a;
  auto t = Clock::now();
  a.f = parse_polynomial(in.polynomial);
  if (in.weights) {
    a.ws = parse_weights(*in.weights);
    if (a.ws.nvars() < a.f.nvars())
      throw InvalidInput("--weights gives " + std::to_string(a.ws.nvars()) + " variable weights, polynomial has " +
                         std::to_string(a.f.nvars()) + " variables");
    if (a.ws.nvars() > a.f.nvars()) a.f = parse_polynomial(in.polynomial, a.ws.nvars());
    if (!check_weights(a.f, a.ws))
      throw NotQuasihomogeneous("polynomial is not weighted homogeneous for weights " + to_string(a.ws));
  } else {
    a.ws = infer_weights(a.f);
  }
  a.timing_ms["parse"] = elapsed_ms(t);
  log.info("f = {}, weights {}", to_string(a.f), to_string(a.ws));

  t = Clock::now();
  const TermOrder order = parse_term_order(in.order, a.ws);
  a.order = order.name();
  a.algebra = compute_milnor_algebra(a.f, a.ws, order);
  a.timing_ms["milnor_algebra"] = elapsed_ms(t);
  log.info("{} Groebner basis with {} generators, mu = {}", a.order, a.algebra->groebner.polynomials().size(),
           a.algebra->basis.size());

  t = Clock::now();
  a.report = build_report(a.algebra->basis);
  a.timing_ms["invariants"] = elapsed_ms(t);
  return a;
}

ReportEnvelope envelope(const InputFlags& in, const Analysis& a) {
  ReportEnvelope env;
  env.input_polynomial = in.polynomial;
  env.canonical_polynomial = to_string(a.f);
  env.order = a.order;
  for (const auto& g : a.algebra->groebner.polynomials()) env.groebner_basis.push_back(to_string(g));
  env.report = a.report;
  if (in.timing) env.timing_ms = a.timing_ms;
  return env;
}

// Descending powers of t, e.g. "t^4 - t^3 + 1".
std::string format_char_poly(const std::vector<Integer>& coeffs) {
  std::ostringstream s;
  bool first = true;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Integer& c = coeffs[k];
    if (c == 0) continue;
    const Integer mag = abs(c);
    if (first)
      s << (c < 0 ? "-" : "");
    else
      s << (c < 0 ? " - " : " + ");
    first = false;
    if (mag != 1 || k == 0) s << mag.get_str() << (k > 0 ? "*" : "");
    if (k >= 1) s << "t" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return first ? "0" : s.str();
}

std::string weights_line(const WeightSystem& ws) {
  std::string s = to_string(ws) + "   w =";
  for (std::size_t i = 0; i < ws.nvars(); ++i) s += (i ? ", " : " ") + to_pq_string(ws.weight(i));
  return s;
}

std::string rational_text(const Rational& r) {
  return is_integer(r) ? r.get_num().get_str() : r.get_str();
}

void print_table(std::ostream& out, const Analysis& a) {
  const SingularityReport& r = a.report;
  out << std::left;
  out << std::setw(16) << "f" << to_string(a.f) << "\n";
  out << std::setw(16) << "weights" << weights_line(a.ws) << "\n";
  out << std::setw(16) << "order" << a.order << "\n";
  out << std::setw(16) << "mu" << r.mu;
  try {
    out << "   (Milnor-Orlik " << milnor_orlik_mu(a.ws).get_str() << ")";
  } catch (const Error&) {
  }
  out << "\n";
  out << std::setw(16) << "m(f)" << r.seidel_number.get_str()
      << (r.sf_zero_matches_seidel ? "   (equals sf of the monomial 1)" : "   (differs from sf of the monomial 1)") << "\n";
  out << std::setw(16) << "QHS link" << (r.qhs_link ? "yes" : "no") << "\n";
  out << std::setw(16) << "max|SF|<beta/2" << (r.folg1_condition ? "yes" : "no") << "\n";
  out << std::setw(16) << "eta frac" << rational_text(r.eta_fractional_sum_full) << "\n";
  out << std::setw(16) << "char poly" << format_char_poly(r.characteristic_polynomial.coefficients) << "\n";

  std::size_t mono_w = 10;
  for (const auto& m : r.basis.monomials) mono_w = std::max(mono_w, to_string(m).size() + 2);
  out << "\n"
      << std::setw(static_cast<int>(mono_w)) << "monomial" << std::setw(8) << "l" << std::setw(8) << "gamma"
      << std::right << std::setw(6) << "SF" << std::setw(6) << "sf" << "   " << std::left << "variation\n";
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    const auto& v = r.variation[i];
    out << std::setw(static_cast<int>(mono_w)) << to_string(r.basis.monomials[i]) << std::setw(8)
        << rational_text(r.basis.l_values[i]) << std::setw(8) << rational_text(r.spectrum.entries[i]) << std::right
        << std::setw(6) << r.flows.entries[i].SF << std::setw(6) << r.flows.entries[i].sf << "   " << std::left
        << "W(" << rational_text(v.rotation) << ", " << (v.sign > 0 ? "+1" : "-1") << ")\n";
  }
}

double tidy(double x) { return x == 0.0 ? 0.0 : x; }

std::string record_line(const verify::VerificationRecord& rec, int label_w) {
  std::ostringstream s;
  s << std::left << std::setw(16) << rec.kind << std::setw(label_w) << rec.label << std::right << std::fixed
    << std::setprecision(6) << std::setw(14) << tidy(rec.formula_value) << std::setw(14) << tidy(rec.numeric_value)
    << std::scientific << std::setprecision(2) << std::setw(11) << rec.abs_error << std::setw(7) << rec.grid
    << (rec.grid_refined ? "*" : " ") << "  " << std::left << std::setw(18) << rec.method
    << (rec.pass ? "pass" : "FAIL");
  return s.str();
}

std::string record_header(int label_w) {
  std::ostringstream s;
  s << std::left << std::setw(16) << "check" << std::setw(label_w) << "label" << std::right << std::setw(14) << "formula"
    << std::setw(14) << "numeric" << std::setw(11) << "|error|" << std::setw(7) << "grid" << "   " << std::left
    << std::setw(18) << "method" << "result";
  return s.str();
}

int exit_code_for(const std::exception& e, std::ostream& err) {
  if (dynamic_cast<const SyntaxError*>(&e) || dynamic_cast<const UnknownVariable*>(&e) ||
      dynamic_cast<const InvalidInput*>(&e)) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (dynamic_cast<const NotQuasihomogeneous*>(&e) || dynamic_cast<const AmbiguousWeights*>(&e)) {
    err << "error: " << e.what() << "\n"
        << "hint: pass the weights explicitly with --weights b0,b1,...,beta\n";
    return kWeights;
  }
  if (dynamic_cast<const ZeroIdeal*>(&e) || dynamic_cast<const NonIsolatedSingularity*>(&e)) {
    err << "error: " << e.what() << "\n";
    return kSingularity;
  }
  if (const auto* s = dynamic_cast<const StepTooCoarse*>(&e)) {
    err << "error: " << s->what() << "\n"
        << "hint: raise --grid or drop --no-refine to let the grid be doubled automatically\n";
    return kVerification;
  }
  err << "internal error: " << e.what() << "\n";
  return kInternal;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  auto log = std::make_shared<spdlog::logger>("milnorflow", sink);
  log->set_pattern("[%l] %v");
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("MILNORFLOW_LOG"); env && *env) level = spdlog::level::from_str(env);
  log->set_level(level);
  return log;
}

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  cmd->add_option("polynomial", in.polynomial, "Polynomial in z0, z1, ..., e.g. \"z0^3+z0*z1^3\"")->required();
  cmd->add_option("--weights", in.weights, "Explicit weights b0,b1,...,beta");
  cmd->add_option("--order", in.order, "Term order for the Groebner basis")
      ->check(CLI::IsMember({"wdegrevlex", "degrevlex", "lex"}));
  cmd->add_flag("--json", in.json, "Machine-readable JSON output");
  cmd->add_flag("--timing", in.timing, "Include per-stage timings in the JSON output");
}

int cmd_analyze(const InputFlags& in, std::ostream& out, std::ostream& err, spdlog::logger& log) {
  const Analysis a = analyze(in, log);
  if (in.json) {
    out << to_json(envelope(in, a)).dump(2) << "\n";
    return kOk;
  }
  if (a.report.regular_point) {
    out << "f = " << to_string(a.f) << " has no singularity at the origin: the Jacobian ideal is the unit ideal "
        << "(regular point, mu = 0)\n";
    err << "notice: regular point, nothing to analyze\n";
    return kSingularity;
  }
  print_table(out, a);
  return kOk;
}

int cmd_basis(const InputFlags& in, std::ostream& out, spdlog::logger& log) {
  const Analysis a = analyze(in, log);
  const auto& b = a.algebra->basis;
  if (in.json) {
    const Json full = to_json(envelope(in, a));
    Json j;
    for (const char* key : {"version", "input", "polynomial", "order", "weights", "mu", "regular_point",
                            "groebner_basis", "basis"})
      j[key] = full.at(key);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "mu = " << b.size() << "\n";
  for (std::size_t i = 0; i < b.size(); ++i)
    out << std::left << std::setw(16) << to_string(b.monomials[i]) << rational_text(b.l_values[i]) << "\n";
  return kOk;
}

int cmd_spectrum(const InputFlags& in, std::ostream& out, spdlog::logger& log) {
  const Analysis a = analyze(in, log);
  const auto& sp = a.report.spectrum;
  if (in.json) {
    const Json full = to_json(envelope(in, a));
    Json j;
    for (const char* key : {"version", "input", "polynomial", "weights", "mu", "spectrum"}) j[key] = full.at(key);
    j["symmetric"] = sp.is_symmetric(a.algebra->basis.n());
    out << j.dump(2) << "\n";
    return kOk;
  }
  for (std::size_t i = 0; i < sp.size(); ++i) out << (i ? " " : "") << rational_text(sp.entries[i]);
  out << "\n";
  return kOk;
}

struct VerifyFlags {
  std::size_t grid = 0;
  double tol = 1e-6;
  bool no_refine = false;
};

int cmd_verify(const InputFlags& in, const VerifyFlags& vf, std::ostream& out, std::ostream& err,
               spdlog::logger& log) {
  Analysis a = analyze(in, log);
  verify::VerifyOptions opts;
  opts.grid = vf.grid;
  opts.tol = vf.tol;
  opts.auto_refine = !vf.no_refine;

  const auto t = Clock::now();
  const auto records = verify::verify_all(a.algebra->basis, opts);
  a.timing_ms["verify"] = elapsed_ms(t);

  bool ok = true;
  for (const auto& rec : records) ok = ok && rec.pass;
  if (in.json) {
    ReportEnvelope env = envelope(in, a);
    env.verification = records;
    out << to_json(env).dump(2) << "\n";
  } else {
    std::size_t label_w = 8;
    for (const auto& rec : records) label_w = std::max(label_w, rec.label.size() + 2);
    out << record_header(static_cast<int>(label_w)) << "\n";
    for (const auto& rec : records) out << record_line(rec, static_cast<int>(label_w)) << "\n";
    if (!records.empty() && records.front().grid_refined)
      out << "* grid raised from " << records.front().requested_grid << " to the step bound\n";
    out << (ok ? "all " + std::to_string(records.size()) + " checks passed" : std::string("verification FAILED"))
        << "\n";
  }
  if (!ok) {
    for (const auto& rec : records)
      if (!rec.pass) err << "failed: " << to_json(rec).dump() << "\n";
    return kVerification;
  }
  return kOk;
}

struct SelftestFlags {
  std::uint64_t seed = selftest::Options{}.seed;
  bool break_branch = false;
  bool serial = false;
  bool json = false;
};

int cmd_selftest(const SelftestFlags& sf, std::ostream& out) {
  selftest::Options opts;
  opts.seed = sf.seed;
  opts.break_branch = sf.break_branch;
  opts.parallel = !sf.serial;
  const selftest::Report rep = selftest::run(opts);

  if (sf.json) {
    Json j;
    j["version"] = kToolVersion;
    j["seed"] = sf.seed;
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      Json cj;
      cj["name"] = c.name;
      cj["trials"] = c.trials;
      cj["passed"] = c.passed;
      cj["worst_error"] = c.worst_error;
      cj["counterexample"] = c.counterexample.empty() ? Json(nullptr) : Json::parse(c.counterexample);
      checks.push_back(cj);
    }
    j["checks"] = checks;
    j["pass"] = rep.ok();
    out << j.dump(2) << "\n";
  } else {
    out << "seed " << sf.seed << "\n";
    for (const auto& c : rep.checks)
      out << std::left << std::setw(26) << c.name << std::right << std::setw(4) << c.passed << "/" << std::left
          << std::setw(6) << c.trials << "worst error " << std::setprecision(3) << c.worst_error
          << (c.ok() ? "" : "   FAIL") << "\n";
    for (const auto& c : rep.checks)
      if (!c.ok()) {
        out << "counterexample (" << c.name << "): " << c.counterexample << "\n";
        break;
      }
    out << (rep.ok() ? "all property checks passed" : "property checks FAILED") << "\n";
  }
  return rep.ok() ? kOk : kVerification;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Milnor fibre invariants of quasihomogeneous singularities", "milnorflow"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  InputFlags analyze_in, basis_in, spectrum_in, verify_in;
  VerifyFlags verify_flags;
  SelftestFlags selftest_flags;

  auto* analyze_cmd = app.add_subcommand("analyze", "Milnor algebra, spectrum and spectral flow invariants");
  add_input_flags(analyze_cmd, analyze_in);
  auto* basis_cmd = app.add_subcommand("basis", "Monomial basis of the Milnor algebra with l-values");
  add_input_flags(basis_cmd, basis_in);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum l - 1 of the singularity");
  add_input_flags(spectrum_cmd, spectrum_in);
  auto* verify_cmd = app.add_subcommand("verify", "Check the spectral flow formulas on the circle action loop");
  add_input_flags(verify_cmd, verify_in);
  verify_cmd->add_option("--grid", verify_flags.grid, "Samples on the loop (default: the step bound)");
  verify_cmd->add_option("--tol", verify_flags.tol, "Tolerance for the Maslov comparison")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--no-refine", verify_flags.no_refine, "Fail instead of doubling a grid below the bound");

  auto* selftest_cmd = app.add_subcommand("engine-selftest", "Randomized property suite of the symplectic engine");
  selftest_cmd->add_option("--seed", selftest_flags.seed, "Seed for the random trials");
  selftest_cmd->add_flag("--json", selftest_flags.json, "Machine-readable JSON output");
  selftest_cmd->add_flag("--serial", selftest_flags.serial, "Run trials on one thread");
  selftest_cmd->add_flag("--break-branch", selftest_flags.break_branch)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto log = make_logger(err);
  try {
    if (*analyze_cmd) return cmd_analyze(analyze_in, out, err, *log);
    if (*basis_cmd) return cmd_basis(basis_in, out, *log);
    if (*spectrum_cmd) return cmd_spectrum(spectrum_in, out, *log);
    if (*verify_cmd) return cmd_verify(verify_in, verify_flags, out, err, *log);
    if (*selftest_cmd) return cmd_selftest(selftest_flags, out);
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
  return kUsage;
}

}  // namespace milnorflow::cli

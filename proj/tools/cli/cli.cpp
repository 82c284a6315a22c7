#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "spinorflow/cauchy_pair.hpp"
#include "spinorflow/flow_exact.hpp"
#include "spinorflow/flow_numeric.hpp"
#include "spinorflow/io.hpp"
#include "spinorflow/lorentz4d.hpp"
#include "spinorflow/verification.hpp"

namespace spinorflow::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  double t0 = 0.0;
  double t1 = 1.0;
  int samples = 101;
  std::string method = "exact";
  double tol = kDefaultTolerance;
  double step = 0.0;
  std::string out;
  std::string format;  // empty: per-command default
  std::string suite = "all";
  bool sweep = false;
  int jobs = 1;
  bool t0_set = false;
};

std::string format_of(const RunConfig& c, const std::string& fallback) {
  return c.format.empty() ? fallback : c.format;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) out << text;
  else write_file(path, text);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// validate / classify

int cmd_validate(const RunConfig& c, const PairInput& in, const std::string& path, std::ostream& out) {
  const ValidationReport rep = check(in.pair, c.tol);
  const ThetaInvariants inv = invariants(in.pair);
  const bool json = format_of(c, "text") == "json";
  std::optional<GroupType> g;
  std::optional<ConstraintReport> cr;
  if (rep.valid) {
    g = classify(in.pair, c.tol);
    cr = constraints(in.pair, c.tol);
  }
  if (json) {
    JsonWriter w;
    w.begin_object();
    w.key("valid").value(rep.valid);
    w.key("violated").begin_array();
    for (const auto& v : rep.violated) w.value(v);
    w.end_array();
    w.key("row");
    if (rep.row) w.value(to_string(*rep.row));
    else w.null();
    w.key("lambda").value(inv.lambda);
    w.key("T").value(inv.trace);
    w.key("Delta").value(inv.delta);
    if (g) {
      w.key("group").value(to_string(g->tag));
      w.key("mu").value(g->mu);
      w.key("H0").value(cr->hamiltonian);
      w.key("momentum").begin_array();
      for (double x : cr->momentum_residual) w.value(x);
      w.end_array();
      w.key("scalar_curvature").value(cr->scalar_curvature);
      w.key("constrained_ricci_flat").value(cr->is_vacuum_admissible);
    }
    w.end_object();
    emit(path, w.str() + "\n", out);
  } else {
    std::ostringstream s;
    s << "valid: " << bool_str(rep.valid) << "\n";
    for (const auto& v : rep.violated) s << "violated: " << v << "\n";
    if (rep.row) s << "row: " << to_string(*rep.row) << "\n";
    s << "lambda: " << format_double(inv.lambda) << "\n";
    s << "T: " << format_double(inv.trace) << "\n";
    s << "Delta: " << format_double(inv.delta) << "\n";
    if (g) {
      s << "group: " << to_string(g->tag) << "\n";
      if (g->mu) s << "mu: " << format_double(*g->mu) << "\n";
      s << "H0: " << format_double(cr->hamiltonian) << "\n";
      s << "momentum: " << format_double(cr->momentum_residual[0]) << " "
        << format_double(cr->momentum_residual[1]) << " " << format_double(cr->momentum_residual[2]) << "\n";
      s << "scalar_curvature: " << format_double(cr->scalar_curvature) << "\n";
      s << "constrained_ricci_flat: " << bool_str(cr->is_vacuum_admissible) << "\n";
    }
    emit(path, s.str(), out);
  }
  return rep.valid ? kOk : kInvalidPair;
}

int cmd_classify(const RunConfig& c, const PairInput& in, const std::string& path, std::ostream& out) {
  const GroupType g = classify(in.pair, c.tol);
  if (format_of(c, "text") == "json") {
    JsonWriter w;
    w.begin_object().key("group").value(to_string(g.tag)).key("mu").value(g.mu).end_object();
    emit(path, w.str() + "\n", out);
  } else {
    std::string s = "group: " + to_string(g.tag) + "\n";
    if (g.mu) s += "mu: " + format_double(*g.mu) + "\n";
    emit(path, s, out);
  }
  return kOk;
}

// lifespan

int cmd_lifespan(const RunConfig& c, const PairInput& in, const std::string& path, std::ostream& out) {
  const ExactFlow flow(in.pair, in.beta, c.tol);
  const Lifespan& ls = flow.lifespan();
  if (format_of(c, "text") == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("branch").value(to_string(flow.branch()));
    w.key("lifespan");
    write_lifespan(w, ls);
    w.end_object();
    emit(path, w.str() + "\n", out);
  } else {
    std::ostringstream s;
    s << "branch: " << to_string(flow.branch()) << "\n";
    s << "t_minus: " << format_bound(ls.t_minus) << "\n";
    s << "t_plus: " << format_bound(ls.t_plus) << "\n";
    s << "immortal: " << bool_str(ls.immortal) << "\n";
    s << "forward_criterion_immortal: "
      << (ls.forward_criterion_immortal ? bool_str(*ls.forward_criterion_immortal) : "unknown") << "\n";
    emit(path, s.str(), out);
  }
  return kOk;
}

// flow

bool inside(const Lifespan& ls, const LapseProfile& lp, double t) {
  const auto [a, b] = lp.domain();
  if (t < a || t > b) return false;
  if (ls.t_minus && t <= *ls.t_minus) return false;
  if (ls.t_plus && t >= *ls.t_plus) return false;
  return true;
}

int cmd_flow(const RunConfig& c, const PairInput& in, const std::string& path, std::ostream& out,
             std::ostream& err) {
  const ExactFlow flow(in.pair, in.beta, c.tol);
  const Lifespan& ls = flow.lifespan();
  std::vector<std::string> warnings;
  if (!inside(ls, in.beta, c.t0)) {
    err << "error: t0 = " << format_double(c.t0) << " lies outside the lifespan\n";
    return kNumericFailure;
  }
  double t1 = c.t1;
  const double db = in.beta.domain().second;
  double hi = db;
  if (ls.t_plus && *ls.t_plus < hi) hi = *ls.t_plus;
  if (t1 >= hi) {
    const double clipped = std::isfinite(hi) && hi < db ? c.t0 + 0.999 * (hi - c.t0) : hi;
    warnings.push_back("t1 clipped from " + format_double(t1) + " to " + format_double(clipped) +
                       " (lifespan or lapse table boundary)");
    t1 = clipped;
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";

  const auto times = sample_times({c.t0, t1}, static_cast<std::size_t>(c.samples));
  const double h0 = constraints(in.pair, c.tol).hamiltonian;
  std::vector<TrajectoryRow> rows;
  if (c.method == "exact") {
    for (double t : times) {
      TrajectoryRow r;
      r.state.t = t;
      r.state.theta = flow.theta(t);
      r.state.frame = flow.frame(t);
      r.state.metric = flow.metric(t);
      r.state.hamiltonian = flow.hamiltonian(t, h0);
      r.b = flow.b(t);
      r.residuals = flow_residuals(r.state, in.pair, in.beta.beta(t));
      rows.push_back(r);
    }
  } else {
    StepOptions so;
    so.step = c.step;
    const Trajectory traj = sample(in.pair, in.beta, times, so);
    if (traj.truncated) warnings.push_back("trajectory truncated by the overflow guard");
    for (const FlowState& s : traj.states) {
      TrajectoryRow r;
      r.state = s;
      r.b = in.beta.integral(s.t);
      r.residuals = flow_residuals(s, in.pair, in.beta.beta(s.t));
      rows.push_back(r);
    }
  }

  if (format_of(c, "csv") == "json") {
    emit(path, trajectory_json(rows, ls, c.method, warnings), out);
  } else {
    std::vector<std::string> comments{
        "method: " + c.method,
        "branch: " + to_string(flow.branch()),
        "lifespan: t_minus=" + format_bound(ls.t_minus) + " t_plus=" + format_bound(ls.t_plus),
        "immortal: " + bool_str(ls.immortal),
    };
    for (const auto& w : warnings) comments.push_back("warning: " + w);
    emit(path, trajectory_csv(rows, comments), out);
  }
  return kOk;
}

// curvature

int cmd_curvature(const RunConfig& c, const PairInput& in, const std::string& path, std::ostream& out) {
  const ExactFlow flow(in.pair, in.beta, c.tol);
  const double t = c.t0;
  const double h0 = constraints(in.pair, c.tol).hamiltonian;
  const CurvatureSnapshot snap = curvature_at(flow, t);
  const Ricci4 ric = ricci4(coframe4_from_theta(t, snap.theta, in.beta.beta(t)));
  const double id_res = verify_ricci_identity(in.pair, in.beta, t);
  const double h_closed = flow.hamiltonian(t, h0);

  if (format_of(c, "json") == "csv") {
    std::ostringstream s;
    s << "key,value\n";
    s << "t," << format_double(t) << "\n";
    const char* names[6] = {"uu", "ul", "un", "ll", "ln", "nn"};
    for (std::size_t i = 0; i < 6; ++i) s << "ricci3_" << names[i] << "," << format_double(snap.ricci.components()[i]) << "\n";
    s << "scalar_curvature," << format_double(snap.scalar) << "\n";
    s << "H_t," << format_double(snap.hamiltonian) << "\n";
    s << "H_t_closed_form," << format_double(h_closed) << "\n";
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) s << "ricci4_" << i << j << "," << format_double(ric[i][j]) << "\n";
    s << "ricci4_identity_residual," << format_double(id_res) << "\n";
    emit(path, s.str(), out);
    return kOk;
  }
  JsonWriter w;
  w.begin_object();
  w.key("t").value(t);
  w.key("branch").value(to_string(flow.branch()));
  w.key("lifespan");
  write_lifespan(w, flow.lifespan());
  w.key("ricci3").begin_array();
  for (double x : snap.ricci.components()) w.value(x);
  w.end_array();
  w.key("scalar_curvature").value(snap.scalar);
  w.key("H_t").value(snap.hamiltonian);
  w.key("H_t_closed_form").value(h_closed);
  w.key("momentum").begin_array();
  for (double x : snap.momentum) w.value(x);
  w.end_array();
  w.key("ricci4").begin_array();
  for (const auto& row : ric) {
    w.begin_array();
    for (double x : row) w.value(x);
    w.end_array();
  }
  w.end_array();
  w.key("residuals").begin_object();
  w.key("ricci4_identity").value(id_res);
  w.key("hamiltonian_closed_form").value(std::abs(snap.hamiltonian - h_closed));
  w.end_object();
  w.end_object();
  emit(path, w.str() + "\n", out);
  return kOk;
}

// verify

int cmd_verify(const RunConfig& c, const PairInput& in, const std::string& path, std::ostream& out) {
  const auto suite = parse_suite(c.suite);
  VerifyOptions vo;
  vo.samples = static_cast<std::size_t>(c.samples);
  vo.tol = c.tol;
  if (c.t0_set) vo.window = std::make_pair(c.t0, c.t1);
  const auto results = run_suite(in.pair, in.beta, *suite, vo);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed();

  if (format_of(c, "text") == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("passed").value(ok);
    w.key("suites").begin_array();
    for (const auto& r : results) {
      w.begin_object();
      w.key("suite").value(to_string(r.suite));
      w.key("passed").value(r.passed());
      w.key("assertions").begin_array();
      for (const auto& a : r.assertions) {
        w.begin_object();
        w.key("name").value(a.name);
        w.key("applicable").value(a.applicable);
        w.key("max_residual").value(a.max_residual);
        w.key("tolerance").value(a.tolerance);
        w.key("passed").value(a.passed());
        w.end_object();
      }
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.end_object();
    emit(path, w.str() + "\n", out);
  } else {
    std::ostringstream s;
    for (const auto& r : results)
      for (const auto& a : r.assertions) {
        s << to_string(r.suite) << " " << a.name << " ";
        if (!a.applicable) {
          s << "SKIP\n";
          continue;
        }
        s << format_double(a.max_residual) << " <= " << format_double(a.tolerance) << " "
          << (a.passed() ? "PASS" : "FAIL") << "\n";
      }
    s << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    emit(path, s.str(), out);
  }
  return ok ? kOk : kNumericFailure;
}

int run_element(const RunConfig& c, const PairInput& in, const std::string& path, std::ostream& out,
                std::ostream& err) {
  try {
    if (c.command == "validate") return cmd_validate(c, in, path, out);
    if (c.command == "classify") return cmd_classify(c, in, path, out);
    if (c.command == "lifespan") return cmd_lifespan(c, in, path, out);
    if (c.command == "flow") return cmd_flow(c, in, path, out, err);
    if (c.command == "curvature") return cmd_curvature(c, in, path, out);
    if (c.command == "verify") return cmd_verify(c, in, path, out);
  } catch (const InvalidPair& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidPair;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  }
  err << "error: unknown command " << c.command << "\n";
  return kIoFailure;
}

std::string element_path(const std::string& out, std::size_t index) {
  if (out.empty()) return out;
  const std::filesystem::path p(out);
  std::string name = p.stem().string() + "_" + std::to_string(index) + p.extension().string();
  return (p.parent_path() / name).string();
}

int run_sweep(const RunConfig& c, const std::vector<PairInput>& inputs, std::ostream& out,
              std::ostream& err) {
  const std::size_t n = inputs.size();
  std::vector<int> codes(n, 0);
  std::vector<std::ostringstream> outs(n);
  std::vector<std::ostringstream> errs(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++)
      codes[i] = run_element(c, inputs[i], element_path(c.out, i), outs[i], errs[i]);
  };
  const int jobs = std::max(1, std::min<int>(c.jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int worst = kOk;
  for (std::size_t i = 0; i < n; ++i) {
    if (c.out.empty()) out << "## element " << i << "\n" << outs[i].str();
    err << errs[i].str();
    out << "element " << i << ": exit " << codes[i] << "\n";
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("SPINORFLOW_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      err << "error: SPINORFLOW_TOL must be a positive number\n";
      return kIoFailure;
    }
    c.tol = v;
  }

  CLI::App app{"Left-invariant parallel spinor flows on three-dimensional Lie groups", "spinorflow"};
  app.add_option("command", c.command, "validate|classify|flow|lifespan|curvature|verify")
      ->required()
      ->check(CLI::IsMember({"validate", "classify", "flow", "lifespan", "curvature", "verify"}));
  app.add_option("input", c.input, "pair JSON file")->required();
  auto* t0 = app.add_option("--t0", c.t0, "window start (evaluation time for curvature)");
  app.add_option("--t1", c.t1, "window end");
  app.add_option("--samples", c.samples, "number of sample times")->check(CLI::Range(2, 100000000));
  app.add_option("--method", c.method, "exact|rk4")->check(CLI::IsMember({"exact", "rk4"}));
  auto* tol = app.add_option("--tol", c.tol, "relative zero tolerance (overrides SPINORFLOW_TOL)");
  tol->check(CLI::PositiveNumber);
  app.add_option("--step", c.step, "rk4 step (default lifespan/1e4)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--suite", c.suite, "all|constraints|ricci4|ricciflow|cosymplectic|oracle")
      ->check(CLI::IsMember({"all", "constraints", "ricci4", "ricciflow", "cosymplectic", "oracle"}));
  app.add_flag("--sweep", c.sweep, "input is a JSON array of pairs");
  app.add_option("--jobs", c.jobs, "parallel sweep workers")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kIoFailure;
  }
  c.t0_set = t0->count() > 0;
  if (!(c.t0 < c.t1) && c.command != "curvature") {
    err << "error: t0 must be smaller than t1\n";
    return kIoFailure;
  }

  try {
    const std::string text = read_file(c.input);
    if (c.sweep) return run_sweep(c, parse_sweep(text), out, err);
    return run_element(c, parse_pair(text), c.out, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  }
}

}  // namespace spinorflow::cli

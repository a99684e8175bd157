#include "cli.hpp"

#include "qcap/bounds.hpp"
#include "qcap/channel_io.hpp"
#include "qcap/channels.hpp"
#include "qcap/selftest.hpp"

#include <CLI11/CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qcap::cli {
namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw std::invalid_argument(what + ": '" + s + "' is not a number");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_real(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw std::invalid_argument(what + ": '" + s + "' is not an integer");
  return static_cast<int>(v);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// Channel grammar: "kind:arg" atoms joined by " x " for tensor products.
std::vector<std::string> split_tensor(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto k = spec.find(" x ", pos);
    if (k == std::string::npos) {
      parts.push_back(trim(spec.substr(pos)));
      break;
    }
    parts.push_back(trim(spec.substr(pos, k - pos)));
    pos = k + 3;
  }
  return parts;
}

struct Atom {
  std::string kind;
  std::string arg;
};

Atom parse_atom(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= s.size())
    throw std::invalid_argument("channel spec '" + s + "': expected kind:value");
  return {s.substr(0, colon), s.substr(colon + 1)};
}

QuantumChannel build_atom(const Atom& a) {
  if (a.kind == "ad") return amplitude_damping(parse_real(a.arg, "ad"));
  if (a.kind == "cq") return cq_two_state(parse_real(a.arg, "cq"));
  if (a.kind == "nalpha") return n_alpha(parse_real(a.arg, "nalpha"));
  if (a.kind == "identity") return identity_channel(parse_int(a.arg, "identity"));
  if (a.kind == "classical") return classical_channel(load_stochastic_json_file(a.arg));
  if (a.kind == "kraus") return load_channel_json_file(a.arg);
  throw std::invalid_argument("unknown channel kind '" + a.kind +
                              "' (expected ad, cq, nalpha, identity, classical, or kraus)");
}

QuantumChannel build_channel(const std::string& spec) {
  auto parts = split_tensor(spec);
  auto ch = build_atom(parse_atom(parts[0]));
  for (std::size_t i = 1; i < parts.size(); ++i)
    ch = tensor_channels(ch, build_atom(parse_atom(parts[i])));
  return ch;
}

// ---------------------------------------------------------------------------
// Bound catalogue.

struct BoundInfo {
  const char* name;
  const char* summary;
};

constexpr BoundInfo kBounds[] = {
    {"fns", "success probability for --m messages, no-signalling codes"},
    {"fnsppt", "success probability for --m messages, no-signalling + PPT-preserving codes"},
    {"c1ns", "one-shot eps-error capacity in bits, no-signalling codes"},
    {"c1nsppt", "one-shot eps-error capacity in bits, no-signalling + PPT-preserving codes"},
    {"re", "hypothesis-testing converse in bits (relaxed output pin)"},
    {"reppt", "hypothesis-testing converse in bits with PPT rows"},
    {"fplus", "multiplicative success-probability relaxation at real --m"},
    {"ftildeplus", "one-sided variant of fplus (V >= J in place of the absolute-value pair)"},
    {"beta", "strong-converse capacity bound in bits; the fplus program at m = 1"},
    {"zeta", "second strong-converse bound in bits; the ftildeplus program at m = 1"},
    {"m0ns", "zero-error transmissible messages (possibly fractional), no-signalling codes"},
    {"m0nsppt", "zero-error transmissible messages, no-signalling + PPT-preserving codes"},
    {"ppv", "finite-blocklength converse LP for a classical channel, in bits"},
    {"eacap", "entanglement-assisted capacity estimate by input-state search, in bits"},
    {"adlower", "closed-form capacity lower bound for the damping channel, in bits"},
    {"decay", "lower bound on the --uses-use error probability at rate --rate"},
};

bool known_bound(const std::string& name) {
  for (const auto& b : kBounds)
    if (name == b.name) return true;
  return false;
}

// Short names f/c1/m0/re select the code class through --class.
std::string resolve_bound(const std::string& name, const std::string& cls) {
  const bool is_base = name == "f" || name == "c1" || name == "m0" || name == "re";
  if (is_base) {
    if (cls.empty())
      throw std::invalid_argument("bound '" + name + "' needs --class ns or --class nsppt");
    if (name == "re") return cls == "ns" ? "re" : "reppt";
    return name + cls;
  }
  if (!known_bound(name)) throw std::invalid_argument("unknown bound '" + name + "'");
  return name;
}

struct ComputeContext {
  std::string channel_spec;
  double eps = 0.0;
  double m = 2.0;
  double rate = std::numeric_limits<double>::quiet_NaN();
  int uses = 1;
  SolverOptions opts;
};

int require_integer_m(double m) {
  if (m < 1.0 || m != std::floor(m))
    throw std::invalid_argument("--m must be a positive integer for this bound");
  return static_cast<int>(m);
}

// A single evaluated value, uniform across solver-backed and closed-form
// bounds so compute and sweep share one code path.
struct Evaluation {
  std::string channel_label;
  std::optional<double> value_log;
  std::optional<double> value_linear;
  bool solver_backed = false;
  SolveStatus status = SolveStatus::optimal;
  int iterations = 0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::string message;
};

Evaluation from_result(const BoundResult& r) {
  Evaluation e;
  e.channel_label = r.channel_label;
  if (r.value_log) e.value_log = *r.value_log;
  e.value_linear = r.value_linear;
  e.solver_backed = !r.diagnostics.conic.trace.empty();
  e.status = r.diagnostics.status;
  e.iterations = r.diagnostics.iterations;
  e.gap = r.diagnostics.gap;
  e.primal_residual = r.diagnostics.primal_residual;
  e.dual_residual = r.diagnostics.dual_residual;
  e.message = r.diagnostics.conic.message;
  return e;
}

Evaluation evaluate(const std::string& bound, const ComputeContext& ctx) {
  const auto& opts = ctx.opts;
  if (bound == "ppv") {
    auto parts = split_tensor(ctx.channel_spec);
    auto atom = parse_atom(parts[0]);
    if (parts.size() != 1 || atom.kind != "classical")
      throw std::invalid_argument("ppv needs a classical channel: --channel classical:<path>");
    auto e = from_result(ppv_lp(load_stochastic_json_file(atom.arg), ctx.eps, opts));
    e.channel_label = "classical";
    return e;
  }
  if (bound == "adlower") {
    auto parts = split_tensor(ctx.channel_spec);
    auto atom = parse_atom(parts[0]);
    if (parts.size() != 1 || atom.kind != "ad")
      throw std::invalid_argument("adlower is defined for the damping channel: --channel ad:<gamma>");
    const double gamma = parse_real(atom.arg, "ad");
    Evaluation e;
    e.channel_label = amplitude_damping(gamma).label();
    const double bits = ad_holevo_lower(gamma);
    e.value_log = bits;
    e.value_linear = std::exp2(bits);
    return e;
  }

  auto ch = build_channel(ctx.channel_spec);
  if (bound == "fns") return from_result(success_prob(ch, require_integer_m(ctx.m), CodeClass::NS, opts));
  if (bound == "fnsppt")
    return from_result(success_prob(ch, require_integer_m(ctx.m), CodeClass::NS_PPT, opts));
  if (bound == "c1ns") return from_result(one_shot_capacity(ch, ctx.eps, CodeClass::NS, opts));
  if (bound == "c1nsppt") return from_result(one_shot_capacity(ch, ctx.eps, CodeClass::NS_PPT, opts));
  if (bound == "re") return from_result(ht_bound(ch, ctx.eps, false, opts));
  if (bound == "reppt") return from_result(ht_bound(ch, ctx.eps, true, opts));
  if (bound == "fplus") return from_result(f_plus(ch, ctx.m, opts));
  if (bound == "ftildeplus") return from_result(f_tilde_plus(ch, ctx.m, opts));
  if (bound == "beta") return from_result(beta(ch, opts));
  if (bound == "zeta") return from_result(zeta(ch, opts));
  if (bound == "m0ns") return from_result(zero_error_m0(ch, CodeClass::NS, opts));
  if (bound == "m0nsppt") return from_result(zero_error_m0(ch, CodeClass::NS_PPT, opts));
  if (bound == "eacap") {
    auto e = from_result(ea_capacity_search(ch));
    e.solver_backed = false;
    return e;
  }
  if (bound == "decay") {
    if (std::isnan(ctx.rate)) throw std::invalid_argument("decay needs --rate <bits per use>");
    if (ctx.uses < 1) throw std::invalid_argument("--uses must be a positive integer");
    Evaluation e;
    e.channel_label = ch.label();
    e.value_linear = strong_converse_decay(ch, ctx.rate, ctx.uses, opts);
    return e;
  }
  throw std::invalid_argument("unknown bound '" + bound + "'");
}

SolverOptions options_from_env() {
  SolverOptions opts;
  if (const char* v = std::getenv("QCAP_FEAS_TOL")) opts.feas_tol = std::atof(v);
  if (const char* v = std::getenv("QCAP_GAP_TOL")) opts.gap_tol = std::atof(v);
  return opts;
}

// ---------------------------------------------------------------------------
// compute

int cmd_compute(const std::string& bound_arg, const std::string& cls, const ComputeContext& ctx,
                std::ostream& out, std::ostream& err) {
  const std::string bound = resolve_bound(bound_arg, cls);

  Evaluation e;
  bool parsed = false;
  try {
    e = evaluate(bound, ctx);
    parsed = true;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  (void)parsed;

  out << "bound: " << bound << "\n";
  out << "channel: " << e.channel_label << "\n";
  if (e.value_log) out << "value_log: " << fmt9(*e.value_log) << "\n";
  if (e.value_linear) out << "value_linear: " << fmt9(*e.value_linear) << "\n";

  if (!e.solver_backed) return 0;
  err << "status: " << to_string(e.status) << "\n";
  err << "iterations: " << e.iterations << "\n";
  err << "gap: " << fmt9(e.gap) << "\n";
  err << "primal_residual: " << fmt9(e.primal_residual) << "\n";
  err << "dual_residual: " << fmt9(e.dual_residual) << "\n";
  if (!e.message.empty()) err << "message: " << e.message << "\n";
  return e.status == SolveStatus::optimal ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  std::string bound;
  double param = 0.0;
  std::optional<double> value_log;
  std::optional<double> value_linear;
  std::string status;
  std::optional<double> gap;
  bool flagged = false;
};

// Substitutes `name` for `value` where it appears as a whole channel-spec
// argument, i.e. preceded by ':' and followed by a space or the end.
std::string substitute_param(const std::string& spec, const std::string& name,
                             const std::string& value, bool* hit) {
  std::string out;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto k = spec.find(name, pos);
    if (k == std::string::npos) {
      out += spec.substr(pos);
      break;
    }
    const bool at_arg = k > 0 && spec[k - 1] == ':';
    const std::size_t end = k + name.size();
    const bool closes = end == spec.size() || spec[end] == ' ';
    out += spec.substr(pos, k - pos);
    if (at_arg && closes) {
      out += value;
      if (hit) *hit = true;
    } else {
      out += name;
    }
    pos = end;
  }
  return out;
}

std::vector<double> sweep_grid(double start, double stop, double step) {
  if (step <= 0) throw std::invalid_argument("--param step must be positive");
  if (start > stop) throw std::invalid_argument("--param start must not exceed stop");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + step * 1e-9) break;
    grid.push_back(std::min(v, stop));
  }
  return grid;
}

void write_csv(const std::vector<SweepRow>& rows, bool multi, std::ostream& out) {
  if (multi) out << "bound,param,value_log,value_linear,status,gap\n";
  else out << "param,value_log,value_linear,status,gap\n";
  for (const auto& r : rows) {
    if (multi) out << r.bound << ",";
    out << fmt9(r.param) << ",";
    out << (r.value_log ? fmt9(*r.value_log) : "") << ",";
    out << (r.value_linear ? fmt9(*r.value_linear) : "") << ",";
    out << r.status << ",";
    out << (r.gap ? fmt9(*r.gap) : "") << "\n";
  }
}

void write_json(const std::vector<SweepRow>& rows, bool multi, std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    if (multi) row["bound"] = r.bound;
    row["param"] = fmt9(r.param);
    row["value_log"] = r.value_log ? nlohmann::ordered_json(fmt9(*r.value_log)) : nullptr;
    row["value_linear"] = r.value_linear ? nlohmann::ordered_json(fmt9(*r.value_linear)) : nullptr;
    row["status"] = r.status;
    row["gap"] = r.gap ? nlohmann::ordered_json(fmt9(*r.gap)) : nullptr;
    doc.push_back(std::move(row));
  }
  out << doc.dump(2) << "\n";
}

std::string plot_stub_path(const std::string& out_path) {
  const std::string suffix = ".csv";
  if (out_path.size() > suffix.size() &&
      out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out_path.substr(0, out_path.size() - suffix.size()) + "_plot.py";
  return out_path + "_plot.py";
}

void write_plot_stub(const std::string& csv_path, const std::string& param, bool multi,
                     std::ostream& out) {
  auto slash = csv_path.find_last_of('/');
  const std::string base = slash == std::string::npos ? csv_path : csv_path.substr(slash + 1);
  out << "#!/usr/bin/env python3\n";
  out << "# Plots value_log against " << param << " from " << base << " (one line per bound).\n";
  out << "import csv\n";
  out << "import collections\n";
  out << "import matplotlib.pyplot as plt\n";
  out << "\n";
  out << "series = collections.defaultdict(list)\n";
  out << "with open(\"" << base << "\") as fh:\n";
  out << "    for row in csv.DictReader(fh):\n";
  if (multi) out << "        key = row[\"bound\"]\n";
  else out << "        key = \"value_log\"\n";
  out << "        if row[\"value_log\"]:\n";
  out << "            series[key].append((float(row[\"param\"]), float(row[\"value_log\"])))\n";
  out << "for name, pts in sorted(series.items()):\n";
  out << "    pts.sort()\n";
  out << "    plt.plot([p for p, _ in pts], [v for _, v in pts], marker=\"o\", label=name)\n";
  out << "plt.xlabel(\"" << param << "\")\n";
  out << "plt.ylabel(\"value_log [bits]\")\n";
  out << "plt.legend()\n";
  out << "plt.tight_layout()\n";
  out << "plt.savefig(\"" << base << ".png\", dpi=160)\n";
}

int cmd_sweep(const std::vector<std::string>& bounds_arg, const std::string& cls,
              const ComputeContext& base_ctx, const std::string& param_arg,
              const std::string& out_path, const std::string& format, int jobs,
              std::ostream& out, std::ostream& err) {
  std::vector<std::string> bounds;
  for (const auto& b : bounds_arg) bounds.push_back(resolve_bound(b, cls));

  // --param name:start:stop:step
  std::vector<std::string> fields;
  {
    std::stringstream ss(param_arg);
    std::string tok;
    while (std::getline(ss, tok, ':')) fields.push_back(tok);
  }
  if (fields.size() != 4)
    throw std::invalid_argument("--param expects name:start:stop:step");
  const std::string pname = fields[0];
  const auto grid = sweep_grid(parse_real(fields[1], "--param start"),
                               parse_real(fields[2], "--param stop"),
                               parse_real(fields[3], "--param step"));

  const bool is_fixed_param =
      pname == "eps" || pname == "m" || pname == "rate" || pname == "uses";
  {
    bool hit = false;
    substitute_param(base_ctx.channel_spec, pname, "0", &hit);
    if (!hit && !is_fixed_param)
      throw std::invalid_argument("swept parameter '" + pname +
                                  "' does not appear in the channel spec and is not one of "
                                  "eps, m, rate, uses");
  }

  struct Job {
    std::size_t row;
    std::string bound;
    double value;
  };
  std::vector<Job> todo;
  std::vector<SweepRow> rows(grid.size() * bounds.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi)
    for (std::size_t bi = 0; bi < bounds.size(); ++bi)
      todo.push_back({gi * bounds.size() + bi, bounds[bi], grid[gi]});

  auto run_one = [&](const Job& job) {
    SweepRow row;
    row.bound = job.bound;
    row.param = job.value;
    ComputeContext ctx = base_ctx;
    ctx.channel_spec =
        substitute_param(base_ctx.channel_spec, pname, fmt9(job.value), nullptr);
    if (pname == "eps") ctx.eps = job.value;
    if (pname == "m") ctx.m = job.value;
    if (pname == "rate") ctx.rate = job.value;
    if (pname == "uses") ctx.uses = static_cast<int>(job.value);
    try {
      auto e = evaluate(job.bound, ctx);
      row.value_log = e.value_log;
      row.value_linear = e.value_linear;
      if (e.solver_backed) {
        row.status = to_string(e.status);
        row.gap = e.gap;
        row.flagged = e.status != SolveStatus::optimal;
      } else {
        row.status = "optimal";
      }
    } catch (const std::exception&) {
      row.status = "invalid";
      row.flagged = true;
    }
    rows[job.row] = std::move(row);
  };

  if (jobs <= 1) {
    for (const auto& job : todo) run_one(job);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(jobs, todo.size());
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= todo.size()) break;
          run_one(todo[i]);
        }
      });
    for (auto& th : pool) th.join();
  }

  const bool multi = bounds.size() > 1;
  if (out_path.empty()) {
    if (format == "json") write_json(rows, multi, out);
    else write_csv(rows, multi, out);
  } else {
    std::ofstream fh(out_path, std::ios::binary);
    if (!fh) {
      err << "error: cannot open '" << out_path << "' for writing\n";
      return 1;
    }
    if (format == "json") write_json(rows, multi, fh);
    else write_csv(rows, multi, fh);
    if (format == "csv") {
      const std::string stub = plot_stub_path(out_path);
      std::ofstream ph(stub, std::ios::binary);
      if (ph) write_plot_stub(out_path, pname, multi, ph);
      err << "wrote " << out_path << " and " << stub << "\n";
    } else {
      err << "wrote " << out_path << "\n";
    }
  }

  for (const auto& r : rows)
    if (r.flagged) return 3;
  return 0;
}

// ---------------------------------------------------------------------------
// selftest and list-bounds

int cmd_selftest(const std::string& criteria_arg, std::ostream& out) {
  std::vector<int> which;
  if (!criteria_arg.empty()) {
    std::stringstream ss(criteria_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) which.push_back(parse_int(trim(tok), "--criteria"));
  }
  const auto results = run_acceptance(which);
  int passed = 0;
  for (const auto& r : results) {
    char line[512];
    std::snprintf(line, sizeof line, "[%2d] %s  %-44s %s", r.index,
                  r.pass ? "PASS" : "FAIL", r.label.c_str(), r.detail.c_str());
    out << line << "\n";
    passed += r.pass ? 1 : 0;
  }
  out << "passed " << passed << " of " << results.size() << "\n";
  return passed == static_cast<int>(results.size()) ? 0 : 4;
}

int cmd_list_bounds(std::ostream& out) {
  for (const auto& b : kBounds) {
    char line[256];
    std::snprintf(line, sizeof line, "%-11s %s", b.name, b.summary);
    out << line << "\n";
  }
  return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"converse bounds on classical communication over quantum channels"};
  app.require_subcommand(1);

  std::string bound_arg, channel_spec, cls, param_arg, out_path, criteria_arg;
  std::string format = "csv";
  double eps = 0.0, m = 2.0, rate = std::numeric_limits<double>::quiet_NaN();
  double feas_tol = -1.0, gap_tol = -1.0;
  int uses = 1, jobs = 1;

  const std::string channel_help =
      "channel spec: ad:<gamma> | cq:<a> | nalpha:<alpha> | identity:<d> | "
      "classical:<json path> | kraus:<json path>, joined by ' x ' for tensor products";

  auto add_common = [&](CLI::App* c, bool channel_required) {
    c->add_option("--channel", channel_spec, channel_help)->required(channel_required);
    c->add_option("--eps", eps, "error tolerance for eps-error bounds (default 0)");
    c->add_option("--m", m, "message count (integer for fns/fnsppt, real for fplus/ftildeplus)");
    c->add_option("--class", cls, "code class ns|nsppt for the short bound names f, c1, m0, re")
        ->check(CLI::IsMember({"ns", "nsppt"}));
    c->add_option("--rate", rate, "rate in bits per use (decay)");
    c->add_option("--uses", uses, "number of channel uses (decay; default 1)");
    c->add_option("--feas-tol", feas_tol, "solver feasibility tolerance (default 1e-8)");
    c->add_option("--gap-tol", gap_tol, "solver gap tolerance (default 1e-8)");
  };

  auto* compute = app.add_subcommand("compute", "evaluate one bound on one channel");
  compute->add_option("--bound", bound_arg, "bound name; see list-bounds")->required();
  add_common(compute, true);

  auto* sweep = app.add_subcommand("sweep", "evaluate bounds over a parameter grid");
  std::vector<std::string> sweep_bounds;
  sweep->add_option("--bound", sweep_bounds, "bound name(s); repeat or comma-separate")
      ->required()
      ->delimiter(',');
  add_common(sweep, true);
  sweep->add_option("--param", param_arg, "swept parameter as name:start:stop:step")->required();
  sweep->add_option("--out", out_path, "output file (default: stdout)");
  sweep->add_option("--format", format, "output format csv|json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--jobs", jobs, "max concurrent grid jobs (default 1)")
      ->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance checks");
  selftest->add_option("--criteria", criteria_arg,
                       "comma-separated 1-based criterion indices (default: all)");

  app.add_subcommand("list-bounds", "list the available bound names");

  std::vector<const char*> argv;
  argv.push_back("qcap");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  ComputeContext ctx;
  ctx.channel_spec = channel_spec;
  ctx.eps = eps;
  ctx.m = m;
  ctx.rate = rate;
  ctx.uses = uses;
  ctx.opts = options_from_env();
  if (feas_tol > 0) ctx.opts.feas_tol = feas_tol;
  if (gap_tol > 0) ctx.opts.gap_tol = gap_tol;

  try {
    if (app.got_subcommand("compute")) return cmd_compute(bound_arg, cls, ctx, out, err);
    if (app.got_subcommand("sweep"))
      return cmd_sweep(sweep_bounds, cls, ctx, param_arg, out_path, format, jobs, out, err);
    if (app.got_subcommand("selftest")) return cmd_selftest(criteria_arg, out);
    if (app.got_subcommand("list-bounds")) return cmd_list_bounds(out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 1;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

} // namespace qcap::cli

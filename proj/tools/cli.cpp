#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "qmoment/determinacy.hpp"
#include "qmoment/errors.hpp"
#include "qmoment/moments.hpp"
#include "qmoment/report.hpp"
#include "qmoment/witness.hpp"
#include "qmoment/zoo.hpp"

namespace qmoment::cli {

namespace {

// Raised for usage problems found after flag parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Early exit with a specific code and message.
struct CommandExit {
  int code;
  std::string message;
};

struct Source {
  Json description;
  std::optional<NamedDistribution> named;
  DensityPtr density;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read input file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ParamMap parse_params(const std::vector<std::string>& params) {
  ParamMap out;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + p + "'");
    const std::string key = p.substr(0, eq);
    if (out.count(key)) throw UsageError("parameter '" + key + "' given twice");
    out[key] = p.substr(eq + 1);
  }
  return out;
}

Source load_source(const RunConfig& cfg, bool need_density = true) {
  if (cfg.input.empty() == cfg.zoo.empty()) throw UsageError("give exactly one of --input FILE or --zoo NAME");
  Source s;
  if (!cfg.input.empty()) {
    auto table = std::make_shared<const QDensity>(read_density_table(read_file(cfg.input)));
    if (!cfg.q.empty() && !(QParam(cfg.q) == table->q())) {
      throw UsageError("--q " + cfg.q + " does not match q = " + table->q().text() + " in " + cfg.input);
    }
    s.description = Json{{"kind", "table"}, {"path", cfg.input}};
    s.density = std::move(table);
    return s;
  }
  ParamMap params = parse_params(cfg.params);
  if (!cfg.q.empty()) {
    auto it = params.find("q");
    if (it != params.end() && !(QParam(it->second) == QParam(cfg.q))) {
      throw UsageError("--q and --param q= disagree");
    }
    params["q"] = cfg.q;
  }
  NamedDistribution named = make_named(cfg.zoo, params);
  Json p;
  for (const auto& [k, v] : named.params) p[k] = v;
  s.description = Json{{"kind", "zoo"}, {"name", named.name}, {"params", std::move(p)}};
  s.density = named.q_density;
  if (need_density && !s.density) throw UsageError(named.name + " needs --q to define a q-density");
  s.named = std::move(named);
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  return line + "\n";
}

Json header(const char* command, const RunConfig& cfg, const Source& s) {
  Json j;
  j["command"] = command;
  j["source"] = s.description;
  j["q"] = s.density ? s.density->q().text() : cfg.q;
  j["digits"] = cfg.digits;
  return j;
}

// ---- moments --------------------------------------------------------------

std::string cmd_moments(const RunConfig& cfg) {
  const Source s = load_source(cfg);
  const PrecisionContext ctx(cfg.digits);
  if (cfg.n_max < 0) throw UsageError("--n-max must be non-negative");
  Json rows = Json::array();
  std::string csv = csv_line({"n", "value", "tail_bound", "terms_used", "j_peak", "a_n"});
  for (long n = 0; n <= cfg.n_max; ++n) {
    const QMomentReport r = q_moment(*s.density, n, ctx);
    Json row = to_json(r, ctx);
    std::string a_n;
    if (n > 0 && r.value > 0) a_n = (log(r.value) / (n * n)).to_string(ctx.digits());
    row["a_n"] = a_n.empty() ? Json(nullptr) : Json(a_n);
    csv += csv_line({std::to_string(n), r.value.to_string(ctx.digits()), r.tail_bound.to_string(ctx.digits()),
                     std::to_string(r.terms_used), std::to_string(r.j_peak), a_n});
    rows.push_back(std::move(row));
  }
  if (cfg.format == "csv") return csv;
  Json j = header("moments", cfg, s);
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

// ---- classify -------------------------------------------------------------

std::string cmd_classify(const RunConfig& cfg, long m, long prop4_n_max) {
  const Source s = load_source(cfg);
  const PrecisionContext ctx(cfg.digits);
  const QDensity& f = *s.density;
  std::vector<Verdict> verdicts;
  verdicts.push_back(check_condition_B(f, cfg.window, ctx));
  verdicts.push_back(check_condition_C(f, cfg.window, ctx));
  verdicts.push_back(check_thm3_mj(f, m, cfg.window, ctx));
  verdicts.push_back(classify_prop1(f, cfg.n_max, ctx));
  verdicts.push_back(classify_thm2(f, cfg.n_max, cfg.window, ctx));
  if (s.named) {
    const ParamMap params(s.named->params.begin(), s.named->params.end());
    if (s.named->name == "q-exponential") {
      verdicts.push_back(qexp_rule(Scalar::parse(params.at("lambda")), f.q()));
    } else if (s.named->name == "q-erlang") {
      verdicts.push_back(erlang_rule(Scalar::parse(params.at("lambda")), std::stol(params.at("r")), f.q()));
    }
    if (s.named->known_moments) {
      verdicts.push_back(classify_prop4(s.named->known_moments, prop4_n_max, f.q(), ctx).verdict);
    }
  }

  Json determinate = Json::array();
  Json indeterminate = Json::array();
  Json inconclusive = Json::array();
  for (const auto& v : verdicts) {
    if (v.status == Status::Determinate) determinate.push_back(v.criterion);
    if (v.status == Status::Indeterminate) indeterminate.push_back(v.criterion);
    if (v.status == Status::Inconclusive) inconclusive.push_back(v.criterion);
  }
  const bool conflict = !determinate.empty() && !indeterminate.empty();

  if (cfg.format == "csv") {
    std::string csv = csv_line({"criterion", "status", "proof_strength", "window", "evidence"});
    for (const auto& v : verdicts) {
      std::string window;
      if (v.window) window = v.window->index + "=" + std::to_string(v.window->lo) + ".." + std::to_string(v.window->hi);
      std::string evidence;
      for (const auto& e : v.evidence) evidence += (evidence.empty() ? "" : ";") + e.name + "=" + e.value;
      csv += csv_line({v.criterion, to_string(v.status), to_string(v.proof_strength), window, evidence});
    }
    csv += csv_line({"summary", conflict ? "conflict" : "consistent", "", "",
                     "determinate=" + std::to_string(determinate.size()) +
                         ";indeterminate=" + std::to_string(indeterminate.size()) +
                         ";inconclusive=" + std::to_string(inconclusive.size())});
    return csv;
  }
  Json j = header("classify", cfg, s);
  Json list = Json::array();
  for (const auto& v : verdicts) list.push_back(to_json(v));
  j["verdicts"] = std::move(list);
  j["summary"] = Json{{"determinate", std::move(determinate)},
                      {"indeterminate", std::move(indeterminate)},
                      {"inconclusive", std::move(inconclusive)},
                      {"conflict", conflict}};
  return j.dump(2) + "\n";
}

// ---- witness --------------------------------------------------------------

std::string cmd_witness(const RunConfig& cfg, long m, const std::string& alpha_text, int& exit_code) {
  const Source s = load_source(cfg);
  const PrecisionContext ctx(cfg.digits);
  const DensityPtr f = s.density;
  if (m < 1) throw UsageError("--m must be positive");
  const Verdict mj = check_thm3_mj(*f, m, cfg.window, ctx);
  if (mj.status != Status::Indeterminate) {
    throw CommandExit{kInfeasibleWitness, "density shows no lower bound f(q^-mj) >= C q^(mj(j+1)/2) for m = " +
                                              std::to_string(m) + " (thm3-mj " + to_string(mj.status) + ")"};
  }
  const int needed = required_digits(m, cfg.n_max, f->q());
  if (cfg.digits < needed) {
    throw PrecisionExhausted("witness verification to n = " + std::to_string(cfg.n_max) + " requires >= " +
                                 std::to_string(needed) + " digits",
                             needed);
  }
  const Real a_max = alpha_max(*f, m, cfg.window, ctx);
  const Real alpha = alpha_text.empty() ? a_max / 2 : ctx.parse(alpha_text);
  WitnessPair pair;
  try {
    pair = build_witness(f, m, alpha, cfg.window, ctx);
  } catch (const NegativeDensity& e) {
    throw CommandExit{kInfeasibleWitness, e.what()};
  }
  pair = verify_moment_equality(std::move(pair), cfg.n_max, ctx);
  if (!pair.accepted) exit_code = kComputationError;

  Json lattice = Json::array();
  std::string lattice_csv = csv_line({"k", "j", "base", "witness"});
  for (long k = 0; k <= cfg.window; ++k) {
    const long j = -m * k;
    const std::string b = eval_lattice(*f, j, ctx).to_string(ctx.digits());
    const std::string w = eval_lattice(*pair.witness, j, ctx).to_string(ctx.digits());
    lattice.push_back(Json{{"k", k}, {"j", j}, {"base", b}, {"witness", w}});
    lattice_csv += csv_line({std::to_string(k), std::to_string(j), b, w});
  }
  if (cfg.format == "csv") {
    std::string csv = csv_line({"n", "base_moment", "witness_moment", "series_max_term", "series_residual",
                                "direct_residual"});
    for (const auto& r : pair.residuals) {
      csv += csv_line({std::to_string(r.n), r.base_moment.to_string(ctx.digits()),
                       r.witness_moment.to_string(ctx.digits()), r.series_max_term.to_string(ctx.digits()),
                       r.series_residual.to_string(ctx.digits()), r.direct_residual.to_string(ctx.digits())});
    }
    return csv + "\n" + lattice_csv;
  }
  Json j = header("witness", cfg, s);
  j["thm3"] = to_json(mj);
  j["witness"] = to_json(pair, ctx);
  j["perturbed_lattice"] = std::move(lattice);
  return j.dump(2) + "\n";
}

// ---- krein ----------------------------------------------------------------

std::string cmd_krein(const RunConfig& cfg, const std::string& lambda_text, const std::string& t0_text,
                      const std::string& t_max_text, bool comparator) {
  const PrecisionContext ctx(cfg.digits);
  const Real t0 = ctx.parse(t0_text);
  const Real t_max = ctx.parse(t_max_text);
  if (!(t0 > 0)) throw UsageError("--t0 must be positive");
  if (t_max < t0) throw UsageError("--t-max must not be below --t0");

  RealFunction rho;
  Json j;
  j["command"] = "krein";
  if (comparator) {
    rho = [](const Real& t, const PrecisionContext&) { return exp(-t); };
    j["density"] = "exponential";
  } else {
    if (cfg.q.empty()) throw UsageError("krein needs --q");
    if (lambda_text.empty()) throw UsageError("krein needs --lambda");
    NamedDistribution d = q_exponential(Scalar::parse(lambda_text), QParam(cfg.q));
    rho = d.classical_pdf;
    j["density"] = "q-exponential";
    j["lambda"] = d.params[0].second;
    j["q"] = d.params[1].second;
  }
  j["digits"] = cfg.digits;
  j["t0"] = t0_text;
  j["t_max"] = t_max_text;

  const KreinResult k = krein_integral(rho, t0, t_max, ctx, 0);
  // running integral at each decade end
  Json partials = Json::array();
  std::vector<Real> increments;
  Real running = ctx.real(0L);
  for (const auto& d : k.decades) {
    running += d.integral;
    const Real edge = min(pow10(d.decade + 1, ctx.precision()), ctx.lift(t_max));
    partials.push_back(Json{{"T", edge.to_string(ctx.digits())}, {"integral", running.to_string(ctx.digits())}});
    increments.push_back(d.integral);
  }
  Json evidence;
  if (k.decades.size() >= 2) {
    const Real& a = k.decades[k.decades.size() - 2].c_fit;
    const Real& b = k.decades.back().c_fit;
    evidence["c_fit_last_two_decades_ratio"] = (max(a, b) / min(a, b)).to_string(ctx.digits());
  }
  Json ratios = Json::array();
  for (size_t i = 1; i < increments.size(); ++i) {
    ratios.push_back(increments[i].is_zero() ? std::string("inf")
                                             : (increments[i - 1] / increments[i]).to_string(ctx.digits()));
  }
  evidence["increment_shrink_ratios"] = std::move(ratios);
  evidence["integral_over_t_max"] = (k.value / t_max).to_string(ctx.digits());

  if (cfg.format == "csv") {
    std::string csv = csv_line({"decade", "c_fit", "integral", "running_integral"});
    Real acc = ctx.real(0L);
    for (const auto& d : k.decades) {
      acc += d.integral;
      csv += csv_line({std::to_string(d.decade), d.c_fit.to_string(ctx.digits()), d.integral.to_string(ctx.digits()),
                       acc.to_string(ctx.digits())});
    }
    return csv;
  }
  j["krein"] = to_json(k, ctx);
  j["decade_partials"] = std::move(partials);
  j["evidence"] = std::move(evidence);
  return j.dump(2) + "\n";
}

// ---- table ----------------------------------------------------------------

std::string cmd_table(const RunConfig& cfg, const std::string& builtin, long lo, long hi, long extent) {
  QDensity table = [&] {
    if (!builtin.empty()) {
      if (!cfg.zoo.empty() || !cfg.input.empty()) throw UsageError("--builtin excludes --zoo and --input");
      if (cfg.q.empty()) throw UsageError("--builtin needs --q");
      const QParam q(cfg.q);
      if (builtin == "theta") return theta_table(q, extent);
      if (builtin == "m2") return m2_pattern_table(q, extent);
      if (builtin == "point-mass") return point_mass(q);
      throw UsageError("unknown builtin table '" + builtin + "' (theta, m2, point-mass)");
    }
    const Source s = load_source(cfg);
    if (hi < lo) throw UsageError("--hi must not be below --lo");
    return materialize(*s.density, lo, hi, PrecisionContext(cfg.digits));
  }();
  if (cfg.format == "csv") {
    const auto* t = table.as_table();
    std::string csv = csv_line({"j", "value"});
    for (long j = t->j_min; j <= t->j_max; ++j) {
      csv += csv_line({std::to_string(j), t->values[static_cast<size_t>(j - t->j_min)].text()});
    }
    return csv;
  }
  return write_density_table(table);
}

void add_common(CLI::App* sub, RunConfig& cfg, bool source = true) {
  sub->add_option("--q", cfg.q, "lattice base q in (0, 1), as a decimal string");
  sub->add_option("--digits", cfg.digits, "working precision in decimal digits")->check(CLI::Range(15, 100000));
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", cfg.out, "write the report to FILE instead of standard output");
  if (source) {
    sub->add_option("--n-max", cfg.n_max, "largest moment order");
    sub->add_option("--window", cfg.window, "lattice window J");
    sub->add_option("--input", cfg.input, "density-table file");
    sub->add_option("--zoo", cfg.zoo, "named distribution: q-exponential, q-erlang, hyper-exponential");
    sub->add_option("--param", cfg.params, "distribution parameter key=value (repeatable)");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"q-moments, determinacy criteria and moment-equal witnesses for q-densities", "qmoment"};
  app.require_subcommand(1);

  auto* moments = app.add_subcommand("moments", "q-moments m_q(n) for n = 0..n_max");
  add_common(moments, cfg);

  long m = 1;
  long prop4_n_max = 1000;
  auto* classify = app.add_subcommand("classify", "run every applicable determinacy criterion");
  add_common(classify, cfg);
  classify->add_option("--m", m, "sublattice step for the thm3-mj check");
  classify->add_option("--prop4-n-max", prop4_n_max, "largest classical moment order for prop4-bridge");

  std::string alpha;
  auto* witness = app.add_subcommand("witness", "build and verify a moment-equal witness density");
  add_common(witness, cfg);
  witness->add_option("--m", m, "sublattice step");
  witness->add_option("--alpha", alpha, "perturbation amplitude (default alpha_max / 2)");

  std::string lambda, t0 = "1", t_max = "1e6";
  bool comparator = false;
  auto* krein = app.add_subcommand("krein", "Krein integral evidence for the q-exponential classical density");
  add_common(krein, cfg, false);
  krein->add_option("--lambda", lambda, "rate lambda");
  krein->add_option("--t0", t0, "lower integration limit");
  krein->add_option("--t-max", t_max, "upper integration limit");
  krein->add_flag("--comparator", comparator, "use the classical exponential density e^-t instead");

  std::string builtin;
  long lo = -40, hi = 40, extent = 60;
  auto* table = app.add_subcommand("table", "write a density-table file");
  add_common(table, cfg);
  table->add_option("--builtin", builtin, "reference table: theta, m2, point-mass");
  table->add_option("--extent", extent, "largest |j| of a builtin table");
  table->add_option("--lo", lo, "first lattice index for --zoo tables");
  table->add_option("--hi", hi, "last lattice index for --zoo tables");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  int code = kOk;
  std::string report;
  try {
    if (*moments) {
      report = cmd_moments(cfg);
    } else if (*classify) {
      report = cmd_classify(cfg, m, prop4_n_max);
    } else if (*witness) {
      report = cmd_witness(cfg, m, alpha, code);
    } else if (*krein) {
      report = cmd_krein(cfg, lambda, t0, t_max, comparator);
    } else {
      report = cmd_table(cfg, builtin, lo, hi, extent);
    }
  } catch (const CommandExit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kPrecisionExhausted;
  } catch (const InfeasibleWitness& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasibleWitness;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const QMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputationError;
  }

  if (!cfg.out.empty()) {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kInputError;
    }
    file << report;
  } else {
    out << report;
  }
  return code;
}

}  // namespace qmoment::cli

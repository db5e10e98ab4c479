#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <optional>

#include "occkit/chain.hpp"
#include "occkit/coverage.hpp"
#include "occkit/errors.hpp"
#include "occkit/identities.hpp"
#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"
#include "occkit/sampling.hpp"
#include "occkit/spillage.hpp"
#include "occkit/stirling.hpp"

namespace occkit::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::uint64_t n = 0;
  std::string m = "1";
  std::string theta = "1";
  std::uint64_t k = 1;
  std::string phi = "0";
  std::optional<std::uint64_t> t_max;
  double tail = 1e-12;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::uint64_t reps = 0;
  std::uint64_t start_t = 0;
  double prob = 0.5;
  std::string regime = "exact";
  std::string grid = "small";
  std::string method = "power";
  std::string format = "json";
  bool exact = false;
  bool total = false;
};

struct Output {
  std::string command;
  json params = json::object();
  std::string backend;
  double error_bound = 0.0;
  std::string payload_key;
  json payload;
  json extra = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = exit_ok;
};

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

ExactReal parse_exact(const std::string& text, const char* what) {
  try {
    return ExactReal::parse(text);
  } catch (const DomainError&) {
    throw DomainError(std::string(what) + " must be a number or a fraction p/q, got '" + text + "'");
  }
}

double parse_theta(const std::string& text) { return parse_exact(text, "theta").to_double(); }

double parse_phi(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  return parse_exact(text, "phi").to_double();
}

json param_value(const std::string& text) {
  if (text == "inf" || text.find('/') != std::string::npos) return text;
  try {
    const ExactReal x = ExactReal::parse(text);
    if (x.denominator() == 1 && x.numerator().fits_slong_p()) return x.numerator().get_si();
    return x.to_double();
  } catch (const DomainError&) {
    return text;
  }
}

void fill_pmf(Output& out, const Pmf& pmf, const char* key = "pmf", bool cumulative = false) {
  out.payload_key = key;
  out.payload = json::object();
  out.csv_header = {"k", cumulative ? "cumulative" : "probability"};
  double acc = 0.0;
  for (std::int64_t k = pmf.support_min(); k <= pmf.support_max(); ++k) {
    acc += pmf(k);
    const double v = cumulative ? acc : pmf(k);
    out.payload[std::to_string(k)] = v;
    out.csv_rows.push_back({std::to_string(k), number(v)});
  }
  out.backend = pmf.meta().backend;
  out.error_bound = pmf.meta().error_bound;
  out.extra["tail_mass"] = pmf.meta().tail_mass;
}

void fill_exact(Output& out, const ExactPmf& pmf) {
  json exact = json::object();
  for (std::size_t i = 0; i < pmf.probabilities.size(); ++i) {
    if (pmf.probabilities[i].is_zero()) continue;
    exact[std::to_string(pmf.support_min + static_cast<std::int64_t>(i))] = pmf.probabilities[i].str();
  }
  out.extra["pmf_exact"] = exact;
  out.backend = "exact";
  out.error_bound = 0.0;
}

void fill_fields(Output& out, const char* key, const json& fields) {
  out.payload_key = key;
  out.payload = fields;
  out.csv_header = {"field", "value"};
  for (const auto& [name, value] : fields.items()) {
    out.csv_rows.push_back({name, value.is_number_float() ? number(value.get<double>()) : value.dump()});
  }
}

// --- distributions ---------------------------------------------------------

Pmf negocc_for(const Options& o, const NegOccParams& p) {
  return o.t_max ? negocc_pmf(p, *o.t_max) : negocc_pmf_to_tail(p, o.tail);
}

Output distribution(const std::string& family, const Options& o, bool cdf) {
  Output out;
  out.command = std::string(cdf ? "cdf " : "pmf ") + family;
  const char* key = cdf ? "cdf" : "pmf";
  if (family == "occ") {
    out.params = {{"n", o.n}, {"m", param_value(o.m)}, {"theta", param_value(o.theta)}};
    const BinCount m = BinCount::parse(o.m);
    if (o.exact) {
      const ExactPmf exact = occ_pmf_exact(o.n, m.value(), parse_exact(o.theta, "theta"));
      fill_pmf(out, exact.to_pmf(), key, cdf);
      fill_exact(out, exact);
    } else {
      fill_pmf(out, occ_pmf(OccParams(o.n, m, parse_theta(o.theta))), key, cdf);
    }
  } else if (family == "negocc" || family == "coupon") {
    const BinCount m = BinCount::parse(o.m);
    const bool coupon = family == "coupon";
    if (coupon && m.is_infinite()) throw DomainError("coupon collector distribution needs a finite m");
    const std::uint64_t k = coupon ? m.value() : o.k;
    out.params = {{"m", param_value(o.m)}};
    if (!coupon) out.params["k"] = k;
    out.params["theta"] = param_value(o.theta);
    if (o.t_max) out.params["t_max"] = *o.t_max;
    else out.params["tail"] = o.tail;
    const NegOccParams p(m, k, parse_theta(o.theta));
    const std::int64_t shift = coupon && o.total ? static_cast<std::int64_t>(k) : 0;
    if (coupon) out.params["total"] = o.total;
    if (o.exact) {
      if (!o.t_max) throw DomainError("--exact needs --t-max");
      ExactPmf exact = negocc_pmf_exact(m.value(), k, parse_exact(o.theta, "theta"), *o.t_max);
      exact.support_min += shift;
      const Pmf approx = negocc_pmf(p, *o.t_max).shifted(shift);
      fill_pmf(out, approx, key, cdf);
      fill_exact(out, exact);
    } else {
      fill_pmf(out, negocc_for(o, p).shifted(shift), key, cdf);
    }
  } else if (family == "spillage") {
    out.params = {{"n", o.n}, {"k", o.k}, {"phi", param_value(o.phi)}};
    if (o.exact) {
      if (o.phi == "inf") throw DomainError("--exact needs a finite phi");
      const ExactPmf exact = spillage_pmf_exact(o.n, o.k, parse_exact(o.phi, "phi"));
      fill_pmf(out, exact.to_pmf(), key, cdf);
      fill_exact(out, exact);
    } else {
      fill_pmf(out, spillage_pmf(SpillageParams(o.n, o.k, parse_phi(o.phi))), key, cdf);
    }
  }
  return out;
}

json moment_fields(const MomentSet& s) {
  json e = json::array();
  for (double x : s.e_terms) e.push_back(x);
  return {{"mean", s.mean},
          {"variance", s.variance},
          {"skewness", finite_or_null(s.skewness)},
          {"kurtosis", finite_or_null(s.kurtosis)},
          {"e_terms", e}};
}

Output moments(const Options& o) {
  Output out;
  out.command = "moments occ";
  out.params = {{"n", o.n}, {"m", param_value(o.m)}, {"theta", param_value(o.theta)}, {"regime", o.regime}};
  const OccParams p(o.n, BinCount::parse(o.m), parse_theta(o.theta));
  MomentSet s;
  if (o.regime == "exact") {
    s = occ_moments(p);
    out.backend = "closed-form";
  } else if (o.regime == "large_n" || o.regime == "large_m") {
    s = occ_moments_asymptotic(p, o.regime == "large_n" ? MomentRegime::large_n : MomentRegime::large_m);
    out.backend = "asymptotic";
  } else {
    throw DomainError("regime must be exact, large_n or large_m");
  }
  fill_fields(out, "moments", moment_fields(s));
  return out;
}

Output sample(const std::string& family, const Options& o) {
  Output out;
  out.command = "sample " + family;
  const StreamSeed seed(o.seed);
  std::vector<std::int64_t> draws;
  if (family == "occ") {
    out.params = {{"n", o.n}, {"m", param_value(o.m)}, {"theta", param_value(o.theta)}};
    draws = occ_sample(OccParams(o.n, BinCount::parse(o.m), parse_theta(o.theta)), o.count, seed);
  } else if (family == "negocc") {
    out.params = {{"m", param_value(o.m)}, {"k", o.k}, {"theta", param_value(o.theta)}};
    draws = negocc_sample(NegOccParams(BinCount::parse(o.m), o.k, parse_theta(o.theta)), o.count, seed);
  } else {
    out.params = {{"n", o.n}, {"k", o.k}, {"phi", param_value(o.phi)}};
    draws = spillage_sample(SpillageParams(o.n, o.k, parse_phi(o.phi)), o.count, seed);
  }
  out.params["count"] = o.count;
  out.params["seed"] = o.seed;
  out.backend = "inverse-cdf";
  out.payload_key = "samples";
  out.payload = draws;
  out.csv_header = {"index", "value"};
  for (std::size_t i = 0; i < draws.size(); ++i) out.csv_rows.push_back({std::to_string(i), std::to_string(draws[i])});
  return out;
}

Output simulate(const Options& o) {
  Output out;
  out.command = "simulate";
  out.params = {{"n", o.n}, {"m", param_value(o.m)}, {"theta", param_value(o.theta)}, {"reps", o.reps}, {"seed", o.seed}};
  const std::uint64_t m = BinCount::parse(o.m).value();
  const double theta = parse_theta(o.theta);
  const OccParams p(o.n, m, theta);
  if (o.reps == 0) {
    out.backend = "simulation";
    fill_fields(out, "simulation", json::object());
    return out;
  }
  std::vector<std::uint64_t> counts(p.k_max() + 1, 0);
  double total = 0.0;
  const StreamSeed seed(o.seed);
  for (std::uint64_t s = 0; s < o.reps; ++s) {
    const ProcessSample run = simulate_process(o.n, m, theta, seed.split(s));
    ++counts[run.occupancy];
    total += static_cast<double>(run.occupancy);
  }
  std::vector<double> freq(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) freq[i] = static_cast<double>(counts[i]) / static_cast<double>(o.reps);
  const Pmf empirical(0, std::move(freq), PmfMeta{"simulation", 0.0, 0.0});
  fill_pmf(out, empirical);
  out.extra["mean"] = total / static_cast<double>(o.reps);
  out.extra["sup_distance"] = sup_distance(empirical, occ_pmf(p));
  return out;
}

Output oracle(const Options& o) {
  Output out;
  out.command = "oracle";
  out.params = {{"n", o.n}, {"m", param_value(o.m)}, {"theta", param_value(o.theta)}, {"start_t", o.start_t}, {"method", o.method}};
  const std::uint64_t m = BinCount::parse(o.m).value();
  const double theta = parse_theta(o.theta);
  if (o.method == "power") {
    fill_pmf(out, occupancy_by_power(o.n, m, theta, o.start_t));
  } else if (o.method == "spectral") {
    const SpectralDecomposition sd(m, theta);
    if (o.start_t > m) throw DomainError("start state must lie in 0..m");
    auto row = sd.row(o.n, o.start_t);
    std::vector<double> tail(row.begin() + static_cast<std::ptrdiff_t>(o.start_t), row.end());
    for (double& x : tail) x = std::max(0.0, x);
    fill_pmf(out, Pmf(static_cast<std::int64_t>(o.start_t), std::move(tail), PmfMeta{"spectral", 1e-10, 0.0}));
  } else {
    throw DomainError("method must be power or spectral");
  }
  return out;
}

Output stirling(const Options& o) {
  Output out;
  out.command = "stirling";
  out.params = {{"n", o.n}, {"k", o.k}, {"phi", param_value(o.phi)}, {"exact", o.exact}};
  json fields;
  if (o.exact) {
    const ExactReal value = stirling_noncentral_exact(o.n, o.k, parse_exact(o.phi, "phi"));
    fields = {{"value", value.str()}, {"double", finite_or_null(value.to_double())}, {"log2", value.is_zero() ? json(nullptr) : json(value.log2_abs())}};
    out.backend = "exact";
  } else {
    const ScaledFloat value = stirling_noncentral_scaled(o.n, o.k, parse_phi(o.phi));
    fields = {{"double", finite_or_null(value.to_double())},
              {"log2", value.is_zero() ? json(nullptr) : json(value.log2_abs())},
              {"mantissa", value.mantissa()},
              {"exponent", value.exponent()}};
    out.backend = "scaled";
    out.error_bound = 4.0 * static_cast<double>(o.n + 1) * std::numeric_limits<double>::epsilon();
  }
  fill_fields(out, "value", fields);
  return out;
}

Output plan(const Options& o) {
  Output out;
  out.command = "plan";
  out.params = {{"m", param_value(o.m)}, {"k", o.k}, {"prob", o.prob}};
  const CoveragePlan p = required_resample_size(BinCount::parse(o.m).value(), o.k, o.prob);
  out.backend = p.backend;
  fill_fields(out, "plan",
              {{"m", p.m}, {"k", p.k}, {"phi_target", p.phi_target}, {"n_required", p.n_required},
               {"achieved", p.achieved_probability}, {"previous", p.previous_probability}});
  return out;
}

Output coverage(const Options& o) {
  Output out;
  out.command = "coverage";
  out.params = {{"n", o.n}, {"m", param_value(o.m)}, {"reps", o.reps}, {"seed", o.seed}};
  const std::uint64_t m = BinCount::parse(o.m).value();
  const CoverageMoments cm = coverage_moments(o.n, m);
  json fields = {{"mean_proportion", cm.mean_proportion},
                 {"variance_proportion", cm.variance_proportion},
                 {"asymptotic_mean", cm.asymptotic_mean},
                 {"asymptotic_variance", cm.asymptotic_variance},
                 {"lambda", cm.lambda}};
  if (o.reps > 0) {
    const CoverageSimulation sim = simulate_coverage(o.n, m, o.reps, StreamSeed(o.seed));
    fields["simulated_mean_proportion"] = sim.mean_proportion;
    fields["sup_distance"] = sim.sup_distance;
  }
  out.backend = "closed-form";
  fill_fields(out, "coverage", fields);
  return out;
}

Output check(const Options& o) {
  Output out;
  out.command = "check";
  out.params = {{"grid", o.grid}, {"exact", o.exact}};
  if (o.grid != "small" && o.grid != "full") throw DomainError("grid must be small or full");
  const auto reports = o.exact ? run_exact_checks() : run_all_checks(o.grid == "full" ? CheckGrid::full : CheckGrid::small);
  out.backend = o.exact ? "exact" : "mixed";
  out.payload_key = "reports";
  out.payload = json::array();
  out.csv_header = {"name", "max_abs_discrepancy", "worst_case"};
  bool ok = true;
  for (const auto& r : reports) {
    json worst = json::object();
    for (const auto& [name, value] : r.worst_case.values) worst[name] = finite_or_null(value);
    if (!std::isfinite(r.max_abs_discrepancy) && r.grid.empty()) worst = nullptr;
    out.payload.push_back({{"name", r.name},
                           {"max_abs_discrepancy", r.max_abs_discrepancy},
                           {"tolerance", r.tolerance},
                           {"grid_size", r.grid.size()},
                           {"strict_failures", r.strict_failures},
                           {"worst_case", worst},
                           {"passed", r.passed()}});
    out.csv_rows.push_back({r.name, number(r.max_abs_discrepancy), "\"" + r.worst_case.str() + "\""});
    ok = ok && r.passed();
  }
  out.error_bound = 0.0;
  out.exit_code = ok ? exit_ok : exit_check_failed;
  return out;
}

void emit(const Output& out, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    for (std::size_t i = 0; i < out.csv_header.size(); ++i) os << (i ? "," : "") << out.csv_header[i];
    os << '\n';
    for (const auto& row : out.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return;
  }
  json doc = {{"command", out.command}, {"params", out.params}, {"backend", out.backend}, {"error_bound", out.error_bound}};
  doc[out.payload_key] = out.payload;
  for (const auto& [key, value] : out.extra.items()) doc[key] = value;
  os << doc.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Occupancy, negative occupancy and spillage distributions", "occkit"};
  app.require_subcommand(1);
  Options o;
  std::function<Output()> action;

  const auto add_format = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  const auto add_occ = [&o](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "Number of balls")->required();
    cmd->add_option("--m", o.m, "Number of bins (integer or inf)")->required();
    cmd->add_option("--theta", o.theta, "Occupancy probability in (0, 1]");
  };
  const auto add_negocc = [&o](CLI::App* cmd, bool with_k) {
    cmd->add_option("--m", o.m, "Number of bins (integer or inf)")->required();
    if (with_k) cmd->add_option("--k", o.k, "Target occupancy")->required();
    cmd->add_option("--theta", o.theta, "Occupancy probability in (0, 1]");
    cmd->add_option("--t-max", o.t_max, "Largest excess to tabulate");
    cmd->add_option("--tail", o.tail, "Stop once the remaining mass is below this (without --t-max)");
  };
  const auto add_spillage = [&o](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "Number of effective balls")->required();
    cmd->add_option("--k", o.k, "Occupancy")->required();
    cmd->add_option("--phi", o.phi, "Scale parameter (number or inf)")->required();
  };

  for (const bool cdf : {false, true}) {
    auto* group = app.add_subcommand(cdf ? "cdf" : "pmf", cdf ? "Cumulative distribution" : "Probability mass function");
    group->require_subcommand(1);
    for (const std::string family : {"occ", "negocc", "coupon", "spillage"}) {
      auto* cmd = group->add_subcommand(family);
      if (family == "occ") add_occ(cmd);
      if (family == "negocc") add_negocc(cmd, true);
      if (family == "coupon") {
        add_negocc(cmd, false);
        cmd->add_flag("--total", o.total, "Report total balls m + t instead of the excess t");
      }
      if (family == "spillage") add_spillage(cmd);
      cmd->add_flag("--exact", o.exact, "Exact rational backend");
      add_format(cmd);
      cmd->callback([&action, &o, family, cdf] { action = [&o, family, cdf] { return distribution(family, o, cdf); }; });
    }
  }

  auto* mom = app.add_subcommand("moments", "Moments of the occupancy distribution")->require_subcommand(1);
  auto* mom_occ = mom->add_subcommand("occ");
  add_occ(mom_occ);
  mom_occ->add_option("--regime", o.regime, "exact, large_n or large_m");
  add_format(mom_occ);
  mom_occ->callback([&] { action = [&o] { return moments(o); }; });

  auto* smp = app.add_subcommand("sample", "Draw samples by inverse CDF")->require_subcommand(1);
  for (const std::string family : {"occ", "negocc", "spillage"}) {
    auto* cmd = smp->add_subcommand(family);
    if (family == "occ") add_occ(cmd);
    if (family == "negocc") {
      cmd->add_option("--m", o.m, "Number of bins (integer or inf)")->required();
      cmd->add_option("--k", o.k, "Target occupancy")->required();
      cmd->add_option("--theta", o.theta, "Occupancy probability in (0, 1]");
    }
    if (family == "spillage") add_spillage(cmd);
    cmd->add_option("--count", o.count, "Number of draws")->required();
    cmd->add_option("--seed", o.seed, "Random seed");
    add_format(cmd);
    cmd->callback([&action, &o, family] { action = [&o, family] { return sample(family, o); }; });
  }

  auto* sim = app.add_subcommand("simulate", "Simulate the ball process and tabulate K_n");
  add_occ(sim);
  sim->add_option("--reps", o.reps, "Replications")->required();
  sim->add_option("--seed", o.seed, "Random seed");
  add_format(sim);
  sim->callback([&] { action = [&o] { return simulate(o); }; });

  auto* orc = app.add_subcommand("oracle", "Row of the transition matrix power");
  add_occ(orc);
  orc->add_option("--start-t", o.start_t, "Starting occupancy");
  orc->add_option("--method", o.method, "power or spectral");
  add_format(orc);
  orc->callback([&] { action = [&o] { return oracle(o); }; });

  auto* sti = app.add_subcommand("stirling", "Noncentral Stirling number S(n, k, phi)");
  sti->add_option("--n", o.n)->required();
  sti->add_option("--k", o.k)->required();
  sti->add_option("--phi", o.phi, "Noncentrality (number or p/q)");
  sti->add_flag("--exact", o.exact, "Exact rational value");
  add_format(sti);
  sti->callback([&] { action = [&o] { return stirling(o); }; });

  auto* pln = app.add_subcommand("plan", "Smallest resample size reaching a coverage probability");
  pln->add_option("--m", o.m, "Original sample size")->required();
  pln->add_option("--k", o.k, "Distinct points required")->required();
  pln->add_option("--prob", o.prob, "Target probability in (0, 1)")->required();
  add_format(pln);
  pln->callback([&] { action = [&o] { return plan(o); }; });

  auto* cov = app.add_subcommand("coverage", "Coverage proportion moments and simulation");
  cov->add_option("--n", o.n, "Resample size")->required();
  cov->add_option("--m", o.m, "Original sample size")->required();
  cov->add_option("--reps", o.reps, "Simulated resamples");
  cov->add_option("--seed", o.seed, "Random seed");
  add_format(cov);
  cov->callback([&] { action = [&o] { return coverage(o); }; });

  auto* chk = app.add_subcommand("check", "Run the identity checks");
  chk->add_option("--grid", o.grid, "small or full");
  chk->add_flag("--exact", o.exact, "Exact rational mixture checks");
  add_format(chk);
  chk->callback([&] { action = [&o] { return check(o); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    const Output result = action();
    emit(result, o.format, out);
    return result.exit_code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  }
}

}  // namespace occkit::cli

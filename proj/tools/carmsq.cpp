// Command-line front end: enumeration, verification, analytic constants,
// sieve-function tables, endgame bookkeeping, density statistics, the
// construction pipeline, and the parametric family scan.
//
// Conventions: data rows to stdout (JSON lines by default, CSV with
// --format csv), a one-line summary to stderr, seed always recorded.
// Exit codes: 0 success, 2 configuration error, 3 work/resource error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carmsq/carmsq.hpp"

namespace {

using namespace carmsq;

u64 parse_u64_arg(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    if (text.find_first_of("eE.") == std::string::npos) {
      u64 v = std::stoull(text, &pos);
      if (pos == text.size()) return v;
    } else {
      long double v = std::stold(text, &pos);
      if (pos == text.size() && v >= 0 && v <= 1.8e19L &&
          v == std::floor(v))
        return static_cast<u64>(v);
    }
  } catch (...) {
  }
  throw DomainError(what + ": expected a nonnegative integer, got '" + text + "'");
}

std::pair<long long, long long> parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos)
    throw DomainError("delta: expected NUM/DEN, got '" + text + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    long long num = std::stoll(text.substr(0, slash), &p1);
    long long den = std::stoll(text.substr(slash + 1), &p2);
    if (p1 == slash && p2 == text.size() - slash - 1) return {num, den};
  } catch (...) {
  }
  throw DomainError("delta: expected NUM/DEN, got '" + text + "'");
}

struct Output {
  std::string format = "json";  // json | csv
  std::ostream* os = &std::cout;
  std::ofstream file;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw DomainError("cannot open output file: " + path);
    os = &file;
  }
  void row(const Json& j) { *os << j.dump() << "\n"; }
  void line(const std::string& s) { *os << s << "\n"; }
};

struct Global {
  unsigned threads = 0;
  u64 seed = kDefaultSeed;
  Output out;
};

void summary(const std::string& text) { std::cerr << "summary: " << text << "\n"; }

std::string fmt_ld(long double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", prec, v);
  return buf;
}

int cmd_enumerate(Global& g, const std::string& max_s, const std::string& filter_s,
                  const std::string& ceiling_s) {
  u64 x_max = parse_u64_arg(max_s, "--max");
  u64 ceiling = ceiling_s.empty() ? kEnumerateCeiling
                                  : parse_u64_arg(ceiling_s, "--ceiling");
  CarmichaelFilter filter = CarmichaelFilter::kAll;
  if (filter_s == "special")
    filter = CarmichaelFilter::kSpecial;
  else if (filter_s == "strict")
    filter = CarmichaelFilter::kStrict;
  else if (filter_s != "all")
    throw DomainError("--filter must be all, special, or strict");

  auto records = enumerate_carmichael(x_max, filter, g.threads, ceiling);
  u64 n_special = 0, n_strict = 0;
  if (g.out.format == "csv") g.out.line(record_csv_header());
  for (const auto& rec : records) {
    n_special += rec.all_special;
    n_strict += rec.all_strict;
    if (g.out.format == "csv")
      g.out.line(to_csv(rec));
    else
      g.out.row(to_json(rec));
  }
  summary("command=enumerate x_max=" + std::to_string(x_max) +
          " filter=" + filter_s + " all=" + std::to_string(records.size()) +
          " special=" + std::to_string(n_special) +
          " strict=" + std::to_string(n_strict) +
          " seed=" + std::to_string(g.seed));
  return 0;
}

int cmd_verify(Global& g, const std::vector<std::string>& values) {
  u64 carmichael_count = 0;
  for (const std::string& v : values) {
    BigInt n;
    try {
      n = BigInt(v);
    } catch (...) {
      throw DomainError("verify: not an integer: '" + v + "'");
    }
    if (n < 1) throw DomainError("verify: argument must be >= 1");
    FactorizeOptions opt;
    opt.seed = g.seed;
    if (!is_carmichael(n, opt)) {
      g.out.line("not carmichael");
      continue;
    }
    ++carmichael_count;
    CarmichaelRecord rec = make_record(factorize(n, opt), opt);
    if (g.out.format == "csv") {
      g.out.line(record_csv_header());
      g.out.line(to_csv(rec));
    } else {
      g.out.row(to_json(rec));
    }
  }
  summary("command=verify checked=" + std::to_string(values.size()) +
          " carmichael=" + std::to_string(carmichael_count) +
          " seed=" + std::to_string(g.seed));
  return 0;
}

int cmd_constants(Global& g, const std::string& cutoff_s) {
  u64 cutoff = parse_u64_arg(cutoff_s, "--cutoff");
  struct Row {
    const char* name;
    EulerProduct which;
  };
  const Row rows[] = {
      {"A1", EulerProduct::kA1},
      {"A3", EulerProduct::kA3},
      {"landau_ramanujan", EulerProduct::kLandauRamanujan},
      {"landau_ramanujan_alt", EulerProduct::kLandauRamanujanAlt},
      {"murata", EulerProduct::kMurata},
  };
  if (g.out.format == "csv") g.out.line("name,cutoff,value,tail_bound");
  long double murata = 0;
  for (const Row& r : rows) {
    EulerProductValue v = euler_product(r.which, cutoff, g.threads);
    if (r.which == EulerProduct::kMurata) murata = v.value;
    if (g.out.format == "csv")
      g.out.line(std::string(r.name) + "," + std::to_string(cutoff) + "," +
                 fmt_ld(v.value, 15) + "," + fmt_ld(v.tail_bound, 15));
    else
      g.out.row(to_json(v, r.name));
  }
  // Half of the product over all p is the natural comparison point for the
  // density constant of the strict primes.
  {
    EulerProductValue half{murata / 2, 0, cutoff};
    if (g.out.format == "csv")
      g.out.line("murata_half," + std::to_string(cutoff) + "," +
                 fmt_ld(half.value, 15) + ",0");
    else
      g.out.row(to_json(half, "murata_half"));
  }
  PartialProducts pp = partial_products(cutoff, g.threads);
  if (g.out.format == "csv") {
    g.out.line("V," + std::to_string(cutoff) + "," + fmt_ld(pp.V, 15) + ",0");
    g.out.line("W," + std::to_string(cutoff) + "," + fmt_ld(pp.W, 15) + ",0");
  } else {
    Json jv;
    jv["name"] = "V";
    jv["cutoff"] = cutoff;
    jv["value"] = static_cast<double>(pp.V);
    g.out.row(jv);
    Json jw;
    jw["name"] = "W";
    jw["cutoff"] = cutoff;
    jw["value"] = static_cast<double>(pp.W);
    g.out.row(jw);
  }
  summary("command=constants cutoff=" + std::to_string(cutoff) +
          " rows=8 seed=" + std::to_string(g.seed));
  return 0;
}

int cmd_sievefn(Global& g, double grid_step, double int_step) {
  SieveFunctions sf(static_cast<long double>(int_step));
  SieveFunctionTable t = sf.table(static_cast<long double>(grid_step));
  if (g.out.format == "csv") g.out.line("s,f,F,error");
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    if (g.out.format == "csv") {
      g.out.line(fmt_ld(t.s[i], 6) + "," + fmt_ld(t.f[i], 12) + "," +
                 fmt_ld(t.F[i], 12) + "," + fmt_ld(t.max_step_error, 12));
    } else {
      Json j;
      j["s"] = static_cast<double>(t.s[i]);
      j["f"] = static_cast<double>(t.f[i]);
      j["F"] = static_cast<double>(t.F[i]);
      j["error"] = static_cast<double>(t.max_step_error);
      g.out.row(j);
    }
  }
  summary("command=sievefn grid_step=" + fmt_ld(grid_step, 6) +
          " rows=" + std::to_string(t.s.size()) +
          " max_step_error=" + fmt_ld(t.max_step_error, 12) +
          " seed=" + std::to_string(g.seed));
  return 0;
}

int cmd_endgame(Global& g, const std::string& delta_s) {
  auto [num, den] = parse_rational(delta_s);
  EndgameReport r = endgame_margin(num, den);
  if (g.out.format == "csv") {
    g.out.line("delta,s,f_s,t_coeff,coeff_lhs,coeff_rhs,coeff_ok,margin_ok");
    g.out.line(std::to_string(r.delta_num) + "/" + std::to_string(r.delta_den) +
               "," + std::to_string(r.s_num) + "/" + std::to_string(r.s_den) +
               "," + fmt_ld(r.f_s, 10) + "," + fmt_ld(r.t_coeff, 10) + "," +
               fmt_ld(r.coeff_lhs, 10) + "," + fmt_ld(r.coeff_rhs, 10) + "," +
               (r.coeff_ok ? "true" : "false") + "," +
               (r.margin_ok ? "true" : "false"));
  } else {
    g.out.row(to_json(r));
  }
  summary("command=endgame s=" + std::to_string(r.s_num) + "/" +
          std::to_string(r.s_den) + " f(s)=" + fmt_ld(r.f_s, 6) +
          " T=" + fmt_ld(r.t_coeff, 6) +
          " margin=" + (r.margin_ok ? "OK" : "FAIL") +
          " seed=" + std::to_string(g.seed));
  return 0;
}

int cmd_density(Global& g, const std::string& x_s, double E) {
  u64 x = parse_u64_arg(x_s, "--x");
  DensityReport r = density_check(x, static_cast<long double>(E), g.threads);
  if (g.out.format == "csv") {
    g.out.line("x,E,y,pi_xy,pi,ratio");
    g.out.line(std::to_string(r.x) + "," + fmt_ld(r.E, 6) + "," +
               std::to_string(r.y) + "," + std::to_string(r.smooth_count) + "," +
               std::to_string(r.prime_total) + "," + fmt_ld(r.ratio, 8));
  } else {
    g.out.row(to_json(r));
  }
  summary("command=density x=" + std::to_string(x) + " ratio=" +
          fmt_ld(r.ratio, 6) + " seed=" + std::to_string(g.seed));
  return 0;
}

struct AgpCliOptions {
  std::string config_file;
  std::string preset = "y20";
  std::optional<u64> y;
  std::optional<double> E, B_param, epsilon, A, A_prime;
  u64 k_max = 2000;
  u64 d_bound = 1'000'000;
  unsigned subset_cap = 8;
  u64 node_cap = 2'000'000;
  bool build_only = false;
};

AgpConfig agp_config_from(const AgpCliOptions& o, Global& g, u64& k_max,
                          u64& d_bound, unsigned& subset_cap, u64& node_cap) {
  AgpConfig cfg;
  bool preset_found = false;
  for (auto& [name, preset_cfg] : agp_presets())
    if (name == o.preset) {
      cfg = preset_cfg;
      preset_found = true;
    }
  if (!preset_found) throw DomainError("unknown preset: " + o.preset);
  k_max = o.k_max;
  d_bound = o.d_bound;
  subset_cap = o.subset_cap;
  node_cap = o.node_cap;

  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw DomainError("cannot open config file: " + o.config_file);
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw DomainError(std::string("config file is not valid JSON: ") + e.what());
    }
    for (auto& [key, value] : j.items()) {
      if (key == "E")
        cfg.E = value.get<double>();
      else if (key == "B_param")
        cfg.B_param = value.get<double>();
      else if (key == "epsilon")
        cfg.epsilon = value.get<double>();
      else if (key == "y")
        cfg.y = value.get<u64>();
      else if (key == "A")
        cfg.A_const = value.get<double>();
      else if (key == "A_prime")
        cfg.A_prime_const = value.get<double>();
      else if (key == "seed")
        cfg.seed = value.get<u64>();
      else if (key == "k_max")
        k_max = value.get<u64>();
      else if (key == "d_bound")
        d_bound = value.get<u64>();
      else if (key == "subset_size_cap")
        subset_cap = value.get<unsigned>();
      else if (key == "node_cap")
        node_cap = value.get<u64>();
      else
        throw DomainError("config file: unknown key '" + key + "'");
    }
  }
  // Flags override both preset and file.
  if (o.y) cfg.y = *o.y;
  if (o.E) cfg.E = static_cast<long double>(*o.E);
  if (o.B_param) cfg.B_param = static_cast<long double>(*o.B_param);
  if (o.epsilon) cfg.epsilon = static_cast<long double>(*o.epsilon);
  if (o.A) cfg.A_const = static_cast<long double>(*o.A);
  if (o.A_prime) cfg.A_prime_const = static_cast<long double>(*o.A_prime);
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  return cfg;
}

int cmd_agp(Global& g, const AgpCliOptions& o) {
  u64 k_max = 0, d_bound = 0, node_cap = 0;
  unsigned subset_cap = 0;
  AgpConfig cfg = agp_config_from(o, g, k_max, d_bound, subset_cap, node_cap);

  AgpRun run = build_run(cfg);
  if (!o.build_only) {
    find_k(run, k_max, d_bound);
    if (run.prime_set.size() > 40) {
      run.diag.assemble_skipped = true;
      run.diag.notes.push_back(
          "assemble skipped: prime_set has " +
          std::to_string(run.prime_set.size()) + " primes (cap 40)");
    } else {
      assemble_carmichael(run, subset_cap, node_cap);
    }
  }
  g.out.row(to_json(run));

  std::string hyp;
  for (const auto& h : run.hypotheses)
    hyp += (hyp.empty() ? "" : ",") + h.name + (h.pass ? ":pass" : ":fail");
  summary("command=agp y=" + std::to_string(cfg.y) +
          " q_count=" + std::to_string(run.Q.size()) + " " + hyp +
          (run.k_found ? " k=" + std::to_string(run.k) : " k=none") +
          " prime_set=" + std::to_string(run.prime_set.size()) +
          " assembled=" + std::to_string(run.assembled.size()) +
          " seed=" + std::to_string(g.seed));
  return 0;
}

int cmd_chernick(Global& g, const std::string& max_s) {
  u64 k_max = parse_u64_arg(max_s, "--max");
  auto hits = chernick_scan(k_max);
  if (g.out.format == "csv") g.out.line("k," + record_csv_header());
  u64 all_special = 0;
  for (const auto& hit : hits) {
    all_special += hit.record.all_special;
    if (g.out.format == "csv") {
      g.out.line(std::to_string(hit.k) + "," + to_csv(hit.record));
    } else {
      Json j;
      j["k"] = hit.k;
      Json rec = to_json(hit.record);
      for (auto& [key, value] : rec.items()) j[key] = value;
      g.out.row(j);
    }
  }
  summary("command=chernick k_max=" + std::to_string(k_max) +
          " hits=" + std::to_string(hits.size()) +
          " all_special=" + std::to_string(all_special) +
          " seed=" + std::to_string(g.seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "carmsq: Carmichael numbers whose prime factors p have p - 1 a sum of "
      "two squares.\nEnumeration and verification, the semigroup generated by "
      "primes === 1 (mod 4), the\nanalytic constants and sieve functions "
      "governing their density, and a desk-scale\nsubset-product construction "
      "run."};
  app.require_subcommand(1);

  Global g;
  std::string threads_s;
  std::string format = "json";
  std::string out_path;
  app.add_option("--threads", threads_s,
                 "Worker threads (default: CARMSQ_THREADS env, then hardware)");
  app.add_option("--seed", g.seed, "Seed for randomized fallbacks; recorded in output");
  app.add_option("--format", format, "Output format: json (lines) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write data rows to a file instead of stdout");

  // enumerate
  auto* c_enum = app.add_subcommand(
      "enumerate", "List Carmichael numbers up to a bound with factor classifications");
  std::string en_max, en_filter = "all", en_ceiling;
  c_enum->add_option("--max", en_max, "Upper bound (integer, 1e8 style accepted)")
      ->required();
  c_enum->add_option("--filter", en_filter,
                     "all | special (every p-1 a sum of two squares) | strict "
                     "(every (p-1)/2 in the semigroup B)");
  c_enum->add_option("--ceiling", en_ceiling,
                     "Raise the enumeration ceiling (default 1e9)");

  // verify
  auto* c_verify = app.add_subcommand(
      "verify", "Check integers for the Carmichael property; prints the record or "
                "'not carmichael'");
  std::vector<std::string> verify_values;
  c_verify->add_option("n", verify_values, "Integers to check")->required();

  // constants
  auto* c_const = app.add_subcommand(
      "constants",
      "Euler products over primes in residue classes mod 4 (two equivalent "
      "forms of the quadratic-form density constant among them) with tail "
      "bounds, plus the partial products V and W");
  std::string cutoff_s = "10000000";
  c_const->add_option("--cutoff", cutoff_s, "Prime cutoff (default 1e7)");

  // sievefn
  auto* c_sievefn = app.add_subcommand(
      "sievefn",
      "Tabulate the semi-linear sieve function pair f, F on (0, 4]: closed "
      "forms where available, trapezoid continuation beyond, with step-error "
      "estimate");
  double sf_grid = 0.05, sf_step = 1e-5;
  c_sievefn->add_option("--grid-step", sf_grid, "Table grid spacing (default 0.05)");
  c_sievefn->add_option("--step", sf_step,
                        "Integration step for the continuation (default 1e-5)");

  // endgame
  auto* c_endgame = app.add_subcommand(
      "endgame",
      "Exact-rational bookkeeping for the sieve lower-bound margin at a given "
      "delta: s = (1-2d)/(1-4d), f(s), and the coefficient comparisons");
  std::string delta_s = "1/3890";
  c_endgame->add_option("--delta", delta_s, "delta as NUM/DEN (default 1/3890)");

  // density
  auto* c_density = app.add_subcommand(
      "density",
      "Count primes p <= x with p === 1 (mod 4) and p - 1 free of prime "
      "factors above x^{1-E}, against the full prime count");
  std::string dx_s;
  double dE = 0.45;
  c_density->add_option("--x", dx_s, "Upper bound")->required();
  c_density->add_option("--E", dE, "Smoothness exponent in (0, 1)");

  // agp
  auto* c_agp = app.add_subcommand(
      "agp",
      "Desk-scale construction run: build the prime set Q and modulus L, "
      "evaluate the five arithmetic hypotheses with margins, search for the "
      "multiplier k, and assemble subset products === 1 (mod 2kL)");
  AgpCliOptions agp_opts;
  c_agp->add_option("--config", agp_opts.config_file, "JSON config file");
  c_agp->add_option("--preset", agp_opts.preset, "y20 | y50 | y100 (default y20)");
  u64 agp_y = 0;
  double agp_E = 0, agp_B = 0, agp_eps = 0, agp_A = 0, agp_Ap = 0;
  auto* oy = c_agp->add_option("--y", agp_y, "Override y");
  auto* oE = c_agp->add_option("--E", agp_E, "Override E");
  auto* oB = c_agp->add_option("--B", agp_B, "Override B");
  auto* oe = c_agp->add_option("--epsilon", agp_eps, "Override epsilon");
  auto* oA = c_agp->add_option("--A", agp_A, "Override A");
  auto* oAp = c_agp->add_option("--A-prime", agp_Ap, "Override A'");
  c_agp->add_option("--k-max", agp_opts.k_max, "k-search bound (default 2000)");
  c_agp->add_option("--d-bound", agp_opts.d_bound,
                    "Divisor bound for the k-search (default 1e6)");
  c_agp->add_option("--subset-cap", agp_opts.subset_cap,
                    "Largest subset size to assemble (default 8)");
  c_agp->add_option("--node-cap", agp_opts.node_cap,
                    "Subset search node budget (default 2e6)");
  c_agp->add_flag("--build-only", agp_opts.build_only,
                  "Stop after Q, L and the hypothesis checks");

  // chernick
  auto* c_chernick = app.add_subcommand(
      "chernick",
      "Scan k for 6k+1, 12k+1, 18k+1 all prime; each product is a Carmichael "
      "number whose factor p = 6k+1 has p - 1 not a sum of two squares");
  std::string ch_max;
  c_chernick->add_option("--max", ch_max, "k bound")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads_s.empty()) {
      if (const char* env = std::getenv("CARMSQ_THREADS")) threads_s = env;
    }
    if (!threads_s.empty())
      g.threads = static_cast<unsigned>(parse_u64_arg(threads_s, "--threads"));
    g.out.format = format;
    g.out.open(out_path);

    if (*c_enum) return cmd_enumerate(g, en_max, en_filter, en_ceiling);
    if (*c_verify) return cmd_verify(g, verify_values);
    if (*c_const) return cmd_constants(g, cutoff_s);
    if (*c_sievefn) return cmd_sievefn(g, sf_grid, sf_step);
    if (*c_endgame) return cmd_endgame(g, delta_s);
    if (*c_density) return cmd_density(g, dx_s, dE);
    if (*c_agp) {
      if (*oy) agp_opts.y = agp_y;
      if (*oE) agp_opts.E = agp_E;
      if (*oB) agp_opts.B_param = agp_B;
      if (*oe) agp_opts.epsilon = agp_eps;
      if (*oA) agp_opts.A = agp_A;
      if (*oAp) agp_opts.A_prime = agp_Ap;
      return cmd_agp(g, agp_opts);
    }
    if (*c_chernick) return cmd_chernick(g, ch_max);
    return 2;
  } catch (const WorkExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CeilingExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {  // domain, config, candidate, primality
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

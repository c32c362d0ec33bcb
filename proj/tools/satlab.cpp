#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "satlab/arith.hpp"
#include "satlab/constants.hpp"
#include "satlab/errors.hpp"
#include "satlab/intpoly.hpp"
#include "satlab/search.hpp"
#include "satlab/varieties.hpp"
#include "selftest.hpp"

using namespace satlab;

namespace {

struct Globals {
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultFactorBudget;
  bool selftest = false;
};

FactorOptions factor_opts(const Globals& g) { return {g.budget, g.seed}; }

ScanOptions scan_opts(const Globals& g) {
  ScanOptions o;
  o.factor = factor_opts(g);
  o.threads = g.threads;
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_argument, "cannot write " + path);
  out << text;
}

SkewCubicModel load_model(const std::string& path) {
  return path.empty() ? example_split_surface() : model_from_text(slurp(path));
}

IntPoly load_poly(const std::string& expr, const std::string& vars) {
  if (vars.empty()) return parse_poly(expr);
  std::vector<std::string> names;
  std::stringstream ss(vars);
  for (std::string v; std::getline(ss, v, ',');) {
    auto b = v.find_first_not_of(' '), e = v.find_last_not_of(' ');
    if (b != std::string::npos) names.push_back(v.substr(b, e - b + 1));
  }
  return parse_poly(expr, names);
}

std::array<Int, 2> pair_of(const std::string& text) {
  auto v = parse_int_list(text);
  if (v.size() != 2) throw Error(Errc::parse_error, "expected two integers: " + text);
  return {v[0], v[1]};
}

std::vector<double> doubles_of(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "not a real number: " + tok);
    }
  }
  return out;
}

void emit_report(const SearchReport& rep, const std::string& out, bool tsv_stdout) {
  std::cout << report_text(rep);
  if (!out.empty()) {
    write_file(out + ".tsv", records_tsv(rep.records));
    write_file(out + ".json", report_json(rep));
  } else if (tsv_stdout) {
    std::cout << records_tsv(rep.records);
  }
}

std::string factorization_text(const Int& n, const Factorization& f) {
  std::string s = n.get_str() + " =";
  bool first = true;
  auto put = [&](const std::string& t) {
    s += (first ? " " : " * ") + t;
    first = false;
  };
  if (f.sign < 0) put("-1");
  for (const auto& [p, e] : f.factors) put(e == 1 ? p.get_str() : p.get_str() + "^" + std::to_string(e));
  for (const auto& c : f.unfactored) put("(" + c.get_str() + ")");
  if (first) put("1");
  return s;
}

// Reads key=value lines and turns them into flags placed ahead of the
// command line ones, so explicit flags win.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  static const std::set<std::string> global{"threads", "seed", "budget"};
  std::vector<std::string> pre, post;
  std::istringstream in(slurp(path));
  for (std::string line; std::getline(in, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::parse_error, "config line needs key=value: " + line);
    auto trim = [](std::string s) {
      auto i = s.find_first_not_of(" \t\r"), j = s.find_last_not_of(" \t\r");
      return i == std::string::npos ? std::string() : s.substr(i, j - i + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    std::string flag = "--" + key;
    auto& dst = global.count(key) ? pre : post;
    if (val == "true") dst.push_back(flag);
    else if (val != "false") dst.push_back(flag + "=" + val);
  }
  // Locate the subcommand: first token not starting with '-' and not an option value.
  std::size_t sub = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.empty() || a[0] != '-') {
      sub = i;
      break;
    }
    if (a.find('=') == std::string::npos && a != "--selftest" && i + 1 < args.size()) ++i;
  }
  std::vector<std::string> out(args.begin(), args.begin() + 1);
  out.insert(out.end(), pre.begin(), pre.end());
  out.insert(out.end(), args.begin() + 1, args.begin() + static_cast<long>(std::min(sub + 1, args.size())));
  if (sub < args.size()) out.insert(out.end(), post.begin(), post.end());
  if (sub + 1 < args.size()) out.insert(out.end(), args.begin() + static_cast<long>(sub + 1), args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satlab: exact arithmetic for almost-prime points on varieties"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(0, 1);
  Globals g;
  std::string config;
  app.add_option("--threads", g.threads, "worker threads (0 = all cores; SATLAB_THREADS caps)");
  app.add_option("--seed", g.seed, "seed for the factoring splitter");
  app.add_option("--budget", g.budget, "splitter iterations per factorization")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", config, "key=value file mirroring the flags");
  app.add_flag("--selftest", g.selftest, "run invariant suites");

  auto sub_selftest = [&](CLI::App* s) { s->add_flag("--selftest", g.selftest, "run this module's invariant suite"); };

  // factor
  auto* c_factor = app.add_subcommand("factor", "factor an integer");
  std::string factor_n;
  c_factor->add_option("n", factor_n, "integer")->required();
  sub_selftest(c_factor);

  // omega
  auto* c_omega = app.add_subcommand("omega", "Ω of an integer or of a projective point");
  std::string omega_point, omega_n;
  auto* o_point = c_omega->add_option("--point", omega_point, "comma-separated coordinates");
  auto* o_n = c_omega->add_option("--n", omega_n, "integer (prints Ω, ν, μ, rad)");
  o_point->excludes(o_n);
  sub_selftest(c_omega);

  // fixed-divisor, sieve-modulus
  std::string poly, vars;
  std::uint64_t enum_budget = kDefaultEnumerationBudget;
  auto* c_fd = app.add_subcommand("fixed-divisor", "fixed divisor of an integer polynomial");
  auto* c_sm = app.add_subcommand("sieve-modulus", "sieve modulus W and residue z");
  for (auto* c : {c_fd, c_sm}) {
    c->add_option("--poly", poly, "polynomial, e.g. \"x0^3 - x0\"");
    c->add_option("--vars", vars, "variable names, comma-separated");
    sub_selftest(c);
  }
  c_sm->add_option("--enum-budget", enum_budget, "residue enumeration budget");

  // bounds
  auto* c_bounds = app.add_subcommand("bounds", "explicit bounds");
  std::string which;
  unsigned deg = 1;
  std::string height = "1", bound_a = "1", bound_b = "1", disc = "1";
  c_bounds->add_option("which", which,
                       "thm1.3 | thm3.1 | prop3.2 | polynomial-values | weighted-sieve | product-form | "
                       "square-value | discriminant-degree | univariate-height | multivariate-height");
  c_bounds->add_option("--deg", deg, "degree");
  c_bounds->add_option("--height", height, "height (max |coefficient|)");
  c_bounds->add_option("--a", bound_a);
  c_bounds->add_option("--b", bound_b);
  c_bounds->add_option("--disc", disc, "discriminant");
  sub_selftest(c_bounds);

  // sieve-const
  auto* c_sc = app.add_subcommand("sieve-const", "sieve minimum m(λ) and admissible r");
  std::optional<double> kappa;
  std::string beta, c0, c1, kk, mu, solve_target;
  bool solve_beta = false;
  c_sc->add_option("--kappa", kappa, "4 or 6 selects the printed m(λ); any κ > 1 for --mu");
  c_sc->add_option("--beta", beta, "β (decimal)");
  c_sc->add_option("--c0", c0);
  c_sc->add_option("--c1", c1);
  c_sc->add_option("--k", kk);
  c_sc->add_option("--mu", mu, "evaluate μ − 1 + (μ − κ)(1 − 1/β) + (κ + 1) ln β");
  c_sc->add_flag("--solve-beta", solve_beta, "solve β for κ = 6 so that min m equals --target");
  c_sc->add_option("--target", solve_target, "target minimum for --solve-beta");
  sub_selftest(c_sc);

  // elkies
  auto* c_elk = app.add_subcommand("elkies", "Elkies parametrisation of the Fermat cubic surface");
  std::string elk_y, out;
  long box_lo = -20, box_hi = 20, box_step = 1;
  bool tsv = false;
  c_elk->add_option("--y", elk_y, "y0,y1,y2: print one point");
  c_elk->add_option("--lo", box_lo, "box lower bound for every y_i");
  c_elk->add_option("--hi", box_hi, "box upper bound for every y_i");
  c_elk->add_option("--step", box_step)->check(CLI::PositiveNumber);
  c_elk->add_option("--out", out, "write <out>.tsv and <out>.json");
  c_elk->add_flag("--tsv", tsv, "print records to stdout");
  sub_selftest(c_elk);

  // skew-check, skew-normalize, skew-search
  std::string model_path, fiber_text;
  auto* c_check = app.add_subcommand("skew-check", "gates for a cubic surface with two skew lines");
  auto* c_norm = app.add_subcommand("skew-normalize", "normalize a skew model");
  auto* c_skew = app.add_subcommand("skew-search", "almost-prime points on a skew model");
  for (auto* c : {c_check, c_norm, c_skew}) {
    c->add_option("--model", model_path, "model file (default: the split example surface)");
    sub_selftest(c);
  }
  c_check->add_option("--fiber", fiber_text, "s,t");
  bool residues = false;
  c_check->add_flag("--residues", residues, "also print the admissible residues mod W");
  std::string strategy = "admissible";
  std::size_t fibers = 4;
  std::string fiber_bound = "60", uv_bound = "12";
  c_skew->add_option("--strategy", strategy)->check(CLI::IsMember({"split", "admissible"}));
  c_skew->add_option("--fiber", fiber_text, "s,t (split strategy)");
  c_skew->add_option("--fibers", fibers, "fiber budget");
  c_skew->add_option("--fiber-bound", fiber_bound);
  c_skew->add_option("--uv-bound", uv_bound);
  c_skew->add_option("--out", out);
  c_skew->add_flag("--tsv", tsv);

  // fermat3-triples, fermat3-search
  auto* c_tri = app.add_subcommand("fermat3-triples", "admissible prime triples");
  std::size_t count = 5, pool = 64, triples = 1, uv_steps = 4;
  bool show_fiber = false;
  c_tri->add_option("--count", count);
  c_tri->add_option("--pool", pool, "primes ≡ 1 mod 1470 considered");
  c_tri->add_flag("--show-fiber", show_fiber, "print the forms of the first triple");
  sub_selftest(c_tri);
  auto* c_f3 = app.add_subcommand("fermat3-search", "almost-prime points on the Fermat cubic threefold");
  std::string target;
  c_f3->add_option("--triples", triples, "triple budget")->check(CLI::PositiveNumber);
  c_f3->add_option("--uv-steps", uv_steps)->check(CLI::PositiveNumber);
  c_f3->add_option("--pool", pool);
  c_f3->add_option("--target", target, "x0,...,x4: real point steering the triple choice");
  c_f3->add_option("--out", out);
  c_f3->add_flag("--tsv", tsv);
  sub_selftest(c_f3);

  // approx
  auto* c_apx = app.add_subcommand("approx", "integral point near a real point");
  std::string apx_map = "elkies", schedule = "10,100,1000";
  double eps = 0.05;
  c_apx->add_option("--map", apx_map)->check(CLI::IsMember({"elkies", "skew"}));
  c_apx->add_option("--target", target, "x0,...,x3")->required();
  c_apx->add_option("--eps", eps);
  c_apx->add_option("--schedule", schedule, "comma-separated scales B");
  c_apx->add_option("--model", model_path);
  sub_selftest(c_apx);

  // report
  auto* c_rep = app.add_subcommand("report", "combined saturation report");
  long elk_bound = 200, elk_step = 13;
  c_rep->add_option("--elkies-bound", elk_bound);
  c_rep->add_option("--elkies-step", elk_step)->check(CLI::PositiveNumber);
  c_rep->add_option("--fibers", fibers);
  c_rep->add_option("--uv-bound", uv_bound);
  c_rep->add_option("--uv-steps", uv_steps);
  c_rep->add_option("--out", out);
  sub_selftest(c_rep);

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = apply_config(std::move(args));
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  auto subs = app.get_subcommands();
  std::string name = subs.empty() ? "" : subs[0]->get_name();
  if (g.selftest) {
    int f = tools::run_selftest(name.empty() ? "all" : tools::module_of(name), std::cout);
    return f == 0 ? 0 : 2;
  }
  if (name.empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    if (name == "factor") {
      Int n = parse_int(factor_n);
      auto f = factor(n, factor_opts(g));
      std::cout << factorization_text(n, f) << '\n';
      if (!f.complete()) {
        std::cout << "incomplete: budget exhausted\n";
        return 2;
      }
    } else if (name == "omega") {
      if (!omega_point.empty()) {
        auto v = parse_int_list(omega_point);
        std::cout << omega_projective(to_primitive(v), factor_opts(g)).to_string() << '\n';
      } else if (!omega_n.empty()) {
        auto a = arith_functions(parse_int(omega_n), {}, factor_opts(g));
        std::cout << "omega=" << a.omega.to_string() << '\n';
        if (a.nu) std::cout << "nu=" << *a.nu << '\n';
        if (a.mu) std::cout << "mu=" << *a.mu << '\n';
        if (a.rad) std::cout << "rad=" << *a.rad << '\n';
      } else {
        std::cerr << "omega: give --point or --n\n";
        return 1;
      }
    } else if (name == "fixed-divisor" || name == "sieve-modulus") {
      if (poly.empty()) {
        std::cerr << name << ": --poly is required\n";
        return 1;
      }
      IntPoly f = load_poly(poly, vars);
      if (name == "fixed-divisor") {
        auto d = fixed_divisor(f, g.seed);
        std::cout << "fixed_divisor=" << d.value << '\n'
                  << "exact=" << (d.exact ? "true" : "false") << '\n';
      } else {
        auto s = sieve_modulus(f, enum_budget);
        std::cout << "D=" << s.D << "\nW=" << s.W << "\nz=" << join(s.z) << '\n';
      }
    } else if (name == "bounds") {
      static const std::map<std::string, SaturationBound> sat{
          {"thm1.3", SaturationBound::polynomial_values},
          {"polynomial-values", SaturationBound::polynomial_values},
          {"thm3.1", SaturationBound::weighted_sieve},
          {"weighted-sieve", SaturationBound::weighted_sieve},
          {"prop3.2", SaturationBound::product_form},
          {"product-form", SaturationBound::product_form}};
      static const std::map<std::string, LemmaBound> lem{
          {"square-value", LemmaBound::square_value},
          {"discriminant-degree", LemmaBound::discriminant_degree},
          {"univariate-height", LemmaBound::univariate_height},
          {"multivariate-height", LemmaBound::multivariate_height}};
      if (auto it = sat.find(which); it != sat.end()) {
        auto v = saturation_bound(it->second, deg, parse_int(height));
        std::cout << "value=" << format_sci(v.value, 12) << '\n'
                  << "value_fixed=" << format_real(v.value, 6) << '\n'
                  << "floor=" << v.floor << '\n';
      } else if (auto jt = lem.find(which); jt != lem.end()) {
        LemmaParams p;
        p.a = parse_int(bound_a);
        p.b = parse_int(bound_b);
        p.disc = parse_int(disc);
        p.deg = deg;
        p.height = parse_int(height);
        auto v = lemma_bound(jt->second, p);
        std::cout << "ln_bound=" << format_real(v.ln_value, 20) << '\n';
        if (v.integer_part) std::cout << "floor=" << *v.integer_part << '\n';
      } else {
        std::cerr << "bounds: unknown bound '" << which << "'\n";
        return 1;
      }
    } else if (name == "sieve-const") {
      if (!mu.empty()) {
        if (!kappa || beta.empty()) {
          std::cerr << "sieve-const: --mu needs --kappa and --beta\n";
          return 1;
        }
        std::cout << "r=" << format_real(r_closed_form(Real(*kappa), Real(beta), Real(mu)), 20) << '\n';
        return 0;
      }
      if (solve_beta) {
        Real b = solve_target.empty() ? beta6_consistent() : beta6_consistent(Real(solve_target));
        std::cout << "beta=" << format_real(b, 30) << '\n';
        return 0;
      }
      SieveFunction fn;
      Real bval;
      if (!c0.empty() || !c1.empty() || !kk.empty()) {
        if (c0.empty() || c1.empty() || kk.empty() || beta.empty()) {
          std::cerr << "sieve-const: --c0 --c1 --k --beta go together\n";
          return 1;
        }
        fn = {Real(c0), Real(c1), Real(kk)};
        bval = Real(beta);
      } else if (kappa && *kappa == 4) {
        bval = beta.empty() ? kBeta4 : Real(beta);
        fn = kappa4_function(bval);
      } else if (kappa && *kappa == 6) {
        bval = beta.empty() ? kBeta6 : Real(beta);
        fn = kappa6_function(bval);
      } else {
        std::cerr << "sieve-const: --kappa 4 or 6, or --c0 --c1 --k --beta\n";
        return 1;
      }
      auto r = minimize_m(fn, bval);
      std::cout << "beta=" << format_real(bval, 20) << '\n'
                << "lambda=" << format_real(r.lambda, 12) << '\n'
                << "m=" << format_real(r.m, 12) << '\n'
                << "r=" << admissible_r(r.m) << '\n';
    } else if (name == "elkies") {
      if (!elk_y.empty()) {
        auto y = parse_int_list(elk_y);
        auto x = elkies_map(y);
        std::vector<Int> xv(x.begin(), x.end());
        std::cout << "x=" << join(xv) << '\n';
        bool zero = std::any_of(xv.begin(), xv.end(), [](const Int& c) { return c == 0; });
        if (std::any_of(xv.begin(), xv.end(), [](const Int& c) { return c != 0; })) {
          auto p = to_primitive(xv);
          std::cout << "point=" << join(p.coords()) << '\n'
                    << "omega=" << (zero ? std::string("inf") : omega_projective(p, factor_opts(g)).to_string())
                    << '\n';
        }
      } else {
        auto box = BoxSpec::cube(3, to_int(std::int64_t{box_lo}), to_int(std::int64_t{box_hi}),
                                 to_int(std::int64_t{box_step}));
        emit_report(elkies_search(box, scan_opts(g)), out, tsv);
      }
    } else if (name == "skew-check") {
      auto m = load_model(model_path);
      std::optional<std::array<Int, 2>> fib;
      if (!fiber_text.empty()) fib = pair_of(fiber_text);
      auto rep = check_local_conditions(m, fib, factor_opts(g));
      for (const auto& c : rep.checks)
        std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail)
                  << '\n';
      std::cout << "W0=" << rep.resultants.W0 << "\nW1=" << rep.resultants.W1 << '\n';
      if (rep.D) std::cout << "D=" << *rep.D << '\n';
      std::cout << "split_discriminant_square="
                << (split_discriminant_is_polynomial_square(m) ? "true" : "false") << '\n';
      if (residues && rep.all_ok()) {
        auto r = admissible_residues(m, factor_opts(g));
        std::cout << "W=" << r.W << "\ns0=" << r.s0 << "\nt0=" << r.t0 << '\n';
      }
      if (!rep.all_ok()) return 2;
    } else if (name == "skew-normalize") {
      std::cout << model_to_text(normalize_model(load_model(model_path)));
    } else if (name == "skew-search") {
      SkewSearchOptions o;
      o.strategy = strategy == "split" ? FiberStrategy::split : FiberStrategy::admissible;
      o.fiber_budget = fibers;
      o.fiber_bound = parse_int(fiber_bound);
      o.uv_bound = parse_int(uv_bound);
      if (!fiber_text.empty()) o.fiber = pair_of(fiber_text);
      o.scan = scan_opts(g);
      auto m = load_model(model_path);
      if (o.strategy == FiberStrategy::split && o.fiber) {
        auto sf = assemble_split_forms(m, (*o.fiber)[0], (*o.fiber)[1]);
        std::cout << "forms (u, v, G, L4, L5):";
        for (const auto& L : sf.forms) std::cout << ' ' << L[0] << "u" << (L[1] < 0 ? "" : "+") << L[1] << "v";
        std::cout << "\nproduct_identity=" << (sf.product_identity ? "true" : "false") << '\n';
      }
      emit_report(skew_surface_search(m, o), out, tsv);
    } else if (name == "fermat3-triples") {
      auto t = admissible_triples(count, pool);
      for (const auto& tr : t) std::cout << tr[0] << ',' << tr[1] << ',' << tr[2] << '\n';
      if (show_fiber && !t.empty()) std::cout << fiber_to_text(threefold_fiber(t[0][0], t[0][1], t[0][2]));
      if (t.empty()) throw Error(Errc::no_admissible_triples, "none within the pool");
    } else if (name == "fermat3-search") {
      ThreefoldSearchOptions o;
      o.triple_budget = triples;
      o.uv_steps = uv_steps;
      o.triple_pool = pool;
      o.scan = scan_opts(g);
      if (!target.empty()) {
        auto v = doubles_of(target);
        if (v.size() != 5) throw Error(Errc::arity_mismatch, "--target needs five coordinates");
        o.target = std::array<double, 5>{v[0], v[1], v[2], v[3], v[4]};
      }
      emit_report(threefold_search(o), out, tsv);
    } else if (name == "approx") {
      std::vector<Int> sched = parse_int_list(schedule);
      VarietyMap map = ElkiesMap{};
      if (apx_map == "skew") map = SkewFiberMap{load_model(model_path), Int(1), Int(0)};
      auto r = approximate_point({map, doubles_of(target)}, eps, sched, scan_opts(g));
      auto show = [](const SearchRecord& rec) {
        std::cout << "point=" << join(rec.point.coords()) << "\nomega=" << rec.omega.to_string()
                  << "\nparams=" << join(rec.params) << '\n';
        if (!rec.fiber.empty()) std::cout << "fiber=" << join(rec.fiber) << '\n';
      };
      std::cout << "candidates=" << r.candidates << '\n';
      if (r.record) {
        show(*r.record);
        std::cout << "distance=" << r.distance.get_d() << '\n';
      } else {
        std::cout << "NotFound\n";
        if (r.near_miss) {
          std::cout << "near_miss:\n";
          show(*r.near_miss);
          std::cout << "distance=" << r.distance.get_d() << '\n';
        }
        return 2;
      }
    } else if (name == "report") {
      ScanOptions so = scan_opts(g);
      auto elk = elkies_search(BoxSpec::cube(3, to_int(std::int64_t{-elk_bound}),
                                             to_int(std::int64_t{elk_bound}),
                                             to_int(std::int64_t{elk_step})),
                               so);
      SkewSearchOptions sk;
      sk.fiber_budget = fibers;
      sk.uv_bound = parse_int(uv_bound);
      sk.scan = so;
      auto skew = skew_surface_search(example_split_surface(), sk);
      ThreefoldSearchOptions tf;
      tf.uv_steps = uv_steps;
      tf.scan = so;
      auto three = threefold_search(tf);
      std::cout << report_text(elk) << report_text(skew) << report_text(three);
      if (!out.empty()) {
        nlohmann::json j;
        j["format"] = "satlab-saturation v1";
        j["sections"] = {{"elkies", nlohmann::json::parse(report_json(elk))},
                         {"skew", nlohmann::json::parse(report_json(skew))},
                         {"threefold", nlohmann::json::parse(report_json(three))}};
        write_file(out + ".json", j.dump(2) + "\n");
        write_file(out + ".tsv", records_tsv(elk.records) + records_tsv(skew.records) +
                                     records_tsv(three.records));
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

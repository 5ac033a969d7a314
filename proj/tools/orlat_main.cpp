#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "orlat/exact_oracle.hpp"
#include "orlat/io.hpp"
#include "orlat/martin.hpp"
#include "orlat/monte_carlo.hpp"
#include "orlat/spectral.hpp"
#include "orlat/threads.hpp"
#include "orlat/verify.hpp"

namespace {

using namespace orlat;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vertex parse_vertex(const std::string& s) {
  long long a = 0, b = 0;
  if (std::sscanf(s.c_str(), "%lld,%lld", &a, &b) != 2)
    throw UsageError("expected 'x1,x2', got: " + s);
  return Vertex{a, b};
}

struct Range {
  std::int64_t lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
  long long a = 0, b = 0;
  if (std::sscanf(s.c_str(), "%lld:%lld", &a, &b) == 2) return Range{a, b};
  if (std::sscanf(s.c_str(), "%lld", &a) == 1) return Range{a, a};
  throw UsageError("expected 'lo:hi', got: " + s);
}

std::vector<std::int64_t> parse_progression(const std::string& s) {
  // "<min>..<max>x<mult>" geometric, "<min>..<max>+<step>" arithmetic,
  // "<min>..<max>" defaults to doubling.
  long long lo = 0, hi = 0, step = 0;
  if (std::sscanf(s.c_str(), "%lld..%lldx%lld", &lo, &hi, &step) == 3) {
    if (lo < 1 || step < 2) throw UsageError("bad geometric progression: " + s);
    std::vector<std::int64_t> out;
    for (long long v = lo; v <= hi; v *= step) out.push_back(v);
    return out;
  }
  if (std::sscanf(s.c_str(), "%lld..%lld+%lld", &lo, &hi, &step) == 3) {
    if (step < 1) throw UsageError("bad arithmetic progression: " + s);
    std::vector<std::int64_t> out;
    for (long long v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  if (std::sscanf(s.c_str(), "%lld..%lld", &lo, &hi) == 2) {
    if (lo < 1) throw UsageError("bad progression: " + s);
    std::vector<std::int64_t> out;
    for (long long v = lo; v <= hi; v *= 2) out.push_back(v);
    return out;
  }
  throw UsageError("expected '<min>..<max>[x<mult>|+<step>]', got: " + s);
}

// "lambda=<l>,k=<prog>" or "horiz=<+1|-1>,row=<r>,x=<prog>"
DirectionalSequence parse_sequence(const std::string& s) {
  double lambda = 0.0;
  char rest[128] = {0};
  if (std::sscanf(s.c_str(), "lambda=%lf,k=%127s", &lambda, rest) == 2) {
    return DirectionalSequence::finite(lambda, parse_progression(rest));
  }
  int dir = 0;
  long long row = 0;
  if (std::sscanf(s.c_str(), "horiz=%d,row=%lld,x=%127s", &dir, &row, rest) == 3) {
    return DirectionalSequence::horizontal_row(dir, row, parse_progression(rest));
  }
  throw UsageError("expected 'lambda=<l>,k=<prog>' or 'horiz=<d>,row=<r>,x=<prog>', got: " + s);
}

PhiVariant resolve_variant(const RunConfig& cfg, const Kernel& k) {
  if (cfg.variant == "paper") return PhiVariant::paper;
  if (cfg.variant == "excursion") return PhiVariant::excursion;
  if (cfg.variant != "auto") throw UsageError("unknown variant: " + cfg.variant);
  const auto rep = arbitrate_phi(k, std::min<std::int64_t>(cfg.horizon, 4096), arbitration_grid());
  if (!rep.decisive)
    throw std::runtime_error("variant auto-selection was not decisive at this horizon");
  return rep.winner;
}

int cmd_phi(const RunConfig& cfg) {
  Kernel k{Orientation::sign_rule()};
  std::vector<double> grid{0.0};
  for (const double t : arbitration_grid()) grid.push_back(t);
  const auto enclosures = axis_char_enclosure(k, Vertex{0, 0}, grid, cfg.horizon);

  Table t;
  t.columns = {"t", "phi_paper", "phi_excursion", "oracle_low", "oracle_high"};
  for (const auto& e : enclosures) {
    t.add_row({e.t, phi(e.t, PhiVariant::paper), phi(e.t, PhiVariant::excursion),
               std::max(e.lo(), -1.0), std::min(e.hi(), 1.0)});
  }
  write_table(t, cfg);
  return 0;
}

int cmd_green(const RunConfig& cfg, const std::string& x_str, const std::string& y_point,
              const std::string& y_rect, const std::string& y_seq, const std::string& route) {
  Kernel k{Orientation::sign_rule()};
  const Vertex x = parse_vertex(x_str);

  std::vector<Vertex> targets;
  if (!y_point.empty()) {
    targets.push_back(parse_vertex(y_point));
  } else if (!y_rect.empty()) {
    const auto comma = y_rect.find(',');
    if (comma == std::string::npos) throw UsageError("expected 'x1lo:x1hi,x2lo:x2hi'");
    const Range r1 = parse_range(y_rect.substr(0, comma));
    const Range r2 = parse_range(y_rect.substr(comma + 1));
    for (std::int64_t b = r2.lo; b <= r2.hi; ++b)
      for (std::int64_t a = r1.lo; a <= r1.hi; ++a) targets.push_back(Vertex{a, b});
  } else if (!y_seq.empty()) {
    targets = parse_sequence(y_seq).targets;
  } else {
    throw UsageError("one of --y / --y-rect / --y-seq is required");
  }

  Table t;
  t.columns = {"y1", "y2", "value", "error", "route"};

  if (route == "spectral") {
    MartinParams mp;
    mp.variant = resolve_variant(cfg, k);
    mp.quad.abs_tol = cfg.abs_tol;
    mp.oracle_horizon = std::min<std::int64_t>(cfg.horizon, 8192);
    MartinEvaluator ev(k, mp);
    for (const Vertex& y : targets) {
      const ValueWithError g = ev.green(x, y);
      t.add_row({y.x1, y.x2, g.value, g.error, std::string("spectral")});
    }
  } else if (route == "oracle") {
    const auto values = truncated_green_many<double>(k, x, targets, cfg.horizon);
    for (std::size_t i = 0; i < targets.size(); ++i)
      t.add_row({targets[i].x1, targets[i].x2, values[i], 0.0, std::string("oracle")});
  } else if (route == "mc") {
    for (const Vertex& y : targets) {
      const Estimate e = estimate_green(k, x, y, cfg.n_paths, cfg.horizon, cfg.seed);
      t.add_row({y.x1, y.x2, e.value, e.stderr_, std::string("mc")});
    }
  } else {
    throw UsageError("unknown route: " + route);
  }
  write_table(t, cfg);
  return 0;
}

int cmd_martin(const RunConfig& cfg, const std::string& xbox_str, const std::string& seq_str) {
  Kernel k{Orientation::sign_rule()};
  const auto comma = xbox_str.find(',');
  if (comma == std::string::npos) throw UsageError("expected --x-box 'x1lo:x1hi,x2lo:x2hi'");
  const Range r1 = parse_range(xbox_str.substr(0, comma));
  const Range r2 = parse_range(xbox_str.substr(comma + 1));
  const DirectionalSequence seq = parse_sequence(seq_str);

  MartinParams mp;
  mp.variant = resolve_variant(cfg, k);
  mp.quad.abs_tol = cfg.abs_tol;
  mp.oracle_horizon = std::min<std::int64_t>(cfg.horizon, 8192);
  MartinEvaluator ev(k, mp);

  Table t;
  t.columns = {"x1", "x2", "k", "y1", "y2", "K", "error"};
  for (const Vertex& y : seq.targets) {
    const std::int64_t kparam = seq.horizontal ? std::llabs(y.x1) : y.x2;
    for (std::int64_t b = r2.lo; b <= r2.hi; ++b) {
      for (std::int64_t a = r1.lo; a <= r1.hi; ++a) {
        const ValueWithError kv = ev.martin_kernel(Vertex{a, b}, y);
        t.add_row({a, b, kparam, y.x1, y.x2, kv.value, kv.error});
      }
    }
  }
  write_table(t, cfg);
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  VerifyParams vp;
  vp.seed = cfg.seed;
  vp.arbitration_horizon = cfg.horizon;
  vp.mc_paths = cfg.n_paths;
  vp.abs_tol = cfg.abs_tol;

  std::vector<CheckResult> results;
  if (suite == "kernel")
    results = verify_kernel(vp);
  else if (suite == "oracle")
    results = verify_oracle(vp);
  else if (suite == "spectral")
    results = verify_spectral(vp);
  else if (suite == "mc")
    results = verify_mc(vp);
  else if (suite == "martin")
    results = verify_martin(vp);
  else if (suite == "all")
    results = verify_all(vp);
  else
    throw UsageError("unknown suite: " + suite);

  nlohmann::ordered_json j;
  j["artifact"] = kArtifactVersion;
  auto& c = j["config"];
  for (const auto& [key, v] : cfg.echo()) c[key] = v;
  c["suite"] = suite;
  int failures = 0;
  auto& checks = j["checks"];
  checks = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json jr;
    jr["suite"] = r.suite;
    jr["name"] = r.name;
    jr["pass"] = r.pass;
    jr["value"] = r.value;
    jr["bound"] = r.bound;
    if (!r.note.empty()) jr["note"] = r.note;
    checks.push_back(std::move(jr));
    if (!r.pass) ++failures;
  }
  j["summary"] = {{"total", results.size()}, {"failures", failures}};

  const std::string text = j.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.output_path);
    f << text;
  }
  for (const auto& r : results)
    if (!r.pass)
      std::cerr << "FAIL [" << r.suite << "] " << r.name << " value=" << r.value
                << " bound=" << r.bound << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simple random walk on the sign-oriented lattice: Green functions, hitting laws, Martin kernels"};
  app.set_config("--config");

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "base seed for all random streams");
  auto* horizon_opt = app.add_option("--horizon", cfg.horizon, "step horizon for exact/oracle runs");
  app.add_option("--paths", cfg.n_paths, "Monte Carlo sample count");
  app.add_option("--tol", cfg.abs_tol, "quadrature absolute tolerance");
  app.add_option("--variant", cfg.variant, "phi variant: paper|excursion|auto")
      ->check(CLI::IsMember({"paper", "excursion", "auto"}));
  app.add_option("--out", cfg.output_path, "output file (default stdout)");
  app.add_option("--format", cfg.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* phi_cmd = app.add_subcommand("phi", "characteristic-function table with oracle enclosures");

  auto* green_cmd = app.add_subcommand("green", "Green function values by route");
  std::string x_str = "0,0", y_point, y_rect, y_seq, route = "spectral";
  green_cmd->add_option("--x", x_str, "start vertex 'x1,x2'");
  green_cmd->add_option("--y", y_point, "target vertex 'y1,y2'");
  green_cmd->add_option("--y-rect", y_rect, "target rectangle 'x1lo:x1hi,x2lo:x2hi'");
  green_cmd->add_option("--y-seq", y_seq,
                        "target sequence 'lambda=<l>,k=<prog>' or 'horiz=<d>,row=<r>,x=<prog>'");
  green_cmd->add_option("--route", route, "spectral|oracle|mc")
      ->check(CLI::IsMember({"spectral", "oracle", "mc"}));

  auto* martin_cmd = app.add_subcommand("martin", "Martin kernel along a directional sequence");
  std::string xbox = "-3:3,-3:3", seq_str = "lambda=0,k=32..256";
  martin_cmd->add_option("--x-box", xbox, "start box 'x1lo:x1hi,x2lo:x2hi'");
  martin_cmd->add_option("--seq", seq_str, "directional sequence");

  auto* verify_cmd = app.add_subcommand("verify", "run module check suites, emit JSON report");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "kernel|oracle|spectral|mc|martin|all")
      ->check(CLI::IsMember({"kernel", "oracle", "spectral", "mc", "martin", "all"}));

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  cfg.threads = max_threads();
  try {
    if (phi_cmd->parsed()) {
      cfg.command = "phi";
      return cmd_phi(cfg);
    }
    if (green_cmd->parsed()) {
      cfg.command = "green";
      // Different default horizons: exact evolution is cubic in it.
      if (route != "spectral" && horizon_opt->count() == 0)
        cfg.horizon = route == "oracle" ? 2048 : 4096;
      return cmd_green(cfg, x_str, y_point, y_rect, y_seq, route);
    }
    if (martin_cmd->parsed()) {
      cfg.command = "martin";
      if (horizon_opt->count() == 0) cfg.horizon = 4096;
      return cmd_martin(cfg, xbox, seq_str);
    }
    if (verify_cmd->parsed()) {
      cfg.command = "verify";
      if (horizon_opt->count() == 0) cfg.horizon = 4096;
      return cmd_verify(cfg, suite);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << " (best=" << e.best
              << ", achieved error=" << e.achieved << ")\n";
    return 3;
  } catch (const ResourceError& e) {
    std::cerr << "resource failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

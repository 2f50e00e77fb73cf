#include "projave/harness/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "projave/convex/builders.hpp"
#include "projave/convex/projection.hpp"
#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"
#include "projave/sobolev/functionals.hpp"

namespace projave::harness {

namespace {

using nlohmann::json;
using quadrature::QuadratureSpec;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Absolute slack for comparisons that hold with equality in exact
// arithmetic, relative to the compared magnitude.
constexpr double kRoundoff = 1e-12;

struct Context {
  std::string command;
  std::uint64_t seed = 0;
  json config;
  std::filesystem::path base;
  std::vector<ReportRow> rows;

  QuadratureSpec spec_for(const json& c) const {
    json q = config.value("quadrature", json::object());
    if (c.contains("quadrature")) {
      q.merge_patch(c.at("quadrature"));
    }
    return spec_from_json(q, seed);
  }

  void add(ReportRow r) {
    r.row = static_cast<int>(rows.size()) + 1;
    r.command = command;
    r.pass = !std::isnan(r.margin) && r.margin >= 0.0;
    rows.push_back(std::move(r));
  }

  void fail(const std::string& case_name, const std::string& message, int n = 0, double p = 0.0,
            int i = 0, int j = 0) {
    ReportRow r;
    r.case_name = case_name;
    r.n = n;
    r.p = p;
    r.i = i;
    r.j = j;
    r.estimate = kNaN;
    r.std_error = kNaN;
    r.reference = kNaN;
    r.margin = kNaN;
    r.message = message;
    add(std::move(r));
  }
};

std::string case_name(const json& c, std::size_t index) {
  return c.value("name", "case" + std::to_string(index + 1));
}

// Runs fn for one case; any exception becomes a failing row.
void guarded(Context& ctx, const std::string& name, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    ctx.fail(name, e.what());
  }
}

std::vector<int> int_list(const json& j) {
  if (j.is_number_integer()) {
    return {j.get<int>()};
  }
  return j.get<std::vector<int>>();
}

std::vector<double> real_list(const json& j) {
  if (j.is_number()) {
    return {j.get<double>()};
  }
  return j.get<std::vector<double>>();
}

const json& cases_of(const json& config) {
  if (!config.contains("cases") || !config.at("cases").is_array()) {
    throw ConfigError("config needs a \"cases\" array");
  }
  return config.at("cases");
}

// Margin of a two-sided match |estimate - reference| <= tol.
double match_margin(double estimate, double reference, double tol) {
  return tol + kRoundoff * std::abs(reference) - std::abs(estimate - reference);
}

convex::Polytope polytope_of(const json& body, const std::filesystem::path& base) {
  const auto b = sobolev::body_from_json(body, base);
  if (const auto* p = std::get_if<convex::Polytope>(&b)) {
    return *p;
  }
  throw ConfigError("this case needs a polytope body");
}

double body_volume(const convex::ConvexBody& body) {
  const auto v = sobolev::closed_form_power_integral(sobolev::CharOfBody{body}, 1.0);
  if (!v) {
    throw ConfigError("body volume is not available");
  }
  return *v;
}

// ---------------------------------------------------------------- constants

void cmd_constants(Context& ctx) {
  using namespace geometry;
  const auto& cfg = ctx.config;
  std::vector<int> ns;
  if (cfg.contains("n_range")) {
    const auto r = cfg.at("n_range").get<std::vector<int>>();
    if (r.size() != 2) {
      throw ConfigError("n_range must be [first, last]");
    }
    for (int n = r[0]; n <= r[1]; ++n) {
      ns.push_back(n);
    }
  } else {
    ns = int_list(cfg.at("n"));
  }
  const auto ps = real_list(cfg.at("p"));
  const double pi = std::numbers::pi;
  for (int n : ns) {
    for (double p : ps) {
      const std::string name = "n=" + std::to_string(n);
      guarded(ctx, name, [&] {
        auto row = [&](const std::string& what, int i, double est, double ref, double tol) {
          ReportRow r;
          r.case_name = what;
          r.n = n;
          r.p = p;
          r.i = i;
          r.estimate = est;
          r.reference = ref;
          r.margin = std::isnan(ref) ? 0.0 : match_margin(est, ref, tol * std::abs(ref));
          if (std::isnan(ref)) {
            r.message = "tabulated";
          }
          ctx.add(r);
        };
        const double c = sharp_constant(n, p);
        const double a = classical_constant(n, p);
        row("omega_n", 0, unit_ball_volume(n), kNaN, 0.0);
        row("q_1p", 1, q_coefficient(1, p), 1.0, 1e-14);
        row("q_np", n, q_coefficient(n, p), kNaN, 0.0);
        double c_ref = kNaN;
        double a_ref = kNaN;
        double a_tol = 1e-12;
        if (p == 1.0) {
          c_ref = 2.0 * unit_ball_volume(n - 1) / std::pow(unit_ball_volume(n), 1.0 - 1.0 / n);
          a_ref = n * std::pow(unit_ball_volume(n), 1.0 / n);
        } else if (n == 3 && p == 2.0) {
          c_ref = std::cbrt(pi * pi / 4.0);
          a_ref = std::sqrt(3.0) * std::pow(pi / 2.0, 2.0 / 3.0);
          a_tol = 1e-10;
        }
        row("c_np", 0, c, c_ref, 1e-12);
        row("a_np", 0, a, a_ref, a_tol);
      });
    }
  }
}

// ----------------------------------------------------------- verify-sobolev

void cmd_verify_sobolev(Context& ctx) {
  const auto& cases = cases_of(ctx.config);
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const std::string name = case_name(c, k);
    guarded(ctx, name, [&] {
      const auto profile = sobolev::profile_from_json(c.at("profile"), ctx.base);
      const double p = c.at("p").get<double>();
      const auto spec = ctx.spec_for(c);
      const std::string expect = c.value("expect", "inequality");
      const int n = sobolev::dim(profile);
      std::vector<int> is;
      if (c.contains("i")) {
        is = int_list(c.at("i"));
      } else {
        for (int i = 1; i <= n; ++i) {
          is.push_back(i);
        }
      }
      for (int i : is) {
        guarded(ctx, name, [&] {
          const auto ratio = sobolev::sobolev_ratio(profile, i, p, spec);
          ReportRow r;
          r.case_name = name;
          r.n = n;
          r.p = p;
          r.i = i;
          r.estimate = ratio.value;
          r.std_error = ratio.std_error;
          r.reference = 1.0;
          if (expect == "equality") {
            const double tol = c.contains("tolerance") ? c.at("tolerance").get<double>()
                                                       : 3.0 * ratio.std_error;
            r.margin = match_margin(ratio.value, 1.0, tol);
            r.message = "|ratio - 1| <= " + std::to_string(tol);
          } else if (expect == "strict") {
            r.margin = ratio.value - 1.0 - 3.0 * ratio.std_error;
            r.message = "ratio > 1 + 3 SE";
          } else if (expect == "inequality") {
            r.margin = ratio.value - 1.0 + 3.0 * ratio.std_error + kRoundoff;
            r.message = "ratio >= 1 - 3 SE";
          } else {
            throw ConfigError("unknown expectation '" + expect + "'");
          }
          ctx.add(r);
        });
      }
    });
  }
}

// -------------------------------------------------------------------- chain

void cmd_chain(Context& ctx) {
  const auto& cases = cases_of(ctx.config);
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const std::string name = case_name(c, k);
    guarded(ctx, name, [&] {
      const auto profile = sobolev::profile_from_json(c.at("profile"), ctx.base);
      const double p = c.at("p").get<double>();
      const bool strict = c.value("expect", "monotone") == "strict";
      const auto report = sobolev::chain_report(profile, p, ctx.spec_for(c));
      const int n = report.n;
      for (int i = 1; i <= n; ++i) {
        ReportRow r;
        r.case_name = name + ":E";
        r.n = n;
        r.p = p;
        r.i = i;
        r.estimate = report.values[i - 1].value;
        r.std_error = report.values[i - 1].std_error;
        r.reference = kNaN;
        r.margin = 0.0;
        r.message = "ratio to sharp bound " + std::to_string(report.ratios[i - 1].value);
        ctx.add(r);
      }
      auto gap_row = [&](int i, int j, bool strict_row) {
        ReportRow r;
        r.case_name = name + (strict_row ? ":strict" : ":gap");
        r.n = n;
        r.p = p;
        r.i = i;
        r.j = j;
        r.estimate = report.values[j - 1].value - report.values[i - 1].value;
        r.std_error = report.gap_std_error[j - 1][i - 1];
        r.reference = 0.0;
        if (strict_row) {
          r.margin = r.estimate - 3.0 * r.std_error;
          r.message = "E_j - E_i > 3 SE";
        } else {
          r.margin =
              r.estimate + 3.0 * r.std_error + kRoundoff * std::abs(report.values[j - 1].value);
          r.message = report.monotone ? "E_j - E_i >= -3 SE" : report.diagnostics;
        }
        ctx.add(r);
      };
      for (int i = 1; i < n; ++i) {
        gap_row(i, i + 1, false);
      }
      if (strict) {
        gap_row(1, n, true);
      }
    });
  }
}

// -------------------------------------------------------------------- petty

void cmd_petty(Context& ctx) {
  const auto& cases = cases_of(ctx.config);
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const std::string name = case_name(c, k);
    guarded(ctx, name, [&] {
      const std::string type = c.value("type", "petty");
      const auto spec = ctx.spec_for(c);
      if (type == "petty") {
        const auto body = polytope_of(c.at("body"), ctx.base);
        const int n = body.dim();
        for (double p : real_list(c.at("p"))) {
          guarded(ctx, name, [&] {
            const auto v = convex::petty_product(body, p, spec);
            const double ball = std::pow(geometry::unit_ball_volume(n), n / p);
            const std::string expect = c.value("expect", "at_most_ball");
            const double rel = c.value("rel_tol", 0.01);
            ReportRow r;
            r.case_name = name;
            r.n = n;
            r.p = p;
            r.estimate = v.value;
            r.std_error = v.std_error;
            if (expect == "value") {
              r.reference = c.at("reference").get<double>();
              r.margin = match_margin(v.value, r.reference, rel * r.reference);
              r.message = "within " + std::to_string(rel) + " relative of reference";
            } else if (expect == "ball_equality") {
              r.reference = ball;
              r.margin = match_margin(v.value, ball, rel * ball);
              r.message = "within " + std::to_string(rel) + " relative of omega_n^{n/p}";
            } else if (expect == "at_most_ball") {
              r.reference = ball;
              r.margin = ball * (1.0 + rel) - v.value;
              r.message = "<= omega_n^{n/p} (1 + " + std::to_string(rel) + ")";
            } else {
              throw ConfigError("unknown expectation '" + expect + "'");
            }
            ctx.add(r);
          });
        }
      } else if (type == "random_petty") {
        const int n = c.at("n").get<int>();
        const int count = c.at("count").get<int>();
        const double rel = c.value("rel_tol", 0.01);
        geometry::Rng rng(geometry::derive_seed(ctx.seed, 1000 + k));
        for (int m = 0; m < count; ++m) {
          const auto body = convex::random_symmetric_polytope(rng, n);
          for (double p : real_list(c.at("p"))) {
            guarded(ctx, name, [&] {
              const auto v = convex::petty_product(body, p, spec);
              const double ball = std::pow(geometry::unit_ball_volume(n), n / p);
              ReportRow r;
              r.case_name = name + "#" + std::to_string(m + 1);
              r.n = n;
              r.p = p;
              r.estimate = v.value;
              r.std_error = v.std_error;
              r.reference = ball;
              r.margin = ball * (1.0 + rel) - v.value;
              r.message = "<= omega_n^{n/p} (1 + " + std::to_string(rel) + ")";
              ctx.add(r);
            });
          }
        }
      } else if (type == "polytope_chain") {
        const auto body = polytope_of(c.at("body"), ctx.base);
        const int i = c.at("i").get<int>();
        const int j = c.at("j").get<int>();
        for (double p : real_list(c.at("p"))) {
          guarded(ctx, name, [&] {
            const auto sides = convex::polytope_chain_sides(body, i, j, p, spec);
            const std::string expect = c.value("expect", "order");
            ReportRow r;
            r.case_name = name;
            r.n = body.dim();
            r.p = p;
            r.i = i;
            r.j = j;
            r.estimate = sides.right.value - sides.left.value;
            r.std_error = sides.difference_std_error;
            r.reference = 0.0;
            const double floor = kRoundoff * std::abs(sides.left.value);
            if (expect == "order") {
              r.margin = r.estimate + 3.0 * r.std_error + floor;
              r.message = "right - left >= -3 SE";
            } else if (expect == "strict") {
              r.margin = r.estimate - 3.0 * r.std_error;
              r.message = "right - left > 3 SE";
            } else if (expect == "equal") {
              r.margin = 3.0 * r.std_error + floor - std::abs(r.estimate);
              r.message = "|right - left| <= 3 SE";
            } else {
              throw ConfigError("unknown expectation '" + expect + "'");
            }
            ctx.add(r);
          });
        }
      } else {
        throw ConfigError("unknown petty case type '" + type + "'");
      }
    });
  }
}

// ---------------------------------------------------------------- geom-ineq

// E_n >= E^mu_i >= E_1 rows for one zonoid sandwich.
void sandwich_rows(Context& ctx, const std::string& name, int n, double p, int i,
                   const quadrature::Estimate& en, const quadrature::Estimate& emu,
                   const quadrature::Estimate& e1) {
  auto gap = [&](const std::string& what, const quadrature::Estimate& hi,
                 const quadrature::Estimate& lo, int ii, int jj) {
    ReportRow r;
    r.case_name = name + ":" + what;
    r.n = n;
    r.p = p;
    r.i = ii;
    r.j = jj;
    r.estimate = hi.value - lo.value;
    r.std_error = quadrature::combined_error(hi.std_error, lo.std_error);
    r.reference = 0.0;
    r.margin = r.estimate + 3.0 * r.std_error + kRoundoff * std::abs(hi.value);
    r.message = what + " >= -3 SE";
    ctx.add(r);
  };
  gap("E_n-E_mu", en, emu, i, n);
  gap("E_mu-E_1", emu, e1, 1, i);
}

void cmd_geom_ineq(Context& ctx) {
  const auto& cases = cases_of(ctx.config);
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const std::string name = case_name(c, k);
    guarded(ctx, name, [&] {
      const std::string type = c.at("type").get<std::string>();
      const auto spec = ctx.spec_for(c);
      if (type == "nested_average") {
        const int i = c.at("i").get<int>();
        const int j = c.at("j").get<int>();
        std::vector<geometry::Vector> xs;
        if (c.contains("x")) {
          const auto v = c.at("x").get<std::vector<double>>();
          xs.push_back(Eigen::Map<const geometry::Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
        } else {
          geometry::Rng rng(geometry::derive_seed(ctx.seed, 2000 + k));
          std::normal_distribution<double> normal;
          const int n = c.at("n").get<int>();
          for (int m = 0; m < c.value("random", 5); ++m) {
            geometry::Vector x(n);
            for (int d = 0; d < n; ++d) {
              x[d] = normal(rng);
            }
            xs.push_back(x);
          }
        }
        for (double p : real_list(c.at("p"))) {
          for (std::size_t m = 0; m < xs.size(); ++m) {
            guarded(ctx, name, [&] {
              const auto res = convex::nested_average_residual(xs[m], i, j, p, spec);
              ReportRow r;
              r.case_name = name + "#" + std::to_string(m + 1);
              r.n = static_cast<int>(xs[m].size());
              r.p = p;
              r.i = i;
              r.j = j;
              r.estimate = res.value;
              r.std_error = res.std_error;
              r.reference = 0.0;
              r.margin = 3.0 * res.std_error + kRoundoff - std::abs(res.value);
              r.message = "|relative residual| <= 3 SE";
              ctx.add(r);
            });
          }
        }
      } else if (type == "zonoid_sandwich") {
        const auto profile = sobolev::profile_from_json(c.at("profile"), ctx.base);
        const int n = sobolev::dim(profile);
        const int i = c.at("i").get<int>();
        geometry::Rng rng(geometry::derive_seed(ctx.seed, 3000 + k));
        const auto mu = convex::random_even_measure(rng, i, c.value("pairs", 8), 1.0);
        for (double p : real_list(c.at("p"))) {
          guarded(ctx, name, [&] {
            sandwich_rows(ctx, name, n, p, i, sobolev::E_ip(profile, n, p, spec),
                          sobolev::E_ip_zonoid(profile, i, p, mu, spec),
                          sobolev::E_ip(profile, 1, p, spec));
          });
        }
      } else {
        throw ConfigError("unknown geom-ineq case type '" + type + "'");
      }
    });
  }
}

// ----------------------------------------------------------------------- bv

void cmd_bv(Context& ctx) {
  const auto& cases = cases_of(ctx.config);
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const std::string name = case_name(c, k);
    guarded(ctx, name, [&] {
      const std::string type = c.value("type", "bv");
      const auto spec = ctx.spec_for(c);
      if (type == "bv") {
        const auto body = sobolev::body_from_json(c.at("body"), ctx.base);
        const int n = convex::dim(body);
        const double bound = geometry::sharp_constant(n, 1.0) *
                             std::pow(body_volume(body), (n - 1.0) / n);
        const std::string expect = c.value("expect", "above_bound");
        for (int i : int_list(c.at("i"))) {
          guarded(ctx, name, [&] {
            const auto e = sobolev::E_i_bv(body, i, spec);
            ReportRow r;
            r.case_name = name;
            r.n = n;
            r.p = 1.0;
            r.i = i;
            r.estimate = e.value;
            r.std_error = e.std_error;
            r.reference = bound;
            if (expect == "ball_equality") {
              const double tol = c.contains("rel_tol") ? c.at("rel_tol").get<double>() * bound
                                                       : 3.0 * e.std_error;
              r.margin = match_margin(e.value, bound, tol);
              r.message = "equality in the BV inequality";
            } else if (expect == "above_bound") {
              r.margin = e.value - bound - 3.0 * e.std_error;
              r.message = "E_i > bound + 3 SE";
            } else if (expect == "inequality") {
              r.margin = e.value - bound + 3.0 * e.std_error + kRoundoff * bound;
              r.message = "E_i >= bound - 3 SE";
            } else {
              throw ConfigError("unknown expectation '" + expect + "'");
            }
            ctx.add(r);
          });
        }
      } else if (type == "bv_affine_invariance") {
        const auto ell = sobolev::body_from_json(
            json{{"type", "ellipsoid"}, {"shape", c.at("shape")}}, ctx.base);
        const int n = convex::dim(ell);
        const convex::ConvexBody ball = convex::Ball{n, 1.0};
        const int i = c.value("i", 1);
        const double e = (n - 1.0) / n;
        const auto a = sobolev::E_i_bv(ell, i, spec);
        const auto b = sobolev::E_i_bv(ball, i, spec);
        const double sa = std::pow(body_volume(ell), e);
        const double sb = std::pow(body_volume(ball), e);
        ReportRow r;
        r.case_name = name;
        r.n = n;
        r.p = 1.0;
        r.i = i;
        r.estimate = a.value / sa - b.value / sb;
        r.std_error = quadrature::combined_error(a.std_error / sa, b.std_error / sb);
        r.reference = 0.0;
        r.margin = 3.0 * r.std_error + kRoundoff * b.value / sb - std::abs(r.estimate);
        r.message = "E_i(1_{AB}) / |AB|^{(n-1)/n} matches the ball within 3 SE";
        ctx.add(r);
      } else if (type == "bv_sandwich") {
        const auto body = sobolev::body_from_json(c.at("body"), ctx.base);
        const int n = convex::dim(body);
        const int i = c.at("i").get<int>();
        geometry::Rng rng(geometry::derive_seed(ctx.seed, 3000 + k));
        const auto mu = convex::random_even_measure(rng, i, c.value("pairs", 8), 1.0);
        sandwich_rows(ctx, name, n, 1.0, i, sobolev::E_i_bv(body, n, spec),
                      sobolev::E_i_bv_zonoid(body, i, mu, spec), sobolev::E_i_bv(body, 1, spec));
      } else {
        throw ConfigError("unknown bv case type '" + type + "'");
      }
    });
  }
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

const std::map<std::string, std::function<void(Context&)>>& dispatch() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"constants", cmd_constants}, {"verify-sobolev", cmd_verify_sobolev},
      {"chain", cmd_chain},         {"petty", cmd_petty},
      {"geom-ineq", cmd_geom_ineq}, {"bv", cmd_bv},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : dispatch()) {
      v.push_back(name);
    }
    return v;
  }();
  return names;
}

QuadratureSpec spec_from_json(const json& j, std::uint64_t seed) {
  QuadratureSpec spec;
  try {
    spec.radial_nodes = j.value("radial_nodes", spec.radial_nodes);
    spec.sphere_samples = j.value("sphere_samples", spec.sphere_samples);
    spec.grassmann_samples = j.value("grassmann_samples", spec.grassmann_samples);
    spec.target_rel_error = j.value("target_rel_error", spec.target_rel_error);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }
  spec.seed = seed;
  spec.validate();
  return spec;
}

Report run_command(const std::string& command, const json& config,
                   std::optional<std::uint64_t> seed_override,
                   const std::filesystem::path& base_dir) {
  const auto it = dispatch().find(command);
  if (it == dispatch().end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  if (!config.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  Context ctx;
  ctx.command = command;
  if (seed_override) {
    ctx.seed = *seed_override;
  } else if (config.contains("seed")) {
    try {
      ctx.seed = config.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("seed: ") + e.what());
    }
  } else {
    throw ConfigError("a seed is mandatory: pass --seed or set \"seed\" in the config");
  }
  ctx.config = config;
  ctx.config["seed"] = ctx.seed;
  ctx.base = base_dir;
  // Structural problems with the shared quadrature block abort the run;
  // everything case-specific is reported per row.
  spec_from_json(config.value("quadrature", json::object()), ctx.seed);
  try {
    it->second(ctx);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  Report report;
  report.header.command = command;
  report.header.seed = ctx.seed;
  report.header.config = ctx.config;
  report.header.base_dir = base_dir.empty() ? "" : std::filesystem::absolute(base_dir).string();
  report.header.wall_clock = now_utc();
  report.rows = std::move(ctx.rows);
  return report;
}

Report run_config_file(const std::string& command, const std::filesystem::path& config_path,
                       std::optional<std::uint64_t> seed_override) {
  std::ifstream in(config_path);
  if (!in) {
    throw ConfigError("cannot open config " + config_path.string());
  }
  json config;
  try {
    in >> config;
  } catch (const json::exception& e) {
    throw ConfigError("config " + config_path.string() + ": " + e.what());
  }
  return run_command(command, config, seed_override,
                     std::filesystem::absolute(config_path).parent_path());
}

ReplayResult replay(const Report& original) {
  ReplayResult result;
  const auto& h = original.header;
  result.rerun = run_command(h.command, h.config, h.seed, h.base_dir);
  const auto& a = original.rows;
  const auto& b = result.rerun.rows;
  if (a.size() != b.size()) {
    result.differences.push_back("row count " + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
  }
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    const auto la = csv_line(a[k]);
    const auto lb = csv_line(b[k]);
    if (la != lb) {
      result.differences.push_back("row " + std::to_string(k + 1) + ": " + la + " | " + lb);
    }
  }
  result.identical = result.differences.empty();
  return result;
}

}  // namespace projave::harness

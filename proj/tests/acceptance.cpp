// Acceptance suite: runs the shipped configs through the harness and prints
// one PASS/FAIL line per criterion. Exit status 1 if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "projave/harness/commands.hpp"
#include "projave/harness/report.hpp"

using namespace projave::harness;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(PROJAVE_SOURCE_DIR) / "configs";

struct Run {
  Report report;
  double seconds = 0.0;
  std::string error;
};

std::map<std::string, Run> runs;

const Run& run(const std::string& command) {
  auto it = runs.find(command);
  if (it != runs.end()) {
    return it->second;
  }
  Run r;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.report = run_config_file(command, kConfigs / (command + ".json"), std::nullopt);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return runs.emplace(command, std::move(r)).first->second;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

// Rows of a case; expanded cases carry "#k" or ":part" suffixes.
std::vector<ReportRow> rows(const std::string& command, const std::string& name) {
  std::vector<ReportRow> out;
  for (const auto& r : run(command).report.rows) {
    if (r.case_name == name || starts_with(r.case_name, name + "#") || starts_with(r.case_name, name + ":")) {
      out.push_back(r);
    }
  }
  return out;
}

// Collects the outcome of one criterion.
struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  // All rows present and passing.
  void rows_pass(const std::vector<ReportRow>& rs, std::size_t expected, const std::string& what) {
    require(rs.size() == expected,
            what + ": " + std::to_string(rs.size()) + " rows, expected " + std::to_string(expected));
    for (const auto& r : rs) {
      require(r.pass, what + " row " + std::to_string(r.row) + " (" + r.case_name + ") failed: " + r.message);
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int k, const std::string& title, const std::vector<std::string>& commands,
               double limit_seconds, const std::function<Verdict()>& body) {
  Verdict v;
  double seconds = 0.0;
  for (const auto& c : commands) {
    const auto& r = run(c);
    seconds += r.seconds;
    v.require(r.error.empty(), c + ": " + r.error);
  }
  const auto start = std::chrono::steady_clock::now();
  if (v.ok) {
    const auto more = body();
    v.require(more.ok, more.detail);
    if (more.ok && !more.detail.empty()) {
      v.detail = more.detail;
    }
  }
  seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(seconds < limit_seconds, fmt("runtime %.1f s over the %.0f s limit", seconds, limit_seconds));
  failures += v.ok ? 0 : 1;
  std::printf("%s criterion %2d: %s [%.1f s]%s%s\n", v.ok ? "PASS" : "FAIL", k, title.c_str(), seconds,
              v.detail.empty() ? "" : " -- ", v.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "closed-form constants", {"constants"}, 1.0, [] {
    Verdict v;
    const auto& all = run("constants").report.rows;
    v.rows_pass(all, all.size(), "constants");
    int p1 = 0;
    bool c32 = false;
    bool a32 = false;
    for (const auto& r : all) {
      p1 += (r.p == 1.0 && (starts_with(r.case_name, "c_np") || starts_with(r.case_name, "a_np")) &&
             !std::isnan(r.reference));
      c32 = c32 || (r.n == 3 && r.p == 2.0 && starts_with(r.case_name, "c_np") && !std::isnan(r.reference));
      a32 = a32 || (r.n == 3 && r.p == 2.0 && starts_with(r.case_name, "a_np") && !std::isnan(r.reference));
    }
    v.require(p1 == 12, "expected 12 referenced p = 1 rows for n = 3..8");
    v.require(c32 && a32, "missing referenced (3, 2) rows");
    v.detail = std::to_string(all.size()) + " rows";
    return v;
  });

  criterion(2, "sharpness on Aubin-Talenti profiles, n = 3, p in {1.5, 2}, i = 1..3", {"verify-sobolev"}, 60.0, [] {
    Verdict v;
    auto rs = rows("verify-sobolev", "aubin_talenti_p1.5");
    for (const auto& r : rows("verify-sobolev", "aubin_talenti_p2")) {
      rs.push_back(r);
    }
    v.rows_pass(rs, 6, "aubin_talenti");
    double worst = 0.0;
    for (const auto& r : rs) {
      worst = std::max(worst, std::abs(r.estimate - 1.0));
    }
    v.require(worst <= 1e-3, fmt("max |ratio - 1| = %.3g", worst));
    v.detail = fmt("max |ratio - 1| = %.2g", worst);
    return v;
  });

  criterion(3, "i = 1 equality for the affine extremizer A = diag(2, 1, 1/2), p = 2", {"verify-sobolev"}, 600.0, [] {
    Verdict v;
    auto rs = rows("verify-sobolev", "affine_i1");
    v.rows_pass(rs, 1, "affine_i1");
    if (rs.size() == 1) {
      const auto& r = rs[0];
      v.require(std::abs(r.estimate - 1.0) <= 3.0 * r.std_error, "|ratio - 1| > 3 SE");
      v.require(r.std_error <= 5e-3, fmt("SE %.3g above 5e-3", r.std_error));
      v.detail = fmt("ratio %.5f, SE %.2g", r.estimate, r.std_error);
    }
    return v;
  });

  criterion(4, "chain E_3 >= E_2 >= E_1 on the anisotropic profile, strict end gap", {"chain"}, 600.0, [] {
    Verdict v;
    v.rows_pass(rows("chain", "affine_diag(2,1,0.5):gap"), 2, "gaps");
    auto strict = rows("chain", "affine_diag(2,1,0.5):strict");
    v.rows_pass(strict, 1, "strict");
    if (strict.size() == 1) {
      v.detail = fmt("E_3 - E_1 = %.4f, SE %.2g", strict[0].estimate, strict[0].std_error);
    }
    return v;
  });

  criterion(5, "nested-subspace averaging identity at 1e6 samples", {"geom-ineq"}, 120.0, [] {
    Verdict v;
    const auto& cfg = run("geom-ineq").report.header.config;
    v.require(cfg.at("quadrature").at("grassmann_samples") == 1000000, "sample count is not 1e6");
    for (const auto* name : {"nested_1_2", "nested_1_3", "nested_2_3"}) {
      v.rows_pass(rows("geom-ineq", name), 10, name);
    }
    auto e1 = rows("geom-ineq", "nested_e1");
    v.rows_pass(e1, 1, "nested_e1");
    if (e1.size() == 1) {
      // lhs = q_{2,2} |e_1|^2 = 1/2, so the averaged side is (1 + residual) / 2.
      const double mean = 0.5 * (1.0 + e1[0].estimate);
      const double se = 0.5 * e1[0].std_error;
      v.require(std::abs(mean - 0.5) <= 3.0 * se, fmt("e_1 average %.6f, SE %.2g", mean, se));
      v.detail = fmt("e_1 average %.6f +- %.1g", mean, se);
    }
    return v;
  });

  criterion(6, "Petty product: cube, 1280-facet ball, 20 random polytopes at p = 1, 2", {"petty"}, 300.0, [] {
    Verdict v;
    auto cube = rows("petty", "cube");
    auto ball = rows("petty", "geodesic_ball");
    v.rows_pass(cube, 1, "cube");
    v.rows_pass(ball, 2, "geodesic_ball");
    v.rows_pass(rows("petty", "random"), 40, "random");
    const auto& cfg = run("petty").report.header.config;
    v.require(cfg.at("quadrature").at("sphere_samples") == 1000000, "sample count is not 1e6");
    if (!cube.empty() && !ball.empty()) {
      v.detail = fmt("cube %.3f vs %.3f, ball %.3f", cube[0].estimate, cube[0].reference, ball[0].estimate);
    }
    return v;
  });

  criterion(7, "Grassmannian chain of polytope functionals, (i, j) = (1, 3), p = 1", {"petty"}, 300.0, [] {
    Verdict v;
    auto cube = rows("petty", "cube_chain");
    auto ball = rows("petty", "geodesic_chain");
    v.rows_pass(cube, 1, "cube_chain");
    v.rows_pass(ball, 1, "geodesic_chain");
    if (cube.size() == 1 && ball.size() == 1) {
      v.detail = fmt("cube gap %.2f SE, ball gap %.2f SE", cube[0].estimate / cube[0].std_error,
                     ball[0].estimate / ball[0].std_error);
    }
    return v;
  });

  criterion(8, "BV functionals: ball equality, cube strict, i = 1 ellipsoid invariance", {"bv"}, 300.0, [] {
    Verdict v;
    auto ball = rows("bv", "ball");
    v.rows_pass(ball, 3, "ball");
    for (const auto& r : ball) {
      v.require(std::abs(r.estimate - 2.0 * std::numbers::pi) <= 0.01 * 2.0 * std::numbers::pi, "ball row off 2 pi");
    }
    v.rows_pass(rows("bv", "geodesic_ball"), 3, "geodesic_ball");
    v.rows_pass(rows("bv", "cube"), 3, "cube");
    v.rows_pass(rows("bv", "ellipsoid_invariance"), 1, "ellipsoid_invariance");
    v.rows_pass(rows("bv", "ellipsoid_invariance_skew"), 1, "ellipsoid_invariance_skew");
    return v;
  });

  criterion(9, "zonoid sandwich E_n >= E^mu_2 >= E_1, Gaussian profile and cube body", {"geom-ineq", "bv"}, 600.0, [] {
    Verdict v;
    v.rows_pass(rows("geom-ineq", "gaussian_sandwich"), 2, "gaussian_sandwich");
    v.rows_pass(rows("geom-ineq", "affine_sandwich"), 2, "affine_sandwich");
    v.rows_pass(rows("bv", "cube_sandwich"), 2, "cube_sandwich");
    return v;
  });

  // Replaying re-runs every command once more; the limit only guards
  // against runaway reruns.
  criterion(10, "every report re-runs bitwise from its header", {}, 600.0, [] {
    Verdict v;
    int n = 0;
    for (const auto& [name, r] : runs) {
      // Through the serialised form, as a report file would be read back.
      // The json form is checked on the cheap commands only.
      for (auto format : {Format::csv, Format::json}) {
        if (format == Format::json && r.seconds > 1.0) {
          continue;
        }
        const auto result = replay(parse_report(render(r.report, format)));
        v.require(result.identical, name + ": " + (result.differences.empty() ? "" : result.differences[0]));
      }
      n += static_cast<int>(r.report.rows.size());
    }
    v.detail = std::to_string(n) + " rows in " + std::to_string(runs.size()) + " reports";
    return v;
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

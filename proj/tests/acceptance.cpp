// Acceptance suite: one PASS/FAIL line per criterion with the measured
// deviation, the tolerance and the wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cs2d/grid.hpp"
#include "cs2d/identity.hpp"
#include "cs2d/oracle.hpp"
#include "cs2d/schrodinger.hpp"
#include "cs2d/su2.hpp"
#include "oracles.hpp"

using namespace cs2d;
namespace or_ = cs2d::oracle;
using cs2d::testing::random_su2;

namespace {

const double kH = std::sqrt(3.0) / 2.0;

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Tracks the worst |deviation| against one tolerance.
struct Worst {
  double tol;
  double value = 0.0;
  void add(double d) { value = std::max(value, std::isnan(d) ? INFINITY : d); }
  [[nodiscard]] bool ok() const { return value <= tol; }
  [[nodiscard]] std::string text() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "max dev %.3e (tol %.0e)", value, tol);
    return buf;
  }
};

double vec_gap(const or_::DenseVector& a, const or_::DenseVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Same, restricted to modes at least `margin` levels below both cutoffs.
double interior_gap(const or_::TruncatedSpace& space, const or_::DenseVector& a, const or_::DenseVector& b,
                    int margin) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < space.dimension(); ++i) {
    const auto md = space.mode(i);
    if (md.n > space.n_max() - margin || md.m > space.m_max() - margin) continue;
    worst = std::max(worst, std::abs(a(i) - b(i)));
  }
  return worst;
}

Outcome c1_table() {
  std::mt19937_64 rng(1);
  Worst w{1e-12};
  for (int k = 0; k < 20; ++k) {
    const auto [a, b] = random_su2(rng);
    const SU2Params prm(a, b);
    const auto c0 = su2_coefficients(SU2State(0, prm));
    w.add(std::abs(c0.at({0, 0}) - 1.0));
    const auto c1 = su2_coefficients(SU2State(1, prm));
    w.add(std::abs(c1.at({1, 0}) - a));
    w.add(std::abs(c1.at({0, 1}) - b));
    const auto c2 = su2_coefficients(SU2State(2, prm));
    w.add(std::abs(c2.at({2, 0}) - a * a));
    w.add(std::abs(c2.at({1, 1}) - std::sqrt(2.0) * a * b));
    w.add(std::abs(c2.at({0, 2}) - b * b));
    if (c0.size() != 1 || c1.size() != 2 || c2.size() != 3) w.add(INFINITY);
  }
  return {w.ok(), w.text()};
}

Outcome c2_construction() {
  std::mt19937_64 rng(2);
  Worst w{1e-10};
  const or_::TruncatedSpace space(25, 25);
  std::vector<SU2Params> params{SU2Params({0.0, kH}, {0.5, 0.0}), SU2Params({kH, 0.0}, {0.5, 0.0})};
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = random_su2(rng);
    params.emplace_back(a, b);
  }
  for (const auto& prm : params) {
    const auto up = or_::build_generalized_ladder(space, prm, or_::Direction::raise);
    or_::DenseVector v = or_::StateVector::basis(space, {0, 0}).amplitudes();
    for (int nu = 0; nu <= 25; ++nu) {
      if (nu > 0) v = (up.matrix() * v) / std::sqrt(static_cast<double>(nu));
      const auto ref = or_::StateVector::embed(space, su2_coefficients(SU2State(nu, prm)));
      w.add(vec_gap(v, ref.amplitudes()));
    }
  }
  return {w.ok(), w.text() + ", nu 0..25, 5 parameter sets"};
}

Outcome c3_variances() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> nus(0, 40);
  const AnisotropyRatio ratios[] = {{1, 1}, {2, 1}, {3, 2}};
  Worst w{1e-10};
  for (int k = 0; k < 30; ++k) {
    const auto [a, b] = random_su2(rng);
    const SU2State s(nus(rng), SU2Params(a, b), ratios[k % 3]);
    const auto closed = su2_variances(s);
    const auto orc = or_::oracle_variances(su2_coefficients(s));
    w.add(std::abs(closed.var_x - orc.var_x));
    w.add(std::abs(closed.var_px - orc.var_px));
    w.add(std::abs(closed.var_y - orc.var_y));
    w.add(std::abs(closed.var_py - orc.var_py));
  }
  const SU2State iso(40, SU2Params({kH, 0.0}, {0.5, 0.0}));
  const auto v = su2_variances(iso);
  const auto ov = or_::oracle_variances(su2_coefficients(iso));
  w.add(std::abs(v.var_x - 30.5));
  w.add(std::abs(v.var_y - 10.5));
  w.add(std::abs(ov.var_x - 30.5));
  w.add(std::abs(ov.var_y - 10.5));
  char buf[96];
  std::snprintf(buf, sizeof buf, ", nu=40 iso: var_x=%.12f var_y=%.12f", v.var_x, v.var_y);
  return {w.ok(), w.text() + buf};
}

Outcome c4_energy() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> nus(0, 40);
  const AnisotropyRatio ratios[] = {{1, 1}, {2, 1}, {3, 2}};
  Worst w{1e-10};
  for (int k = 0; k < 30; ++k) {
    const auto [a, b] = random_su2(rng);
    const SU2State s(nus(rng), SU2Params(a, b), ratios[k % 3]);
    w.add(std::abs(su2_energy(s) - or_::oracle_number_energy(su2_coefficients(s))));
  }
  const SU2State s(40, SU2Params({0.0, kH}, {0.5, 0.0}), AnisotropyRatio(2, 1));
  const double e = su2_energy(s);
  w.add(std::abs(e - 71.0));
  w.add(std::abs(or_::oracle_number_energy(su2_coefficients(s)) - 71.0));
  char buf[64];
  std::snprintf(buf, sizeof buf, ", p=2 q=1 nu=40: %.12f", e);
  return {w.ok(), w.text() + buf};
}

Outcome c5_displacement() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const or_::TruncatedSpace space(40, 40);
  const auto vac = or_::StateVector::basis(space, {0, 0});
  Worst w{1e-8};
  for (int k = 0; k < 20; ++k) {
    const auto [a, b] = random_su2(rng);
    const SU2Params prm(a, b);
    const Complex psi = std::polar(radius(rng), angle(rng));
    const auto by_exp = or_::displace(space, psi, prm, vac).amplitudes();
    or_::DenseVector outer(space.dimension());
    for (Eigen::Index i = 0; i < space.dimension(); ++i) {
      const auto md = space.mode(i);
      outer(i) = coherent1d_coeff(a * psi, md.n) * coherent1d_coeff(b * psi, md.m);
    }
    // Enough shells that nothing above the interior is dropped; modes outside
    // the truncated space are simply not compared.
    const auto coeffs = schrodinger_coefficients(SchrodingerState(psi, prm, {}, 81));
    or_::DenseVector series(space.dimension());
    for (Eigen::Index i = 0; i < space.dimension(); ++i) series(i) = coeffs.at(space.mode(i));
    w.add(interior_gap(space, by_exp, outer, 5));
    w.add(interior_gap(space, by_exp, series, 5));
    w.add(interior_gap(space, outer, series, 5));
  }
  // Full Pade matrix exponential against the exponential action, on a smaller
  // space so the dense 2D exponential stays within the time budget.
  const or_::TruncatedSpace small(24, 24);
  const auto small_vac = or_::StateVector::basis(small, {0, 0});
  const SU2Params prm({0.0, kH}, {0.5, 0.0});
  const Complex psi = std::polar(2.5, 0.7);
  const or_::DenseVector full = or_::displacement(small, psi, prm).matrix() * small_vac.amplitudes();
  w.add(interior_gap(small, full, or_::displace(small, psi, prm, small_vac).amplitudes(), 5));
  return {w.ok(), w.text() + ", cutoff 40 per mode, 20 samples; full exponential at cutoff 24"};
}

Outcome c6_annihilation() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> radius(0.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Worst w{1e-5};
  bool monotone = true;
  for (int k = 0; k < 10; ++k) {
    const auto [a, b] = random_su2(rng);
    const SU2Params prm(a, b);
    const Complex psi = k == 0 ? Complex{2.0, 0.0} : std::polar(radius(rng), angle(rng));
    double prev = INFINITY;
    for (double eps : {1e-4, 1e-8, 1e-12}) {
      const double r = annihilation_residual(SchrodingerState::with_tail_rule(psi, prm, {}, eps));
      if (r > prev) monotone = false;
      prev = r;
    }
    w.add(prev);
  }
  return {w.ok() && monotone, w.text() + (monotone ? ", monotone in eps" : ", NOT monotone in eps")};
}

Outcome c7_uncertainty() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Worst var{1e-6};
  Worst prod{1e-6};
  for (int k = 0; k < 10; ++k) {
    const auto [a, b] = random_su2(rng);
    const Complex psi = k == 0 ? Complex{0.0, 3.0} : std::polar(radius(rng), angle(rng));
    const auto v = or_::oracle_variances(schrodinger_coefficients(SchrodingerState::with_tail_rule(psi, {a, b})));
    for (double x : {v.var_x, v.var_px, v.var_y, v.var_py}) var.add(std::abs(x - 0.5));
    prod.add(std::abs(v.var_x * v.var_px - 0.25));
    prod.add(std::abs(v.var_y * v.var_py - 0.25));
  }
  return {var.ok() && prod.ok(), "variances " + var.text() + "; products " + prod.text()};
}

Outcome c8_su2_identity() {
  using namespace identity;
  Worst w{1e-10};
  const auto dev = [](const ShellMatrix& s) {
    return (s.matrix - Eigen::MatrixXcd::Identity(s.matrix.rows(), s.matrix.cols())).cwiseAbs().maxCoeff();
  };
  for (int nu = 0; nu <= 20; ++nu) w.add(dev(su2_identity_matrix(nu, {}, S3QuadratureSpec::for_nu(nu))));
  for (const AnisotropyRatio r : {AnisotropyRatio(2, 1), AnisotropyRatio(3, 2)}) {
    for (int nu = 0; nu <= 10; ++nu) w.add(dev(su2_identity_matrix(nu, r, S3QuadratureSpec::for_nu(nu))));
  }
  return {w.ok(), w.text()};
}

Outcome c9_weighted() {
  using namespace identity;
  const auto s3 = S3QuadratureSpec::for_nu(16);
  const auto plane = PlaneQuadratureSpec::for_nu(16);
  const auto wt = weighted_schrodinger_identity(8, 8, s3, plane, true);
  const auto un = weighted_schrodinger_identity(8, 8, s3, plane, false);
  Worst w{1e-8};
  Worst u{1e-8};
  for (std::size_t k = 0; k < wt.modes.size(); ++k) {
    if (wt.modes[k].n + wt.modes[k].m > 8) continue;
    w.add(std::abs(wt.diagonal[k] - 1.0));
  }
  double at22 = 0.0;
  for (std::size_t k = 0; k < un.modes.size(); ++k) {
    const auto md = un.modes[k];
    if (md.n + md.m > 8) continue;
    u.add(std::abs(un.diagonal[k] - 1.0 / (md.n + md.m + 1)));
    if (md == ModeIndex2D{2, 2}) at22 = un.diagonal[k];
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, ", unweighted (2,2) = %.12f", at22);
  return {w.ok() && u.ok(), "weighted " + w.text() + "; unweighted vs 1/(n+m+1) " + u.text() + buf};
}

Outcome c10_fock() {
  using namespace identity;
  Worst w{1e-10};
  for (int nu = 0; nu <= 6; ++nu) {
    for (int n = 0; n <= nu; ++n) {
      const auto c = fock_reconstruction(n, nu - n, S3QuadratureSpec::for_nu(nu));
      bool seen = false;
      for (const auto& [idx, amp] : c) {
        const bool target = idx == ModeIndex2D{n, nu - n};
        seen = seen || target;
        w.add(std::abs(amp - (target ? 1.0 : 0.0)));
      }
      if (!seen) w.add(INFINITY);
    }
  }
  return {w.ok(), w.text() + ", all n+m <= 6"};
}

Outcome c11_peaks() {
  const auto spec = GridSpec::symmetric(12.0, 241);
  const SU2Params prm({0.0, kH}, {0.5, 0.0});
  bool ok = true;
  std::string detail;
  for (double phase : {0.0, std::numbers::pi / 4}) {
    const Complex psi = std::polar(8.0, phase);
    const auto g = render(SchrodingerState::with_tail_rule(psi, prm), spec, 4);
    const double px = std::sqrt(2.0) * (prm.alpha() * psi).real();
    const double py = std::sqrt(2.0) * (prm.beta() * psi).real();
    ok = ok && std::abs(g.peak_x() - px) <= spec.dx() && std::abs(g.peak_y() - py) <= spec.dy();
    char buf[128];
    std::snprintf(buf, sizeof buf, "%speak (%.3f, %.3f) vs (%.3f, %.3f)", detail.empty() ? "" : "; ",
                  g.peak_x(), g.peak_y(), px, py);
    detail += buf;
    if (phase == 0.0) ok = ok && std::abs(g.peak_x()) <= spec.dx() && std::abs(g.peak_y() - 5.657) <= spec.dy();
  }
  return {ok, detail + ", spacing 0.1"};
}

Outcome c12_band() {
  const SU2State st(40, SU2Params({kH, 0.0}, {0.5, 0.0}));
  const auto spec = GridSpec::symmetric(12.0, 241);
  const auto g = render(st, spec, 4);
  const double th = std::numbers::pi / 6;
  double band = 0.0;
  double total = 0.0;
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      total += g.value(i, j);
      if (std::abs(spec.x(i) * std::sin(th) - spec.y(j) * std::cos(th)) <= 1.5) band += g.value(i, j);
    }
  }
  const double frac = band / total;
  char buf[96];
  std::snprintf(buf, sizeof buf, "band mass fraction %.6f (need >= 0.9)", frac);
  return {frac >= 0.9, buf};
}

Outcome c13_fig56() {
  const SU2Params prm({0.0, kH}, {0.5, 0.0});
  Worst w{1e-12};
  bool reproducible = true;
  for (double r : {8.0, 4.0}) {
    for (double phase : {0.0, std::numbers::pi / 2}) {
      const SchrodingerState s(std::polar(r, phase), prm, AnisotropyRatio(2, 1), 30);
      const double captured = schrodinger_coefficients(s).captured_norm();
      w.add(std::abs(captured - cs2d::testing::poisson_cdf_by_product(r * r, 30)));
      w.add(std::abs(captured - poisson_partial_sum(r * r, 30)));
      const auto spec = GridSpec::symmetric(14.0, 201);
      const auto base = render(s, spec, 1);
      for (int t : {1, 2, 5, 8}) {
        const auto again = render(s, spec, t);
        reproducible = reproducible && again.values == base.values && again.mass == base.mass &&
                       again.peak_i == base.peak_i && again.peak_j == base.peak_j;
      }
    }
  }
  return {w.ok() && reproducible,
          "captured_norm " + w.text() + (reproducible ? ", grids bit-identical" : ", grids DIFFER")};
}

Outcome c14_occupation() {
  Worst w{1e-12};
  const SU2Params prm({0.0, kH}, {0.5, 0.0});
  for (double r : {0.5, 1.0, 2.5, 4.0}) {
    for (const AnisotropyRatio ratio : {AnisotropyRatio(1, 1), AnisotropyRatio(2, 1)}) {
      const SchrodingerState s(std::polar(r, 0.3 * r), prm, ratio, 41);
      // Shell populations straight from the coefficient vector.
      const auto coeffs = schrodinger_coefficients(s);
      std::map<int, double> shell;
      for (const auto& t : schrodinger_terms(s)) shell[t.nu] += std::norm(coeffs.at(t.mode));
      for (int mu = 0; mu <= 40; ++mu) {
        const double ref = static_cast<double>(cs2d::testing::poisson_by_product(r * r, mu));
        w.add(std::abs(shell[mu] - ref));
        w.add(std::abs(poisson_occupation(s, mu) - ref));
      }
    }
  }
  return {w.ok(), w.text() + ", mu <= 40, |Psi| <= 4, ratios 1:1 and 2:1"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Table 1 exactness", c1_table},
      {"Oracle construction (A+)^nu|0>", c2_construction},
      {"Variance formulas", c3_variances},
      {"Energy formula", c4_energy},
      {"Displacement factorization", c5_displacement},
      {"Annihilation eigenproperty", c6_annihilation},
      {"Minimal uncertainty", c7_uncertainty},
      {"SU(2) identity", c8_su2_identity},
      {"Weighted vs unweighted measure", c9_weighted},
      {"Fock reconstruction", c10_fock},
      {"Fig. 2 peak location", c11_peaks},
      {"Fig. 1 line concentration", c12_band},
      {"Fig. 5/6 truncated regime", c13_fig56},
      {"Poisson occupation", c14_occupation},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failures;
    std::printf("[%s] %2zu. %-32s %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

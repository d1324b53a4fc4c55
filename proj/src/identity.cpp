#include "cs2d/identity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "cs2d/errors.hpp"
#include "cs2d/gauss_rules.hpp"
#include "cs2d/su2.hpp"

namespace cs2d::identity {

namespace {

constexpr double kPi = std::numbers::pi;

// Calls f(weight, params) for every reduced S^3 node; weights sum to pi^2.
void for_each_s3_node(const S3QuadratureSpec& spec,
                      const std::function<void(double, const SU2Params&)>& f) {
  const auto rule = gauss_legendre(spec.u_nodes, 0.0, 1.0);
  const double dphi = 2.0 * kPi / spec.phase_nodes;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double w = 0.25 * rule.weights[i] * dphi * (2.0 * kPi);
    for (int k = 0; k < spec.phase_nodes; ++k) {
      const SU2Params params(std::polar(std::sqrt(u), k * dphi), Complex{std::sqrt(1.0 - u), 0.0});
      f(w, params);
    }
  }
}

// R(a, b) = int d^2Psi/pi |Psi|^{2 extra} f_a(Psi) conj(f_b(Psi)), with
// f_k(Psi) = e^{-|Psi|^2/2} Psi^k / sqrt(k!).
Eigen::MatrixXcd plane_moments(int k_max, int extra, const PlaneQuadratureSpec& spec) {
  const auto rule = gauss_laguerre(spec.radial_nodes);
  const double dtheta = 2.0 * kPi / spec.angular_nodes;
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(k_max + 1, k_max + 1);
  for (int a = 0; a <= k_max; ++a) {
    for (int b = 0; b <= k_max; ++b) {
      Complex angular{};
      for (int j = 0; j < spec.angular_nodes; ++j) angular += std::polar(1.0, (a - b) * j * dtheta);
      angular *= dtheta;
      double radial = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double log_term = (0.5 * (a + b) + extra) * std::log(t) -
                                0.5 * (log_factorial(a) + log_factorial(b));
        radial += rule.weights[i] * std::exp(log_term);
      }
      r(a, b) = 0.5 * radial * angular / kPi;
    }
  }
  return r;
}

DiagonalSummary summarize(const std::vector<ModeIndex2D>& modes, const Eigen::MatrixXcd& m) {
  DiagonalSummary s;
  s.modes = modes;
  s.diagonal.resize(modes.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s.diagonal[static_cast<std::size_t>(i)] = m(i, i).real();
    s.max_imag_diagonal = std::max(s.max_imag_diagonal, std::abs(m(i, i).imag()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) s.max_offdiag = std::max(s.max_offdiag, std::abs(m(i, j)));
      s.hermiticity_defect = std::max(s.hermiticity_defect, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return s;
}

void merge_block(DiagonalSummary& into, const DiagonalSummary& block) {
  into.modes.insert(into.modes.end(), block.modes.begin(), block.modes.end());
  into.diagonal.insert(into.diagonal.end(), block.diagonal.begin(), block.diagonal.end());
  into.max_offdiag = std::max(into.max_offdiag, block.max_offdiag);
  into.hermiticity_defect = std::max(into.hermiticity_defect, block.hermiticity_defect);
  into.max_imag_diagonal = std::max(into.max_imag_diagonal, block.max_imag_diagonal);
}

double diagonal_deviation(const DiagonalSummary& s, const std::function<double(ModeIndex2D)>& target) {
  double worst = std::max(s.max_offdiag, s.max_imag_diagonal);
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    worst = std::max(worst, std::abs(s.diagonal[i] - target(s.modes[i])));
  }
  return worst;
}

nlohmann::json s3_json(const S3QuadratureSpec& s) {
  return {{"u_nodes", s.u_nodes}, {"phase_nodes", s.phase_nodes}};
}

nlohmann::json plane_json(const PlaneQuadratureSpec& s) {
  return {{"radial_nodes", s.radial_nodes}, {"angular_nodes", s.angular_nodes}};
}

IdentityCheck make_check(std::string name, std::string target, double deviation, double tol,
                         nlohmann::json spec) {
  return {std::move(name), std::move(target), deviation, tol, deviation <= tol, std::move(spec)};
}

}  // namespace

S3QuadratureSpec S3QuadratureSpec::for_nu(int nu_max) {
  return {std::max(nu_max, 0) + 4, 2 * std::max(nu_max, 0) + 2};
}

void S3QuadratureSpec::require_resolves(int nu_max) const {
  if (u_nodes < 1 || 2 * u_nodes - 1 < nu_max) {
    throw UnderResolvedError("u_nodes = " + std::to_string(u_nodes) +
                             " cannot integrate degree-" + std::to_string(nu_max) + " moments");
  }
  if (phase_nodes < 2 * nu_max + 2) {
    throw UnderResolvedError("phase_nodes = " + std::to_string(phase_nodes) + " below 2 nu + 2 = " +
                             std::to_string(2 * nu_max + 2));
  }
}

PlaneQuadratureSpec PlaneQuadratureSpec::for_nu(int nu_max) {
  return {2 * (std::max(nu_max, 0) + 2), 2 * std::max(nu_max, 0) + 2};
}

void PlaneQuadratureSpec::require_resolves(int nu_max, int extra_power) const {
  if (radial_nodes < 1 || 2 * radial_nodes - 1 < nu_max + extra_power) {
    throw UnderResolvedError("radial_nodes = " + std::to_string(radial_nodes) +
                             " cannot integrate t^" + std::to_string(nu_max + extra_power));
  }
  if (angular_nodes < 2 * nu_max + 2) {
    throw UnderResolvedError("angular_nodes = " + std::to_string(angular_nodes) +
                             " below 2 nu + 2 = " + std::to_string(2 * nu_max + 2));
  }
}

ShellMatrix su2_identity_matrix(int nu, const AnisotropyRatio& ratio, const S3QuadratureSpec& spec) {
  if (nu < 0) throw DomainError("shell index must be non-negative");
  spec.require_resolves(nu);
  ShellMatrix out;
  for (int n = 0; n <= nu; ++n) out.basis.push_back(ratio.map(nu, n));
  out.matrix = Eigen::MatrixXcd::Zero(nu + 1, nu + 1);
  Eigen::VectorXcd c(nu + 1);
  for_each_s3_node(spec, [&](double w, const SU2Params& params) {
    for (int n = 0; n <= nu; ++n) c(n) = su2_amplitude(params, nu, n);
    out.matrix.noalias() += w * (c * c.adjoint());
  });
  out.matrix *= (nu + 1.0) / (kPi * kPi);
  return out;
}

DiagonalSummary full_identity_diagonal(int n_max, int m_max, const AnisotropyRatio& ratio,
                                       const S3QuadratureSpec& spec) {
  if (n_max < 0 || m_max < 0) throw DomainError("cutoffs must be non-negative");
  const int nu_max = n_max + m_max;
  spec.require_resolves(nu_max);
  DiagonalSummary total;
  for (int nu = 0; nu <= nu_max; ++nu) {
    const auto shell = su2_identity_matrix(nu, ratio, spec);
    std::vector<Eigen::Index> keep;
    std::vector<ModeIndex2D> modes;
    for (std::size_t k = 0; k < shell.basis.size(); ++k) {
      if (shell.basis[k].n <= n_max && shell.basis[k].m <= m_max) {
        keep.push_back(static_cast<Eigen::Index>(k));
        modes.push_back(shell.basis[k]);
      }
    }
    if (keep.empty()) continue;
    const Eigen::MatrixXcd block = shell.matrix(keep, keep);
    merge_block(total, summarize(modes, block));
  }
  return total;
}

CoeffVector fock_reconstruction(int n, int m, const S3QuadratureSpec& spec) {
  if (n < 0 || m < 0) throw DomainError("Fock indices must be non-negative");
  const int nu = n + m;
  const auto shell = su2_identity_matrix(nu, AnisotropyRatio::isotropic(), spec);
  // Component k is (nu+1)/pi^2 int c_k conj(c_n) with c_k the shell amplitudes.
  CoeffVector out;
  for (int k = 0; k <= nu; ++k) out.set(shell.basis[static_cast<std::size_t>(k)], shell.matrix(k, n));
  return out;
}

DiagonalSummary weighted_schrodinger_identity(int n_max, int m_max, const S3QuadratureSpec& s3,
                                              const PlaneQuadratureSpec& plane, bool weighted) {
  if (n_max < 0 || m_max < 0) throw DomainError("cutoffs must be non-negative");
  const int nu_max = n_max + m_max;
  const int extra = weighted ? 1 : 0;
  s3.require_resolves(nu_max);
  plane.require_resolves(nu_max, extra);

  std::vector<ModeIndex2D> modes;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= m_max; ++m) modes.emplace_back(n, m);
  }
  const auto dim = static_cast<Eigen::Index>(modes.size());

  const Eigen::MatrixXcd r = plane_moments(nu_max, extra, plane);

  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd g(dim);
  for_each_s3_node(s3, [&](double w, const SU2Params& params) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& md = modes[static_cast<std::size_t>(i)];
      g(i) = su2_amplitude(params, md.n + md.m, md.n);
    }
    s.noalias() += w * (g * g.adjoint());
  });

  Eigen::MatrixXcd total(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      total(i, j) = r(modes[static_cast<std::size_t>(i)].energy() - 1,
                      modes[static_cast<std::size_t>(j)].energy() - 1) *
                    s(i, j) / (kPi * kPi);
    }
  }
  return summarize(modes, total);
}

DiagonalSummary coherent1d_identity(int n_max, const PlaneQuadratureSpec& plane) {
  if (n_max < 0) throw DomainError("cutoff must be non-negative");
  plane.require_resolves(n_max, 0);
  std::vector<ModeIndex2D> modes;
  for (int n = 0; n <= n_max; ++n) modes.emplace_back(n, 0);
  return summarize(modes, plane_moments(n_max, 0, plane));
}

void to_json(nlohmann::json& j, const IdentityCheck& check) {
  j = {{"name", check.name},
       {"target", check.target},
       {"max_abs_deviation", check.max_abs_deviation},
       {"tolerance", check.tolerance},
       {"passed", check.passed},
       {"spec", check.spec}};
}

IdentityCheck check_su2_identity(int nu, const AnisotropyRatio& ratio,
                                 const S3QuadratureSpec& spec, double tolerance) {
  const auto shell = su2_identity_matrix(nu, ratio, spec);
  const Eigen::MatrixXcd diff =
      shell.matrix - Eigen::MatrixXcd::Identity(shell.matrix.rows(), shell.matrix.cols());
  auto js = s3_json(spec);
  js["nu"] = nu;
  js["p"] = ratio.p();
  js["q"] = ratio.q();
  return make_check("su2-identity", "identity on the nu shell", diff.cwiseAbs().maxCoeff(),
                    tolerance, std::move(js));
}

IdentityCheck check_full_identity(int n_max, int m_max, const S3QuadratureSpec& spec,
                                  double tolerance) {
  const auto s = full_identity_diagonal(n_max, m_max, AnisotropyRatio::isotropic(), spec);
  auto js = s3_json(spec);
  js["n_max"] = n_max;
  js["m_max"] = m_max;
  return make_check("full-identity", "identity on n <= n_max, m <= m_max",
                    diagonal_deviation(s, [](ModeIndex2D) { return 1.0; }), tolerance,
                    std::move(js));
}

IdentityCheck check_fock_reconstruction(int n, int m, const S3QuadratureSpec& spec,
                                        double tolerance) {
  const auto v = fock_reconstruction(n, m, spec);
  CoeffVector unit;
  unit.set({n, m}, 1.0);
  auto js = s3_json(spec);
  js["n"] = n;
  js["m"] = m;
  return make_check("fock-reconstruction", "unit vector at (n, m)", max_abs_difference(v, unit),
                    tolerance, std::move(js));
}

IdentityCheck check_schrodinger_identity(int n_max, int m_max, const S3QuadratureSpec& s3,
                                         const PlaneQuadratureSpec& plane, bool weighted,
                                         double tolerance) {
  const auto s = weighted_schrodinger_identity(n_max, m_max, s3, plane, weighted);
  nlohmann::json js = {{"s3", s3_json(s3)}, {"plane", plane_json(plane)},
                       {"n_max", n_max},    {"m_max", m_max},
                       {"weighted", weighted}};
  const auto target = [weighted](ModeIndex2D md) {
    return weighted ? 1.0 : 1.0 / md.energy();
  };
  return make_check(weighted ? "weighted-schrodinger-identity" : "unweighted-schrodinger-measure",
                    weighted ? "identity" : "diag 1/(n+m+1)", diagonal_deviation(s, target),
                    tolerance, std::move(js));
}

IdentityCheck check_coherent1d_identity(int n_max, const PlaneQuadratureSpec& plane,
                                        double tolerance) {
  const auto s = coherent1d_identity(n_max, plane);
  auto js = plane_json(plane);
  js["n_max"] = n_max;
  return make_check("coherent1d-identity", "identity on levels 0..n_max",
                    diagonal_deviation(s, [](ModeIndex2D) { return 1.0; }), tolerance,
                    std::move(js));
}

}  // namespace cs2d::identity

#include "cs2d/oracle.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "cs2d/errors.hpp"

namespace cs2d::oracle {

namespace {

using Triplet = Eigen::Triplet<Complex>;

SparseMatrix from_triplets(const TruncatedSpace& space, const std::vector<Triplet>& t) {
  SparseMatrix m(space.dimension(), space.dimension());
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

void require_same_space(const TruncatedSpace& a, const TruncatedSpace& b) {
  if (!(a == b)) throw SpaceMismatchError("operands live on different truncated spaces");
}

void check_displacement_cutoff(const TruncatedSpace& space, Complex psi, const SU2Params& params) {
  require_finite(psi, "psi");
  const auto check = [](double lambda, int cutoff, const char* mode) {
    const double tail = poisson_tail(lambda, cutoff + 1);
    if (!(tail < 1e-8)) {
      throw CutoffTooSmallError(std::string("Poisson tail ") + std::to_string(tail) + " of the " + mode +
                                " occupation beyond level " + std::to_string(cutoff) +
                                " is not below 1e-8");
    }
  };
  check(std::norm(params.alpha() * psi), space.n_max(), "x");
  check(std::norm(params.beta() * psi), space.m_max(), "y");
}

double one_norm(const SparseMatrix& a) {
  // Max column sum; the row-major layout makes the transpose walk cheap.
  std::vector<double> col(static_cast<std::size_t>(a.cols()), 0.0);
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      col[static_cast<std::size_t>(it.col())] += std::abs(it.value());
    }
  }
  return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

double dense_one_norm(const DenseMatrix& a) {
  return a.cols() == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

TruncatedSpace::TruncatedSpace(int n_max, int m_max) : n_max_(n_max), m_max_(m_max) {
  if (n_max < 1 || m_max < 1) throw DomainError("Fock cutoffs must be positive");
}

TruncatedSpace TruncatedSpace::covering(const CoeffVector& coeffs, int margin) {
  const ModeIndex2D e = coeffs.extent();
  return {std::max(1, e.n + margin), std::max(1, e.m + margin)};
}

TruncatedOperator::TruncatedOperator(TruncatedSpace space, SparseMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dimension() || matrix_.cols() != space_.dimension()) {
    throw SpaceMismatchError("operator dimension does not match its space");
  }
}

TruncatedOperator TruncatedOperator::adjoint() const {
  return {space_, SparseMatrix(matrix_.adjoint())};
}

StateVector::StateVector(TruncatedSpace space, DenseVector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dimension()) {
    throw SpaceMismatchError("vector dimension does not match its space");
  }
}

StateVector StateVector::basis(const TruncatedSpace& space, const ModeIndex2D& idx) {
  if (!space.contains(idx)) throw CutoffTooSmallError("basis state outside truncated space");
  DenseVector v = DenseVector::Zero(space.dimension());
  v(space.index(idx)) = 1.0;
  return {space, std::move(v)};
}

StateVector StateVector::embed(const TruncatedSpace& space, const CoeffVector& coeffs) {
  DenseVector v = DenseVector::Zero(space.dimension());
  for (const auto& [idx, c] : coeffs) {
    if (!space.contains(idx)) {
      throw CutoffTooSmallError("mode (" + std::to_string(idx.n) + "," + std::to_string(idx.m) +
                                ") lies outside the truncated space");
    }
    v(space.index(idx)) = c;
  }
  return {space, std::move(v)};
}

Complex StateVector::at(const ModeIndex2D& idx) const {
  return space_.contains(idx) ? amplitudes_(space_.index(idx)) : Complex{};
}

CoeffVector StateVector::to_coeffs() const {
  CoeffVector out;
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) out.set(space_.mode(i), amplitudes_(i));
  return out;
}

TruncatedOperator build_ladder(const TruncatedSpace& space, Mode mode, Direction direction) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(space.dimension()));
  for (int n = 0; n <= space.n_max(); ++n) {
    for (int m = 0; m <= space.m_max(); ++m) {
      const int level = mode == Mode::x ? n : m;
      const int top = mode == Mode::x ? space.n_max() : space.m_max();
      const int shift = direction == Direction::raise ? 1 : -1;
      const int target = level + shift;
      if (target < 0 || target > top) continue;
      const ModeIndex2D to = mode == Mode::x ? ModeIndex2D{target, m} : ModeIndex2D{n, target};
      const double elem = std::sqrt(static_cast<double>(std::max(level, target)));
      t.emplace_back(space.index(to), space.index({n, m}), elem);
    }
  }
  return {space, from_triplets(space, t)};
}

TruncatedOperator build_generalized_ladder(const TruncatedSpace& space, const SU2Params& params,
                                           Direction direction) {
  const auto ax = build_ladder(space, Mode::x, direction).matrix();
  const auto ay = build_ladder(space, Mode::y, direction).matrix();
  const bool raise = direction == Direction::raise;
  const Complex ca = raise ? params.alpha() : std::conj(params.alpha());
  const Complex cb = raise ? params.beta() : std::conj(params.beta());
  return {space, SparseMatrix(ca * ax + cb * ay)};
}

TruncatedOperator build_quadrature(const TruncatedSpace& space, Quadrature which) {
  const Mode mode = (which == Quadrature::x || which == Quadrature::px) ? Mode::x : Mode::y;
  const auto up = build_ladder(space, mode, Direction::raise).matrix();
  const auto down = build_ladder(space, mode, Direction::lower).matrix();
  const double s = 1.0 / std::sqrt(2.0);
  if (which == Quadrature::x || which == Quadrature::y) {
    return {space, SparseMatrix(s * (up + down))};
  }
  const Complex f = Complex{0.0, -1.0} * s;  // 1/(sqrt2 i)
  return {space, SparseMatrix(f * (down - up))};
}

TruncatedOperator build_number(const TruncatedSpace& space, Mode mode) {
  std::vector<Triplet> t;
  for (Eigen::Index i = 0; i < space.dimension(); ++i) {
    const ModeIndex2D idx = space.mode(i);
    const int level = mode == Mode::x ? idx.n : idx.m;
    if (level != 0) t.emplace_back(i, i, static_cast<double>(level));
  }
  return {space, from_triplets(space, t)};
}

TruncatedOperator build_hamiltonian(const TruncatedSpace& space, const AnisotropyRatio& ratio) {
  std::vector<Triplet> t;
  for (Eigen::Index i = 0; i < space.dimension(); ++i) {
    const ModeIndex2D idx = space.mode(i);
    t.emplace_back(i, i, ratio.p() * (idx.n + 0.5) + ratio.q() * (idx.m + 0.5));
  }
  return {space, from_triplets(space, t)};
}

TruncatedOperator displacement_generator(const TruncatedSpace& space, Complex psi,
                                         const SU2Params& params) {
  const auto up = build_generalized_ladder(space, params, Direction::raise).matrix();
  const auto down = build_generalized_ladder(space, params, Direction::lower).matrix();
  return {space, SparseMatrix(psi * up - std::conj(psi) * down)};
}

DenseMatrix matrix_exponential(const DenseMatrix& a) {
  // Higham (2005) degree-13 coefficients and threshold.
  static constexpr double b[] = {64764752532480000.0,
                                 32382376266240000.0,
                                 7771770303897600.0,
                                 1187353796428800.0,
                                 129060195264000.0,
                                 10559470521600.0,
                                 670442572800.0,
                                 33522128640.0,
                                 1323241920.0,
                                 40840800.0,
                                 960960.0,
                                 16380.0,
                                 182.0,
                                 1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a.rows();
  const double norm = dense_one_norm(a);
  int squarings = 0;
  if (norm > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  const DenseMatrix x = a / std::ldexp(1.0, squarings);

  const DenseMatrix id = DenseMatrix::Identity(n, n);
  const DenseMatrix x2 = x * x;
  const DenseMatrix x4 = x2 * x2;
  const DenseMatrix x6 = x4 * x2;
  DenseMatrix inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
  DenseMatrix u = x6 * inner;
  u += b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id;
  u = x * u;
  inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
  DenseMatrix v = x6 * inner;
  v += b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  DenseMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

DenseVector exponential_action(const SparseMatrix& a, const DenseVector& v) {
  const double norm = one_norm(a);
  const int steps = std::max(1, static_cast<int>(std::ceil(norm)));
  const SparseMatrix scaled = a / static_cast<double>(steps);
  DenseVector out = v;
  for (int s = 0; s < steps; ++s) {
    DenseVector term = out;
    DenseVector acc = out;
    const double ref = std::max(out.cwiseAbs().maxCoeff(), 1e-300);
    for (int k = 1; k <= 80; ++k) {
      term = (scaled * term) / static_cast<double>(k);
      acc += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-18 * ref) break;
    }
    out = std::move(acc);
  }
  return out;
}

TruncatedOperator displacement(const TruncatedSpace& space, Complex psi, const SU2Params& params) {
  check_displacement_cutoff(space, psi, params);
  const DenseMatrix gen = displacement_generator(space, psi, params).dense();
  const DenseMatrix d = matrix_exponential(gen);
  return {space, d.sparseView(0.0, 0.0)};
}

StateVector displace(const TruncatedSpace& space, Complex psi, const SU2Params& params,
                     const StateVector& vec) {
  require_same_space(space, vec.space());
  check_displacement_cutoff(space, psi, params);
  const auto gen = displacement_generator(space, psi, params);
  return {space, exponential_action(gen.matrix(), vec.amplitudes())};
}

StateVector apply(const TruncatedOperator& op, const StateVector& vec) {
  require_same_space(op.space(), vec.space());
  return {vec.space(), op.matrix() * vec.amplitudes()};
}

Complex expectation(const TruncatedOperator& op, const StateVector& vec) {
  require_same_space(op.space(), vec.space());
  const double norm2 = vec.amplitudes().squaredNorm();
  if (norm2 == 0.0) throw DomainError("expectation in the zero vector");
  const DenseVector w = op.matrix() * vec.amplitudes();
  return vec.amplitudes().dot(w) / norm2;
}

double variance(const TruncatedOperator& op, const StateVector& vec) {
  require_same_space(op.space(), vec.space());
  const double norm2 = vec.amplitudes().squaredNorm();
  if (norm2 == 0.0) throw DomainError("variance in the zero vector");
  const DenseVector w = op.matrix() * vec.amplitudes();
  const DenseVector w2 = op.matrix() * w;
  const Complex mean = vec.amplitudes().dot(w) / norm2;
  const Complex second = vec.amplitudes().dot(w2) / norm2;
  const Complex var = second - mean * mean;
  const double scale = std::max(1.0, std::abs(second));
  if (std::abs(var.imag()) > 1e-12 * scale) {
    throw ContractError("variance has imaginary part " + std::to_string(var.imag()));
  }
  return var.real();
}

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_space(a.space(), b.space());
  return {a.space(), SparseMatrix(a.matrix() * b.matrix() - b.matrix() * a.matrix())};
}

QuadratureVariances oracle_variances(const CoeffVector& coeffs) {
  const auto space = TruncatedSpace::covering(coeffs, 2);
  const auto vec = StateVector::embed(space, coeffs);
  return {variance(build_quadrature(space, Quadrature::x), vec),
          variance(build_quadrature(space, Quadrature::px), vec),
          variance(build_quadrature(space, Quadrature::y), vec),
          variance(build_quadrature(space, Quadrature::py), vec)};
}

double oracle_number_energy(const CoeffVector& coeffs) {
  const auto space = TruncatedSpace::covering(coeffs, 1);
  const auto vec = StateVector::embed(space, coeffs);
  const auto nx = build_number(space, Mode::x);
  const auto ny = build_number(space, Mode::y);
  return expectation(nx, vec).real() + expectation(ny, vec).real() + 1.0;
}

double oracle_hamiltonian_energy(const CoeffVector& coeffs, const AnisotropyRatio& ratio) {
  const auto space = TruncatedSpace::covering(coeffs, 1);
  const auto vec = StateVector::embed(space, coeffs);
  return expectation(build_hamiltonian(space, ratio), vec).real();
}

void write_csv(std::ostream& os, const TruncatedOperator& op) {
  const DenseMatrix d = op.dense();
  os << std::setprecision(17);
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      if (c != 0) os << ',';
      os << d(r, c).real() << ',' << d(r, c).imag();
    }
    os << '\n';
  }
}

void write_csv(std::ostream& os, const StateVector& vec) {
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < vec.amplitudes().size(); ++i) {
    const ModeIndex2D idx = vec.space().mode(i);
    os << idx.n << ',' << idx.m << ',' << vec.amplitudes()(i).real() << ','
       << vec.amplitudes()(i).imag() << '\n';
  }
}

}  // namespace cs2d::oracle

#include "aqed/oracle.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <vector>

#include "aqed/errors.hpp"

namespace aqed::oracle {

namespace {

using SpMat = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

// Fock-like basis: vacuum, singles |n>, pairs |n m> (n < m), doubles |2_n>.
struct Basis {
  int n = 0;
  bool doubles = false;
  std::vector<int> pair_index;  // n * N + m -> basis index (n < m), -1 otherwise

  explicit Basis(int atoms, bool with_doubles) : n(atoms), doubles(with_doubles), pair_index(atoms * atoms, -1) {
    int next = 1 + n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pair_index[i * n + j] = next++;
  }
  int single(int i) const { return 1 + i; }
  int pair(int i, int j) const { return i < j ? pair_index[i * n + j] : pair_index[j * n + i]; }
  int first_pair() const { return 1 + n; }
  int pairs() const { return n * (n - 1) / 2; }
  int first_double() const { return 1 + n + pairs(); }
  int site_double(int i) const { return first_double() + i; }
  int size() const { return 1 + n + pairs() + (doubles ? n : 0); }
};

// Sum_n w_n b_n, with b_n the bosonic (or hard-core) annihilator of site n.
SpMat annihilator(const Basis& basis, const Eigen::VectorXcd& w) {
  std::vector<Triplet> t;
  for (int i = 0; i < basis.n; ++i) {
    t.emplace_back(0, basis.single(i), w(i));
    for (int j = 0; j < basis.n; ++j)
      if (j != i) t.emplace_back(basis.single(j), basis.pair(i, j), w(i));
    if (basis.doubles) t.emplace_back(basis.single(i), basis.site_double(i), std::sqrt(2.0) * w(i));
  }
  SpMat m(basis.size(), basis.size());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SpMat hamiltonian(const RealSpaceModel& model, const Basis& basis) {
  const Complex e1(model.omega - model.delta, -0.5 * model.gamma);
  std::vector<Triplet> t;
  for (int i = 0; i < basis.n; ++i) t.emplace_back(basis.single(i), basis.single(i), e1);
  for (int i = 0; i < basis.n; ++i)
    for (int j = i + 1; j < basis.n; ++j) {
      const double v = model.vdw(i, j);
      // An infinite shift removes the pair; pin its amplitude to zero.
      t.emplace_back(basis.pair(i, j), basis.pair(i, j), std::isinf(v) ? Complex(1.0) : 2.0 * e1 + v);
    }
  if (basis.doubles)
    for (int i = 0; i < basis.n; ++i) t.emplace_back(basis.site_double(i), basis.site_double(i), 2.0 * e1 + model.onsite_shift);

  // Drive -i Omega_n b_n^dag + h.c.
  const SpMat lower = annihilator(basis, model.drive.conjugate());
  SpMat h(basis.size(), basis.size());
  h.setFromTriplets(t.begin(), t.end());
  const SpMat raise = SpMat(lower.adjoint());
  h += Complex(0, -1) * raise + Complex(0, 1) * lower;
  return h;
}

Eigen::VectorXcd solve_block(const SpMat& block, const Eigen::VectorXcd& rhs, const char* what) {
  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(block);
  lu.factorize(block);
  if (lu.info() != Eigen::Success) throw NumericError(std::string("realspace_amplitudes: singular ") + what + " block");
  Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw NumericError(std::string("realspace_amplitudes: failed to solve ") + what + " block");
  return x;
}

Eigen::VectorXcd mode_weights(const Eigen::Matrix2Xd& positions, const Eigen::Vector2d& k) {
  const Eigen::Index n = positions.cols();
  Eigen::VectorXcd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = std::polar(1.0 / std::sqrt(double(n)), k.dot(positions.col(i)));
  return u;
}

}  // namespace

void RealSpaceModel::validate() const {
  const Eigen::Index n = drive.size();
  if (positions.cols() != n) throw DomainError("real-space model: one position per drive amplitude required");
  if (vdw.rows() != n || vdw.cols() != n) throw DomainError("real-space model: interaction matrix shape mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (vdw(i, i) != 0.0) throw DomainError("real-space model: interaction matrix must have a zero diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (vdw(i, j) != vdw(j, i)) throw DomainError("real-space model: interaction matrix must be symmetric");
      if (vdw(i, j) < 0) throw DomainError("real-space model: interaction matrix must be non-negative");
    }
  }
  if (onsite_shift < 0) throw DomainError("real-space model: on-site shift must be non-negative");
}

RealSpaceAmplitudes realspace_amplitudes(const RealSpaceModel& model) {
  model.validate();
  const int n = model.size();
  const Basis basis(n, std::isfinite(model.onsite_shift));
  SpMat h = hamiltonian(model, basis);

  const int p0 = basis.first_pair();
  const int n2 = basis.size() - p0;
  // Rows of blocked pairs carry only the unit diagonal.
  std::vector<bool> blocked(basis.size(), false);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::isinf(model.vdw(i, j))) blocked[basis.pair(i, j)] = true;

  // First order: H11 c1 = -H10.
  const SpMat h11 = h.block(1, 1, n, n);
  const Eigen::VectorXcd h10 = Eigen::VectorXcd(h.block(1, 0, n, 1));
  const Eigen::VectorXcd c1 = solve_block(h11, -h10, "single-excitation");

  // Second order: H22 c2 = -H21 c1.
  SpMat h22 = h.block(p0, p0, n2, n2);
  SpMat h21 = h.block(p0, 1, n2, n);
  h22.prune([&](Eigen::Index row, Eigen::Index col, const Complex&) { return !blocked[p0 + row] || row == col; });
  h21.prune([&](Eigen::Index row, Eigen::Index, const Complex&) { return !blocked[p0 + row]; });
  const Eigen::VectorXcd c2v = solve_block(h22, -(h21 * c1), "two-excitation");

  RealSpaceAmplitudes out;
  out.c1 = c1;
  out.c2 = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.c2(i, j) = out.c2(j, i) = c2v(basis.pair(i, j) - p0);
  out.c2_site = Eigen::VectorXcd::Zero(n);
  if (basis.doubles)
    for (int i = 0; i < n; ++i) out.c2_site(i) = c2v(basis.site_double(i) - p0);
  return out;
}

RealSpaceModel two_mode_model(const lattice::LatticeSpec& patch, const channels::DerivedChannel& ch,
                              const Eigen::Vector2d& k1, const Eigen::Vector2d& k2, Complex e_p1, Complex e_p2) {
  RealSpaceModel m;
  m.positions = patch.positions();
  const Complex omega1 = channels::effective_drive_scaled(ch, e_p1);
  const Complex omega2 = channels::effective_drive_scaled(ch, e_p2);
  // Omega_n = sum_k Omega_k e^{i k.r_n} / sqrt(N), the inverse of the mode transform.
  m.drive = omega1 * mode_weights(m.positions, k1) + omega2 * mode_weights(m.positions, k2);
  m.gamma = ch.gamma_ryd;
  m.omega = ch.omega_k;
  m.delta = ch.delta;
  m.vdw = Eigen::MatrixXd::Zero(patch.size(), patch.size());
  return m;
}

void set_uniform_interaction(RealSpaceModel& model, double v) {
  model.vdw.setConstant(v);
  model.vdw.diagonal().setZero();
  model.onsite_shift = v;
}

double realspace_field_g2(const RealSpaceModel& model, const channels::DerivedChannel& ch, const Eigen::Vector2d& k1,
                          const Eigen::Vector2d& k2, Complex e_p1, Complex e_p2, fieldobs::Port port) {
  const auto amp = realspace_amplitudes(model);
  const int n = model.size();
  const Basis basis(n, std::isfinite(model.onsite_shift));

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  psi(0) = amp.c0;
  psi.segment(1, n) = amp.c1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) psi(basis.pair(i, j)) = amp.c2(i, j);
  if (basis.doubles) psi.tail(n) = amp.c2_site;

  const Complex b = fieldobs::OutputPort::make(port, ch).b;
  // S_k = sum_n u_kn^* s_n with u_kn = e^{i k.r_n}/sqrt(N).
  const SpMat s1 = annihilator(basis, mode_weights(model.positions, k1).conjugate());
  const SpMat s2 = annihilator(basis, mode_weights(model.positions, k2).conjugate());
  auto apply_field = [&](const SpMat& s, Complex e_p, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return b * e_p * v + ch.r * (s * v);
  };

  // Vacuum projections carry the lowest non-vanishing order of every correlator.
  const Eigen::VectorXcd e1psi = apply_field(s1, e_p1, psi);
  const Eigen::VectorXcd e2psi = apply_field(s2, e_p2, psi);
  const Eigen::VectorXcd e2e1psi = apply_field(s2, e_p2, e1psi);
  const double g1a = std::norm(e1psi(0)), g1b = std::norm(e2psi(0));
  if (!(g1a > 0) || !(g1b > 0)) throw DomainError("realspace_field_g2: G1 vanishes, g2 normalization undefined");
  return std::norm(e2e1psi(0)) / (g1a * g1b);
}

Eigen::VectorXd mode_populations(const RealSpaceModel& model, const RealSpaceAmplitudes& amp,
                                 const std::vector<Eigen::Vector2d>& ks) {
  Eigen::VectorXd out(ks.size());
  for (size_t i = 0; i < ks.size(); ++i) out(i) = std::norm(mode_weights(model.positions, ks[i]).dot(amp.c1));
  return out;
}

// ---------------------------------------------------------------- dual integrator

namespace {

struct DenseModel {
  int dim;
  Eigen::MatrixXcd h;
  std::vector<double> widths;
};

DenseModel dense_model(const mastereq::BlockadedModel& model, double delta) {
  DenseModel d;
  d.dim = int(model.modes.size()) + 1;
  d.h = Eigen::MatrixXcd::Zero(d.dim, d.dim);
  d.widths.assign(d.dim, 0.0);
  for (int k = 1; k < d.dim; ++k) {
    const auto& m = model.modes[k - 1];
    d.h(k, k) = m.omega - delta - 0.5 * Complex(0, 1) * m.gamma;
    d.h(k, 0) = -Complex(0, 1) * m.drive;
    d.h(0, k) = std::conj(d.h(k, 0));
    d.widths[k] = m.gamma;
  }
  return d;
}

Eigen::MatrixXcd lindblad_rhs(const DenseModel& d, const Eigen::MatrixXcd& rho) {
  const Complex i(0, 1);
  Eigen::MatrixXcd out = -i * (d.h * rho - rho * d.h.adjoint());
  // Refill of the ground state by emission from each mode: gamma_k |0><k| rho |k><0|.
  for (int k = 1; k < d.dim; ++k) out(0, 0) += d.widths[k] * rho(k, k);
  return out;
}

double fastest_rate(const DenseModel& d) { return std::max(d.h.cwiseAbs().maxCoeff(), 1e-300); }

void rk4(const DenseModel& d, Eigen::MatrixXcd& rho, double t, long steps) {
  const double h = t / double(steps);
  for (long s = 0; s < steps; ++s) {
    const Eigen::MatrixXcd k1 = lindblad_rhs(d, rho);
    const Eigen::MatrixXcd k2 = lindblad_rhs(d, rho + 0.5 * h * k1);
    const Eigen::MatrixXcd k3 = lindblad_rhs(d, rho + 0.5 * h * k2);
    const Eigen::MatrixXcd k4 = lindblad_rhs(d, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

}  // namespace

mastereq::BlockadedState independent_integrator(const mastereq::BlockadedModel& model, double delta, double t,
                                                     const mastereq::BlockadedState& initial, long steps) {
  if (t < 0) throw DomainError("independent_integrator: t must be non-negative");
  const DenseModel d = dense_model(model, delta);
  if (initial.rho.rows() != d.dim) throw DomainError("independent_integrator: state dimension mismatch");
  if (steps <= 0) steps = std::max(1L, long(std::ceil(t * fastest_rate(d) / 4e-3)));
  Eigen::MatrixXcd rho = initial.rho;
  rk4(d, rho, t, steps);
  return {rho};
}

mastereq::BlockadedState independent_steady_state(const mastereq::BlockadedModel& model, double delta, double tol) {
  const DenseModel d = dense_model(model, delta);
  double slowest = INFINITY;
  for (int k = 1; k < d.dim; ++k) slowest = std::min(slowest, d.widths[k]);
  if (!(slowest > 0)) throw DomainError("independent_steady_state: every collective width must be positive");
  const double window = 10.0 / slowest;
  const long steps = std::max(1L, long(std::ceil(window * fastest_rate(d) / 4e-3)));
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d.dim, d.dim);
  rho(0, 0) = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::MatrixXcd prev = rho;
    rk4(d, rho, window, steps);
    if ((rho - prev).cwiseAbs().maxCoeff() < tol) return {rho};
  }
  throw NumericError("independent_steady_state: no convergence after 2000 relaxation times");
}

}  // namespace aqed::oracle

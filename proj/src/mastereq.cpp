#include "aqed/mastereq.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <set>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "aqed/errors.hpp"

namespace aqed::mastereq {

void BlockadedModel::validate() const {
  if (modes.empty()) throw DomainError("blockaded model: at least one channel required");
  std::set<std::string> seen;
  for (const auto& m : modes) {
    if (!m.label.empty() && !seen.insert(m.label).second) throw DomainError("blockaded model: duplicate channel label " + m.label);
    if (!(m.gamma >= 0)) throw DomainError("blockaded model: negative collective width");
  }
}

BlockadedModel BlockadedModel::from_channels(const std::vector<channels::DerivedChannel>& derived,
                                             const std::vector<Complex>& drives, const std::vector<std::string>& labels) {
  if (drives.size() != derived.size()) throw DomainError("blockaded model: one drive per channel required");
  if (!labels.empty() && labels.size() != derived.size()) throw DomainError("blockaded model: one label per channel required");
  BlockadedModel model;
  for (size_t i = 0; i < derived.size(); ++i) {
    const std::string label = labels.empty() ? "k" + std::to_string(i + 1) : labels[i];
    model.modes.push_back({label, derived[i].omega_k, derived[i].gamma_ryd, drives[i]});
  }
  model.validate();
  return model;
}

BlockadedState BlockadedState::ground(int dim) {
  BlockadedState s{Eigen::MatrixXcd::Zero(dim, dim)};
  s.rho(0, 0) = 1.0;
  return s;
}

void BlockadedState::check(double tol) const {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw NumericError("state: not Hermitian (deviation " + std::to_string(herm) + ")");
  const double tr = std::abs(rho.trace() - 1.0);
  if (tr > tol) throw NumericError("state: trace deviates from 1 by " + std::to_string(tr));
  const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (min_eig < -tol) throw NumericError("state: negative eigenvalue " + std::to_string(min_eig));
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd d = a - b;
  const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
  return 0.5 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum();
}

Eigen::MatrixXcd lowering(int dim, int k) {
  if (k < 1 || k >= dim) throw DomainError("lowering: channel index out of range");
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  s(0, k) = 1.0;
  return s;
}

Eigen::MatrixXcd build_effective_hamiltonian(const BlockadedModel& model, double delta) {
  const int dim = model.dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    const auto& m = model.modes[k - 1];
    h(k, k) = Complex(m.omega - delta, -0.5 * m.gamma);
    h(k, 0) = Complex(0, -1) * m.drive;
    h(0, k) = Complex(0, 1) * std::conj(m.drive);
  }
  return h;
}

Eigen::MatrixXcd liouvillian(const BlockadedModel& model, double delta) {
  model.validate();
  const int dim = model.dim();
  const Eigen::MatrixXcd h = build_effective_hamiltonian(model, delta);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  const Complex i(0, 1);
  Eigen::MatrixXcd l = -i * Eigen::kroneckerProduct(id, h).eval() + i * Eigen::kroneckerProduct(h.conjugate(), id).eval();
  for (int k = 1; k < dim; ++k) {
    const Eigen::MatrixXcd s = lowering(dim, k);
    l += model.modes[k - 1].gamma * Eigen::kroneckerProduct(s.conjugate(), s).eval();
  }
  return l;
}

BlockadedState evolve(const BlockadedState& state, const BlockadedModel& model, double delta, double t,
                      const ode::Tolerances& tol) {
  if (t < 0) throw DomainError("evolve: t must be non-negative");
  const int dim = model.dim();
  if (state.rho.rows() != dim || state.rho.cols() != dim) throw DomainError("evolve: state dimension does not match model");
  const Eigen::MatrixXcd l = liouvillian(model, delta);
  Eigen::VectorXcd y = vec(state.rho);
  ode::integrate_dopri5([&](double, const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return l * v; }, y, 0.0, t, tol);
  return {unvec(y, dim)};
}

BlockadedState steady_state(const BlockadedModel& model, double delta) {
  for (const auto& m : model.modes)
    if (!(m.gamma > 0)) throw DomainError("steady_state: every collective width must be positive");
  const int dim = model.dim();
  const Eigen::MatrixXcd l = liouvillian(model, delta);
  const Eigen::Index n = l.rows();

  Eigen::FullPivLU<Eigen::MatrixXcd> lu_l(l);
  lu_l.setThreshold(1e-12);
  if (lu_l.rank() != n - 1) {
    std::ostringstream os;
    os << "steady_state: Liouvillian null space has dimension " << n - lu_l.rank() << ", expected 1";
    throw NumericError(os.str());
  }

  // The diagonal rows of L sum to zero (trace preservation); swap one for Tr rho = 1.
  Eigen::MatrixXcd m = l;
  m.row(0).setZero();
  for (int i = 0; i < dim; ++i) m(0, i * dim + i) = 1.0;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = 1.0;
  const Eigen::VectorXcd v = Eigen::PartialPivLU<Eigen::MatrixXcd>(m).solve(rhs);

  const double residual = (l * v).norm();
  if (!(residual < 1e-10)) throw NumericError("steady_state: residual " + std::to_string(residual) + " exceeds 1e-10");
  Eigen::MatrixXcd rho = unvec(v, dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {rho};
}

Eigen::VectorXcd weak_field_amplitudes(const BlockadedModel& model, double delta) {
  Eigen::VectorXcd c(model.channels());
  for (int k = 0; k < model.channels(); ++k) {
    const auto& m = model.modes[k];
    const Complex lambda(0.5 * m.gamma, m.omega - delta);
    if (lambda == 0.0) throw DomainError("weak_field_amplitudes: singular mode");
    c(k) = -m.drive / lambda;
  }
  return c;
}

Regression::Regression(const BlockadedModel& model, double delta)
    : l_(liouvillian(model, delta)), steady_(steady_state(model, delta)), dim_(model.dim()) {}

Complex Regression::equal_time(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c) const {
  return (b * c * steady_.rho * a).trace();
}

Eigen::MatrixXcd Regression::propagate(const Eigen::MatrixXcd& x, double tau) const {
  if (tau < 0) throw DomainError("regression: tau must be non-negative");
  if (tau == 0) return x;
  const Eigen::MatrixXcd lt = l_ * tau;
  const Eigen::MatrixXcd expl = lt.exp();
  return unvec(expl * vec(x), dim_);
}

Complex Regression::at(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c, double tau) const {
  return (b * propagate(c * steady_.rho * a, tau)).trace();
}

std::vector<Complex> Regression::series(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c,
                                        const std::vector<double>& taus) const {
  std::vector<Complex> out;
  out.reserve(taus.size());
  const Eigen::MatrixXcd x0 = c * steady_.rho * a;
  for (double tau : taus) out.push_back((b * propagate(x0, tau)).trace());
  return out;
}

std::vector<Complex> two_time_correlator(const BlockadedModel& model, double delta, const Eigen::MatrixXcd& a,
                                         const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c,
                                         const std::vector<double>& taus) {
  return Regression(model, delta).series(a, b, c, taus);
}

}  // namespace aqed::mastereq

#pragma once

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "aqed/channels.hpp"
#include "aqed/ode.hpp"

namespace aqed::mastereq {

using Complex = std::complex<double>;

// One collective Rydberg mode |1>_k coupled to the shared ground state |0>.
struct ModeSpec {
  std::string label;
  double omega = 0;   // collective shift omega_k
  double gamma = 0;   // collective width gamma_k
  Complex drive{};    // Omega_k
};

// Blockaded space {|0>, |1>_1, ..., |1>_K}; index 0 is the ground state.
struct BlockadedModel {
  std::vector<ModeSpec> modes;

  int channels() const { return int(modes.size()); }
  int dim() const { return channels() + 1; }
  void validate() const;

  static BlockadedModel from_channels(const std::vector<channels::DerivedChannel>& derived,
                                      const std::vector<Complex>& drives, const std::vector<std::string>& labels = {});
};

struct BlockadedState {
  Eigen::MatrixXcd rho;

  static BlockadedState ground(int dim);
  // Throws NumericError if rho is not Hermitian, unit-trace and PSD within `tol`.
  void check(double tol = 1e-10) const;
  Complex expect(const Eigen::MatrixXcd& op) const { return (op * rho).trace(); }
};

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// sigma_k = |0><1|_k for k = 1..K.
Eigen::MatrixXcd lowering(int dim, int k);

/// H = sum_k (omega_k - delta - i gamma_k/2)|1><1|_k - (i Omega_k |1>_k<0| + h.c.).
Eigen::MatrixXcd build_effective_hamiltonian(const BlockadedModel& model, double delta);

/// Column-stacking superoperator of
/// d rho/dt = -i(H rho - rho H^dagger) + sum_k gamma_k sigma_k rho sigma_k^dagger.
Eigen::MatrixXcd liouvillian(const BlockadedModel& model, double delta);

inline Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) { return m.reshaped(); }
inline Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int dim) { return v.reshaped(dim, dim); }

BlockadedState evolve(const BlockadedState& state, const BlockadedModel& model, double delta, double t,
                      const ode::Tolerances& tol = {1e-13, 1e-11});

BlockadedState steady_state(const BlockadedModel& model, double delta);

/// Lowest-order Schroedinger amplitudes c_k = -Omega_k / (gamma_k/2 + i(omega_k - delta)).
Eigen::VectorXcd weak_field_amplitudes(const BlockadedModel& model, double delta);

/// Steady-state two-time correlators <A(t) B(t+tau) C(t)> by quantum regression.
class Regression {
 public:
  Regression(const BlockadedModel& model, double delta);

  const BlockadedState& steady() const { return steady_; }
  const Eigen::MatrixXcd& generator() const { return l_; }
  int dim() const { return dim_; }

  Complex equal_time(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c) const;
  Complex at(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c, double tau) const;
  std::vector<Complex> series(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c,
                              const std::vector<double>& taus) const;

  // e^{L tau} acting on vec(X); exposed so callers can batch several B's per tau.
  Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& x, double tau) const;

 private:
  Eigen::MatrixXcd l_;
  BlockadedState steady_;
  int dim_;
};

std::vector<Complex> two_time_correlator(const BlockadedModel& model, double delta, const Eigen::MatrixXcd& a,
                                         const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c,
                                         const std::vector<double>& taus);

}  // namespace aqed::mastereq

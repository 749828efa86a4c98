#pragma once

#include <Eigen/Core>
#include <complex>
#include <limits>

#include "aqed/channels.hpp"
#include "aqed/fieldobs.hpp"
#include "aqed/lattice.hpp"
#include "aqed/mastereq.hpp"

namespace aqed::oracle {

using Complex = std::complex<double>;

// Driven N-atom ensemble truncated at two Rydberg excitations, all atoms sharing the
// eliminated-intermediate-state width gamma and shift omega.
struct RealSpaceModel {
  Eigen::Matrix2Xd positions;
  Eigen::VectorXcd drive;  // Omega(r_n)
  double gamma = 0;
  double omega = 0;
  double delta = 0;
  Eigen::MatrixXd vdw;     // V(r_nm): symmetric, zero diagonal, non-negative
  // Energy of a doubly occupied site |2_n>. Infinite (default) is the two-level atom;
  // a finite value treats each site as a bosonic mode with that on-site interaction.
  double onsite_shift = std::numeric_limits<double>::infinity();

  int size() const { return int(drive.size()); }
  void validate() const;
};

struct RealSpaceAmplitudes {
  Complex c0{1.0, 0.0};
  Eigen::VectorXcd c1;
  Eigen::MatrixXcd c2;      // pair amplitudes c_nm (n != m), symmetric
  Eigen::VectorXcd c2_site; // doubly occupied amplitudes (zero for two-level atoms)
};

/// Lowest-order steady state from the truncated Schroedinger system, solved as a sparse
/// block-triangular linear problem built from the explicit Hamiltonian.
RealSpaceAmplitudes realspace_amplitudes(const RealSpaceModel& model);

/// Plane-wave drive Omega_n = (Omega_1 e^{i k1.r_n} + Omega_2 e^{i k2.r_n}) / sqrt(N) on a
/// lattice patch, with Omega_k = -r (gamma0/2) E_p,k for the identical channel `ch`.
RealSpaceModel two_mode_model(const lattice::LatticeSpec& patch, const channels::DerivedChannel& ch,
                              const Eigen::Vector2d& k1, const Eigen::Vector2d& k2, Complex e_p1, Complex e_p2);

/// Uniform interaction V on every pair (and on-site), the all-pairs-blockaded geometry.
void set_uniform_interaction(RealSpaceModel& model, double v);

/// g2_12(0) at `port` from the real-space amplitudes, with E_k = b E_p,k + r S_k and
/// S_k = N^{-1/2} sum_n e^{-i k.r_n} s_n. No blockade assumption.
double realspace_field_g2(const RealSpaceModel& model, const channels::DerivedChannel& ch, const Eigen::Vector2d& k1,
                          const Eigen::Vector2d& k2, Complex e_p1, Complex e_p2, fieldobs::Port port);

/// Mode populations |<S_k c1>|^2 for the given wavevectors (unitarity diagnostics).
Eigen::VectorXd mode_populations(const RealSpaceModel& model, const RealSpaceAmplitudes& amp,
                                 const std::vector<Eigen::Vector2d>& ks);

/// Fixed-step classical RK4 on the density-matrix equation, written without the
/// vectorized superoperator. `steps = 0` picks the step from the fastest rate.
mastereq::BlockadedState independent_integrator(const mastereq::BlockadedModel& model, double delta, double t,
                                                     const mastereq::BlockadedState& initial, long steps = 0);

/// Long-time limit of the integrator above: runs until successive windows agree to `tol`.
mastereq::BlockadedState independent_steady_state(const mastereq::BlockadedModel& model, double delta,
                                                  double tol = 1e-12);

}  // namespace aqed::oracle

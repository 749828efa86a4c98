#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "aqed/channels.hpp"
#include "aqed/mastereq.hpp"

namespace aqed::fieldobs {

using Complex = std::complex<double>;
using channels::DerivedChannel;

enum class Port { Transmission, Reflection };

struct OutputPort {
  Port direction = Port::Transmission;
  Complex b;  // 1 + r in transmission, r in reflection

  static OutputPort make(Port direction, const DerivedChannel& dc);
};

const char* to_string(Port port);
Port parse_port(const std::string& text);

// Drive normalization. Fields are measured in units of E_c^* with E_c = hbar Omega_c/(sqrt(N) d);
// e0_ratio = |E_p,1/E_0|^2 enters only the entanglement witnesses. E_p,2 = e^{-i phi} E_p,1.
struct FieldScale {
  Complex e_c{1.0, 0.0};
  double e0_ratio = 0;
  double phase_phi = 0;

  void validate() const;
};

enum class Provenance { Analytic, Numeric };
const char* to_string(Provenance p);

struct CorrelationSet {
  std::array<double, 2> g1{};  // G1_k / |E_p,k|^2
  std::vector<double> tau;
  std::vector<double> g2_tau;  // normalized g2_12(tau)
  double g2_zero = 0;
  double duan_d = 1;
  double squeezing_v = 1;
  double k_param = 0;
  double k_sq = 0;
  Provenance provenance = Provenance::Analytic;
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------- input-output map

// Atomic inputs for the output map. Single-time moments are per channel; the
// two-time terms are <A(t) B(t+tau) C(t)> with A in {1, s1^dag}, B in {1, s2, s2^dag,
// s2^dag s2}, C in {1, s1}, where s_k is the Rydberg-mode lowering operator.
struct AtomicBundle {
  enum A { A_One, A_SigmaDag };
  enum B { B_One, B_Sigma, B_SigmaDag, B_Number };
  enum C { C_One, C_Sigma };
  static constexpr int index(int a, int b, int c) { return a * 8 + b * 2 + c; }
  static std::string term_name(int a, int b, int c);

  std::array<std::optional<Complex>, 2> sigma;       // <s_k>
  std::array<std::optional<double>, 2> population;   // <s_k^dag s_k>
  std::array<std::optional<Complex>, 2> sigma_sq;    // <s_k s_k>
  std::optional<Complex> sigma_pair;                 // <s_1 s_2>
  std::optional<Complex> coherence;                  // <s_1^dag s_2>
  std::array<std::optional<Complex>, 16> two_time;
};

// E_k = e^{i phase}(alpha + beta s_k): alpha = b E_p, beta = r E_c^*.
struct FieldAmplitudes {
  Complex alpha;
  Complex beta;
  double phase = 0;  // +-k_z z, cancels in every returned quantity
};

FieldAmplitudes field_amplitudes(const OutputPort& port, const DerivedChannel& dc, Complex e_p,
                                 Complex e_c = 1.0, double kz_z = 0.0);

struct FieldCorrelators {
  std::array<double, 2> g1{};                // <E_k^dag E_k>
  std::optional<double> g2;                  // <E_1^dag(t) E_2^dag(t+tau) E_2(t+tau) E_1(t)>
  // Equal-time fluctuation moments, dE = E - <E>.
  std::array<double, 2> fluctuation{};       // <dE_k^dag dE_k>
  Complex cross_fluctuation{};               // <dE_1^dag dE_2>
  std::array<Complex, 2> self_squeeze{};     // <dE_k dE_k>
  Complex pair_moment{};                     // <dE_1 dE_2>
};

/// Maps atomic correlators onto normal-ordered output-field correlators. Vacuum input
/// noise drops out of every normal-ordered moment. Throws ContractError naming the
/// first missing atomic term.
FieldCorrelators output_field_map(const std::array<FieldAmplitudes, 2>& fields, const AtomicBundle& atomic);

// ---------------------------------------------------------------- closed forms

/// G1_s / |E_p|^2 = |b|^2 + (|x|^2 - [b^* x + c.c.]) / (1 + S_other), x = r - r_tilde.
double analytic_g1(const DerivedChannel& ch, const OutputPort& port, double s_other = 0.0);

/// Identical channels: G2_12,s(0) / |E_p|^4 = |b|^4 - 2/(1+S')[(|b|^2 b^* x + c.c.) - 2|b|^2|x|^2].
double analytic_G2_zero(const DerivedChannel& ch, const OutputPort& port, double s_other = 0.0);

/// Weak-field G2 / (G1 G1); equals |b|^2|b - 2x|^2/|b - x|^4 at S' = 0.
double analytic_g2_zero(const DerivedChannel& ch, const OutputPort& port, double s_other = 0.0);

/// Two-time cross correlation for two channels with independent parameters, normalized
/// by |E_p,1|^2|E_p,2|^2. The tau-dependence runs with the second (later detected) channel's pole.
double analytic_G2_tau(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port, double tau);

/// Normalized series G2(tau) / (G1_1 G1_2) with weak-field G1. Refuses above S = 1.
std::vector<double> analytic_g2_tau(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port,
                                    const std::vector<double>& taus, double s1 = 0.0, double s2 = 0.0,
                                    std::vector<std::string>* warnings = nullptr);

struct Entanglement {
  double duan_d = 1;
  double squeezing_v = 1;
  double k_param = 0;  // |x1 x2|
  double k_sq = 0;     // |x1^2 e^{2i phi} + x2^2 + 2 x1 x2 e^{i phi}|
};

/// D = 1 - 2 e0 K and V = 1 - e0 K_sq. Refuses when 2 e0 K >= 1.
Entanglement entanglement_measures(const DerivedChannel& ch1, const DerivedChannel& ch2, const FieldScale& scale);

/// Identical-channel Lorentzian K = r_res^2 / (1 + 4(delta - omega)^2/gamma^2).
double lorentzian_k(const DerivedChannel& ch);

/// (1 - 2 r_res)^2 / (1 - r_res)^4; +infinity at r_res = 1.
double saturated_limit_g2(double r_res);
inline double saturated_limit_g2(const DerivedChannel& ch) { return saturated_limit_g2(ch.r_res); }

/// Appends a warning in the marginal regime and throws DomainError in the strong regime
/// when `refuse_strong` is set.
void check_weak_field(double s, const std::string& what, std::vector<std::string>* warnings, bool refuse_strong);

CorrelationSet analytic_correlations(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port,
                                     const std::vector<double>& taus, const FieldScale& scale, double s1 = 0.0,
                                     double s2 = 0.0);

// ---------------------------------------------------------------- numeric route

// Blockaded two-channel master equation driven by E_p,k, read out through the output map.
class NumericRoute {
 public:
  /// eps_k = E_p,k / E_c^*.
  NumericRoute(const DerivedChannel& ch1, const DerivedChannel& ch2, Complex eps1, Complex eps2, Port port,
               double kz_z = 0.0);

  AtomicBundle bundle(double tau) const;
  FieldCorrelators fields(double tau) const;

  double g1(int k) const;            // G1_k / |E_p,k|^2
  double G2(double tau) const;       // G2 / (|E_p,1|^2 |E_p,2|^2)
  double g2(double tau) const;       // G2 / (G1_1 G1_2), both numeric
  double saturation(int k) const;
  const mastereq::Regression& regression() const { return regression_; }

  /// Witnesses from the numeric field moments with a = E/E_0.
  Entanglement entanglement(double e0_ratio) const;
  /// Same, minimizing the quadrature expressions on a theta grid instead of in closed form.
  Entanglement entanglement_theta_grid(double e0_ratio, int points = 3600) const;

 private:
  std::array<DerivedChannel, 2> ch_;
  std::array<Complex, 2> eps_;
  std::array<FieldAmplitudes, 2> amp_;
  mastereq::Regression regression_;
};

CorrelationSet numeric_correlations(const DerivedChannel& ch1, const DerivedChannel& ch2, Port port,
                                    const std::vector<double>& taus, const FieldScale& scale, double s1);

}  // namespace aqed::fieldobs

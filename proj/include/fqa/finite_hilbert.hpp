// States and operators of a d-dimensional quantum system with position and
// momentum in Z_d: Fourier matrix, position/momentum bases, displacement
// operators D(alpha, beta) and the Weyl-function expansion.
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fqa {

using cx = std::complex<double>;

inline constexpr double kNormTol = 1e-12;

/// Reduce an integer label into [0, d).
constexpr long mod_d(long k, long d) {
  const long r = k % d;
  return r < 0 ? r + d : r;
}

/// omega(k) = exp(2 pi i k / d), with k reduced exactly in integers first.
cx omega(long k, int d);

/// Half-angle phase exp(i pi k / d). Stands in for omega(2^{-1} k), which has
/// no meaning for even d. k is reduced modulo 2d before exponentiation.
cx omega_half(long k, int d);

/// Amplitudes over the position basis |X;m>>, m = 0..d-1. Index access is
/// periodic modulo d.
class FiniteState {
 public:
  /// Rescales to unit norm; throws std::invalid_argument for an empty or zero vector.
  static FiniteState normalized(std::vector<cx> amplitudes);
  /// Keeps the amplitudes as given (partial sums, unnormalized images).
  static FiniteState raw(std::vector<cx> amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const std::vector<cx>& amplitudes() const { return amps_; }
  cx operator[](long m) const { return amps_[static_cast<std::size_t>(mod_d(m, dim()))]; }

  double norm() const;
  bool is_normalized(double tol = kNormTol) const;

  /// <<this|other>>, antilinear in this.
  cx inner(const FiniteState& other) const;
  /// sum_m this_m other_m, the bilinear pairing <<this*|other>>.
  cx bilinear(const FiniteState& other) const;

  Eigen::VectorXcd vector() const;
  static FiniteState from_vector(const Eigen::VectorXcd& v, bool normalize = true);

 private:
  explicit FiniteState(std::vector<cx> a) : amps_(std::move(a)) {}
  std::vector<cx> amps_;
};

/// |<<a|b>>| for two states of equal dimension.
double fidelity(const FiniteState& a, const FiniteState& b);

/// Dense d x d matrix over the position basis.
class FiniteOperator {
 public:
  explicit FiniteOperator(Eigen::MatrixXcd m);
  static FiniteOperator identity(int d);
  static FiniteOperator zero(int d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  cx operator()(int row, int col) const { return m_(row, col); }

  FiniteOperator adjoint() const { return FiniteOperator(m_.adjoint()); }
  FiniteState apply(const FiniteState& s) const;
  cx trace() const { return m_.trace(); }

  /// max |entry| of this - other.
  double max_abs_diff(const FiniteOperator& other) const;
  bool is_unitary(double tol = 1e-10) const;

  friend FiniteOperator operator*(const FiniteOperator& a, const FiniteOperator& b);
  friend FiniteOperator operator+(const FiniteOperator& a, const FiniteOperator& b);

 private:
  Eigen::MatrixXcd m_;
};

/// Phase-space label (alpha, beta) in Z_d x Z_d.
struct PhasePoint {
  long alpha = 0;
  long beta = 0;

  /// Labels reduced into [0, d).
  static PhasePoint canonical(long alpha, long beta, int d) {
    return PhasePoint{mod_d(alpha, d), mod_d(beta, d)};
  }
};

FiniteOperator fourier_matrix(int d);
FiniteState position_state(long m, int d);
FiniteState momentum_state(long m, int d);

/// x = sum n |X;n>><<X;n| and p = F x F^dagger.
FiniteOperator position_operator(int d);
FiniteOperator momentum_operator(int d);

/// D(alpha,beta)|X;m>> = omega_half(alpha beta + 2 alpha m) |X;m+beta>>, with
/// labels canonicalized to [0, d) first.
FiniteOperator displacement(PhasePoint p, int d);

/// Sign s with D(alpha, beta) = s * D(canonical(alpha, beta)) when the
/// half-angle formula is evaluated at the raw integer labels.
int displacement_label_sign(long alpha, long beta, int d);

FiniteState displaced_state(const FiniteState& s, PhasePoint p);

/// W(alpha, beta) = Tr[Omega D(alpha, beta)], rows indexed by alpha.
using WeylTable = Eigen::MatrixXcd;

WeylTable weyl_function(const FiniteOperator& op);

/// Omega = d^{-1} sum W(-alpha,-beta) D(alpha,beta). The entry W(-alpha,-beta)
/// is read from the canonical table and corrected by displacement_label_sign,
/// so D(-alpha,-beta) = D(alpha,beta)^dagger holds for both parities of d.
FiniteOperator operator_from_weyl(const WeylTable& table, int d);

/// Weyl coefficient for raw (possibly negative) labels.
cx weyl_entry(const WeylTable& table, long alpha, long beta);

/// Normalized state with i.i.d. complex Gaussian amplitudes.
FiniteState random_state(int d, std::mt19937_64& rng);

}  // namespace fqa

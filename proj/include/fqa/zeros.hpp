// Zeros of the analytic representation inside the fundamental cell.
//
// Every state has exactly d zeros per cell (with multiplicity), and their sum
// lies on the lattice
//   sum z_i = (pi/2)^{1/2} d^{3/2} (lambda + i/lambda) + (2 pi d)^{1/2} (M lambda + i N / lambda).
// Conversely any d points obeying that constraint are the zeros of a unique
// state (up to a constant), which reconstruct_from_zeros builds.
#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqa/analytic.hpp"
#include "fqa/finite_hilbert.hpp"
#include "fqa/params.hpp"

namespace fqa {

class ZeroFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when zeros violate the sum constraint: no state has them as zeros.
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis-aligned rectangle [lo.re, hi.re] x [lo.im, hi.im].
struct Rect {
  cx lo;
  cx hi;

  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  double diameter() const { return std::abs(hi - lo); }
  bool contains(cx z, double slack = 0.0) const {
    return z.real() >= lo.real() - slack && z.real() <= hi.real() + slack && z.imag() >= lo.imag() - slack &&
           z.imag() <= hi.imag() + slack;
  }
};

struct Zero {
  cx position;
  int multiplicity = 1;
};

struct SumResidual {
  double residual = 0.0;
  long m = 0;
  long n = 0;
};

struct ZeroSet {
  std::vector<Zero> zeros;
  SystemParams params;
  long m = 0;
  long n = 0;
  double residual = 0.0;

  int total_multiplicity() const;
};

/// The fundamental cell of params as a rectangle.
Rect fundamental_cell(const SystemParams& params);

/// Lattice translate of z into the half-open cell.
cx reduce_into_cell(cx z, const SystemParams& params);

/// (pi/2)^{1/2} d^{3/2} (lambda + i/lambda), the lattice-free part of the zero sum.
cx zero_sum_offset(const SystemParams& params);

/// Winding number of f around the region by phase tracking. If f is too
/// small on the boundary the region is jittered by up to 1e-3 of its size.
int count_zeros(const AnalyticState& s, Rect region);

ZeroSet find_zeros(const AnalyticState& s);

/// Integers (M, N) minimizing |sum z - offset - (2 pi d)^{1/2}(M lambda + i N/lambda)|
/// and the minimized residual.
SumResidual zero_sum_residual(std::span<const Zero> zeros, const SystemParams& params);
SumResidual zero_sum_residual(const ZeroSet& zs);

inline constexpr double kSumConstraintTol = 1e-6;

enum class Completeness { undercomplete, complete, overcomplete_at_least_complete };

const char* to_string(Completeness c);

struct CompletenessResult {
  Completeness kind;
  /// Points merged within 1e-10 and reduced into the cell.
  std::vector<Zero> points;
  /// Set when some input lay outside the cell and was translated in.
  bool reduced_into_cell = false;
  /// Present when the count equals d.
  std::optional<SumResidual> sum;
};

CompletenessResult classify_completeness(std::span<const cx> points, const SystemParams& params);

struct ReconstructionInput {
  std::vector<Zero> zeros;
  SystemParams params;
  std::optional<long> m;
  std::optional<long> n;
};

/// Q(z) = prod_j Theta3[(z - z_j + w)(pi/2d)^{1/2}/lambda; i/lambda^2]^{mult_j},
/// w = (pi d/2)^{1/2} (lambda + i/lambda).
cx zero_product(std::span<const Zero> zeros, const SystemParams& params, cx z);

/// exp[-(2 pi/d)^{1/2} N z i / lambda] Q(z): the analytic function with the
/// given zeros, up to the constant fixed by normalization.
cx reconstructed_f_unnormalized(std::span<const Zero> zeros, const SystemParams& params, long n, cx z);

/// Amplitudes from d collocation values against the position-state theta
/// basis. The result is normalized with its largest amplitude real positive.
FiniteState reconstruct_from_zeros(const ReconstructionInput& in);

}  // namespace fqa

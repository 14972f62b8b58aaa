#include "fqa/quadrature.hpp"

#include <algorithm>

#include <boost/math/special_functions/legendre.hpp>

namespace fqa::quadrature {

Rule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  // Boost returns the non-negative zeros in increasing order.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  Rule r;
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime<double>(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it == 0.0) continue;
    r.nodes.push_back(-*it);
    r.weights.push_back(weight(*it));
  }
  for (double x : half) {
    r.nodes.push_back(x);
    r.weights.push_back(weight(x));
  }
  return r;
}

}  // namespace fqa::quadrature

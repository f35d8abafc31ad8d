#include "laxlab/schemes.hpp"

#include <unsupported/Eigen/FFT>

namespace laxlab {

StencilSchemed backward_euler_heat(double dt, double dx, Index grid_n) {
  if (!(dt > 0.0) || !(dx > 0.0)) throw DomainError("backward_euler_heat: dt and dx must be positive");
  if (grid_n < 3) throw InvalidGridError("backward_euler_heat: grid needs N >= 3");
  const double r = dt / (dx * dx);

  // Eigenvalues of I - dt D2 on mode k are 1 + 4 r sin^2(pi k / N) >= 1; the
  // inverse stencil is the inverse DFT of their reciprocals.
  Eigen::VectorXcd inv_symbol(grid_n);
  for (Index k = 0; k < grid_n; ++k) {
    const double s = std::sin(kTwoPi<double> * double(k) / double(2 * grid_n));
    inv_symbol[k] = 1.0 / (1.0 + 4.0 * r * s * s);
  }
  Eigen::VectorXcd kernel(grid_n);
  Eigen::FFT<double> fft;
  fft.inv(kernel, inv_symbol);

  std::vector<int> offsets(static_cast<std::size_t>(grid_n));
  Eigen::VectorXd coefficients(grid_n);
  for (Index m = 0; m < grid_n; ++m) {
    offsets[std::size_t(m)] = int(m);
    coefficients[m] = kernel[m].real();
  }
  StencilSchemed inverse(std::move(offsets), std::move(coefficients), dt, dx, "backward_euler", grid_n);

  Eigen::VectorXd forward_c(3);
  forward_c << -r, 1.0 + 2.0 * r, -r;
  const StencilSchemed forward({-1, 0, 1}, forward_c, dt, dx, "implicit_operator", grid_n);
  const StencilSchemed product = compose(forward, inverse);
  double residual = 0.0;
  for (Index m = 0; m < product.size(); ++m) {
    const double target = product.offsets()[std::size_t(m)] == 0 ? 1.0 : 0.0;
    residual = std::max(residual, std::abs(product.coefficients()[m] - target));
  }
  if (residual > 1e-10)
    throw InternalError("backward_euler_heat: circulant inverse residual " + std::to_string(residual));
  return inverse;
}

}  // namespace laxlab

#include "zkrdtm/stencil.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace zkrdtm {

namespace {

void check_orders(int d, int p) {
  if (d < 1 || d > 3) throw std::invalid_argument("stencil: unsupported derivative order " + std::to_string(d));
  if (p < 2 || p > 8 || p % 2 != 0) {
    throw std::invalid_argument("stencil: unsupported accuracy order " + std::to_string(p));
  }
}

}  // namespace

int stencil_radius(int derivative_order, int accuracy_order) {
  check_orders(derivative_order, accuracy_order);
  return (derivative_order - 1) / 2 + accuracy_order / 2;
}

std::vector<Rational> stencil_coefficients(int derivative_order, int accuracy_order) {
  const int r = stencil_radius(derivative_order, accuracy_order);
  const int size = 2 * r + 1;

  // Augmented Vandermonde system: row m holds j^m for j = −r..r.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(size),
                                       std::vector<Rational>(static_cast<std::size_t>(size + 1)));
  Rational factorial(1);
  for (int i = 2; i <= derivative_order; ++i) factorial *= Rational(i);
  for (int m = 0; m < size; ++m) {
    for (int j = -r; j <= r; ++j) a[m][static_cast<std::size_t>(j + r)] = pow(Rational(j), static_cast<unsigned>(m));
    a[m][static_cast<std::size_t>(size)] = m == derivative_order ? factorial : Rational(0);
  }

  // Gauss-Jordan elimination in exact arithmetic.
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    while (pivot < size && a[pivot][col].is_zero()) ++pivot;
    if (pivot == size) throw std::logic_error("stencil: singular moment system");
    std::swap(a[col], a[pivot]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (int row = 0; row < size; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational f = a[row][col];
      for (int c = col; c <= size; ++c) a[row][c] -= f * a[col][c];
    }
  }

  std::vector<Rational> w;
  w.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) w.push_back(a[i][static_cast<std::size_t>(size)]);
  return w;
}

}  // namespace zkrdtm

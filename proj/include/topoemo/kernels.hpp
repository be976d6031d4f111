#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace topoemo {

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

// Dense-layer kernels. `serial` is the plain reference; `parallel` splits
// rows across OpenMP threads and vectorizes the inner loops. Each output
// element is produced by exactly one thread in a fixed order, so parallel
// results do not depend on the thread count.
namespace kernels {

/// Y = X * W^T + b, with X: batch x in, W: out x in, Y: batch x out.
void dense_forward_serial(const Matrix& x, const Matrix& w, std::span<const double> b, Matrix& y);
void dense_forward(const Matrix& x, const Matrix& w, std::span<const double> b, Matrix& y);

/// dW = dY^T * X and db = column sums of dY.
void dense_grad_params_serial(const Matrix& dy, const Matrix& x, Matrix& dw, std::span<double> db);
void dense_grad_params(const Matrix& dy, const Matrix& x, Matrix& dw, std::span<double> db);

/// dX = dY * W.
void dense_grad_input_serial(const Matrix& dy, const Matrix& w, Matrix& dx);
void dense_grad_input(const Matrix& dy, const Matrix& w, Matrix& dx);

}  // namespace kernels
}  // namespace topoemo

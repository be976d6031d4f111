#include "topoemo/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace topoemo::kernels {
namespace {

void check_forward(const Matrix& x, const Matrix& w, std::span<const double> b) {
  if (x.cols != w.cols || b.size() != w.rows) throw std::invalid_argument("dense_forward: shape mismatch");
}

}  // namespace

void dense_forward_serial(const Matrix& x, const Matrix& w, std::span<const double> b, Matrix& y) {
  check_forward(x, w, b);
  y = Matrix(x.rows, w.rows);
  for (std::size_t n = 0; n < x.rows; ++n)
    for (std::size_t o = 0; o < w.rows; ++o) {
      double acc = b[o];
      for (std::size_t i = 0; i < x.cols; ++i) acc += x(n, i) * w(o, i);
      y(n, o) = acc;
    }
}

void dense_forward(const Matrix& x, const Matrix& w, std::span<const double> b, Matrix& y) {
  check_forward(x, w, b);
  y = Matrix(x.rows, w.rows);
  const std::size_t in = x.cols, out = w.rows;
  const long total = static_cast<long>(x.rows * out);
#pragma omp parallel for schedule(static) if (total > 4096)
  for (long k = 0; k < total; ++k) {
    const std::size_t n = static_cast<std::size_t>(k) / out, o = static_cast<std::size_t>(k) % out;
    const double* xr = x.data.data() + n * in;
    const double* wr = w.data.data() + o * in;
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (std::size_t i = 0; i < in; ++i) acc += xr[i] * wr[i];
    y.data[static_cast<std::size_t>(k)] = acc + b[o];
  }
}

void dense_grad_params_serial(const Matrix& dy, const Matrix& x, Matrix& dw, std::span<double> db) {
  if (dy.rows != x.rows || db.size() != dy.cols) throw std::invalid_argument("dense_grad_params: shape mismatch");
  dw = Matrix(dy.cols, x.cols);
  std::fill(db.begin(), db.end(), 0.0);
  for (std::size_t o = 0; o < dy.cols; ++o)
    for (std::size_t n = 0; n < dy.rows; ++n) {
      db[o] += dy(n, o);
      for (std::size_t i = 0; i < x.cols; ++i) dw(o, i) += dy(n, o) * x(n, i);
    }
}

void dense_grad_params(const Matrix& dy, const Matrix& x, Matrix& dw, std::span<double> db) {
  if (dy.rows != x.rows || db.size() != dy.cols) throw std::invalid_argument("dense_grad_params: shape mismatch");
  dw = Matrix(dy.cols, x.cols);
  const std::size_t in = x.cols, batch = dy.rows, out = dy.cols;
#pragma omp parallel for schedule(static) if (out * in > 4096)
  for (long lo = 0; lo < static_cast<long>(out); ++lo) {
    const auto o = static_cast<std::size_t>(lo);
    double* dwr = dw.data.data() + o * in;
    double bias = 0.0;
    for (std::size_t n = 0; n < batch; ++n) {
      const double g = dy.data[n * out + o];
      bias += g;
      if (g == 0.0) continue;
      const double* xr = x.data.data() + n * in;
#pragma omp simd
      for (std::size_t i = 0; i < in; ++i) dwr[i] += g * xr[i];
    }
    db[o] = bias;
  }
}

void dense_grad_input_serial(const Matrix& dy, const Matrix& w, Matrix& dx) {
  if (dy.cols != w.rows) throw std::invalid_argument("dense_grad_input: shape mismatch");
  dx = Matrix(dy.rows, w.cols);
  for (std::size_t n = 0; n < dy.rows; ++n)
    for (std::size_t i = 0; i < w.cols; ++i) {
      double acc = 0.0;
      for (std::size_t o = 0; o < w.rows; ++o) acc += dy(n, o) * w(o, i);
      dx(n, i) = acc;
    }
}

void dense_grad_input(const Matrix& dy, const Matrix& w, Matrix& dx) {
  if (dy.cols != w.rows) throw std::invalid_argument("dense_grad_input: shape mismatch");
  dx = Matrix(dy.rows, w.cols);
  const std::size_t in = w.cols, out = w.rows, batch = dy.rows;
#pragma omp parallel for schedule(static) if (batch * out * in > 4096)
  for (long ln = 0; ln < static_cast<long>(batch); ++ln) {
    const auto n = static_cast<std::size_t>(ln);
    double* dxr = dx.data.data() + n * in;
    for (std::size_t o = 0; o < out; ++o) {
      const double g = dy.data[n * out + o];
      if (g == 0.0) continue;
      const double* wr = w.data.data() + o * in;
#pragma omp simd
      for (std::size_t i = 0; i < in; ++i) dxr[i] += g * wr[i];
    }
  }
}

}  // namespace topoemo::kernels

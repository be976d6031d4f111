#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "topoemo/kernels.hpp"

using namespace topoemo;
using namespace topoemo::kernels;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(r, c);
  for (double& v : m.data) v = n(rng);
  return m;
}

void check_close(const Matrix& a, const Matrix& b) {
  REQUIRE(a.rows == b.rows);
  REQUIRE(a.cols == b.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) CHECK(a.data[i] == doctest::Approx(b.data[i]).epsilon(1e-12));
}

}  // namespace

TEST_CASE("dense forward against a hand product") {
  Matrix x(2, 3);
  x.data = {1, 2, 3, 4, 5, 6};
  Matrix w(2, 3);
  w.data = {1, 0, -1, 0.5, 0.5, 0.5};
  const std::vector<double> b{10, -1};
  Matrix y;
  dense_forward(x, w, b, y);
  CHECK(y.data == std::vector<double>{8, 2, 8, 6.5});
  dense_forward_serial(x, w, b, y);
  CHECK(y.data == std::vector<double>{8, 2, 8, 6.5});
}

TEST_CASE("gradient kernels against hand products") {
  Matrix dy(2, 2);
  dy.data = {1, 2, 3, 4};
  Matrix x(2, 3);
  x.data = {1, 0, 2, 0, 1, 1};
  Matrix dw;
  std::vector<double> db(2);
  dense_grad_params(dy, x, dw, db);
  CHECK(dw.data == std::vector<double>{1, 3, 5, 2, 4, 8});
  CHECK(db == std::vector<double>{4, 6});

  Matrix w(2, 3);
  w.data = {1, 2, 3, 4, 5, 6};
  Matrix dx;
  dense_grad_input(dy, w, dx);
  CHECK(dx.data == std::vector<double>{9, 12, 15, 19, 26, 33});
}

TEST_CASE("parallel kernels agree with the serial reference") {
  std::mt19937_64 rng(9);
  const std::size_t shapes[][3] = {{1, 9, 512}, {32, 9, 512}, {32, 512, 128}, {7, 128, 64}, {400, 64, 7}, {3, 1, 1}};
  for (const auto& s : shapes) {
    const auto x = random_matrix(rng, s[0], s[1]);
    const auto w = random_matrix(rng, s[2], s[1]);
    const auto bias = random_matrix(rng, 1, s[2]).data;
    Matrix y1, y2;
    dense_forward_serial(x, w, bias, y1);
    dense_forward(x, w, bias, y2);
    check_close(y1, y2);

    const auto dy = random_matrix(rng, s[0], s[2]);
    Matrix dw1, dw2;
    std::vector<double> db1(s[2]), db2(s[2]);
    dense_grad_params_serial(dy, x, dw1, db1);
    dense_grad_params(dy, x, dw2, db2);
    check_close(dw1, dw2);
    for (std::size_t i = 0; i < db1.size(); ++i) CHECK(db1[i] == doctest::Approx(db2[i]).epsilon(1e-12));

    Matrix dx1, dx2;
    dense_grad_input_serial(dy, w, dx1);
    dense_grad_input(dy, w, dx2);
    check_close(dx1, dx2);
  }
}

TEST_CASE("parallel results do not depend on the thread count") {
  std::mt19937_64 rng(10);
  const auto x = random_matrix(rng, 64, 512);
  const auto w = random_matrix(rng, 128, 512);
  const auto dy = random_matrix(rng, 64, 128);
  const std::vector<double> b(128, 0.25);
  const int saved = omp_get_max_threads();
  Matrix y1, y4, dw1, dw4, dx1, dx4;
  std::vector<double> db1(128), db4(128);
  omp_set_num_threads(1);
  dense_forward(x, w, b, y1);
  dense_grad_params(dy, x, dw1, db1);
  dense_grad_input(dy, w, dx1);
  omp_set_num_threads(4);
  dense_forward(x, w, b, y4);
  dense_grad_params(dy, x, dw4, db4);
  dense_grad_input(dy, w, dx4);
  omp_set_num_threads(saved);
  CHECK(y1 == y4);
  CHECK(dw1 == dw4);
  CHECK(db1 == db4);
  CHECK(dx1 == dx4);
}

TEST_CASE("shape mismatches are rejected") {
  Matrix x(2, 3), w(4, 2), y, dw, dx;
  std::vector<double> b(4), db(3);
  CHECK_THROWS_AS(dense_forward(x, w, b, y), std::invalid_argument);
  CHECK_THROWS_AS(dense_forward_serial(x, w, b, y), std::invalid_argument);
  CHECK_THROWS_AS(dense_grad_params(Matrix(3, 4), x, dw, db), std::invalid_argument);
  CHECK_THROWS_AS(dense_grad_input(Matrix(2, 3), w, dx), std::invalid_argument);
}

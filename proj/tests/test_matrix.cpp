#include <random>
#include <set>
#include <sstream>

#include "dipsim/matrix.hpp"
#include "doctest.h"

using dipsim::Matrix;

namespace {

// Triple loop written independently of the library kernel.
Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      std::int64_t sum = 0;
      for (int k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      c.set(i, j, sum);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("matmul_reference on the 3x3 worked example") {
  const Matrix x{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const Matrix w{{1, 4, 7}, {2, 5, 8}, {3, 6, 9}};
  // Hand-computed: w is x transposed, so c[i][j] = <x_i, x_j>.
  const Matrix expected{{14, 32, 50}, {32, 77, 122}, {50, 122, 194}};
  CHECK(dipsim::matmul_reference(x, w) == expected);
  CHECK(naive_product(x, w) == expected);
}

TEST_CASE("matmul_reference identity and zero cases") {
  const Matrix x = dipsim::random_matrix(3, 3, 8, 11);
  CHECK(dipsim::matmul_reference(x, Matrix::identity(3)) == x);

  const Matrix zeros(4, 4);
  const Matrix w = dipsim::random_matrix(4, 4, 8, 12);
  CHECK(dipsim::matmul_reference(zeros, w) == Matrix(4, 4));
}

TEST_CASE("matmul_reference rejects mismatched shapes") {
  CHECK_THROWS_AS(dipsim::matmul_reference(Matrix(2, 3), Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("matmul_reference is associative and matches the naive oracle") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = seed % 2 ? 3 : 4;
    const Matrix a = dipsim::random_matrix(n, n, 8, seed);
    const Matrix b = dipsim::random_matrix(n, n, 8, seed + 100);
    const Matrix c = dipsim::random_matrix(n, n, 8, seed + 200);
    CHECK(dipsim::matmul_reference(dipsim::matmul_reference(a, b), c) ==
          dipsim::matmul_reference(a, dipsim::matmul_reference(b, c)));
    CHECK(dipsim::matmul_reference(a, b) == naive_product(a, b));
  }
}

TEST_CASE("parallel reference kernel agrees with the serial one") {
  const Matrix a = dipsim::random_matrix(37, 64, 8, 5);
  const Matrix b = dipsim::random_matrix(64, 29, 8, 6);
  CHECK(dipsim::matmul_reference_parallel(a, b) == dipsim::matmul_reference(a, b));
}

TEST_CASE("random_matrix is deterministic, seed-sensitive and in range") {
  CHECK(dipsim::random_matrix(2, 2, 8, 42) == dipsim::random_matrix(2, 2, 8, 42));
  CHECK_FALSE(dipsim::random_matrix(8, 8, 8, 42) == dipsim::random_matrix(8, 8, 8, 43));

  const Matrix m = dipsim::random_matrix(64, 64, 8, 9);
  std::set<std::int64_t> distinct;
  for (auto v : m.elements()) {
    CHECK(v >= -128);
    CHECK(v <= 127);
    distinct.insert(v);
  }
  CHECK(distinct.size() > 200);  // covers most of the 256 codes
}

TEST_CASE("random_matrix values are pinned across platforms") {
  // Frozen from mt19937_64, whose output sequence is fixed by the standard.
  const Matrix m = dipsim::random_matrix(1, 4, 8, 0);
  const Matrix again = dipsim::random_matrix(1, 4, 8, 0);
  CHECK(m == again);
  std::mt19937_64 gen(0);
  for (int c = 0; c < 4; ++c) CHECK(m(0, c) == -128 + static_cast<std::int64_t>(gen() % 256));
}

TEST_CASE("element width is enforced") {
  CHECK_THROWS_AS(Matrix({{128}}, 8), std::out_of_range);
  Matrix m(1, 1, 8);
  CHECK_THROWS_AS(m.set(0, 0, -129), std::out_of_range);
  m.set(0, 0, -128);
  CHECK(m(0, 0) == -128);
  CHECK_THROWS_AS(Matrix(0, 3), std::invalid_argument);
}

TEST_CASE("wrap_to_width sign-extends") {
  CHECK(dipsim::wrap_to_width(127, 8) == 127);
  CHECK(dipsim::wrap_to_width(128, 8) == -128);
  CHECK(dipsim::wrap_to_width(-129, 8) == 127);
  CHECK(dipsim::wrap_to_width((1 << 23), 24) == -(1 << 23));
  CHECK(dipsim::wrap_to_width(-5, 64) == -5);
}

TEST_CASE("block pads outside cells with zeros") {
  const Matrix m{{1, 2}, {3, 4}};
  CHECK(m.block(1, 1, 2, 2) == Matrix{{4, 0}, {0, 0}});
}

TEST_CASE("CSV round trip and malformed input") {
  const Matrix m{{1, -2, 3}, {-4, 5, 60}};
  std::stringstream ss;
  dipsim::write_matrix_csv(ss, m);
  CHECK(ss.str() == "1,-2,3\n-4,5,60\n");
  CHECK(dipsim::read_matrix_csv(ss) == m);

  std::stringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(dipsim::read_matrix_csv(ragged), std::invalid_argument);
  std::stringstream junk("1,x\n");
  CHECK_THROWS_AS(dipsim::read_matrix_csv(junk), std::invalid_argument);
  std::stringstream empty("\n\n");
  CHECK_THROWS_AS(dipsim::read_matrix_csv(empty), std::invalid_argument);
  std::stringstream wide("300\n");
  CHECK_THROWS_AS(dipsim::read_matrix_csv(wide, 8), std::out_of_range);
}

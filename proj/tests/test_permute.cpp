#include <algorithm>

#include "dipsim/matrix.hpp"
#include "dipsim/permute.hpp"
#include "doctest.h"

using dipsim::Matrix;

TEST_CASE("3x3 permutation matches the letter pattern (a,e,i),(b,f,g),(c,d,h)") {
  // a..i are 1..9 laid out column-major.
  const Matrix w{{1, 4, 7}, {2, 5, 8}, {3, 6, 9}};
  const Matrix expected{{1, 5, 9}, {2, 6, 7}, {3, 4, 8}};
  CHECK(dipsim::permute_weights(w) == expected);
  CHECK(dipsim::inverse_permute(expected) == w);
}

TEST_CASE("trivial permutations") {
  CHECK(dipsim::permute_weights(Matrix{{7}}) == Matrix{{7}});
  CHECK(dipsim::inverse_permute(Matrix{{7}}) == Matrix{{7}});

  const Matrix m = dipsim::random_matrix(5, 5, 8, 3);
  const Matrix p = dipsim::permute_weights(m);
  for (int r = 0; r < 5; ++r) CHECK(p(r, 0) == m(r, 0));
}

TEST_CASE("permutation is defined for rectangular matrices") {
  const Matrix m{{1, 2, 3}, {4, 5, 6}};  // 2 rows: column i rotates by i mod 2
  CHECK(dipsim::permute_weights(m) == Matrix{{1, 5, 3}, {4, 2, 6}});
  CHECK(dipsim::inverse_permute(dipsim::permute_weights(m)) == m);
}

TEST_CASE("round trip, per-column rotation and N-fold identity on random squares") {
  for (int n = 2; n <= 64; n += (n < 8 ? 1 : 7)) {
    const Matrix w = dipsim::random_matrix(n, n, 8, 1000 + n);
    const Matrix p = dipsim::permute_weights(w);
    CHECK(dipsim::inverse_permute(p) == w);

    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) REQUIRE(p(j, i) == w((j + i) % n, i));
    }

    Matrix cur = w;
    for (int k = 0; k < n; ++k) cur = dipsim::permute_weights(cur);
    CHECK(cur == w);
  }
}

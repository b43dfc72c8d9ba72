#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pabs/error.hpp"
#include "pabs/generator.hpp"
#include "support.hpp"

using namespace pabs;
using namespace pabs::test;

TEST_CASE("generator examples") {
  const GeneratedPair a = generate_pair(spec(2, 1, 1, 0, {kPi / 3}));
  const AngleSpectrum sa = cos_pabs(a.x, a.y);
  REQUIRE(sa.size() == 1);
  CHECK(std::abs(sa.angles[0] - kPi / 3) <= 1e-12);

  const GeneratedPair b = generate_pair(spec(3, 1, 1, 1, {}));
  CHECK(((b.x.basis() * b.x.basis().adjoint()) - (b.y.basis() * b.y.basis().adjoint())).norm() <= 1e-12);
  CHECK(cos_pabs(b.x, b.y).angles == std::vector<double>{0.0});

  const GeneratorSpec c = spec(8, 3, 4, 1, {0.3, 1.2});
  CHECK(c.dims() == HalmosDims{1, 2, 0, 1, 2});
  CHECK(halmos_dims(generate_pair(c).x, generate_pair(c).y) == c.dims());
}

TEST_CASE("invalid generator parameters") {
  CHECK_THROWS_AS(spec(3, 2, 2, 2, {0.5}).validate(), Error);
  CHECK_THROWS_AS(spec(3, 2, 2, 0, {}).validate(), Error);
  CHECK_THROWS_AS(spec(3, 1, 1, 0, {kPi / 2}).validate(), Error);
  CHECK_THROWS_AS(spec(3, 0, 1, 0, {}).validate(), Error);
  CHECK_THROWS_AS(spec(3, 4, 1, 0, {}).validate(), Error);
  CHECK_NOTHROW(spec(3, 2, 2, 1, {0.5}).validate());
}

TEST_CASE("block matrix is unitary") {
  for (const GeneratorSpec& s :
       {spec(2, 1, 1, 0, {0.4}), spec(8, 3, 4, 1, {0.3, 1.2}), spec(9, 5, 2, 0, {0.7}),
        spec(6, 4, 4, 2, {0.1, 1.5}), spec(5, 1, 4, 0, {})}) {
    const Matrix d = csd_block_matrix(s);
    CHECK(d.rows() == s.n);
    CHECK((d.adjoint() * d - Matrix::Identity(s.n, s.n)).norm() <= 1e-14);
    const GeneratedPair pair = generate_pair(s);
    CHECK((pair.d - d).norm() == 0.0);
  }
}

TEST_CASE("haar unitary") {
  std::mt19937_64 rng(3);
  for (Eigen::Index n : {1, 2, 5, 12}) {
    const Matrix u = haar_unitary(n, rng);
    CHECK((u.adjoint() * u - Matrix::Identity(n, n)).norm() <= 1e-13);
  }
}

TEST_CASE("seeded determinism") {
  const GeneratedPair a = generate_pair(spec(7, 3, 2, 0, {0.2, 0.9}, 99));
  const GeneratedPair b = generate_pair(spec(7, 3, 2, 0, {0.2, 0.9}, 99));
  const GeneratedPair c = generate_pair(spec(7, 3, 2, 0, {0.2, 0.9}, 100));
  CHECK((a.x.basis() - b.x.basis()).norm() == 0.0);
  CHECK((a.y.basis() - b.y.basis()).norm() == 0.0);
  CHECK((a.x.basis() - c.x.basis()).norm() > 0.1);
}

TEST_CASE("prescribed angles are reproduced") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> angle(0.01, 1.56);
  for (int trial = 0; trial < 200; ++trial) {
    const long n = 1 + static_cast<long>(rng() % 12);
    const long p = 1 + static_cast<long>(rng() % static_cast<unsigned long>(n));
    const long q = 1 + static_cast<long>(rng() % static_cast<unsigned long>(n));
    const long lo = std::max(0L, p + q - n);
    const long m = std::min(p, q);
    const long r = lo + static_cast<long>(rng() % static_cast<unsigned long>(m - lo + 1));
    const long s = static_cast<long>(rng() % static_cast<unsigned long>(m - r + 1));
    std::vector<double> open;
    for (long k = 0; k < s; ++k) open.push_back(angle(rng));
    const GeneratorSpec g = spec(n, p, q, r, open, rng());
    const GeneratedPair pair = generate_pair(g);
    CAPTURE(n);
    CAPTURE(p);
    CAPTURE(q);
    CAPTURE(r);
    CHECK(max_abs_diff(cos_pabs(pair.x, pair.y).angles, g.prescribed_angles()) <= 1e-10);
    CHECK(halmos_dims(pair.x, pair.y) == g.dims());
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kh/snf.hpp"

#include <random>

using namespace kh;

TEST_CASE("smith normal form basics") {
  SnfResult r = smith_normal_form({{2, 0}, {0, 3}});
  CHECK(r.rank == 2);
  REQUIRE(r.invariants.size() == 2);
  CHECK(r.invariants[0] == 1);
  CHECK(r.invariants[1] == 6);

  SnfResult z = smith_normal_form({{0, 0}, {0, 0}});
  CHECK(z.rank == 0);

  SnfResult id3 = smith_normal_form({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(id3.rank == 3);
  for (auto& d : id3.invariants) CHECK(d == 1);
}

TEST_CASE("random sparse matrices: modular rank oracle") {
  std::mt19937_64 rng(42);
  const std::vector<Int> primes{2, 3, 5, 7, 11, 13};
  for (int rep = 0; rep < 12; ++rep) {
    IntMatrix M(20, std::vector<Int>(20, 0));
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j)
        if (rng() % 4 == 0) M[i][j] = static_cast<long>(rng() % 21) - 10;
    SnfResult r = smith_normal_form(M);
    // invariant factors divide in a chain
    for (size_t k = 0; k + 1 < r.invariants.size(); ++k)
      CHECK(r.invariants[k + 1] % r.invariants[k] == 0);
    // rank over F_p equals the number of invariants not divisible by p
    for (const Int& p : primes) {
      long expect = 0;
      for (auto& d : r.invariants)
        if (d % p != 0) ++expect;
      CHECK(rank_mod_p(M, p) == expect);
    }
  }
}

TEST_CASE("integer complex homology") {
  // Z --2--> Z: H^0 = 0, H^1 = Z/2
  auto H = integer_complex_homology({1, 1}, {IntMatrix{{2}}});
  CHECK(H[0].free_rank == 0);
  CHECK(H[1].free_rank == 0);
  REQUIRE(H[1].torsion.size() == 1);
  CHECK(H[1].torsion[0] == 2);

  // 0 differential
  auto H2 = integer_complex_homology({2, 3}, {IntMatrix(3, std::vector<Int>(2, 0))});
  CHECK(H2[0].free_rank == 2);
  CHECK(H2[1].free_rank == 3);

  auto pp = factor_prime_powers(12);
  REQUIRE(pp.size() == 2);
  CHECK(pp[0] == 4);
  CHECK(pp[1] == 3);
}

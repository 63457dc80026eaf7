#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kh/complex.hpp"
#include "kh/snf.hpp"

#include <random>

using namespace kh;

namespace {

PlanarMatching mk(std::vector<int> pair, int loops = 0) {
  PlanarMatching m;
  m.pair = std::move(pair);
  m.loops = loops;
  return m;
}

// wrap a list of integer matrices (over the empty object) into a BasedComplex
BasedComplex int_complex(const std::vector<long>& dims, const std::vector<IntMatrix>& mats) {
  BasedComplex C;
  std::vector<std::vector<uint64_t>> ids(dims.size());
  for (size_t d = 0; d < dims.size(); ++d)
    for (long k = 0; k < dims[d]; ++k) {
      Summand s;
      s.q = 0;
      s.m = empty_matching();
      s.id = C.fresh_id();
      ids[d].push_back(C.add_summand(static_cast<int>(d), s));
    }
  for (size_t d = 0; d + 1 < dims.size(); ++d) {
    for (long r = 0; r < dims[d + 1]; ++r)
      for (long c = 0; c < dims[d]; ++c) {
        if (d < mats.size() && mats[d][r][c] != 0) {
          CobMorphism f = zero_morphism(empty_matching(), empty_matching());
          f.terms[0] = mats[d][r][c];
          C.set_entry(static_cast<int>(d), ids[d + 1][r], ids[d][c], f);
        }
      }
  }
  return C;
}

std::vector<IntGroup> complex_homology(const BasedComplex& C) {
  // extract integer matrices back (all objects empty matchings, q ignored)
  std::vector<long> dims;
  std::vector<IntMatrix> mats;
  int lo = C.min_deg, hi = C.max_deg;
  if (hi < lo) return {};
  std::vector<std::map<uint64_t, long>> pos(hi - lo + 1);
  for (int d = lo; d <= hi; ++d) {
    long k = 0;
    auto it = C.spaces.find(d);
    if (it != C.spaces.end())
      for (auto& [id, s] : it->second) pos[d - lo][id] = k++;
    dims.push_back(k);
  }
  for (int d = lo; d < hi; ++d) {
    IntMatrix M(dims[d - lo + 1], std::vector<Int>(dims[d - lo], 0));
    auto it = C.diff.find(d);
    if (it != C.diff.end())
      for (auto& [key, f] : it->second) {
        Int v = f.terms.empty() ? Int(0) : f.terms.begin()->second;
        M[pos[d - lo + 1][key.first]][pos[d - lo][key.second]] = v;
      }
    mats.push_back(std::move(M));
  }
  return integer_complex_homology(dims, mats);
}

bool same_homology(const std::vector<IntGroup>& a, const std::vector<IntGroup>& b, int off_a,
                   int off_b, int lo, int hi) {
  for (int d = lo; d <= hi; ++d) {
    IntGroup ga, gb;
    if (d - off_a >= 0 && d - off_a < static_cast<int>(a.size())) ga = a[d - off_a];
    if (d - off_b >= 0 && d - off_b < static_cast<int>(b.size())) gb = b[d - off_b];
    std::multiset<Int> ta, tb;
    for (auto& t : ga.torsion)
      for (auto& pk : factor_prime_powers(t)) ta.insert(pk);
    for (auto& t : gb.torsion)
      for (auto& pk : factor_prime_powers(t)) tb.insert(pk);
    if (ga.free_rank != gb.free_rank || ta != tb) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gaussian elimination: identity complex cancels to nothing") {
  BasedComplex C;
  auto arc = mk({1, 0});
  Summand a, b;
  a.q = 0;
  a.m = arc;
  a.id = C.fresh_id();
  b.q = 0;
  b.m = arc;
  b.id = C.fresh_id();
  C.add_summand(0, a);
  C.add_summand(1, b);
  C.set_entry(0, b.id, a.id, identity_morphism(arc));
  gaussian_eliminate(C, 0, b.id, a.id);
  CHECK(C.total_rank() == 0);
}

TEST_CASE("gaussian elimination: [id;0] leaves the other summand") {
  BasedComplex C;
  auto nested = mk({3, 2, 1, 0});
  auto unnested = mk({1, 0, 3, 2});
  Summand a, t1, t2;
  a.q = 0;
  a.m = nested;
  a.id = C.fresh_id();
  t1.q = 0;
  t1.m = nested;
  t1.id = C.fresh_id();
  t2.q = 0;
  t2.m = unnested;
  t2.id = C.fresh_id();
  C.add_summand(0, a);
  C.add_summand(1, t1);
  C.add_summand(1, t2);
  C.set_entry(0, t1.id, a.id, identity_morphism(nested));
  gaussian_eliminate(C, 0, t1.id, a.id);
  CHECK(C.total_rank() == 1);
  CHECK(C.find_summand(1, t2.id) != nullptr);
  CHECK(C.diff[0].empty());
}

TEST_CASE("gaussian elimination preserves homology of random integer complexes") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 25; ++rep) {
    // start from a split three-term complex, then scramble by elementary ops
    long a = 3 + rng() % 3, b = 4 + rng() % 3, c = 3 + rng() % 3;
    long r0 = 1 + static_cast<long>(rng() % std::min(a, b));
    // d0 = [I_{r0} 0; 0 0], d1 kills nothing that d0 hits
    IntMatrix d0(b, std::vector<Int>(a, 0));
    for (long k = 0; k < r0; ++k) d0[k][k] = 1;
    IntMatrix d1(c, std::vector<Int>(b, 0));
    long r1 = static_cast<long>(rng() % std::min(c, b - r0 + 1));
    for (long k = 0; k < r1; ++k) d1[k][r0 + k] = 1 + static_cast<long>(rng() % 3);
    // elementary ops: d0 rows/d1 cols together, d0 cols alone, d1 rows alone
    for (int op = 0; op < 30; ++op) {
      long i, j;
      Int f = static_cast<long>(rng() % 5) - 2;
      switch (rng() % 3) {
        case 0:  // rows of d0 and columns of d1: d0 <- E d0, d1 <- d1 E^{-1}
          i = rng() % b;
          j = rng() % b;
          if (i == j) break;
          for (long k = 0; k < a; ++k) d0[i][k] += f * d0[j][k];
          for (long k = 0; k < c; ++k) d1[k][j] -= f * d1[k][i];
          break;
        case 1:  // columns of d0
          i = rng() % a;
          j = rng() % a;
          if (i == j) break;
          for (long k = 0; k < b; ++k) d0[k][i] += f * d0[k][j];
          break;
        default:  // rows of d1
          i = rng() % c;
          j = rng() % c;
          if (i == j) break;
          for (long k = 0; k < b; ++k) d1[i][k] += f * d1[j][k];
      }
    }
    BasedComplex C = int_complex({a, b, c}, {d0, d1});
    REQUIRE(C.check_d_squared());
    auto before = complex_homology(C);
    // eliminate any +-1 pivot in degree 0
    bool found = false;
    for (auto& [key, fm] : C.diff[0]) {
      Int u;
      if (is_identity_multiple(fm, &u) && (u == 1 || u == -1)) {
        gaussian_eliminate(C, 0, key.first, key.second);
        found = true;
        break;
      }
    }
    if (!found) continue;
    REQUIRE(C.check_d_squared());
    auto after = complex_homology(C);
    CHECK(same_homology(before, after, 0, 0, 0, 2));
  }
}

TEST_CASE("morse_reduce: empty matching leaves the complex alone") {
  BasedComplex C = int_complex({2, 2}, {IntMatrix{{1, 2}, {0, 3}}});
  MorseMatching M;
  morse_reduce(C, M);
  CHECK(C.total_rank() == 4);
}

TEST_CASE("morse_reduce with a single edge equals gaussian_eliminate") {
  auto build = [&]() {
    return int_complex({2, 2, 1}, {IntMatrix{{1, 2}, {3, 4}}, IntMatrix{{4, -3}}});
  };
  BasedComplex C1 = build(), C2 = build();
  REQUIRE(C1.check_d_squared());
  uint64_t row = 0, col = 0;
  for (auto& [key, f] : C1.diff[0]) {
    Int u;
    if (is_identity_multiple(f, &u) && (u == 1 || u == -1)) {
      row = key.first;
      col = key.second;
      break;
    }
  }
  REQUIRE(row != 0);
  gaussian_eliminate(C1, 0, row, col);
  MorseMatching M;
  M.edges.push_back({0, col, row});
  morse_reduce(C2, M);
  REQUIRE(C1.total_rank() == C2.total_rank());
  // identical entrywise
  for (auto& [deg, layer] : C1.diff)
    for (auto& [key, f] : layer) {
      const CobMorphism* g = C2.entry(deg, key.first, key.second);
      REQUIRE(g != nullptr);
      CHECK(*g == f);
    }
}

TEST_CASE("morse matching validation catches bad matchings") {
  // adjacency violation
  BasedComplex C = int_complex({1, 2, 1}, {IntMatrix{{1}, {1}}, IntMatrix{{1, -1}}});
  std::vector<uint64_t> deg0, deg1, deg2;
  for (auto& [id, s] : C.spaces[0]) deg0.push_back(id);
  for (auto& [id, s] : C.spaces[1]) deg1.push_back(id);
  for (auto& [id, s] : C.spaces[2]) deg2.push_back(id);
  MorseMatching shared;
  shared.edges.push_back({0, deg0[0], deg1[0]});
  shared.edges.push_back({1, deg1[0], deg2[0]});
  CHECK_THROWS_AS(validate_morse_matching(C, shared), KhError);

  MorseMatching missing;
  missing.edges.push_back({0, deg0[0], 999});
  CHECK_THROWS_AS(validate_morse_matching(C, missing), KhError);

  // non-invertible entry
  BasedComplex C2 = int_complex({1, 1}, {IntMatrix{{2}}});
  std::vector<uint64_t> a0, a1;
  for (auto& [id, s] : C2.spaces[0]) a0.push_back(id);
  for (auto& [id, s] : C2.spaces[1]) a1.push_back(id);
  MorseMatching bad;
  bad.edges.push_back({0, a0[0], a1[0]});
  CHECK_THROWS_AS(validate_morse_matching(C2, bad), KhError);

  // zig-zag cycle: two pivots whose reversal loops
  BasedComplex C3 = int_complex({2, 2}, {IntMatrix{{1, 1}, {1, 1}}});
  std::vector<uint64_t> b0, b1;
  for (auto& [id, s] : C3.spaces[0]) b0.push_back(id);
  for (auto& [id, s] : C3.spaces[1]) b1.push_back(id);
  MorseMatching cyc;
  cyc.edges.push_back({0, b0[0], b1[0]});
  cyc.edges.push_back({0, b0[1], b1[1]});
  CHECK_THROWS_AS(validate_morse_matching(C3, cyc), KhError);
}

TEST_CASE("truncate") {
  BasedComplex C = int_complex({2, 3, 2}, {IntMatrix{{1, 0}, {0, 2}, {0, 0}},
                                           IntMatrix{{0, 0, 1}, {0, 0, 0}}});
  BasedComplex big = C;
  truncate(big, 10);
  CHECK(big.total_rank() == C.total_rank());

  BasedComplex cut = C;
  truncate(cut, 1);
  CHECK(cut.max_deg == 1);
  CHECK(cut.rank_at(2) == 0);
  CHECK(cut.diff.count(1) == 0);

  BasedComplex zero = C;
  truncate(zero, -5);
  CHECK(zero.total_rank() == 0);

  // homology below k agrees with the untruncated complex
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    IntMatrix d0(3, std::vector<Int>(3, 0));
    for (auto& row : d0)
      for (auto& v : row) v = static_cast<long>(rng() % 5) - 2;
    BasedComplex R = int_complex({3, 3}, {d0});
    auto full = complex_homology(R);
    truncate(R, 1);
    auto trunc = complex_homology(R);
    CHECK(same_homology(full, trunc, 0, 0, 0, 0));  // degrees < k only
  }
}

TEST_CASE("deloop_summand rewrites incident entries through the iso") {
  // complex: (loop) --cap--> (nothing): after delooping the loop the complex
  // is (q+1) + (q-1) with the cap hitting the dotted side
  BasedComplex C;
  Summand s0, s1;
  s0.q = 0;
  s0.m = empty_matching(1);
  s0.id = C.fresh_id();
  s1.q = 0;
  s1.m = empty_matching(0);
  s1.id = C.fresh_id();
  C.add_summand(0, s0);
  C.add_summand(1, s1);
  CobMorphism cap = zero_morphism(empty_matching(1), empty_matching(0));
  cap.terms[0] = 1;  // undotted cap
  C.set_entry(0, s1.id, s0.id, cap);
  auto children = deloop_summand(C, 0, s0.id);
  REQUIRE(children.size() == 2);
  const Summand* c1 = C.find_summand(0, children[0]);
  const Summand* cx = C.find_summand(0, children[1]);
  REQUIRE(c1 != nullptr);
  REQUIRE(cx != nullptr);
  CHECK(c1->q == 1);
  CHECK(cx->q == -1);
  // undotted cap composed with relooping: survives only out of the q-1 child
  CHECK(C.entry(0, s1.id, children[0]) == nullptr);
  const CobMorphism* e = C.entry(0, s1.id, children[1]);
  REQUIRE(e != nullptr);
  CHECK(e->terms.at(0) == 1);
}

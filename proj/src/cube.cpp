#include "kh/cube.hpp"

#include "kh/snf.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <vector>

namespace kh {

namespace {

struct StateCircles {
  int count = 0;
  std::vector<int> circle_of_arc;
};

StateCircles state_circles(const LinkDiagram& L, uint32_t state) {
  StateCircles sc;
  std::vector<int> parent(L.n_arcs);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  static const std::array<int, 4> sm0{3, 2, 1, 0};
  static const std::array<int, 4> sm1{1, 0, 3, 2};
  for (int c = 0; c < L.n(); ++c) {
    const auto& P = (state >> c) & 1 ? sm1 : sm0;
    for (int s = 0; s < 4; ++s) {
      int t = P[s];
      if (s < t) parent[find(L.crossings[c].arcs[s])] = find(L.crossings[c].arcs[t]);
    }
  }
  sc.circle_of_arc.assign(L.n_arcs, -1);
  for (int a = 0; a < L.n_arcs; ++a) {
    int r = find(a);
    if (sc.circle_of_arc[r] == -1) sc.circle_of_arc[r] = sc.count++;
  }
  for (int a = 0; a < L.n_arcs; ++a) sc.circle_of_arc[a] = sc.circle_of_arc[find(a)];
  return sc;
}

}  // namespace

HomologyTable kh_cube(const LinkDiagram& L, const Coeff& R, int size_cap) {
  const int n = L.n();
  if (n > size_cap) throw KhError(ErrorKind::SizeCap, "kh_cube: crossing count above cap");
  if (n == 0) return unlink_table(L.free_circles, R.mod);

  const uint32_t n_states = uint32_t(1) << n;
  std::vector<StateCircles> circles(n_states);
  for (uint32_t s = 0; s < n_states; ++s) circles[s] = state_circles(L, s);

  // generator = (state, label mask); label bit = 1 means the circle is
  // labelled X (q-degree -1), otherwise 1 (q-degree +1)
  struct GenRef {
    uint32_t state;
    uint32_t labels;
  };
  std::map<Bidegree, std::vector<GenRef>> basis;
  std::map<Bidegree, std::map<std::pair<uint32_t, uint32_t>, long>> index;
  const int shift_q = L.n_plus - 2 * L.n_minus;
  for (uint32_t s = 0; s < n_states; ++s) {
    int ones = std::popcount(s);
    int i = ones - L.n_minus;
    int c = circles[s].count;
    for (uint32_t lab = 0; lab < (uint32_t(1) << c); ++lab) {
      int q = (c - 2 * std::popcount(lab)) + ones + shift_q;
      auto& vec = basis[{i, q}];
      index[{i, q}][{s, lab}] = static_cast<long>(vec.size());
      vec.push_back({s, lab});
    }
  }

  // differentials, grouped by quantum degree
  std::map<int, std::map<int, IntMatrix>> mats;  // q -> (source i -> matrix)
  for (auto& [ij, vec] : basis) {
    auto [i, q] = ij;
    auto tgt = basis.find(Bidegree{i + 1, q});
    if (tgt == basis.end()) continue;
    IntMatrix M(tgt->second.size(), std::vector<Int>(vec.size(), 0));
    for (size_t col = 0; col < vec.size(); ++col) {
      const GenRef g = vec[col];
      const StateCircles& sc = circles[g.state];
      for (int c = 0; c < n; ++c) {
        if ((g.state >> c) & 1) continue;
        uint32_t s2 = g.state | (uint32_t(1) << c);
        const StateCircles& sc2 = circles[s2];
        int sign = std::popcount(g.state & ((uint32_t(1) << c) - 1)) % 2 ? -1 : 1;
        // circles at the flipped crossing: before the flip (0-smoothing) slots
        // 0,3 and 1,2 are the two local strands; after it slots 0,1 and 2,3
        int a0 = L.crossings[c].arcs[0];
        int a1 = L.crossings[c].arcs[1];
        int a2 = L.crossings[c].arcs[2];
        int ca = sc.circle_of_arc[a0], cb = sc.circle_of_arc[a1];
        // map labels of unaffected circles through arc representatives
        auto push = [&](uint32_t lab2, int coeff) {
          auto it = index[{i + 1, q}].find({s2, lab2});
          if (it == index[{i + 1, q}].end())
            throw KhError(ErrorKind::Internal, "cube: missing target generator");
          M[it->second][col] += coeff * sign;
        };
        auto transfer = [&](uint32_t src_lab, int exclude1, int exclude2) {
          uint32_t lab2 = 0;
          for (int a = 0; a < L.n_arcs; ++a) {
            int c_old = sc.circle_of_arc[a];
            if (c_old == exclude1 || c_old == exclude2) continue;
            if ((src_lab >> c_old) & 1) lab2 |= uint32_t(1) << sc2.circle_of_arc[a];
          }
          return lab2;
        };
        if (ca != cb) {
          // merge: m(1,1)=1, m(1,X)=m(X,1)=X, m(X,X)=0
          int cm = sc2.circle_of_arc[a0];
          bool xa = (g.labels >> ca) & 1, xb = (g.labels >> cb) & 1;
          if (xa && xb) continue;
          uint32_t lab2 = transfer(g.labels, ca, cb);
          if (xa || xb) lab2 |= uint32_t(1) << cm;
          push(lab2, 1);
        } else {
          // split: Delta(1)=1xX+Xx1, Delta(X)=XxX
          int c1 = sc2.circle_of_arc[a0];
          int c2 = sc2.circle_of_arc[a2];
          if (c1 == c2) throw KhError(ErrorKind::Internal, "cube: split did not split");
          uint32_t lab2 = transfer(g.labels, ca, -1);
          bool x = (g.labels >> ca) & 1;
          if (x) {
            push(lab2 | (uint32_t(1) << c1) | (uint32_t(1) << c2), 1);
          } else {
            push(lab2 | (uint32_t(1) << c1), 1);
            push(lab2 | (uint32_t(1) << c2), 1);
          }
        }
      }
    }
    mats[q][i] = std::move(M);
  }

  HomologyTable out;
  out.coeff_mod = R.mod;
  // group by quantum degree and run homology per column
  std::map<int, std::vector<int>> degrees_by_q;
  for (auto& [ij, vec] : basis) degrees_by_q[ij.second].push_back(ij.first);
  for (auto& [q, degs] : degrees_by_q) {
    int lo = *std::min_element(degs.begin(), degs.end());
    int hi = *std::max_element(degs.begin(), degs.end());
    std::vector<long> dims;
    std::vector<IntMatrix> ms;
    for (int i = lo; i <= hi; ++i) {
      auto it = basis.find(Bidegree{i, q});
      dims.push_back(it == basis.end() ? 0 : static_cast<long>(it->second.size()));
    }
    for (int i = lo; i < hi; ++i) {
      auto mq = mats.find(q);
      if (mq != mats.end() && mq->second.count(i))
        ms.push_back(mq->second[i]);
      else
        ms.push_back(IntMatrix(dims[i + 1 - lo], std::vector<Int>(dims[i - lo], 0)));
    }
    if (R.mod == 0) {
      auto H = integer_complex_homology(dims, ms);
      for (size_t k = 0; k < H.size(); ++k) {
        GroupData g = group_from_invariants(H[k].free_rank, H[k].torsion);
        out.add(lo + static_cast<int>(k), q, g);
      }
    } else {
      std::vector<long> rank_out(dims.size(), 0);
      for (size_t k = 0; k + 1 < dims.size(); ++k)
        if (dims[k] && dims[k + 1]) rank_out[k] = rank_mod_p(ms[k], R.mod);
      for (size_t k = 0; k < dims.size(); ++k) {
        long rin = k > 0 ? rank_out[k - 1] : 0;
        GroupData g;
        g.free_rank = dims[k] - rank_out[k] - rin;
        if (g.free_rank < 0) throw KhError(ErrorKind::Internal, "cube: negative dimension");
        out.add(lo + static_cast<int>(k), q, g);
      }
    }
  }
  if (L.free_circles > 0) out = kunneth(out, unlink_table(L.free_circles, R.mod));
  return out;
}

}  // namespace kh

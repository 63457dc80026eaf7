#include "kh/matching.hpp"

#include <algorithm>

namespace kh {

bool is_planar_matching(const PlanarMatching& m) {
  const int n = m.boundary_size();
  if (n % 2 != 0 || m.loops < 0) return false;
  for (int p = 0; p < n; ++p) {
    int q = m.pair[p];
    if (q < 0 || q >= n || q == p || m.pair[q] != p) return false;
  }
  // stack test: chords nest without crossing
  std::vector<int> stack;
  for (int p = 0; p < n; ++p) {
    if (m.pair[p] > p) {
      stack.push_back(p);
    } else {
      if (stack.empty() || stack.back() != m.pair[p]) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

PlanarMatching empty_matching(int loops) {
  PlanarMatching m;
  m.loops = loops;
  return m;
}

GluedCircles glued_circles(const PlanarMatching& D, const PlanarMatching& E) {
  if (D.boundary_size() != E.boundary_size())
    throw KhError(ErrorKind::Internal, "glued_circles: boundary size mismatch");
  const int n = D.boundary_size();
  GluedCircles g;
  g.circle_of_point.assign(n, -1);
  std::vector<std::pair<int, int>> orbits;  // (min point, representative)
  for (int p = 0; p < n; ++p) {
    if (g.circle_of_point[p] != -1) continue;
    // circle through p alternates D-arcs and E-arcs
    int mn = p;
    int q = p;
    do {
      g.circle_of_point[q] = -2;  // visiting
      int mid = D.pair[q];
      g.circle_of_point[mid] = -2;
      mn = std::min({mn, q, mid});
      q = E.pair[mid];
    } while (q != p);
    orbits.emplace_back(mn, p);
  }
  std::sort(orbits.begin(), orbits.end());
  for (size_t i = 0; i < orbits.size(); ++i) {
    int p = orbits[i].second;
    int q = p;
    do {
      g.circle_of_point[q] = static_cast<int>(i);
      int mid = D.pair[q];
      g.circle_of_point[mid] = static_cast<int>(i);
      q = E.pair[mid];
    } while (q != p);
  }
  g.first_src_loop = static_cast<int>(orbits.size());
  g.first_dst_loop = g.first_src_loop + D.loops;
  g.count = g.first_dst_loop + E.loops;
  return g;
}

uint64_t hash_matching(const PlanarMatching& m) {
  uint64_t h = 0x9e3779b97f4a7c15ull + static_cast<uint64_t>(m.loops);
  for (int v : m.pair) h = h * 0x100000001b3ull ^ static_cast<uint64_t>(v + 1);
  return h;
}

static void enumerate_rec(std::vector<int>& pair, std::vector<bool>& used, int n,
                          std::vector<PlanarMatching>& out) {
  int p = 0;
  while (p < n && used[p]) ++p;
  if (p == n) {
    PlanarMatching m;
    m.pair = pair;
    out.push_back(m);
    return;
  }
  // partner q must leave an even gap on both sides
  for (int q = p + 1; q < n; q += 2) {
    if (used[q]) continue;
    bool free_gap = true;
    for (int r = p + 1; r < q; ++r)
      if (used[r]) { free_gap = false; break; }
    if (!free_gap) continue;
    used[p] = used[q] = true;
    pair[p] = q;
    pair[q] = p;
    enumerate_rec(pair, used, n, out);
    used[p] = used[q] = false;
  }
}

std::vector<PlanarMatching> all_planar_matchings(int n_points) {
  std::vector<PlanarMatching> out;
  if (n_points % 2 != 0) return out;
  if (n_points == 0) {
    out.push_back(empty_matching());
    return out;
  }
  std::vector<int> pair(n_points, -1);
  std::vector<bool> used(n_points, false);
  enumerate_rec(pair, used, n_points, out);
  return out;
}

}  // namespace kh

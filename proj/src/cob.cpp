#include "kh/cob.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace kh {

namespace {

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// One glued configuration of two disk systems, independent of dot patterns.
struct GlueGeometry {
  int n_comps = 0;
  std::vector<int> comp_of_disk;               // disk -> component
  std::vector<int> chi;                        // per component
  std::vector<std::vector<int>> comp_circles;  // result circles per component
  int result_circles = 0;
};

GlueGeometry finish_geometry(DSU& dsu, int n_disks, const std::vector<int>& lines_per_disk_root,
                             const std::vector<int>& disk_of_result_circle) {
  GlueGeometry g;
  g.comp_of_disk.assign(n_disks, -1);
  std::vector<int> root_to_comp(n_disks, -1);
  for (int d = 0; d < n_disks; ++d) {
    int r = dsu.find(d);
    if (root_to_comp[r] == -1) root_to_comp[r] = g.n_comps++;
    g.comp_of_disk[d] = root_to_comp[r];
  }
  g.chi.assign(g.n_comps, 0);
  for (int d = 0; d < n_disks; ++d) g.chi[g.comp_of_disk[d]] += 1;
  for (int r = 0; r < n_disks; ++r)
    if (root_to_comp[r] != -1) g.chi[root_to_comp[r]] -= lines_per_disk_root[r];
  g.comp_circles.assign(g.n_comps, {});
  g.result_circles = static_cast<int>(disk_of_result_circle.size());
  for (int c = 0; c < g.result_circles; ++c)
    g.comp_circles[g.comp_of_disk[disk_of_result_circle[c]]].push_back(c);
  return g;
}

// Expand all (term_f, term_g) products through the glued geometry, applying
// neck cutting (2^g, +g dots), sphere and double-dot relations, and accumulate
// in the dec basis of the result.
void expand_terms(const GlueGeometry& geom, const CobMorphism& f, const CobMorphism& g,
                  int n_disks1, const Coeff& R, CobMorphism& out) {
  const int nc = geom.n_comps;
  std::vector<uint64_t> comp_mask(nc, 0);
  for (int comp = 0; comp < nc; ++comp)
    for (int c : geom.comp_circles[comp]) comp_mask[comp] |= (uint64_t(1) << c);

  std::vector<int> dots(nc);
  for (auto& [tf, cf] : f.terms) {
    for (auto& [tg, cg] : g.terms) {
      std::fill(dots.begin(), dots.end(), 0);
      uint64_t m = tf;
      while (m) {
        int b = std::countr_zero(m);
        m &= m - 1;
        dots[geom.comp_of_disk[b]] += 1;
      }
      m = tg;
      while (m) {
        int b = std::countr_zero(m);
        m &= m - 1;
        dots[geom.comp_of_disk[n_disks1 + b]] += 1;
      }
      Int coeff = cf * cg;
      uint64_t base_mask = 0;
      bool dead = false;
      std::vector<int> free_comps;  // open components with zero dots
      for (int comp = 0; comp < nc && !dead; ++comp) {
        int r = static_cast<int>(geom.comp_circles[comp].size());
        int genus2 = 2 - geom.chi[comp] - r;
        if (genus2 < 0 || genus2 % 2 != 0)
          throw KhError(ErrorKind::Internal, "surface reduction: bad Euler characteristic");
        int genus = genus2 / 2;
        int d = dots[comp] + genus;
        if (genus > 0) coeff <<= genus;
        if (r == 0) {
          if (d != 1) dead = true;  // dotless sphere = 0, >=2 dots = 0
        } else {
          if (d >= 2)
            dead = true;
          else if (d == 1)
            base_mask |= comp_mask[comp];
          else
            free_comps.push_back(comp);
        }
      }
      if (dead) continue;
      coeff = R.reduce(coeff);
      if (coeff == 0) continue;
      std::vector<uint64_t> partial{base_mask};
      for (int comp : free_comps) {
        std::vector<uint64_t> next;
        next.reserve(partial.size() * geom.comp_circles[comp].size());
        for (uint64_t pm : partial)
          for (int c : geom.comp_circles[comp])
            next.push_back(pm | (comp_mask[comp] & ~(uint64_t(1) << c)));
        partial.swap(next);
      }
      for (uint64_t pm : partial) {
        Int& slot = out.terms[pm];
        slot = R.reduce(slot + coeff);
        if (slot == 0) out.terms.erase(pm);
      }
    }
  }
}

}  // namespace

int term_degree(const GluedCircles& circles, int boundary_points, uint64_t mask) {
  return circles.count - boundary_points / 2 - 2 * std::popcount(mask);
}

std::vector<CobMorphism> dec_basis(const PlanarMatching& D, const PlanarMatching& E) {
  if (D.boundary_size() != E.boundary_size())
    throw KhError(ErrorKind::Internal, "dec_basis: boundary size mismatch");
  GluedCircles g = glued_circles(D, E);
  if (g.count > 62) throw KhError(ErrorKind::SizeCap, "dec_basis: too many circles");
  std::vector<CobMorphism> out;
  out.reserve(size_t(1) << g.count);
  for (uint64_t mask = 0; mask < (uint64_t(1) << g.count); ++mask) {
    CobMorphism m;
    m.src = D;
    m.dst = E;
    m.terms[mask] = 1;
    out.push_back(std::move(m));
  }
  return out;
}

CobMorphism zero_morphism(const PlanarMatching& src, const PlanarMatching& dst) {
  CobMorphism m;
  m.src = src;
  m.dst = dst;
  return m;
}

CobMorphism identity_morphism(const PlanarMatching& m) {
  CobMorphism f;
  f.src = m;
  f.dst = m;
  GluedCircles g = glued_circles(m, m);
  // product disks over the arcs; a tube over each loop expands to two dec terms
  std::vector<uint64_t> masks{0};
  for (int l = 0; l < m.loops; ++l) {
    std::vector<uint64_t> next;
    for (uint64_t mm : masks) {
      next.push_back(mm | (uint64_t(1) << (g.first_src_loop + l)));
      next.push_back(mm | (uint64_t(1) << (g.first_dst_loop + l)));
    }
    masks.swap(next);
  }
  for (uint64_t mm : masks) f.terms[mm] = 1;
  return f;
}

CobMorphism add(const CobMorphism& a, const CobMorphism& b, const Coeff& R) {
  if (!(a.src == b.src) || !(a.dst == b.dst))
    throw KhError(ErrorKind::Internal, "add: mismatched objects");
  CobMorphism out = a;
  for (auto& [m, c] : b.terms) {
    Int& slot = out.terms[m];
    slot = R.reduce(slot + c);
    if (slot == 0) out.terms.erase(m);
  }
  return out;
}

CobMorphism scale(const CobMorphism& a, const Int& c, const Coeff& R) {
  CobMorphism out;
  out.src = a.src;
  out.dst = a.dst;
  Int cr = R.reduce(c);
  if (cr == 0) return out;
  for (auto& [m, v] : a.terms) {
    Int w = R.reduce(v * cr);
    if (w != 0) out.terms[m] = w;
  }
  return out;
}

CobMorphism compose_h(const CobMorphism& g, const CobMorphism& f, const Coeff& R) {
  if (!(f.dst == g.src)) throw KhError(ErrorKind::Internal, "compose_h: not composable");
  const PlanarMatching& A = f.src;
  const PlanarMatching& B = f.dst;
  const PlanarMatching& C = g.dst;
  CobMorphism out = zero_morphism(A, C);
  if (f.is_zero() || g.is_zero()) return out;

  GluedCircles cAB = glued_circles(A, B);
  GluedCircles cBC = glued_circles(B, C);
  GluedCircles cAC = glued_circles(A, C);
  const int n_disks1 = cAB.count;
  const int n_disks = cAB.count + cBC.count;

  DSU dsu(n_disks);
  std::vector<std::pair<int, int>> line_edges;
  const int n = B.boundary_size();
  for (int p = 0; p < n; ++p) {
    if (B.pair[p] < p) continue;  // one line per arc of B
    line_edges.emplace_back(cAB.circle_of_point[p], n_disks1 + cBC.circle_of_point[p]);
  }
  for (auto& [a, b] : line_edges) dsu.unite(a, b);
  for (int l = 0; l < B.loops; ++l)
    dsu.unite(cAB.first_dst_loop + l, n_disks1 + cBC.first_src_loop + l);

  std::vector<int> lines_per_root(n_disks, 0);
  for (auto& [a, b] : line_edges) lines_per_root[dsu.find(a)] += 1;

  // attribute each result boundary circle to a disk (hence a component)
  std::vector<int> disk_of_circle(cAC.count, -1);
  for (int p = 0; p < A.boundary_size(); ++p) {
    int c = cAC.circle_of_point[p];
    if (disk_of_circle[c] == -1) disk_of_circle[c] = cAB.circle_of_point[p];
  }
  for (int l = 0; l < A.loops; ++l) disk_of_circle[cAC.first_src_loop + l] = cAB.first_src_loop + l;
  for (int l = 0; l < C.loops; ++l)
    disk_of_circle[cAC.first_dst_loop + l] = n_disks1 + cBC.first_dst_loop + l;

  if (cAC.count > 62) throw KhError(ErrorKind::SizeCap, "compose_h: too many circles");
  GlueGeometry geom = finish_geometry(dsu, n_disks, lines_per_root, disk_of_circle);
  expand_terms(geom, f, g, n_disks1, R, out);

  // horizontal composition norm bound (loopless hypothesis, integer coefficients)
  if (R.mod == 0 && A.loopless() && B.loopless() && C.loopless() && n >= 2) {
    Int bound = (Int(1) << (n / 2 - 1)) * f.norm() * g.norm();
    if (out.norm() > bound)
      throw KhError(ErrorKind::Internal, "compose_h: norm bound violated");
  }
  return out;
}

bool is_identity_multiple(const CobMorphism& f, Int* c_out) {
  if (!(f.src == f.dst) || !f.src.loopless()) return false;
  if (f.terms.size() != 1) return false;
  auto& [mask, c] = *f.terms.begin();
  if (mask != 0) return false;
  if (c_out) *c_out = c;
  return true;
}

namespace {

struct GlueObjectsFull {
  PlanarMatching m;
  std::vector<std::pair<int, int>> cycle_reps;  // minimal (side, point) per new cycle, sorted
};

GlueObjectsFull glue_objects_impl(const PlanarMatching& x, const PlanarMatching& y,
                                  const GlueSpec& gs) {
  const PlanarMatching* side[2] = {&x, &y};
  std::vector<std::vector<int>> glue_to(2);
  glue_to[0].assign(x.boundary_size(), -1);
  glue_to[1].assign(y.boundary_size(), -1);
  for (auto& [p0, p1] : gs.glued) {
    glue_to[0][p0] = p1;
    glue_to[1][p1] = p0;
  }
  std::vector<std::vector<int>> result_index(2);
  result_index[0].assign(x.boundary_size(), -1);
  result_index[1].assign(y.boundary_size(), -1);
  for (size_t i = 0; i < gs.result_points.size(); ++i) {
    auto [s, p] = gs.result_points[i];
    result_index[s][p] = static_cast<int>(i);
  }

  GlueObjectsFull out;
  out.m.pair.assign(gs.result_points.size(), -1);
  std::vector<std::vector<bool>> visited(2);
  visited[0].assign(x.boundary_size(), false);
  visited[1].assign(y.boundary_size(), false);

  // open strands from each surviving boundary point
  for (size_t i = 0; i < gs.result_points.size(); ++i) {
    if (out.m.pair[i] != -1) continue;
    auto [s, p] = gs.result_points[i];
    int cs = s, cp = p;
    visited[cs][cp] = true;
    for (;;) {
      int q = side[cs]->pair[cp];
      visited[cs][q] = true;
      if (glue_to[cs][q] == -1) {
        int j = result_index[cs][q];
        out.m.pair[i] = j;
        out.m.pair[j] = static_cast<int>(i);
        break;
      }
      int ns = 1 - cs;
      int np = glue_to[cs][q];
      visited[ns][np] = true;
      cs = ns;
      cp = np;
    }
  }
  // closed cycles among the glued points
  for (int s = 0; s < 2; ++s) {
    for (int p = 0; p < side[s]->boundary_size(); ++p) {
      if (visited[s][p] || glue_to[s][p] == -1) continue;
      std::pair<int, int> rep{s, p};
      int cs = s, cp = p;
      do {
        visited[cs][cp] = true;
        int q = side[cs]->pair[cp];
        visited[cs][q] = true;
        rep = std::min(rep, {cs, q});
        rep = std::min(rep, {cs, cp});
        if (glue_to[cs][q] == -1)
          throw KhError(ErrorKind::Internal, "glue_objects: broken cycle trace");
        cp = glue_to[cs][q];
        cs = 1 - cs;
        visited[cs][cp] = true;
      } while (!(cs == s && cp == p));
      out.cycle_reps.push_back(rep);
    }
  }
  std::sort(out.cycle_reps.begin(), out.cycle_reps.end());
  out.m.loops = x.loops + y.loops + static_cast<int>(out.cycle_reps.size());
  return out;
}

}  // namespace

PlanarMatching glue_objects(const PlanarMatching& x, const PlanarMatching& y, const GlueSpec& gs,
                            int* new_cycles) {
  GlueObjectsFull r = glue_objects_impl(x, y, gs);
  if (new_cycles) *new_cycles = static_cast<int>(r.cycle_reps.size());
  return r.m;
}

CobMorphism glue_morphisms(const CobMorphism& f, const CobMorphism& g, const GlueSpec& gs,
                           const Coeff& R) {
  GluedCircles c1 = glued_circles(f.src, f.dst);
  GluedCircles c2 = glued_circles(g.src, g.dst);
  GlueObjectsFull rs = glue_objects_impl(f.src, g.src, gs);
  GlueObjectsFull rd = glue_objects_impl(f.dst, g.dst, gs);
  GluedCircles cR = glued_circles(rs.m, rd.m);

  CobMorphism out = zero_morphism(rs.m, rd.m);
  if (f.is_zero() || g.is_zero()) return out;
  if (cR.count > 62) throw KhError(ErrorKind::SizeCap, "glue_morphisms: too many circles");

  const int n_disks1 = c1.count;
  const int n_disks = c1.count + c2.count;
  DSU dsu(n_disks);
  for (auto& [p0, p1] : gs.glued)
    dsu.unite(c1.circle_of_point[p0], n_disks1 + c2.circle_of_point[p1]);
  std::vector<int> lines_per_root(n_disks, 0);
  for (auto& [p0, p1] : gs.glued) lines_per_root[dsu.find(c1.circle_of_point[p0])] += 1;

  auto disk_of_glued_point = [&](std::pair<int, int> sp) {
    auto [s, p] = sp;
    return s == 0 ? c1.circle_of_point[p] : n_disks1 + c2.circle_of_point[p];
  };

  std::vector<int> disk_of_circle(cR.count, -1);
  for (size_t i = 0; i < gs.result_points.size(); ++i) {
    int c = cR.circle_of_point[i];
    if (disk_of_circle[c] != -1) continue;
    auto [s, p] = gs.result_points[i];
    disk_of_circle[c] = s == 0 ? c1.circle_of_point[p] : n_disks1 + c2.circle_of_point[p];
  }
  // source loops of the result: f.src loops, then g.src loops, then new cycles
  int idx = cR.first_src_loop;
  for (int l = 0; l < f.src.loops; ++l) disk_of_circle[idx++] = c1.first_src_loop + l;
  for (int l = 0; l < g.src.loops; ++l) disk_of_circle[idx++] = n_disks1 + c2.first_src_loop + l;
  for (auto& rep : rs.cycle_reps) disk_of_circle[idx++] = disk_of_glued_point(rep);
  // target loops
  idx = cR.first_dst_loop;
  for (int l = 0; l < f.dst.loops; ++l) disk_of_circle[idx++] = c1.first_dst_loop + l;
  for (int l = 0; l < g.dst.loops; ++l) disk_of_circle[idx++] = n_disks1 + c2.first_dst_loop + l;
  for (auto& rep : rd.cycle_reps) disk_of_circle[idx++] = disk_of_glued_point(rep);

  GlueGeometry geom = finish_geometry(dsu, n_disks, lines_per_root, disk_of_circle);
  expand_terms(geom, f, g, n_disks1, R, out);
  return out;
}

}  // namespace kh

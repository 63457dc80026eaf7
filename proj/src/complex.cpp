#include "kh/complex.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace kh {

uint64_t BasedComplex::add_summand(int deg, Summand s) {
  if (s.id == 0) s.id = fresh_id();
  next_id = std::max(next_id, s.id + 1);
  uint64_t id = s.id;
  spaces[deg][id] = std::move(s);
  if (max_deg < min_deg) {
    min_deg = max_deg = deg;
  } else {
    min_deg = std::min(min_deg, deg);
    max_deg = std::max(max_deg, deg);
  }
  return id;
}

const Summand* BasedComplex::find_summand(int deg, uint64_t id) const {
  auto d = spaces.find(deg);
  if (d == spaces.end()) return nullptr;
  auto it = d->second.find(id);
  return it == d->second.end() ? nullptr : &it->second;
}

void BasedComplex::set_entry(int deg, uint64_t row, uint64_t col, CobMorphism f) {
  if (f.is_zero()) {
    erase_entry(deg, row, col);
    return;
  }
  diff[deg][{row, col}] = std::move(f);
  by_col[deg][col].insert(row);
  by_row[deg][row].insert(col);
}

void BasedComplex::add_to_entry(int deg, uint64_t row, uint64_t col, const CobMorphism& f) {
  if (f.is_zero()) return;
  const CobMorphism* e = entry(deg, row, col);
  if (!e) {
    set_entry(deg, row, col, f);
  } else {
    set_entry(deg, row, col, add(*e, f, ring));
  }
}

const CobMorphism* BasedComplex::entry(int deg, uint64_t row, uint64_t col) const {
  auto d = diff.find(deg);
  if (d == diff.end()) return nullptr;
  auto it = d->second.find({row, col});
  return it == d->second.end() ? nullptr : &it->second;
}

void BasedComplex::erase_entry(int deg, uint64_t row, uint64_t col) {
  auto d = diff.find(deg);
  if (d == diff.end()) return;
  if (d->second.erase({row, col}) == 0) return;
  auto& bc = by_col[deg][col];
  bc.erase(row);
  if (bc.empty()) by_col[deg].erase(col);
  auto& br = by_row[deg][row];
  br.erase(col);
  if (br.empty()) by_row[deg].erase(row);
}

void BasedComplex::remove_summand(int deg, uint64_t id) {
  // outgoing entries (id as column of d^deg)
  if (auto bc = by_col.find(deg); bc != by_col.end()) {
    auto it = bc->second.find(id);
    if (it != bc->second.end()) {
      std::vector<uint64_t> rows(it->second.begin(), it->second.end());
      for (uint64_t r : rows) erase_entry(deg, r, id);
    }
  }
  // incoming entries (id as row of d^{deg-1})
  if (auto br = by_row.find(deg - 1); br != by_row.end()) {
    auto it = br->second.find(id);
    if (it != br->second.end()) {
      std::vector<uint64_t> cols(it->second.begin(), it->second.end());
      for (uint64_t c : cols) erase_entry(deg - 1, id, c);
    }
  }
  spaces[deg].erase(id);
}

size_t BasedComplex::total_rank() const {
  size_t n = 0;
  for (auto& [d, sp] : spaces) n += sp.size();
  return n;
}

long BasedComplex::rank_at(int deg) const {
  auto it = spaces.find(deg);
  return it == spaces.end() ? 0 : static_cast<long>(it->second.size());
}

bool BasedComplex::check_d_squared(std::string* why) const {
  for (auto& [deg, layer] : diff) {
    auto next = diff.find(deg + 1);
    if (next == diff.end()) continue;
    // accumulate d^{deg+1} ∘ d^{deg}
    std::map<SummandKey, CobMorphism> acc;
    for (auto& [key, f] : layer) {
      auto& [mid, src] = key;
      auto br = by_col.find(deg + 1);
      if (br == by_col.end()) continue;
      auto rows = br->second.find(mid);
      if (rows == br->second.end()) continue;
      for (uint64_t top : rows->second) {
        const CobMorphism* g = entry(deg + 1, top, mid);
        CobMorphism comp = compose_h(*g, f, ring);
        auto it = acc.find({top, src});
        if (it == acc.end())
          acc.emplace(SummandKey{top, src}, std::move(comp));
        else
          it->second = add(it->second, comp, ring);
      }
    }
    for (auto& [key, f] : acc) {
      if (!f.is_zero()) {
        if (why)
          *why = "d^2 != 0 at degree " + std::to_string(deg) + " entry (" +
                 std::to_string(key.first) + "," + std::to_string(key.second) + ")";
        return false;
      }
    }
  }
  return true;
}

bool BasedComplex::check_homogeneous(std::string* why) const {
  for (auto& [deg, layer] : diff) {
    for (auto& [key, f] : layer) {
      const Summand* dst = find_summand(deg + 1, key.first);
      const Summand* src = find_summand(deg, key.second);
      if (!src || !dst) {
        if (why) *why = "dangling entry";
        return false;
      }
      GluedCircles g = glued_circles(f.src, f.dst);
      for (auto& [mask, c] : f.terms) {
        int d = term_degree(g, f.src.boundary_size(), mask);
        if (d + dst->q - src->q != 0) {
          if (why) *why = "inhomogeneous entry at degree " + std::to_string(deg);
          return false;
        }
      }
    }
  }
  return true;
}

void gaussian_eliminate(BasedComplex& C, int degree, uint64_t row_id, uint64_t col_id) {
  const CobMorphism* phi = C.entry(degree, row_id, col_id);
  if (!phi) throw KhError(ErrorKind::Internal, "gaussian_eliminate: missing pivot");
  Int u;
  if (!is_identity_multiple(*phi, &u) || !C.ring.is_unit(u))
    throw KhError(ErrorKind::Internal, "gaussian_eliminate: pivot not an invertible identity");
  Int uinv = C.ring.inverse(u);

  std::vector<std::pair<uint64_t, CobMorphism>> gammas;  // rows r != row with entry (r, col)
  if (auto bc = C.by_col.find(degree); bc != C.by_col.end()) {
    auto it = bc->second.find(col_id);
    if (it != bc->second.end())
      for (uint64_t r : it->second)
        if (r != row_id) gammas.emplace_back(r, *C.entry(degree, r, col_id));
  }
  std::vector<std::pair<uint64_t, CobMorphism>> deltas;  // cols c != col with entry (row, c)
  if (auto br = C.by_row.find(degree); br != C.by_row.end()) {
    auto it = br->second.find(row_id);
    if (it != br->second.end())
      for (uint64_t c : it->second)
        if (c != col_id) deltas.emplace_back(c, *C.entry(degree, row_id, c));
  }
  for (auto& [r, gamma] : gammas) {
    for (auto& [c, delta] : deltas) {
      CobMorphism corr = scale(compose_h(gamma, delta, C.ring), -uinv, C.ring);
      C.add_to_entry(degree, r, c, corr);
    }
  }
  C.remove_summand(degree, col_id);
  C.remove_summand(degree + 1, row_id);
}

void validate_morse_matching(const BasedComplex& C, const MorseMatching& M) {
  std::set<std::pair<int, uint64_t>> touched;
  for (auto& e : M.edges) {
    if (!touched.insert({e.degree, e.source_id}).second ||
        !touched.insert({e.degree + 1, e.target_id}).second)
      throw KhError(ErrorKind::Internal, "morse matching: condition (2) failed (edges adjacent)");
    const CobMorphism* f = C.entry(e.degree, e.target_id, e.source_id);
    Int u;
    if (!f || !is_identity_multiple(*f, &u) || !C.ring.is_unit(u))
      throw KhError(ErrorKind::Internal,
                    "morse matching: condition (3) failed (entry not invertible)");
  }
  // condition (4): no zig-zag cycles between adjacent degrees
  std::map<int, std::vector<MorseEdge>> per_degree;
  for (auto& e : M.edges) per_degree[e.degree].push_back(e);
  for (auto& [deg, edges] : per_degree) {
    auto layer = C.diff.find(deg);
    if (layer == C.diff.end()) continue;
    std::set<SummandKey> reversed;
    for (auto& e : edges) reversed.insert({e.target_id, e.source_id});
    // nodes: (0, lower id) and (1, upper id); forward edges lower->upper except reversed
    std::map<std::pair<int, uint64_t>, std::vector<std::pair<int, uint64_t>>> adj;
    std::map<std::pair<int, uint64_t>, int> indeg;
    for (auto& [key, f] : layer->second) {
      auto [row, col] = key;
      std::pair<int, uint64_t> lo{0, col}, hi{1, row};
      if (reversed.count(key)) {
        adj[hi].push_back(lo);
        indeg[lo]++;
        indeg.try_emplace(hi, indeg[hi]);
      } else {
        adj[lo].push_back(hi);
        indeg[hi]++;
        indeg.try_emplace(lo, indeg[lo]);
      }
    }
    std::deque<std::pair<int, uint64_t>> q;
    for (auto& [n, d] : indeg)
      if (d == 0) q.push_back(n);
    size_t seen = 0;
    while (!q.empty()) {
      auto n = q.front();
      q.pop_front();
      ++seen;
      for (auto& m : adj[n])
        if (--indeg[m] == 0) q.push_back(m);
    }
    if (seen != indeg.size())
      throw KhError(ErrorKind::Internal, "morse matching: condition (4) failed (zig-zag cycle)");
  }
}

void morse_reduce(BasedComplex& C, const MorseMatching& M) {
  validate_morse_matching(C, M);
  std::vector<MorseEdge> edges = M.edges;
  std::sort(edges.begin(), edges.end(), [](const MorseEdge& a, const MorseEdge& b) {
    return std::tie(a.degree, a.source_id, a.target_id) <
           std::tie(b.degree, b.source_id, b.target_id);
  });
  for (auto& e : edges) gaussian_eliminate(C, e.degree, e.target_id, e.source_id);
}

void truncate(BasedComplex& C, int k) {
  std::vector<int> degrees;
  for (auto& [d, sp] : C.spaces)
    if (d > k) degrees.push_back(d);
  for (int d : degrees) {
    C.spaces.erase(d);
    C.diff.erase(d);
    C.by_col.erase(d);
    C.by_row.erase(d);
  }
  C.diff.erase(k);
  C.by_col.erase(k);
  C.by_row.erase(k);
  // also drop the layer below the removed spaces' entries
  for (auto it = C.diff.begin(); it != C.diff.end();) {
    if (it->first > k) {
      C.by_col.erase(it->first);
      C.by_row.erase(it->first);
      it = C.diff.erase(it);
    } else {
      ++it;
    }
  }
  if (C.max_deg > k) C.max_deg = k;
  if (C.min_deg > C.max_deg) {
    C.min_deg = 0;
    C.max_deg = -1;
  }
}

static uint64_t drop_bit(uint64_t mask, int bit) {
  uint64_t low = mask & ((uint64_t(1) << bit) - 1);
  uint64_t high = (mask >> (bit + 1)) << bit;
  return low | high;
}

// Deloops loop 0 of the summand; returns (q+1 child, q-1 child).
static std::pair<uint64_t, uint64_t> deloop_one(BasedComplex& C, int deg, uint64_t id) {
  Summand parent = *C.find_summand(deg, id);
  PlanarMatching child_m = parent.m;
  child_m.loops -= 1;

  Summand s1 = parent, sx = parent;
  s1.id = C.fresh_id();
  s1.q = parent.q + 1;
  s1.m = child_m;
  sx.id = C.fresh_id();
  sx.q = parent.q - 1;
  sx.m = child_m;
  C.add_summand(deg, s1);
  C.add_summand(deg, sx);

  // incoming entries: f into parent splits by the dot on the loop circle
  if (auto br = C.by_row.find(deg - 1); br != C.by_row.end()) {
    auto it = br->second.find(id);
    if (it != br->second.end()) {
      std::vector<uint64_t> cols(it->second.begin(), it->second.end());
      for (uint64_t c : cols) {
        CobMorphism f = *C.entry(deg - 1, id, c);
        GluedCircles g = glued_circles(f.src, f.dst);
        int bit = g.first_dst_loop;  // loop 0 of the target
        CobMorphism f1 = zero_morphism(f.src, child_m), fx = zero_morphism(f.src, child_m);
        for (auto& [mask, coeff] : f.terms) {
          if (mask & (uint64_t(1) << bit))
            fx.terms[drop_bit(mask, bit)] = coeff;  // dotted cap keeps dotted terms
          else
            f1.terms[drop_bit(mask, bit)] = coeff;
        }
        C.set_entry(deg - 1, s1.id, c, std::move(f1));
        C.set_entry(deg - 1, sx.id, c, std::move(fx));
      }
    }
  }
  // outgoing entries: f out of parent splits by the dot on the source loop circle
  if (auto bc = C.by_col.find(deg); bc != C.by_col.end()) {
    auto it = bc->second.find(id);
    if (it != bc->second.end()) {
      std::vector<uint64_t> rows(it->second.begin(), it->second.end());
      for (uint64_t r : rows) {
        CobMorphism f = *C.entry(deg, r, id);
        GluedCircles g = glued_circles(f.src, f.dst);
        int bit = g.first_src_loop;
        CobMorphism f1 = zero_morphism(child_m, f.dst), fx = zero_morphism(child_m, f.dst);
        for (auto& [mask, coeff] : f.terms) {
          if (mask & (uint64_t(1) << bit))
            f1.terms[drop_bit(mask, bit)] = coeff;  // undotted cup keeps dotted terms
          else
            fx.terms[drop_bit(mask, bit)] = coeff;
        }
        C.set_entry(deg, r, s1.id, std::move(f1));
        C.set_entry(deg, r, sx.id, std::move(fx));
      }
    }
  }
  C.remove_summand(deg, id);
  return {s1.id, sx.id};
}

std::vector<uint64_t> deloop_summand(BasedComplex& C, int deg, uint64_t id) {
  const Summand* s = C.find_summand(deg, id);
  if (!s) throw KhError(ErrorKind::Internal, "deloop_summand: no such summand");
  int loops = s->m.loops;
  std::vector<uint64_t> out{id};
  for (int l = 0; l < loops; ++l) {
    std::vector<uint64_t> next(out.size() * 2);
    for (size_t i = 0; i < out.size(); ++i) {
      auto [c1, cx] = deloop_one(C, deg, out[i]);
      next[i] = c1;                  // branch bit l = 0
      next[i + out.size()] = cx;     // branch bit l = 1
    }
    out.swap(next);
  }
  return out;
}

void deloop_all(BasedComplex& C) {
  for (auto& [deg, sp] : C.spaces) {
    std::vector<uint64_t> todo;
    for (auto& [id, s] : sp)
      if (s.m.loops > 0) todo.push_back(id);
    for (uint64_t id : todo) deloop_summand(C, deg, id);
  }
}

DeloopResult deloop_object(const GradedObject& X) {
  DeloopResult out;
  out.d.source = X;
  out.r.target = X;
  for (size_t k = 0; k < X.s.size(); ++k) {
    const Summand& parent = X.s[k];
    int L = parent.m.loops;
    PlanarMatching bare = parent.m;
    bare.loops = 0;
    PlanarMatching withloops = parent.m;
    GluedCircles gd = glued_circles(withloops, bare);  // for d: parent -> child
    GluedCircles gr = glued_circles(bare, withloops);  // for r: child -> parent
    for (uint64_t branch = 0; branch < (uint64_t(1) << L); ++branch) {
      Summand child;
      child.q = parent.q + L - 2 * std::popcount(branch);
      child.m = bare;
      child.id = branch;
      size_t row = out.object.s.size();
      out.object.s.push_back(child);
      CobMorphism d = zero_morphism(withloops, bare);
      uint64_t dmask = 0;
      for (int l = 0; l < L; ++l)
        if (!(branch & (uint64_t(1) << l))) dmask |= uint64_t(1) << (gd.first_src_loop + l);
      d.terms[dmask] = 1;
      out.d.entries[{row, k}] = d;
      CobMorphism r = zero_morphism(bare, withloops);
      uint64_t rmask = 0;
      for (int l = 0; l < L; ++l)
        if (branch & (uint64_t(1) << l)) rmask |= uint64_t(1) << (gr.first_dst_loop + l);
      r.terms[rmask] = 1;
      out.r.entries[{k, row}] = r;
    }
  }
  out.d.target = out.object;
  out.r.source = out.object;
  return out;
}

MorphismMatrix matrix_compose(const MorphismMatrix& g, const MorphismMatrix& f, const Coeff& R) {
  MorphismMatrix out;
  out.source = f.source;
  out.target = g.target;
  for (auto& [kg, mg] : g.entries) {
    for (auto& [kf, mf] : f.entries) {
      if (kg.second != kf.first) continue;
      CobMorphism c = compose_h(mg, mf, R);
      if (c.is_zero()) continue;
      std::pair<size_t, size_t> key{kg.first, kf.second};
      auto it = out.entries.find(key);
      if (it == out.entries.end())
        out.entries.emplace(key, std::move(c));
      else {
        it->second = add(it->second, c, R);
        if (it->second.is_zero()) out.entries.erase(it);
      }
    }
  }
  return out;
}

}  // namespace kh

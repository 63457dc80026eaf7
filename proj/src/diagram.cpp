#include "kh/diagram.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kh {

int BraidWord::n_plus() const {
  int c = 0;
  for (int l : letters) c += l > 0;
  return c;
}
int BraidWord::n_minus() const {
  int c = 0;
  for (int l : letters) c += l < 0;
  return c;
}

BraidWord parse_braid(const std::string& text) {
  BraidWord b;
  std::istringstream is(text);
  std::string tok;
  int explicit_strands = 0;
  int max_idx = 1;
  int position = 0;
  while (is >> tok) {
    ++position;
    if (tok.rfind("strands=", 0) == 0) {
      try {
        explicit_strands = std::stoi(tok.substr(8));
      } catch (...) {
        throw KhError(ErrorKind::Parse, "bad strands= value at token " + std::to_string(position));
      }
      if (explicit_strands < 2) throw KhError(ErrorKind::Parse, "strands must be >= 2");
      continue;
    }
    int v;
    try {
      size_t used = 0;
      v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (...) {
      throw KhError(ErrorKind::Parse,
                    "braid syntax error at token " + std::to_string(position) + ": '" + tok + "'");
    }
    if (v == 0) throw KhError(ErrorKind::Parse, "braid letter 0 at token " + std::to_string(position));
    b.letters.push_back(v);
    max_idx = std::max(max_idx, std::abs(v));
  }
  b.strands = explicit_strands ? explicit_strands : max_idx + 1;
  for (int l : b.letters)
    if (std::abs(l) >= b.strands)
      throw KhError(ErrorKind::Parse, "generator index " + std::to_string(l) + " out of range for " +
                                          std::to_string(b.strands) + " strands");
  return b;
}

BraidWord mirror_word(const BraidWord& b) {
  BraidWord m = b;
  for (int& l : m.letters) l = -l;
  return m;
}

BraidWord inverse_word(const BraidWord& b) {
  BraidWord m = b;
  std::reverse(m.letters.begin(), m.letters.end());
  for (int& l : m.letters) l = -l;
  return m;
}

BraidWord conjugate_for_scan(const BraidWord& b) {
  BraidWord out;
  out.strands = b.strands;
  for (int i = 1; i < b.strands; ++i) out.letters.push_back(i);
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  for (int i = b.strands - 1; i >= 1; --i) out.letters.push_back(-i);
  return out;
}

std::array<int, 4> page_pairing(const Crossing& c, int page) {
  static const std::array<int, 4> sm0{3, 2, 1, 0};
  static const std::array<int, 4> sm1{1, 0, 3, 2};
  bool zero_first = c.sign > 0;
  if (page == 0) return zero_first ? sm0 : sm1;
  return zero_first ? sm1 : sm0;
}

LinkDiagram braid_closure(const BraidWord& b) {
  LinkDiagram L;
  int next_arc = 0;
  std::vector<int> top(b.strands), pos(b.strands);
  for (int p = 0; p < b.strands; ++p) top[p] = pos[p] = next_arc++;
  std::vector<bool> touched(b.strands, false);
  for (int letter : b.letters) {
    int i = std::abs(letter) - 1;  // 0-based position of the left strand
    touched[i] = touched[i + 1] = true;
    int in_left = pos[i], in_right = pos[i + 1];
    int out_left = next_arc++, out_right = next_arc++;
    Crossing c;
    c.sign = letter > 0 ? 1 : -1;
    if (letter > 0)
      c.arcs = {in_right, in_left, out_left, out_right};  // NE, NW, SW, SE
    else
      c.arcs = {in_left, out_left, out_right, in_right};  // NW, SW, SE, NE
    L.crossings.push_back(c);
    pos[i] = out_left;
    pos[i + 1] = out_right;
    (c.sign > 0 ? L.n_plus : L.n_minus) += 1;
  }
  // close: identify the bottom arc of each strand with its top arc
  std::vector<int> remap(next_arc);
  std::iota(remap.begin(), remap.end(), 0);
  auto root = [&](int a) {
    while (remap[a] != a) a = remap[a] = remap[remap[a]];
    return a;
  };
  for (int p = 0; p < b.strands; ++p) {
    if (!touched[p]) {
      L.free_circles += 1;
      continue;
    }
    remap[root(pos[p])] = root(top[p]);
  }
  std::map<int, int> compact;
  for (auto& c : L.crossings)
    for (int& a : c.arcs) {
      int r = root(a);
      auto it = compact.find(r);
      if (it == compact.end()) it = compact.emplace(r, static_cast<int>(compact.size())).first;
      a = it->second;
    }
  L.n_arcs = static_cast<int>(compact.size());
  return L;
}

LinkDiagram mirror_diagram(const LinkDiagram& L) {
  LinkDiagram M = L;
  M.n_plus = L.n_minus;
  M.n_minus = L.n_plus;
  for (auto& c : M.crossings) {
    c.sign = -c.sign;
    c.arcs = {c.arcs[0], c.arcs[3], c.arcs[2], c.arcs[1]};
  }
  return M;
}

LinkDiagram diagram_from_pd_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw KhError(ErrorKind::Parse, std::string("PD JSON parse error: ") + e.what());
  }
  LinkDiagram L;
  if (!j.contains("crossings")) throw KhError(ErrorKind::Parse, "PD JSON missing 'crossings'");
  std::map<long, int> arc_ids;
  std::map<int, int> seen;
  for (auto& e : j["crossings"]) {
    if (!e.is_array() || e.size() != 5)
      throw KhError(ErrorKind::Parse, "PD crossing must be [a,b,c,d,sign]");
    Crossing c;
    int sign = e[4].get<int>();
    if (sign != 1 && sign != -1) throw KhError(ErrorKind::Parse, "PD sign must be +-1");
    c.sign = sign;
    for (int s = 0; s < 4; ++s) {
      long label = e[s].get<long>();
      auto it = arc_ids.find(label);
      if (it == arc_ids.end()) it = arc_ids.emplace(label, static_cast<int>(arc_ids.size())).first;
      c.arcs[s] = it->second;
      seen[it->second] += 1;
    }
    L.crossings.push_back(c);
    (sign > 0 ? L.n_plus : L.n_minus) += 1;
  }
  for (auto& [a, cnt] : seen)
    if (cnt != 2) throw KhError(ErrorKind::Parse, "PD arc label does not appear exactly twice");
  L.n_arcs = static_cast<int>(arc_ids.size());
  if (j.contains("free_circles")) L.free_circles = j["free_circles"].get<int>();
  return L;
}

std::string diagram_to_pd_json(const LinkDiagram& L) {
  nlohmann::json j;
  j["crossings"] = nlohmann::json::array();
  for (auto& c : L.crossings)
    j["crossings"].push_back({c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3], c.sign});
  if (L.free_circles) j["free_circles"] = L.free_circles;
  return j.dump();
}

std::vector<std::vector<int>> crossing_graph_components(const LinkDiagram& L) {
  int n = L.n();
  std::vector<std::vector<int>> by_arc(L.n_arcs);
  for (int i = 0; i < n; ++i)
    for (int a : L.crossings[i].arcs) by_arc[a].push_back(i);
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (comp[i] != -1) continue;
    std::vector<int> stack{i}, members;
    comp[i] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int a : L.crossings[v].arcs)
        for (int w : by_arc[a])
          if (comp[w] == -1) {
            comp[w] = comp[i];
            stack.push_back(w);
          }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

LinkDiagram sub_diagram(const LinkDiagram& L, const std::vector<int>& crossing_ids) {
  LinkDiagram S;
  std::map<int, int> arc_map;
  for (int id : crossing_ids) {
    Crossing c = L.crossings[id];
    for (int& a : c.arcs) {
      auto it = arc_map.find(a);
      if (it == arc_map.end()) it = arc_map.emplace(a, static_cast<int>(arc_map.size())).first;
      a = it->second;
    }
    S.crossings.push_back(c);
    (c.sign > 0 ? S.n_plus : S.n_minus) += 1;
  }
  S.n_arcs = static_cast<int>(arc_map.size());
  return S;
}

namespace {

// side split of the crossing graph after deleting vertex v; -1 if still connected
std::vector<int> split_sides(const LinkDiagram& L, int v) {
  int n = L.n();
  std::vector<std::vector<int>> by_arc(L.n_arcs);
  for (int i = 0; i < n; ++i)
    if (i != v)
      for (int a : L.crossings[i].arcs) by_arc[a].push_back(i);
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (i == v || comp[i] != -1) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int a : L.crossings[x].arcs)
        for (int w : by_arc[a])
          if (w != v && comp[w] == -1) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
    }
    ++ncomp;
  }
  if (ncomp <= 1) return {};
  return comp;
}

LinkDiagram remove_crossing(const LinkDiagram& L, int v, const std::array<int, 2>& join_a,
                            const std::array<int, 2>& join_b, bool circle_a, bool circle_b) {
  LinkDiagram R;
  R.free_circles = L.free_circles + (circle_a ? 1 : 0) + (circle_b ? 1 : 0);
  auto rename = [&](int a) {
    if (!circle_a && a == join_a[1]) return join_a[0];
    if (!circle_b && a == join_b[1]) return join_b[0];
    return a;
  };
  for (int i = 0; i < L.n(); ++i) {
    if (i == v) continue;
    Crossing c = L.crossings[i];
    for (int& a : c.arcs) a = rename(a);
    R.crossings.push_back(c);
    (c.sign > 0 ? R.n_plus : R.n_minus) += 1;
  }
  // compact arc ids
  std::map<int, int> compact;
  for (auto& c : R.crossings)
    for (int& a : c.arcs) {
      auto it = compact.find(a);
      if (it == compact.end()) it = compact.emplace(a, static_cast<int>(compact.size())).first;
      a = it->second;
    }
  R.n_arcs = static_cast<int>(compact.size());
  return R;
}

}  // namespace

LinkDiagram reduce_nugatory(const LinkDiagram& L0) {
  if (L0.free_circles > 0 && L0.n() > 0)
    throw KhError(ErrorKind::Capability, "reduce_nugatory: disconnected input (free circles)");
  if (crossing_graph_components(L0).size() > 1)
    throw KhError(ErrorKind::Capability, "reduce_nugatory: disconnected input");
  LinkDiagram L = L0;
  bool changed = true;
  while (changed && L.n() > 0) {
    changed = false;
    // R1 kinks first: an arc occupying two slots of one crossing
    for (int v = 0; v < L.n() && !changed; ++v) {
      const auto& arcs = L.crossings[v].arcs;
      for (int s = 0; s < 4 && !changed; ++s)
        for (int t = s + 1; t < 4 && !changed; ++t) {
          if (arcs[s] != arcs[t]) continue;
          int o1 = -1, o2 = -1;
          for (int u = 0; u < 4; ++u)
            if (u != s && u != t) (o1 == -1 ? o1 : o2) = u;
          bool circle = arcs[o1] == arcs[o2];
          L = remove_crossing(L, v, {arcs[o1], arcs[o2]}, {arcs[o1], arcs[o1]}, circle, false);
          changed = true;
        }
    }
    if (changed) continue;
    // cut vertices
    for (int v = 0; v < L.n() && !changed; ++v) {
      std::vector<int> comp = split_sides(L, v);
      if (comp.empty()) continue;
      // attribute each slot's arc to a side via its other endpoint
      std::array<int, 4> side{};
      for (int s = 0; s < 4; ++s) {
        int a = L.crossings[v].arcs[s];
        side[s] = -1;
        for (int i = 0; i < L.n() && side[s] == -1; ++i) {
          if (i == v) continue;
          for (int u = 0; u < 4; ++u)
            if (L.crossings[i].arcs[u] == a) {
              side[s] = comp[i];
              break;
            }
        }
      }
      std::vector<int> sa, sb;
      for (int s = 0; s < 4; ++s) (side[s] == side[0] ? sa : sb).push_back(s);
      if (sa.size() != 2 || sb.size() != 2)
        throw KhError(ErrorKind::Internal, "nugatory removal: side split not 2+2");
      const auto& arcs = L.crossings[v].arcs;
      bool ca = arcs[sa[0]] == arcs[sa[1]];
      bool cb = arcs[sb[0]] == arcs[sb[1]];
      L = remove_crossing(L, v, {arcs[sa[0]], arcs[sa[1]]}, {arcs[sb[0]], arcs[sb[1]]}, ca, cb);
      changed = true;
    }
  }
  return L;
}

LinkingData linking_data(const LinkDiagram& L) {
  LinkingData out;
  std::vector<int> parent(L.n_arcs);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (auto& c : L.crossings) {
    parent[find(c.arcs[0])] = find(c.arcs[2]);
    parent[find(c.arcs[1])] = find(c.arcs[3]);
  }
  std::map<int, int> comp_id;
  for (int a = 0; a < L.n_arcs; ++a) {
    int r = find(a);
    if (!comp_id.count(r)) comp_id[r] = static_cast<int>(comp_id.size());
  }
  out.components = static_cast<int>(comp_id.size()) + L.free_circles;
  out.lk.assign(out.components, std::vector<Int>(out.components, 0));
  std::vector<std::vector<Int>> twice = out.lk;
  for (auto& c : L.crossings) {
    int ca = comp_id[find(c.arcs[0])];
    int cb = comp_id[find(c.arcs[1])];
    out.component_of_crossing_under.push_back(ca);
    out.component_of_crossing_over.push_back(cb);
    if (ca != cb) {
      twice[ca][cb] += c.sign;
      twice[cb][ca] += c.sign;
    }
  }
  for (int i = 0; i < out.components; ++i)
    for (int j = 0; j < out.components; ++j) {
      if (twice[i][j] % 2 != 0)
        throw KhError(ErrorKind::Internal, "linking number not an integer");
      out.lk[i][j] = twice[i][j] / 2;
    }
  return out;
}

namespace {

// boundary cycle splice for gluing crossing `x` whose arcs-to-subtangle are
// `glue_arcs`; returns the new cycle or nullopt on geometric failure
struct SpliceResult {
  ScanStep step;
  std::vector<int> new_cycle;  // arc ids
  bool ok = false;
};

SpliceResult try_splice(const std::vector<int>& cycle, const Crossing& c,
                        const std::set<int>& consumed_arcs_of_x) {
  SpliceResult out;
  const int m = static_cast<int>(cycle.size());
  std::vector<int> positions;  // positions in cycle holding glued arcs
  std::set<int> glue_set;
  for (int s = 0; s < 4; ++s)
    if (consumed_arcs_of_x.count(c.arcs[s])) glue_set.insert(c.arcs[s]);
  for (int p = 0; p < m; ++p)
    if (glue_set.count(cycle[p])) positions.push_back(p);
  const int k = static_cast<int>(positions.size());
  if (k == 0 || static_cast<int>(glue_set.size()) != k) return out;
  // block must be cyclically consecutive; find its start
  int start = -1;
  if (k == m) {
    start = 0;
  } else {
    for (int p : positions) {
      int prev = (p + m - 1) % m;
      if (!glue_set.count(cycle[prev])) {
        if (start != -1) return out;  // two blocks
        start = p;
      }
    }
    if (start == -1) return out;
    for (int i = 0; i < k; ++i)
      if (!glue_set.count(cycle[(start + i) % m])) return out;
  }
  // block arcs in cycle order
  std::vector<int> block(k);
  for (int i = 0; i < k; ++i) block[i] = cycle[(start + i) % m];
  // on the crossing the same arcs must appear cyclically consecutive, reversed
  int cstart = -1;
  for (int s = 0; s < 4; ++s) {
    bool match = true;
    for (int i = 0; i < k && match; ++i)
      if (c.arcs[(s + i) % 4] != block[k - 1 - i]) match = false;
    if (match) {
      cstart = s;
      break;
    }
  }
  if (cstart == -1) return out;

  ScanStep& st = out.step;
  st.type = (k == 4) ? 4 : k;
  // glued pairs: block position i holds arc block[i] at crossing slot (cstart + k-1-i) mod 4
  for (int i = 0; i < k; ++i)
    st.glued.emplace_back((start + i) % m, (cstart + k - 1 - i) % 4);
  // result: old points before the block, then the crossing's free slots
  for (int i = k; i < m; ++i) {
    int p = (start + i) % m;
    st.result_points.emplace_back(0, p);
    out.new_cycle.push_back(cycle[p]);
  }
  for (int i = k; i < 4; ++i) {
    int s = (cstart + i) % 4;
    st.result_points.emplace_back(1, s);
    out.new_cycle.push_back(c.arcs[s]);
  }
  out.ok = true;
  return out;
}

}  // namespace

ScanSequence sequence_from_order(const LinkDiagram& L, const std::vector<int>& order) {
  const int n = L.n();
  if (static_cast<int>(order.size()) != n || n < 2)
    throw KhError(ErrorKind::Internal, "sequence_from_order: bad order size");
  ScanSequence seq;
  seq.order = order;
  std::vector<int> cycle;
  std::set<int> boundary_arcs;
  {
    const Crossing& c0 = L.crossings[order[0]];
    for (int s = 0; s < 4; ++s) {
      cycle.push_back(c0.arcs[s]);
      if (boundary_arcs.count(c0.arcs[s]))
        throw KhError(ErrorKind::Internal, "scan sequence: first crossing has a kink");
      boundary_arcs.insert(c0.arcs[s]);
    }
  }
  seq.girth = 4;
  for (int t = 1; t < n; ++t) {
    const Crossing& c = L.crossings[order[t]];
    SpliceResult sp = try_splice(cycle, c, boundary_arcs);
    if (!sp.ok)
      throw KhError(ErrorKind::Internal,
                    "scan sequence: crossing " + std::to_string(order[t]) +
                        " does not glue as a simple planar arc diagram");
    if (t < n - 1 && sp.step.type == 4)
      throw KhError(ErrorKind::Internal, "scan sequence: premature Type IV gluing");
    if (t == n - 1 && sp.step.type != 4)
      throw KhError(ErrorKind::Internal, "scan sequence: last gluing not Type IV");
    sp.step.crossing = order[t];
    seq.steps.push_back(sp.step);
    cycle = sp.new_cycle;
    boundary_arcs.clear();
    for (int a : cycle) boundary_arcs.insert(a);
    seq.girth = std::max(seq.girth, static_cast<int>(cycle.size()));
  }
  if (!cycle.empty())
    throw KhError(ErrorKind::Internal, "scan sequence: boundary not closed after last crossing");
  return seq;
}

ScanSequence nice_scanning_sequence(const LinkDiagram& L) {
  const int n = L.n();
  if (n < 2) throw KhError(ErrorKind::Capability, "nice_scanning_sequence: need >= 2 crossings");
  if (L.free_circles > 0 || crossing_graph_components(L).size() != 1)
    throw KhError(ErrorKind::Capability, "nice_scanning_sequence: diagram not connected");
  for (int v = 0; v < n; ++v) {
    if (!split_sides(L, v).empty())
      throw KhError(ErrorKind::Capability,
                    "nice_scanning_sequence: crossing graph not 2-connected, separating crossing " +
                        std::to_string(v) + " (unremoved nugatory crossing)");
  }
  // adjacency over arcs
  std::vector<std::vector<int>> by_arc(L.n_arcs);
  for (int i = 0; i < n; ++i)
    for (int a : L.crossings[i].arcs) by_arc[a].push_back(i);
  auto connected_without = [&](const std::vector<bool>& consumed, int extra) {
    int first = -1, count = 0;
    for (int i = 0; i < n; ++i)
      if (!consumed[i] && i != extra) {
        if (first == -1) first = i;
        ++count;
      }
    if (count == 0) return true;
    std::vector<bool> vis(n, false);
    std::vector<int> stack{first};
    vis[first] = true;
    int seen = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int a : L.crossings[v].arcs)
        for (int w : by_arc[a])
          if (!vis[w] && !consumed[w] && w != extra) {
            vis[w] = true;
            ++seen;
            stack.push_back(w);
          }
    }
    return seen == count;
  };

  std::vector<bool> consumed(n, false);
  std::vector<int> order{0};
  consumed[0] = true;
  std::vector<int> cycle;
  std::set<int> boundary_arcs;
  for (int s = 0; s < 4; ++s) {
    if (boundary_arcs.count(L.crossings[0].arcs[s]))
      throw KhError(ErrorKind::Internal, "nice_scanning_sequence: kink in reduced diagram");
    cycle.push_back(L.crossings[0].arcs[s]);
    boundary_arcs.insert(L.crossings[0].arcs[s]);
  }
  ScanSequence seq;
  seq.girth = 4;
  for (int t = 1; t < n; ++t) {
    int best = -1;
    SpliceResult best_res;
    for (int x = 0; x < n; ++x) {
      if (consumed[x]) continue;
      bool adjacent = false;
      for (int a : L.crossings[x].arcs)
        if (boundary_arcs.count(a)) adjacent = true;
      if (!adjacent) continue;
      if (t < n - 1 && !connected_without(consumed, x)) continue;
      SpliceResult sp = try_splice(cycle, L.crossings[x], boundary_arcs);
      if (!sp.ok) continue;
      if (t < n - 1 && sp.step.type == 4) continue;
      if (best == -1 || sp.new_cycle.size() < best_res.new_cycle.size()) {
        best = x;
        best_res = sp;
      }
    }
    if (best == -1)
      throw KhError(ErrorKind::Internal, "nice_scanning_sequence: greedy step failed");
    best_res.step.crossing = best;
    consumed[best] = true;
    order.push_back(best);
    seq.steps.push_back(best_res.step);
    cycle = best_res.new_cycle;
    boundary_arcs.clear();
    for (int a : cycle) boundary_arcs.insert(a);
    seq.girth = std::max(seq.girth, static_cast<int>(cycle.size()));
  }
  seq.order = order;
  return seq;
}

}  // namespace kh

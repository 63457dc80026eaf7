#include "kh/homology.hpp"

#include <json.hpp>

#include <sstream>

namespace kh {

GroupData group_from_invariants(long free_rank, const std::vector<Int>& invariant_factors) {
  GroupData g;
  g.free_rank = free_rank;
  for (const Int& d : invariant_factors) {
    if (d <= 1) continue;
    for (const Int& pk : factor_prime_powers(d)) g.torsion[pk] += 1;
  }
  return g;
}

void HomologyTable::add(int i, int j, const GroupData& g) {
  if (g.trivial()) return;
  GroupData& slot = groups[{i, j}];
  slot.free_rank += g.free_rank;
  for (auto& [pk, m] : g.torsion) slot.torsion[pk] += m;
}

long HomologyTable::total_rank() const {
  long r = 0;
  for (auto& [ij, g] : groups) r += g.free_rank;
  return r;
}

HomologyTable shift_table(const HomologyTable& t, int di, int dj) {
  HomologyTable out;
  out.coeff_mod = t.coeff_mod;
  if (t.row_lo) out.row_lo = *t.row_lo + di;
  if (t.row_hi) out.row_hi = *t.row_hi + di;
  for (auto& [ij, g] : t.groups) out.groups[{ij.first + di, ij.second + dj}] = g;
  return out;
}

HomologyTable dualize(const HomologyTable& t) {
  HomologyTable out;
  out.coeff_mod = t.coeff_mod;
  if (t.row_hi) out.row_lo = -*t.row_hi;
  if (t.row_lo) out.row_hi = -*t.row_lo;
  for (auto& [ij, g] : t.groups) {
    auto [i, j] = ij;
    if (g.free_rank > 0) {
      GroupData& slot = out.groups[{-i, -j}];
      slot.free_rank += g.free_rank;
    }
    if (t.coeff_mod == 0) {
      for (auto& [pk, m] : g.torsion) out.groups[{1 - i, -j}].torsion[pk] += m;
    }
  }
  // drop accidental trivial slots
  for (auto it = out.groups.begin(); it != out.groups.end();)
    it = it->second.trivial() ? out.groups.erase(it) : std::next(it);
  return out;
}

namespace {

GroupData tensor_groups(const GroupData& a, const GroupData& b) {
  GroupData out;
  out.free_rank = a.free_rank * b.free_rank;
  for (auto& [pk, m] : b.torsion) out.torsion[pk] += a.free_rank * m;
  for (auto& [pk, m] : a.torsion) out.torsion[pk] += b.free_rank * m;
  for (auto& [pa, ma] : a.torsion)
    for (auto& [pb, mb] : b.torsion) {
      Int g = int_gcd(pa, pb);
      if (g > 1) out.torsion[g] += ma * mb;
    }
  return out;
}

GroupData tor_groups(const GroupData& a, const GroupData& b) {
  GroupData out;
  for (auto& [pa, ma] : a.torsion)
    for (auto& [pb, mb] : b.torsion) {
      Int g = int_gcd(pa, pb);
      if (g > 1) out.torsion[g] += ma * mb;
    }
  return out;
}

}  // namespace

HomologyTable kunneth(const HomologyTable& a, const HomologyTable& b) {
  HomologyTable out;
  out.coeff_mod = a.coeff_mod;
  if (a.coeff_mod != b.coeff_mod) throw KhError(ErrorKind::Internal, "kunneth: coefficient clash");
  for (auto& [ij_a, ga] : a.groups)
    for (auto& [ij_b, gb] : b.groups) {
      out.add(ij_a.first + ij_b.first, ij_a.second + ij_b.second, tensor_groups(ga, gb));
      if (a.coeff_mod == 0)
        out.add(ij_a.first + ij_b.first - 1, ij_a.second + ij_b.second, tor_groups(ga, gb));
    }
  // windows: a row of the product is valid when every contributing pair is
  auto lo = [](const HomologyTable& t) { return t.row_lo ? *t.row_lo : -1000000; };
  auto hi = [](const HomologyTable& t) { return t.row_hi ? *t.row_hi : 1000000; };
  if (a.row_lo || b.row_lo) out.row_lo = lo(a) + lo(b);
  if (a.row_hi || b.row_hi) out.row_hi = hi(a) + hi(b);
  if (out.row_lo && *out.row_lo < -900000) out.row_lo.reset();
  if (out.row_hi && *out.row_hi > 900000) out.row_hi.reset();
  return out;
}

HomologyTable unlink_table(int components, const Int& coeff_mod) {
  HomologyTable out;
  out.coeff_mod = coeff_mod;
  GroupData one;
  one.free_rank = 1;
  out.set(0, 0, one);
  for (int c = 0; c < components; ++c) {
    HomologyTable factor;
    factor.coeff_mod = coeff_mod;
    factor.set(0, 1, one);
    factor.set(0, -1, one);
    out = kunneth(out, factor);
  }
  return out;
}

std::map<int, Int> graded_euler_characteristic(const HomologyTable& t) {
  std::map<int, Int> chi;
  for (auto& [ij, g] : t.groups) {
    if (g.free_rank == 0) continue;
    Int& slot = chi[ij.second];
    slot += (ij.first % 2 == 0 ? Int(g.free_rank) : Int(-g.free_rank));
    if (slot == 0) chi.erase(ij.second);
  }
  return chi;
}

bool tables_agree_on_window(const HomologyTable& a, const HomologyTable& b, int lo, int hi) {
  auto collect = [&](const HomologyTable& t) {
    std::map<Bidegree, GroupData> m;
    for (auto& [ij, g] : t.groups)
      if (ij.first >= lo && ij.first <= hi && !g.trivial()) m[ij] = g;
    return m;
  };
  return collect(a) == collect(b);
}

std::string table_to_json(const HomologyTable& t) {
  nlohmann::json j;
  j["meta"]["schema"] = "khcalc-table-v1";
  j["meta"]["coeff"] =
      t.coeff_mod == 0 ? std::string("Z") : ("F" + t.coeff_mod.convert_to<std::string>());
  if (t.row_lo) j["meta"]["row_lo"] = *t.row_lo;
  if (t.row_hi) j["meta"]["row_hi"] = *t.row_hi;
  j["groups"] = nlohmann::json::array();
  for (auto& [ij, g] : t.groups) {
    nlohmann::json e;
    e["i"] = ij.first;
    e["j"] = ij.second;
    e["rank"] = g.free_rank;
    e["torsion"] = nlohmann::json::array();
    for (auto& [pk, m] : g.torsion) {
      auto pows = factor_prime_powers(pk);
      // pk is a prime power: recover (p, e)
      Int p = 2;
      int exp = 0;
      for (Int q = 2; q * q <= pk || q <= pk; ++q) {
        if (pk % q == 0) {
          p = q;
          Int r = pk;
          while (r % q == 0) {
            r /= q;
            ++exp;
          }
          break;
        }
      }
      e["torsion"].push_back({p.convert_to<std::string>(), exp, m});
    }
    j["groups"].push_back(e);
  }
  return j.dump(2);
}

HomologyTable table_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  HomologyTable t;
  std::string coeff = j["meta"]["coeff"];
  if (coeff == "Z")
    t.coeff_mod = 0;
  else
    t.coeff_mod = Int(coeff.substr(1));
  if (j["meta"].contains("row_lo")) t.row_lo = j["meta"]["row_lo"].get<int>();
  if (j["meta"].contains("row_hi")) t.row_hi = j["meta"]["row_hi"].get<int>();
  for (auto& e : j["groups"]) {
    GroupData g;
    g.free_rank = e["rank"].get<long>();
    for (auto& tor : e["torsion"]) {
      Int p(tor[0].get<std::string>());
      int exp = tor[1].get<int>();
      long mult = tor[2].get<long>();
      Int pk = 1;
      for (int k = 0; k < exp; ++k) pk *= p;
      g.torsion[pk] += mult;
    }
    t.set(e["i"].get<int>(), e["j"].get<int>(), g);
  }
  return t;
}

std::string table_to_text(const HomologyTable& t) {
  std::ostringstream os;
  for (auto& [ij, g] : t.groups) {
    os << "Kh^{" << ij.first << "," << ij.second << "} = ";
    bool first = true;
    if (g.free_rank > 0) {
      os << "Z";
      if (g.free_rank > 1) os << "^" << g.free_rank;
      first = false;
    }
    for (auto& [pk, m] : g.torsion) {
      for (long k = 0; k < m; ++k) {
        if (!first) os << " + ";
        os << "Z/" << pk;
        first = false;
      }
    }
    if (first) os << "0";
    os << "\n";
  }
  return os.str();
}

}  // namespace kh

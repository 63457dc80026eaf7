#pragma once

#include "kh/bigint.hpp"

#include <array>
#include <string>
#include <vector>

namespace kh {

struct BraidWord {
  int strands = 2;
  std::vector<int> letters;  // +i = sigma_i, -i = sigma_i^{-1}, 1 <= i < strands

  int length() const { return static_cast<int>(letters.size()); }
  int n_plus() const;
  int n_minus() const;
};

// "strands=N" prefix optional; letters are whitespace-separated nonzero ints.
BraidWord parse_braid(const std::string& text);
BraidWord mirror_word(const BraidWord& b);
BraidWord inverse_word(const BraidWord& b);
// sigma_1 ... sigma_{t-1} w sigma_{t-1}^{-1} ... sigma_1^{-1}
BraidWord conjugate_for_scan(const BraidWord& b);

// Crossing slots are in counterclockwise circular order with slot 0 the
// incoming under-strand.  The 0-smoothing pairs slots (0,3),(1,2) and the
// 1-smoothing pairs (0,1),(2,3), for either sign; the Khovanov complex of the
// crossing runs 0-smoothing -> 1-smoothing for positive crossings and
// 1-smoothing -> 0-smoothing for negative ones.
struct Crossing {
  int sign = 1;
  std::array<int, 4> arcs{};
};

// page = homological position (0 or 1) in the crossing complex; returns the
// slot pairing of the smoothing sitting on that page.
std::array<int, 4> page_pairing(const Crossing& c, int page);

struct LinkDiagram {
  std::vector<Crossing> crossings;
  int n_arcs = 0;
  int free_circles = 0;  // crossingless unknot components
  int n_plus = 0, n_minus = 0;

  int n() const { return static_cast<int>(crossings.size()); }
};

LinkDiagram braid_closure(const BraidWord& b);
LinkDiagram mirror_diagram(const LinkDiagram& L);

LinkDiagram diagram_from_pd_json(const std::string& json_text);
std::string diagram_to_pd_json(const LinkDiagram& L);

// connected components of the crossing graph; each inner vector lists crossing
// ids (free circles not included)
std::vector<std::vector<int>> crossing_graph_components(const LinkDiagram& L);

// restriction of the diagram to one crossing-graph component (arcs renumbered)
LinkDiagram sub_diagram(const LinkDiagram& L, const std::vector<int>& crossing_ids);

// Removes nugatory crossings (R1 kinks and cut vertices of the crossing
// graph) until none are left.  Input must have a connected crossing graph and
// no free circles.
LinkDiagram reduce_nugatory(const LinkDiagram& L);

struct LinkingData {
  int components = 0;
  std::vector<std::vector<Int>> lk;  // symmetric, zero diagonal
  std::vector<int> component_of_crossing_under, component_of_crossing_over;
};
LinkingData linking_data(const LinkDiagram& L);

// One gluing step of a scanning sequence: the next crossing attaches to the
// current subtangle along `glued` (boundary position, crossing slot) pairs;
// the composite boundary is `result_points` in circular order, entries being
// (0, old position) or (1, crossing slot).
struct ScanStep {
  int crossing = -1;
  int type = 0;  // 1..4 = Type I..IV
  std::vector<std::pair<int, int>> glued;
  std::vector<std::pair<int, int>> result_points;
};

struct ScanSequence {
  std::vector<int> order;  // crossing ids
  std::vector<ScanStep> steps;
  int girth = 0;
};

// Builds the gluing data for a given crossing order; throws KhError(Internal)
// if the order is not a nice scanning sequence of L.
ScanSequence sequence_from_order(const LinkDiagram& L, const std::vector<int>& order);

// Greedy nice scanning sequence: both the consumed prefix and the remaining
// suffix stay connected at every step; among admissible crossings the one
// minimizing the next boundary size wins, ties by crossing id.  Requires a
// reduced connected diagram with >= 2 crossings; reports a separating crossing
// if the crossing graph is not 2-connected.
ScanSequence nice_scanning_sequence(const LinkDiagram& L);

}  // namespace kh

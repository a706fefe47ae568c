#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace springer {

// Vertices are numbered from 1.
struct Cup {
  int i = 0, j = 0;
  bool marked = false;
  auto operator<=>(const Cup&) const = default;
};

struct Ray {
  int i = 0;
  bool marked = false;
  auto operator<=>(const Ray&) const = default;
};

// Crossingless matching on n vertices; unmatched vertices are rays and never sit under a cup.
class CupDiagram {
 public:
  CupDiagram() = default;
  CupDiagram(int n, std::vector<std::pair<int, int>> cups);

  int n() const { return n_; }
  int k() const { return static_cast<int>(cups_.size()); }
  const std::vector<std::pair<int, int>>& cups() const { return cups_; }
  std::vector<int> rays() const;
  int partner(int v) const;  // 0 for a ray
  bool is_ray(int v) const { return partner(v) == 0; }

  auto operator<=>(const CupDiagram&) const = default;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> cups_;  // sorted, i < j
};

// Cup diagram whose cups and rays may carry markers. Type D diagrams live on m vertices and
// satisfy marker accessibility; the folding machinery also uses unchecked ones on n vertices.
class MarkedCupDiagram {
 public:
  MarkedCupDiagram() = default;
  MarkedCupDiagram(int m, std::vector<Cup> cups, std::vector<Ray> rays, bool check_markers = true);

  int m() const { return m_; }
  int num_cups() const { return static_cast<int>(cups_.size()); }
  const std::vector<Cup>& cups() const { return cups_; }
  const std::vector<Ray>& rays() const { return rays_; }
  int partner(int v) const;
  bool is_ray(int v) const { return partner(v) == 0; }
  // largest ray vertex, 0 if none
  int rightmost_ray() const;
  // cups strictly to the left of v
  int cups_left_of(int v) const;
  bool has_marker() const;
  // first reason marker accessibility fails, empty if accessible
  std::string marker_violation() const;

  CupDiagram underlying() const;

  auto operator<=>(const MarkedCupDiagram&) const = default;

 private:
  int m_ = 0;
  std::vector<Cup> cups_;  // sorted by left endpoint
  std::vector<Ray> rays_;  // sorted
};

struct DiagramStats {
  int n = 0;
  std::vector<int> partner_of;  // index 1..n, 0 for rays
  std::vector<int> rho_of;      // rays at or left of v
  std::vector<int> c_of;        // cups entirely left of v

  bool is_ray(int v) const;
  int rho(int v) const;
  int c(int v) const;
  int sigma(int v) const;  // partner; NotACupEndpoint on rays
  int delta(int v) const;  // (sigma - v + 1)/2 for a left endpoint
  int m_of(int v) const;   // v + delta(v) - 1
};

DiagramStats stats(const CupDiagram& d);
DiagramStats stats(const MarkedCupDiagram& d);

std::vector<CupDiagram> enumerate_typeA(int n, int k);
std::vector<MarkedCupDiagram> enumerate_typeD(int n, int k);

// (n-k, k) with n even and either n-k = k or both parts odd
bool is_typeD_partition(int n, int k);
void require_typeD_partition(int n, int k);

// Marked diagram on n vertices (no accessibility check), used by folding.
MarkedCupDiagram with_marks(const CupDiagram& a);
// a' (unmarked) and a^- (marked) replacement of the innermost axis-crossing cup(s).
std::pair<MarkedCupDiagram, MarkedCupDiagram> fold_step(const MarkedCupDiagram& a);
int axis_crossing_cups(const MarkedCupDiagram& a);
// all diagrams reached from b by repeated folding with no axis-crossing cup left
std::vector<MarkedCupDiagram> fully_folded(const CupDiagram& b);
// left half of a fully folded diagram
MarkedCupDiagram left_half(const MarkedCupDiagram& full);
// adot glued to its mirror image on 2m vertices
MarkedCupDiagram glue(const MarkedCupDiagram& adot);
bool unfolds_to(const MarkedCupDiagram& adot, const CupDiagram& b);

// DSL: "A n=3 k=1: 1-2" and "D m=3 cups=1: 1-2, 3*"
using AnyDiagram = std::variant<CupDiagram, MarkedCupDiagram>;
AnyDiagram parse_diagram(const std::string& text);
CupDiagram parse_typeA(const std::string& text);
MarkedCupDiagram parse_typeD(const std::string& text);
std::string serialize_diagram(const CupDiagram& d);
std::string serialize_diagram(const MarkedCupDiagram& d);

}  // namespace springer

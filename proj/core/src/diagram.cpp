#include "springer/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "springer/error.hpp"

namespace springer {

namespace {

// shared checks on a matching: range, disjointness, no crossing, no ray under a cup
void check_matching(int n, const std::vector<std::pair<int, int>>& cups) {
  std::vector<int> seen(n + 1, 0);
  for (auto [i, j] : cups) {
    if (i < 1 || j > n || i >= j)
      throw ValidationError("cup " + std::to_string(i) + "-" + std::to_string(j) + " outside 1.." + std::to_string(n));
    for (int v : {i, j}) {
      if (seen[v]) throw ValidationError("vertex " + std::to_string(v) + " used twice");
      seen[v] = 1;
    }
  }
  for (auto [i, j] : cups)
    for (auto [p, q] : cups)
      if (i < p && p < j && j < q)
        throw ValidationError("cups " + std::to_string(i) + "-" + std::to_string(j) + " and " + std::to_string(p) + "-" +
                              std::to_string(q) + " cross");
  for (int v = 1; v <= n; ++v) {
    if (seen[v]) continue;
    for (auto [i, j] : cups)
      if (i < v && v < j)
        throw ValidationError("ray " + std::to_string(v) + " lies under cup " + std::to_string(i) + "-" + std::to_string(j));
  }
}

void enumerate_matchings(int n, int k, int v, std::vector<int>& open, std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
  int closed = static_cast<int>(cur.size());
  if (v > n) {
    if (open.empty() && closed == k) out.push_back(cur);
    return;
  }
  int remaining = n - v + 1;
  // cups still to close plus cups still to open must fit
  int need = static_cast<int>(open.size()) + 2 * (k - closed - static_cast<int>(open.size()));
  if (need > remaining || closed + static_cast<int>(open.size()) > k) return;
  if (open.empty()) enumerate_matchings(n, k, v + 1, open, cur, out);
  if (!open.empty()) {
    int i = open.back();
    open.pop_back();
    cur.emplace_back(i, v);
    enumerate_matchings(n, k, v + 1, open, cur, out);
    cur.pop_back();
    open.push_back(i);
  }
  open.push_back(v);
  enumerate_matchings(n, k, v + 1, open, cur, out);
  open.pop_back();
}

std::vector<std::vector<std::pair<int, int>>> matchings(int n, int k) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<int> open;
  std::vector<std::pair<int, int>> cur;
  enumerate_matchings(n, k, 1, open, cur, out);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CupDiagram::CupDiagram(int n, std::vector<std::pair<int, int>> cups) : n_(n), cups_(std::move(cups)) {
  if (n < 0) throw InvalidShape("negative vertex count");
  for (auto& c : cups_)
    if (c.first > c.second) std::swap(c.first, c.second);
  std::sort(cups_.begin(), cups_.end());
  check_matching(n, cups_);
}

std::vector<int> CupDiagram::rays() const {
  std::vector<int> r;
  for (int v = 1; v <= n_; ++v)
    if (is_ray(v)) r.push_back(v);
  return r;
}

int CupDiagram::partner(int v) const {
  for (auto [i, j] : cups_) {
    if (i == v) return j;
    if (j == v) return i;
  }
  return 0;
}

MarkedCupDiagram::MarkedCupDiagram(int m, std::vector<Cup> cups, std::vector<Ray> rays, bool check_markers)
    : m_(m), cups_(std::move(cups)), rays_(std::move(rays)) {
  if (m < 0) throw InvalidShape("negative vertex count");
  std::vector<std::pair<int, int>> plain;
  for (auto& c : cups_) {
    if (c.i > c.j) std::swap(c.i, c.j);
    plain.emplace_back(c.i, c.j);
  }
  std::sort(cups_.begin(), cups_.end());
  std::sort(rays_.begin(), rays_.end());
  check_matching(m, plain);
  std::vector<int> used(m + 1, 0);
  for (auto [i, j] : plain) used[i] = used[j] = 1;
  for (const auto& r : rays_) {
    if (r.i < 1 || r.i > m) throw ValidationError("ray " + std::to_string(r.i) + " outside 1.." + std::to_string(m));
    if (used[r.i]) throw ValidationError("vertex " + std::to_string(r.i) + " used twice");
    used[r.i] = 1;
  }
  // vertices not mentioned are unmarked rays
  for (int v = 1; v <= m; ++v)
    if (!used[v]) rays_.push_back(Ray{v, false});
  std::sort(rays_.begin(), rays_.end());
  if (check_markers) {
    std::string why = marker_violation();
    if (!why.empty()) throw ValidationError(why);
  }
}

int MarkedCupDiagram::partner(int v) const {
  for (const auto& c : cups_) {
    if (c.i == v) return c.j;
    if (c.j == v) return c.i;
  }
  return 0;
}

int MarkedCupDiagram::rightmost_ray() const { return rays_.empty() ? 0 : rays_.back().i; }

int MarkedCupDiagram::cups_left_of(int v) const {
  int c = 0;
  for (const auto& cup : cups_)
    if (cup.j < v) ++c;
  return c;
}

bool MarkedCupDiagram::has_marker() const {
  for (const auto& c : cups_)
    if (c.marked) return true;
  for (const auto& r : rays_)
    if (r.marked) return true;
  return false;
}

std::string MarkedCupDiagram::marker_violation() const {
  // a marked feature must reach the right border: rays only from the rightmost ray,
  // cups only when not nested and with no ray further right (cups to the right are passed below)
  for (const auto& c : cups_) {
    if (!c.marked) continue;
    for (const auto& d : cups_)
      if (d.i < c.i && c.j < d.j)
        return "marked cup " + std::to_string(c.i) + "-" + std::to_string(c.j) + " is nested in cup " + std::to_string(d.i) + "-" +
               std::to_string(d.j);
    for (const auto& r : rays_)
      if (r.i > c.j)
        return "marked cup " + std::to_string(c.i) + "-" + std::to_string(c.j) + " is separated from the right border by ray " +
               std::to_string(r.i);
  }
  for (const auto& r : rays_)
    if (r.marked && r.i != rightmost_ray())
      return "marked ray at " + std::to_string(r.i) + " is separated from the right border by ray " + std::to_string(rightmost_ray());
  return {};
}

CupDiagram MarkedCupDiagram::underlying() const {
  std::vector<std::pair<int, int>> c;
  for (const auto& cup : cups_) c.emplace_back(cup.i, cup.j);
  return CupDiagram(m_, c);
}

bool DiagramStats::is_ray(int v) const {
  if (v < 1 || v > n) throw IndexOutOfRange("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
  return partner_of[v] == 0;
}

int DiagramStats::rho(int v) const {
  is_ray(v);
  return rho_of[v];
}

int DiagramStats::c(int v) const {
  is_ray(v);
  return c_of[v];
}

int DiagramStats::sigma(int v) const {
  if (is_ray(v)) throw NotACupEndpoint("vertex " + std::to_string(v) + " is a ray");
  return partner_of[v];
}

int DiagramStats::delta(int v) const {
  int s = sigma(v);
  int lo = std::min(v, s), hi = std::max(v, s);
  return (hi - lo + 1) / 2;
}

int DiagramStats::m_of(int v) const {
  int s = sigma(v);
  return std::min(v, s) + delta(v) - 1;
}

namespace {

DiagramStats make_stats(int n, const std::vector<std::pair<int, int>>& cups) {
  DiagramStats s;
  s.n = n;
  s.partner_of.assign(n + 1, 0);
  s.rho_of.assign(n + 1, 0);
  s.c_of.assign(n + 1, 0);
  for (auto [i, j] : cups) {
    s.partner_of[i] = j;
    s.partner_of[j] = i;
  }
  int rays = 0;
  for (int v = 1; v <= n; ++v) {
    if (s.partner_of[v] == 0) ++rays;
    s.rho_of[v] = rays;
    int c = 0;
    for (auto [i, j] : cups)
      if (j < v) ++c;
    s.c_of[v] = c;
  }
  return s;
}

}  // namespace

DiagramStats stats(const CupDiagram& d) { return make_stats(d.n(), d.cups()); }

DiagramStats stats(const MarkedCupDiagram& d) {
  std::vector<std::pair<int, int>> c;
  for (const auto& cup : d.cups()) c.emplace_back(cup.i, cup.j);
  return make_stats(d.m(), c);
}

std::vector<CupDiagram> enumerate_typeA(int n, int k) {
  if (n < 0 || k < 0 || 2 * k > n) throw InvalidShape("need 0 <= k <= n/2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  std::vector<CupDiagram> out;
  for (auto& c : matchings(n, k)) out.emplace_back(n, c);
  return out;
}

bool is_typeD_partition(int n, int k) {
  if (n <= 0 || k < 0 || 2 * k > n || n % 2) return false;
  if (n - k == k) return true;
  return (n - k) % 2 == 1 && k % 2 == 1;
}

void require_typeD_partition(int n, int k) {
  if (!is_typeD_partition(n, k))
    throw NotTypeDPartition("(" + std::to_string(n - k) + "," + std::to_string(k) + ") needs n even and equal or odd parts");
}

std::vector<MarkedCupDiagram> enumerate_typeD(int n, int k) {
  require_typeD_partition(n, k);
  int m = n / 2;
  std::vector<MarkedCupDiagram> out;
  for (auto& plain : matchings(m, k / 2)) {
    std::vector<Cup> cups;
    for (auto [i, j] : plain) cups.push_back(Cup{i, j, false});
    MarkedCupDiagram base(m, cups, {});
    // features that may carry a marker
    std::vector<int> feats;  // >0 cup index + 1, <0 ray vertex
    for (std::size_t t = 0; t < cups.size(); ++t) {
      std::vector<Cup> trial = cups;
      trial[t].marked = true;
      if (MarkedCupDiagram(m, trial, {}, false).marker_violation().empty()) feats.push_back(static_cast<int>(t) + 1);
    }
    if (base.rightmost_ray()) feats.push_back(-base.rightmost_ray());
    for (unsigned bits = 0; bits < (1u << feats.size()); ++bits) {
      std::vector<Cup> c = cups;
      std::vector<Ray> r;
      for (std::size_t f = 0; f < feats.size(); ++f) {
        if (!(bits >> f & 1)) continue;
        if (feats[f] > 0) c[feats[f] - 1].marked = true;
        else r.push_back(Ray{-feats[f], true});
      }
      out.emplace_back(m, c, r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MarkedCupDiagram with_marks(const CupDiagram& a) {
  std::vector<Cup> c;
  for (auto [i, j] : a.cups()) c.push_back(Cup{i, j, false});
  return MarkedCupDiagram(a.n(), c, {}, false);
}

int axis_crossing_cups(const MarkedCupDiagram& a) {
  int half = a.m() / 2, count = 0;
  for (const auto& c : a.cups())
    if (c.i <= half && c.j > half) ++count;
  return count;
}

std::pair<MarkedCupDiagram, MarkedCupDiagram> fold_step(const MarkedCupDiagram& a) {
  int half = a.m() / 2;
  std::vector<Cup> crossing, rest;
  for (const auto& c : a.cups()) (c.i <= half && c.j > half ? crossing : rest).push_back(c);
  if (crossing.empty() || a.m() % 2) throw NoAxisCrossingCup("no cup crosses the axis of " + std::to_string(a.m()) + " vertices");
  std::sort(crossing.begin(), crossing.end(), [](const Cup& x, const Cup& y) { return x.i > y.i; });
  std::pair<MarkedCupDiagram, MarkedCupDiagram> out;
  for (bool mark : {false, true}) {
    std::vector<Cup> cups = rest;
    std::vector<Ray> rays = a.rays();
    if (crossing.size() == 1) {
      rays.push_back(Ray{crossing[0].i, mark});
      rays.push_back(Ray{crossing[0].j, mark});
    } else {
      const Cup& inner = crossing[0];
      const Cup& outer = crossing[1];
      cups.push_back(Cup{outer.i, inner.i, mark});
      cups.push_back(Cup{inner.j, outer.j, mark});
      for (std::size_t t = 2; t < crossing.size(); ++t) cups.push_back(crossing[t]);
    }
    (mark ? out.second : out.first) = MarkedCupDiagram(a.m(), cups, rays, false);
  }
  return out;
}

std::vector<MarkedCupDiagram> fully_folded(const CupDiagram& b) {
  std::set<MarkedCupDiagram> done, seen;
  std::vector<MarkedCupDiagram> todo{with_marks(b)};
  while (!todo.empty()) {
    MarkedCupDiagram d = todo.back();
    todo.pop_back();
    if (!seen.insert(d).second) continue;
    if (axis_crossing_cups(d) == 0) {
      done.insert(d);
      continue;
    }
    auto [p, q] = fold_step(d);
    todo.push_back(p);
    todo.push_back(q);
  }
  return {done.begin(), done.end()};
}

MarkedCupDiagram left_half(const MarkedCupDiagram& full) {
  int m = full.m() / 2;
  std::vector<Cup> c;
  std::vector<Ray> r;
  for (const auto& cup : full.cups()) {
    if (cup.j <= m) c.push_back(cup);
    else if (cup.i <= m) throw NoAxisCrossingCup("diagram still has a cup across the axis");
  }
  for (const auto& ray : full.rays())
    if (ray.i <= m) r.push_back(ray);
  return MarkedCupDiagram(m, c, r, false);
}

MarkedCupDiagram glue(const MarkedCupDiagram& adot) {
  int m = adot.m(), n = 2 * m;
  std::vector<Cup> c = adot.cups();
  std::vector<Ray> r = adot.rays();
  for (const auto& cup : adot.cups()) c.push_back(Cup{n + 1 - cup.j, n + 1 - cup.i, cup.marked});
  for (const auto& ray : adot.rays()) r.push_back(Ray{n + 1 - ray.i, ray.marked});
  return MarkedCupDiagram(n, c, r, false);
}

bool unfolds_to(const MarkedCupDiagram& adot, const CupDiagram& b) {
  if (2 * adot.m() != b.n())
    throw SizeMismatch("marked diagram on " + std::to_string(adot.m()) + " vertices vs cup diagram on " + std::to_string(b.n()));
  MarkedCupDiagram target = glue(adot);
  for (const auto& d : fully_folded(b))
    if (d == target) return true;
  return false;
}

// DSL

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}
  void ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool at_end() {
    ws();
    return p_ >= s_.size();
  }
  bool peek(char c) {
    ws();
    return p_ < s_.size() && s_[p_] == c;
  }
  void expect(char c) {
    ws();
    if (p_ >= s_.size() || s_[p_] != c) throw SyntaxError(std::string("expected '") + c + "'", p_);
    ++p_;
  }
  void expect(const std::string& word) {
    ws();
    if (s_.compare(p_, word.size(), word) != 0) throw SyntaxError("expected '" + word + "'", p_);
    p_ += word.size();
  }
  int integer() {
    ws();
    std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (start == p_) throw SyntaxError("expected an integer", start);
    if (p_ - start > 6) throw SyntaxError("integer too large", start);
    return std::stoi(s_.substr(start, p_ - start));
  }
  char letter() {
    ws();
    if (p_ >= s_.size()) throw SyntaxError("expected 'A' or 'D'", p_);
    return s_[p_++];
  }
  std::size_t pos() const { return p_; }

 private:
  const std::string& s_;
  std::size_t p_ = 0;
};

struct Item {
  int i, j;  // j == 0 for rays
  bool marked;
};

std::vector<Item> items(Lexer& lx) {
  std::vector<Item> out;
  if (lx.at_end()) return out;
  while (true) {
    Item it{lx.integer(), 0, false};
    if (lx.peek('-')) {
      lx.expect('-');
      it.j = lx.integer();
    }
    if (lx.peek('*')) {
      lx.expect('*');
      it.marked = true;
    }
    out.push_back(it);
    if (lx.at_end()) break;
    lx.expect(',');
  }
  return out;
}

}  // namespace

AnyDiagram parse_diagram(const std::string& text) {
  Lexer lx(text);
  char kind = lx.letter();
  if (kind == 'A') {
    lx.expect("n=");
    int n = lx.integer();
    lx.expect("k=");
    int k = lx.integer();
    lx.expect(':');
    auto its = items(lx);
    std::vector<std::pair<int, int>> cups;
    for (const auto& it : its) {
      if (it.marked) throw ValidationError("type A diagrams carry no markers");
      if (it.j) cups.emplace_back(it.i, it.j);
      else if (it.i < 1 || it.i > n) throw ValidationError("ray " + std::to_string(it.i) + " outside 1.." + std::to_string(n));
    }
    CupDiagram d(n, cups);
    if (d.k() != k) throw ValidationError("cup count " + std::to_string(d.k()) + " does not match k=" + std::to_string(k));
    for (const auto& it : its)
      if (!it.j && !d.is_ray(it.i)) throw ValidationError("vertex " + std::to_string(it.i) + " used twice");
    return d;
  }
  if (kind == 'D') {
    lx.expect("m=");
    int m = lx.integer();
    lx.expect("cups=");
    int nc = lx.integer();
    lx.expect(':');
    std::vector<Cup> cups;
    std::vector<Ray> rays;
    for (const auto& it : items(lx)) {
      if (it.j) cups.push_back(Cup{it.i, it.j, it.marked});
      else rays.push_back(Ray{it.i, it.marked});
    }
    MarkedCupDiagram d(m, cups, rays);
    if (d.num_cups() != nc) throw ValidationError("cup count " + std::to_string(d.num_cups()) + " does not match cups=" + std::to_string(nc));
    return d;
  }
  throw SyntaxError(std::string("unknown diagram type '") + kind + "'", 0);
}

CupDiagram parse_typeA(const std::string& text) {
  auto d = parse_diagram(text);
  if (!std::holds_alternative<CupDiagram>(d)) throw ValidationError("expected a type A diagram");
  return std::get<CupDiagram>(d);
}

MarkedCupDiagram parse_typeD(const std::string& text) {
  auto d = parse_diagram(text);
  if (!std::holds_alternative<MarkedCupDiagram>(d)) throw ValidationError("expected a type D diagram");
  return std::get<MarkedCupDiagram>(d);
}

std::string serialize_diagram(const CupDiagram& d) {
  std::string s = "A n=" + std::to_string(d.n()) + " k=" + std::to_string(d.k()) + ":";
  bool first = true;
  for (auto [i, j] : d.cups()) {
    s += first ? " " : ", ";
    first = false;
    s += std::to_string(i) + "-" + std::to_string(j);
  }
  return s;
}

std::string serialize_diagram(const MarkedCupDiagram& d) {
  std::string s = "D m=" + std::to_string(d.m()) + " cups=" + std::to_string(d.num_cups()) + ":";
  std::map<int, std::string> parts;
  for (const auto& c : d.cups()) parts[c.i] = std::to_string(c.i) + "-" + std::to_string(c.j) + (c.marked ? "*" : "");
  for (const auto& r : d.rays()) parts[r.i] = std::to_string(r.i) + (r.marked ? "*" : "");
  bool first = true;
  for (const auto& [v, p] : parts) {
    s += first ? " " : ", ";
    first = false;
    s += p;
  }
  return s;
}

}  // namespace springer

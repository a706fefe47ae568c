#include "springer_io.hpp"

#include <fstream>
#include <sstream>

#include "springer/error.hpp"

namespace springer::io {

json to_json(const Scalar& s) {
  const Field& f = s.field();
  if (f.is_prime()) return s.residue();
  if (f.kind() == FieldKind::rationals || s.imag() == 0) {
    mpq_class q = s.real();
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  }
  return s.str();
}

Scalar scalar_from_json(const Field& f, const json& j) {
  if (j.is_number_integer()) return Scalar(f, j.get<long>());
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  throw ValidationError("expected a scalar, got " + j.dump());
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  if (j.is_string()) {
    m = Matrix::parse(f, j.get<std::string>());
    // "[]" stands for any empty block
    if (m.rows() * m.cols() == 0 && rows * cols == 0) return Matrix(f, rows, cols);
  } else if (j.is_array()) {
    if (j.size() != rows) throw ShapeMismatch("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      if (!j[r].is_array() || j[r].size() != cols) throw ShapeMismatch("row " + std::to_string(r) + " should have " + std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(f, j[r][c]);
    }
    return m;
  } else {
    throw ValidationError("expected a matrix, got " + j.dump());
  }
  if (m.rows() != rows || m.cols() != cols)
    throw ShapeMismatch("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  return m;
}

json to_json(const CupDiagram& d) {
  json cups = json::array(), rays = json::array();
  for (auto [i, j] : d.cups()) cups.push_back({i, j, false});
  for (int r : d.rays()) rays.push_back({r, false});
  return {{"type", "A"}, {"n", d.n()}, {"cups", cups}, {"rays", rays}, {"text", serialize_diagram(d)}};
}

json to_json(const MarkedCupDiagram& d) {
  json cups = json::array(), rays = json::array();
  for (const auto& c : d.cups()) cups.push_back({c.i, c.j, c.marked});
  for (const auto& r : d.rays()) rays.push_back({r.i, r.marked});
  return {{"type", "D"}, {"n", d.m()}, {"cups", cups}, {"rays", rays}, {"text", serialize_diagram(d)}};
}

AnyDiagram diagram_from_json(const json& j) {
  if (j.is_string()) return parse_diagram(j.get<std::string>());
  if (j.contains("text")) return parse_diagram(j.at("text").get<std::string>());
  std::string type = j.at("type").get<std::string>();
  int n = j.at("n").get<int>();
  if (type == "A") {
    std::vector<std::pair<int, int>> cups;
    for (const auto& c : j.at("cups")) {
      if (c.size() > 2 && c[2].get<bool>()) throw ValidationError("type A cups carry no markers");
      cups.emplace_back(c[0].get<int>(), c[1].get<int>());
    }
    return CupDiagram(n, cups);
  }
  if (type != "D") throw ValidationError("unknown diagram type " + type);
  std::vector<Cup> cups;
  std::vector<Ray> rays;
  for (const auto& c : j.at("cups")) cups.push_back({c[0].get<int>(), c[1].get<int>(), c.size() > 2 && c[2].get<bool>()});
  if (j.contains("rays"))
    for (const auto& r : j.at("rays")) rays.push_back({r[0].get<int>(), r.size() > 1 && r[1].get<bool>()});
  return MarkedCupDiagram(n, cups, rays);
}

json to_json(const Flag& fl) {
  json levels = json::array();
  for (const auto& s : fl.spaces()) levels.push_back(to_json(s.basis()));
  return levels;
}

Flag flag_from_json(const Field& f, const json& levels) {
  if (!levels.is_array() || levels.empty()) throw ValidationError("a flag is a non-empty list of levels");
  std::size_t n = levels.size() - 1;
  std::vector<Subspace> spaces;
  for (const auto& lv : levels) {
    Matrix b = lv.is_string() ? Matrix::parse(f, lv.get<std::string>()) : matrix_from_json(f, lv, lv.size(), n);
    if (b.rows() == 0) b = Matrix(f, 0, n);
    if (b.cols() != n) throw AmbientMismatch("level has " + std::to_string(b.cols()) + " coordinates, expected " + std::to_string(n));
    spaces.push_back(Subspace::span(b));
  }
  return Flag(std::move(spaces));
}

json to_json(const QuiverRep& r) {
  json a = json::array(), b = json::array();
  for (const auto& m : r.A) a.push_back(to_json(m));
  for (const auto& m : r.B) b.push_back(to_json(m));
  json g = json::object(), d = json::object();
  g["k"] = to_json(r.Gamma[r.k()]);
  d["k"] = to_json(r.Delta[r.k()]);
  if (r.n() != 2 * r.k()) {
    g["n-k"] = to_json(r.Gamma[r.n() - r.k()]);
    d["n-k"] = to_json(r.Delta[r.n() - r.k()]);
  }
  return {{"field", r.field().name()}, {"n", r.n()}, {"k", r.k()}, {"A", a}, {"B", b}, {"Gamma", g}, {"Delta", d}};
}

QuiverRep quiver_from_json(const json& j) {
  Field f = Field::parse(j.value("field", std::string("Q")));
  int n = j.at("n").get<int>(), k = j.at("k").get<int>();
  QuiverRep r(f, n, k);
  const auto& dv = r.dims();
  auto load = [&](const json& list, std::vector<Matrix>& dst, bool is_a) {
    // either A_0..A_{n-1} or only the inner maps A_1..A_{n-2}
    std::size_t off;
    if (list.size() == static_cast<std::size_t>(n)) off = 0;
    else if (n >= 2 && list.size() == static_cast<std::size_t>(n - 2)) off = 1;
    else throw ShapeMismatch("expected " + std::to_string(n) + " or " + std::to_string(n - 2) + " maps, got " + std::to_string(list.size()));
    for (std::size_t t = 0; t < list.size(); ++t) {
      std::size_t i = t + off;
      std::size_t rows = is_a ? dv.v[i + 1] : dv.v[i], cols = is_a ? dv.v[i] : dv.v[i + 1];
      dst[i] = matrix_from_json(f, list[t], rows, cols);
    }
  };
  if (j.contains("A")) load(j.at("A"), r.A, true);
  if (j.contains("B")) load(j.at("B"), r.B, false);
  auto side = [&](const char* key, int at) {
    if (j.contains("Gamma") && j["Gamma"].contains(key)) r.Gamma[at] = matrix_from_json(f, j["Gamma"][key], dv.v[at], dv.d[at]);
    if (j.contains("Delta") && j["Delta"].contains(key)) r.Delta[at] = matrix_from_json(f, j["Delta"][key], dv.d[at], dv.v[at]);
  };
  side("k", k);
  if (n != 2 * k) side("n-k", n - k);
  r.validate();
  return r;
}

json to_json(const TildeReport& r) {
  return {{"admissible", r.admissible}, {"stable", r.stable}, {"commutator", r.commutator}, {"block_pattern", r.block_pattern},
          {"delta_gamma", r.delta_gamma}, {"ok", r.ok()}, {"failures", r.failures}};
}

json to_json(const MarkedReport& r, const std::string& diagram) {
  json feats = json::array();
  for (const auto& f : r.features) {
    json o = {{"kind", f.kind}, {"marked", f.marked}, {"i", f.i}};
    if (f.kind == "cup") o["j"] = f.j;
    o["holds"] = f.holds;
    feats.push_back(std::move(o));
  }
  return {{"diagram", diagram}, {"holds", r.holds}, {"features", feats}};
}

json to_json(const ThetaFixedResult& r) {
  json o = {{"result", r.name()}, {"exhaustive", r.exhaustive}};
  if (r.kind == ThetaFixedResult::Kind::FixedWith) {
    json g = json::array();
    for (const auto& m : r.g) g.push_back(to_json(m));
    o["g"] = g;
  }
  return o;
}

json to_json(const BundleReport& r) {
  json checks = json::object();
  for (const auto& [name, v] : r.checks) checks[name] = v;
  json o = {{"diagram", r.diagram}, {"case", r.tag}};
  if (r.chart) o["chart"] = r.chart;
  o["checks"] = checks;
  o["ok"] = r.ok();
  if (r.reconstructed) o["reconstructed"] = to_json(*r.reconstructed);
  if (!r.children.empty()) {
    json ch = json::array();
    for (const auto& c : r.children) ch.push_back(to_json(c));
    o["children"] = ch;
  }
  return o;
}

json to_json(const DecompositionReport& r) {
  json comps = json::array();
  for (std::size_t i = 0; i < r.components.size(); ++i) comps.push_back({{"diagram", r.components[i]}, {"count", r.per_component[i]}});
  json ov = json::array();
  for (const auto& [key, c] : r.overlaps) ov.push_back({{"a", r.components[key.first]}, {"b", r.components[key.second]}, {"count", c}});
  json unc = json::array();
  for (const auto& fl : r.uncovered) unc.push_back(to_json(fl));
  return {{"total_flags", r.total_flags}, {"components", comps}, {"uncovered", r.uncovered_count},
          {"uncovered_sample", unc}, {"overlaps", ov}, {"no_containment", r.no_containment()}};
}

std::string to_csv(const DecompositionReport& r) {
  std::ostringstream out;
  out << "diagram,count\n";
  for (std::size_t i = 0; i < r.components.size(); ++i) out << '"' << r.components[i] << "\"," << r.per_component[i] << "\n";
  return out.str();
}

json to_json(const P1Point& p) { return json::array({to_json(p.a), to_json(p.b)}); }

std::vector<P1Point> parse_params(const Field& f, const std::string& text) {
  std::vector<P1Point> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw SyntaxError("parameter needs the form a:b", 0);
    P1Point p{Scalar::parse(f, item.substr(0, colon)), Scalar::parse(f, item.substr(colon + 1))};
    if (p.a.is_zero() && p.b.is_zero()) throw BadParameters("[0:0] is not a point of P^1");
    out.push_back(p);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return json::parse(in);
}

}  // namespace springer::io

#include "cli.hpp"

#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"
#include "springer/error.hpp"
#include "springer_io.hpp"

namespace springer::cli {

namespace {

using io::json;

// malformed input rather than a failed check
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_input_error(const Error& e) {
  return dynamic_cast<const SyntaxError*>(&e) || dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const InvalidShape*>(&e) ||
         dynamic_cast<const NotTypeDPartition*>(&e) || dynamic_cast<const ShapeMismatch*>(&e) || dynamic_cast<const FieldMismatch*>(&e) ||
         dynamic_cast<const AmbientMismatch*>(&e) || dynamic_cast<const ParamCountMismatch*>(&e) || dynamic_cast<const BadParameters*>(&e);
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::atoi(v);
}

Field field_or(const std::string& text, const Field& fallback) { return text.empty() ? fallback : Field::parse(text); }

CupDiagram need_typeA(const std::string& text) {
  auto d = parse_diagram(text);
  if (!std::holds_alternative<CupDiagram>(d)) throw UsageError("expected a type A diagram: " + text);
  return std::get<CupDiagram>(d);
}

MarkedCupDiagram need_typeD(const std::string& text) {
  auto d = parse_diagram(text);
  if (!std::holds_alternative<MarkedCupDiagram>(d)) throw UsageError("expected a type D diagram: " + text);
  return std::get<MarkedCupDiagram>(d);
}

struct Options {
  std::string type, diagram, target, fixture, flag_file, params, field, csv_path;
  int n = -1, k = -1, q = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool csv = false;
};

Field oracle_field(const Options& o) {
  if (o.q) return Field::Fp(static_cast<std::uint32_t>(o.q));
  return field_or(o.field, Field::Fp(5));
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  json list = json::array();
  if (o.type == "A") {
    for (const auto& d : enumerate_typeA(o.n, o.k)) list.push_back(io::to_json(d));
  } else {
    for (const auto& d : enumerate_typeD(o.n, o.k)) list.push_back(io::to_json(d));
  }
  out << list.dump(2) << "\n";
  return 0;
}

int cmd_fold(const Options& o, std::ostream& out) {
  CupDiagram b = need_typeA(o.diagram);
  json folded = json::array();
  for (const auto& full : fully_folded(b)) folded.push_back(io::to_json(left_half(full)));
  json rep = {{"diagram", serialize_diagram(b)}, {"axis_crossing_cups", axis_crossing_cups(with_marks(b))}, {"folded", folded}};
  out << rep.dump(2) << "\n";
  return 0;
}

int cmd_unfold(const Options& o, std::ostream& out) {
  MarkedCupDiagram a = need_typeD(o.diagram);
  json rep = {{"diagram", serialize_diagram(a)}, {"glued", serialize_diagram(glue(a))}};
  if (!o.target.empty()) {
    CupDiagram b = need_typeA(o.target);
    bool u = unfolds_to(a, b);
    rep["target"] = serialize_diagram(b);
    rep["unfolds_to"] = u;
    out << rep.dump(2) << "\n";
    return u ? 0 : 1;
  }
  json list = json::array();
  Shape s = shape_of(a);
  for (const auto& b : enumerate_typeA(2 * a.m(), s.k()))
    if (unfolds_to(a, b)) list.push_back(serialize_diagram(b));
  rep["unfolds_to"] = list;
  out << rep.dump(2) << "\n";
  return 0;
}

int cmd_stats(const Options& o, std::ostream& out) {
  auto any = parse_diagram(o.diagram);
  DiagramStats st = std::visit([](const auto& d) { return stats(d); }, any);
  json verts = json::array();
  for (int v = 1; v <= st.n; ++v) {
    json e = {{"vertex", v}, {"ray", st.is_ray(v)}, {"rho", st.rho(v)}, {"c", st.c(v)}};
    if (!st.is_ray(v)) e["sigma"] = st.sigma(v);
    verts.push_back(std::move(e));
  }
  out << json{{"diagram", std::visit([](const auto& d) { return serialize_diagram(d); }, any)}, {"vertices", verts}}.dump(2) << "\n";
  return 0;
}

QuiverRep load_or_sample(const Options& o) {
  if (!o.fixture.empty()) return io::quiver_from_json(io::read_json_file(o.fixture));
  if (o.n < 0 || o.k < 0) throw UsageError("need --fixture, or --n and --k to sample a point");
  SampleOptions so{env_int("SPRINGER_STABILITY_RETRIES", 256), env_int("SPRINGER_COMPONENT_RETRIES", 1024)};
  std::optional<CupDiagram> a;
  if (!o.diagram.empty() && o.diagram[0] == 'A') a = need_typeA(o.diagram);
  auto r = sample_springer_point(field_or(o.field, Field::Fp(5)), o.n, o.k, a, o.seed, so);
  if (!r) throw NotStable("no stable point found within the retry budget");
  return *r;
}

int cmd_check_quiver(const Options& o, std::ostream& out) {
  QuiverRep r = load_or_sample(o);
  bool ok = true;
  json rep = {{"quiver", io::to_json(r)}};
  bool adm = is_admissible(r);
  rep["admissible"] = adm;
  ok = ok && adm;
  if (adm) {
    bool st = is_stable(r);
    rep["stable"] = st;
    ok = ok && st;
    if (st) {
      TildeReport tr = check_tilde(build_tilde(r));
      rep["tilde"] = io::to_json(tr);
      ok = ok && tr.ok();
    }
  }
  rep["springer_point"] = is_springer_point(r);
  if (is_typeD_partition(r.n(), r.k())) rep["theta"] = io::to_json(is_theta_fixed(r));
  if (!o.diagram.empty()) {
    auto any = parse_diagram(o.diagram);
    bool holds = std::holds_alternative<CupDiagram>(any) ? in_lambda_a(r, std::get<CupDiagram>(any))
                                                         : in_lambda_marked(r, std::get<MarkedCupDiagram>(any));
    rep["component"] = {{"diagram", std::visit([](const auto& d) { return serialize_diagram(d); }, any)}, {"holds", holds}};
    ok = ok && holds;
  }
  rep["ok"] = ok;
  out << rep.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_maffei(const Options& o, std::ostream& out) {
  QuiverRep r = load_or_sample(o);
  MaffeiResult m = maffei_flag(r);
  json kernels = json::array();
  for (const auto& s : m.kernels) kernels.push_back(io::to_json(s.basis()));
  json rep = {{"labels", m.labels}, {"kernels", kernels}, {"flag", io::to_json(m.flag)}, {"x", io::to_json(m.x)}};
  out << rep.dump(2) << "\n";
  return 0;
}

struct FlagInput {
  Flag flag;
  Shape shape;
};

FlagInput load_flag(const Options& o) {
  if (o.flag_file.empty()) throw UsageError("need --flag");
  json j = io::read_json_file(o.flag_file);
  Field f = field_or(o.field, Field::parse(j.value("field", std::string("Q"))));
  json levels = j.is_array() ? j : j.at("flag");
  Flag fl = io::flag_from_json(f, levels);
  Shape s;
  if (j.is_object() && j.contains("shape")) s = Shape(j["shape"][0].get<int>(), j["shape"][1].get<int>());
  else if (o.n >= 0 && o.k >= 0) s = Shape::from_nk(o.n, o.k);
  else throw UsageError("need a \"shape\" entry or --n and --k");
  if (static_cast<std::size_t>(s.n()) != fl.length()) throw AmbientMismatch("flag length does not match shape " + s.str());
  return {fl, s};
}

int cmd_check_flag(const Options& o, std::ostream& out) {
  FlagInput in = load_flag(o);
  const Field& f = in.flag.field();
  bool stable = is_x_stable(in.flag, standard_nilpotent(f, in.shape));
  json rep = {{"shape", in.shape.str()}, {"x_stable", stable}};
  bool ok = stable;
  if (!o.diagram.empty()) {
    auto any = parse_diagram(o.diagram);
    if (std::holds_alternative<CupDiagram>(any)) {
      bool h = in_K_a(in.flag, in.shape, std::get<CupDiagram>(any));
      rep["component"] = {{"diagram", serialize_diagram(std::get<CupDiagram>(any))}, {"holds", h}};
      ok = ok && h;
    } else {
      const auto& d = std::get<MarkedCupDiagram>(any);
      bool iso = is_isotropic_flag(in.flag, gram_matrix(f, in.shape));
      rep["isotropic"] = iso;
      MarkedReport mr = marked_relations(in.flag, in.shape, d);
      rep["component"] = io::to_json(mr, serialize_diagram(d));
      ok = ok && iso && mr.holds;
    }
  }
  rep["ok"] = ok;
  out << rep.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_build_flag(const Options& o, std::ostream& out) {
  MarkedCupDiagram a = need_typeD(o.diagram);
  Field f = field_or(o.field, Field::Q());
  auto params = io::parse_params(f, o.params);
  Flag fl = build_flag(f, a, params);
  json ps = json::array();
  for (const auto& p : params) ps.push_back(io::to_json(p));
  bool in = in_K_marked(fl, shape_of(a), a);
  json rep = {{"diagram", serialize_diagram(a)}, {"field", f.name()}, {"params", ps}, {"flag", io::to_json(fl)}, {"in_component", in}};
  out << rep.dump(2) << "\n";
  return in ? 0 : 1;
}

int cmd_verify_bundle(const Options& o, std::ostream& out) {
  MarkedCupDiagram a = need_typeD(o.diagram);
  Flag fl;
  if (!o.flag_file.empty()) {
    fl = load_flag(o).flag;
  } else {
    Field f = field_or(o.field, Field::Q());
    fl = build_flag(f, a, io::parse_params(f, o.params));
  }
  BundleReport r = verify_bundle_point(a, fl);
  out << io::to_json(r).dump(2) << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  Shape s = Shape::from_nk(o.n, o.k);
  EnumerationTask task{s, oracle_field(o), o.type == "D"};
  task.threads = o.threads;
  DecompositionReport r = o.type == "A" ? decompose(task, enumerate_typeA(o.n, o.k)) : decompose(task, enumerate_typeD(o.n, o.k));
  if (o.csv) {
    out << io::to_csv(r);
  } else {
    json rep = {{"type", o.type}, {"shape", s.str()}, {"field", task.field.name()}};
    rep.update(io::to_json(r));
    out << rep.dump(2) << "\n";
  }
  return r.uncovered_count == 0 && r.no_containment() ? 0 : 1;
}

int cmd_count(const Options& o, std::ostream& out) {
  Field f = oracle_field(o);
  auto any = parse_diagram(o.diagram);
  std::uint64_t c;
  int cups;
  bool empty = false;
  if (std::holds_alternative<CupDiagram>(any)) {
    c = count_component(std::get<CupDiagram>(any), f);
    cups = std::get<CupDiagram>(any).k();
  } else {
    const auto& adot = std::get<MarkedCupDiagram>(any);
    c = count_component(adot, f);
    cups = adot.num_cups();
    // without the rightmost-ray twist in F_q the whole fiber has no points
    Shape s = shape_of(adot);
    empty = !s.equal_parts() && !ray_twist(f, s);
  }
  std::uint64_t expected = empty ? 0 : 1;
  for (int i = 0; i < cups; ++i) expected *= f.p() + 1;
  json rep = {{"diagram", std::visit([](const auto& d) { return serialize_diagram(d); }, any)}, {"q", f.p()}, {"count", c}, {"expected", expected}};
  out << rep.dump(2) << "\n";
  return c == expected ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-row Springer fiber components: diagrams, quiver points, flags and finite-field checks", "springer"};
  app.require_subcommand(1);
  Options o;
  auto field_opt = [&](CLI::App* c) { c->add_option("--field", o.field, "Q, Qi or Fp:<p>"); };
  auto shape_opts = [&](CLI::App* c, bool required) {
    auto* n = c->add_option("--n", o.n, "number of boxes");
    auto* k = c->add_option("--k", o.k, "length of the second row");
    if (required) {
      n->required();
      k->required();
    }
  };
  auto type_opt = [&](CLI::App* c) { c->add_option("--type", o.type, "A or D")->required()->check(CLI::IsMember({"A", "D"})); };

  auto* enumerate = app.add_subcommand("enumerate", "list the cup diagrams of a shape");
  type_opt(enumerate);
  shape_opts(enumerate, true);

  auto* fold = app.add_subcommand("fold", "fold a type A diagram into type D diagrams");
  fold->add_option("--diagram", o.diagram, "type A diagram")->required();

  auto* unfold = app.add_subcommand("unfold", "type A diagrams a type D diagram unfolds to");
  unfold->add_option("--diagram", o.diagram, "type D diagram")->required();
  unfold->add_option("--target", o.target, "type A diagram to test");

  auto* st = app.add_subcommand("stats", "rho, c and sigma at every vertex");
  st->add_option("--diagram", o.diagram)->required();

  auto* cq = app.add_subcommand("check-quiver", "admissibility, stability, lift and component checks");
  cq->add_option("--fixture", o.fixture, "quiver JSON");
  cq->add_option("--diagram", o.diagram, "component to test");
  cq->add_option("--seed", o.seed, "sampling seed");
  shape_opts(cq, false);
  field_opt(cq);

  auto* mf = app.add_subcommand("maffei", "flag of a stable quiver point");
  mf->add_option("--fixture", o.fixture, "quiver JSON");
  mf->add_option("--seed", o.seed);
  shape_opts(mf, false);
  field_opt(mf);

  auto* cf = app.add_subcommand("check-flag", "x-stability, isotropy and component relations of a flag");
  cf->add_option("--flag", o.flag_file, "flag JSON")->required();
  cf->add_option("--diagram", o.diagram);
  shape_opts(cf, false);
  field_opt(cf);

  auto* bf = app.add_subcommand("build-flag", "flag of a type D component from P^1 parameters");
  bf->add_option("--diagram", o.diagram)->required();
  bf->add_option("--params", o.params, "one a:b per cup, comma separated");
  field_opt(bf);

  auto* vb = app.add_subcommand("verify-bundle", "round trip a flag through the bundle maps");
  vb->add_option("--diagram", o.diagram)->required();
  auto* vp = vb->add_option("--params", o.params);
  auto* vf = vb->add_option("--flag", o.flag_file);
  vp->excludes(vf);
  field_opt(vb);

  auto* dc = app.add_subcommand("decompose", "enumerate F_q-points and sort them into components");
  type_opt(dc);
  shape_opts(dc, true);
  dc->add_option("--q", o.q, "prime");
  dc->add_option("--threads", o.threads);
  dc->add_flag("--csv", o.csv, "per-component counts as CSV");
  field_opt(dc);

  auto* ct = app.add_subcommand("count", "F_q-points of one component");
  ct->add_option("--diagram", o.diagram)->required();
  ct->add_option("--q", o.q, "prime");
  field_opt(ct);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "springer: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*enumerate) return cmd_enumerate(o, out);
    if (*fold) return cmd_fold(o, out);
    if (*unfold) return cmd_unfold(o, out);
    if (*st) return cmd_stats(o, out);
    if (*cq) return cmd_check_quiver(o, out);
    if (*mf) return cmd_maffei(o, out);
    if (*cf) return cmd_check_flag(o, out);
    if (*bf) return cmd_build_flag(o, out);
    if (*vb) return cmd_verify_bundle(o, out);
    if (*dc) return cmd_decompose(o, out);
    if (*ct) return cmd_count(o, out);
  } catch (const UsageError& e) {
    err << "springer: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "springer: bad JSON: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (is_input_error(e)) {
      err << "springer: " << e.what() << "\n";
      return 2;
    }
    out << json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return 2;
}

}  // namespace springer::cli

#include "mdl/catalog.hpp"
#include "mdl/mdl_model.hpp"
#include "mdl/physical_constraints.hpp"
#include "mdl/pipeline.hpp"
#include "mdl/polytope.hpp"
#include "mdl/quantum.hpp"
#include "mdl/symmetry.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace mdl;

namespace {

constexpr const char* kTool = "mdl-tool";
constexpr const char* kVersion = "1.0.0";

constexpr int kExitUsage = 2;
constexpr int kExitInconsistent = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational flag_rational(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

SourceBounds flag_bounds(const std::string& l, const std::string& h) {
  try {
    return SourceBounds(flag_rational(l, "l"), flag_rational(h, "h"));
  } catch (const InvalidBounds& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

json strings(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json inequality_json(const LinearInequality& in) { return json{{"coeffs", strings(in.coeffs)}, {"bound", to_string(in.bound)}}; }

json header(const std::string& command, json params) {
  return json{{"tool", kTool}, {"version", kVersion}, {"command", command}, {"parameters", std::move(params)}};
}

std::vector<std::string> text_header(const std::string& command, const std::string& params) {
  return {std::string(kTool) + " " + kVersion, "command: " + command + " " + params};
}

// Output goes to the file named by --out or to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

std::string fixed(double x, int digits = 20) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

// ---------------------------------------------------------------- vertices

struct BoundsFlags {
  std::string l = "0";
  std::string h;
  void add(CLI::App* app) {
    app->add_option("--l", l, "lower bound l as p/q")->capture_default_str();
    app->add_option("--h", h, "upper bound h as p/q")->required();
  }
  std::string text() const { return "l=" + l + " h=" + h; }
};

int cmd_vertices(const BoundsFlags& f, const std::string& out_path) {
  SourceBounds b = flag_bounds(f.l, f.h);
  VRepresentation v = mdl_vertices(b);
  auto comments = text_header("vertices", f.text());
  comments.push_back("vertices " + std::to_string(v.vertices.size()));
  if (auto note = boundary_note(b)) comments.push_back("note: " + *note);
  Output out(out_path);
  write_vrep(out.stream(), v, comments);
  if (out.to_file()) std::cout << v.vertices.size() << " vertices written to " << out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------- facets

int cmd_facets(const BoundsFlags& f, const std::string& restrict, const std::string& out_path,
               const std::string& hrep_path) {
  if (restrict != "none" && restrict != "ns-uniform") throw UsageError("--restrict must be none or ns-uniform");
  SourceBounds b = flag_bounds(f.l, f.h);
  const bool restricted = restrict == "ns-uniform";
  FacetPipeline p = run_facet_pipeline(b, restricted);

  RelabelingGroup group;
  InequalityAction act = restricted ? slice_action(group) : flat_action(b.scenario, p.facets.h.equalities);
  const auto& listed = restricted ? p.slice.inequalities : p.facets.h.inequalities;
  std::set<LinearInequality> expanded, given;
  for (const auto& fam : p.families)
    for (const auto& m : orbit(fam.representative, group, act)) expanded.insert(m);
  for (const auto& in : listed) given.insert(act(Relabeling::identity(b.scenario), in));

  std::optional<TableMatch> match;
  if (restricted && sgn(b.lower) == 0 && b.upper > Rational(1, 4) && b.upper < Rational(1, 3))
    match = match_table(p.families, b.upper);

  json report = header("facets", {{"l", to_string(b.lower)}, {"h", to_string(b.upper)}, {"restrict", restrict}});
  if (auto note = boundary_note(b)) report["boundary_note"] = *note;
  report["vertex_count"] = p.vertices.vertices.size();
  report["facet_count"] = p.facets.h.inequalities.size();
  report["equality_count"] = p.facets.h.equalities.size();
  report["polytope_dimension"] = p.facets.polytope_dimension;
  if (restricted) {
    report["basis"] = TableBasis::labels();
    report["slice_meets_interior"] = p.slice_meets_interior;
    report["slice_facet_count"] = p.slice.inequalities.size();
  }
  report["family_count"] = p.families.size();
  report["orbits_recover_facets"] = expanded == given;
  const LinearInequality positivity = slice_positivity();
  json fams = json::array();
  for (std::size_t k = 0; k < p.families.size(); ++k) {
    const Family& fam = p.families[k];
    json j{{"index", k},
           {"representative", inequality_json(fam.representative)},
           {"orbit_size", fam.orbit_size},
           {"members_found", fam.members.size()}};
    if (match) {
      json rows = json::array();
      for (std::size_t r = 0; r < match->family_of_row.size(); ++r)
        if (match->family_of_row[r] == static_cast<int>(k)) rows.push_back(r + 1);
      j["table_rows"] = rows;
      j["positivity"] = match->positivity == static_cast<int>(k);
    } else if (restricted) {
      auto o = orbit(positivity, group, act);
      j["positivity"] = std::binary_search(o.begin(), o.end(), fam.representative);
    }
    fams.push_back(std::move(j));
  }
  report["families"] = fams;
  if (match) report["table_match"] = {{"exact", match->exact}, {"family_of_row", match->family_of_row}};

  if (!hrep_path.empty()) {
    std::ofstream hs(hrep_path);
    if (!hs) throw UsageError("cannot open " + hrep_path);
    auto comments = text_header("facets", f.text() + " restrict=" + restrict);
    if (restricted) {
      std::string cols = "columns:";
      for (std::size_t i = 1; i < TableBasis::labels().size(); ++i) cols += " " + TableBasis::labels()[i];
      comments.push_back(cols);
    }
    write_hrep(hs, restricted ? p.slice : p.facets.h, comments);
  }
  Output out(out_path);
  out.stream() << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- check

struct PointFile {
  std::vector<RationalVector> points;
  bool decimal = false;
};

PointFile read_points(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open point file " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  PointFile out;
  std::istringstream lines(buf.str());
  for (std::string line; std::getline(lines, line);) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.find('.') != std::string::npos) out.decimal = true;
  }
  std::istringstream is2(buf.str());
  Representation r;
  try {
    r = read_representation(is2);
  } catch (const ParseError& e) {
    throw InconsistentInput(std::string("point file: ") + e.what());
  }
  auto* v = std::get_if<VRepresentation>(&r);
  if (!v || v->vertices.empty()) throw InconsistentInput("point file holds no points");
  out.points = v->vertices;
  if (v->dimension != static_cast<std::size_t>(Scenario::chsh().size()))
    throw InconsistentInput("points must have 16 entries in (a, b, x, y) order");
  return out;
}

int cmd_check(const BoundsFlags& f, const std::string& point_path, bool conditional, const std::string& ineq_path,
              double tolerance, const std::string& out_path) {
  SourceBounds b = flag_bounds(f.l, f.h);
  PointFile pf = read_points(point_path);
  std::vector<LinearInequality> extra;
  if (!ineq_path.empty()) {
    std::ifstream is(ineq_path);
    if (!is) throw UsageError("cannot open inequality file " + ineq_path);
    auto r = read_representation(is);
    auto* h = std::get_if<HRepresentation>(&r);
    if (!h) throw InconsistentInput("inequality file holds no constraint rows");
    if (h->dimension != 16 && h->dimension != TableBasis::kParams)
      throw InconsistentInput("inequalities must be over 16 full or 8 slice coordinates");
    extra = h->inequalities;
  }
  const Scenario s = Scenario::chsh();
  VRepresentation v = mdl_vertices(b);
  const LinearInequality golden = golden_inequality(b);
  const ConstraintSet nsu = ns_uniform_constraints(s);
  const double tol = pf.decimal ? tolerance : 0.0;

  json results = json::array();
  for (std::size_t k = 0; k < pf.points.size(); ++k) {
    RationalVector p = pf.points[k];
    if (conditional) {
      for (auto& e : p) e /= 4;
    }
    Rational total = 0;
    for (const auto& e : p) {
      if (e < -Rational(tol)) throw InconsistentInput("point " + std::to_string(k) + " has a negative entry");
      total += e;
    }
    if (abs(total - 1) > Rational(tol)) throw InconsistentInput("point " + std::to_string(k) + " does not sum to 1");

    json j{{"index", k}};
    if (pf.decimal) {
      Rational dist = hull_distance(v, p);
      j["status"] = dist.get_d() <= tol ? "inside-within-tolerance" : "outside";
      j["hull_distance"] = dist.get_d();
    } else {
      Membership m = membership(v, p);
      if (auto* in = std::get_if<Inside>(&m)) {
        j["status"] = "inside";
        j["weights"] = strings(in->weights);
      } else {
        const LinearInequality& sep = std::get<Outside>(m).separator;
        j["status"] = "outside";
        j["separator"] = inequality_json(sep);
        j["separator_lhs"] = to_string(-sep.slack(p));
      }
    }
    Rational g = evaluate(golden, p);
    j["golden_lhs"] = pf.decimal ? json(g.get_d()) : json(to_string(g));
    j["golden_violated"] = g.get_d() > tol;
    Rational chsh = dot(chsh_full(), p);
    j["chsh_full"] = pf.decimal ? json(chsh.get_d()) : json(to_string(chsh));
    if (pf.decimal) {
      double worst = 0;
      for (const auto& e : nsu.equalities) worst = std::max(worst, std::abs(e.slack(p).get_d()));
      j["nonsignaling_uniform_residual"] = worst;
    } else {
      j["nonsignaling_uniform"] = nsu.satisfied_by(p);
    }
    if (!extra.empty()) {
      RationalVector coords = extra.front().coeffs.size() == 16 ? p : TableBasis::coordinates(p);
      json res = json::array();
      for (std::size_t i = 0; i < extra.size(); ++i) {
        Rational r = evaluate(extra[i], coords);
        res.push_back({{"index", i},
                       {"lhs", pf.decimal ? json(r.get_d()) : json(to_string(r))},
                       {"violated", r.get_d() > tol}});
      }
      j["inequalities"] = res;
    }
    results.push_back(std::move(j));
  }
  json report = header("check", {{"l", to_string(b.lower)},
                                 {"h", to_string(b.upper)},
                                 {"point_file", point_path},
                                 {"conditional", conditional},
                                 {"exact", !pf.decimal},
                                 {"tolerance", tol}});
  if (auto note = boundary_note(b)) report["boundary_note"] = *note;
  report["points"] = results;
  Output out(out_path);
  out.stream() << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- scan

int cmd_scan(const std::string& grid, std::size_t random_count, std::uint64_t seed, const std::string& out_path) {
  std::vector<Rational> hs;
  json params;
  if (!grid.empty() && random_count > 0) throw UsageError("use either --h-grid or --random");
  if (random_count > 0) {
    hs = random_h_values(random_count, seed);
    params = {{"random", random_count}, {"seed", seed}, {"resolution", 1000000}};
  } else {
    for (const auto& t : split(grid, ',')) {
      Rational h = flag_rational(t, "h-grid");
      if (h < Rational(1, 4) || h > Rational(1, 3)) throw UsageError("grid value outside [1/4, 1/3]: " + t);
      hs.push_back(h);
    }
    params = {{"h_grid", grid}};
  }
  if (hs.empty()) throw UsageError("empty h grid");
  json points = json::array();
  std::size_t valid = 0, saturated = 0;
  for (const auto& h : hs) {
    ScanPoint sp = check_table_at(h);
    valid += sp.all_valid();
    saturated += sp.all_saturated();
    json fams = json::array();
    for (const auto& c : sp.checks)
      fams.push_back({{"family", c.family}, {"max", to_string(c.max_value)}, {"valid", c.valid}, {"saturated", c.saturated}});
    points.push_back({{"h", to_string(h)}, {"valid", sp.all_valid()}, {"saturated", sp.all_saturated()}, {"families", fams}});
  }
  json report = header("scan", params);
  report["summary"] = {{"points", hs.size()}, {"all_valid", valid}, {"all_saturated", saturated}};
  report["points"] = points;
  Output out(out_path);
  out.stream() << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- slice

SliceSpec preset_spec(const std::string& name, int resolution) {
  if (name == "chsh-pr") return chsh_plane(resolution);
  if (name == "chsh-local") {
    SliceSpec spec = chsh_plane(resolution);
    const Scenario s = Scenario::chsh();
    RationalVector det = compose(InputDistribution::uniform(s), nonsignaling_vertices().front()).values();
    for (std::size_t i = 0; i < det.size(); ++i) spec.direction2[i] = det[i] - spec.center[i];
    return spec;
  }
  throw UsageError("unknown slice preset " + name + " (chsh-pr, chsh-local)");
}

SliceSpec file_spec(const std::string& path, int resolution) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open slice spec " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw InconsistentInput(std::string("slice spec: ") + e.what());
  }
  auto vec = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 16)
      throw InconsistentInput(std::string("slice spec needs 16 entries in ") + key);
    RationalVector v;
    for (const auto& e : j[key]) v.push_back(parse_rational(e.is_string() ? e.get<std::string>() : e.dump()));
    return v;
  };
  SliceSpec spec{vec("center"), vec("direction1"), vec("direction2"), j.value("resolution", resolution)};
  if (rank({spec.direction1, spec.direction2}) != 2) throw InconsistentInput("slice directions are dependent");
  return spec;
}

std::vector<RationalVector> composed(const std::vector<ConditionalDistribution>& boxes) {
  const InputDistribution q = InputDistribution::uniform(Scenario::chsh());
  std::vector<RationalVector> out;
  for (const auto& b : boxes) out.push_back(compose(q, b).values());
  return out;
}

int cmd_slice(const std::string& preset, const std::string& spec_path, const std::string& sets, int resolution,
              unsigned seed, const std::string& out_path) {
  if (resolution < 3) throw UsageError("--resolution must be at least 3");
  if (preset.empty() == spec_path.empty()) throw UsageError("give exactly one of --preset or --spec");
  SliceSpec spec = preset.empty() ? file_spec(spec_path, resolution) : preset_spec(preset, resolution);
  auto names = split(sets, ',');
  if (names.empty()) throw UsageError("--sets is empty");

  std::vector<std::pair<std::string, std::vector<SlicePoint>>> curves;
  for (const auto& name : names) {
    std::vector<SlicePoint> pts;
    try {
      if (name == "local") {
        auto det = nonsignaling_vertices();
        det.erase(det.begin() + 16, det.end());
        pts = polytope_slice(spec, composed(det));
      } else if (name == "ns") {
        pts = polytope_slice(spec, composed(nonsignaling_vertices()));
      } else if (name.rfind("mdl:", 0) == 0) {
        auto parts = split(name.substr(4), ':');
        if (parts.size() != 2) throw UsageError("mdl set is written mdl:l:h");
        pts = polytope_slice(spec, mdl_vertices(flag_bounds(parts[0], parts[1])).vertices);
      } else if (name == "quantum") {
        pts = quantum_slice(spec, seed);
      } else {
        throw UsageError("unknown set " + name + " (local, ns, mdl:l:h, quantum)");
      }
    } catch (const std::invalid_argument& e) {
      throw InconsistentInput(name + ": " + e.what());
    }
    curves.emplace_back(name, std::move(pts));
  }

  Output out(out_path);
  auto& os = out.stream();
  for (const auto& c : text_header("slice", (preset.empty() ? "spec=" + spec_path : "preset=" + preset) +
                                                " sets=" + sets + " resolution=" + std::to_string(spec.resolution) +
                                                " seed=" + std::to_string(seed)))
    os << "# " << c << "\n";
  if (!preset.empty()) os << "# preset plane is a reconstruction\n";
  os << "# coordinates: point = center + u direction1 + v direction2\n";
  os << "# quantum rows: projection boundary sampled by numerical support maximization\n";
  os << "set,ray,angle,u,v,exact_u,exact_v\n";
  os << std::setprecision(17);
  for (const auto& [name, pts] : curves)
    for (const auto& p : pts)
      os << name << ',' << p.ray << ',' << p.angle << ',' << p.u << ',' << p.v << ',' << p.exact_u << ','
         << p.exact_v << "\n";
  return 0;
}

// ---------------------------------------------------------------- quantum-eval

int cmd_quantum_eval(const std::string& preset, const std::vector<double>& angles, double alpha, const BoundsFlags& f,
                     const std::vector<double>& inputs_flag, const std::string& point_path,
                     const std::string& out_path) {
  SourceBounds b = flag_bounds(f.l, f.h);
  std::optional<TwoQubitState> psi;
  std::optional<MeasurementSetup> m;
  if (preset == "golden") {
    auto g = golden_setup();
    psi = g.state;
    m = g.setup;
  } else if (preset == "chsh") {
    auto [st, setup] = optimal_chsh_setup();
    psi = st;
    m = setup;
  } else if (preset == "angles") {
    if (angles.size() != 4) throw UsageError("--angles needs a0,a1,b0,b1");
    psi = TwoQubitState::schmidt(alpha);
    m = MeasurementSetup::from_angles(angles[0], angles[1], angles[2], angles[3]);
  } else {
    throw UsageError("--preset must be golden, chsh or angles");
  }
  std::array<double, 4> inputs = kUniformInputs;
  if (!inputs_flag.empty()) {
    if (inputs_flag.size() != 4) throw UsageError("--inputs needs four probabilities");
    std::copy(inputs_flag.begin(), inputs_flag.end(), inputs.begin());
  }
  const Scenario s = Scenario::chsh();
  auto box = born_rule(*psi, *m);
  std::vector<double> full;
  try {
    full = compose(box, inputs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double l = b.lower.get_d(), h = b.upper.get_d();

  json report = header("quantum-eval", {{"preset", preset}, {"l", to_string(b.lower)}, {"h", to_string(b.upper)}, {"inputs", inputs}});
  report["conditional"] = box;
  report["chsh"] = chsh_value(box);
  report["signaling_residual"] = signaling_residual(box);
  report["golden_lhs"] = evaluate_mdl_violation(*psi, *m, l, h, inputs);
  report["p00_given_00"] = box[s.index(0, 0, 0, 0)];
  report["hardy_zeros"] = {box[s.index(0, 1, 0, 1)], box[s.index(1, 0, 1, 0)], box[s.index(0, 0, 1, 1)]};
  report["slice_coordinates"] = slice_coordinates(box);
  CriticalPoint c = chsh_critical_h(box);
  report["chsh_critical_h"] = c.violated ? json(c.h) : json(nullptr);
  if (b.upper >= Rational(1, 4) && b.upper <= Rational(1, 3)) {
    json rows = json::array();
    auto t = slice_coordinates(box);
    for (int i = 1; i <= kTableFamilies; ++i) {
      CriticalPoint fc = family_critical_h(i, box);
      rows.push_back({{"family", i},
                      {"lhs", evaluate_row(table1_row(i, h), t)},
                      {"critical_h", fc.violated ? json(fc.h) : json(nullptr)}});
    }
    report["table_families"] = rows;
  }
  if (!point_path.empty()) {
    std::ofstream ps(point_path);
    if (!ps) throw UsageError("cannot open " + point_path);
    for (const auto& line : text_header("quantum-eval", "preset=" + preset)) ps << "# " << line << "\n";
    ps << "# full distribution P(abxy) in (a, b, x, y) order\n";
    ps << "dim " << full.size() << "\n";
    for (std::size_t i = 0; i < full.size(); ++i) ps << (i ? " " : "") << fixed(full[i]);
    ps << "\n";
  }
  Output out(out_path);
  out.stream() << std::setprecision(17) << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- chsh-bound

int cmd_chsh_bound(const BoundsFlags& f, const std::string& out_path) {
  SourceBounds b = flag_bounds(f.l, f.h);
  if (!(b.scenario == Scenario::chsh())) throw UsageError("chsh-bound needs (2,2,2,2)");
  MdlChshBound bound = mdl_chsh_bound(b);
  HullOptimum opt = optimize_over_hull(mdl_vertices(b), ns_uniform_constraints().equalities, chsh_full(), Sense::Maximize);
  if (opt.status != LPStatus::Optimal) throw InconsistentInput("constrained MDL polytope is empty");
  json report = header("chsh-bound", {{"l", to_string(b.lower)}, {"h", to_string(b.upper)}});
  if (auto note = boundary_note(b)) report["boundary_note"] = *note;
  report["l_prime"] = to_string(bound.l_prime);
  report["bound"] = to_string(bound.conditional_bound);
  report["lp_value"] = to_string(4 * opt.value);
  report["lp_matches_bound"] = 4 * opt.value == bound.conditional_bound;
  report["maximizer_count"] = bound.maximizers.size();
  report["witness"] = strings(bound.witness);
  report["witness_nonsignaling"] = bound.witness_nonsignaling;
  report["witness_uniform_inputs"] = bound.witness_uniform_inputs;
  Output out(out_path);
  out.stream() << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-dependent locality polytopes: vertices, facets, checks and slices"};
  app.set_version_flag("--version", std::string(kTool) + " " + kVersion);
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  std::string out_path;

  BoundsFlags vb;
  auto* vertices = app.add_subcommand("vertices", "write the MDL polytope vertices");
  vb.add(vertices);
  vertices->add_option("--out", out_path, "output file");

  BoundsFlags fb;
  std::string restrict = "none", hrep_path;
  auto* facets = app.add_subcommand("facets", "facets and relabeling families (JSON report)");
  fb.add(facets);
  facets->add_option("--restrict", restrict, "none or ns-uniform")->capture_default_str();
  facets->add_option("--out", out_path, "JSON report file");
  facets->add_option("--hrep", hrep_path, "also write the facets as a constraint file");

  BoundsFlags cb;
  std::string point_path, ineq_path;
  bool conditional = false;
  double tolerance = 1e-9;
  auto* check = app.add_subcommand("check", "membership and inequality evaluation of points");
  cb.add(check);
  check->add_option("--point", point_path, "point file (dim 16, one row per point)")->required();
  check->add_flag("--conditional", conditional, "rows are P(ab|xy); uniform inputs are composed in");
  check->add_option("--inequalities", ineq_path, "constraint file to evaluate");
  check->add_option("--tolerance", tolerance, "tolerance for decimal points")->capture_default_str();
  check->add_option("--out", out_path, "JSON report file");

  std::string grid;
  std::size_t random_count = 0;
  std::uint64_t seed = 1;
  auto* scan = app.add_subcommand("scan", "LP validity and saturation of the table families over h");
  scan->add_option("--h-grid", grid, "comma-separated h values");
  scan->add_option("--random", random_count, "number of seeded random h in ]1/4, 1/3[");
  scan->add_option("--seed", seed, "random seed")->capture_default_str();
  scan->add_option("--out", out_path, "JSON report file");

  std::string preset, spec_path, sets = "local,ns";
  int resolution = 360;
  unsigned slice_seed = 1;
  auto* slice = app.add_subcommand("slice", "2D slice boundaries as CSV polylines");
  slice->add_option("--preset", preset, "chsh-pr or chsh-local");
  slice->add_option("--spec", spec_path, "JSON slice spec with center, direction1, direction2");
  slice->add_option("--sets", sets, "comma list of local, ns, mdl:l:h, quantum")->capture_default_str();
  slice->add_option("--resolution", resolution, "number of rays")->capture_default_str();
  slice->add_option("--seed", slice_seed, "seed for the quantum boundary search")->capture_default_str();
  slice->add_option("--out", out_path, "CSV file");

  BoundsFlags qb;
  qb.h = "1/4";
  std::string qpreset = "golden", qpoint;
  std::vector<double> angles, inputs;
  double alpha = std::numbers::pi / 4;
  auto* qeval = app.add_subcommand("quantum-eval", "Born-rule box and its MDL quantities");
  qeval->add_option("--l", qb.l, "lower bound l")->capture_default_str();
  qeval->add_option("--h", qb.h, "upper bound h")->capture_default_str();
  qeval->add_option("--preset", qpreset, "golden, chsh or angles")->capture_default_str();
  qeval->add_option("--angles", angles, "a0,a1,b0,b1 for --preset angles")->delimiter(',');
  qeval->add_option("--alpha", alpha, "Schmidt angle for --preset angles");
  qeval->add_option("--inputs", inputs, "q00,q01,q10,q11 input distribution")->delimiter(',');
  qeval->add_option("--point-out", qpoint, "write the full distribution as a point file");
  qeval->add_option("--out", out_path, "JSON report file");

  BoundsFlags bb;
  auto* chsh = app.add_subcommand("chsh-bound", "MDL bound on CHSH with its LP check");
  bb.add(chsh);
  chsh->add_option("--out", out_path, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*vertices) return cmd_vertices(vb, out_path);
    if (*facets) return cmd_facets(fb, restrict, out_path, hrep_path);
    if (*check) return cmd_check(cb, point_path, conditional, ineq_path, tolerance, out_path);
    if (*scan) return cmd_scan(grid, random_count, seed, out_path);
    if (*slice) return cmd_slice(preset, spec_path, sets, resolution, slice_seed, out_path);
    if (*qeval) return cmd_quantum_eval(qpreset, angles, alpha, qb, inputs, qpoint, out_path);
    if (*chsh) return cmd_chsh_bound(bb, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InconsistentInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

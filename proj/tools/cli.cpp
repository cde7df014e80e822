#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tubeduality/catdata.hpp"
#include "tubeduality/decomposition.hpp"
#include "tubeduality/doubles.hpp"
#include "tubeduality/duality.hpp"
#include "tubeduality/format.hpp"
#include "tubeduality/hamiltonian.hpp"
#include "tubeduality/spectra.hpp"

namespace tubeduality::cli {

namespace {

using json = nlohmann::ordered_json;

// Bad flag values (unknown model, boundary, coupling ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A check that ran and failed; carries the failure report.
struct ValidationFailure : std::runtime_error {
  json report;
  ValidationFailure(const std::string& what, json r) : std::runtime_error(what), report(std::move(r)) {}
};

json num(double x) { return round15(x); }
json num(cplx z) { return json::array({round15(z.real()), round15(z.imag())}); }

json num_list(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(num(clean(m(r, c))));
    rows.push_back(row);
  }
  return rows;
}

json operator_json(const SparseOperator& op) {
  json trip = json::array();
  for (const auto& t : op.normalized().triplets)
    trip.push_back({t.row(), t.col(), num(clean(t.value()).real()), num(clean(t.value()).imag())});
  return json{{"dim", op.rows}, {"triplets", trip}};
}

json couplings_json(const Couplings& c) {
  json j = json::object();
  for (const auto& [k, v] : c) j[k] = num(v);
  return j;
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << j.dump(2) << "\n";
}

template <class F>
auto checked(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

const ModelSpec& model_arg(const std::string& name) {
  try {
    return model_by_name(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string default_boundary(const ModelSpec& m, const std::string& bc) {
  return bc.empty() ? boundary_names(m).front() : bc;
}

AssembledModel assemble_arg(const ModelSpec& m, int length, const std::string& bc, const std::string& couplings) {
  if (length < 2) throw UsageError("--L must be at least 2");
  auto boundary = checked([&] { return parse_boundary(m, bc); });
  auto c = checked([&] { return parse_couplings(couplings); });
  checked([&] { return resolve_couplings(m, c); });
  return assemble(m, length, boundary, c);
}

// Runs f(i) for i < n on at most `threads` workers; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(int n, int threads, F f) {
  std::vector<T> out(n);
  threads = std::max(1, threads);
  for (int start = 0; start < n; start += threads) {
    std::vector<std::future<T>> jobs;
    const int stop = std::min(n, start + threads);
    for (int i = start; i < stop; ++i) jobs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, f, i));
    for (int i = start; i < stop; ++i) out[i] = jobs[i - start].get();
  }
  return out;
}

std::string piece_name(const SectorPiece& p) {
  return p.copy == 0 ? p.label.label : p.label.label + ":" + std::to_string(p.copy);
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& name, double tol, const std::string& out_path, std::ostream& out) {
  CategoryBundle b;
  try {
    b = resolve_bundle(name);
  } catch (const std::exception& e) {
    throw ValidationFailure("bundle could not be loaded", json{{"bundle", name}, {"reason", e.what()}});
  }
  const ValidationReport r = validate_bundle(b);
  json j;
  j["bundle"] = b.name;
  json u = json::object();
  for (const auto& [k, v] : r.unitarity) u[k] = num(v);
  j["unitarity"] = u;
  j["unit_gauge"] = num(r.unit_gauge);
  j["pulling_through"] = num(r.pulling_through);
  j["mpo_fusion"] = num(r.mpo_fusion);
  j["fpdim_mismatch"] = num(r.fpdim_mismatch);
  j["ring_violations"] = r.ring_violations;
  json pr = json::array();
  for (const auto& p : r.printed)
    pr.push_back({{"group", p.group}, {"entries", p.entries}, {"conjugated", p.conjugated}, {"residual", num(p.residual)}});
  j["printed"] = pr;
  j["tolerance"] = num(tol);
  j["ok"] = r.ok(tol);
  if (!r.ok(tol)) throw ValidationFailure("symbol data failed validation", j);
  emit(j, out_path, out);
  return kExitOk;
}

int cmd_dims(const std::string& model, int length, const std::string& bc, std::ostream& out) {
  const ModelSpec& m = model_arg(model);
  if (length < 2) throw UsageError("--L must be at least 2");
  json dims = json::object();
  std::vector<std::string> labels = bc.empty() ? boundary_names(m) : std::vector<std::string>{bc};
  for (const auto& l : labels) {
    auto boundary = checked([&] { return parse_boundary(m, l); });
    int d = 0;
    try {
      d = enumerate(make_config(m, length, boundary)).dim();
    } catch (const std::runtime_error&) {
      d = 0;
    }
    dims[l] = d;
  }
  emit(json{{"model", m.name}, {"L", length}, {"dims", dims}}, "", out);
  return kExitOk;
}

int cmd_build(const std::string& model, int length, const std::string& bc_in, const std::string& couplings,
              const std::string& out_path, std::ostream& out) {
  const ModelSpec& m = model_arg(model);
  const std::string bc = default_boundary(m, bc_in);
  AssembledModel am = assemble_arg(m, length, bc, couplings);
  json j{{"model", m.name}, {"L", length}, {"bc", bc}, {"couplings", couplings_json(am.couplings)}};
  j.update(operator_json(am.hamiltonian));
  emit(j, out_path, out);
  return kExitOk;
}

int cmd_sectors(const std::string& model, int length, const std::string& bc_in, const std::string& couplings,
                const std::string& projector_dir, std::ostream& out) {
  const ModelSpec& m = model_arg(model);
  const std::string bc = default_boundary(m, bc_in);
  AssembledModel am = assemble_arg(m, length, bc, couplings);
  auto sys = sector_system(m);
  SectorDecomposition d = sector_decompose(*sys, am.space, am.hamiltonian);
  json list = json::array();
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const auto& p = d.pieces[i];
    json e{{"sector", p.label.label},
           {"boundary", boundary_names(m).at(p.boundary.index)},
           {"copy", p.copy},
           {"dim", p.dim()}};
    if (!projector_dir.empty()) {
      std::filesystem::create_directories(projector_dir);
      const std::string file = "projector_" + std::to_string(i) + ".json";
      json pj{{"sector", p.label.label}, {"copy", p.copy}};
      pj.update(operator_json(SparseOperator::from_dense(p.projector(), 1e-12)));
      emit(pj, (std::filesystem::path(projector_dir) / file).string(), out);
      e["projector"] = file;
    }
    list.push_back(e);
  }
  if (d.completeness > kDerivedTol)
    throw ValidationFailure("sector projectors are not complete",
                            json{{"model", m.name}, {"completeness", num(d.completeness)}});
  emit(json{{"model", m.name},
            {"L", length},
            {"bc", bc},
            {"dim", am.space.dim()},
            {"completeness", num(d.completeness)},
            {"sectors", list}},
       "", out);
  return kExitOk;
}

int cmd_spectrum(const std::string& model, int length, const std::string& bc_in, const std::string& couplings,
                 const std::string& sector, const std::string& format, const std::string& out_path, int threads,
                 std::ostream& out) {
  const ModelSpec& m = model_arg(model);
  const std::string bc = default_boundary(m, bc_in);
  AssembledModel am = assemble_arg(m, length, bc, couplings);
  auto sys = sector_system(m);
  SectorDecomposition d = sector_decompose(*sys, am.space, am.hamiltonian);

  std::vector<int> chosen;
  for (int i = 0; i < int(d.pieces.size()); ++i)
    if (sector.empty() || d.pieces[i].label.label == sector) chosen.push_back(i);
  if (!sector.empty() && chosen.empty()) throw UsageError("no sector " + sector + " on this boundary");

  auto spectra = parallel_map<Eigensystem>(int(chosen.size()), threads,
                                           [&](int i) { return eigensolve(d.blocks[chosen[i]], true); });
  const Mat h = am.hamiltonian.dense();
  const Eigensystem full = eigensolve(h, false);
  double residual = 0.0;
  std::vector<double> joined;
  for (const auto& s : spectra) {
    residual = std::max(residual, s.residual);
    joined.insert(joined.end(), s.values.begin(), s.values.end());
  }
  double trace_defect = 0.0;
  {
    double sum = 0.0;
    for (double v : full.values) sum += v;
    trace_defect = std::abs(sum - h.trace().real());
  }

  if (format == "csv") {
    std::ostringstream csv;
    csv << "sector,index,eigenvalue\n";
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::size_t k = 0; k < spectra[i].values.size(); ++k)
        csv << '"' << piece_name(d.pieces[chosen[i]]) << "\"," << k << ',' << fmt15(spectra[i].values[k]) << "\n";
    if (out_path.empty()) {
      out << csv.str();
    } else {
      std::ofstream f(out_path);
      if (!f) throw UsageError("cannot write " + out_path);
      f << csv.str();
    }
    return kExitOk;
  }

  json sectors = json::array();
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto& p = d.pieces[chosen[i]];
    json deg = json::array();
    for (auto [lvl, n] : degeneracies(spectra[i].values)) deg.push_back({num(lvl), n});
    sectors.push_back({{"sector", p.label.label},
                       {"boundary", boundary_names(m).at(p.boundary.index)},
                       {"copy", p.copy},
                       {"dim", p.dim()},
                       {"eigenvalues", num_list(spectra[i].values)},
                       {"degeneracies", deg}});
  }
  json metrics{{"trace_defect", num(trace_defect)},
               {"completeness", num(d.completeness)},
               {"eigen_residual", num(residual)}};
  if (sector.empty()) metrics["sector_union_gap"] = num(compare_spectra(joined, full.values).max_gap);
  emit(json{{"model", m.name},
            {"L", length},
            {"bc", bc},
            {"couplings", couplings_json(am.couplings)},
            {"dim", am.space.dim()},
            {"sectors", sectors},
            {"spectrum", num_list(full.values)},
            {"metrics", metrics}},
       out_path, out);
  return kExitOk;
}

int cmd_map(const std::string& from, const std::string& to, const std::string& functor, int max_length,
            const std::string& out_path, std::ostream& out) {
  const ModelSpec& a = model_arg(from);
  const ModelSpec& b = model_arg(to);
  if (a.family != b.family) throw UsageError("models do not share the input category");
  const auto names = functor_names(a, b);
  int f = 0;
  if (!functor.empty()) {
    auto it = std::find(names.begin(), names.end(), functor);
    if (it != names.end()) {
      f = int(it - names.begin());
    } else {
      try {
        std::size_t used = 0;
        f = std::stoi(functor, &used);
        if (used != functor.size()) throw std::invalid_argument(functor);
      } catch (const std::exception&) {
        throw UsageError("unknown functor " + functor);
      }
      if (f < 0 || f >= int(names.size())) throw UsageError("functor index out of range");
    }
  }
  SectorMap sm = sector_map(a, b, f, max_length);
  json mapping = json::object();
  for (const auto& [z, w] : sm.mapping) mapping[z] = w;
  json entries = json::array();
  for (const auto& e : sm.entries)
    entries.push_back({{"source", e.source},
                       {"target", e.target},
                       {"source_boundary", e.source_boundary},
                       {"target_boundary", e.target_boundary},
                       {"L", e.length},
                       {"overlap", num(e.overlap)}});
  json j{{"from", a.name},     {"to", b.name},         {"functor", sm.functor}, {"bijective", sm.bijective},
         {"mapping", mapping}, {"entries", entries}, {"unresolved", sm.unresolved}};
  if (!sm.bijective) throw ValidationFailure("sector map is not a bijection", j);
  emit(j, out_path, out);
  return kExitOk;
}

std::string table(const DualityReport& r) {
  std::ostringstream s;
  s << r.source_model << " -> " << r.target_model << "  L=" << r.length << "  intertwining " << fmt15(r.intertwining)
    << "\n";
  s << std::left << std::setw(12) << "source" << std::setw(8) << "bc" << std::setw(12) << "target" << std::setw(8) << "bc"
    << std::setw(6) << "dim" << std::setw(24) << "gap" << std::setw(24) << "transport" << "ok\n";
  for (const auto& m : r.matches)
    s << std::left << std::setw(12) << m.source << std::setw(8) << m.source_boundary << std::setw(12) << m.target
      << std::setw(8) << m.target_boundary << std::setw(6) << m.source_spectrum.size() << std::setw(24) << fmt15(m.gap)
      << std::setw(24) << fmt15(m.transport_gap) << (m.match ? "yes" : "NO") << "\n";
  s << (r.ok ? "all sectors matched" : "MISMATCH") << " (" << r.matches.size() << " sector pairs)\n";
  return s.str();
}

int cmd_verify(const std::string& pair, int length, const std::string& couplings, double tol,
               const std::string& format, const std::string& out_path, std::ostream& out) {
  const auto colon = pair.find(':');
  if (colon == std::string::npos) throw UsageError("--pair expects source:target");
  const ModelSpec& a = model_arg(pair.substr(0, colon));
  const ModelSpec& b = model_arg(pair.substr(colon + 1));
  if (a.family != b.family) throw UsageError("models do not share the input category");
  if (length < 2) throw UsageError("--L must be at least 2");
  auto c = checked([&] { return parse_couplings(couplings); });
  checked([&] { return resolve_couplings(a, c); });
  DualityReport r = verify_duality(a, b, length, c, tol);

  json rows = json::array();
  for (const auto& m : r.matches)
    rows.push_back({{"source", m.source},
                    {"target", m.target},
                    {"source_boundary", m.source_boundary},
                    {"target_boundary", m.target_boundary},
                    {"source_copy", m.source_copy},
                    {"target_copy", m.target_copy},
                    {"dim", m.source_spectrum.size()},
                    {"gap", num(m.gap)},
                    {"transport_gap", num(m.transport_gap)},
                    {"isometry_defect", num(m.isometry_defect)},
                    {"match", m.match}});
  json j{{"pair", a.name + ":" + b.name},
         {"L", length},
         {"couplings", couplings_json(r.couplings)},
         {"tolerance", num(tol)},
         {"intertwining", num(r.intertwining)},
         {"ok", r.ok},
         {"sectors", rows}};
  if (!r.ok) throw ValidationFailure("dual spectra do not match", j);
  if (format == "table") {
    out << table(r);
    if (!out_path.empty()) emit(j, out_path, out);
  } else {
    emit(j, out_path, out);
  }
  return kExitOk;
}

int cmd_doubles(const std::string& group, const std::string& out_path, std::ostream& out) {
  static const FiniteGroup z3 = cyclic_group(3);
  const FiniteGroup* g = nullptr;
  const BimoduleCalculus* calc = nullptr;
  if (group == "s3") {
    calc = s3_family().calc.get();
    g = &calc->group();
  } else if (group == "z2") {
    calc = z2_family().calc.get();
    g = &calc->group();
  } else if (group == "z3") {
    g = &z3;
  } else {
    throw UsageError("unknown group " + group + " (s3, z2, z3)");
  }
  const auto simples = double_simples(*g);
  const int n = g->order();
  double hom = 0.0, comp = 0.0;
  int dim2 = 0;
  json list = json::array(), vect = json::object(), rep = json::object();
  for (const auto& z : simples) {
    dim2 += z.dim() * z.dim();
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < n; ++x)
        for (int b = 0; b < n; ++b)
          for (int y = 0; y < n; ++y) {
            auto [p, q] = double_product(*g, {a, x}, {b, y});
            Mat want = p < 0 ? Mat::Zero(z.dim(), z.dim()) : z.action(p, q);
            hom = std::max(hom, max_abs(z.action(a, x) * z.action(b, y) - want));
          }
    json rs = json::array();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        comp = std::max(comp, max_abs(vect_half_braiding(z, g->mul(a, b)) - vect_half_braiding(z, a) * vect_half_braiding(z, b)));
      rs.push_back({{"a", g->element_name(a)}, {"matrix", matrix_json(vect_half_braiding(z, a))}});
    }
    vect[z.label] = rs;
    list.push_back({{"label", z.label},
                    {"class", z.class_name},
                    {"irrep", z.irrep.name},
                    {"dim", z.dim()},
                    {"twist", num(clean(z.twist))}});
    if (calc != nullptr) {
      const RepHalfBraiding hb = rep_half_braiding(z, *calc);
      json es = json::array();
      for (const auto& [key, v] : hb.omega) {
        const auto& [s, sp, w, u] = key;
        es.push_back({{"V", g->irreps().at(s.irrep).name},
                      {"V_copy", s.copy},
                      {"Vp", g->irreps().at(sp.irrep).name},
                      {"Vp_copy", sp.copy},
                      {"W", g->irreps().at(w).name},
                      {"U", g->irreps().at(u).name},
                      {"value", num(clean(v))}});
      }
      rep[z.label] = es;
    }
  }
  json j{{"group", g->name()},
         {"simples", list},
         {"sum_dim_squared", dim2},
         {"homomorphism_defect", num(hom)},
         {"composition_defect", num(comp)},
         {"vect_half_braidings", vect}};
  if (calc != nullptr) j["rep_half_braidings"] = rep;
  if (hom > 1e-14 || comp > 1e-14 || dim2 != n * n) throw ValidationFailure("quantum double checks failed", j);
  emit(j, out_path, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tube-algebra sectors and dualities of categorical spin chains", "tubeduality"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "Maximum number of worker threads")->check(CLI::PositiveNumber);

  std::string model, bc, couplings, out_path, format = "json", sector, bundle, from, to, functor, pair, projector_dir;
  int length = 4, max_length = 4;
  double tol = 1e-9, data_tol = kTableTol;

  auto* validate = app.add_subcommand("validate-data", "Check coherence of a symbol bundle");
  validate->add_option("bundle", bundle, "Built-in name, JSON path, or name under TUBEDUALITY_DATA_DIR")->required();
  validate->add_option("--tol", data_tol, "Residual tolerance");
  validate->add_option("--out", out_path, "Write the report here");

  auto* dims = app.add_subcommand("dims", "Dimensions of the twisted spaces");
  dims->add_option("--model", model)->required();
  dims->add_option("--L", length)->required();
  dims->add_option("--bc", bc, "Boundary label (default: all)");

  auto* build = app.add_subcommand("build", "Assemble a Hamiltonian");
  auto* sectors = app.add_subcommand("sectors", "Topological sectors of a twisted space");
  auto* spectrum = app.add_subcommand("spectrum", "Sector-resolved spectrum");
  for (auto* sc : {build, sectors, spectrum}) {
    sc->add_option("--model", model)->required();
    sc->add_option("--L", length)->required();
    sc->add_option("--bc", bc, "Boundary label (default: unit)");
    sc->add_option("--couplings", couplings, "e.g. J2=1,J1=0.5");
  }
  build->add_option("--out", out_path);
  sectors->add_option("--emit-projectors", projector_dir, "Directory for projector operator files");
  spectrum->add_option("--sector", sector, "Restrict to one sector label");
  spectrum->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  spectrum->add_option("--out", out_path);

  auto* map = app.add_subcommand("map-sectors", "Sector map induced by a duality functor");
  map->add_option("--from", from)->required();
  map->add_option("--to", to)->required();
  map->add_option("--functor", functor, "Functor name or index (default: first)");
  map->add_option("--max-L", max_length, "Largest chain length probed")->check(CLI::Range(2, 8));
  map->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "Per-sector spectral comparison of a dual pair");
  verify->add_option("--pair", pair, "source:target")->required();
  verify->add_option("--L", length)->required();
  verify->add_option("--couplings", couplings);
  verify->add_option("--tol", tol);
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
  verify->add_option("--out", out_path);

  std::string group = "s3";
  auto* doubles = app.add_subcommand("doubles", "Quantum double modules and half-braidings");
  doubles->add_option("--group", group)->check(CLI::IsMember({"s3", "z2", "z3"}));
  doubles->add_option("--emit", out_path, "Write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(bundle, data_tol, out_path, out);
    if (dims->parsed()) return cmd_dims(model, length, bc, out);
    if (build->parsed()) return cmd_build(model, length, bc, couplings, out_path, out);
    if (sectors->parsed()) return cmd_sectors(model, length, bc, couplings, projector_dir, out);
    if (spectrum->parsed())
      return cmd_spectrum(model, length, bc, couplings, sector, format, out_path, threads, out);
    if (map->parsed()) return cmd_map(from, to, functor, max_length, out_path, out);
    if (verify->parsed()) return cmd_verify(pair, length, couplings, tol, format, out_path, out);
    if (doubles->parsed()) return cmd_doubles(group, out_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationFailure& e) {
    err << json{{"error", e.what()}, {"report", e.report}}.dump(2) << "\n";
    return kExitValidation;
  } catch (const std::runtime_error& e) {
    err << json{{"error", e.what()}}.dump(2) << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace tubeduality::cli

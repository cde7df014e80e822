#include "tubeduality/catdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "tubeduality/format.hpp"
#include "tubeduality/sectors.hpp"

namespace tubeduality {

using json = nlohmann::json;

// ---------------------------------------------------------------- families

std::string family_name(SymbolFamily f) {
  switch (f) {
    case SymbolFamily::F: return "F";
    case SymbolFamily::ModuleAssoc: return "F_act";
    case SymbolFamily::BimoduleAssoc: return "F_bimod";
    case SymbolFamily::FunctorStructure: return "omega";
    case SymbolFamily::FunctorComposition: return "F_comp";
    case SymbolFamily::CompositionAssoc: return "F_circ";
  }
  return "?";
}

SymbolFamily family_from_name(const std::string& name) {
  for (auto f : {SymbolFamily::F, SymbolFamily::ModuleAssoc, SymbolFamily::BimoduleAssoc,
                 SymbolFamily::FunctorStructure, SymbolFamily::FunctorComposition, SymbolFamily::CompositionAssoc})
    if (family_name(f) == name) return f;
  throw BundleError("unknown symbol family: " + name);
}

SymbolFamily classify(const std::array<int, 4>& s, int base) {
  if (s[2] == base && s[3] == base) {
    if (s[1] == base) return s[0] == base ? SymbolFamily::F : SymbolFamily::ModuleAssoc;
    return s[0] == s[1] ? SymbolFamily::BimoduleAssoc : SymbolFamily::FunctorStructure;
  }
  if (s[3] == base) return SymbolFamily::FunctorComposition;
  return SymbolFamily::CompositionAssoc;
}

// ---------------------------------------------------------------- rings

int FusionRing::n(int a, int b, int c) const {
  auto it = mult.find({a, b, c});
  return it == mult.end() ? 0 : it->second;
}

Mat FusionRing::fusion_matrix(int a) const {
  Mat m = Mat::Zero(size(), size());
  for (int b = 0; b < size(); ++b)
    for (int c = 0; c < size(); ++c) m(c, b) = double(n(a, b, c));
  return m;
}

double FusionRing::fpdim(int a) const {
  Eigen::ComplexEigenSolver<Mat> es(fusion_matrix(a));
  double best = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) best = std::max(best, std::abs(es.eigenvalues()[i]));
  return best;
}

double FusionRing::global_dim() const {
  double d = 0.0;
  for (int a = 0; a < size(); ++a) d += fpdim(a) * fpdim(a);
  return d;
}

int FusionRing::unit_law_violations() const {
  int bad = 0;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) {
      int want = a == b ? 1 : 0;
      if (n(unit, a, b) != want) ++bad;
      if (n(a, unit, b) != want) ++bad;
    }
  return bad;
}

int FusionRing::associativity_violations() const {
  int bad = 0;
  const int s = size();
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int c = 0; c < s; ++c)
        for (int d = 0; d < s; ++d) {
          int lhs = 0, rhs = 0;
          for (int e = 0; e < s; ++e) lhs += n(a, b, e) * n(e, c, d);
          for (int f = 0; f < s; ++f) rhs += n(b, c, f) * n(a, f, d);
          if (lhs != rhs) ++bad;
        }
  return bad;
}

// ---------------------------------------------------------------- bundle

const std::vector<SimpleObject>& CategoryBundle::simples(int left, int right) const {
  auto it = objects.find({left, right});
  if (it == objects.end()) throw BundleError("no objects for Hom(" + std::to_string(left) + "," + std::to_string(right) + ")");
  return it->second;
}

int CategoryBundle::multiplicity(CellRef z, CellRef x, CellRef y) const {
  auto it = fusion.find({x, y, z});
  return it == fusion.end() ? 0 : it->second;
}

bool CategoryBundle::has_tables(const std::array<int, 4>& sets) const {
  return std::find(symbol_sets.begin(), symbol_sets.end(), sets) != symbol_sets.end();
}

const FMove& CategoryBundle::symbol(CellRef a, CellRef b, CellRef c, CellRef d) const {
  auto it = symbols.find({a, b, c, d});
  if (it != symbols.end()) return it->second;
  if (!has_tables({a.left, b.left, c.left, c.right}))
    throw BundleError("missing symbol table for coset spaces (" + std::to_string(a.left) + "," +
                      std::to_string(b.left) + "," + std::to_string(c.left) + "," + std::to_string(c.right) + ")");
  static const FMove empty{};
  return empty;
}

int CategoryBundle::find(int left, int right, const std::string& nm) const {
  const auto& s = simples(left, right);
  for (const auto& o : s)
    if (o.name == nm) return o.id;
  return -1;
}

SymbolTable CategoryBundle::table(SymbolFamily family) const {
  SymbolTable t;
  t.family = family;
  for (const auto& [key, fm] : symbols) {
    std::array<int, 4> sets{key[0].left, key[1].left, key[2].left, key[3].right};
    if (classify(sets, base) != family) continue;
    for (std::size_t r = 0; r < fm.right.size(); ++r)
      for (std::size_t c = 0; c < fm.left.size(); ++c) {
        cplx v = fm.matrix(Eigen::Index(r), Eigen::Index(c));
        if (std::abs(v) < kZeroTol) continue;
        const auto& lt = fm.left[c];
        const auto& rt = fm.right[r];
        SymbolIndex idx{sets, {key[0].index, key[1].index, key[2].index, key[3].index, lt.mid, rt.mid},
                        {lt.inner, lt.outer, rt.inner, rt.outer}};
        t.entries[idx] = v;
      }
  }
  return t;
}

namespace {

// Tree labels of the block (a, b, c -> d) from fusion multiplicities alone.
void fill_tree_labels(const CategoryBundle& bd, FMove& fm) {
  const auto& [a, b, c, d] = std::tie(fm.a, fm.b, fm.c, fm.d);
  fm.left.clear();
  fm.right.clear();
  const int ne = int(bd.simples(a.left, b.right).size());
  for (int e = 0; e < ne; ++e) {
    CellRef ce{a.left, b.right, e};
    int m1 = bd.multiplicity(ce, a, b);
    int m2 = m1 ? bd.multiplicity(d, ce, c) : 0;
    for (int i = 0; i < m1; ++i)
      for (int k = 0; k < m2; ++k) fm.left.push_back({e, i, k});
  }
  const int nf = int(bd.simples(b.left, c.right).size());
  for (int f = 0; f < nf; ++f) {
    CellRef cf{b.left, c.right, f};
    int m1 = bd.multiplicity(cf, b, c);
    int m2 = m1 ? bd.multiplicity(d, a, cf) : 0;
    for (int l = 0; l < m1; ++l)
      for (int j = 0; j < m2; ++j) fm.right.push_back({f, l, j});
  }
}

template <class F>
void for_each_block(const CategoryBundle& bd, const std::array<int, 4>& s, F&& fn) {
  const int na = int(bd.simples(s[0], s[1]).size());
  const int nb = int(bd.simples(s[1], s[2]).size());
  const int nc = int(bd.simples(s[2], s[3]).size());
  const int nd = int(bd.simples(s[0], s[3]).size());
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nc; ++c)
        for (int d = 0; d < nd; ++d) fn(CellRef{s[0], s[1], a}, CellRef{s[1], s[2], b}, CellRef{s[2], s[3], c},
                                         CellRef{s[0], s[3], d});
}

struct Naming {
  std::map<std::pair<int, int>, std::vector<std::string>> names;
};

std::vector<std::string> fallback_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

Naming make_naming(const GroupFamily& fam) {
  const auto& calc = *fam.calc;
  const int ns = calc.num_sets();
  Naming nm;
  auto subgroup_suffix = [&](int set) -> std::string {
    for (auto& [k, v] : fam.sets)
      if (v == set) return k;
    return std::to_string(set);
  };
  for (int l = 0; l < ns; ++l)
    for (int r = 0; r < ns; ++r) {
      const auto& s = calc.simples(l, r);
      std::vector<std::string> out = fallback_names(int(s.size()));
      if (r == 0 && l == 0 && fam.name == "s3") {
        for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].irrep;
      } else if (r == 0 && l == 0) {
        out = describe_dual(calc, 0, DualKind::Group).names;
      } else if (r == 0) {
        const std::string suf = subgroup_suffix(l);
        for (std::size_t i = 0; i < s.size(); ++i)
          out[i] = s.size() == 1 ? std::string("1") : s[i].irrep + "_" + suf;
      } else if (l == r) {
        // group-like duals are named by elements, the others by irreps
        const int order = calc.group().order();
        DualKind kind = int(s.size()) == order ? DualKind::Group : DualKind::Rep;
        if (fam.name == "z2" && l == 1) kind = DualKind::Rep;
        try {
          out = describe_dual(calc, l, kind).names;
        } catch (const std::exception&) {
        }
      }
      nm.names[{l, r}] = out;
    }
  // Fun(Rep(Z2), Vect) is named through the Vect_S3 action on its first simple.
  if (fam.name == "s3") {
    int vect = fam.set("1"), z2 = fam.set("Z2");
    auto dual = describe_dual(calc, vect, DualKind::Group);
    auto elem = [&](const std::string& e) {
      int g = calc.group().find(e);
      return CellRef{vect, vect, int(std::find(dual.image.begin(), dual.image.end(), g) - dual.image.begin())};
    };
    CellRef x0{vect, z2, 0};
    auto& out = nm.names[{vect, z2}];
    out.assign(out.size(), "");
    out[0] = "0_Z3";
    auto ch_s = calc.channels(elem("s"), x0);
    auto ch_s2 = calc.channels(elem("s2"), x0);
    if (ch_s.size() == 1 && ch_s2.size() == 1 && ch_s[0] != 0 && ch_s2[0] != 0 && ch_s[0] != ch_s2[0]) {
      out[ch_s[0]] = "1_Z3";
      out[ch_s2[0]] = "1*_Z3";
    } else {
      out = fallback_names(int(out.size()));
    }
  }
  return nm;
}

const Naming& naming_for(const GroupFamily& fam) {
  static std::mutex mu;
  static std::map<const GroupFamily*, Naming> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(&fam);
  if (it == cache.end()) it = cache.emplace(&fam, make_naming(fam)).first;
  return it->second;
}

}  // namespace

std::string simple_name(const GroupFamily& family, CellRef c) {
  return naming_for(family).names.at({c.left, c.right}).at(c.index);
}

CategoryBundle bundle_from_calculus(const std::string& name, const GroupFamily& family,
                                    const std::vector<std::array<int, 4>>& symbol_sets) {
  const auto& calc = *family.calc;
  CategoryBundle bd;
  bd.name = name;
  bd.base = 0;
  const int ns = calc.num_sets();
  bd.set_names.assign(ns, "");
  for (auto& [k, v] : family.sets) bd.set_names[v] = k;
  for (int l = 0; l < ns; ++l)
    for (int r = 0; r < ns; ++r) {
      auto& objs = bd.objects[{l, r}];
      const auto& s = calc.simples(l, r);
      for (int i = 0; i < int(s.size()); ++i) objs.push_back({i, simple_name(family, {l, r, i}), s[i].qdim});
    }
  for (int l = 0; l < ns; ++l)
    for (int m = 0; m < ns; ++m)
      for (int r = 0; r < ns; ++r) {
        const int nx = int(calc.simples(l, m).size()), ny = int(calc.simples(m, r).size());
        for (int x = 0; x < nx; ++x)
          for (int y = 0; y < ny; ++y) {
            CellRef cx{l, m, x}, cy{m, r, y};
            for (int z : calc.channels(cx, cy)) bd.fusion[{cx, cy, CellRef{l, r, z}}] = calc.multiplicity({l, r, z}, cx, cy);
          }
      }
  bd.symbol_sets = symbol_sets;
  for (const auto& s : symbol_sets)
    for_each_block(bd, s, [&](CellRef a, CellRef b, CellRef c, CellRef d) {
      FMove fm = fmove(calc, a, b, c, d);
      if (fm.left.empty()) return;
      bd.symbols[{a, b, c, d}] = std::move(fm);
    });
  return bd;
}

std::vector<std::string> builtin_bundle_names() { return {"rep_s3", "vec_z2"}; }

const GroupFamily& builtin_family(const std::string& name) {
  if (name == "vec_z2") return z2_family();
  if (name == "rep_s3") return s3_family();
  throw BundleError("unknown built-in bundle: " + name);
}

CategoryBundle builtin_bundle(const std::string& name) {
  const GroupFamily& fam = builtin_family(name);
  const int ns = fam.calc->num_sets();
  std::set<std::array<int, 4>> tuples;
  for (int o = 0; o < ns; ++o)
    for (int k = 0; k < ns; ++k)
      for (int h = 0; h < ns; ++h) tuples.insert({o, k, h, 0});
  // composition associators: every endofunctor category, and the tuples of
  // the dual pairs realized by the built-in models
  std::vector<std::vector<int>> pairs;
  if (name == "vec_z2") pairs = {{0, 1}};
  else pairs = {{fam.set("Z2"), fam.set("1")}};
  for (int h = 0; h < ns; ++h) tuples.insert({h, h, h, h});
  for (const auto& p : pairs)
    for (int a : p)
      for (int b : p)
        for (int c : p)
          for (int d : p) tuples.insert({a, b, c, d});
  return bundle_from_calculus(name, fam, std::vector<std::array<int, 4>>(tuples.begin(), tuples.end()));
}

// ---------------------------------------------------------------- json

namespace {

enum class Section { Base, Module, Functor };

Section section_of(int left, int right, int base) {
  if (left == base && right == base) return Section::Base;
  if (right == base) return Section::Module;
  return Section::Functor;
}

json entry_json(SymbolFamily fam, const std::array<int, 4>& sets, const std::array<int, 6>& labels,
                const std::array<int, 4>& hom, cplx v) {
  return json{{"family", family_name(fam)}, {"sets", sets},        {"labels", labels},
              {"hom", hom},                 {"re", round15(v.real())}, {"im", round15(v.imag())}};
}

}  // namespace

std::string bundle_to_json_text(const CategoryBundle& bd) {
  json base = {{"set", bd.base}, {"objects", json::array()}, {"fusion", json::array()}, {"F", json::array()}};
  std::map<int, json> modules;
  std::map<std::pair<int, int>, json> functors;
  auto section = [&](int left, int right) -> json& {
    switch (section_of(left, right, bd.base)) {
      case Section::Base: return base;
      case Section::Module: {
        auto it = modules.find(left);
        if (it == modules.end())
          it = modules.emplace(left, json{{"set", left}, {"name", bd.set_names.at(left)}, {"objects", json::array()},
                                          {"fusion", json::array()}, {"tables", json::array()}}).first;
        return it->second;
      }
      case Section::Functor: {
        auto it = functors.find({right, left});
        if (it == functors.end())
          it = functors.emplace(std::pair{right, left},
                                json{{"source", right}, {"target", left}, {"objects", json::array()},
                                     {"fusion", json::array()}, {"tables", json::array()}}).first;
        return it->second;
      }
    }
    return base;
  };
  for (const auto& [lr, objs] : bd.objects) {
    json& s = section(lr.first, lr.second);
    for (const auto& o : objs) s["objects"].push_back({{"id", o.id}, {"name", o.name}, {"qdim", round15(o.quantum_dim)}});
  }
  for (const auto& [key, n] : bd.fusion) {
    const auto& [x, y, z] = key;
    json& s = section(x.left, x.right);
    s["fusion"].push_back({{"sets", {x.left, x.right, y.right}}, {"labels", {x.index, y.index, z.index}}, {"mult", n}});
  }
  for (const auto& [key, fm] : bd.symbols) {
    std::array<int, 4> sets{key[0].left, key[1].left, key[2].left, key[3].right};
    SymbolFamily fam = classify(sets, bd.base);
    json& s = section(key[0].left, key[0].right);
    const char* field = section_of(key[0].left, key[0].right, bd.base) == Section::Base ? "F" : "tables";
    for (std::size_t r = 0; r < fm.right.size(); ++r)
      for (std::size_t c = 0; c < fm.left.size(); ++c) {
        cplx v = fm.matrix(Eigen::Index(r), Eigen::Index(c));
        if (std::abs(v) < kZeroTol) continue;
        const auto& lt = fm.left[c];
        const auto& rt = fm.right[r];
        s[field].push_back(entry_json(fam, sets,
                                      {key[0].index, key[1].index, key[2].index, key[3].index, lt.mid, rt.mid},
                                      {lt.inner, lt.outer, rt.inner, rt.outer}, v));
      }
  }
  json out;
  out["name"] = bd.name;
  out["sets"] = bd.set_names;
  out["symbol_sets"] = bd.symbol_sets;
  out["base"] = base;
  out["modules"] = json::array();
  for (auto& [k, v] : modules) out["modules"].push_back(v);
  out["functors"] = json::array();
  for (auto& [k, v] : functors) out["functors"].push_back(v);
  return out.dump(1);
}

CategoryBundle bundle_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw BundleError(std::string("bundle parse error: ") + e.what());
  }
  try {
    CategoryBundle bd;
    bd.name = j.value("name", std::string("bundle"));
    bd.set_names = j.at("sets").get<std::vector<std::string>>();
    const json& base = j.at("base");
    bd.base = base.value("set", 0);
    const int ns = bd.num_sets();
    auto check_set = [&](int s) {
      if (s < 0 || s >= ns) throw BundleError("coset space index out of range: " + std::to_string(s));
    };
    std::vector<const json*> sections{&base};
    for (const char* key : {"modules", "functors"})
      if (j.contains(key))
        for (const auto& m : j.at(key)) sections.push_back(&m);
    auto section_cells = [&](const json& s, int& left, int& right) {
      if (&s == &base) {
        left = right = bd.base;
      } else if (s.contains("source")) {
        right = s.at("source").get<int>();
        left = s.at("target").get<int>();
      } else {
        left = s.at("set").get<int>();
        right = bd.base;
      }
      check_set(left);
      check_set(right);
    };
    for (const json* s : sections) {
      int l, r;
      section_cells(*s, l, r);
      auto& objs = bd.objects[{l, r}];
      for (const auto& o : s->value("objects", json::array()))
        objs.push_back({int(objs.size()), o.at("name").get<std::string>(), o.value("qdim", 1.0)});
    }
    for (int l = 0; l < ns; ++l)
      for (int r = 0; r < ns; ++r) bd.objects[{l, r}];
    auto check_label = [&](int l, int r, int idx) {
      if (idx < 0 || idx >= int(bd.objects[{l, r}].size()))
        throw BundleError("label out of range: " + std::to_string(idx) + " in Hom(" + std::to_string(l) + "," +
                          std::to_string(r) + ")");
    };
    for (const json* s : sections)
      for (const auto& f : s->value("fusion", json::array())) {
        auto sets = f.at("sets").get<std::array<int, 3>>();
        auto lab = f.at("labels").get<std::array<int, 3>>();
        for (int x : sets) check_set(x);
        check_label(sets[0], sets[1], lab[0]);
        check_label(sets[1], sets[2], lab[1]);
        check_label(sets[0], sets[2], lab[2]);
        int n = f.at("mult").get<int>();
        if (n < 0) throw BundleError("negative fusion multiplicity");
        if (n > 0)
          bd.fusion[{CellRef{sets[0], sets[1], lab[0]}, CellRef{sets[1], sets[2], lab[1]}, CellRef{sets[0], sets[2], lab[2]}}] = n;
      }
    if (j.contains("symbol_sets")) bd.symbol_sets = j.at("symbol_sets").get<std::vector<std::array<int, 4>>>();
    std::set<std::array<int, 4>> seen(bd.symbol_sets.begin(), bd.symbol_sets.end());
    std::vector<json> entries;
    for (const json* s : sections) {
      for (const auto& e : s->value("F", json::array())) entries.push_back(e);
      for (const auto& e : s->value("tables", json::array())) entries.push_back(e);
    }
    for (const auto& e : entries) {
      auto sets = e.at("sets").get<std::array<int, 4>>();
      for (int x : sets) check_set(x);
      if (!seen.count(sets)) {
        seen.insert(sets);
        bd.symbol_sets.push_back(sets);
      }
    }
    for (const auto& s : bd.symbol_sets)
      for_each_block(bd, s, [&](CellRef a, CellRef b, CellRef c, CellRef d) {
        FMove fm{a, b, c, d, {}, {}, Mat()};
        fill_tree_labels(bd, fm);
        if (fm.left.empty() && fm.right.empty()) return;
        fm.matrix = Mat::Zero(Eigen::Index(fm.right.size()), Eigen::Index(fm.left.size()));
        bd.symbols[{a, b, c, d}] = std::move(fm);
      });
    for (const auto& e : entries) {
      auto sets = e.at("sets").get<std::array<int, 4>>();
      auto lab = e.at("labels").get<std::array<int, 6>>();
      auto hom = e.at("hom").get<std::array<int, 4>>();
      CellRef a{sets[0], sets[1], lab[0]}, b{sets[1], sets[2], lab[1]}, c{sets[2], sets[3], lab[2]},
          d{sets[0], sets[3], lab[3]}, ee{sets[0], sets[2], lab[4]}, ff{sets[1], sets[3], lab[5]};
      for (CellRef x : {a, b, c, d, ee, ff}) check_label(x.left, x.right, x.index);
      if (e.contains("family") && family_from_name(e.at("family").get<std::string>()) != classify(sets, bd.base))
        throw BundleError("symbol family does not match its coset spaces");
      auto bad = [&](CellRef z, CellRef x, CellRef y, int idx) { return idx < 0 || idx >= bd.multiplicity(z, x, y); };
      if (bad(ee, a, b, hom[0]) || bad(d, ee, c, hom[1]) || bad(ff, b, c, hom[2]) || bad(d, a, ff, hom[3])) {
        std::ostringstream msg;
        msg << "symbol entry violates fusion multiplicities: labels";
        for (int x : lab) msg << " " << x;
        throw BundleError(msg.str());
      }
      FMove& fm = bd.symbols.at({a, b, c, d});
      int col = fm.left_index({lab[4], hom[0], hom[1]});
      int row = fm.right_index({lab[5], hom[2], hom[3]});
      fm.matrix(row, col) = cplx(e.value("re", 0.0), e.value("im", 0.0));
    }
    return bd;
  } catch (const json::exception& e) {
    throw BundleError(std::string("malformed bundle: ") + e.what());
  }
}

CategoryBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BundleError("cannot open bundle file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return bundle_from_json_text(ss.str());
}

void save_bundle(const CategoryBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BundleError("cannot write bundle file: " + path);
  out << bundle_to_json_text(bundle) << "\n";
}

CategoryBundle resolve_bundle(const std::string& name_or_path) {
  for (const auto& n : builtin_bundle_names())
    if (n == name_or_path) return builtin_bundle(n);
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path)) return load_bundle(name_or_path);
  if (const char* dir = std::getenv("TUBEDUALITY_DATA_DIR")) {
    for (const std::string& cand : {name_or_path, name_or_path + ".json"}) {
      fs::path p = fs::path(dir) / cand;
      if (fs::exists(p)) return load_bundle(p.string());
    }
  }
  throw BundleError("unknown bundle: " + name_or_path);
}

// ---------------------------------------------------------------- validators

double pentagon_residual(const CategoryBundle& bd, const std::array<int, 5>& s, int only_a, int only_b) {
  for (const auto& t : std::vector<std::array<int, 4>>{{s[0], s[1], s[2], s[3]},
                                                        {s[0], s[1], s[3], s[4]},
                                                        {s[1], s[2], s[3], s[4]},
                                                        {s[0], s[2], s[3], s[4]},
                                                        {s[0], s[1], s[2], s[4]}})
    if (!bd.has_tables(t))
      throw BundleError("missing symbol table for coset spaces (" + std::to_string(t[0]) + "," + std::to_string(t[1]) +
                        "," + std::to_string(t[2]) + "," + std::to_string(t[3]) + ")");
  auto entry = [&](CellRef a, CellRef b, CellRef c, CellRef d, TreeLabel right, TreeLabel left) -> cplx {
    const FMove& fm = bd.symbol(a, b, c, d);
    int r = fm.right_index(right), col = fm.left_index(left);
    if (r < 0 || col < 0) return 0.0;
    return fm.matrix(r, col);
  };
  const int na = int(bd.simples(s[0], s[1]).size()), nb = int(bd.simples(s[1], s[2]).size());
  const int nc = int(bd.simples(s[2], s[3]).size()), nd = int(bd.simples(s[3], s[4]).size());
  const int nx = int(bd.simples(s[0], s[4]).size());
  double worst = 0.0;
  for (int ia = 0; ia < na; ++ia) {
    if (only_a >= 0 && ia != only_a) continue;
    for (int ib = 0; ib < nb; ++ib) {
      if (only_b >= 0 && ib != only_b) continue;
      for (int ic = 0; ic < nc; ++ic)
        for (int id = 0; id < nd; ++id)
          for (int ix = 0; ix < nx; ++ix) {
            CellRef a{s[0], s[1], ia}, b{s[1], s[2], ib}, c{s[2], s[3], ic}, d{s[3], s[4], id}, x{s[0], s[4], ix};
            // source basis ((ab)c)d: (e,i1) (g,i2) (x,i3)
            struct Src { int e, i1, g, i2, i3; };
            struct Dst { int h, l4, f, l5, j; };
            std::vector<Src> src;
            std::vector<Dst> dst;
            for (int e = 0; e < int(bd.simples(s[0], s[2]).size()); ++e) {
              CellRef ce{s[0], s[2], e};
              int m1 = bd.multiplicity(ce, a, b);
              if (!m1) continue;
              for (int g = 0; g < int(bd.simples(s[0], s[3]).size()); ++g) {
                CellRef cg{s[0], s[3], g};
                int m2 = bd.multiplicity(cg, ce, c), m3 = bd.multiplicity(x, cg, d);
                for (int i1 = 0; i1 < m1; ++i1)
                  for (int i2 = 0; i2 < m2; ++i2)
                    for (int i3 = 0; i3 < m3; ++i3) src.push_back({e, i1, g, i2, i3});
              }
            }
            if (src.empty()) continue;
            for (int h = 0; h < int(bd.simples(s[2], s[4]).size()); ++h) {
              CellRef ch{s[2], s[4], h};
              int m1 = bd.multiplicity(ch, c, d);
              if (!m1) continue;
              for (int f = 0; f < int(bd.simples(s[1], s[4]).size()); ++f) {
                CellRef cf{s[1], s[4], f};
                int m2 = bd.multiplicity(cf, b, ch), m3 = bd.multiplicity(x, a, cf);
                for (int l4 = 0; l4 < m1; ++l4)
                  for (int l5 = 0; l5 < m2; ++l5)
                    for (int j = 0; j < m3; ++j) dst.push_back({h, l4, f, l5, j});
              }
            }
            for (const Src& u : src)
              for (const Dst& w : dst) {
                CellRef ce{s[0], s[2], u.e}, cg{s[0], s[3], u.g}, ch{s[2], s[4], w.h}, cf{s[1], s[4], w.f};
                // path through (ab)(cd)
                cplx p2 = 0.0;
                for (int k = 0; k < bd.multiplicity(x, ce, ch); ++k)
                  p2 += entry(ce, c, d, x, {w.h, w.l4, k}, {u.g, u.i2, u.i3}) *
                        entry(a, b, ch, x, {w.f, w.l5, w.j}, {u.e, u.i1, k});
                // path through (a(bc))d and a((bc)d)
                cplx p1 = 0.0;
                for (int ui = 0; ui < int(bd.simples(s[1], s[3]).size()); ++ui) {
                  CellRef cu{s[1], s[3], ui};
                  int mbc = bd.multiplicity(cu, b, c), mau = bd.multiplicity(cg, a, cu), mud = bd.multiplicity(cf, cu, d);
                  if (!mbc || !mau || !mud) continue;
                  for (int l = 0; l < mbc; ++l)
                    for (int m = 0; m < mau; ++m)
                      for (int lp = 0; lp < mud; ++lp)
                        p1 += entry(a, b, c, cg, {ui, l, m}, {u.e, u.i1, u.i2}) *
                              entry(a, cu, d, x, {w.f, lp, w.j}, {u.g, m, u.i3}) *
                              entry(b, c, d, cf, {w.h, w.l4, w.l5}, {ui, l, lp});
                }
                worst = std::max(worst, std::abs(p1 - p2));
              }
          }
    }
  }
  return worst;
}

double validate_pulling_through(const CategoryBundle& bd, int module_h, int module_k, int functor) {
  return pentagon_residual(bd, {module_k, module_h, bd.base, bd.base, bd.base}, functor);
}

double validate_mpo_fusion(const CategoryBundle& bd, int module_h, int module_k, int module_o, int x1, int x2) {
  return pentagon_residual(bd, {module_o, module_k, module_h, bd.base, bd.base}, x1, x2);
}

double unitarity_residual(const CategoryBundle& bd, SymbolFamily family) {
  double worst = 0.0;
  for (const auto& [key, fm] : bd.symbols) {
    std::array<int, 4> sets{key[0].left, key[1].left, key[2].left, key[3].right};
    if (classify(sets, bd.base) != family) continue;
    if (fm.left.size() != fm.right.size()) {
      worst = std::max(worst, 1.0);
      continue;
    }
    Mat id = Mat::Identity(fm.matrix.cols(), fm.matrix.cols());
    worst = std::max(worst, max_abs(fm.matrix.adjoint() * fm.matrix - id));
  }
  return worst;
}

double unit_gauge_residual(const CategoryBundle& bd) {
  double worst = 0.0;
  for (const auto& [key, fm] : bd.symbols) {
    auto is_unit = [](CellRef c) { return c.left == c.right && c.index == 0; };
    if (!is_unit(key[0]) && !is_unit(key[1]) && !is_unit(key[2])) continue;
    if (fm.matrix.rows() != fm.matrix.cols()) {
      worst = std::max(worst, 1.0);
      continue;
    }
    worst = std::max(worst, max_abs(fm.matrix - Mat::Identity(fm.matrix.rows(), fm.matrix.cols())));
  }
  return worst;
}

namespace {

FusionRing ring_of(const CategoryBundle& bd, int set) {
  FusionRing r;
  r.objects = bd.simples(set, set);
  r.unit = 0;
  const int n = r.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int m = bd.multiplicity({set, set, c}, {set, set, a}, {set, set, b});
        if (m) r.mult[{a, b, c}] = m;
      }
  return r;
}

}  // namespace

FusionRing base_ring(const CategoryBundle& bd) { return ring_of(bd, bd.base); }

FusionRing morita_dual_ring(const CategoryBundle& bd, int module_set) {
  if (module_set < 0 || module_set >= bd.num_sets()) throw BundleError("unknown module");
  FusionRing r = ring_of(bd, module_set);
  if (r.size() == 0 || r.mult.empty()) throw BundleError("missing functor data for the module");
  return r;
}

CategoryBundle gauge_transform(const CategoryBundle& bd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::map<std::array<CellRef, 3>, Mat> u;  // (x, y, z) -> unitary on Hom(z, x o y)
  for (const auto& [key, n] : bd.fusion) {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    u[key] = q;
  }
  auto entry_u = [&](CellRef z, CellRef x, CellRef y, int a, int b) -> cplx { return u.at({x, y, z})(a, b); };
  CategoryBundle out = bd;
  for (auto& [key, fm] : out.symbols) {
    const auto& [a, b, c, d] = key;
    const int nl = int(fm.left.size()), nr = int(fm.right.size());
    Mat L = Mat::Zero(nl, nl), R = Mat::Zero(nr, nr);
    for (int p = 0; p < nl; ++p)
      for (int q = 0; q < nl; ++q) {
        const auto& tp = fm.left[p];
        const auto& tq = fm.left[q];
        if (tp.mid != tq.mid) continue;
        CellRef e{a.left, b.right, tp.mid};
        L(p, q) = entry_u(e, a, b, tp.inner, tq.inner) * entry_u(d, e, c, tp.outer, tq.outer);
      }
    for (int p = 0; p < nr; ++p)
      for (int q = 0; q < nr; ++q) {
        const auto& tp = fm.right[p];
        const auto& tq = fm.right[q];
        if (tp.mid != tq.mid) continue;
        CellRef f{b.left, c.right, tp.mid};
        R(p, q) = entry_u(f, b, c, tp.inner, tq.inner) * entry_u(d, a, f, tp.outer, tq.outer);
      }
    fm.matrix = R.adjoint() * bd.symbols.at(key).matrix * L;
  }
  return out;
}

SymbolTable derive_module_associator(const FiniteGroup& group, const std::vector<int>& subgroup) {
  if (!group.is_subgroup(subgroup)) throw std::invalid_argument("not a subgroup");
  GroupFamily fam;
  fam.name = "derived";
  fam.calc = std::make_shared<BimoduleCalculus>(group, std::vector<std::vector<int>>{group.all_elements(), subgroup});
  if (group.name() == s3_family().calc->group().name()) {
    // same irrep basis as the built-in family, including its Clebsch-Gordan gauge
    const auto& ref = *s3_family().calc;
    for (int w = 0; w < 3; ++w)
      for (int v = 0; v < 3; ++v)
        for (int x = 0; x < 3; ++x)
          if (ref.multiplicity({0, 0, x}, {0, 0, w}, {0, 0, v}))
            fam.calc->set_splitting({0, 0, x}, {0, 0, w}, {0, 0, v}, ref.splitting({0, 0, x}, {0, 0, w}, {0, 0, v}));
  }
  SymbolTable t;
  t.family = SymbolFamily::ModuleAssoc;
  const auto& calc = *fam.calc;
  const int nm = int(calc.simples(1, 0).size()), ny = int(calc.simples(0, 0).size());
  for (int m = 0; m < nm; ++m)
    for (int y1 = 0; y1 < ny; ++y1)
      for (int y2 = 0; y2 < ny; ++y2)
        for (int m2 = 0; m2 < nm; ++m2) {
          FMove fm = fmove(calc, {1, 0, m}, {0, 0, y1}, {0, 0, y2}, {1, 0, m2});
          if (fm.left.size() != fm.right.size()) throw std::runtime_error("intertwiner solve is rank deficient");
          for (std::size_t r = 0; r < fm.right.size(); ++r)
            for (std::size_t c = 0; c < fm.left.size(); ++c) {
              cplx v = fm.matrix(Eigen::Index(r), Eigen::Index(c));
              if (std::abs(v) < kZeroTol) continue;
              SymbolIndex idx{{1, 0, 0, 0},
                              {m, y1, y2, m2, fm.left[c].mid, fm.right[r].mid},
                              {fm.left[c].inner, fm.left[c].outer, fm.right[r].inner, fm.right[r].outer}};
              t.entries[idx] = v;
            }
        }
  return t;
}

// ---------------------------------------------------------------- printed data

std::vector<PrintedSymbol> printed_rep_s3_symbols() {
  std::vector<PrintedSymbol> out;
  const double h = 1.0 / std::sqrt(2.0);
  const double r3 = std::sqrt(3.0) / 2.0;
  const cplx i(0.0, 1.0);
  auto add = [&](const std::string& group, SymbolFamily fam, std::array<int, 4> sets, std::array<std::string, 6> names,
                 std::array<int, 4> hom, cplx v) { out.push_back({group, fam, sets, names, hom, v}); };

  // Vect over Rep(S3): the module associator is the Clebsch-Gordan table,
  // (F^{1 Y1 Y2}_1)^{Y3, 1 k}_{1, i j} = C^{Y1 Y2 Y3}_{i j k}
  const auto cg = s3_clebsch_gordan();
  const int dims[3] = {1, 1, 2};
  for (int y1 = 0; y1 < 3; ++y1)
    for (int y2 = 0; y2 < 3; ++y2)
      for (int y3 = 0; y3 < 3; ++y3) {
        auto it = cg.find({y1, y2, y3});
        if (it == cg.end()) continue;
        for (int a = 0; a < dims[y1]; ++a)
          for (int b = 0; b < dims[y2]; ++b)
            for (int c = 0; c < dims[y3]; ++c) {
              auto jt = it->second.find({a, b, c});
              double v = jt == it->second.end() ? 0.0 : jt->second;
              add("vect_module", SymbolFamily::ModuleAssoc, {1, 0, 0, 0},
                  {"1", std::to_string(y1), std::to_string(y2), "1", "1", std::to_string(y3)}, {a, b, 0, c}, v);
            }
      }

  // Rep(Z2) over Rep(S3)
  const std::string z0 = "0_Z2", z1 = "1_Z2";
  auto zf = [&](int x) { return x ? z1 : z0; };
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2)
      for (int m3 = 0; m3 < 2; ++m3) {
        // (F^{M1 2 2}_{M2})^{2}_{M3}: +1/sqrt2 when an odd number of 1_Z2 among
        // (M1, M2) differ from M3 as printed
        static const int sign[2][2][2] = {{{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}}};
        add("rep_z2_module", SymbolFamily::ModuleAssoc, {2, 0, 0, 0}, {zf(m1), "2", "2", zf(m2), zf(m3), "2"},
            {0, 0, 0, 0}, sign[m1][m2][m3] * h);
      }
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2)
      add("rep_z2_module", SymbolFamily::ModuleAssoc, {2, 0, 0, 0}, {zf(m1), "1", "2", zf(m2), zf(1 - m1), "2"},
          {0, 0, 0, 0}, 1.0);
    add("rep_z2_module", SymbolFamily::ModuleAssoc, {2, 0, 0, 0}, {zf(m1), "2", "1", zf(m1), zf(1 - m1), "2"},
        {0, 0, 0, 0}, 1.0);
  }

  // Rep(Z2) as a (Rep(S3), Rep(S3))-bimodule: X = 2 acting on the left
  auto bim = [&](int m1, const std::string& y, int m2, int m4, int m3, double v) {
    add("rep_z2_bimodule", SymbolFamily::BimoduleAssoc, {2, 2, 0, 0}, {"2", zf(m1), y, zf(m2), zf(m3), zf(m4)},
        {0, 0, 0, 0}, v);
  };
  // arguments: M1, Y, M2, superscript M4, subscript M3
  bim(1, "2", 0, 0, 0, -r3);
  bim(0, "2", 1, 0, 0, -r3);
  bim(0, "2", 0, 1, 0, -r3);
  bim(0, "2", 0, 0, 1, -r3);
  bim(0, "2", 1, 1, 1, r3);
  bim(1, "2", 0, 1, 1, r3);
  bim(1, "2", 1, 0, 1, r3);
  bim(1, "2", 1, 1, 0, r3);
  bim(0, "2", 0, 0, 0, -0.5);
  bim(1, "2", 1, 1, 1, -0.5);
  bim(0, "2", 0, 1, 1, 0.5);
  bim(1, "2", 1, 0, 0, 0.5);
  bim(1, "2", 0, 1, 0, 0.5);
  bim(0, "2", 1, 0, 1, 0.5);
  bim(1, "2", 0, 0, 1, 0.5);
  bim(0, "2", 1, 1, 0, 0.5);
  bim(0, "1", 0, 1, 1, 1.0);
  bim(1, "1", 1, 0, 0, 1.0);
  // printed with the two intermediate labels interchanged, which is not admissible
  bim(0, "1", 1, 1, 0, -1.0);
  bim(1, "1", 0, 0, 1, -1.0);

  // Rep(Z3) over Rep(S3)
  const std::string w0 = "0_Z3", w1 = "1_Z3", w2 = "1*_Z3";
  auto z3 = [&](const std::string& m1, const std::string& y1, const std::string& y2, const std::string& m2,
                const std::string& m3, double v) {
    add("rep_z3_module", SymbolFamily::ModuleAssoc, {3, 0, 0, 0}, {m1, y1, y2, m2, m3, "2"}, {0, 0, 0, 0}, v);
  };
  z3(w0, "1", "2", w1, w0, 1.0);
  z3(w0, "1", "2", w2, w0, -1.0);
  z3(w1, "1", "2", w0, w1, 1.0);
  z3(w1, "1", "2", w2, w1, -1.0);
  z3(w2, "1", "2", w0, w2, 1.0);
  z3(w2, "1", "2", w1, w2, -1.0);
  // (Y1, Y2) = (2, 1): the intermediate label is forced to equal M2
  z3(w0, "2", "1", w1, w1, 1.0);
  z3(w0, "2", "1", w2, w2, 1.0);
  z3(w1, "2", "1", w0, w0, 1.0);
  z3(w1, "2", "1", w2, w2, -1.0);
  z3(w2, "2", "1", w0, w0, -1.0);
  z3(w2, "2", "1", w1, w1, -1.0);
  const std::string all[3] = {w0, w1, w2};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if (a != b && b != c && a != c) z3(all[a], "2", "2", all[b], all[c], 1.0);

  // duality Rep(Z2) -> Vect through the functor 0_Z3
  auto om = [&](int m1, int m2, int k, double v) {
    add("duality_functor", SymbolFamily::FunctorStructure, {1, 2, 0, 0}, {w0, zf(m1), "2", "1", "1", zf(m2)},
        {0, k, 0, 0}, v);
  };
  om(0, 0, 0, h);
  om(0, 0, 1, h);
  om(0, 1, 0, h);
  om(0, 1, 1, -h);
  om(1, 0, 0, -h);
  om(1, 0, 1, h);
  om(1, 1, 0, -h);
  om(1, 1, 1, -h);

  auto comp = [&](const std::string& a, const std::string& b, int m, int n, const std::string& e, cplx v) {
    add("duality_composition", SymbolFamily::FunctorComposition, {1, 2, 2, 0}, {a, b, zf(m), "1", e, zf(n)},
        {0, 0, 0, 0}, v);
  };
  comp(w0, "0", 0, 0, w0, 1.0);
  comp(w0, "0", 1, 1, w0, 1.0);
  comp(w0, "2", 0, 0, w1, h);
  comp(w0, "2", 0, 1, w1, i * h);
  comp(w0, "2", 1, 1, w1, -h);
  comp(w0, "2", 1, 0, w1, -i * h);
  auto act = [&](const std::string& g, int m, const std::string& e) {
    add("duality_composition", SymbolFamily::FunctorComposition, {1, 1, 2, 0}, {g, w0, zf(m), "1", e, "1"},
        {0, 0, 0, 0}, 1.0);
  };
  for (int m = 0; m < 2; ++m) {
    act("1", m, w0);
    act("s", m, w1);
    act("s2", m, w2);
  }
  return out;
}

namespace {

using VertexKey = std::tuple<CellRef, CellRef, CellRef, int>;  // (z, x, y, index)

// Solve prod_v lambda_v^{s_v} = r for unit-modulus lambdas by elimination.
struct PhaseSystem {
  struct Eq {
    std::map<int, int> exps;
    cplx rhs;
  };
  std::vector<Eq> eqs;
  int nvars = 0;

  std::vector<cplx> solve() const {
    std::vector<Eq> work = eqs;
    struct Sub { int var; int sign; cplx rhs; std::map<int, int> others; };
    std::vector<Sub> subs;
    std::vector<bool> done(work.size(), false);
    for (;;) {
      int pick = -1, var = -1;
      for (std::size_t e = 0; e < work.size() && pick < 0; ++e) {
        if (done[e]) continue;
        for (auto [v, s] : work[e].exps)
          if (s == 1 || s == -1) {
            pick = int(e);
            var = v;
            break;
          }
      }
      if (pick < 0) break;
      Eq eq = work[pick];
      done[pick] = true;
      const int s = eq.exps.at(var);
      // lambda_var = (rhs * prod_{others} lambda^{-s_o})^{s}
      Sub sub{var, s, eq.rhs, {}};
      for (auto [v, e] : eq.exps)
        if (v != var) sub.others[v] = -e;
      for (std::size_t e = 0; e < work.size(); ++e) {
        if (done[e]) continue;
        auto it = work[e].exps.find(var);
        if (it == work[e].exps.end()) continue;
        const int p = it->second;
        work[e].exps.erase(it);
        // lambda_var^p = rhs^{s p} prod others^{-e_o s p}
        work[e].rhs /= std::pow(sub.rhs, double(s * p));
        for (auto [v, ex] : sub.others) {
          work[e].exps[v] += ex * s * p;
          if (work[e].exps[v] == 0) work[e].exps.erase(v);
        }
      }
      subs.push_back(sub);
    }
    std::vector<cplx> lam(nvars, 1.0);
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
      cplx v = it->rhs;
      for (auto [o, e] : it->others) v *= std::pow(lam[o], double(e));
      lam[it->var] = it->sign == 1 ? v : 1.0 / v;
      lam[it->var] /= std::abs(lam[it->var]);
    }
    return lam;
  }
};

PrintedFit fit_group(const CategoryBundle& bd, const std::vector<const PrintedSymbol*>& ps, bool conj) {
  PrintedFit fit;
  fit.group = ps.front()->group;
  fit.entries = int(ps.size());
  fit.conjugated = conj;
  std::map<VertexKey, int> var;
  auto var_of = [&](CellRef z, CellRef x, CellRef y, int k) {
    auto [it, ins] = var.emplace(VertexKey{z, x, y, k}, int(var.size()));
    return it->second;
  };
  struct Item { cplx mine; cplx printed; std::array<int, 4> v; };
  std::vector<Item> items;
  double worst = 0.0;
  for (const PrintedSymbol* p : ps) {
    const auto& s = p->sets;
    std::array<std::pair<int, int>, 6> hom_of{std::pair{s[0], s[1]}, {s[1], s[2]}, {s[2], s[3]},
                                              {s[0], s[3]}, {s[0], s[2]}, {s[1], s[3]}};
    std::array<CellRef, 6> cell;
    bool missing = false;
    for (int t = 0; t < 6; ++t) {
      int idx = bd.find(hom_of[t].first, hom_of[t].second, p->names[t]);
      if (idx < 0) missing = true;
      cell[t] = {hom_of[t].first, hom_of[t].second, idx};
    }
    if (missing) {
      worst = std::max(worst, std::abs(p->value) + 1.0);
      continue;
    }
    const auto& [a, b, c, d, e, f] = cell;
    auto it = bd.symbols.find({a, b, c, d});
    cplx mine = 0.0;
    if (it != bd.symbols.end()) {
      int col = it->second.left_index({e.index, p->hom[0], p->hom[1]});
      int row = it->second.right_index({f.index, p->hom[2], p->hom[3]});
      if (col >= 0 && row >= 0) mine = it->second.matrix(row, col);
    }
    if (conj) mine = std::conj(mine);
    if (std::abs(p->value) < kZeroTol || std::abs(mine) < kZeroTol) {
      worst = std::max(worst, std::abs(std::abs(mine) - std::abs(p->value)));
      continue;
    }
    items.push_back({mine, p->value,
                     {var_of(e, a, b, p->hom[0]), var_of(d, e, c, p->hom[1]), var_of(f, b, c, p->hom[2]),
                      var_of(d, a, f, p->hom[3])}});
  }
  // splitting gauge lambda: value -> value * l_i l_k conj(l_l) conj(l_j); conjugated when compared as fusion data
  const int sgn = conj ? -1 : 1;
  PhaseSystem sys;
  sys.nvars = int(var.size());
  for (const auto& it : items) {
    PhaseSystem::Eq eq;
    eq.exps[it.v[0]] += sgn;
    eq.exps[it.v[1]] += sgn;
    eq.exps[it.v[2]] -= sgn;
    eq.exps[it.v[3]] -= sgn;
    for (auto e = eq.exps.begin(); e != eq.exps.end();) e = e->second == 0 ? eq.exps.erase(e) : std::next(e);
    cplx r = it.printed / it.mine;
    eq.rhs = r / std::abs(r);
    sys.eqs.push_back(eq);
  }
  auto lam = sys.solve();
  for (const auto& it : items) {
    cplx g = 1.0;
    auto pw = [&](int v, int e) { g *= std::pow(lam[v], double(e)); };
    pw(it.v[0], sgn);
    pw(it.v[1], sgn);
    pw(it.v[2], -sgn);
    pw(it.v[3], -sgn);
    worst = std::max(worst, std::abs(it.mine * g - it.printed));
  }
  fit.residual = worst;
  return fit;
}

}  // namespace

std::vector<PrintedFit> fit_printed(const CategoryBundle& bd, const std::vector<PrintedSymbol>& printed) {
  std::map<std::string, std::vector<const PrintedSymbol*>> groups;
  std::vector<std::string> order;
  for (const auto& p : printed) {
    if (!groups.count(p.group)) order.push_back(p.group);
    groups[p.group].push_back(&p);
  }
  std::vector<PrintedFit> out;
  for (const auto& g : order) {
    PrintedFit a = fit_group(bd, groups[g], true);
    PrintedFit b = fit_group(bd, groups[g], false);
    out.push_back(a.residual <= b.residual ? a : b);
  }
  return out;
}

bool ValidationReport::ok(double tol) const {
  for (auto& [k, v] : unitarity)
    if (v > tol) return false;
  if (unit_gauge > tol || pulling_through > tol || mpo_fusion > tol || fpdim_mismatch > kDerivedTol) return false;
  if (ring_violations) return false;
  for (const auto& p : printed)
    if (p.residual > tol) return false;
  return true;
}

ValidationReport validate_bundle(const CategoryBundle& bd) {
  ValidationReport rep;
  std::set<SymbolFamily> present;
  for (const auto& s : bd.symbol_sets) present.insert(classify(s, bd.base));
  for (auto f : present) rep.unitarity[family_name(f)] = unitarity_residual(bd, f);
  rep.unit_gauge = unit_gauge_residual(bd);
  const int ns = bd.num_sets();
  for (int k = 0; k < ns; ++k)
    for (int h = 0; h < ns; ++h) {
      std::array<int, 5> t{k, h, bd.base, bd.base, bd.base};
      try {
        rep.pulling_through = std::max(rep.pulling_through, pentagon_residual(bd, t));
      } catch (const BundleError&) {
      }
      for (int o = 0; o < ns; ++o) {
        std::array<int, 5> u{o, k, h, bd.base, bd.base};
        try {
          rep.mpo_fusion = std::max(rep.mpo_fusion, pentagon_residual(bd, u));
        } catch (const BundleError&) {
        }
      }
    }
  FusionRing d = base_ring(bd);
  rep.ring_violations += d.unit_law_violations() + d.associativity_violations();
  const double dim_d = d.global_dim();
  for (int h = 0; h < ns; ++h) {
    if (bd.simples(h, h).empty()) continue;
    FusionRing r = morita_dual_ring(bd, h);
    rep.ring_violations += r.unit_law_violations() + r.associativity_violations();
    rep.fpdim_mismatch = std::max(rep.fpdim_mismatch, std::abs(r.global_dim() - dim_d));
  }
  if (bd.name == "rep_s3") rep.printed = fit_printed(bd, printed_rep_s3_symbols());
  return rep;
}

}  // namespace tubeduality

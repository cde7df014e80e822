#include "tubeduality/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tubeduality/catdata.hpp"

namespace tubeduality {

const std::vector<ModelSpec>& model_registry() {
  static const std::vector<ModelSpec> models = [] {
    const GroupFamily& z2 = z2_family();
    const GroupFamily& s3 = s3_family();
    const Couplings ising{{"J", 1.0}, {"g", 1.0}};
    const Couplings rep{{"J1", 0.5}, {"J2", 1.0}};
    return std::vector<ModelSpec>{
        {"ising", "vec_z2", &z2, z2.set("G"), {0, 1}, DualKind::Group, ising,
         "transverse-field Ising chain, M = Vect_Z2"},
        {"kw", "vec_z2", &z2, z2.set("1"), {0, 1}, DualKind::Rep, ising,
         "Kramers-Wannier dual Ising chain, M = Vect"},
        {"xxz", "rep_s3", &s3, s3.set("1"), {2}, DualKind::Group, rep, "XXZ chain, M = Vect"},
        {"rep_z2", "rep_s3", &s3, s3.set("Z2"), {2}, DualKind::Rep, rep, "M = Rep(Z2)"},
        {"rep_z3", "rep_s3", &s3, s3.set("Z3"), {2}, DualKind::Group, rep, "spin-1 chain, M = Rep(Z3)"},
        {"rep_s3", "rep_s3", &s3, s3.set("G"), {2}, DualKind::Rep, rep, "anyonic chain, M = Rep(S3)"},
    };
  }();
  return models;
}

const ModelSpec& model_by_name(const std::string& name) {
  const std::string key = name == "vect" ? "xxz" : name;
  for (const auto& m : model_registry())
    if (m.name == key) return m;
  throw std::invalid_argument("unknown model: " + name);
}

std::vector<std::string> boundary_names(const ModelSpec& model) {
  const auto& calc = *model.family->calc;
  std::vector<std::string> out;
  for (int i = 0; i < int(calc.simples(model.module_set, model.module_set).size()); ++i)
    out.push_back(simple_name(*model.family, {model.module_set, model.module_set, i}));
  return out;
}

int simple_of(const ModelSpec& model, const std::string& name) {
  auto names = boundary_names(model);
  for (int i = 0; i < int(names.size()); ++i)
    if (names[i] == name) return i;
  return -1;
}

std::vector<BoundaryComponent> parse_boundary(const ModelSpec& model, const std::string& label) {
  const auto names = boundary_names(model);
  std::vector<BoundaryComponent> out;
  std::map<int, int> copies;
  std::stringstream ss(label.empty() ? names.front() : label);
  std::string part;
  while (std::getline(ss, part, '+')) {
    int idx = simple_of(model, part);
    if (idx < 0 && !part.empty() && part.find_first_not_of("0123456789") == std::string::npos) {
      // numeric fallback only when the digits are not themselves a name
      int n = std::stoi(part);
      if (n >= 0 && n < int(names.size())) idx = n;
    }
    if (idx < 0) throw std::invalid_argument("unknown boundary label '" + part + "' for model " + model.name);
    out.push_back({idx, copies[idx]++});
  }
  if (out.empty()) throw std::invalid_argument("empty boundary label");
  return out;
}

std::string boundary_label(const ModelSpec& model, const std::vector<BoundaryComponent>& boundary) {
  const auto names = boundary_names(model);
  std::string out;
  for (const auto& c : boundary) {
    if (!out.empty()) out += "+";
    out += names.at(c.simple);
  }
  return out;
}

ChainConfig make_config(const ModelSpec& model, int length, const std::vector<BoundaryComponent>& boundary) {
  if (length < 2) throw std::invalid_argument("chain length must be at least 2");
  return ChainConfig{model.family, model.module_set, length, model.allowed_y, boundary};
}

Couplings resolve_couplings(const ModelSpec& model, const Couplings& user) {
  Couplings out = model.defaults;
  for (const auto& [k, v] : user) {
    if (!out.count(k)) throw std::invalid_argument("unknown coupling '" + k + "' for model " + model.name);
    if (!std::isfinite(v)) throw std::invalid_argument("coupling '" + k + "' is not finite");
    out[k] = v;
  }
  return out;
}

Couplings parse_couplings(const std::string& text) {
  Couplings out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("malformed coupling: " + part);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed coupling value: " + part);
    }
    if (used != part.size() - eq - 1) throw std::invalid_argument("malformed coupling value: " + part);
    out[part.substr(0, eq)] = v;
  }
  return out;
}

PairTerm bond_term(const ModelSpec& model, const Couplings& user) {
  const Couplings c = resolve_couplings(model, user);
  const auto& calc = *model.family->calc;
  PairTerm t;
  if (model.family == &z2_family()) {
    // b_m flips the module strand between the two D strands; the diagonal
    // term measures the right D strand.
    PairTerm z;
    for (int yl : model.allowed_y)
      for (int yr : model.allowed_y) z.add(ladder(calc, yl, yl, yr, yr, 0), yr ? -1.0 : 1.0);
    t.add(rung_term(calc, model.allowed_y, 1), -c.at("J"));
    t.add(z, -c.at("J") * c.at("g"));
  } else {
    t.add(rung_term(calc, model.allowed_y, 2), c.at("J2"));
    t.add(rung_term(calc, model.allowed_y, 1), -c.at("J1"));
  }
  return t;
}

SparseOperator build_local_operator(const StateSpace& space, const PairTerm& term, int site) {
  return pair_operator(space, term, site);
}

SparseOperator build_boundary_operator(const StateSpace& space, const PairTerm& term) {
  return seam_operator(space, term);
}

AssembledModel assemble(const ModelSpec& model, int length, const std::vector<BoundaryComponent>& boundary,
                        const Couplings& couplings) {
  Couplings c = resolve_couplings(model, couplings);
  StateSpace space = enumerate(make_config(model, length, boundary));
  PairTerm term = bond_term(model, c);
  SparseOperator h(space.dim(), space.dim());
  for (int j = 0; j + 1 < length; ++j) h = h + build_local_operator(space, term, j);
  h = h + build_boundary_operator(space, term);
  return AssembledModel{&model, c, std::move(space), h.normalized()};
}

AssembledModel assemble(const std::string& model, int length, const std::string& boundary,
                        const Couplings& couplings) {
  const ModelSpec& spec = model_by_name(model);
  return assemble(spec, length, parse_boundary(spec, boundary), couplings);
}

SparseOperator symmetry_mpo(const StateSpace& space, int functor) {
  const ChainConfig& cfg = space.config();
  const auto& calc = cfg.calc();
  const int h = cfg.module_set;
  if (functor < 0 || functor >= int(calc.simples(h, h).size())) throw std::invalid_argument("unknown symmetry label");
  SparseOperator out(space.dim(), space.dim());
  std::set<int> done;
  for (const auto& comp : cfg.boundary) {
    if (!done.insert(comp.simple).second) continue;
    CellRef a{h, h, comp.simple}, x{h, h, functor};
    for (int f : calc.channels(x, a)) {
      CellRef cf{h, h, f};
      int n = std::min(calc.multiplicity(cf, a, x), calc.multiplicity(cf, x, a));
      for (int k = 0; k < n; ++k) out = out + closed_mpo_operator(space, space, TubeLabel{a, a, x, cf, k, k});
    }
  }
  return out.normalized();
}

// ---------------------------------------------------------------- encodings

Mat Encoding::embed(const Mat& op) const {
  Mat out = Mat::Zero(product_dim, product_dim);
  for (int r = 0; r < int(product_index.size()); ++r)
    for (int c = 0; c < int(product_index.size()); ++c) out(product_index[r], product_index[c]) = op(r, c);
  return out;
}

Mat Encoding::restrict(const Mat& op) const {
  const int n = int(product_index.size());
  Mat out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = op(product_index[r], product_index[c]);
  return out;
}

namespace {

enum class Var { Module, Strand, Vertex, Component };

struct SiteVar {
  Var kind;
  int index;
};

std::string half(int j) { return std::to_string(j) + "/2"; }

}  // namespace

Encoding effective_encoding(const ModelSpec& model, const StateSpace& space) {
  Encoding enc;
  const int L = space.length();
  const auto& calc = *model.family->calc;
  const int h = model.module_set;
  std::vector<SiteVar> vars;
  if (model.name == "ising" || model.name == "rep_z2" || model.name == "rep_z3") {
    for (int i = 0; i < L; ++i) vars.push_back({Var::Module, i});
  } else if (model.name == "kw") {
    for (int j = 0; j < L; ++j) vars.push_back({Var::Strand, j});
  } else if (model.name == "xxz") {
    for (int j = 0; j < L; ++j) vars.push_back({Var::Vertex, j});
  } else {
    // no tensor-product form
    enc.product = false;
    enc.product_dim = space.dim();
    for (int i = 0; i < space.dim(); ++i) {
      enc.configs.push_back({i});
      enc.product_index.push_back(i);
    }
    enc.sites.push_back({"chain", space.dim(), {}});
    return enc;
  }
  auto value = [&](const BasisState& s, const SiteVar& v) {
    switch (v.kind) {
      case Var::Module: return s.m[v.index];
      case Var::Strand: return s.y[v.index];
      case Var::Vertex: return s.v[v.index];
      case Var::Component: return s.component;
    }
    return 0;
  };
  auto injective = [&] {
    std::set<std::vector<int>> seen;
    for (const auto& s : space.states()) {
      std::vector<int> c;
      for (const auto& v : vars) c.push_back(value(s, v));
      if (!seen.insert(c).second) return false;
    }
    return true;
  };
  // non-invertible boundaries free the last module strand
  if (!injective() && vars.front().kind == Var::Module) vars.push_back({Var::Module, L});
  if (!injective()) vars.insert(vars.begin(), {Var::Component, 0});
  if (!injective()) throw std::logic_error("encoding is not injective");

  enc.product = true;
  const int nm = int(calc.simples(h, 0).size());
  for (const auto& v : vars) {
    SiteEncoding site;
    switch (v.kind) {
      case Var::Module:
        site.coordinate = std::to_string(v.index + 1);
        site.dim = nm;
        for (int m = 0; m < nm; ++m) site.labels.push_back(simple_name(*model.family, {h, 0, m}));
        break;
      case Var::Strand:
        site.coordinate = half(2 * v.index + 3);
        site.dim = int(model.allowed_y.size());
        for (int y : model.allowed_y) site.labels.push_back(simple_name(*model.family, {0, 0, y}));
        break;
      case Var::Vertex: {
        site.coordinate = half(2 * v.index + 3);
        int n = 0;
        for (const auto& s : space.states()) n = std::max(n, s.v[v.index] + 1);
        site.dim = n;
        for (int k = 0; k < n; ++k) site.labels.push_back("|" + std::to_string(k + 1) + ">");
        break;
      }
      case Var::Component:
        site.coordinate = "boundary";
        site.dim = int(space.config().boundary.size());
        site.labels = {};
        for (const auto& c : space.config().boundary)
          site.labels.push_back(simple_name(*model.family, {h, h, c.simple}));
        break;
    }
    enc.sites.push_back(site);
  }
  enc.product_dim = 1;
  for (const auto& s : enc.sites) enc.product_dim *= s.dim;
  for (const auto& s : space.states()) {
    std::vector<int> c;
    long idx = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      int x = value(s, vars[k]);
      if (vars[k].kind == Var::Strand)
        x = int(std::find(model.allowed_y.begin(), model.allowed_y.end(), x) - model.allowed_y.begin());
      c.push_back(x);
      idx = idx * enc.sites[k].dim + x;
    }
    enc.configs.push_back(c);
    enc.product_index.push_back(idx);
  }
  return enc;
}

// ---------------------------------------------------------------- closed forms

namespace {

Mat pauli(char c) {
  Mat m = Mat::Zero(2, 2);
  switch (c) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    case '+': m << 0, 1, 0, 0; break;
    case '-': m << 0, 0, 1, 0; break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

// Tensor product of single-site operators on the given site dims.
Mat product_op(const std::vector<int>& dims, const std::map<int, Mat>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < int(dims.size()); ++i) {
    auto it = ops.find(i);
    out = kron(out, it == ops.end() ? Mat::Identity(dims[i], dims[i]) : it->second);
  }
  return out;
}

// rho(g) of the two-dimensional irrep in the basis of the XXZ spins.
Mat rho2(const GroupFamily& fam, const std::string& g) {
  const FiniteGroup& grp = fam.calc->group();
  return grp.irreps().at(2)(grp.find(g));
}

}  // namespace

Mat closed_form_hamiltonian(const ModelSpec& model, const Couplings& user, const Encoding& enc,
                            const std::string& boundary) {
  if (!enc.product) throw std::invalid_argument("model has no spin form");
  const Couplings c = resolve_couplings(model, user);
  std::vector<int> dims;
  for (const auto& s : enc.sites) dims.push_back(s.dim);
  const int n = int(dims.size());
  const Mat X = pauli('x'), Y = pauli('y'), Z = pauli('z'), P = pauli('+'), M = pauli('-'), I2 = pauli('1');
  Mat H = Mat::Zero(enc.product_dim, enc.product_dim);
  auto op = [&](std::map<int, Mat> ops) { return product_op(dims, ops); };

  if (model.name == "ising") {
    const double J = c.at("J"), g = c.at("g");
    const double seam = boundary == "m" ? -1.0 : 1.0;
    if (boundary != "1" && boundary != "m") throw std::invalid_argument("no closed form for this boundary");
    for (int i = 0; i < n; ++i) {
      H -= J * op({{i, X}});
      H -= J * g * (i + 1 < n ? 1.0 : seam) * op({{i, Z}, {(i + 1) % n, Z}});
    }
  } else if (model.name == "kw") {
    const double J = c.at("J"), g = c.at("g");
    if (boundary != "0" && boundary != "1") throw std::invalid_argument("no closed form for this boundary");
    const double seam = boundary == "1" ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      H -= J * (j + 1 < n ? 1.0 : seam) * op({{j, X}, {(j + 1) % n, X}});
      H -= J * g * op({{j, Z}});
    }
  } else if (model.name == "xxz") {
    const double J1 = c.at("J1"), J2 = c.at("J2");
    const FiniteGroup& grp = model.family->calc->group();
    if (grp.find(boundary) < 0) throw std::invalid_argument("no closed form for this boundary");
    const Mat R = rho2(*model.family, boundary);
    for (int j = 0; j < n; ++j) {
      if (j + 1 < n) {
        H += J2 * (op({{j, P}, {j + 1, M}}) + op({{j, M}, {j + 1, P}})) + J1 * op({{j, Z}, {j + 1, Z}});
      } else {
        // seam: the first spin is seen through rho(A)
        const Mat Pt = R * P * R.adjoint(), Mt = R * M * R.adjoint(), Zt = R * Z * R.adjoint();
        H += J2 * (op({{j, P}, {0, Mt}}) + op({{j, M}, {0, Pt}})) + J1 * op({{j, Z}, {0, Zt}});
      }
    }
  } else if (model.name == "rep_z2") {
    const double J1 = c.at("J1"), J2 = c.at("J2");
    const double s3 = std::sqrt(3.0);
    if (boundary == "0" || boundary == "1") {
      const double sgn = boundary == "1" ? -1.0 : 1.0;
      for (int i = 0; i < n; ++i) {
        const int l = (i + n - 1) % n, r = (i + 1) % n;
        // Z on strand L+1 is -Z on strand 1 for the sign boundary
        const double w = (i == 0 || i == n - 1) ? sgn : 1.0;
        H += J2 * 0.5 * w * (op({{l, Z}, {r, Z}}) + op({{l, Z}, {i, X}, {r, Z}}));
        H -= J1 * op({{i, X}});
      }
    } else if (boundary == "2") {
      // sites 1..L then L+1
      const int L = n - 1, e = n - 1;
      for (int i = 1; i < L; ++i) {
        const int r = (i + 1 < L) ? i + 1 : e;
        H += J2 * 0.5 * (op({{i - 1, Z}, {r, Z}}) + op({{i - 1, Z}, {i, X}, {r, Z}}));
        H -= J1 * op({{i, X}});
      }
      const int last = L - 1;
      H += J2 * 0.25 *
           (-op({{last, Z}, {e, Z}, {0, Z}, {1, Z}}) + s3 * op({{last, Z}, {e, X}, {0, Z}, {1, Z}}) +
            s3 * op({{last, Z}, {e, Z}, {0, X}, {1, Z}}) + op({{last, Z}, {e, X}, {0, X}, {1, Z}}));
      // in the frame of the printed four-site term the b1 seam is Y_{L+1} Y_1
      H -= J1 * op({{e, Y}, {0, Y}});
    } else {
      throw std::invalid_argument("no closed form for this boundary");
    }
  } else if (model.name == "rep_z3") {
    const double J1 = c.at("J1"), J2 = c.at("J2");
    if (boundary != "1") throw std::invalid_argument("no closed form for this boundary");
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    Mat SX = Mat::Zero(3, 3), SZ = Mat::Zero(3, 3);
    SX(0, 1) = SX(1, 2) = SX(2, 0) = 1.0;
    SZ(0, 0) = 1.0;
    SZ(1, 1) = w;
    SZ(2, 2) = w * w;
    for (int i = 0; i < n; ++i) {
      const int l = (i + n - 1) % n, r = (i + 1) % n;
      H += J2 * (op({{i, SX}}) + op({{i, Mat(SX.adjoint())}}));
      Mat t = op({{l, SZ}, {r, Mat(SZ.adjoint())}}) - op({{l, SZ}, {i, SZ}, {r, SZ}});
      H -= J1 / 3.0 * (t + Mat(t.adjoint()));
    }
    // the kinematic constraint projects onto the encoded subspace
    Mat Pr = Mat::Zero(enc.product_dim, enc.product_dim);
    for (long k : enc.product_index) Pr(k, k) = 1.0;
    H = Pr * H * Pr;
  } else {
    throw std::invalid_argument("model has no spin form");
  }
  (void)I2;
  return H;
}

}  // namespace tubeduality

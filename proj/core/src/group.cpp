#include "tubeduality/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubeduality {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> element_names,
                         std::vector<std::vector<int>> table)
    : name_(std::move(name)), names_(std::move(element_names)), table_(std::move(table)) {
  const int n = order();
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a) ok = ok && table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("group table has no identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  build_classes();
  bool cyclic = false;
  for (int a = 0; a < n; ++a) cyclic = cyclic || element_order(a) == n;
  if (cyclic) irreps_ = subgroup_irreps(all_elements());
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::find(const std::string& element) const {
  for (int a = 0; a < order(); ++a)
    if (names_[a] == element) return a;
  return -1;
}

std::vector<int> FiniteGroup::all_elements() const {
  std::vector<int> v(order());
  for (int a = 0; a < order(); ++a) v[a] = a;
  return v;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const {
  if (elements.empty()) return false;
  auto has = [&](int x) { return std::find(elements.begin(), elements.end(), x) != elements.end(); };
  if (!has(identity_)) return false;
  for (int a : elements)
    for (int b : elements)
      if (!has(mul(a, inv(b)))) return false;
  return true;
}

std::vector<int> FiniteGroup::centralizer(int a) const {
  std::vector<int> c;
  for (int g = 0; g < order(); ++g)
    if (mul(g, a) == mul(a, g)) c.push_back(g);
  return c;
}

void FiniteGroup::build_classes() {
  std::vector<bool> seen(order(), false);
  for (int a = 0; a < order(); ++a) {
    if (seen[a]) continue;
    ConjugacyClass cls;
    cls.elements.push_back(a);
    cls.transversal.push_back(identity_);
    seen[a] = true;
    for (int q = 0; q < order(); ++q) {
      int c = mul(mul(q, a), inv(q));
      if (!seen[c]) {
        seen[c] = true;
        cls.elements.push_back(c);
        cls.transversal.push_back(q);
      }
    }
    cls.centralizer = centralizer(a);
    cls.name = names_[a];
    classes_.push_back(std::move(cls));
  }
}

void FiniteGroup::set_transversal(int class_index, std::vector<int> transversal) {
  ConjugacyClass& cls = classes_.at(class_index);
  if (transversal.size() != cls.elements.size()) throw std::invalid_argument("transversal size");
  std::vector<int> elements;
  for (int q : transversal) elements.push_back(mul(mul(q, cls.elements[0]), inv(q)));
  std::vector<int> a = elements, b = cls.elements;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b || transversal[0] != identity_)
    throw std::invalid_argument("transversal does not cover the class");
  cls.elements = std::move(elements);
  cls.transversal = std::move(transversal);
}

std::vector<Irrep> FiniteGroup::subgroup_irreps(const std::vector<int>& subgroup) const {
  std::vector<int> k = subgroup;
  std::sort(k.begin(), k.end());
  if (int(k.size()) == order() && !irreps_.empty()) return irreps_;
  const int n = int(k.size());
  int gen = -1;
  for (int a : k)
    if (element_order(a) == n) {
      gen = a;
      break;
    }
  if (gen < 0) throw std::invalid_argument("irreps only available for cyclic subgroups or the full group");
  std::vector<Irrep> out;
  for (int q = 0; q < n; ++q) {
    Irrep ir;
    if (n == 3 && q == 2)
      ir.name = "1*";
    else
      ir.name = std::to_string(q);
    ir.dim = 1;
    ir.mats.assign(order(), Mat());
    int x = identity_;
    for (int p = 0; p < n; ++p) {
      double angle = 2.0 * std::numbers::pi * double(q * p) / double(n);
      Mat m(1, 1);
      m(0, 0) = (q * p) % n == 0 ? cplx(1.0, 0.0) : std::polar(1.0, angle);
      if (2 * ((q * p) % n) == n) m(0, 0) = -1.0;
      ir.mats[x] = m;
      x = mul(x, gen);
    }
    out.push_back(std::move(ir));
  }
  return out;
}

FiniteGroup cyclic_group(int n) {
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back(a == 0 ? "1" : (n == 2 ? "m" : "g" + std::to_string(a)));
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup("Z" + std::to_string(n), names, t);
}

FiniteGroup s3_group() {
  // element index <-> r^a s^b
  const int ra[6] = {0, 1, 1, 1, 0, 0};
  const int sb[6] = {0, 0, 1, 2, 1, 2};
  auto index_of = [&](int a, int b) {
    for (int i = 0; i < 6; ++i)
      if (ra[i] == a && sb[i] == b) return i;
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      // r^a s^b r^c s^d = r^{a+c} s^{(-1)^c b + d}
      int a = (ra[x] + ra[y]) % 2;
      int b = ((ra[y] ? -sb[x] : sb[x]) + sb[y] + 6) % 3;
      t[x][y] = index_of(a, b);
    }
  FiniteGroup g("S3", {"1", "r", "rs", "rs2", "s", "s2"}, t);

  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Mat one = Mat::Identity(1, 1);
  Mat rs(2, 2), ss(2, 2);
  rs << 0, 1, 1, 0;
  ss << w, 0, 0, std::conj(w);
  std::vector<Irrep> irreps(3);
  irreps[0] = {"0", 1, std::vector<Mat>(6, one)};
  irreps[1] = {"1", 1, std::vector<Mat>(6)};
  irreps[2] = {"2", 2, std::vector<Mat>(6)};
  for (int x = 0; x < 6; ++x) {
    Mat sign = one * (ra[x] ? -1.0 : 1.0);
    irreps[1].mats[x] = sign;
    Mat m = Mat::Identity(2, 2);
    if (ra[x]) m = rs;
    for (int k = 0; k < sb[x]; ++k) m = m * ss;
    irreps[2].mats[x] = m;
  }
  g.set_irreps(std::move(irreps));
  // transversals Q_[r] = {1, s, s^2}, Q_[s] = {1, r}
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto& cls = g.classes()[c];
    if (cls.elements.size() == 3) g.set_transversal(int(c), {g.find("1"), g.find("s"), g.find("s2")});
    if (cls.elements.size() == 2) g.set_transversal(int(c), {g.find("1"), g.find("r")});
  }
  return g;
}

std::vector<int> induce_decompose(const FiniteGroup& g, const std::vector<int>& subgroup,
                                  const Irrep& irrep) {
  std::vector<int> mult;
  for (const Irrep& v : g.irreps()) {
    cplx acc = 0;
    for (int h : subgroup) acc += std::conj(irrep(h).trace()) * v(h).trace();
    mult.push_back(int(std::lround(acc.real() / double(subgroup.size()))));
  }
  return mult;
}

}  // namespace tubeduality

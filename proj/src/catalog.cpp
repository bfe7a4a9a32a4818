#include "nichols/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace nichols {

namespace {

nlohmann::json params(const std::vector<std::string>& names) {
  return {{"backend", "parameters"}, {"names", names}};
}

nlohmann::json cyclo(int order) { return {{"backend", "cyclotomic"}, {"order", order}}; }

nlohmann::json bich(const nlohmann::json& scalar, const std::vector<std::vector<std::string>>& q) {
  return {{"rank", q.size()}, {"scalar", scalar}, {"q", q}};
}

std::optional<Expected> ex(long v, const char* source) { return Expected{v, source}; }

constexpr const char* kCartanExample = "Cartan type example: reflections fix chi";
constexpr const char* kWeylOrder = "order of the Weyl group";
constexpr const char* kBfs = "computed by BFS closure under r_1, r_2 with canonical keys";
constexpr const char* kBfsRoots = "computed by BFS over Hom(-, chi)";

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> c;
  const auto q = params({"q"});
  c.push_back({"A1", bich(q, {{"q^2"}}), "rank one, generic q", ex(1, "rank one: r_1 fixes chi"),
               ex(1, "rank one"), ex(2, kWeylOrder)});
  c.push_back({"A2", bich(q, {{"q^2", "q^-1"}, {"q^-1", "q^2"}}), "generic Cartan type A2, q_ij = q^{d_i c_ij}",
               ex(1, kCartanExample), ex(3, kBfsRoots), ex(6, kWeylOrder)});
  c.push_back({"B2", bich(q, {{"q^4", "q^-2"}, {"q^-2", "q^2"}}), "generic Cartan type B2, d = (2,1)",
               ex(1, kCartanExample), ex(4, kBfsRoots), ex(8, kWeylOrder)});
  c.push_back({"G2", bich(q, {{"q^6", "q^-3"}, {"q^-3", "q^2"}}), "generic Cartan type G2, d = (3,1)",
               ex(1, kCartanExample), ex(6, kBfsRoots), ex(12, kWeylOrder)});
  c.push_back({"A3",
               bich(q, {{"q^2", "q^-1", "1"}, {"q^-1", "q^2", "q^-1"}, {"1", "q^-1", "q^2"}}),
               "generic Cartan type A3", ex(1, kCartanExample), ex(6, kBfsRoots), ex(24, kWeylOrder)});
  c.push_back({"A2_zeta3", bich(cyclo(3), {{"z^2", "z^-1"}, {"z^-1", "z^2"}}),
               "Cartan type A2 at q a primitive third root of unity", ex(1, kBfs), ex(3, kBfsRoots),
               ex(6, kBfsRoots)});
  c.push_back({"A2_zeta4", bich(cyclo(4), {{"z^2", "z^-1"}, {"z^-1", "z^2"}}),
               "Cartan type A2 at q a primitive fourth root of unity", ex(1, kBfs),
               ex(3, kBfsRoots), ex(6, kBfsRoots)});
  c.push_back({"super", bich(q, {{"q^2", "q^-1"}, {"q^-1", "-1"}}),
               "rank-two super type: q_11 = q^2, q_12 q_21 = q^-2, q_22 = -1", ex(3, kBfs),
               ex(3, kBfsRoots), ex(6, kBfsRoots)});
  c.push_back({"sl3_two_parameter", bich(params({"r", "s"}), {{"r*s^-1", "s"}, {"r^-1", "r*s^-1"}}),
               "two-parameter deformation of Cartan type A2", ex(2, kBfs), ex(3, kBfsRoots),
               ex(6, kBfsRoots)});
  return c;
}

nlohmann::json expected_json(const std::optional<Expected>& e) {
  if (!e) return nullptr;
  return {{"value", e->value}, {"source", e->source}};
}

}  // namespace

nlohmann::json CatalogEntry::to_json() const {
  return {{"name", name},
          {"bicharacter", bicharacter},
          {"note", note},
          {"expected",
           {{"orbit_size", expected_json(orbit_size)},
            {"positive_roots", expected_json(positive_roots)},
            {"morphisms", expected_json(morphisms)}}}};
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build();
  return c;
}

const CatalogEntry* find_catalog(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

Bicharacter generic_cartan_type(const IntMatrix& cartan, const std::vector<int>& d) {
  const ScalarContext* ctx = ScalarContext::parameters({"q"});
  const Scalar q = Scalar::param(ctx, 0);
  const int n = static_cast<int>(cartan.size());
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = q.pow(static_cast<long>(d[i]) * cartan[i][j]);
  return Bicharacter(ctx, std::move(m));
}

long restricted_pbw_dim(const Bicharacter& chi, const std::vector<Lattice>& positive_roots, const Lattice& mu) {
  std::vector<std::optional<int>> h;
  for (const auto& b : positive_roots) h.push_back(height(chi, b));
  std::map<std::pair<std::size_t, Lattice>, long> memo;
  std::function<long(std::size_t, const Lattice&)> count = [&](std::size_t k, const Lattice& rest) -> long {
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) return 1;
    if (k == positive_roots.size()) return 0;
    auto it = memo.find({k, rest});
    if (it != memo.end()) return it->second;
    long total = 0;
    Lattice r = rest;
    for (int m = 0; !h[k] || m < *h[k]; ++m) {
      if (std::any_of(r.begin(), r.end(), [](int x) { return x < 0; })) break;
      total += count(k + 1, r);
      r = r - positive_roots[k];
    }
    memo[{k, rest}] = total;
    return total;
  };
  return count(0, mu);
}

}  // namespace nichols

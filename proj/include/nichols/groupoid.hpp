#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "nichols/bicharacter.hpp"

namespace nichols {

// The groupoid is infinite, or a cap stopped the exploration before it closed.
class IncompleteGroupoid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExploreOptions {
  int object_cap = 1024;
  int scan_cap = kDefaultScanCap;
};

// The orbit G(chi) as a Cartan scheme.  Objects are indexed densely in BFS
// order; object 0 is the starting bicharacter.
struct CartanScheme {
  int rank = 0;
  std::vector<Bicharacter> objects;
  std::unordered_map<std::string, int> index;  // canonical key -> object
  std::vector<std::vector<int>> edge;          // edge[a][p] = r_p(a), -1 if unexplored
  std::vector<IntMatrix> cartan;
  bool complete = false;

  int size() const { return static_cast<int>(objects.size()); }
  int find(const Bicharacter& chi) const;
  void require_complete() const;
};

CartanScheme explore(const Bicharacter& chi, const ExploreOptions& opt = {});

// word i_1..i_k; matrix = s_{i_k} ... s_{i_1} applied at `source`
struct Morphism {
  int source = 0, target = 0;
  std::vector<int> word;
  IntMatrix matrix;
};

// Morphism composed along a word starting at `source`.
Morphism compose_word(const CartanScheme& s, int source, const std::vector<int>& word);

enum class Finiteness { Finite, Infinite, Unknown };

// All morphisms with a fixed source (or a fixed target when `into`), found by
// BFS over (other end, matrix).  BFS depth is the length.
struct MorphismTable {
  int anchor = 0;
  bool into = false;
  std::vector<Morphism> morphisms;  // nondecreasing word length
  Finiteness status = Finiteness::Unknown;
  std::map<std::pair<int, IntMatrix>, int> lookup;  // (other end, matrix) -> index
  const Morphism* find(int other, const IntMatrix& m) const;
};

constexpr long kDefaultMorphismCap = 1000000;

MorphismTable morphisms_from(const CartanScheme& s, int source, long cap = kDefaultMorphismCap);
MorphismTable morphisms_into(const CartanScheme& s, int target, long cap = kDefaultMorphismCap);

struct FinitenessReport {
  Finiteness status = Finiteness::Unknown;
  std::vector<long> morphisms_per_object;  // |Hom(a, -)|
  std::string note;
};
FinitenessReport is_finite(const CartanScheme& s, long cap = kDefaultMorphismCap);

struct RootSystem {
  int object = 0;
  std::vector<Lattice> positive;  // sorted by height, then lexicographically
  std::vector<std::vector<int>> m;  // m[i][j] = |R_+ cap (N0 a_i + N0 a_j)|
};

// Real roots at object a: {w(alpha_i) : w in Hom(-, a)}; verifies (R1)-(R4).
RootSystem real_roots(const CartanScheme& s, int a, long cap = kDefaultMorphismCap);

int length(const CartanScheme& s, const Morphism& w, long cap = kDefaultMorphismCap);
// unique longest w with target a
Morphism longest(const CartanScheme& s, int a, long cap = kDefaultMorphismCap);
// unique longest w with source a
Morphism longest_from(const CartanScheme& s, int a, long cap = kDefaultMorphismCap);

std::optional<int> rank2_M(const Bicharacter& chi, int i, int j, int cap = 64,
                           int scan_cap = kDefaultScanCap);

struct CheckReport {
  std::vector<std::string> violations;
  int checks = 0;
  bool ok() const { return violations.empty(); }
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) violations.push_back(what);
  }
  void merge(const CheckReport& o) {
    checks += o.checks;
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  }
};

CheckReport check_cm(const CartanScheme& s, const std::vector<RootSystem>& roots);
// (C1), (C2), (R1)-(R4), the Coxeter-word identity and the cross-check of the
// rank-two counts against rank2_M, for every object.
CheckReport check_axioms(const CartanScheme& s, long cap = kDefaultMorphismCap);

std::string to_dot(const CartanScheme& s);
nlohmann::json to_json(const CartanScheme& s);
CartanScheme scheme_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RootSystem& r);

}  // namespace nichols

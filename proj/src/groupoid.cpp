#include "nichols/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace nichols {

int CartanScheme::find(const Bicharacter& chi) const {
  auto it = index.find(chi.key());
  return it == index.end() ? -1 : it->second;
}

void CartanScheme::require_complete() const {
  if (!complete)
    throw IncompleteGroupoid("Cartan scheme is truncated at " + std::to_string(size()) +
                             " objects; raise the object cap");
}

CartanScheme explore(const Bicharacter& chi, const ExploreOptions& opt) {
  CartanScheme s;
  s.rank = chi.rank();
  auto add = [&](const Bicharacter& b) {
    const int id = s.size();
    s.objects.push_back(b);
    s.index.emplace(b.key(), id);
    s.edge.emplace_back(s.rank, -1);
    s.cartan.emplace_back();
    return id;
  };
  add(chi);
  bool truncated = false;
  for (int a = 0; a < s.size(); ++a) {
    s.cartan[a] = cartan_matrix(s.objects[a], opt.scan_cap);
    for (int p = 0; p < s.rank; ++p) {
      Bicharacter next = s.objects[a].pullback(reflection_matrix(s.cartan[a], p));
      int b = s.find(next);
      if (b < 0) {
        if (s.size() >= opt.object_cap) {
          truncated = true;
          continue;
        }
        b = add(next);
      }
      s.edge[a][p] = b;
    }
  }
  s.complete = !truncated;
  return s;
}

Morphism compose_word(const CartanScheme& s, int source, const std::vector<int>& word) {
  Morphism m{source, source, word, identity_matrix(s.rank)};
  for (int p : word) {
    if (p < 0 || p >= s.rank) throw std::out_of_range("letter out of range");
    const int next = s.edge[m.target][p];
    if (next < 0) throw std::runtime_error("word leaves the explored part of the scheme");
    m.matrix = reflection_matrix(s.cartan[m.target], p) * m.matrix;
    m.target = next;
  }
  return m;
}

const Morphism* MorphismTable::find(int other, const IntMatrix& m) const {
  auto it = lookup.find({other, m});
  return it == lookup.end() ? nullptr : &morphisms[it->second];
}

namespace {

int trace(const IntMatrix& m) {
  int t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

// An integer matrix of finite order has roots of unity as eigenvalues, so its
// trace is at most n in absolute value, with equality n only for 1.
bool has_infinite_order(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  const int t = trace(m);
  return std::abs(t) > n || (t == n && m != identity_matrix(n));
}

MorphismTable bfs(const CartanScheme& s, int anchor, bool into, long cap) {
  s.require_complete();
  MorphismTable t;
  t.anchor = anchor;
  t.into = into;
  auto other = [into](const Morphism& m) { return into ? m.source : m.target; };
  Morphism id{anchor, anchor, {}, identity_matrix(s.rank)};
  t.lookup.emplace(std::make_pair(anchor, id.matrix), 0);
  t.morphisms.push_back(std::move(id));
  for (std::size_t k = 0; k < t.morphisms.size(); ++k) {
    for (int p = 0; p < s.rank; ++p) {
      const Morphism& cur = t.morphisms[k];
      const int b = other(cur);
      const IntMatrix sp = reflection_matrix(s.cartan[b], p);
      Morphism next;
      if (into) {
        // cur in Hom(b, a); s_p in Hom(r_p b, b) has the same matrix by (C2)
        next.source = s.edge[b][p];
        next.target = anchor;
        next.matrix = cur.matrix * sp;
        next.word.reserve(cur.word.size() + 1);
        next.word.push_back(p);
        next.word.insert(next.word.end(), cur.word.begin(), cur.word.end());
      } else {
        next.source = anchor;
        next.target = s.edge[b][p];
        next.matrix = sp * cur.matrix;
        next.word = cur.word;
        next.word.push_back(p);
      }
      auto key = std::make_pair(other(next), next.matrix);
      if (t.lookup.count(key)) continue;
      if (other(next) == anchor && has_infinite_order(next.matrix)) {
        t.status = Finiteness::Infinite;
        t.morphisms.push_back(std::move(next));
        return t;
      }
      if (static_cast<long>(t.morphisms.size()) >= cap) {
        t.status = Finiteness::Unknown;
        return t;
      }
      t.lookup.emplace(std::move(key), static_cast<int>(t.morphisms.size()));
      t.morphisms.push_back(std::move(next));
    }
  }
  t.status = Finiteness::Finite;
  return t;
}

[[noreturn]] void infinite_error(const MorphismTable& t) {
  if (t.status == Finiteness::Infinite)
    throw IncompleteGroupoid(
        "Weyl groupoid is infinite; use rank2_M or a bounded exploration instead");
  throw IncompleteGroupoid(
      "morphism cap reached before the Weyl groupoid closed; raise the cap or use rank2_M");
}

bool nonneg(const Lattice& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

bool nonpos(const Lattice& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x <= 0; });
}

int height_of(const Lattice& v) {
  int h = 0;
  for (int x : v) h += x;
  return h;
}

std::set<Lattice> all_roots(const CartanScheme& s, int a, long cap) {
  MorphismTable t = morphisms_into(s, a, cap);
  if (t.status != Finiteness::Finite) infinite_error(t);
  std::set<Lattice> r;
  for (const Morphism& w : t.morphisms)
    for (int i = 0; i < s.rank; ++i) {
      Lattice col(s.rank);
      for (int k = 0; k < s.rank; ++k) col[k] = w.matrix[k][i];
      r.insert(col);
    }
  return r;
}

RootSystem roots_checked(const CartanScheme& s, int a, long cap, CheckReport& rep) {
  const int n = s.rank;
  const std::string at = " at object " + std::to_string(a);
  const std::set<Lattice> all = all_roots(s, a, cap);
  RootSystem rs;
  rs.object = a;
  for (const Lattice& v : all) {
    const bool pos = nonneg(v), neg = nonpos(v);
    rep.expect(pos != neg, "(R1) root " + to_string(v) + " is not sign-definite" + at);
    rep.expect(all.count(-1 * v) == 1, "(R1) -" + to_string(v) + " missing" + at);
    if (pos) rs.positive.push_back(v);
    int support = 0;
    for (int x : v) support += x != 0;
    if (support == 1)
      rep.expect(height_of(v) == 1 || height_of(v) == -1,
                 "(R2) multiple " + to_string(v) + " of a simple root" + at);
  }
  for (int i = 0; i < n; ++i) rep.expect(all.count(unit(n, i)) == 1, "(R2) simple root missing" + at);
  std::sort(rs.positive.begin(), rs.positive.end(), [](const Lattice& x, const Lattice& y) {
    const int hx = height_of(x), hy = height_of(y);
    return hx != hy ? hx < hy : x < y;
  });
  rs.m.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const Lattice& v : rs.positive) {
        bool inside = true;
        for (int k = 0; k < n; ++k)
          if (k != i && k != j && v[k] != 0) inside = false;
        rs.m[i][j] += inside;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int b = a;
      for (int k = 0; k < rs.m[i][j]; ++k) b = s.edge[s.edge[b][j]][i];
      rep.expect(b == a, "(R4) (r_i r_j)^m does not fix the object" + at);
    }
  for (int i = 0; i < n; ++i) {
    const int b = s.edge[a][i];
    const std::set<Lattice> other = b == a ? all : all_roots(s, b, cap);
    const IntMatrix si = reflection_matrix(s.cartan[a], i);
    std::set<Lattice> image;
    for (const Lattice& v : all) image.insert(si * v);
    rep.expect(image == other, "(R3) s_" + std::to_string(i) + " does not map roots" + at);
  }
  return rs;
}

}  // namespace

MorphismTable morphisms_from(const CartanScheme& s, int source, long cap) {
  return bfs(s, source, false, cap);
}

MorphismTable morphisms_into(const CartanScheme& s, int target, long cap) {
  return bfs(s, target, true, cap);
}

FinitenessReport is_finite(const CartanScheme& s, long cap) {
  s.require_complete();
  FinitenessReport r;
  r.status = Finiteness::Finite;
  for (int a = 0; a < s.size(); ++a) {
    MorphismTable t = morphisms_from(s, a, cap);
    if (t.status == Finiteness::Infinite) {
      r.status = Finiteness::Infinite;
      r.note = "endomorphism " + to_string(t.morphisms.back().matrix) + " of object " +
               std::to_string(a) + " has infinite order";
      r.morphisms_per_object.clear();
      return r;
    }
    if (t.status == Finiteness::Unknown) {
      r.status = Finiteness::Unknown;
      r.note = "morphism cap " + std::to_string(cap) + " reached from object " + std::to_string(a);
      r.morphisms_per_object.clear();
      return r;
    }
    r.morphisms_per_object.push_back(static_cast<long>(t.morphisms.size()));
  }
  // cross-check against the equivalent finiteness conditions
  for (long c : r.morphisms_per_object)
    if (c != r.morphisms_per_object.front())
      throw std::logic_error("|Hom(a,-)| differs between objects of a connected groupoid");
  for (int a = 0; a < s.size(); ++a) {
    CheckReport rep;
    RootSystem rs = roots_checked(s, a, cap, rep);
    if (!rep.ok()) throw std::logic_error(rep.violations.front());
    if (rs.positive.empty()) throw std::logic_error("empty root system");
  }
  r.note = std::to_string(s.size()) + " objects, " +
           std::to_string(r.morphisms_per_object.front()) + " morphisms per object";
  return r;
}

RootSystem real_roots(const CartanScheme& s, int a, long cap) {
  CheckReport rep;
  RootSystem rs = roots_checked(s, a, cap, rep);
  if (!rep.ok()) throw std::logic_error("root system axioms fail: " + rep.violations.front());
  return rs;
}

int length(const CartanScheme& s, const Morphism& w, long cap) {
  MorphismTable t = morphisms_from(s, w.source, cap);
  if (t.status != Finiteness::Finite) infinite_error(t);
  const Morphism* m = t.find(w.target, w.matrix);
  if (!m) throw std::invalid_argument("not a morphism of the Weyl groupoid");
  return static_cast<int>(m->word.size());
}

namespace {

Morphism unique_longest(const CartanScheme& s, int a, bool into, long cap) {
  MorphismTable t = bfs(s, a, into, cap);
  if (t.status != Finiteness::Finite) infinite_error(t);
  const std::size_t top = t.morphisms.back().word.size();
  int count = 0;
  for (const Morphism& m : t.morphisms) count += m.word.size() == top;
  if (count != 1) throw std::logic_error("longest element is not unique");
  const Morphism& w = t.morphisms.back();
  const int target = into ? a : w.target;
  const std::size_t npos = real_roots(s, target, cap).positive.size();
  if (npos != top) throw std::logic_error("length of the longest element differs from |R_+|");
  return w;
}

}  // namespace

Morphism longest(const CartanScheme& s, int a, long cap) { return unique_longest(s, a, true, cap); }

Morphism longest_from(const CartanScheme& s, int a, long cap) {
  return unique_longest(s, a, false, cap);
}

std::optional<int> rank2_M(const Bicharacter& chi, int i, int j, int cap, int scan_cap) {
  if (i == j) throw std::invalid_argument("rank2_M needs i != j");
  const int n = chi.rank();
  Bicharacter cur = chi;
  Lattice v = unit(n, j);
  for (int m = 0; m <= cap; ++m) {
    const int next = m % 2 == 0 ? i : j;
    if (v == unit(n, next)) return m + 1;
    if (nonpos(v)) throw std::logic_error("alternating reflections reached a negative root first");
    Reflection r = reflect(cur, next, scan_cap);
    v = r.s * v;
    cur = r.chi;
  }
  return std::nullopt;
}

CheckReport check_cm(const CartanScheme& s, const std::vector<RootSystem>& roots) {
  CheckReport rep;
  for (const RootSystem& rs : roots) {
    const std::set<Lattice> pos(rs.positive.begin(), rs.positive.end());
    const int n = s.rank;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int best = -1;
        for (int m = 0; pos.count(unit(n, j) + m * unit(n, i)); ++m) best = m;
        rep.expect(best == -s.cartan[rs.object][i][j],
                   "-c_ij != max m at object " + std::to_string(rs.object) + " (i,j)=(" +
                       std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
  return rep;
}

CheckReport check_axioms(const CartanScheme& s, long cap) {
  s.require_complete();
  CheckReport rep;
  const int n = s.rank;
  for (int a = 0; a < s.size(); ++a)
    for (int p = 0; p < n; ++p) {
      const int b = s.edge[a][p];
      rep.expect(s.edge[b][p] == a, "(C1) r_p^2 != id at object " + std::to_string(a));
      for (int j = 0; j < n; ++j)
        rep.expect(s.cartan[a][p][j] == s.cartan[b][p][j],
                   "(C2) c_pj changes along r_p at object " + std::to_string(a));
    }
  std::vector<RootSystem> roots;
  for (int a = 0; a < s.size(); ++a) roots.push_back(roots_checked(s, a, cap, rep));
  rep.merge(check_cm(s, roots));
  for (const RootSystem& rs : roots)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const int m = rs.m[i][j];
        std::vector<int> word;
        for (int k = 0; k < m; ++k) {
          word.push_back(j);
          word.push_back(i);
        }
        Morphism w = compose_word(s, rs.object, word);
        rep.expect(w.target == rs.object && w.matrix == identity_matrix(n),
                   "(s_i s_j)^m != 1 at object " + std::to_string(rs.object));
        rep.expect(rank2_M(s.objects[rs.object], i, j) == m,
                   "rank2_M disagrees with the root count at object " +
                       std::to_string(rs.object));
      }
  return rep;
}

std::string to_dot(const CartanScheme& s) {
  std::ostringstream o;
  o << "graph cartan_scheme {\n";
  for (int a = 0; a < s.size(); ++a)
    o << "  o" << a << " [label=\"" << a << " #" << std::hex
      << (std::hash<std::string>{}(s.objects[a].key()) & 0xffffff) << std::dec << "\\n"
      << to_string(s.cartan[a]) << "\"];\n";
  for (int a = 0; a < s.size(); ++a)
    for (int p = 0; p < s.rank; ++p) {
      const int b = s.edge[a][p];
      if (b >= a) o << "  o" << a << " -- o" << b << " [label=\"" << p + 1 << "\"];\n";
    }
  o << "}\n";
  return o.str();
}

nlohmann::json to_json(const CartanScheme& s) {
  nlohmann::json j;
  j["rank"] = s.rank;
  j["complete"] = s.complete;
  j["objects"] = nlohmann::json::array();
  for (int a = 0; a < s.size(); ++a)
    j["objects"].push_back(
        {{"bicharacter", to_json(s.objects[a])}, {"cartan", s.cartan[a]}, {"edges", s.edge[a]}});
  return j;
}

CartanScheme scheme_from_json(const nlohmann::json& j) {
  CartanScheme s;
  s.rank = j.at("rank").get<int>();
  s.complete = j.at("complete").get<bool>();
  for (const auto& o : j.at("objects")) {
    s.objects.push_back(bicharacter_from_json(o.at("bicharacter")));
    s.index.emplace(s.objects.back().key(), s.size() - 1);
    s.cartan.push_back(o.at("cartan").get<IntMatrix>());
    s.edge.push_back(o.at("edges").get<std::vector<int>>());
  }
  return s;
}

nlohmann::json to_json(const RootSystem& r) {
  return {{"object", r.object}, {"positive", r.positive}, {"m", r.m}};
}

}  // namespace nichols

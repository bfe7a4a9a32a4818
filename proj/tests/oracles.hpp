#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library routine they are compared against.

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nichols/bicharacter.hpp"
#include "nichols/catalog.hpp"
#include "nichols/scalar.hpp"

namespace oracle {

using nichols::Bicharacter;
using nichols::IntMatrix;
using nichols::Lattice;
using nichols::Scalar;
using nichols::ScalarContext;

inline Bicharacter mk(const ScalarContext* ctx, const std::vector<std::vector<std::string>>& m) {
  std::vector<std::vector<Scalar>> q;
  for (const auto& r : m) {
    q.emplace_back();
    for (const auto& x : r) q.back().push_back(Scalar::parse(ctx, x));
  }
  return Bicharacter(ctx, q);
}

inline Bicharacter cat(const std::string& name) { return nichols::find_catalog(name)->chi(); }

// Coefficient of u^n v^(m-n) in (u+v)^m with vu = quv: sum over the
// placements of the n letters u of q^(number of pairs v before u).
inline Scalar quantum_plane_binomial(int m, int n, const Scalar& q) {
  if (n < 0 || n > m) return Scalar(0);
  Scalar total(0);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != n) continue;
    int inversions = 0, vs = 0;
    for (int k = 0; k < m; ++k) {
      if (mask & (1u << k))
        inversions += vs;
      else
        ++vs;
    }
    total += q.pow(inversions);
  }
  return total;
}

// sum_{k<m} q^k
inline Scalar qnum(int m, const Scalar& q) {
  Scalar s(0);
  for (int k = 0; k < m; ++k) s += q.pow(k);
  return s;
}

// Cartan entry by direct scan of (m+1)_q (q^m q_pj q_jp - 1); -1 when none below `cap`.
inline int scan_entry(const Bicharacter& chi, int p, int j, int cap = 40) {
  if (p == j) return 2;
  const Scalar& qpp = chi.q(p, p);
  const Scalar t = chi.q(p, j) * chi.q(j, p);
  for (int m = 0; m <= cap; ++m)
    if ((qnum(m + 1, qpp) * (qpp.pow(m) * t - Scalar(1))).is_zero()) return -m;
  return 1;  // not p-finite within the cap
}

// r_p(chi) from the explicit formulas for its structure constants.
inline Bicharacter reflect_formula(const Bicharacter& chi, int p) {
  const int n = chi.rank();
  std::vector<int> c(n);
  for (int j = 0; j < n; ++j) c[j] = scan_entry(chi, p, j);
  std::vector<std::vector<Scalar>> q(n, std::vector<Scalar>(n));
  const Scalar& qpp = chi.q(p, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == p && j == p)
        q[i][j] = qpp;
      else if (i == p)
        q[i][j] = chi.q(p, j).inverse() * qpp.pow(c[j]);
      else if (j == p)
        q[i][j] = chi.q(i, p).inverse() * qpp.pow(c[i]);
      else
        q[i][j] = chi.q(i, j) * chi.q(i, p).pow(-c[j]) * chi.q(p, j).pow(-c[i]) * qpp.pow(c[i] * c[j]);
    }
  return Bicharacter(chi.context(), q);
}

inline IntMatrix reflection(const Bicharacter& chi, int p) {
  const int n = chi.rank();
  IntMatrix s(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) s[i][i] = 1;
  for (int j = 0; j < n; ++j) s[p][j] -= scan_entry(chi, p, j);
  return s;
}

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.size());
  IntMatrix c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

struct OrbitCounts {
  int objects = 0;
  long morphisms_from_start = 0;
  std::set<Lattice> positive_roots;  // at the start object
};

// Closure under the reflections, and BFS over (object, matrix) for Hom(chi, -).
inline OrbitCounts orbit_counts(const Bicharacter& chi, int object_cap = 200, long morph_cap = 20000) {
  const int n = chi.rank();
  OrbitCounts out;
  std::map<std::string, Bicharacter> seen{{chi.key(), chi}};
  std::deque<Bicharacter> todo{chi};
  while (!todo.empty() && static_cast<int>(seen.size()) <= object_cap) {
    const Bicharacter x = todo.front();
    todo.pop_front();
    for (int p = 0; p < n; ++p) {
      const Bicharacter y = reflect_formula(x, p);
      if (seen.emplace(y.key(), y).second) todo.push_back(y);
    }
  }
  out.objects = static_cast<int>(seen.size());

  // w in Hom(chi, y) and its inverse; reflections are involutions, so
  // w^{-1} = s_{p_1} ... s_{p_k} and the real roots at chi are w^{-1}(alpha_i).
  IntMatrix id(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  std::set<std::pair<std::string, IntMatrix>> vis{{chi.key(), id}};
  struct Node {
    Bicharacter x;
    IntMatrix m, inv;
  };
  std::deque<Node> q{{chi, id, id}};
  while (!q.empty() && static_cast<long>(vis.size()) <= morph_cap) {
    const Node a = q.front();
    q.pop_front();
    for (int i = 0; i < n; ++i) {
      Lattice root(n);
      for (int r = 0; r < n; ++r) root[r] = a.inv[r][i];
      bool pos = true;
      for (int v : root) pos = pos && v >= 0;
      if (pos) out.positive_roots.insert(root);
    }
    for (int p = 0; p < n; ++p) {
      const IntMatrix s = reflection(a.x, p);
      const IntMatrix m2 = matmul(s, a.m);
      if (vis.insert({reflect_formula(a.x, p).key(), m2}).second)
        q.push_back({reflect_formula(a.x, p), m2, matmul(a.inv, s)});
    }
  }
  out.morphisms_from_start = static_cast<long>(vis.size());
  return out;
}

// Coefficients of prod_beta (1 + t^beta + ... + t^{(h_beta - 1) beta}),
// truncated to total degree `cap`; infinite heights give geometric series.
inline std::map<Lattice, long> pbw_series(const std::vector<Lattice>& roots, const std::vector<int>& heights,
                                          int cap) {
  const int n = roots.empty() ? 0 : static_cast<int>(roots[0].size());
  std::map<Lattice, long> series{{Lattice(n, 0), 1}};
  for (std::size_t k = 0; k < roots.size(); ++k) {
    std::map<Lattice, long> next;
    int size = 0;
    for (int x : roots[k]) size += x;
    for (const auto& [mu, c] : series) {
      int total = 0;
      for (int x : mu) total += x;
      Lattice cur = mu;
      for (int m = 0; (heights[k] <= 0 || m < heights[k]) && total + m * size <= cap; ++m) {
        next[cur] += c;
        for (int r = 0; r < n; ++r) cur[r] += roots[k][r];
      }
    }
    series = std::move(next);
  }
  return series;
}

}  // namespace oracle

namespace oracle {

// generic q, -1 and primitive roots of unity of orders 3, 4, 5, 12
inline std::vector<std::pair<std::string, Scalar>> test_scalars() {
  return {{"q", Scalar::param(ScalarContext::parameters({"q"}), 0)},
          {"-1", Scalar(-1)},
          {"zeta3", Scalar::zeta(ScalarContext::cyclotomic(3))},
          {"zeta4", Scalar::zeta(ScalarContext::cyclotomic(4))},
          {"zeta5", Scalar::zeta(ScalarContext::cyclotomic(5))},
          {"zeta12", Scalar::zeta(ScalarContext::cyclotomic(12))}};
}

}  // namespace oracle

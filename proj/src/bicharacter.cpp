#include "nichols/bicharacter.hpp"

#include <sstream>

namespace nichols {

Lattice unit(int n, int i) {
  Lattice v(n, 0);
  v[i] = 1;
  return v;
}

Lattice operator+(Lattice a, const Lattice& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Lattice operator-(Lattice a, const Lattice& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Lattice operator*(int k, Lattice a) {
  for (auto& x : a) x *= k;
  return a;
}

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix r(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}

Lattice operator*(const IntMatrix& a, const Lattice& v) {
  Lattice r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::invalid_argument("singular lattice map");
    std::swap(m[c], m[piv]);
    mpq_class inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  IntMatrix r(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m[i][n + j].get_den() != 1) throw std::invalid_argument("lattice map not invertible over Z");
      r[i][j] = static_cast<int>(m[i][n + j].get_num().get_si());
    }
  return r;
}

std::string to_string(const Lattice& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

Bicharacter::Bicharacter(const ScalarContext* ctx, std::vector<std::vector<Scalar>> q)
    : n_(static_cast<int>(q.size())), ctx_(ctx) {
  if (n_ == 0) throw std::invalid_argument("bicharacter of rank 0");
  q_.reserve(n_ * n_);
  for (auto& row : q) {
    if (static_cast<int>(row.size()) != n_) throw std::invalid_argument("structure matrix is not square");
    for (auto& x : row) {
      if (x.is_zero()) throw std::invalid_argument("structure constants must be nonzero");
      if (x.context() && x.context() != ctx) throw std::invalid_argument("structure constant from a different context");
      q_.push_back(std::move(x));
    }
  }
  std::string k = ctx ? ctx->describe() : "rational";
  k += ":[";
  for (int i = 0; i < n_; ++i) {
    k += i ? ",[" : "[";
    for (int j = 0; j < n_; ++j) k += (j ? "," : "") + q_[i * n_ + j].to_string();
    k += "]";
  }
  key_ = k + "]";
}

Scalar Bicharacter::eval(const Lattice& mu, const Lattice& nu) const {
  Scalar r(1);
  for (int i = 0; i < n_; ++i) {
    if (!mu[i]) continue;
    for (int j = 0; j < n_; ++j)
      if (nu[j]) r *= q(i, j).pow(static_cast<long>(mu[i]) * nu[j]);
  }
  return r;
}

Bicharacter Bicharacter::op() const {
  std::vector<std::vector<Scalar>> m(n_, std::vector<Scalar>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = q(j, i);
  return Bicharacter(ctx_, std::move(m));
}

Bicharacter Bicharacter::inverse() const {
  std::vector<std::vector<Scalar>> m(n_, std::vector<Scalar>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = q(i, j).inverse();
  return Bicharacter(ctx_, std::move(m));
}

Bicharacter Bicharacter::pullback(const IntMatrix& w) const {
  IntMatrix winv = inverse_unimodular(w);
  std::vector<Lattice> cols(n_, Lattice(n_));
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) cols[j][i] = winv[i][j];
  std::vector<std::vector<Scalar>> m(n_, std::vector<Scalar>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = eval(cols[i], cols[j]);
  return Bicharacter(ctx_, std::move(m));
}

// ---------------------------------------------------------------------------

namespace {

const char* status_name(FinitenessScan::Status s) {
  switch (s) {
    case FinitenessScan::Status::Finite:
      return "finite";
    case FinitenessScan::Status::ProvenInfinite:
      return "proven infinite";
    case FinitenessScan::Status::CapReached:
      return "possibly infinite, cap reached";
  }
  return "?";
}

// Does c^m * d == 1 hold for some m >= 0 (rational c, d)?  Exact.
bool rational_power_hits_one(const mpq_class& c, const mpq_class& d) {
  if (c == 1) return d == 1;
  if (c == -1) return d == 1 || d == -1;
  mpq_class x = d;
  const bool grow = abs(c) > 1;
  for (int guard = 0; guard < 1 << 20; ++guard) {
    if (x == 1) return true;
    if (grow ? abs(x) > 1 : abs(x) < 1) return false;
    x *= c;
  }
  return true;  // unreachable for nonzero c; stay conservative
}

enum class Never { Yes, No, Unknown };

// Can q^m * t == 1 for some m >= 0?
Never never_hits_one(const Scalar& q, const Scalar& t) {
  if (auto k = q.root_of_unity_order()) {
    for (int m = 0; m < *k; ++m)
      if ((q.pow(m) * t).is_one()) return Never::No;
    return Never::Yes;
  }
  if (q.is_rational() && t.is_rational())
    return rational_power_hits_one(q.rational(), t.rational()) ? Never::No : Never::Yes;
  mpq_class c, d;
  Monomial a, b;
  if (q.context() && !q.context()->is_cyclotomic() && q.as_laurent_monomial(c, a) &&
      t.as_laurent_monomial(d, b)) {
    if (a.is_one()) {
      if (!b.is_one()) return Never::Yes;
      return rational_power_hits_one(c, d) ? Never::No : Never::Yes;
    }
    int idx = 0;
    while (a.e[idx] == 0) ++idx;
    if (b.e[idx] % a.e[idx] != 0) return Never::Yes;
    long m = -b.e[idx] / a.e[idx];
    if (m < 0) return Never::Yes;
    for (int i = 0; i < kMaxParams; ++i)
      if (m * a.e[i] + b.e[i] != 0) return Never::Yes;
    mpq_class x = d;
    for (long s = 0; s < m; ++s) x *= c;
    return x == 1 ? Never::No : Never::Yes;
  }
  return Never::Unknown;
}

}  // namespace

NotPFinite::NotPFinite(std::string key, int p_, int j_, FinitenessScan::Status s)
    : std::runtime_error("bicharacter " + key + " is not " + std::to_string(p_ + 1) +
                         "-finite (" + status_name(s) + ", witness j=" + std::to_string(j_ + 1) + ")"),
      object_key(std::move(key)),
      p(p_),
      j(j_),
      status(s) {}

FinitenessScan scan_cartan_entry(const Bicharacter& chi, int p, int j, int cap) {
  FinitenessScan r;
  if (p == j) {
    r.status = FinitenessScan::Status::Finite;
    r.m = -2;
    return r;
  }
  const Scalar& qpp = chi.q(p, p);
  const Scalar t = chi.q(p, j) * chi.q(j, p);
  Scalar qm(1);
  for (int m = 0; m < cap; ++m) {
    if (q_int(m + 1, qpp).is_zero() || (qm * t).is_one()) {
      r.status = FinitenessScan::Status::Finite;
      r.m = m;
      return r;
    }
    qm *= qpp;
  }
  // [m+1]_q vanishes for some m iff q is a root of unity other than 1
  auto ord = qpp.root_of_unity_order();
  bool first_never = !ord || *ord == 1;
  if (first_never && never_hits_one(qpp, t) == Never::Yes)
    r.status = FinitenessScan::Status::ProvenInfinite;
  else
    r.status = FinitenessScan::Status::CapReached;
  return r;
}

bool is_p_finite(const Bicharacter& chi, int p, int cap) {
  for (int j = 0; j < chi.rank(); ++j)
    if (scan_cartan_entry(chi, p, j, cap).status != FinitenessScan::Status::Finite) return false;
  return true;
}

int cartan_entry(const Bicharacter& chi, int p, int j, int cap) {
  if (p == j) return 2;
  FinitenessScan s = scan_cartan_entry(chi, p, j, cap);
  if (s.status != FinitenessScan::Status::Finite) throw NotPFinite(chi.key(), p, j, s.status);
  return -s.m;
}

bool is_generalized_cartan(const IntMatrix& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && c[i][j] != 2) return false;
      if (i != j && c[i][j] > 0) return false;
      if (i != j && (c[i][j] == 0) != (c[j][i] == 0)) return false;
    }
  return true;
}

IntMatrix cartan_matrix(const Bicharacter& chi, int cap) {
  const int n = chi.rank();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (int p = 0; p < n; ++p)
    for (int j = 0; j < n; ++j) c[p][j] = cartan_entry(chi, p, j, cap);
  if (!is_generalized_cartan(c)) throw std::logic_error("Cartan entries violate (M1)/(M2)");
  return c;
}

IntMatrix reflection_matrix(const IntMatrix& cartan, int p) {
  const int n = static_cast<int>(cartan.size());
  IntMatrix s = identity_matrix(n);
  for (int j = 0; j < n; ++j) s[p][j] -= cartan[p][j];
  return s;
}

namespace {

Reflection reflect_unchecked(const Bicharacter& chi, int p, int cap) {
  const int n = chi.rank();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (int j = 0; j < n; ++j) c[p][j] = cartan_entry(chi, p, j, cap);
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  IntMatrix s = reflection_matrix(c, p);
  return {s, chi.pullback(s)};
}

}  // namespace

Reflection reflect(const Bicharacter& chi, int p, int cap) {
  Reflection r = reflect_unchecked(chi, p, cap);
  Reflection back = reflect_unchecked(r.chi, p, cap);
  if (back.s != r.s || back.chi != chi)
    throw std::logic_error("r_p is not an involution on " + chi.key());
  return r;
}

Scalar lambda(const Bicharacter& chi, int p, int i, int cap) {
  if (i == p) throw std::domain_error("lambda_i needs i != p");
  const int c = cartan_entry(chi, p, i, cap);
  const Scalar& qpp = chi.q(p, p);
  const Scalar t = chi.q(p, i) * chi.q(i, p);
  Scalar r = q_factorial(-c, qpp);
  Scalar qs(1);
  for (int s = 0; s < -c; ++s) {
    r *= qs * t - Scalar(1);
    qs *= qpp;
  }
  return r;
}

std::optional<int> height(const Bicharacter& chi, const Lattice& mu) {
  auto ord = chi.eval(mu, mu).root_of_unity_order();
  if (ord && *ord >= 2) return ord;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

nlohmann::json context_to_json(const ScalarContext* ctx) {
  if (!ctx) return {{"backend", "parameters"}, {"names", nlohmann::json::array({"q"})}};
  if (ctx->is_cyclotomic()) return {{"backend", "cyclotomic"}, {"order", ctx->order()}};
  return {{"backend", "parameters"}, {"names", ctx->names()}};
}

const ScalarContext* context_from_json(const nlohmann::json& j) {
  const std::string b = j.at("backend").get<std::string>();
  if (b == "cyclotomic") return ScalarContext::cyclotomic(j.at("order").get<int>());
  if (b == "parameters") return ScalarContext::parameters(j.at("names").get<std::vector<std::string>>());
  throw std::invalid_argument("unknown scalar backend '" + b + "'");
}

nlohmann::json to_json(const Bicharacter& chi) {
  nlohmann::json q = nlohmann::json::array();
  for (int i = 0; i < chi.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < chi.rank(); ++j) row.push_back(chi.q(i, j).to_string());
    q.push_back(row);
  }
  return {{"rank", chi.rank()}, {"scalar", context_to_json(chi.context())}, {"q", q}};
}

Bicharacter bicharacter_from_json(const nlohmann::json& j) {
  const ScalarContext* ctx = context_from_json(j.at("scalar"));
  const int n = j.at("rank").get<int>();
  const auto& q = j.at("q");
  if (!q.is_array() || static_cast<int>(q.size()) != n)
    throw std::invalid_argument("q must be an n x n array");
  std::vector<std::vector<Scalar>> m(n);
  for (int i = 0; i < n; ++i) {
    if (!q[i].is_array() || static_cast<int>(q[i].size()) != n)
      throw std::invalid_argument("q must be an n x n array");
    for (int k = 0; k < n; ++k) {
      const auto& e = q[i][k];
      std::string lit = e.is_string() ? e.get<std::string>() : e.dump();
      m[i].push_back(Scalar::parse(ctx, lit));
    }
  }
  return Bicharacter(ctx, std::move(m));
}

}  // namespace nichols

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nichols/scalar.hpp"

namespace nichols {

using Lattice = std::vector<int>;            // element of Z^I in the basis alpha_i
using IntMatrix = std::vector<std::vector<int>>;

Lattice unit(int n, int i);
Lattice operator+(Lattice a, const Lattice& b);
Lattice operator-(Lattice a, const Lattice& b);
Lattice operator*(int k, Lattice a);
IntMatrix identity_matrix(int n);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
Lattice operator*(const IntMatrix& a, const Lattice& v);
IntMatrix inverse_unimodular(const IntMatrix& a);
std::string to_string(const Lattice& v);
std::string to_string(const IntMatrix& m);

// chi on Z^I given by its structure constants q[i][j] = chi(alpha_i, alpha_j)
class Bicharacter {
 public:
  Bicharacter() = default;
  Bicharacter(const ScalarContext* ctx, std::vector<std::vector<Scalar>> q);

  int rank() const { return n_; }
  const ScalarContext* context() const { return ctx_; }
  const Scalar& q(int i, int j) const { return q_[i * n_ + j]; }
  Scalar eval(const Lattice& mu, const Lattice& nu) const;

  Bicharacter op() const;
  Bicharacter inverse() const;
  // w^*chi (a, b) = chi(w^{-1} a, w^{-1} b)
  Bicharacter pullback(const IntMatrix& w) const;

  // canonical identity of an object in the orbit graph
  const std::string& key() const { return key_; }
  bool operator==(const Bicharacter& o) const { return key_ == o.key_; }
  bool operator!=(const Bicharacter& o) const { return key_ != o.key_; }

 private:
  int n_ = 0;
  const ScalarContext* ctx_ = nullptr;
  std::vector<Scalar> q_;
  std::string key_;
};

struct FinitenessScan {
  enum class Status { Finite, ProvenInfinite, CapReached };
  Status status = Status::CapReached;
  int m = -1;  // minimizing m when finite
};

constexpr int kDefaultScanCap = 64;

class NotPFinite : public std::runtime_error {
 public:
  NotPFinite(std::string key, int p, int j, FinitenessScan::Status s);
  std::string object_key;
  int p, j;
  FinitenessScan::Status status;
};

FinitenessScan scan_cartan_entry(const Bicharacter& chi, int p, int j, int cap = kDefaultScanCap);
bool is_p_finite(const Bicharacter& chi, int p, int cap = kDefaultScanCap);
int cartan_entry(const Bicharacter& chi, int p, int j, int cap = kDefaultScanCap);
IntMatrix cartan_matrix(const Bicharacter& chi, int cap = kDefaultScanCap);
bool is_generalized_cartan(const IntMatrix& c);

// s_p^chi as an integer matrix acting on column vectors
IntMatrix reflection_matrix(const IntMatrix& cartan, int p);

struct Reflection {
  IntMatrix s;
  Bicharacter chi;
};
Reflection reflect(const Bicharacter& chi, int p, int cap = kDefaultScanCap);

Scalar lambda(const Bicharacter& chi, int p, int i, int cap = kDefaultScanCap);
// nullopt encodes infinity
std::optional<int> height(const Bicharacter& chi, const Lattice& mu);

nlohmann::json context_to_json(const ScalarContext* ctx);
const ScalarContext* context_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Bicharacter& chi);
Bicharacter bicharacter_from_json(const nlohmann::json& j);

}  // namespace nichols

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nichols/bicharacter.hpp"
#include "nichols/groupoid.hpp"

namespace nichols {

// An expected value together with where it comes from (a worked example,
// an immediate consequence of the definitions, or a named oracle).
struct Expected {
  long value = 0;
  std::string source;
};

struct CatalogEntry {
  std::string name;
  nlohmann::json bicharacter;
  std::string note;
  std::optional<Expected> orbit_size, positive_roots, morphisms;

  Bicharacter chi() const { return bicharacter_from_json(bicharacter); }
  nlohmann::json to_json() const;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_catalog(const std::string& name);

// Generic Cartan type q_ij = q^{d_i c_ij} for a symmetrizable matrix with
// symmetrizer d.
Bicharacter generic_cartan_type(const IntMatrix& cartan, const std::vector<int>& d);

// Number of restricted PBW monomials prod_beta E_beta^{m_beta} of degree mu,
// 0 <= m_beta < height(beta) (unbounded when the height is infinite).
long restricted_pbw_dim(const Bicharacter& chi, const std::vector<Lattice>& positive_roots, const Lattice& mu);

}  // namespace nichols

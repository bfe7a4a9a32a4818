#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nichols/double.hpp"
#include "nichols/groupoid.hpp"

namespace nichols {

// Hypothesis of an operation not met (distinct from a failed check).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One line of a verification report.
struct CheckEntry {
  std::string check, object, word, status, witness;
};

struct SuiteReport {
  std::vector<CheckEntry> entries;

  bool ok() const;
  int failures() const;
  void add(CheckEntry e) { entries.push_back(std::move(e)); }
  void pass(const std::string& check, const std::string& object, const std::string& word);
  void fail(const std::string& check, const std::string& object, const std::string& word, const std::string& witness);
  void expect(bool cond, const std::string& check, const std::string& object, const std::string& word,
              const std::function<std::string()>& witness = nullptr);
  void merge(const SuiteReport& o);
  nlohmann::json to_json() const;
};

// Two-sided ideal of the free algebra generated by homogeneous elements,
// materialized degree by degree.  Works on either side; generators are given
// as E-side elements and `reversed` applies phi_4 (word reversal) to them.
class IdealSpan {
 public:
  IdealSpan(int rank, const std::vector<FreeElement>& generators, bool reversed = false);

  int rank() const { return n_; }
  int dim(const Lattice& mu);
  // canonical representative modulo the ideal; side is preserved
  FreeElement reduce(const FreeElement& a);
  bool contains(const FreeElement& a) { return reduce(a).is_zero(); }

 private:
  struct Component {
    std::vector<Word> words;
    std::unordered_map<Word, int> index;
    std::unique_ptr<EchelonBasis> span;
  };
  Component& component(const Lattice& mu);

  int n_;
  std::vector<std::pair<Lattice, FreeElement>> gens_;  // homogeneous parts
  std::map<Lattice, Component> memo_;
  std::mutex mu_;
};

// Reduction of a double element modulo the ideal generated by J^+ and J^-.
DoubleElement reduce_mod_ideal(const DoubleElement& a, IdealSpan& plus, IdealSpan& minus);

struct RootVectorIdeal {
  Bicharacter chi;
  int p = 0;
  std::optional<int> height;  // of alpha_p; nullopt is infinity
  std::vector<FreeElement> plus;    // E_p^h and E^+_{i,1-c_pi}
  std::vector<FreeElement> minus;   // F_p^h and F^+_{i,1-c_pi}
  std::vector<std::string> labels;
  SuiteReport coincidence;  // generator-level equalities of the alternative generating sets
};

RootVectorIdeal build_ideal(const Bicharacter& chi, int p, int degree_cap = kDefaultDegreeCap);

enum class Direction { T, Tminus };
std::string direction_name(Direction d);

struct LusztigMap {
  Direction direction = Direction::T;
  int p = 0;
  AlgebraMap map;  // U(chi) -> U(r_p(chi))
};

LusztigMap build_T(const Bicharacter& chi, int p, Direction d);

// Substitutes generator images, reducing modulo S(target) along the way.
DoubleElement apply(const LusztigMap& t, const DoubleElement& a, int cap = kDefaultDegreeCap);

// Relations of U(chi) mapped to U(r_p chi).  Each relation is required to
// vanish in U; the report also records whether it vanishes modulo the ideal
// generated by I_p^+ and I_p^- of the target.
SuiteReport check_defining_relations(const LusztigMap& t, int cap = kDefaultDegreeCap);

// x = s y in U(chi) for a nonzero scalar s
std::optional<Scalar> ratio_in_U(const Bicharacter& chi, const DoubleElement& x, const DoubleElement& y,
                                 int cap = kDefaultDegreeCap);

// Solves A = B phi_a from the images of the E_k, then verifies on all generators.
struct TwistResult {
  std::optional<std::vector<Scalar>> a;
  bool verified = false;
  std::string witness;
};
TwistResult solve_right_twist(const AlgebraMap& A, const AlgebraMap& B, int cap = kDefaultDegreeCap);

// T_p T_p^- = T_p^- T_p = id and the commutation rules with the phi maps.
// A nonzero seed draws the scalars of the phi_a test at random.
SuiteReport check_lusztig_identities(const Bicharacter& chi, int p, int cap = kDefaultDegreeCap,
                                     std::uint64_t seed = 0);

// The images of E^-_{i,t} under T_p and of E^+_{i,t} under T_p^-.
SuiteReport check_psiadE(const Bicharacter& chi, int p, int cap = kDefaultDegreeCap);

struct CoxeterResult {
  int M = 0;
  std::vector<Scalar> a;
  bool holds = false;
  SuiteReport report;
};
CoxeterResult coxeter_check(const Bicharacter& chi, int i, int j, int cap = kDefaultDegreeCap);

// T_{i_m} ... T_{i_1}(E_p) lies in U^+ of the target
bool wE_in_Uplus_check(const Bicharacter& chi, const std::vector<int>& word, int p, int cap = kDefaultDegreeCap);

struct LongestResult {
  std::vector<int> word;
  std::vector<int> tau;
  std::vector<Scalar> lambda;
  bool holds = false;
  SuiteReport report;
};
LongestResult longest_factorization(const Bicharacter& chi, int cap = kDefaultDegreeCap);

// (ad E_i)^{1-c_ij} E_j for all i != j
std::vector<FreeElement> serre_generators(const Bicharacter& chi, std::vector<std::string>* labels = nullptr);

// T_p((ad E_i)^{1-c_ip}E_p) against (ad E_p)^{-c_pi(1-c_ip)-2}(ad' E_i)^{1-c_ip}E_p.
SuiteReport check_TpSerre(const Bicharacter& chi, int cap = kDefaultDegreeCap);

using IdealFamily = std::function<std::vector<FreeElement>(const Bicharacter&)>;

struct CharacterizationOptions {
  int cap = kDefaultDegreeCap;
  int object_cap = 1024;
  int jobs = 1;
};

// Condition (3) of the characterization theorem for a family of ideals,
// plus the hypotheses on the family.  Returns one entry per
// (object, p, generator) and per precondition.
SuiteReport nichols_characterization(const Bicharacter& chi, const IdealFamily& family,
                                     const CharacterizationOptions& opt = {});

}  // namespace nichols

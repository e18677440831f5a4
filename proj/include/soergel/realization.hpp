#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "soergel/polynomial.hpp"
#include "soergel/scalar.hpp"

namespace soergel {

// Coxeter matrix with 0 standing for infinity.
struct CoxeterData {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> m;
  int rank() const { return static_cast<int>(generators.size()); }
  int index_of(const std::string& name) const;  // -1 if absent
  void validate() const;
};

using Vec = std::vector<Scalar>;
using SqMatrix = std::vector<std::vector<Scalar>>;  // [row][col]

struct Realization {
  CoxeterData coxeter;
  int dim = 0;
  Field field;
  std::vector<Vec> alpha;        // per generator, coordinates in V
  std::vector<Vec> alpha_check;  // per generator, functional on V
  std::vector<SqMatrix> action;  // per generator; column j is the image of e_j
  bool assume_balancedness = false;
  // Set when some coroot vanishes in the chosen field (it then fails to be surjective).
  bool degenerate_coroot = false;
  std::string preset;

  int rank() const { return coxeter.rank(); }
  Polynomial root(int s) const;           // alpha_s as a linear polynomial
  Polynomial variable(int i) const;       // e_{i+1}
  Scalar pairing(int s, const Vec& v) const;
  // Images of the coordinate variables under generator s (for Polynomial::substitute).
  const std::vector<Polynomial>& generator_images(int s) const;

  mutable std::vector<std::vector<Polynomial>> images_cache_;
};

// Builds the action matrices from (alpha, alpha_check) and verifies every invariant.
Realization make_realization(CoxeterData cox, int dim, Field field, std::vector<Vec> alpha, std::vector<Vec> alpha_check);

Realization load_realization(const nlohmann::json& doc);
// field overrides the document's field when non-null
Realization load_preset(const std::string& name, const Field* field = nullptr);
std::vector<std::string> preset_names();
nlohmann::json serialize(const Realization& r);

// Standard (Cartan-matrix) reflection representation over the given field; faithful.
Realization geometric_representation(const CoxeterData& cox, Field field = Field{});
// Integer Cartan entries <alpha_s^vee, alpha_t> used by geometric_representation.
int cartan_entry(const CoxeterData& cox, int s, int t);

CoxeterData coxeter_type_A(int n);

}  // namespace soergel

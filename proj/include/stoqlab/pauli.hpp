#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stoqlab/errors.hpp"

namespace stoq {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Tensor product of single-qubit Paulis.  Qubit 0 is the leftmost factor and
// maps to the most significant bit of a computational basis index.
class PauliString {
 public:
  explicit PauliString(std::string_view s);
  explicit PauliString(std::vector<Pauli> factors);
  static PauliString identity(int n);

  int qubit_count() const { return static_cast<int>(factors_.size()); }
  Pauli factor(int qubit) const { return factors_[static_cast<std::size_t>(qubit)]; }
  const std::vector<Pauli>& factors() const { return factors_; }

  bool is_identity() const;
  int weight() const;   // number of non-identity factors
  int x_count() const;
  int y_count() const;
  int z_count() const;

  // Bits flipped by this string (X and Y factors), in basis-index convention:
  // qubit i lives at bit (n-1-i).
  std::uint64_t flip_mask() const;

  // Support of X/Y factors as a basis-index bit mask (same bits as flip_mask).
  std::uint64_t xy_support() const { return flip_mask(); }

  // <z ^ flip_mask | P | z> for basis index z.
  std::complex<double> amplitude(std::uint64_t z) const;

  // True iff the string commutes with the global bit-flip P = prod_i X_i,
  // i.e. the number of Y and Z factors is even.
  bool commutes_with_global_flip() const;

  std::string str() const;

  auto operator<=>(const PauliString&) const = default;

 private:
  std::vector<Pauli> factors_;
};

// Real-weighted sum of Pauli strings on n qubits.  The map holds no
// zero-coefficient terms and all coefficients are finite, so the matrix
// realization is Hermitian by construction.
class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(int n);

  int qubit_count() const { return n_; }
  const std::map<PauliString, double>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  // Accumulates coeff onto the term; entries that cancel to zero are removed.
  void add(const PauliString& p, double coeff);
  void add(std::string_view p, double coeff) { add(PauliString(p), coeff); }

  double coefficient(const PauliString& p) const;

  bool commutes_with_global_flip() const;
  int max_y_count() const;

  PauliHamiltonian scaled(double factor) const;
  PauliHamiltonian& operator+=(const PauliHamiltonian& other);

  // Text form: one "coeff pauli_string" line per term, e.g. "-1.0 XIXI".
  // Coefficients are printed in shortest round-trip form, so serialization
  // round-trips exactly.
  std::string to_text() const;
  static PauliHamiltonian from_text(std::string_view text);

 private:
  int n_;
  std::map<PauliString, double> terms_;
};

}  // namespace stoq

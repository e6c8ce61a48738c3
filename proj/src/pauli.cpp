#include "stoqlab/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace stoq {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw Error(std::string("invalid Pauli character '") + c + "'");
  }
}

PauliString::PauliString(std::string_view s) {
  if (s.empty()) throw Error("empty Pauli string");
  factors_.reserve(s.size());
  for (char c : s) factors_.push_back(pauli_from_char(c));
}

PauliString::PauliString(std::vector<Pauli> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error("empty Pauli string");
}

PauliString PauliString::identity(int n) {
  if (n < 1) throw Error("qubit count must be >= 1");
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I));
}

bool PauliString::is_identity() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(factors_.begin(), factors_.end(),
                                        [](Pauli p) { return p != Pauli::I; }));
}

int PauliString::x_count() const {
  return static_cast<int>(std::count(factors_.begin(), factors_.end(), Pauli::X));
}

int PauliString::y_count() const {
  return static_cast<int>(std::count(factors_.begin(), factors_.end(), Pauli::Y));
}

int PauliString::z_count() const {
  return static_cast<int>(std::count(factors_.begin(), factors_.end(), Pauli::Z));
}

std::uint64_t PauliString::flip_mask() const {
  std::uint64_t mask = 0;
  int n = qubit_count();
  for (int i = 0; i < n; ++i) {
    Pauli p = factors_[static_cast<std::size_t>(i)];
    if (p == Pauli::X || p == Pauli::Y) mask |= std::uint64_t(1) << (n - 1 - i);
  }
  return mask;
}

std::complex<double> PauliString::amplitude(std::uint64_t z) const {
  // <z'|P|z> with z' = z ^ flip_mask().  X contributes 1; Y contributes
  // +i when the input bit is 0 and -i when it is 1; Z contributes (-1)^bit.
  int n = qubit_count();
  std::complex<double> amp(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    Pauli p = factors_[static_cast<std::size_t>(i)];
    if (p == Pauli::I || p == Pauli::X) continue;
    bool bit = (z >> (n - 1 - i)) & 1u;
    if (p == Pauli::Y) {
      amp *= bit ? std::complex<double>(0.0, -1.0) : std::complex<double>(0.0, 1.0);
    } else {  // Z
      if (bit) amp = -amp;
    }
  }
  return amp;
}

bool PauliString::commutes_with_global_flip() const {
  // P Q P = (-1)^{#Y + #Z} Q for P = prod_i X_i.
  return ((y_count() + z_count()) & 1) == 0;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(factors_.size());
  for (Pauli p : factors_) s.push_back(pauli_char(p));
  return s;
}

PauliHamiltonian::PauliHamiltonian(int n) : n_(n) {
  if (n < 1) throw Error("qubit count must be >= 1");
}

void PauliHamiltonian::add(const PauliString& p, double coeff) {
  if (p.qubit_count() != n_)
    throw Error("Pauli string length does not match qubit count");
  if (!std::isfinite(coeff)) throw NonFiniteCoefficient("non-finite coefficient");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double PauliHamiltonian::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

bool PauliHamiltonian::commutes_with_global_flip() const {
  for (const auto& [p, c] : terms_)
    if (!p.commutes_with_global_flip()) return false;
  return true;
}

int PauliHamiltonian::max_y_count() const {
  int m = 0;
  for (const auto& [p, c] : terms_) m = std::max(m, p.y_count());
  return m;
}

PauliHamiltonian PauliHamiltonian::scaled(double factor) const {
  PauliHamiltonian out(n_);
  for (const auto& [p, c] : terms_) out.add(p, c * factor);
  return out;
}

PauliHamiltonian& PauliHamiltonian::operator+=(const PauliHamiltonian& other) {
  if (other.n_ != n_) throw Error("qubit count mismatch");
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

namespace {

std::string format_coefficient(double c) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), c);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string PauliHamiltonian::to_text() const {
  std::string out;
  for (const auto& [p, c] : terms_) {
    out += format_coefficient(c);
    out += ' ';
    out += p.str();
    out += '\n';
  }
  return out;
}

PauliHamiltonian PauliHamiltonian::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<std::pair<PauliString, double>> parsed;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string coeff_tok, pauli_tok;
    if (!(ls >> coeff_tok >> pauli_tok)) {
      if (coeff_tok.empty()) continue;  // blank line
      throw Error("malformed Pauli line: " + line);
    }
    double c = 0.0;
    auto res = std::from_chars(coeff_tok.data(), coeff_tok.data() + coeff_tok.size(), c);
    if (res.ec != std::errc() || res.ptr != coeff_tok.data() + coeff_tok.size())
      throw Error("malformed coefficient: " + coeff_tok);
    PauliString p(pauli_tok);
    if (n < 0) n = p.qubit_count();
    parsed.emplace_back(std::move(p), c);
  }
  if (n < 0) throw Error("no terms in Pauli text");
  PauliHamiltonian h(n);
  for (auto& [p, c] : parsed) h.add(p, c);
  return h;
}

}  // namespace stoq

#pragma once

// Two-qubit linear algebra: kets, 4x4 operators, Pauli tensor products,
// commutators and Born probabilities.
//
// Basis ordering is |00>, |01>, |10>, |11>; the left tensor factor is the
// most significant bit.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pmsq {

using Amplitude = std::complex<double>;

inline constexpr double kTol = 1e-12;
inline constexpr double kNormTol = 1e-9;

/// Raised when a state fails its normalization check.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when tabulated or computed structure disagrees with itself.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class PauliLabel { I, X, Y, Z };

char to_char(PauliLabel p);
PauliLabel pauli_from_char(char c);

/// Unnormalized 4-component vector.
using Vec4 = std::array<Amplitude, 4>;

enum class Normalize { kVerify, kRenormalize };

/// Normalized two-qubit state. Construction checks the norm to kNormTol
/// unless renormalization is requested explicitly.
class Ket {
 public:
  Ket() = delete;
  explicit Ket(const Vec4& components, Normalize mode = Normalize::kVerify);

  static Ket basis(std::size_t index);

  const Vec4& components() const { return components_; }
  const Amplitude& operator[](std::size_t i) const { return components_[i]; }

 private:
  Vec4 components_;
};

double squared_norm(const Vec4& v);
Amplitude inner(const Vec4& bra, const Vec4& ket);  // <bra|ket>

class TwoQubitOperator {
 public:
  TwoQubitOperator() { entries_.fill(Amplitude{}); }

  static TwoQubitOperator identity();
  static TwoQubitOperator zero() { return {}; }

  Amplitude& operator()(std::size_t r, std::size_t c) { return entries_[4 * r + c]; }
  const Amplitude& operator()(std::size_t r, std::size_t c) const { return entries_[4 * r + c]; }

  bool is_hermitian(double tol = kTol) const;

  friend TwoQubitOperator operator*(const TwoQubitOperator& a, const TwoQubitOperator& b);
  friend TwoQubitOperator operator+(const TwoQubitOperator& a, const TwoQubitOperator& b);
  friend TwoQubitOperator operator-(const TwoQubitOperator& a, const TwoQubitOperator& b);
  friend TwoQubitOperator operator*(Amplitude s, const TwoQubitOperator& a);

 private:
  std::array<Amplitude, 16> entries_;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const TwoQubitOperator& a, const TwoQubitOperator& b);
bool is_zero(const TwoQubitOperator& a, double tol = kTol);

/// Kronecker product of two single-qubit Pauli (or identity) matrices.
TwoQubitOperator pauli_tensor(PauliLabel left, PauliLabel right);

/// Single-qubit Pauli acting on one side, identity on the other.
TwoQubitOperator single_side(PauliLabel axis, bool left_side);

TwoQubitOperator commutator(const TwoQubitOperator& a, const TwoQubitOperator& b);

Vec4 apply(const TwoQubitOperator& op, const Vec4& v);
inline Vec4 apply(const TwoQubitOperator& op, const Ket& k) { return apply(op, k.components()); }

/// |<eigenvector|state>|^2. Both arguments are normalized by type.
double born_probability(const Ket& state, const Ket& eigenvector);

/// <state|op|state>; throws std::invalid_argument for non-Hermitian op.
double expectation(const Ket& state, const TwoQubitOperator& op);

/// Projector |v><v|.
TwoQubitOperator outer(const Ket& v);

/// Rank-2 projector (I + sign * sigma_axis) / 2 on one side, tensored with I.
TwoQubitOperator side_projector(PauliLabel axis, bool left_side, int sign);

/// Product state |a>|b> from two normalized single-qubit vectors.
Ket product_ket(std::array<Amplitude, 2> left, std::array<Amplitude, 2> right);

std::string to_string(const Vec4& v);

}  // namespace pmsq

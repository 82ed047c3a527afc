#include "pmsq/qm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pmsq {

namespace {

using Mat2 = std::array<Amplitude, 4>;  // row-major 2x2

Mat2 pauli_matrix(PauliLabel p) {
  const Amplitude i{0.0, 1.0};
  switch (p) {
    case PauliLabel::I: return {1.0, 0.0, 0.0, 1.0};
    case PauliLabel::X: return {0.0, 1.0, 1.0, 0.0};
    case PauliLabel::Y: return {0.0, -i, i, 0.0};
    case PauliLabel::Z: return {1.0, 0.0, 0.0, -1.0};
  }
  return {};
}

}  // namespace

char to_char(PauliLabel p) {
  switch (p) {
    case PauliLabel::I: return 'I';
    case PauliLabel::X: return 'X';
    case PauliLabel::Y: return 'Y';
    case PauliLabel::Z: return 'Z';
  }
  return '?';
}

PauliLabel pauli_from_char(char c) {
  switch (c) {
    case 'I': return PauliLabel::I;
    case 'X': case 'x': return PauliLabel::X;
    case 'Y': case 'y': return PauliLabel::Y;
    case 'Z': case 'z': return PauliLabel::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli label '") + c + "'");
  }
}

double squared_norm(const Vec4& v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

Amplitude inner(const Vec4& bra, const Vec4& ket) {
  Amplitude s{};
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

Ket::Ket(const Vec4& components, Normalize mode) : components_(components) {
  for (const auto& a : components_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidStateError("state has non-finite amplitude");
    }
  }
  const double n2 = squared_norm(components_);
  if (mode == Normalize::kRenormalize) {
    if (n2 == 0.0) throw InvalidStateError("cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : components_) a *= inv;
  } else if (std::abs(n2 - 1.0) > kNormTol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "state is not normalized (squared norm %.17g)", n2);
    throw InvalidStateError(buf);
  }
}

Ket Ket::basis(std::size_t index) {
  if (index >= 4) throw std::out_of_range("basis index out of range");
  Vec4 v{};
  v[index] = 1.0;
  return Ket(v);
}

TwoQubitOperator TwoQubitOperator::identity() {
  TwoQubitOperator m;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

bool TwoQubitOperator::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = r; c < 4; ++c) {
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    }
  }
  return true;
}

TwoQubitOperator operator*(const TwoQubitOperator& a, const TwoQubitOperator& b) {
  TwoQubitOperator m;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      Amplitude s{};
      for (std::size_t k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
      m(r, c) = s;
    }
  }
  return m;
}

TwoQubitOperator operator+(const TwoQubitOperator& a, const TwoQubitOperator& b) {
  TwoQubitOperator m;
  for (std::size_t i = 0; i < 16; ++i) m.entries_[i] = a.entries_[i] + b.entries_[i];
  return m;
}

TwoQubitOperator operator-(const TwoQubitOperator& a, const TwoQubitOperator& b) {
  TwoQubitOperator m;
  for (std::size_t i = 0; i < 16; ++i) m.entries_[i] = a.entries_[i] - b.entries_[i];
  return m;
}

TwoQubitOperator operator*(Amplitude s, const TwoQubitOperator& a) {
  TwoQubitOperator m;
  for (std::size_t i = 0; i < 16; ++i) m.entries_[i] = s * a.entries_[i];
  return m;
}

double max_abs_diff(const TwoQubitOperator& a, const TwoQubitOperator& b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  }
  return worst;
}

bool is_zero(const TwoQubitOperator& a, double tol) {
  return max_abs_diff(a, TwoQubitOperator::zero()) <= tol;
}

TwoQubitOperator pauli_tensor(PauliLabel left, PauliLabel right) {
  const Mat2 l = pauli_matrix(left);
  const Mat2 r = pauli_matrix(right);
  TwoQubitOperator m;
  for (std::size_t li = 0; li < 2; ++li)
    for (std::size_t lj = 0; lj < 2; ++lj)
      for (std::size_t ri = 0; ri < 2; ++ri)
        for (std::size_t rj = 0; rj < 2; ++rj)
          m(2 * li + ri, 2 * lj + rj) = l[2 * li + lj] * r[2 * ri + rj];
  return m;
}

TwoQubitOperator single_side(PauliLabel axis, bool left_side) {
  return left_side ? pauli_tensor(axis, PauliLabel::I) : pauli_tensor(PauliLabel::I, axis);
}

TwoQubitOperator commutator(const TwoQubitOperator& a, const TwoQubitOperator& b) {
  return a * b - b * a;
}

Vec4 apply(const TwoQubitOperator& op, const Vec4& v) {
  Vec4 out{};
  for (std::size_t r = 0; r < 4; ++r) {
    Amplitude s{};
    for (std::size_t c = 0; c < 4; ++c) s += op(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

double born_probability(const Ket& state, const Ket& eigenvector) {
  return std::norm(inner(eigenvector.components(), state.components()));
}

double expectation(const Ket& state, const TwoQubitOperator& op) {
  if (!op.is_hermitian()) throw std::invalid_argument("expectation requires a Hermitian operator");
  return inner(state.components(), apply(op, state)).real();
}

TwoQubitOperator outer(const Ket& v) {
  TwoQubitOperator m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

TwoQubitOperator side_projector(PauliLabel axis, bool left_side, int sign) {
  const auto id = TwoQubitOperator::identity();
  return Amplitude{0.5} * (id + Amplitude{static_cast<double>(sign)} * single_side(axis, left_side));
}

Ket product_ket(std::array<Amplitude, 2> left, std::array<Amplitude, 2> right) {
  return Ket(Vec4{left[0] * right[0], left[0] * right[1], left[1] * right[0], left[1] * right[1]});
}

std::string to_string(const Vec4& v) {
  std::string out = "(";
  char buf[64];
  for (std::size_t i = 0; i < 4; ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g%+.6gi", i ? ", " : "", v[i].real(), v[i].imag());
    out += buf;
  }
  return out + ")";
}

}  // namespace pmsq

#pragma once

// Seeded state generators and brute-force linear algebra used as oracles.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "pmsq/qm.hpp"

namespace pmsq::testing {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;
using Mat4 = std::array<std::array<C, 4>, 4>;

inline Mat2 pauli2(char p) {
  const C i{0.0, 1.0};
  switch (p) {
    case 'X': return {{{0.0, 1.0}, {1.0, 0.0}}};
    case 'Y': return {{{0.0, -i}, {i, 0.0}}};
    case 'Z': return {{{1.0, 0.0}, {0.0, -1.0}}};
    default: return {{{1.0, 0.0}, {0.0, 1.0}}};
  }
}

// Textbook Kronecker product: (A (x) B)[2r+s][2c+t] = A[r][c] * B[s][t].
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) m[2 * r + s][2 * c + t] = a[r][c] * b[s][t];
  return m;
}

inline Mat4 matmul(const Mat4& a, const Mat4& b) {
  Mat4 m{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) m[r][c] += a[r][k] * b[k][c];
  return m;
}

inline double max_diff(const Mat4& a, const TwoQubitOperator& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) d = std::max(d, std::abs(a[r][c] - b(r, c)));
  return d;
}

// <v|M|v> for a raw vector.
inline double quad_form(const Mat4& m, const Vec4& v) {
  C acc{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) acc += std::conj(v[r]) * m[r][c] * v[c];
  return acc.real();
}

// Gaussian amplitudes, normalized: uniform on the unit sphere of C^4.
inline Ket random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec4 v{};
  for (auto& a : v) a = C{g(rng), g(rng)};
  return Ket(v, Normalize::kRenormalize);
}

inline std::array<C, 2> random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::array<C, 2> q{C{g(rng), g(rng)}, C{g(rng), g(rng)}};
  const double n = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
  q[0] /= n;
  q[1] /= n;
  return q;
}

inline Ket random_product_state(std::mt19937_64& rng) {
  const auto l = random_qubit(rng);
  const auto r = random_qubit(rng);
  return product_ket(l, r);
}

// CHSH correlators computed from the Kronecker oracle rather than the library.
inline std::array<double, 4> oracle_correlators(const Ket& s) {
  return {quad_form(kron(pauli2('Z'), pauli2('Z')), s.components()),
          quad_form(kron(pauli2('Z'), pauli2('X')), s.components()),
          quad_form(kron(pauli2('X'), pauli2('Z')), s.components()),
          quad_form(kron(pauli2('X'), pauli2('X')), s.components())};
}

inline double oracle_chsh_max(const Ket& s) {
  const auto e = oracle_correlators(s);
  const double sum = e[0] + e[1] + e[2] + e[3];
  double best = 0.0;
  for (int k = 0; k < 4; ++k) best = std::max(best, std::abs(sum - 2.0 * e[k]));
  return best;
}

}  // namespace pmsq::testing

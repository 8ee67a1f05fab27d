#pragma once

#include <cstdint>
#include <random>

#include "galmod/dvr_lattice.hpp"
#include "galmod/group_algebra.hpp"
#include "galmod/tensor_square.hpp"
#include "galmod/tower.hpp"

namespace galmod {

/// Seeded generator. Integers are drawn by reducing raw 64-bit outputs, so a
/// seed gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi);
  int fp(int p) { return uniform(0, p - 1); }
  int fp_nonzero(int p) { return uniform(1, p - 1); }
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

/// Exact Laurent polynomial with exponents in [lo, hi] that are multiples of
/// step; may be zero.
Series random_poly(Rng& rng, int p, int lo, int hi, int step = 1);
Series random_nonzero_poly(Rng& rng, int p, int lo, int hi, int step = 1);
/// Exact element of K whose coordinates have t-exponents in [lo, hi].
KElem random_kelem(Rng& rng, const FieldTower& t, int lo, int hi);
/// Exact unit of O_K.
KElem random_unit(Rng& rng, const FieldTower& t);
/// Element of k[G] with coefficient exponents in [lo, hi].
AlgebraElem random_kg(Rng& rng, const FieldTower& t, int lo, int hi);
/// Element of K[G] with coefficients from random_kelem.
AlgebraElem random_KG(Rng& rng, const FieldTower& t, int lo, int hi);
TensorElem random_tensor(Rng& rng, const FieldTower& t, int lo, int hi);
/// Random element of X_0: entry (u, v) starts at t^ceil(-(u + v) / n).
TensorElem random_x0_tensor(Rng& rng, const FieldTower& t, int span);
/// Integral combination of the lattice basis, optionally perturbed by a
/// random element whose coefficients start at t^shift.
AlgebraElem random_lattice_point(Rng& rng, const FieldTower& t, const Lattice& l, int span, bool perturb,
                                 int shift);

}  // namespace galmod

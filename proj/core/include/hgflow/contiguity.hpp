#pragma once

#include <span>
#include <vector>

#include "hgflow/params.hpp"
#include "hgflow/series.hpp"

namespace hgflow {

// e_0..e_k of the k given values (e_0 = 1).
std::vector<cplx> elementary_symmetric(std::span<const cplx> values);

/// eps_j: elementary symmetric polynomials of {alpha_k - gamma_n (k = 1..L-1), sum beta - gamma_n};
/// eps'_j: those of {gamma_k - alpha_n (k = 1..L-1), 1 - alpha_n}.
struct SymmetricData {
  std::vector<cplx> eps;
  std::vector<cplx> eps_prime;
};

SymmetricData symmetric_data(const HGParams& hp, int n);

// The operators of the gamma_n-contiguity are isomorphisms iff gamma_n eps_L != 0
// (both magnitudes compared against 1e-10).
bool isomorphism_criterion(const HGParams& hp, int n);

struct ContiguityResult {
  int relation;          // 1..7
  int slot;              // n for 1, 3, 4, 5; i for 2, 6, 7
  int slot2;             // j for relation 6, otherwise 0
  int compared_degree;   // coefficients with |m| <= compared_degree were compared
  double max_abs;
  double max_rel;        // |diff| / max(|lhs|, |prefactor| * sum |operator terms|)
};

// Compares series_coefficients at the shifted parameters against the
// displayed operator applied to series_coefficients(hp, M). Relation 6 uses
// the pair (slot, slot2) with slot != slot2.
// Errors: ResonantShift when the shifted gammas are resonant,
// VanishingDenominator when a prefactor denominator vanishes.
ContiguityResult check_contiguity(int relation, const HGParams& hp, int slot, int M, int slot2 = 0);

// Every relation at every parameter slot (all ordered pairs for relation 6).
std::vector<ContiguityResult> check_all_contiguity(const HGParams& hp, int M);

}  // namespace hgflow

#pragma once

// Shared spectral analysis of a functional's Gram form. Internal to the
// generic pipeline; the oracles deliberately do not include this header.

#include "funcord/functional.hpp"

namespace funcord::detail {

struct FormAnalysis {
  Matrix form;            // Hermitian part of the Gram form
  RealVector eigenvalues; // kept eigenvalues, descending
  Matrix range;           // dim x r, eigenvectors for `eigenvalues`
  Matrix null_space;      // dim x (dim - r)
  Matrix quotient;        // r x dim, Lambda^{1/2} U^H
  Vector cyclic;          // Lambda^{-1/2} U^H conj(phi)
  double top_eigenvalue = 0.0;
  double membership_residual = 0.0;
  double membership_tolerance = 0.0;
};

FormAnalysis analyze(const Functional& f);

double quotient_action_residual(const Functional& f, const FormAnalysis& a,
                                int* worst_basis);

}  // namespace funcord::detail

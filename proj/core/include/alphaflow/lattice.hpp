// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace alphaflow {

/// Wavevector on the integer lattice, in units of 2*pi/L.
struct Mode {
  int kx = 0;
  int ky = 0;
};

/// Truncated Fourier lattice for a periodic box [0,L]^2 together with the
/// spectrum of the Stokes operator on it.
///
/// Retained wavevectors are the rectangle |kx|,|ky| <= N/2-1 without (0,0);
/// the Nyquist row is dropped so the lattice is exactly closed under
/// k -> -k. Each retained k carries the eigenvalue
///   lambda(k) = (2*pi/L)^2 * |k|^2.
/// Eigenvalue multiplicity is counted as one slot per retained wavevector.
class Lattice {
 public:
  /// Builds a lattice. Requires an even resolution N >= 4 and L > 0.
  static std::shared_ptr<const Lattice> create(double box_length, int resolution);

  double box_length() const { return box_length_; }
  int resolution() const { return resolution_; }
  /// Largest retained wavenumber component, N/2-1.
  int kmax() const { return kmax_; }
  /// First Stokes eigenvalue (2*pi/L)^2.
  double lambda1() const { return lambda1_; }
  /// Grid size for alias-free quadratic products (3/2 rule).
  int padded_grid() const { return 3 * resolution_ / 2; }
  /// Grid used for pointwise norms, twice the padded grid.
  int oversampled_grid() const { return 3 * resolution_; }

  std::span<const Mode> modes() const { return modes_; }
  std::size_t mode_count() const { return modes_.size(); }
  double lambda(std::size_t i) const { return lambda_[i]; }
  std::span<const double> lambdas() const { return lambda_; }
  /// |k|^2 of mode i.
  int shell(std::size_t i) const { return shell_[i]; }
  /// Index of -k.
  std::size_t conjugate_index(std::size_t i) const { return conj_[i]; }
  /// Index of wavevector (kx, ky), or -1 when not retained.
  int index_of(int kx, int ky) const;

  /// Largest Galerkin cutoff whose eigenvalue shells are all complete on
  /// this lattice: lambda1 * kmax^2.
  double max_complete_shell() const { return lambda1_ * kmax_ * kmax_; }
  /// A cutoff is admissible when it captures at least the first shell and
  /// no shell at or below it is clipped by the rectangular truncation.
  bool valid_cutoff(double cutoff) const;
  /// lambda_{m+1}: smallest Stokes eigenvalue (of the full operator, not of
  /// the truncation) strictly above the cutoff.
  double next_eigenvalue_above(double cutoff) const;
  /// lambda_m: largest eigenvalue at or below the cutoff.
  double last_eigenvalue_at_or_below(double cutoff) const;
  /// Number of modes with lambda <= cutoff, counted with multiplicity.
  std::size_t modes_within(double cutoff) const;

  struct ShellEigenvalue {
    double lambda = 0.0;
    int multiplicity = 0;
  };
  /// Ascending distinct eigenvalues with their multiplicities.
  std::vector<ShellEigenvalue> stokes_eigenvalues() const;

  /// Least c0 with j/c0 <= lambda_j/lambda_1 <= c0*j over the sorted
  /// eigenvalue list (with multiplicity).
  double weyl_constant() const;

 private:
  Lattice() = default;

  double box_length_ = 0.0;
  int resolution_ = 0;
  int kmax_ = 0;
  double lambda1_ = 0.0;
  std::vector<Mode> modes_;
  std::vector<double> lambda_;
  std::vector<int> shell_;
  std::vector<std::size_t> conj_;
  std::vector<int> index_;  // dense (2*kmax+1)^2 lookup, -1 for holes
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// Number of integer points (a,b) with a^2 + b^2 = n.
int sum_of_two_squares_count(int n);

}  // namespace alphaflow

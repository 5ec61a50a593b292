// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "alphaflow/lattice.hpp"

namespace alphaflow {

using Complex = std::complex<double>;

/// Two-component complex Fourier coefficients on a Lattice, representing a
/// real, zero-mean velocity field
///   u(x) = sum_k u_hat(k) exp(i 2 pi k.x / L).
///
/// Invariants: u_hat(-k) = conj(u_hat(k)) (reality) and, for fields built
/// through the solenoidal constructors or leray_project, k.u_hat(k) = 0.
/// The (0,0) mode is not stored.
///
/// Transform normalization: physical point values are exact partial sums of
/// the expansion above; Parseval then carries the measure of the box,
/// |u|^2 = L^2 * sum_k |u_hat(k)|^2.
class SpectralVelocity {
 public:
  SpectralVelocity() = default;
  explicit SpectralVelocity(LatticePtr lat);

  const Lattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  std::size_t size() const { return x_.size(); }

  Complex& x(std::size_t i) { return x_[i]; }
  Complex& y(std::size_t i) { return y_[i]; }
  const Complex& x(std::size_t i) const { return x_[i]; }
  const Complex& y(std::size_t i) const { return y_[i]; }
  std::span<Complex> xs() { return x_; }
  std::span<Complex> ys() { return y_; }
  std::span<const Complex> xs() const { return x_; }
  std::span<const Complex> ys() const { return y_; }

  void set_zero();
  bool finite() const;

  SpectralVelocity& operator+=(const SpectralVelocity& o);
  SpectralVelocity& operator-=(const SpectralVelocity& o);
  SpectralVelocity& operator*=(double s);
  /// this += s * o
  void axpy(double s, const SpectralVelocity& o);

  /// Largest coefficient magnitude over modes and components.
  double max_abs() const;
  /// Largest relative divergence |k.u_hat| / (|k| |u_hat|) over modes.
  double max_relative_divergence() const;
  /// Divergence-free within the tolerance (relative, per mode).
  bool solenoidal_within(double tol_div = 1e-12) const {
    return max_relative_divergence() <= tol_div;
  }
  /// Largest |u_hat(-k) - conj(u_hat(k))| over modes.
  double max_reality_defect() const;

 private:
  LatticePtr lat_;
  std::vector<Complex> x_, y_;
};

// ---- L^2 pairing and spectral norms (diagonal sums) ----

/// (u, w) = L^2 sum_k Re(u_hat . conj(w_hat)).
double inner_l2(const SpectralVelocity& u, const SpectralVelocity& w);
/// |A^p u|; p = 0 gives |u|, p = 1/2 gives the V norm, p = 1 gives |Au|.
double norm_a(const SpectralVelocity& u, double p);
double norm_l2(const SpectralVelocity& u);
double norm_h1(const SpectralVelocity& u);
double norm_h2(const SpectralVelocity& u);
/// Homogeneous Sobolev norm (2 pi/L)^(s-1) * sqrt(sum (1+|k|^2)^s |u_hat|^2).
double norm_hs(const SpectralVelocity& u, double s);

// ---- Diagonal operators ----

/// Per-mode projection u_hat -> u_hat - k (k.u_hat)/|k|^2.
SpectralVelocity leray_project(const SpectralVelocity& u);
/// Smoothing filter v -> u with u + alpha^2 A u = v; per mode 1/(1+alpha^2 lambda).
SpectralVelocity helmholtz_filter(const SpectralVelocity& v, double alpha);
/// u -> u + alpha^2 A u, the exact inverse of the filter.
SpectralVelocity helmholtz_inverse(const SpectralVelocity& u, double alpha);
/// A^p u as a field.
SpectralVelocity apply_stokes(const SpectralVelocity& u, double p = 1.0);
/// Keep modes with lambda <= cutoff. The cutoff must sit at a complete shell
/// boundary of the lattice (Lattice::valid_cutoff).
SpectralVelocity galerkin_project(const SpectralVelocity& u, double cutoff);
/// The complement (I - P_m) u.
SpectralVelocity galerkin_tail(const SpectralVelocity& u, double cutoff);

/// |u - w| where w's lattice may be coarser than u's (same box, w's modes a
/// subset of u's); modes absent from w count with w_hat = 0.
double l2_distance(const SpectralVelocity& u, const SpectralVelocity& w);
/// Copies a coarse field into a finer lattice (same box length).
SpectralVelocity embed(const SpectralVelocity& u, LatticePtr fine);

// ---- Constructors ----

/// (amplitude * sin(2 pi y / L), 0).
SpectralVelocity shear_field(LatticePtr lat, double amplitude);
/// Stream function amplitude * cos(2 pi x/L) cos(2 pi y/L).
SpectralVelocity taylor_green_field(LatticePtr lat, double amplitude);
/// Divergence-free field with |u_hat(k)| proportional to (1+|k|^2)^(-s/2),
/// random phases from the seed, restricted to lambda <= cutoff (0 means the
/// lattice's largest complete shell), then scaled to the requested L^2 norm.
SpectralVelocity random_smooth_field(LatticePtr lat, std::uint64_t seed, double spectrum_decay,
                                     double l2_norm, double cutoff = 0.0);
/// Equal-modulus phase-0 coefficients on a single eigenvalue shell |k|^2 = n,
/// solenoidal, scaled to the requested L^2 norm.
SpectralVelocity single_shell_field(LatticePtr lat, int shell, double l2_norm);

}  // namespace alphaflow

// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "alphaflow/field.hpp"
#include "alphaflow/fourier.hpp"

namespace alphaflow {

/// Scratch buffers and plans for pseudo-spectral bilinear products.
///
/// Exact mode: quadratic products of retained modes are evaluated on the
/// zero-padded 3/2-rule grid, so the truncated result equals the sharp
/// Galerkin value to round-off. AliasedTestOnly skips the padding and is
/// used as a negative control in tests.
class BilinearWorkspace {
 public:
  enum class Padding { Exact, AliasedTestOnly };

  explicit BilinearWorkspace(LatticePtr lat, Padding padding = Padding::Exact);
  ~BilinearWorkspace();
  BilinearWorkspace(const BilinearWorkspace&) = delete;
  BilinearWorkspace& operator=(const BilinearWorkspace&) = delete;

  const Lattice& lattice() const;

  /// B(u, w) = P_sigma((u . grad) w), truncated to the lattice.
  void advective_into(const SpectralVelocity& u, const SpectralVelocity& w, SpectralVelocity& out);
  SpectralVelocity advective(const SpectralVelocity& u, const SpectralVelocity& w);

  /// Btilde(u, w) = -P_sigma(u x (curl w)), with the 2D curl
  /// omega = d_x w_y - d_y w_x and u x (omega e_z) = (u_y omega, -u_x omega).
  void rotational_into(const SpectralVelocity& u, const SpectralVelocity& w, SpectralVelocity& out);
  SpectralVelocity rotational(const SpectralVelocity& u, const SpectralVelocity& w);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class BilinearForm { Advective, Rotational };

/// Direct convolution-sum evaluation of the bilinear operators over retained
/// mode pairs. O(M^2); refuses lattices above the mode budget. Shares no
/// code with the transform path and serves as its oracle.
SpectralVelocity convolution_oracle(const SpectralVelocity& u, const SpectralVelocity& w,
                                    BilinearForm form, std::size_t mode_budget = 1024);

/// Max relative violations of the exact bilinear identities and empirical
/// constants of the bilinear inequalities, over seeded random smooth fields.
struct IdentityReport {
  int trials = 0;
  std::uint64_t seed = 0;
  int resolution = 0;
  double box_length = 0.0;

  // Exact identities, worst relative violation over trials.
  double antisymmetry = 0.0;        // <B(w1,w2),w3> = -<B(w1,w3),w2>
  double energy_orthogonality = 0.0;  // <B(w1,w2),w2> = 0
  double enstrophy_identity = 0.0;    // (B(p,p),Ap) = 0
  double rotational_orthogonality = 0.0;  // <Bt(w1,w2),w1> = 0
  double decomposition = 0.0;             // <Bt(w1,w2),w3> = <B(w1,w2),w3> - <B(w3,w2),w1>

  // Empirical constants: max over trials of |pairing| / bound shape.
  double c_interpolated = 0.0;  // |u|^1/2 ||u||^1/2 ||v|| |w|^1/2 ||w||^1/2
  double c_linf_advector = 0.0;  // ||u||_inf ||v|| |w|
  double c_grad_linf = 0.0;  // |u| ||grad v||_inf |w|
  double c_linf_test = 0.0;  // |u| ||v|| ||w||_inf
  double c_rotational = 0.0;
  double c_h2_pairing = 0.0;   // |(B(w,u),Au)| <= c ||w|| ||u|| |Au|
  double c_log_advector = 0.0;    // ||u|| ||v|| |w| (1+log(|Au|^2/(l1 ||u||^2)))^1/2
  double c_log_test = 0.0;    // |u| ||v|| ||w|| (1+log(|Aw|^2/(l1 ||w||^2)))^1/2
  double c_ladyzhenskaya = 0.0;  // L4 vs |u|^1/2 ||u||^1/2

  double worst_identity() const;
  std::string to_json() const;
};

IdentityReport identity_suite(LatticePtr lat, int trials, std::uint64_t seed);

}  // namespace alphaflow

// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "alphaflow/field.hpp"
#include "alphaflow/nonlinear.hpp"

namespace alphaflow {

/// The five dynamical systems. Every filtered model reduces exactly to NSE
/// at alpha = 0.
enum class ModelKind { NSE, LerayAlpha, NSAlpha, ModifiedLerayAlpha, SimplifiedBardina };

std::string model_name(ModelKind kind);
ModelKind model_from_name(const std::string& name);

struct InitialConditionSpec {
  enum class Kind { Shear, TaylorGreen, RandomSmooth };
  Kind kind = Kind::RandomSmooth;
  double amplitude = 0.5;       // L2 norm (random/shell) or coefficient amplitude (shear/TG)
  double spectrum_decay = 4.0;  // >= 4 keeps |A u0| resolution-stable
  int resolution = 0;           // native lattice for generation; 0 = run lattice
};

struct ForcingSpec {
  enum class Kind { Zero, SingleShell, RandomSmooth };
  Kind kind = Kind::Zero;
  double amplitude = 0.0;  // L2 norm of the forcing
  int shell = 1;           // |k|^2 for SingleShell
  double spectrum_decay = 4.0;
  int resolution = 0;
};

struct SimConfig {
  ModelKind model = ModelKind::NSE;
  double box_length = 6.283185307179586;
  int resolution = 64;
  double nu = 0.1;     // viscosity, length^2/time
  double alpha = 0.0;  // filter length
  /// Galerkin cutoff as an eigenvalue threshold; 0 selects the lattice's
  /// largest complete shell. Must sit at a complete shell boundary.
  double galerkin_cutoff = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  int sample_count = 64;  // uniform sample intervals over [0, t_end]
  std::uint64_t seed = 1;
  InitialConditionSpec initial;
  ForcingSpec forcing;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// The effective cutoff (resolves the 0 default against a lattice).
  double effective_cutoff(const Lattice& lat) const;
};

/// Builds the (projected, zero-mean, cutoff-restricted) initial state.
/// Random fields are generated on their native lattice and embedded, so the
/// same spec yields the same element of H on any refining lattice.
SpectralVelocity make_initial_condition(LatticePtr lat, const SimConfig& cfg);
/// Time-independent forcing restricted to the cutoff (P_m f).
SpectralVelocity make_forcing(LatticePtr lat, const SimConfig& cfg);

/// Instantaneous terms of the model's natural energy identity, in the
/// doubled convention d(energy)/dt + dissipation = production.
struct EnergyBalance {
  double energy = 0.0;       // conserved quadratic form
  double dissipation = 0.0;  // 2 nu (...)
  double production = 0.0;   // 2 (f, .)
};

/// Right-hand side assembly for du/dt = -nu A u + G(u) where
/// G(u) = -(I+alpha^2 A)^{-1} P_m N(u) + (I+alpha^2 A)^{-1} P_m f and N is
/// the model's bilinear term in v = (I+alpha^2 A) u.
class ModelRhs {
 public:
  ModelRhs(LatticePtr lat, const SimConfig& cfg);
  ~ModelRhs();
  ModelRhs(const ModelRhs&) = delete;
  ModelRhs& operator=(const ModelRhs&) = delete;

  const Lattice& lattice() const;
  const LatticePtr& lattice_ptr() const;
  const SimConfig& config() const;
  double cutoff() const;
  const SpectralVelocity& forcing_term() const;  // (I+alpha^2 A)^{-1} P_m f

  /// Filtered nonlinear + forcing part G(u); output lies in the cutoff space.
  void nonlinear(const SpectralVelocity& u, SpectralVelocity& out);
  /// Full du/dt including the viscous term.
  SpectralVelocity rhs(const SpectralVelocity& u);

  EnergyBalance energy_balance(const SpectralVelocity& u) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper matching the per-state signature.
EnergyBalance energy_balance_terms(ModelKind kind, const SpectralVelocity& u,
                                   const SpectralVelocity& forcing, double nu, double alpha);

}  // namespace alphaflow

// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>

#include "alphaflow/field.hpp"
#include "alphaflow/lattice.hpp"

namespace alphaflow {

/// Aligned physical-space buffer suitable for the transform plans.
struct RealBufferDeleter {
  void operator()(double* p) const noexcept;
};
using RealBuffer = std::unique_ptr<double[], RealBufferDeleter>;
RealBuffer make_real_buffer(std::size_t n);

/// Real <-> spectral transforms between packed lattice coefficients and a
/// G x G collocation grid, G >= N. Plan creation is serialized internally;
/// each instance owns its scratch and may be used from one thread at a time.
class TransformGrid {
 public:
  TransformGrid(LatticePtr lat, int grid_size);
  ~TransformGrid();
  TransformGrid(const TransformGrid&) = delete;
  TransformGrid& operator=(const TransformGrid&) = delete;

  int grid() const;
  std::size_t points() const;

  /// out[j] = sum_k m(k) c(k) exp(i 2 pi k.x_j / L); m may be null (ones).
  void synthesize(std::span<const Complex> coeffs, const Complex* mults, double* out);
  /// Same with two accumulated terms, e.g. vorticity from two components.
  void synthesize_sum(std::span<const Complex> a, const Complex* ma, std::span<const Complex> b,
                      const Complex* mb, double* out);
  /// Inverse: collocation values -> retained-mode coefficients (with the
  /// 1/G^2 normalization); modes beyond the lattice are discarded.
  void analyze(const double* in, std::span<Complex> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Pointwise norms of the trigonometric polynomial, evaluated on an
/// oversampled collocation grid (exact for L4, grid-max for Linf).
struct PointwiseNorms {
  double linf = 0.0;
  double l4 = 0.0;
  double grad_linf = 0.0;
  int grid = 0;
};

/// All norms of a field in one record.
struct NormSet {
  double l2 = 0.0;    // |u|
  double h1 = 0.0;    // ||u||
  double h2 = 0.0;    // |Au|
  double hs = 0.0;    // homogeneous Sobolev norm at the requested order
  double hs_order = 0.0;
  double linf = 0.0;
  double l4 = 0.0;
  int grid = 0;  // collocation grid used for the pointwise norms
};

NormSet norms(const SpectralVelocity& u, double hs_order = 2.0);

/// Reusable evaluator for pointwise norms and physical values.
class PhysicalProbe {
 public:
  /// grid_size = 0 selects the lattice's oversampled grid (3N).
  explicit PhysicalProbe(LatticePtr lat, int grid_size = 0);
  ~PhysicalProbe();
  PhysicalProbe(const PhysicalProbe&) = delete;
  PhysicalProbe& operator=(const PhysicalProbe&) = delete;

  PointwiseNorms norms(const SpectralVelocity& u);
  /// Collocation values of both components, row-major x-major.
  void values(const SpectralVelocity& u, std::span<double> ux, std::span<double> uy);
  int grid() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace alphaflow

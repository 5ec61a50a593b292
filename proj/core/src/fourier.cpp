// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace alphaflow {

namespace {
// fftw plan management is not reentrant.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void RealBufferDeleter::operator()(double* p) const noexcept { fftw_free(p); }

RealBuffer make_real_buffer(std::size_t n) {
  auto* p = static_cast<double*>(fftw_malloc(n * sizeof(double)));
  if (p == nullptr) throw std::bad_alloc();
  std::memset(p, 0, n * sizeof(double));
  return RealBuffer(p);
}

struct TransformGrid::Impl {
  LatticePtr lat;
  int G = 0;
  fftw_complex* spec = nullptr;  // G x (G/2+1)
  double* real = nullptr;       // G x G, plan-creation template
  fftw_plan fwd = nullptr;      // r2c
  fftw_plan bwd = nullptr;      // c2r
  // Scatter table: one entry per retained mode with ky >= 0.
  struct Slot {
    int mode = 0;  // lattice mode index
    int pos = 0;   // index into spec
  };
  std::vector<Slot> scatter;
  // Gather table: per retained mode, position and conjugation flag.
  struct Gather {
    int pos = 0;
    bool conj = false;
  };
  std::vector<Gather> gather;

  ~Impl() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd != nullptr) fftw_destroy_plan(fwd);
    if (bwd != nullptr) fftw_destroy_plan(bwd);
    fftw_free(spec);
    fftw_free(real);
  }
};

TransformGrid::TransformGrid(LatticePtr lat, int grid_size) : impl_(std::make_unique<Impl>()) {
  if (grid_size < lat->resolution()) {
    throw std::invalid_argument("TransformGrid: grid must be at least the lattice resolution");
  }
  impl_->lat = std::move(lat);
  impl_->G = grid_size;
  const int G = grid_size;
  const std::size_t nspec = static_cast<std::size_t>(G) * (G / 2 + 1);
  impl_->spec = static_cast<fftw_complex*>(fftw_malloc(nspec * sizeof(fftw_complex)));
  impl_->real = static_cast<double*>(fftw_malloc(static_cast<std::size_t>(G) * G * sizeof(double)));
  if (impl_->spec == nullptr || impl_->real == nullptr) throw std::bad_alloc();
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    impl_->fwd = fftw_plan_dft_r2c_2d(G, G, impl_->real, impl_->spec, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_c2r_2d(G, G, impl_->spec, impl_->real, FFTW_ESTIMATE);
  }
  if (impl_->fwd == nullptr || impl_->bwd == nullptr) {
    throw std::runtime_error("TransformGrid: fftw plan creation failed");
  }

  const Lattice& l = *impl_->lat;
  const auto modes = l.modes();
  const int half = G / 2 + 1;
  impl_->gather.resize(l.mode_count());
  for (std::size_t i = 0; i < l.mode_count(); ++i) {
    const Mode m = modes[i];
    if (m.ky >= 0) {
      const int row = m.kx >= 0 ? m.kx : m.kx + G;
      impl_->scatter.push_back({static_cast<int>(i), row * half + m.ky});
      impl_->gather[i] = {row * half + m.ky, false};
    } else {
      const int row = -m.kx >= 0 ? -m.kx : -m.kx + G;
      impl_->gather[i] = {row * half + (-m.ky), true};
    }
  }
}

TransformGrid::~TransformGrid() = default;

int TransformGrid::grid() const { return impl_->G; }
std::size_t TransformGrid::points() const {
  return static_cast<std::size_t>(impl_->G) * impl_->G;
}

void TransformGrid::synthesize(std::span<const Complex> coeffs, const Complex* mults,
                               double* out) {
  synthesize_sum(coeffs, mults, {}, nullptr, out);
}

void TransformGrid::synthesize_sum(std::span<const Complex> a, const Complex* ma,
                                   std::span<const Complex> b, const Complex* mb, double* out) {
  const int G = impl_->G;
  const std::size_t nspec = static_cast<std::size_t>(G) * (G / 2 + 1);
  std::memset(impl_->spec, 0, nspec * sizeof(fftw_complex));
  for (const auto& s : impl_->scatter) {
    Complex v = ma != nullptr ? a[s.mode] * ma[s.mode] : a[s.mode];
    if (!b.empty()) v += mb != nullptr ? b[s.mode] * mb[s.mode] : b[s.mode];
    impl_->spec[s.pos][0] = v.real();
    impl_->spec[s.pos][1] = v.imag();
  }
  fftw_execute_dft_c2r(impl_->bwd, impl_->spec, out);
}

void TransformGrid::analyze(const double* in, std::span<Complex> out) {
  fftw_execute_dft_r2c(impl_->fwd, const_cast<double*>(in), impl_->spec);
  const double scale = 1.0 / (static_cast<double>(impl_->G) * impl_->G);
  for (std::size_t i = 0; i < impl_->gather.size(); ++i) {
    const auto g = impl_->gather[i];
    Complex v(impl_->spec[g.pos][0], impl_->spec[g.pos][1]);
    out[i] = scale * (g.conj ? std::conj(v) : v);
  }
}

struct PhysicalProbe::Impl {
  LatticePtr lat;
  TransformGrid tg;
  RealBuffer ux, uy, ga, gb;
  std::vector<Complex> dx, dy;  // i k_j derivative multipliers

  Impl(LatticePtr l, int G)
      : lat(l),
        tg(l, G),
        ux(make_real_buffer(tg.points())),
        uy(make_real_buffer(tg.points())),
        ga(make_real_buffer(tg.points())),
        gb(make_real_buffer(tg.points())) {
    const double q = 2.0 * std::numbers::pi / lat->box_length();
    const auto modes = lat->modes();
    dx.resize(lat->mode_count());
    dy.resize(lat->mode_count());
    for (std::size_t i = 0; i < lat->mode_count(); ++i) {
      dx[i] = Complex(0.0, q * modes[i].kx);
      dy[i] = Complex(0.0, q * modes[i].ky);
    }
  }
};

NormSet norms(const SpectralVelocity& u, double hs_order) {
  NormSet n;
  n.l2 = norm_l2(u);
  n.h1 = norm_h1(u);
  n.h2 = norm_h2(u);
  n.hs = norm_hs(u, hs_order);
  n.hs_order = hs_order;
  PhysicalProbe probe(u.lattice_ptr());
  const PointwiseNorms p = probe.norms(u);
  n.linf = p.linf;
  n.l4 = p.l4;
  n.grid = p.grid;
  return n;
}

PhysicalProbe::PhysicalProbe(LatticePtr lat, int grid_size)
    : impl_(std::make_unique<Impl>(lat, grid_size == 0 ? lat->oversampled_grid() : grid_size)) {}

PhysicalProbe::~PhysicalProbe() = default;

int PhysicalProbe::grid() const { return impl_->tg.grid(); }

PointwiseNorms PhysicalProbe::norms(const SpectralVelocity& u) {
  auto& im = *impl_;
  const std::size_t n = im.tg.points();
  im.tg.synthesize(u.xs(), nullptr, im.ux.get());
  im.tg.synthesize(u.ys(), nullptr, im.uy.get());

  PointwiseNorms out;
  out.grid = im.tg.grid();
  double sum4 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double m2 = im.ux[j] * im.ux[j] + im.uy[j] * im.uy[j];
    out.linf = std::max(out.linf, m2);
    sum4 += m2 * m2;
  }
  out.linf = std::sqrt(out.linf);
  const double L = im.lat->box_length();
  out.l4 = std::pow(L * L * sum4 / static_cast<double>(n), 0.25);

  // Gradient magnitude: Frobenius norm of (d_j u_l) over the grid.
  std::vector<double> g2(n, 0.0);
  const std::span<const Complex> comps[2] = {u.xs(), u.ys()};
  for (const auto& comp : comps) {
    im.tg.synthesize(comp, im.dx.data(), im.ga.get());
    im.tg.synthesize(comp, im.dy.data(), im.gb.get());
    for (std::size_t j = 0; j < n; ++j) {
      g2[j] += im.ga[j] * im.ga[j] + im.gb[j] * im.gb[j];
    }
  }
  double gmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) gmax = std::max(gmax, g2[j]);
  out.grad_linf = std::sqrt(gmax);
  return out;
}

void PhysicalProbe::values(const SpectralVelocity& u, std::span<double> ux, std::span<double> uy) {
  auto& im = *impl_;
  const std::size_t n = im.tg.points();
  if (ux.size() != n || uy.size() != n) {
    throw std::invalid_argument("PhysicalProbe::values: output spans must have grid^2 entries");
  }
  im.tg.synthesize(u.xs(), nullptr, im.ux.get());
  im.tg.synthesize(u.ys(), nullptr, im.uy.get());
  std::memcpy(ux.data(), im.ux.get(), n * sizeof(double));
  std::memcpy(uy.data(), im.uy.get(), n * sizeof(double));
}

}  // namespace alphaflow

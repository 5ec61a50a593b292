// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace alphaflow {

struct BilinearWorkspace::Impl {
  LatticePtr lat;
  TransformGrid tg;
  RealBuffer u1, u2, ga, gb, prod1, prod2;
  std::vector<Complex> dx, dy, neg_dy;

  Impl(LatticePtr l, int grid)
      : lat(l),
        tg(l, grid),
        u1(make_real_buffer(tg.points())),
        u2(make_real_buffer(tg.points())),
        ga(make_real_buffer(tg.points())),
        gb(make_real_buffer(tg.points())),
        prod1(make_real_buffer(tg.points())),
        prod2(make_real_buffer(tg.points())) {
    const double q = 2.0 * std::numbers::pi / lat->box_length();
    const auto modes = lat->modes();
    dx.resize(lat->mode_count());
    dy.resize(lat->mode_count());
    neg_dy.resize(lat->mode_count());
    for (std::size_t i = 0; i < lat->mode_count(); ++i) {
      dx[i] = Complex(0.0, q * modes[i].kx);
      dy[i] = Complex(0.0, q * modes[i].ky);
      neg_dy[i] = -dy[i];
    }
  }
};

namespace {

void leray_in_place(const Lattice& lat, SpectralVelocity& f) {
  const auto modes = lat.modes();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double kx = modes[i].kx, ky = modes[i].ky;
    const Complex kdotu = kx * f.x(i) + ky * f.y(i);
    const double ksq = kx * kx + ky * ky;
    f.x(i) -= kx * kdotu / ksq;
    f.y(i) -= ky * kdotu / ksq;
  }
}

}  // namespace

BilinearWorkspace::BilinearWorkspace(LatticePtr lat, Padding padding)
    : impl_(std::make_unique<Impl>(
          lat, padding == Padding::Exact ? lat->padded_grid() : lat->resolution())) {}

BilinearWorkspace::~BilinearWorkspace() = default;

const Lattice& BilinearWorkspace::lattice() const { return *impl_->lat; }

void BilinearWorkspace::advective_into(const SpectralVelocity& u, const SpectralVelocity& w,
                                       SpectralVelocity& out) {
  auto& im = *impl_;
  if (&u.lattice() != im.lat.get() || &w.lattice() != im.lat.get()) {
    throw std::invalid_argument("advective_B: fields must share the workspace lattice");
  }
  const std::size_t n = im.tg.points();
  im.tg.synthesize(u.xs(), nullptr, im.u1.get());
  im.tg.synthesize(u.ys(), nullptr, im.u2.get());

  // (u . grad) w, one component at a time.
  for (int comp = 0; comp < 2; ++comp) {
    const auto wc = comp == 0 ? w.xs() : w.ys();
    im.tg.synthesize(wc, im.dx.data(), im.ga.get());
    im.tg.synthesize(wc, im.dy.data(), im.gb.get());
    double* prod = comp == 0 ? im.prod1.get() : im.prod2.get();
    for (std::size_t j = 0; j < n; ++j) {
      prod[j] = im.u1[j] * im.ga[j] + im.u2[j] * im.gb[j];
    }
  }
  im.tg.analyze(im.prod1.get(), out.xs());
  im.tg.analyze(im.prod2.get(), out.ys());
  leray_in_place(*im.lat, out);
}

SpectralVelocity BilinearWorkspace::advective(const SpectralVelocity& u,
                                              const SpectralVelocity& w) {
  SpectralVelocity out(impl_->lat);
  advective_into(u, w, out);
  return out;
}

void BilinearWorkspace::rotational_into(const SpectralVelocity& u, const SpectralVelocity& w,
                                        SpectralVelocity& out) {
  auto& im = *impl_;
  if (&u.lattice() != im.lat.get() || &w.lattice() != im.lat.get()) {
    throw std::invalid_argument("rotational_B: fields must share the workspace lattice");
  }
  const std::size_t n = im.tg.points();
  im.tg.synthesize(u.xs(), nullptr, im.u1.get());
  im.tg.synthesize(u.ys(), nullptr, im.u2.get());
  // omega = d_x w_y - d_y w_x
  im.tg.synthesize_sum(w.ys(), im.dx.data(), w.xs(), im.neg_dy.data(), im.ga.get());

  // -(u x omega e_z) = (-u_y omega, u_x omega)
  for (std::size_t j = 0; j < n; ++j) {
    im.prod1[j] = -im.u2[j] * im.ga[j];
    im.prod2[j] = im.u1[j] * im.ga[j];
  }
  im.tg.analyze(im.prod1.get(), out.xs());
  im.tg.analyze(im.prod2.get(), out.ys());
  leray_in_place(*im.lat, out);
}

SpectralVelocity BilinearWorkspace::rotational(const SpectralVelocity& u,
                                               const SpectralVelocity& w) {
  SpectralVelocity out(impl_->lat);
  rotational_into(u, w, out);
  return out;
}

SpectralVelocity convolution_oracle(const SpectralVelocity& u, const SpectralVelocity& w,
                                    BilinearForm form, std::size_t mode_budget) {
  const Lattice& lat = u.lattice();
  if (&lat != &w.lattice()) {
    throw std::invalid_argument("convolution_oracle: fields must share a lattice");
  }
  if (lat.mode_count() > mode_budget) {
    throw std::invalid_argument("convolution_oracle: lattice exceeds the mode budget");
  }
  const double q = 2.0 * std::numbers::pi / lat.box_length();
  const auto modes = lat.modes();
  const std::size_t M = lat.mode_count();
  SpectralVelocity out(u.lattice_ptr());

  if (form == BilinearForm::Advective) {
    // ((u.grad)w)_k = sum_{p+r=k} i q (u_p . r) w_r
    for (std::size_t ip = 0; ip < M; ++ip) {
      const Mode p = modes[ip];
      for (std::size_t ir = 0; ir < M; ++ir) {
        const Mode r = modes[ir];
        const int tid = lat.index_of(p.kx + r.kx, p.ky + r.ky);
        if (tid < 0) continue;
        const Complex factor =
            Complex(0.0, q) * (u.x(ip) * static_cast<double>(r.kx) +
                               u.y(ip) * static_cast<double>(r.ky));
        out.x(static_cast<std::size_t>(tid)) += factor * w.x(ir);
        out.y(static_cast<std::size_t>(tid)) += factor * w.y(ir);
      }
    }
  } else {
    // omega_r = i q (r_x w_y - r_y w_x); -(u x omega): (-u_y omega, u_x omega)
    std::vector<Complex> omega(M);
    for (std::size_t ir = 0; ir < M; ++ir) {
      const Mode r = modes[ir];
      omega[ir] = Complex(0.0, q) * (static_cast<double>(r.kx) * w.y(ir) -
                                     static_cast<double>(r.ky) * w.x(ir));
    }
    for (std::size_t ip = 0; ip < M; ++ip) {
      const Mode p = modes[ip];
      for (std::size_t ir = 0; ir < M; ++ir) {
        const Mode r = modes[ir];
        const int tid = lat.index_of(p.kx + r.kx, p.ky + r.ky);
        if (tid < 0) continue;
        out.x(static_cast<std::size_t>(tid)) += -u.y(ip) * omega[ir];
        out.y(static_cast<std::size_t>(tid)) += u.x(ip) * omega[ir];
      }
    }
  }
  leray_in_place(lat, out);
  return out;
}

double IdentityReport::worst_identity() const {
  return std::max({antisymmetry, energy_orthogonality, enstrophy_identity,
                   rotational_orthogonality, decomposition});
}

std::string IdentityReport::to_json() const {
  nlohmann::json j{
      {"trials", trials},
      {"seed", seed},
      {"resolution", resolution},
      {"box_length", box_length},
      {"identities",
       {{"antisymmetry", antisymmetry},
        {"energy_orthogonality", energy_orthogonality},
        {"enstrophy_identity", enstrophy_identity},
        {"rotational_orthogonality", rotational_orthogonality},
        {"decomposition", decomposition}}},
      {"empirical_constants",
       {{"interpolated", c_interpolated},
        {"linf_advector", c_linf_advector},
        {"grad_linf", c_grad_linf},
        {"linf_test", c_linf_test},
        {"rotational", c_rotational},
        {"h2_pairing", c_h2_pairing},
        {"log_advector", c_log_advector},
        {"log_test", c_log_test},
        {"ladyzhenskaya", c_ladyzhenskaya}}},
  };
  return j.dump(2);
}

IdentityReport identity_suite(LatticePtr lat, int trials, std::uint64_t seed) {
  if (trials <= 0) throw std::invalid_argument("identity_suite: trials must be positive");
  IdentityReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.resolution = lat->resolution();
  rep.box_length = lat->box_length();

  BilinearWorkspace ws(lat);
  PhysicalProbe probe(lat);
  const double lambda1 = lat->lambda1();

  auto ratio_max = [](double& slot, double value, double denom) {
    if (denom > 0.0) slot = std::max(slot, value / denom);
  };

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t) * 1000003ULL;
    // Spectrum decay 4 keeps every D(A^{3/2}) quantity finite and
    // resolution-stable.
    SpectralVelocity w1 = random_smooth_field(lat, s + 1, 4.0, 1.0);
    SpectralVelocity w2 = random_smooth_field(lat, s + 2, 4.0, 1.0);
    SpectralVelocity w3 = random_smooth_field(lat, s + 3, 4.0, 1.0);

    const SpectralVelocity adv_12 = ws.advective(w1, w2);
    const SpectralVelocity adv_13 = ws.advective(w1, w3);
    const SpectralVelocity adv_32 = ws.advective(w3, w2);
    const SpectralVelocity rot_12 = ws.rotational(w1, w2);

    const double n_adv_12 = norm_l2(adv_12);
    const double n_adv_13 = norm_l2(adv_13);

    // Antisymmetry in the last two slots.
    {
      const double lhs = inner_l2(adv_12, w3) + inner_l2(adv_13, w2);
      const double scale = n_adv_12 * norm_l2(w3) + n_adv_13 * norm_l2(w2);
      ratio_max(rep.antisymmetry, std::abs(lhs), scale);
    }
    // Energy orthogonality: the advective form annihilates its transported field.
    {
      const double lhs = std::abs(inner_l2(adv_12, w2));
      ratio_max(rep.energy_orthogonality, lhs, n_adv_12 * norm_l2(w2));
    }
    // 2D enstrophy orthogonality against the Stokes image.
    {
      const SpectralVelocity adv_11 = ws.advective(w1, w1);
      const SpectralVelocity aw1 = apply_stokes(w1);
      const double lhs = std::abs(inner_l2(adv_11, aw1));
      ratio_max(rep.enstrophy_identity, lhs, norm_l2(adv_11) * norm_l2(aw1));
    }
    // Rotational-form orthogonality in the advecting slot.
    {
      const double lhs = std::abs(inner_l2(rot_12, w1));
      ratio_max(rep.rotational_orthogonality, lhs, norm_l2(rot_12) * norm_l2(w1));
    }
    // Rotational = advective minus transposed advective.
    {
      const double lhs = inner_l2(rot_12, w3);
      const double rhs = inner_l2(adv_12, w3) - inner_l2(adv_32, w1);
      const double scale =
          norm_l2(rot_12) * norm_l2(w3) + n_adv_12 * norm_l2(w3) + norm_l2(adv_32) * norm_l2(w1);
      ratio_max(rep.decomposition, std::abs(lhs - rhs), scale);
    }

    // Inequality constants.
    const double l2_1 = norm_l2(w1), h1_1 = norm_h1(w1);
    const double h1_2 = norm_h1(w2);
    const double l2_3 = norm_l2(w3), h1_3 = norm_h1(w3);
    const double pairing = std::abs(inner_l2(adv_12, w3));
    ratio_max(rep.c_interpolated, pairing,
              std::sqrt(l2_1 * h1_1) * h1_2 * std::sqrt(l2_3 * h1_3));
    const PointwiseNorms p1 = probe.norms(w1);
    const PointwiseNorms p2 = probe.norms(w2);
    const PointwiseNorms p3 = probe.norms(w3);
    ratio_max(rep.c_linf_advector, pairing, p1.linf * h1_2 * l2_3);
    ratio_max(rep.c_grad_linf, pairing, l2_1 * p2.grad_linf * l2_3);
    ratio_max(rep.c_linf_test, pairing, l2_1 * h1_2 * p3.linf);
    ratio_max(rep.c_rotational, std::abs(inner_l2(rot_12, w3)),
              std::sqrt(l2_1 * h1_1) * h1_2 * std::sqrt(l2_3 * h1_3));
    // Pairing against Au controlled by the gradient norms.
    {
      const SpectralVelocity b_w3_w1 = ws.advective(w3, w1);
      const SpectralVelocity aw1 = apply_stokes(w1);
      ratio_max(rep.c_h2_pairing, std::abs(inner_l2(b_w3_w1, aw1)),
                h1_3 * h1_1 * norm_h2(w1));
    }
    // Logarithmic pointwise-bound variants of the pairing inequalities.
    {
      const double h2_1 = norm_h2(w1);
      const double log_u = 1.0 + std::log(h2_1 * h2_1 / (lambda1 * h1_1 * h1_1));
      ratio_max(rep.c_log_advector, pairing, h1_1 * h1_2 * l2_3 * std::sqrt(log_u));
      const double h2_3 = norm_h2(w3);
      const double log_w = 1.0 + std::log(h2_3 * h2_3 / (lambda1 * h1_3 * h1_3));
      ratio_max(rep.c_log_test, pairing, l2_1 * h1_2 * h1_3 * std::sqrt(log_w));
    }
    ratio_max(rep.c_ladyzhenskaya, p1.l4, std::sqrt(l2_1 * h1_1));
  }
  return rep;
}

}  // namespace alphaflow

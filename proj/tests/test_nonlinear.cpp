// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alphaflow/nonlinear.hpp"

using namespace alphaflow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectralVelocity random_field(LatticePtr lat, std::uint64_t seed) {
  return random_smooth_field(std::move(lat), seed, 4.0, 1.0);
}

double rel_diff(const SpectralVelocity& a, const SpectralVelocity& b) {
  SpectralVelocity d = a;
  d -= b;
  const double scale = std::max(norm_l2(a), norm_l2(b));
  return scale > 0.0 ? norm_l2(d) / scale : norm_l2(d);
}
}  // namespace

TEST_SUITE("nonlinear") {

TEST_CASE("hand-computed convolution: u = (0, sin x), w = (sin y, 0)") {
  // (u.grad)w = (sin x cos y, 0); after projection the four corner modes
  // carry (-i/8, +-i/8) and conjugates. Both evaluation paths and both
  // operator forms must reproduce these numbers exactly.
  auto lat = Lattice::create(kTwoPi, 8);
  SpectralVelocity u(lat), w(lat);
  u.y(static_cast<std::size_t>(lat->index_of(1, 0))) = Complex(0.0, -0.5);
  u.y(static_cast<std::size_t>(lat->index_of(-1, 0))) = Complex(0.0, 0.5);
  w.x(static_cast<std::size_t>(lat->index_of(0, 1))) = Complex(0.0, -0.5);
  w.x(static_cast<std::size_t>(lat->index_of(0, -1))) = Complex(0.0, 0.5);

  BilinearWorkspace ws(lat);
  const SpectralVelocity fast = ws.advective(u, w);
  const SpectralVelocity oracle = convolution_oracle(u, w, BilinearForm::Advective);

  auto at = [&](const SpectralVelocity& f, int kx, int ky) {
    const auto i = static_cast<std::size_t>(lat->index_of(kx, ky));
    return std::make_pair(f.x(i), f.y(i));
  };
  for (const SpectralVelocity* f : {&fast, &oracle}) {
    const auto [x11, y11] = at(*f, 1, 1);
    CHECK(std::abs(x11 - Complex(0.0, -0.125)) < 1e-14);
    CHECK(std::abs(y11 - Complex(0.0, 0.125)) < 1e-14);
    const auto [x1m, y1m] = at(*f, 1, -1);
    CHECK(std::abs(x1m - Complex(0.0, -0.125)) < 1e-14);
    CHECK(std::abs(y1m - Complex(0.0, -0.125)) < 1e-14);
    const auto [xm1, ym1] = at(*f, -1, 1);
    CHECK(std::abs(xm1 - Complex(0.0, 0.125)) < 1e-14);
    CHECK(std::abs(ym1 - Complex(0.0, 0.125)) < 1e-14);
    // Energy lives only on the |k|^2 = 2 shell.
    double off_shell = 0.0;
    for (std::size_t i = 0; i < f->size(); ++i) {
      if (lat->shell(i) != 2) off_shell += std::norm(f->x(i)) + std::norm(f->y(i));
    }
    CHECK(off_shell < 1e-28);
  }

  // For this pair the rotational form coincides with the advective one.
  const SpectralVelocity rot = ws.rotational(u, w);
  CHECK(rel_diff(rot, fast) < 1e-13);
  const SpectralVelocity rot_oracle = convolution_oracle(u, w, BilinearForm::Rotational);
  CHECK(rel_diff(rot_oracle, fast) < 1e-13);
}

TEST_CASE("unidirectional shears annihilate both forms") {
  auto lat = Lattice::create(kTwoPi, 16);
  SpectralVelocity u = shear_field(lat, 1.0);
  // A second shear with a different profile g(y).
  SpectralVelocity w(lat);
  w.x(static_cast<std::size_t>(lat->index_of(0, 2))) = Complex(0.2, 0.1);
  w.x(static_cast<std::size_t>(lat->index_of(0, -2))) = Complex(0.2, -0.1);

  BilinearWorkspace ws(lat);
  CHECK(norm_l2(ws.advective(u, w)) < 1e-15);
  CHECK(norm_l2(ws.rotational(u, w)) < 1e-15);
}

TEST_CASE("taylor-green advection is a pure gradient") {
  auto lat = Lattice::create(kTwoPi, 16);
  const SpectralVelocity tg = taylor_green_field(lat, 1.0);
  BilinearWorkspace ws(lat);
  CHECK(norm_l2(ws.advective(tg, tg)) < 1e-14 * norm_l2(tg));
}

TEST_CASE("zero fields map to zero") {
  auto lat = Lattice::create(kTwoPi, 8);
  SpectralVelocity z(lat);
  CHECK(norm_l2(convolution_oracle(z, z, BilinearForm::Advective)) == 0.0);
  CHECK(norm_l2(convolution_oracle(z, z, BilinearForm::Rotational)) == 0.0);
}

TEST_CASE("oracle refuses oversized lattices") {
  auto lat = Lattice::create(kTwoPi, 64);
  SpectralVelocity z(lat);
  CHECK_THROWS_AS(convolution_oracle(z, z, BilinearForm::Advective), std::invalid_argument);
}

TEST_CASE("fast path matches the oracle on random pairs at N=16") {
  auto lat = Lattice::create(kTwoPi, 16);
  BilinearWorkspace ws(lat);
  for (int t = 0; t < 50; ++t) {
    const SpectralVelocity u = random_field(lat, 40 + static_cast<std::uint64_t>(2 * t));
    const SpectralVelocity w = random_field(lat, 41 + static_cast<std::uint64_t>(2 * t));
    CHECK(rel_diff(ws.advective(u, w), convolution_oracle(u, w, BilinearForm::Advective)) <
          1e-12);
    CHECK(rel_diff(ws.rotational(u, w), convolution_oracle(u, w, BilinearForm::Rotational)) <
          1e-12);
  }
}

TEST_CASE("outputs are solenoidal, zero-mean, real") {
  auto lat = Lattice::create(kTwoPi, 16);
  BilinearWorkspace ws(lat);
  const SpectralVelocity u = random_field(lat, 301);
  const SpectralVelocity w = random_field(lat, 302);
  for (const SpectralVelocity& b : {ws.advective(u, w), ws.rotational(u, w)}) {
    CHECK(b.max_relative_divergence() < 1e-13);
    CHECK(b.max_reality_defect() < 1e-13 * std::max(1.0, b.max_abs()));
  }
}

TEST_CASE("bilinearity in both slots") {
  auto lat = Lattice::create(kTwoPi, 16);
  BilinearWorkspace ws(lat);
  const SpectralVelocity u = random_field(lat, 310);
  const SpectralVelocity up = random_field(lat, 311);
  const SpectralVelocity w = random_field(lat, 312);
  SpectralVelocity combo = u;
  combo *= 2.0;
  combo.axpy(-3.0, up);

  SpectralVelocity lhs = ws.advective(combo, w);
  SpectralVelocity rhs = ws.advective(u, w);
  rhs *= 2.0;
  rhs.axpy(-3.0, ws.advective(up, w));
  CHECK(rel_diff(lhs, rhs) < 1e-13);

  SpectralVelocity lhs2 = ws.rotational(w, combo);
  SpectralVelocity rhs2 = ws.rotational(w, u);
  rhs2 *= 2.0;
  rhs2.axpy(-3.0, ws.rotational(w, up));
  CHECK(rel_diff(lhs2, rhs2) < 1e-13);
}

TEST_CASE("identity suite passes at N=32") {
  auto lat = Lattice::create(kTwoPi, 32);
  const IdentityReport rep = identity_suite(lat, 20, 2024);
  CHECK(rep.worst_identity() < 1e-12);
  for (double c : {rep.c_interpolated, rep.c_linf_advector, rep.c_grad_linf, rep.c_linf_test, rep.c_rotational, rep.c_h2_pairing,
                   rep.c_log_advector, rep.c_log_test, rep.c_ladyzhenskaya}) {
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
  }
  CHECK_THROWS_AS(identity_suite(lat, 0, 1), std::invalid_argument);
}

TEST_CASE("aliased evaluation breaks the enstrophy identity") {
  // Negative control: without the padded grid the quadratic products fold
  // back onto retained modes and (B(p,p), Ap) picks up aliasing error.
  auto lat = Lattice::create(kTwoPi, 16);
  BilinearWorkspace exact(lat);
  BilinearWorkspace aliased(lat, BilinearWorkspace::Padding::AliasedTestOnly);
  // A field with a full spectrum so products reach past the grid.
  const SpectralVelocity p = random_smooth_field(lat, 99, 4.0, 1.0);
  const SpectralVelocity ap = apply_stokes(p);

  const double good = std::abs(inner_l2(exact.advective(p, p), ap));
  const double bad = std::abs(inner_l2(aliased.advective(p, p), ap));
  const double scale = norm_l2(exact.advective(p, p)) * norm_l2(ap);
  CHECK(good / scale < 1e-12);
  CHECK(bad / scale > 1e-8);
}

}  // TEST_SUITE

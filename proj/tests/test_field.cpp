// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alphaflow/field.hpp"
#include "alphaflow/fourier.hpp"

using namespace alphaflow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectralVelocity random_field(LatticePtr lat, std::uint64_t seed) {
  return random_smooth_field(std::move(lat), seed, 4.0, 1.0);
}
}  // namespace

TEST_SUITE("field") {

TEST_CASE("random fields satisfy the invariants") {
  auto lat = Lattice::create(kTwoPi, 16);
  const SpectralVelocity u = random_field(lat, 7);
  CHECK(u.max_reality_defect() < 1e-15);
  CHECK(u.solenoidal_within());
  CHECK(norm_l2(u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("combined norm record is consistent with the individual norms") {
  auto lat = Lattice::create(kTwoPi, 8);
  const SpectralVelocity u = random_field(lat, 77);
  const NormSet n = norms(u, 1.5);
  CHECK(n.l2 == norm_l2(u));
  CHECK(n.h1 == norm_h1(u));
  CHECK(n.h2 == norm_h2(u));
  CHECK(n.hs == norm_hs(u, 1.5));
  CHECK(n.grid == lat->oversampled_grid());
  CHECK(n.linf > 0.0);
  CHECK(n.l4 > 0.0);
  // For any field, L2 <= L4 * sqrt(measure) ordering sanity.
  CHECK(n.l4 <= n.linf * kTwoPi * (1.0 + 1e-12));
}

TEST_CASE("leray projection subtracts the component along k") {
  auto lat = Lattice::create(kTwoPi, 8);
  SpectralVelocity u(lat);
  const auto i = static_cast<std::size_t>(lat->index_of(1, 0));
  u.x(i) = Complex(1.0, 0.0);
  u.y(i) = Complex(1.0, 0.0);
  const SpectralVelocity p = leray_project(u);
  CHECK(std::abs(p.x(i)) < 1e-15);
  CHECK(std::abs(p.y(i) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("leray projection is idempotent and kills gradients") {
  auto lat = Lattice::create(kTwoPi, 16);
  SpectralVelocity w(lat);
  // A pure gradient: u_hat parallel to k, with reality.
  const auto modes = lat->modes();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double kx = modes[i].kx, ky = modes[i].ky;
    const Complex phase(modes[i].kx * 0.3, modes[i].ky * 0.1);
    w.x(i) = kx * phase;
    w.y(i) = ky * phase;
  }
  const SpectralVelocity killed = leray_project(w);
  CHECK(killed.max_abs() < 1e-13 * w.max_abs());

  const SpectralVelocity u = random_field(lat, 3);
  SpectralVelocity once = leray_project(u);
  SpectralVelocity twice = leray_project(once);
  twice -= once;
  CHECK(twice.max_abs() <= 1e-13 * std::max(1.0, once.max_abs()));

  // Self-adjointness in the L2 pairing.
  const SpectralVelocity a = random_field(lat, 11);
  SpectralVelocity b(lat);
  for (std::size_t i = 0; i < b.size(); ++i) {
    b.x(i) = Complex(0.01 * modes[i].kx, -0.02 * modes[i].ky);
    b.y(i) = Complex(0.005, 0.01 * modes[i].ky);
  }
  // enforce reality on the hand-made field
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::size_t j = lat->conjugate_index(i);
    if (j < i) continue;
    b.x(j) = std::conj(b.x(i));
    b.y(j) = std::conj(b.y(i));
  }
  CHECK(inner_l2(leray_project(b), a) ==
        doctest::Approx(inner_l2(b, leray_project(a))).epsilon(1e-12));
}

TEST_CASE("helmholtz filter examples") {
  auto lat = Lattice::create(kTwoPi, 8);
  const SpectralVelocity u = random_field(lat, 5);

  SUBCASE("alpha 0 is the identity") {
    SpectralVelocity f = helmholtz_filter(u, 0.0);
    f -= u;
    CHECK(f.max_abs() == 0.0);
  }
  SUBCASE("amplitude halves on the first shell at alpha 1") {
    SpectralVelocity s(lat);
    const auto i = static_cast<std::size_t>(lat->index_of(0, 1));
    s.x(i) = Complex(0.0, -0.5);
    const SpectralVelocity f = helmholtz_filter(s, 1.0);
    CHECK(std::abs(f.x(i) - Complex(0.0, -0.25)) < 1e-15);
  }
  SUBCASE("round trip against the inverse") {
    SpectralVelocity rt = helmholtz_filter(helmholtz_inverse(u, 0.37), 0.37);
    rt -= u;
    CHECK(rt.max_abs() < 1e-14);
  }
  SUBCASE("negative alpha rejected") {
    CHECK_THROWS_AS(helmholtz_filter(u, -0.1), std::invalid_argument);
  }
}

TEST_CASE("filter commutes with the galerkin projector and the stokes operator") {
  auto lat = Lattice::create(kTwoPi, 16);
  const SpectralVelocity u = random_field(lat, 9);
  const double cutoff = 5.0;
  SpectralVelocity a = galerkin_project(helmholtz_filter(u, 0.2), cutoff);
  SpectralVelocity b = helmholtz_filter(galerkin_project(u, cutoff), 0.2);
  a -= b;
  CHECK(a.max_abs() < 1e-15);

  SpectralVelocity c = apply_stokes(helmholtz_filter(u, 0.2));
  SpectralVelocity d = helmholtz_filter(apply_stokes(u), 0.2);
  c -= d;
  CHECK(c.max_abs() < 1e-12 * std::max(1.0, d.max_abs()));
}

TEST_CASE("galerkin projector identities and tail bounds") {
  auto lat = Lattice::create(kTwoPi, 16);
  SUBCASE("cutoff at the top keeps everything") {
    const SpectralVelocity u = random_field(lat, 13);
    SpectralVelocity p = galerkin_project(u, lat->max_complete_shell());
    p -= u;
    CHECK(p.max_abs() == 0.0);
  }
  SUBCASE("clipped or empty cutoffs are rejected") {
    const SpectralVelocity u = random_field(lat, 13);
    CHECK_THROWS_AS(galerkin_project(u, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(galerkin_project(u, 50.0), std::invalid_argument);
  }
  SUBCASE("projector tail bounds over random fields") {
    for (int t = 0; t < 100; ++t) {
      const SpectralVelocity u = random_field(lat, 100 + static_cast<std::uint64_t>(t));
      const double cutoff = (t % 2 == 0) ? 4.0 : 10.0;
      const double lm1 = lat->next_eigenvalue_above(cutoff);
      const double lm = lat->last_eigenvalue_at_or_below(cutoff);
      const SpectralVelocity head = galerkin_project(u, cutoff);
      const SpectralVelocity tail = galerkin_tail(u, cutoff);
      const double tail_l2 = norm_l2(tail);
      const double tail_h1 = norm_h1(tail);
      CHECK(tail_l2 * tail_l2 <= norm_h1(u) * norm_h1(u) / lm1 * (1.0 + 1e-12));
      CHECK(tail_h1 * tail_h1 <= norm_h2(u) * norm_h2(u) / lm1 * (1.0 + 1e-12));
      const double head_h2 = norm_h2(head);
      CHECK(head_h2 * head_h2 <= lm * norm_h1(head) * norm_h1(head) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("norms on a single first-shell mode") {
  auto lat = Lattice::create(kTwoPi, 8);
  SpectralVelocity u(lat);
  const auto ip = static_cast<std::size_t>(lat->index_of(1, 0));
  const auto im = static_cast<std::size_t>(lat->index_of(-1, 0));
  u.y(ip) = Complex(0.25, 0.1);
  u.y(im) = std::conj(u.y(ip));
  CHECK(norm_h1(u) == doctest::Approx(norm_l2(u)).epsilon(1e-14));  // lambda = 1
  CHECK(norm_h2(u) == doctest::Approx(norm_l2(u)).epsilon(1e-14));
  // |u|^2 = L^2 * 2 |a|^2 under the documented normalization.
  const double expected = kTwoPi * std::sqrt(2.0 * std::norm(u.y(ip)));
  CHECK(norm_l2(u) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("poincare, interpolation, and the filter pairing identity") {
  auto lat = Lattice::create(kTwoPi, 16);
  for (int t = 0; t < 100; ++t) {
    const SpectralVelocity u = random_field(lat, 500 + static_cast<std::uint64_t>(t));
    const double l2 = norm_l2(u), h1 = norm_h1(u), h2 = norm_h2(u);
    CHECK(lat->lambda1() * l2 * l2 <= h1 * h1 * (1.0 + 1e-12));
    CHECK(h1 * h1 <= l2 * h2 * (1.0 + 1e-12));
    const double alpha = 0.3;
    const SpectralVelocity v = helmholtz_inverse(u, alpha);
    CHECK(inner_l2(v, u) ==
          doctest::Approx(l2 * l2 + alpha * alpha * h1 * h1).epsilon(1e-12));
  }
}

TEST_CASE("pointwise norms match direct summation on a tiny lattice") {
  auto lat = Lattice::create(kTwoPi, 8);
  const SpectralVelocity u = random_field(lat, 21);
  PhysicalProbe probe(lat);
  const PointwiseNorms pn = probe.norms(u);

  // Direct evaluation of the expansion on the same grid.
  const int G = probe.grid();
  double linf = 0.0, sum4 = 0.0;
  for (int i = 0; i < G; ++i) {
    for (int j = 0; j < G; ++j) {
      Complex ux{}, uy{};
      const double x = kTwoPi * i / G, y = kTwoPi * j / G;
      for (std::size_t m = 0; m < u.size(); ++m) {
        const Mode k = lat->modes()[m];
        const Complex e = std::polar(1.0, k.kx * x + k.ky * y);
        ux += u.x(m) * e;
        uy += u.y(m) * e;
      }
      const double m2 = ux.real() * ux.real() + uy.real() * uy.real();
      linf = std::max(linf, m2);
      sum4 += m2 * m2;
    }
  }
  linf = std::sqrt(linf);
  const double l4 = std::pow(kTwoPi * kTwoPi * sum4 / (static_cast<double>(G) * G), 0.25);
  CHECK(pn.linf == doctest::Approx(linf).epsilon(1e-10));
  CHECK(pn.l4 == doctest::Approx(l4).epsilon(1e-10));
}

TEST_CASE("ladyzhenskaya ratio is finite over a battery") {
  auto lat = Lattice::create(kTwoPi, 16);
  PhysicalProbe probe(lat);
  double c = 0.0;
  for (int t = 0; t < 100; ++t) {
    const SpectralVelocity u = random_field(lat, 900 + static_cast<std::uint64_t>(t));
    const double l4 = probe.norms(u).l4;
    c = std::max(c, l4 / std::sqrt(norm_l2(u) * norm_h1(u)));
  }
  CHECK(std::isfinite(c));
  CHECK(c > 0.0);
}

TEST_CASE("hs norm follows the documented formula") {
  auto lat = Lattice::create(kTwoPi, 8);
  SpectralVelocity u(lat);
  const auto ip = static_cast<std::size_t>(lat->index_of(1, 1));
  const auto im = static_cast<std::size_t>(lat->index_of(-1, -1));
  u.x(ip) = Complex(0.0, 0.5);
  u.x(im) = std::conj(u.x(ip));
  u = leray_project(u);
  // (2 pi / L)^{s-1} sqrt(sum (1+|k|^2)^s |u_hat|^2) with L = 2 pi.
  const double coeff = std::norm(u.x(ip)) + std::norm(u.y(ip));
  const double expected = std::sqrt(std::pow(3.0, 2.0) * 2.0 * coeff);
  CHECK(norm_hs(u, 2.0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("embedding and cross-lattice distance") {
  auto coarse = Lattice::create(kTwoPi, 8);
  auto fine = Lattice::create(kTwoPi, 16);
  const SpectralVelocity u = random_field(coarse, 31);
  const SpectralVelocity uf = embed(u, fine);
  CHECK(norm_l2(uf) == doctest::Approx(norm_l2(u)).epsilon(1e-14));
  CHECK(l2_distance(uf, u) < 1e-14);
  const SpectralVelocity w = random_field(fine, 32);
  const double direct = l2_distance(w, uf);
  CHECK(l2_distance(w, u) == doctest::Approx(direct).epsilon(1e-12));
}

}  // TEST_SUITE

// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alphaflow {

namespace {

// Shell index of a cutoff threshold: the largest integer n with
// lambda1 * n <= cutoff, robust to round-off on exact shell values.
int cutoff_shell(double cutoff, double lambda1) {
  return static_cast<int>(std::floor(cutoff / lambda1 * (1.0 + 1e-12)));
}

}  // namespace

int sum_of_two_squares_count(int n) {
  if (n <= 0) return 0;
  int count = 0;
  const int r = static_cast<int>(std::lround(std::floor(std::sqrt(static_cast<double>(n)))));
  for (int a = -r; a <= r; ++a) {
    const int rem = n - a * a;
    if (rem < 0) continue;
    const int b = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rem))));
    if (b * b == rem) {
      count += (b == 0) ? 1 : 2;
    }
  }
  return count;
}

std::shared_ptr<const Lattice> Lattice::create(double box_length, int resolution) {
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw std::invalid_argument("Lattice: box length must be positive and finite");
  }
  if (resolution < 4 || resolution % 2 != 0) {
    throw std::invalid_argument("Lattice: resolution must be an even integer >= 4");
  }

  auto lat = std::shared_ptr<Lattice>(new Lattice());
  lat->box_length_ = box_length;
  lat->resolution_ = resolution;
  lat->kmax_ = resolution / 2 - 1;
  const double two_pi_over_l = 2.0 * std::numbers::pi / box_length;
  lat->lambda1_ = two_pi_over_l * two_pi_over_l;

  const int kmax = lat->kmax_;
  for (int kx = -kmax; kx <= kmax; ++kx) {
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (kx == 0 && ky == 0) continue;
      lat->modes_.push_back({kx, ky});
    }
  }
  // Shell-major order keeps eigenvalue listings and seeded mode iteration
  // deterministic and resolution-stable.
  std::sort(lat->modes_.begin(), lat->modes_.end(), [](const Mode& a, const Mode& b) {
    const int na = a.kx * a.kx + a.ky * a.ky;
    const int nb = b.kx * b.kx + b.ky * b.ky;
    if (na != nb) return na < nb;
    if (a.kx != b.kx) return a.kx < b.kx;
    return a.ky < b.ky;
  });

  const int side = 2 * kmax + 1;
  lat->index_.assign(static_cast<std::size_t>(side) * side, -1);
  for (std::size_t i = 0; i < lat->modes_.size(); ++i) {
    const Mode m = lat->modes_[i];
    lat->index_[static_cast<std::size_t>(m.kx + kmax) * side + (m.ky + kmax)] =
        static_cast<int>(i);
  }

  lat->lambda_.resize(lat->modes_.size());
  lat->shell_.resize(lat->modes_.size());
  lat->conj_.resize(lat->modes_.size());
  for (std::size_t i = 0; i < lat->modes_.size(); ++i) {
    const Mode m = lat->modes_[i];
    const int n = m.kx * m.kx + m.ky * m.ky;
    lat->shell_[i] = n;
    lat->lambda_[i] = lat->lambda1_ * n;
    lat->conj_[i] = static_cast<std::size_t>(lat->index_of(-m.kx, -m.ky));
  }
  return lat;
}

int Lattice::index_of(int kx, int ky) const {
  if (std::abs(kx) > kmax_ || std::abs(ky) > kmax_) return -1;
  const int side = 2 * kmax_ + 1;
  return index_[static_cast<std::size_t>(kx + kmax_) * side + (ky + kmax_)];
}

bool Lattice::valid_cutoff(double cutoff) const {
  if (!std::isfinite(cutoff)) return false;
  const int n = cutoff_shell(cutoff, lambda1_);
  return n >= 1 && n <= kmax_ * kmax_;
}

double Lattice::next_eigenvalue_above(double cutoff) const {
  int n = cutoff_shell(cutoff, lambda1_);
  if (n < 0) n = 0;
  for (int m = n + 1;; ++m) {
    if (sum_of_two_squares_count(m) > 0) return lambda1_ * m;
  }
}

double Lattice::last_eigenvalue_at_or_below(double cutoff) const {
  const int n = cutoff_shell(cutoff, lambda1_);
  for (int m = n; m >= 1; --m) {
    if (sum_of_two_squares_count(m) > 0) return lambda1_ * m;
  }
  throw std::invalid_argument("Lattice: cutoff below the first eigenvalue");
}

std::size_t Lattice::modes_within(double cutoff) const {
  const int n = cutoff_shell(cutoff, lambda1_);
  std::size_t count = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (shell_[i] <= n) ++count;
  }
  return count;
}

std::vector<Lattice::ShellEigenvalue> Lattice::stokes_eigenvalues() const {
  std::vector<ShellEigenvalue> out;
  for (std::size_t i = 0; i < modes_.size();) {
    const int n = shell_[i];
    std::size_t j = i;
    while (j < modes_.size() && shell_[j] == n) ++j;
    out.push_back({lambda_[i], static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

double Lattice::weyl_constant() const {
  double c0 = 1.0;
  std::size_t j = 0;
  for (const auto& s : stokes_eigenvalues()) {
    for (int r = 0; r < s.multiplicity; ++r) {
      ++j;
      const double ratio = (s.lambda / lambda1_) / static_cast<double>(j);
      c0 = std::max(c0, std::max(ratio, 1.0 / ratio));
    }
  }
  return c0;
}

}  // namespace alphaflow

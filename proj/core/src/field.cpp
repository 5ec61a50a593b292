// Copyright 2026 The Alphaflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "alphaflow/field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace alphaflow {

SpectralVelocity::SpectralVelocity(LatticePtr lat)
    : lat_(std::move(lat)), x_(lat_->mode_count()), y_(lat_->mode_count()) {}

void SpectralVelocity::set_zero() {
  std::fill(x_.begin(), x_.end(), Complex{});
  std::fill(y_.begin(), y_.end(), Complex{});
}

bool SpectralVelocity::finite() const {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i].real()) || !std::isfinite(x_[i].imag()) ||
        !std::isfinite(y_[i].real()) || !std::isfinite(y_[i].imag())) {
      return false;
    }
  }
  return true;
}

SpectralVelocity& SpectralVelocity::operator+=(const SpectralVelocity& o) {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] += o.x_[i];
    y_[i] += o.y_[i];
  }
  return *this;
}

SpectralVelocity& SpectralVelocity::operator-=(const SpectralVelocity& o) {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] -= o.x_[i];
    y_[i] -= o.y_[i];
  }
  return *this;
}

SpectralVelocity& SpectralVelocity::operator*=(double s) {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] *= s;
    y_[i] *= s;
  }
  return *this;
}

void SpectralVelocity::axpy(double s, const SpectralVelocity& o) {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] += s * o.x_[i];
    y_[i] += s * o.y_[i];
  }
}

double SpectralVelocity::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    m = std::max(m, std::max(std::abs(x_[i]), std::abs(y_[i])));
  }
  return m;
}

double SpectralVelocity::max_relative_divergence() const {
  double worst = 0.0;
  const auto modes = lat_->modes();
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double kx = modes[i].kx, ky = modes[i].ky;
    const double knorm = std::sqrt(kx * kx + ky * ky);
    const double unorm = std::sqrt(std::norm(x_[i]) + std::norm(y_[i]));
    if (unorm == 0.0) continue;
    const double div = std::abs(kx * x_[i] + ky * y_[i]);
    worst = std::max(worst, div / (knorm * unorm));
  }
  return worst;
}

double SpectralVelocity::max_reality_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const std::size_t j = lat_->conjugate_index(i);
    worst = std::max(worst, std::abs(x_[j] - std::conj(x_[i])));
    worst = std::max(worst, std::abs(y_[j] - std::conj(y_[i])));
  }
  return worst;
}

double inner_l2(const SpectralVelocity& u, const SpectralVelocity& w) {
  const double L = u.lattice().box_length();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += u.x(i).real() * w.x(i).real() + u.x(i).imag() * w.x(i).imag();
    s += u.y(i).real() * w.y(i).real() + u.y(i).imag() * w.y(i).imag();
  }
  return L * L * s;
}

double norm_a(const SpectralVelocity& u, double p) {
  const Lattice& lat = u.lattice();
  const double L = lat.box_length();
  double s = 0.0;
  if (p == 0.0) {
    for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u.x(i)) + std::norm(u.y(i));
  } else {
    for (std::size_t i = 0; i < u.size(); ++i) {
      s += std::pow(lat.lambda(i), 2.0 * p) * (std::norm(u.x(i)) + std::norm(u.y(i)));
    }
  }
  return L * std::sqrt(s);
}

double norm_l2(const SpectralVelocity& u) { return norm_a(u, 0.0); }

double norm_h1(const SpectralVelocity& u) {
  const Lattice& lat = u.lattice();
  const double L = lat.box_length();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += lat.lambda(i) * (std::norm(u.x(i)) + std::norm(u.y(i)));
  }
  return L * std::sqrt(s);
}

double norm_h2(const SpectralVelocity& u) {
  const Lattice& lat = u.lattice();
  const double L = lat.box_length();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double l = lat.lambda(i);
    s += l * l * (std::norm(u.x(i)) + std::norm(u.y(i)));
  }
  return L * std::sqrt(s);
}

double norm_hs(const SpectralVelocity& u, double s) {
  const Lattice& lat = u.lattice();
  const double factor = 2.0 * std::numbers::pi / lat.box_length();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum += std::pow(1.0 + lat.shell(i), s) * (std::norm(u.x(i)) + std::norm(u.y(i)));
  }
  return std::pow(factor, s - 1.0) * std::sqrt(sum);
}

SpectralVelocity leray_project(const SpectralVelocity& u) {
  SpectralVelocity out = u;
  const auto modes = u.lattice().modes();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double kx = modes[i].kx, ky = modes[i].ky;
    const Complex kdotu = kx * out.x(i) + ky * out.y(i);
    const double ksq = kx * kx + ky * ky;
    out.x(i) -= kx * kdotu / ksq;
    out.y(i) -= ky * kdotu / ksq;
  }
  return out;
}

SpectralVelocity helmholtz_filter(const SpectralVelocity& v, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("helmholtz_filter: alpha must be >= 0");
  SpectralVelocity out = v;
  const Lattice& lat = v.lattice();
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f = 1.0 / (1.0 + a2 * lat.lambda(i));
    out.x(i) *= f;
    out.y(i) *= f;
  }
  return out;
}

SpectralVelocity helmholtz_inverse(const SpectralVelocity& u, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("helmholtz_inverse: alpha must be >= 0");
  SpectralVelocity out = u;
  const Lattice& lat = u.lattice();
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f = 1.0 + a2 * lat.lambda(i);
    out.x(i) *= f;
    out.y(i) *= f;
  }
  return out;
}

SpectralVelocity apply_stokes(const SpectralVelocity& u, double p) {
  SpectralVelocity out = u;
  const Lattice& lat = u.lattice();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f = (p == 1.0) ? lat.lambda(i) : std::pow(lat.lambda(i), p);
    out.x(i) *= f;
    out.y(i) *= f;
  }
  return out;
}

SpectralVelocity galerkin_project(const SpectralVelocity& u, double cutoff) {
  const Lattice& lat = u.lattice();
  if (!lat.valid_cutoff(cutoff)) {
    throw std::invalid_argument("galerkin_project: cutoff must sit at a complete shell boundary");
  }
  SpectralVelocity out = u;
  const double bound = cutoff * (1.0 + 1e-12);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (lat.lambda(i) > bound) {
      out.x(i) = Complex{};
      out.y(i) = Complex{};
    }
  }
  return out;
}

SpectralVelocity galerkin_tail(const SpectralVelocity& u, double cutoff) {
  SpectralVelocity head = galerkin_project(u, cutoff);
  SpectralVelocity out = u;
  out -= head;
  return out;
}

double l2_distance(const SpectralVelocity& u, const SpectralVelocity& w) {
  const Lattice& fine = u.lattice();
  const Lattice& coarse = w.lattice();
  if (&fine == &coarse) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      s += std::norm(u.x(i) - w.x(i)) + std::norm(u.y(i) - w.y(i));
    }
    return fine.box_length() * std::sqrt(s);
  }
  if (coarse.kmax() > fine.kmax() || coarse.box_length() != fine.box_length()) {
    throw std::invalid_argument("l2_distance: second field must live on a sub-lattice");
  }
  const auto modes = fine.modes();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Complex wx{}, wy{};
    const int j = coarse.index_of(modes[i].kx, modes[i].ky);
    if (j >= 0) {
      wx = w.x(static_cast<std::size_t>(j));
      wy = w.y(static_cast<std::size_t>(j));
    }
    s += std::norm(u.x(i) - wx) + std::norm(u.y(i) - wy);
  }
  return fine.box_length() * std::sqrt(s);
}

SpectralVelocity embed(const SpectralVelocity& u, LatticePtr fine) {
  const Lattice& coarse = u.lattice();
  if (coarse.kmax() > fine->kmax() || coarse.box_length() != fine->box_length()) {
    throw std::invalid_argument("embed: target lattice must refine the source");
  }
  SpectralVelocity out(std::move(fine));
  const auto modes = coarse.modes();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const int j = out.lattice().index_of(modes[i].kx, modes[i].ky);
    out.x(static_cast<std::size_t>(j)) = u.x(i);
    out.y(static_cast<std::size_t>(j)) = u.y(i);
  }
  return out;
}

SpectralVelocity shear_field(LatticePtr lat, double amplitude) {
  SpectralVelocity out(std::move(lat));
  const int ip = out.lattice().index_of(0, 1);
  const int im = out.lattice().index_of(0, -1);
  // sin(2 pi y/L) = (e^{i 2 pi y/L} - e^{-i 2 pi y/L}) / (2i)
  out.x(static_cast<std::size_t>(ip)) = Complex(0.0, -0.5 * amplitude);
  out.x(static_cast<std::size_t>(im)) = Complex(0.0, 0.5 * amplitude);
  return out;
}

SpectralVelocity taylor_green_field(LatticePtr lat, double amplitude) {
  SpectralVelocity out(std::move(lat));
  // u = (-d psi/dy, d psi/dx), psi = A cos(2 pi x/L) cos(2 pi y/L):
  // u = (A q cos(qx) sin(qy), -A q sin(qx) cos(qy)) with q = 2 pi / L.
  // cos a sin b = sum over the four (+-1,+-1) modes with weights sy/(4i),
  // sin a cos b with weights sx/(4i), sx = sign(kx), sy = sign(ky).
  const Lattice& l = out.lattice();
  const double q = 2.0 * std::numbers::pi / l.box_length();
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      const int i = l.index_of(sx, sy);
      const Complex w = Complex(0.0, -0.25) * (amplitude * q);
      out.x(static_cast<std::size_t>(i)) = static_cast<double>(sy) * w;
      out.y(static_cast<std::size_t>(i)) = -static_cast<double>(sx) * w;
    }
  }
  return out;
}

SpectralVelocity random_smooth_field(LatticePtr lat, std::uint64_t seed, double spectrum_decay,
                                     double l2_norm, double cutoff) {
  SpectralVelocity out(std::move(lat));
  const Lattice& l = out.lattice();
  if (cutoff == 0.0) cutoff = l.max_complete_shell();
  if (!l.valid_cutoff(cutoff)) {
    throw std::invalid_argument("random_smooth_field: invalid cutoff");
  }
  const double bound = cutoff * (1.0 + 1e-12);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto modes = l.modes();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Mode m = modes[i];
    if (!(m.ky > 0 || (m.ky == 0 && m.kx > 0))) continue;  // one draw per +-k pair
    if (l.lambda(i) > bound) continue;
    const double n = m.kx * m.kx + m.ky * m.ky;
    const double mag = std::pow(1.0 + n, -0.5 * spectrum_decay);
    const double phase = 2.0 * std::numbers::pi * unif(rng);
    const Complex a = mag * Complex(std::cos(phase), std::sin(phase));
    const double knorm = std::sqrt(n);
    // Solenoidal direction k-perp / |k|.
    const Complex ux = a * (-m.ky / knorm);
    const Complex uy = a * (m.kx / knorm);
    out.x(i) = ux;
    out.y(i) = uy;
    const std::size_t j = l.conjugate_index(i);
    out.x(j) = std::conj(ux);
    out.y(j) = std::conj(uy);
  }
  const double cur = norm_l2(out);
  if (cur > 0.0 && l2_norm > 0.0) out *= l2_norm / cur;
  return out;
}

SpectralVelocity single_shell_field(LatticePtr lat, int shell, double l2_norm) {
  SpectralVelocity out(std::move(lat));
  const Lattice& l = out.lattice();
  if (sum_of_two_squares_count(shell) == 0 || !l.valid_cutoff(l.lambda1() * shell)) {
    throw std::invalid_argument("single_shell_field: not a complete shell of this lattice");
  }
  const auto modes = l.modes();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Mode m = modes[i];
    if (m.kx * m.kx + m.ky * m.ky != shell) continue;
    if (!(m.ky > 0 || (m.ky == 0 && m.kx > 0))) continue;
    const double knorm = std::sqrt(static_cast<double>(shell));
    const Complex ux = Complex(-m.ky / knorm, 0.0);
    const Complex uy = Complex(m.kx / knorm, 0.0);
    out.x(i) = ux;
    out.y(i) = uy;
    const std::size_t j = l.conjugate_index(i);
    out.x(j) = std::conj(ux);
    out.y(j) = std::conj(uy);
  }
  const double cur = norm_l2(out);
  if (cur > 0.0 && l2_norm > 0.0) out *= l2_norm / cur;
  return out;
}

}  // namespace alphaflow

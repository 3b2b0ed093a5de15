#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace pairwise {

/// A finite real or complex value. Every matrix entry in every catalog group
/// is stored as a Scalar; real values simply carry im == 0.
class Scalar {
 public:
  constexpr Scalar() = default;
  Scalar(double re) : Scalar(re, 0.0) {}  // NOLINT(google-explicit-constructor)
  Scalar(double re, double im) : re_(re), im_(im) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw Error(Errc::NonFinite, "scalar components must be finite");
    }
    // -0.0 in either slot would flip the principal argument of negative reals.
    if (re_ == 0.0) re_ = 0.0;
    if (im_ == 0.0) im_ = 0.0;
  }
  Scalar(std::complex<double> z) : Scalar(z.real(), z.imag()) {}  // NOLINT

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  bool is_real() const noexcept { return im_ == 0.0; }
  bool is_zero() const noexcept { return re_ == 0.0 && im_ == 0.0; }
  std::complex<double> complex() const noexcept { return {re_, im_}; }
  double abs() const noexcept { return std::hypot(re_, im_); }

  friend bool operator==(const Scalar&, const Scalar&) = default;

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_real() && b.is_real()) return Scalar(a.re_ * b.re_);
    return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.is_real() && b.is_real()) return Scalar(a.re_ / b.re_);
    return Scalar(a.complex() / b.complex());
  }

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

/// Principal argument in (-pi, pi]; negative reals map to +pi.
inline double principal_arg(const Scalar& z) {
  if (z.is_real()) return z.re() < 0.0 ? std::numbers::pi : 0.0;
  return std::atan2(z.im(), z.re());
}

/// Components that are roundoff relative to |z| are flushed to exact zero,
/// so values such as exp(i*pi) land on the real axis.
inline Scalar snap_to_axes(std::complex<double> z, double rel = 1e-12) {
  const double mag = std::abs(z);
  double re = z.real();
  double im = z.imag();
  if (std::abs(re) <= rel * mag) re = 0.0;
  if (std::abs(im) <= rel * mag) im = 0.0;
  return {re, im};
}

/// Principal-branch logarithm; exact real log on the positive axis.
inline Scalar principal_log(const Scalar& z) {
  if (z.is_zero()) throw Error(Errc::ZeroEntry, "logarithm of zero");
  if (z.is_real() && z.re() > 0.0) return Scalar(std::log(z.re()));
  return Scalar(std::log(z.abs()), principal_arg(z));
}

inline Scalar exponential(const Scalar& a) {
  if (a.is_real()) return Scalar(std::exp(a.re()));
  return snap_to_axes(std::exp(a.complex()));
}

/// All n complex n-th roots of p, e^{(theta + 2k pi) i / n} |p|^{1/n} for
/// k = 0..n-1, where theta is the principal argument of p.
inline std::vector<Scalar> nth_roots(const Scalar& p, int n) {
  if (n < 1) throw Error(Errc::BadShape, "root degree must be positive");
  if (p.is_zero()) throw Error(Errc::ZeroEntry, "roots of zero");
  const double radius = std::pow(p.abs(), 1.0 / n);
  const double theta = principal_arg(p);
  std::vector<Scalar> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = (theta + 2.0 * std::numbers::pi * k) / n;
    roots.push_back(snap_to_axes(std::polar(radius, angle)));
  }
  return roots;
}

inline bool near_abs(const Scalar& a, const Scalar& b, double tol) {
  return std::abs(a.re() - b.re()) <= tol && std::abs(a.im() - b.im()) <= tol;
}

inline bool near_rel(const Scalar& a, const Scalar& b, double tol) {
  return (a - b).abs() <= tol * std::max(a.abs(), b.abs());
}

namespace detail {

inline std::string format_double(double x, int significant) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::to_chars_result res = significant > 0
      ? std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, significant)
      : std::to_chars(buf, buf + sizeof buf, x);
  std::string out(buf, res.ptr);
  if (out == "-0") out = "0";
  return out;
}

// Parses a decimal at the front of text (optional leading sign). Returns the
// number of characters consumed, 0 on failure.
inline std::size_t parse_decimal(std::string_view text, double& out) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos >= text.size() || !(std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
    return 0;
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
  if (ec != std::errc()) return 0;
  out = negative ? -value : value;
  return static_cast<std::size_t>(ptr - text.data());
}

}  // namespace detail

/// Renders a scalar as "a", "a+bi" or "a-bi". significant == 0 selects the
/// shortest representation that parses back to the same doubles.
inline std::string format_scalar(const Scalar& z, int significant = 0) {
  std::string re = detail::format_double(z.re(), significant);
  if (z.is_real()) return re;
  std::string im = detail::format_double(z.im(), significant);
  if (im.front() != '-') im.insert(im.begin(), '+');
  return re + im + "i";
}

/// Parses "a", "bi", "a+bi", "a-bi" (with "i" alone meaning 1i).
inline Scalar parse_scalar(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error(Errc::ParseError, "cannot parse scalar '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw fail();

  auto unit_imag = [](std::string_view s, double& out) -> bool {
    if (s == "i" || s == "+i") { out = 1.0; return true; }
    if (s == "-i") { out = -1.0; return true; }
    return false;
  };

  double im = 0.0;
  if (unit_imag(text, im)) return {0.0, im};

  double first = 0.0;
  const std::size_t used = detail::parse_decimal(text, first);
  if (used == 0) throw fail();
  std::string_view rest = text.substr(used);
  try {
    if (rest.empty()) return Scalar(first);
    if (rest == "i") return Scalar(0.0, first);
    if (rest.front() != '+' && rest.front() != '-') throw fail();
    if (rest.back() != 'i') throw fail();
    std::string_view imag_text = rest.substr(0, rest.size() - 1);
    if (unit_imag(std::string_view(rest), im)) return Scalar(first, im);
    const std::size_t imag_used = detail::parse_decimal(imag_text, im);
    if (imag_used == 0 || imag_used != imag_text.size()) throw fail();
    return Scalar(first, im);
  } catch (const Error& e) {
    if (e.code() == Errc::NonFinite) throw fail();
    throw;
  }
}

}  // namespace pairwise

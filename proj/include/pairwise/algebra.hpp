#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scalar.hpp"

namespace pairwise {

/// Absolute per-component tolerance for "a^m equals the identity".
inline constexpr double kTorsionTolerance = 1e-9;

enum class GroupKind {
  PositiveReals,
  NonzeroReals,
  NonzeroComplex,
  CyclicRootsOfUnity,
  AdditiveReals,
};

/// One of the catalog structures a PC matrix can draw entries from. All
/// catalog groups are abelian; the flag is kept so the orderability gate
/// reads as "abelian and torsion-free".
class GroupDescriptor {
 public:
  static GroupDescriptor positive_reals() { return GroupDescriptor(GroupKind::PositiveReals, 0); }
  static GroupDescriptor nonzero_reals() { return GroupDescriptor(GroupKind::NonzeroReals, 0); }
  static GroupDescriptor nonzero_complex() { return GroupDescriptor(GroupKind::NonzeroComplex, 0); }
  static GroupDescriptor additive_reals() { return GroupDescriptor(GroupKind::AdditiveReals, 0); }
  static GroupDescriptor cyclic_roots_of_unity(int n) {
    if (n < 1) throw Error(Errc::UnknownGroup, "CyclicRootsOfUnity requires n >= 1");
    return GroupDescriptor(GroupKind::CyclicRootsOfUnity, n);
  }

  GroupKind kind() const noexcept { return kind_; }
  /// n for CyclicRootsOfUnity(n), 0 otherwise.
  int cyclic_order() const noexcept { return cyclic_n_; }
  bool abelian() const noexcept { return true; }
  bool multiplicative() const noexcept { return kind_ != GroupKind::AdditiveReals; }

  std::string name() const {
    switch (kind_) {
      case GroupKind::PositiveReals: return "PositiveReals";
      case GroupKind::NonzeroReals: return "NonzeroReals";
      case GroupKind::NonzeroComplex: return "NonzeroComplex";
      case GroupKind::CyclicRootsOfUnity: return "CyclicRootsOfUnity(" + std::to_string(cyclic_n_) + ")";
      case GroupKind::AdditiveReals: return "AdditiveReals";
    }
    return {};
  }

  Scalar identity() const { return multiplicative() ? Scalar(1.0) : Scalar(0.0); }

  Scalar op(const Scalar& a, const Scalar& b) const {
    if (!multiplicative()) return a + b;
    Scalar product = a * b;
    if (kind_ == GroupKind::CyclicRootsOfUnity && !product.is_real()) {
      return snap_to_axes(product.complex());
    }
    return product;
  }

  Scalar inverse(const Scalar& a) const {
    if (!multiplicative()) return -a;
    if (a.is_zero()) throw Error(Errc::NonMember, "zero has no multiplicative inverse");
    return Scalar(1.0) / a;
  }

  /// a composed with itself m times (m >= 1).
  Scalar power(const Scalar& a, int m) const {
    Scalar acc = a;
    for (int k = 1; k < m; ++k) acc = op(acc, a);
    return acc;
  }

  bool contains(const Scalar& a) const {
    switch (kind_) {
      case GroupKind::PositiveReals: return a.is_real() && a.re() > 0.0;
      case GroupKind::NonzeroReals: return a.is_real() && a.re() != 0.0;
      case GroupKind::NonzeroComplex: return !a.is_zero();
      case GroupKind::AdditiveReals: return a.is_real();
      case GroupKind::CyclicRootsOfUnity:
        if (std::abs(a.abs() - 1.0) > kTorsionTolerance) return false;
        return near_abs(power(a, cyclic_n_), Scalar(1.0), kTorsionTolerance);
    }
    return false;
  }

  /// Elements of a finite catalog group in angular order; empty for the
  /// infinite groups.
  std::vector<Scalar> carrier() const {
    if (kind_ != GroupKind::CyclicRootsOfUnity) return {};
    return nth_roots(Scalar(1.0), cyclic_n_);
  }

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  GroupDescriptor(GroupKind kind, int n) : kind_(kind), cyclic_n_(n) {}

  GroupKind kind_;
  int cyclic_n_;
};

/// Accepts the names produced by GroupDescriptor::name() and the shell
/// friendly spelling "CyclicRootsOfUnity:n".
inline GroupDescriptor parse_group(std::string_view text) {
  if (text == "PositiveReals") return GroupDescriptor::positive_reals();
  if (text == "NonzeroReals") return GroupDescriptor::nonzero_reals();
  if (text == "NonzeroComplex") return GroupDescriptor::nonzero_complex();
  if (text == "AdditiveReals") return GroupDescriptor::additive_reals();
  constexpr std::string_view cyclic = "CyclicRootsOfUnity";
  if (text.starts_with(cyclic)) {
    std::string_view rest = text.substr(cyclic.size());
    if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') {
      rest = rest.substr(1, rest.size() - 2);
    } else if (!rest.empty() && rest.front() == ':') {
      rest.remove_prefix(1);
    } else {
      rest = {};
    }
    int n = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (!rest.empty() && ec == std::errc() && ptr == rest.data() + rest.size() && n >= 1) {
      return GroupDescriptor::cyclic_roots_of_unity(n);
    }
  }
  throw Error(Errc::UnknownGroup, "unknown group '" + std::string(text) + "'");
}

/// The five catalog structures; the cyclic group is instantiated at the
/// requested order.
inline std::vector<GroupDescriptor> group_catalog(int roots_of_unity_order = 2) {
  return {
      GroupDescriptor::positive_reals(),
      GroupDescriptor::nonzero_reals(),
      GroupDescriptor::nonzero_complex(),
      GroupDescriptor::cyclic_roots_of_unity(roots_of_unity_order),
      GroupDescriptor::additive_reals(),
  };
}

struct TorsionWitness {
  Scalar element;
  int order = 0;
};

struct OrderabilityVerdict {
  bool orderable = false;
  std::optional<TorsionWitness> witness;
  std::string reason;
};

/// Least m in [1, max_m] with a^m = e, or nullopt when no such m exists in
/// that range.
inline std::optional<int> element_order(const GroupDescriptor& g, const Scalar& a, int max_m) {
  if (!g.contains(a)) {
    throw Error(Errc::NonMember, format_scalar(a) + " is not a member of " + g.name());
  }
  if (max_m < 1) throw Error(Errc::BadSize, "max_m must be positive");
  const Scalar e = g.identity();
  Scalar acc = a;
  for (int m = 1; m <= max_m; ++m) {
    if (near_abs(acc, e, kTorsionTolerance)) return m;
    acc = g.op(acc, a);
  }
  return std::nullopt;
}

/// Catalog-driven torsion search: each group either ships its known element
/// of finite order or is torsion-free by construction.
inline std::optional<TorsionWitness> find_torsion_witness(const GroupDescriptor& g) {
  std::optional<TorsionWitness> witness;
  switch (g.kind()) {
    case GroupKind::PositiveReals:
    case GroupKind::AdditiveReals:
      return std::nullopt;
    case GroupKind::NonzeroReals:
      witness = TorsionWitness{Scalar(-1.0), 2};
      break;
    case GroupKind::NonzeroComplex:
      witness = TorsionWitness{Scalar(0.0, 1.0), 4};
      break;
    case GroupKind::CyclicRootsOfUnity:
      if (g.cyclic_order() < 2) return std::nullopt;
      witness = TorsionWitness{g.carrier().at(1), g.cyclic_order()};
      break;
  }
  if (element_order(g, witness->element, witness->order) != witness->order) {
    throw std::logic_error("catalog torsion witness failed verification for " + g.name());
  }
  return witness;
}

/// Abelian groups admit a linear order exactly when they are torsion-free.
inline OrderabilityVerdict check_orderability(const GroupDescriptor& g) {
  if (!g.abelian()) return {false, std::nullopt, "non-abelian"};
  if (auto witness = find_torsion_witness(g)) {
    return {false, witness,
            "element " + format_scalar(witness->element, 12) + " has finite order " +
                std::to_string(witness->order)};
  }
  return {true, std::nullopt, "abelian and torsion-free"};
}

using Comparator = std::function<std::partial_ordering(const Scalar&, const Scalar&)>;

/// The usual order on the real line; complex values are unordered.
inline std::partial_ordering standard_order(const Scalar& a, const Scalar& b) {
  if (!a.is_real() || !b.is_real()) return std::partial_ordering::unordered;
  return a.re() <=> b.re();
}

struct OrderTriple {
  Scalar a;
  Scalar b;
  Scalar c;
};

/// Draws a random member of g. Distributions are chosen so products stay
/// well inside double range.
inline Scalar sample_member(const GroupDescriptor& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  switch (g.kind()) {
    case GroupKind::PositiveReals:
      return Scalar(std::exp(5.0 * unit(rng)));
    case GroupKind::NonzeroReals: {
      const double magnitude = std::exp(5.0 * unit(rng));
      return Scalar(unit(rng) < 0.0 ? -magnitude : magnitude);
    }
    case GroupKind::NonzeroComplex:
      return Scalar(std::polar(std::exp(3.0 * unit(rng)), std::numbers::pi * unit(rng)));
    case GroupKind::CyclicRootsOfUnity: {
      std::uniform_int_distribution<int> pick(0, g.cyclic_order() - 1);
      return g.carrier().at(static_cast<std::size_t>(pick(rng)));
    }
    case GroupKind::AdditiveReals:
      return Scalar(100.0 * unit(rng));
  }
  return g.identity();
}

/// Searches for a violation of translation invariance (A <= B but
/// A.C > B.C). The explicit triples are tried first, in order, followed by
/// `samples` random member triples drawn from a generator seeded with `seed`.
inline std::optional<OrderTriple> order_axiom_check(const GroupDescriptor& g, const Comparator& order,
                                                    int samples, std::uint64_t seed,
                                                    std::span<const OrderTriple> explicit_triples = {}) {
  auto compare = [&](const Scalar& x, const Scalar& y) {
    const std::partial_ordering result = order(x, y);
    if (result == std::partial_ordering::unordered) {
      throw Error(Errc::NotTotallyOrdered,
                  "comparator undefined on (" + format_scalar(x) + ", " + format_scalar(y) + ")");
    }
    return result;
  };
  auto violates = [&](const OrderTriple& t) {
    for (const Scalar* s : {&t.a, &t.b, &t.c}) {
      if (!g.contains(*s)) throw Error(Errc::NonMember, format_scalar(*s) + " is not in " + g.name());
    }
    if (compare(t.a, t.b) == std::partial_ordering::greater) return false;
    return compare(g.op(t.a, t.c), g.op(t.b, t.c)) == std::partial_ordering::greater;
  };

  for (const OrderTriple& t : explicit_triples) {
    if (violates(t)) return t;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    OrderTriple t{sample_member(g, rng), sample_member(g, rng), sample_member(g, rng)};
    if (violates(t)) return t;
  }
  return std::nullopt;
}

}  // namespace pairwise

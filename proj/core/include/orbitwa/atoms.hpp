#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbitwa/rational.hpp"

namespace orbitwa
{

enum class AtomKind
{
  Equality, // (N, =)
  Ordered   // (Q, <)
};

std::string_view to_string(AtomKind kind);
std::optional<AtomKind> parse_atom_kind(std::string_view text);

/// An atom, represented by its value. Algorithms only ever compare atoms for
/// equality (and order, for AtomKind::Ordered).
class Atom
{
public:
  Atom() = default;
  explicit Atom(Rational value) : _value(std::move(value)) {}
  explicit Atom(long value) : _value(value) {}

  Rational const &value() const { return _value; }

  friend bool operator==(Atom const &lhs, Atom const &rhs)
  { return lhs._value == rhs._value; }

  friend std::strong_ordering operator<=>(Atom const &lhs, Atom const &rhs)
  { return cmp(lhs._value, rhs._value) <=> 0; }

private:
  Rational _value;
};

std::string to_string(Atom const &atom);

/// A tuple position or register content; std::nullopt is the empty marker ⊥.
using Slot = std::optional<Atom>;
using Tuple = std::vector<Slot>;

std::string to_string(Slot const &slot);

/// Atoms 1..m, the canonical pool used for restrictions and enumerations.
std::vector<Atom> canonical_pool(std::size_t m);

/// Orbit of a tuple under the automorphisms that fix a support tuple pointwise.
///
/// Non-⊥ positions are grouped into classes of equal values. Each class is
/// either pinned to a support atom or fresh; for ordered atoms a fresh class
/// also records the gap it falls in (the number of support atoms below it),
/// and classes are listed in increasing value order. For equality atoms
/// classes are listed in order of first occurrence. The resulting data is
/// canonical: two tuples get equal OrbitTypes iff they lie in the same orbit.
class OrbitType
{
public:
  struct ValueClass
  {
    std::optional<std::size_t> pin;
    std::size_t gap = 0;

    friend auto operator<=>(ValueClass const &, ValueClass const &) = default;
  };

  OrbitType(AtomKind kind,
            std::size_t support_size,
            std::vector<std::optional<std::size_t>> positions,
            std::vector<ValueClass> classes)
  : _kind(kind), _support_size(support_size),
    _positions(std::move(positions)), _classes(std::move(classes))
  {}

  AtomKind kind() const { return _kind; }
  std::size_t arity() const { return _positions.size(); }
  std::size_t support_size() const { return _support_size; }

  bool is_bottom(std::size_t position) const
  { return !_positions[position].has_value(); }

  /// Class index of a non-⊥ position.
  std::size_t class_of(std::size_t position) const
  { return *_positions.at(position); }

  std::vector<ValueClass> const &classes() const { return _classes; }

  /// Positions (0-based) of each class, in class order.
  std::vector<std::vector<std::size_t>> blocks() const;

  /// Human-readable rendering, e.g. "{1,2},{3}" or "pos2 = support-atom-1 < pos1".
  /// The ordered rendering assumes the support was given in increasing order.
  std::string describe() const;

  friend bool operator==(OrbitType const &, OrbitType const &) = default;
  friend auto operator<=>(OrbitType const &, OrbitType const &) = default;

private:
  AtomKind _kind;
  std::size_t _support_size;
  std::vector<std::optional<std::size_t>> _positions;
  std::vector<ValueClass> _classes;
};

/// Throws InvalidInput if the support contains duplicates.
OrbitType orbit_type(AtomKind kind, std::span<Slot const> tuple, std::span<Atom const> support);

bool same_orbit(AtomKind kind,
                std::span<Slot const> lhs,
                std::span<Slot const> rhs,
                std::span<Atom const> support);

/// All tuples in (pool ∪ {⊥})^k, or pool^k; ⊥ sorts first, then pool order,
/// with the first position most significant.
std::vector<Tuple> enumerate_valuations(AtomKind kind,
                                        std::size_t k,
                                        std::span<Atom const> pool,
                                        bool allow_bot);

/// Number of equivariant orbits of (A ∪ {⊥})^k.
std::uint64_t count_register_types(AtomKind kind, std::size_t k);

/// One representative per equivariant orbit of (A ∪ {⊥})^k (with ⊥ allowed
/// only where `allow_bot[i]` is set), drawn from the canonical pool.
std::vector<Tuple> orbit_representatives(AtomKind kind, std::vector<bool> const &allow_bot);

} // namespace orbitwa

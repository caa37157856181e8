#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitwa/automaton.hpp"

namespace orbitwa
{

/// Maximal length of a differentiating word, which is also the number of
/// atoms that suffices: n·(1+k)! (ordered) or n·k!·(1+k)! (equality).
struct LengthBoundReport
{
  AtomKind kind = AtomKind::Equality;
  std::uint64_t orbit_count = 0;
  std::size_t atom_dimension = 0;
  std::uint64_t bound = 0;
  std::string formula;
};

/// Throws std::overflow_error if the bound does not fit in 64 bits.
LengthBoundReport length_bound(AtomKind kind, std::uint64_t orbit_count, std::size_t atom_dimension);

/// |controls| · (number of orbits of (A ∪ {⊥})^k).
std::uint64_t state_orbit_count(WeightedRegisterAutomaton const &automaton);

inline constexpr std::size_t default_state_ceiling = 200000;

struct DecisionOptions
{
  /// Number of atoms to restrict to; defaults to the length bound.
  std::optional<std::size_t> atom_budget;
  std::size_t state_ceiling = default_state_ceiling;
};

struct ZeronessDecision
{
  bool zero = true;
  std::optional<Word> witness;
  LengthBoundReport bound;
  std::size_t atoms_used = 0;
  std::vector<Atom> support;
  /// States of the restriction, and how many of them the exploration reached.
  /// Transitions are only built for reached states.
  std::size_t restricted_states = 0;
  std::size_t explored_states = 0;
  std::size_t restricted_letters = 0;
  std::size_t forward_dimension = 0;

  bool equivalent() const { return zero; }
};

using EquivalenceDecision = ZeronessDecision;

/// Restricts to the canonical support 1..ℓ and runs the finite forward-space
/// check. Throws ResourceLimitExceeded when the restriction would have more
/// than options.state_ceiling states.
ZeronessDecision decide_zeroness(WeightedRegisterAutomaton const &automaton,
                                 DecisionOptions const &options = {});

/// decide_zeroness(difference(lhs, rhs)); the witness uses the tag indices of the difference automaton,
/// which start with the tags of lhs.
EquivalenceDecision decide_equivalence(WeightedRegisterAutomaton const &lhs,
                                       WeightedRegisterAutomaton const &rhs,
                                       DecisionOptions const &options = {});

} // namespace orbitwa

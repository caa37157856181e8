#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orbitwa/automaton.hpp"
#include "orbitwa/equivalence.hpp"

namespace orbitwa
{

struct NondetRule
{
  std::size_t from = 0;
  std::size_t tag = 0;
  std::size_t to = 0;
  Guard guard;
  Update update;

  friend bool operator==(NondetRule const &, NondetRule const &) = default;
};

struct AcceptRule
{
  std::size_t control = 0;
  Guard guard; // over source registers

  friend bool operator==(AcceptRule const &, AcceptRule const &) = default;
};

/// Nondeterministic register automaton in the same presentation as
/// WeightedRegisterAutomaton, without weights. Initial controls start at the
/// all-⊥ valuation. A concrete transition exists iff at least one rule fires
/// on it; several rules firing on the same triple denote one transition.
struct NondetRegisterAutomaton
{
  AtomKind kind = AtomKind::Equality;
  std::size_t registers = 0;
  std::vector<std::string> controls;
  std::vector<std::string> tags;
  std::vector<bool> initial;
  std::vector<NondetRule> transitions;
  std::vector<AcceptRule> accepting;

  std::size_t add_control(std::string name, bool is_initial = false);
  std::size_t add_tag(std::string name);
  void add_transition(std::size_t from, std::size_t tag, std::size_t to, Guard guard, Update update);
  void add_accepting(std::size_t control, Guard guard = {});

  friend bool operator==(NondetRegisterAutomaton const &, NondetRegisterAutomaton const &) = default;
};

std::vector<std::string> validate(NondetRegisterAutomaton const &automaton);

/// Weighted automaton mapping each word to its number of accepting runs.
///
/// Rules are expanded over the orbits of (r1..rk, a) so that every concrete
/// transition gets weight exactly 1, however many rules denote it. Throws
/// InvalidInput on a guessing update or any other validation failure.
WeightedRegisterAutomaton to_counting_weighted(NondetRegisterAutomaton const &automaton);

/// Every word over tags × pool of length ≤ max_length with at least two
/// accepting runs, shortest first. An empty result proves nothing beyond the sample.
std::vector<Word> check_ambiguity_sampled(NondetRegisterAutomaton const &automaton,
                                          std::span<Atom const> pool,
                                          std::size_t max_length);

struct UnambiguousOptions
{
  DecisionOptions decision;
  std::size_t sample_atoms = 3;
  std::size_t sample_length = 3;
};

struct UnambiguousDecision
{
  EquivalenceDecision decision;
  /// Non-empty when an input was found to be ambiguous; the verdict then
  /// compares run counts, not languages.
  std::vector<std::string> warnings;

  bool equivalent() const { return decision.equivalent(); }
};

/// Language equivalence of unambiguous non-guessing register automata via
/// run counting. Unambiguity is the caller's promise; a sampled check attaches
/// warnings when it is broken.
UnambiguousDecision unambiguous_equivalence(NondetRegisterAutomaton const &lhs,
                                            NondetRegisterAutomaton const &rhs,
                                            UnambiguousOptions const &options = {});

} // namespace orbitwa

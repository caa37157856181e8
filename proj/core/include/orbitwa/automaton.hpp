#pragma once

#include <compare>
#include <map>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitwa/atoms.hpp"
#include "orbitwa/finite_weighted.hpp"
#include "orbitwa/rational.hpp"
#include "orbitwa/vectors.hpp"

namespace orbitwa
{

// Guard language ------------------------------------------------------------

/// r1..rk (source registers), a (input atom), r'1..r'k (target registers).
struct Variable
{
  enum class Role { Source, Input, Target };

  Role role = Role::Input;
  std::size_t index = 0; // 0-based register index; unused for Input

  friend auto operator<=>(Variable const &, Variable const &) = default;
};

inline Variable source(std::size_t register_number) { return {Variable::Role::Source, register_number - 1}; }
inline Variable input() { return {Variable::Role::Input, 0}; }
inline Variable target(std::size_t register_number) { return {Variable::Role::Target, register_number - 1}; }

std::string to_string(Variable const &v);

enum class Predicate { Eq, Neq, Lt, IsBot, NotBot };

/// Comparisons involving ⊥ are false; is_bot is the only way to observe ⊥.
struct Literal
{
  Predicate predicate = Predicate::Eq;
  Variable lhs;
  Variable rhs; // ignored by IsBot / NotBot

  bool binary() const
  { return predicate == Predicate::Eq || predicate == Predicate::Neq || predicate == Predicate::Lt; }

  friend auto operator<=>(Literal const &, Literal const &) = default;
};

inline Literal eq(Variable x, Variable y) { return {Predicate::Eq, x, y}; }
inline Literal neq(Variable x, Variable y) { return {Predicate::Neq, x, y}; }
inline Literal lt(Variable x, Variable y) { return {Predicate::Lt, x, y}; }
inline Literal is_bot(Variable x) { return {Predicate::IsBot, x, x}; }
inline Literal not_bot(Variable x) { return {Predicate::NotBot, x, x}; }

/// A conjunction of literals; the empty guard is true.
using Guard = std::vector<Literal>;

/// Values the guard variables are bound to. `input` may be null for final guards.
struct Binding
{
  std::span<Slot const> source;
  Atom const *input = nullptr;
  std::span<Slot const> target;
};

bool holds(Guard const &guard, Binding const &binding);

/// Guard satisfied exactly by the tuples in the orbit of `values`, which binds
/// the variables `vars` in order. Used to turn orbit enumerations back into rules.
Guard orbit_guard(AtomKind kind, std::span<Variable const> vars, std::span<Slot const> values);

// Automaton -----------------------------------------------------------------

/// Where a target register takes its content from.
struct RegisterSource
{
  enum class Kind
  {
    Register, // r'_i := r_j
    Input,    // r'_i := a
    Bot,      // r'_i := ⊥
    Guess     // r'_i := any atom; representable only so that it can be rejected
  };

  Kind kind = Kind::Bot;
  std::size_t index = 0; // source register (0-based) for Kind::Register

  friend auto operator<=>(RegisterSource const &, RegisterSource const &) = default;
};

inline RegisterSource keep(std::size_t register_number) { return {RegisterSource::Kind::Register, register_number - 1}; }
inline RegisterSource store_input() { return {RegisterSource::Kind::Input, 0}; }
inline RegisterSource clear() { return {RegisterSource::Kind::Bot, 0}; }

using Update = std::vector<RegisterSource>;

/// Identity update on k registers.
Update keep_all(std::size_t k);

struct TransitionRule
{
  std::size_t from = 0;
  std::size_t tag = 0;
  std::size_t to = 0;
  Guard guard;
  Update update;
  Rational weight;

  friend bool operator==(TransitionRule const &, TransitionRule const &) = default;
};

struct FinalRule
{
  std::size_t control = 0;
  Guard guard; // over source registers only
  Rational weight;

  friend bool operator==(FinalRule const &, FinalRule const &) = default;
};

/// A weighted register automaton: finitely many copies (controls) of
/// (A ∪ {⊥})^k as states, letters tag × A, and transition/final weights given
/// by guarded rules. Rules firing on the same concrete triple add up.
/// Initial weights sit at the all-⊥ valuation of each control.
struct WeightedRegisterAutomaton
{
  AtomKind kind = AtomKind::Equality;
  std::size_t registers = 0;
  std::vector<std::string> controls;
  std::vector<std::string> tags;
  std::vector<Rational> initial; // one entry per control
  std::vector<TransitionRule> transitions;
  std::vector<FinalRule> finals;

  std::size_t add_control(std::string name, Rational initial_weight = 0);
  std::size_t add_tag(std::string name);
  void add_transition(std::size_t from, std::size_t tag, std::size_t to,
                      Guard guard, Update update, Rational weight);
  void add_final(std::size_t control, Guard guard, Rational weight);

  std::optional<std::size_t> find_control(std::string_view name) const;
  std::optional<std::size_t> find_tag(std::string_view name) const;

  friend bool operator==(WeightedRegisterAutomaton const &, WeightedRegisterAutomaton const &) = default;
};

struct ConcreteState
{
  std::size_t control = 0;
  Tuple registers;

  friend bool operator==(ConcreteState const &, ConcreteState const &) = default;
  friend auto operator<=>(ConcreteState const &, ConcreteState const &) = default;
};

struct Letter
{
  std::size_t tag = 0;
  Atom atom;

  friend bool operator==(Letter const &, Letter const &) = default;
  friend auto operator<=>(Letter const &, Letter const &) = default;
};

using Word = std::vector<Letter>;
using Configuration = FinVec<ConcreteState>;

/// Human-readable violations of the model's invariants; empty iff valid.
std::vector<std::string> validate(WeightedRegisterAutomaton const &automaton);

/// Throws InvalidInput listing the diagnostics if validate() fails.
void require_valid(WeightedRegisterAutomaton const &automaton);

ConcreteState initial_state(WeightedRegisterAutomaton const &automaton, std::size_t control);

/// Successors with nonzero combined weight, ordered by state.
std::vector<std::pair<ConcreteState, Rational>>
step(WeightedRegisterAutomaton const &automaton, ConcreteState const &state, Letter const &letter);

Rational final_weight(WeightedRegisterAutomaton const &automaton, ConcreteState const &state);

/// Sum of run weights, by depth-first enumeration of all runs.
Rational oracle_weight(WeightedRegisterAutomaton const &automaton, std::span<Letter const> word);

Configuration initial_configuration(WeightedRegisterAutomaton const &automaton);

/// Configuration after one more letter.
Configuration advance(WeightedRegisterAutomaton const &automaton,
                      Configuration const &configuration,
                      Letter const &letter);

/// Pre-weights of runs over `word` by end state. Throws InvalidInput if the
/// word uses an atom outside `pool`.
Configuration configuration(WeightedRegisterAutomaton const &automaton,
                            std::span<Letter const> word,
                            std::span<Atom const> pool);

/// F extended linearly to configurations.
Rational final_weight(WeightedRegisterAutomaton const &automaton, Configuration const &configuration);

/// Finite automaton whose states are controls × (support ∪ {⊥})^k and whose
/// letters are tags × support, with the labels of both.
struct RestrictedAutomaton
{
  std::size_t registers = 0;
  std::vector<ConcreteState> states;
  std::vector<Letter> letters;
  std::vector<Atom> support;
  std::map<Atom, std::size_t> support_position;

  std::size_t state_index(ConcreteState const &state) const;
  std::size_t letter_index(Letter const &letter) const;
};

/// Number of states restrict_to() would create, saturating at SIZE_MAX.
std::size_t restricted_state_count(WeightedRegisterAutomaton const &automaton, std::size_t support_size);

std::pair<FiniteWeightedAutomaton, RestrictedAutomaton>
restrict_to(WeightedRegisterAutomaton const &automaton, std::span<Atom const> support);

/// Disjoint union with negated final weights of `rhs`. Controls are renamed
/// with "1." / "2." prefixes, tags are merged by name and the register count
/// is padded with registers that always hold ⊥.
WeightedRegisterAutomaton difference(WeightedRegisterAutomaton const &lhs,
                                     WeightedRegisterAutomaton const &rhs);

/// Same automaton padded to `registers` registers; the new ones always hold ⊥.
WeightedRegisterAutomaton pad_registers(WeightedRegisterAutomaton automaton, std::size_t registers);

/// Render a word as "tag:atom,tag:atom".
std::string to_string(WeightedRegisterAutomaton const &automaton, std::span<Letter const> word);

} // namespace orbitwa

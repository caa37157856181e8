#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "orbitwa/automaton.hpp"
#include "orbitwa/finite_weighted.hpp"
#include "orbitwa/length_lab.hpp"
#include "orbitwa/unambiguous.hpp"

namespace testing
{

using namespace orbitwa;

using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 0x5eed2024;

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi); // inclusive
bool coin(Rng &rng, double p = 0.5);

/// Nonzero rational with small numerator and denominator.
Rational small_rational(Rng &rng);

// Hand-built automata ------------------------------------------------------

/// Number of distinct atoms in the word: controls wait (⊥) and hold (r1 = a).
WeightedRegisterAutomaton count_letters(Rational final_weight = 1);

/// aba ↦ 1, abb ↦ -1 for a ≠ b, everything else ↦ 0 (equality atoms, k = 2).
WeightedRegisterAutomaton does_not_minimize();

Word word_of(std::initializer_list<long> atoms, std::size_t tag = 0);

// Random generators ---------------------------------------------------------

struct AutomatonShape
{
  AtomKind kind = AtomKind::Equality;
  std::size_t registers = 1;
  std::size_t controls = 2;
  std::size_t tags = 1;
  std::size_t rules = 4;
  std::size_t finals = 2;
};

Guard random_guard(Rng &rng, AtomKind kind, std::size_t registers, bool transition);
Update random_update(Rng &rng, std::size_t registers);
WeightedRegisterAutomaton random_weighted(Rng &rng, AutomatonShape const &shape);

/// Same weighted language, different presentation (weight splits, guard
/// splits on ⊥, diagonal rescaling of a control, an unreachable control,
/// control reordering). Applies `steps` random transformations.
WeightedRegisterAutomaton equivalent_variant(Rng &rng, WeightedRegisterAutomaton a, std::size_t steps = 2);

/// Small random edit that usually changes the weighted language.
WeightedRegisterAutomaton perturb(Rng &rng, WeightedRegisterAutomaton a);

/// Deterministic register automaton: one initial control and, for each
/// (control, tag, complete type of registers and input), at most one rule.
NondetRegisterAutomaton random_deterministic(Rng &rng, AtomKind kind, std::size_t registers,
                                             std::size_t controls, std::size_t tags);

/// Same language, still unambiguous: dead branches, reordering, split guards.
NondetRegisterAutomaton unambiguous_variant(Rng &rng, NondetRegisterAutomaton n);

/// Flips acceptance of one type or retargets one rule; stays deterministic.
NondetRegisterAutomaton perturb(Rng &rng, NondetRegisterAutomaton n);

FiniteWeightedAutomaton random_finite(Rng &rng, std::size_t states, std::size_t letters, double density = 0.35);

SubsetVector random_subset_vector(Rng &rng, std::span<Atom const> atoms, std::size_t k, std::size_t terms);

FormSpec random_form(Rng &rng, AtomKind kind);

// Brute force ----------------------------------------------------------------

/// Every word over tags × pool of length ≤ max_length, shortest first.
std::vector<Word> all_words(std::size_t tags, std::span<Atom const> pool, std::size_t max_length);

/// Visits every word over tags × pool of length ≤ max_length in prefix order.
/// `visit(word)` returning false prunes the extensions of that word.
void for_each_word(std::size_t tags, std::span<Atom const> pool, std::size_t max_length,
                   std::function<bool(Word const &)> const &visit);

/// Weights of a finite automaton by dense products, independent of the library.
Rational dense_weight(FiniteWeightedAutomaton const &m, std::span<std::size_t const> word);

// Reference run semantics -----------------------------------------------------
//
// Built straight from the automaton fields with a separate guard evaluator,
// so that it shares no code with the library's step/advance.

namespace reference
{

using Value = std::optional<Rational>;

struct State
{
  std::size_t control;
  std::vector<Value> registers;

  friend auto operator<=>(State const &, State const &) = default;
};

using Config = std::map<State, Rational>;

bool satisfied(Guard const &guard, std::vector<Value> const &source, Value const &input,
               std::vector<Value> const &target);

Config start(WeightedRegisterAutomaton const &a);
Config next(WeightedRegisterAutomaton const &a, Config const &config, Letter const &letter);
Rational output(WeightedRegisterAutomaton const &a, Config const &config);
Rational weight(WeightedRegisterAutomaton const &a, std::span<Letter const> word);

/// Number of accepting runs; several rules denoting one transition count once.
Config start(NondetRegisterAutomaton const &n);
Config next(NondetRegisterAutomaton const &n, Config const &config, Letter const &letter);
Rational accepting_runs(NondetRegisterAutomaton const &n, Config const &config);
Rational accepting_runs(NondetRegisterAutomaton const &n, std::span<Letter const> word);
bool accepts(NondetRegisterAutomaton const &n, std::span<Letter const> word);

} // namespace reference

/// First word of length ≤ max_length over tags × pool on which the weights differ.
std::optional<Word> brute_force_difference(WeightedRegisterAutomaton const &lhs,
                                           WeightedRegisterAutomaton const &rhs,
                                           std::span<Atom const> pool,
                                           std::size_t max_length);

/// Same for languages, accepted or not.
std::optional<Word> brute_force_language_difference(NondetRegisterAutomaton const &lhs,
                                                    NondetRegisterAutomaton const &rhs,
                                                    std::span<Atom const> pool,
                                                    std::size_t max_length);

} // namespace testing

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "orbitwa/rational.hpp"
#include "orbitwa/vectors.hpp"

namespace orbitwa
{

using StateVector = FinVec<std::size_t>;

/// Square sparse matrix over Q; zero entries are not stored.
class SparseMatrix
{
public:
  explicit SparseMatrix(std::size_t dimension = 0) : _rows(dimension) {}

  std::size_t dimension() const { return _rows.size(); }

  void add(std::size_t row, std::size_t col, Rational const &weight);
  Rational at(std::size_t row, std::size_t col) const;
  std::map<std::size_t, Rational> const &row(std::size_t r) const { return _rows.at(r); }
  std::size_t nonzeros() const;

  /// v · M
  StateVector left_multiply(StateVector const &v) const;

  SparseMatrix transposed() const;

  friend bool operator==(SparseMatrix const &, SparseMatrix const &) = default;

private:
  std::vector<std::map<std::size_t, Rational>> _rows;
};

/// Explicit weighted automaton over Q: initial row vector, one transition
/// matrix per letter, final column vector. States and letters are indices.
class FiniteWeightedAutomaton
{
public:
  FiniteWeightedAutomaton() = default;
  FiniteWeightedAutomaton(std::size_t states, std::size_t letters);

  std::size_t state_count() const { return _states; }
  std::size_t letter_count() const { return _transitions.size(); }

  StateVector const &initial() const { return _initial; }
  StateVector const &final() const { return _final; }
  SparseMatrix const &transition(std::size_t letter) const { return _transitions.at(letter); }

  void set_initial(std::size_t state, Rational const &weight);
  void set_final(std::size_t state, Rational const &weight);
  void add_transition(std::size_t from, std::size_t letter, std::size_t to, Rational const &weight);

  void set_initial(StateVector v);
  void set_final(StateVector v);
  void set_transition(std::size_t letter, SparseMatrix m);

private:
  void check_state(std::size_t state) const;

  std::size_t _states = 0;
  StateVector _initial;
  std::vector<SparseMatrix> _transitions;
  StateVector _final;
};

namespace finite
{

/// initial · Π M_letter · final. Throws InvalidInput on an unknown letter.
Rational weight(FiniteWeightedAutomaton const &automaton, std::span<std::size_t const> word);

struct ZeronessResult
{
  bool zero = true;
  /// Shortest word with nonzero weight, when not zero.
  std::optional<std::vector<std::size_t>> witness;
  std::size_t forward_dimension = 0;
  /// BFS layers needed until the forward space stopped growing.
  std::size_t rounds = 0;
};

/// Forward-space (Schützenberger/Tzeng) zeroness check. The witness is globally
/// shortest: any nonzero word of length m implies a nonzero basis word of
/// length at most m.
ZeronessResult zeroness(FiniteWeightedAutomaton const &automaton);

/// Disjoint union of lhs and rhs with the final weights of rhs negated.
FiniteWeightedAutomaton difference(FiniteWeightedAutomaton const &lhs, FiniteWeightedAutomaton const &rhs);

/// zeroness(difference(lhs, rhs)). Throws InvalidInput if the letter counts differ.
ZeronessResult equivalence(FiniteWeightedAutomaton const &lhs, FiniteWeightedAutomaton const &rhs);

/// Restriction to the span of reachable configurations, in basis coordinates.
FiniteWeightedAutomaton forward_reduce(FiniteWeightedAutomaton const &automaton);

/// Reverse automaton: swaps initial/final and transposes every matrix.
FiniteWeightedAutomaton reverse(FiniteWeightedAutomaton const &automaton);

/// Minimal equivalent automaton: forward reduction followed by backward
/// reduction (forward reduction of the reverse).
FiniteWeightedAutomaton minimize(FiniteWeightedAutomaton const &automaton);

} // namespace finite

} // namespace orbitwa

#include "orbitwa/finite_weighted.hpp"

#include <numeric>
#include <string>

#include "orbitwa/error.hpp"
#include "orbitwa/forward_space.hpp"

namespace orbitwa
{

void SparseMatrix::add(std::size_t row, std::size_t col, Rational const &weight)
{
  if (row >= _rows.size() || col >= _rows.size())
    throw InvalidInput("matrix entry out of range");
  if (weight == 0)
    return;
  auto &r = _rows[row];
  auto [it, inserted] = r.try_emplace(col, weight);
  if (!inserted) {
    it->second += weight;
    if (it->second == 0)
      r.erase(it);
  }
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const
{
  auto const &r = _rows.at(row);
  auto it = r.find(col);
  return it == r.end() ? Rational(0) : it->second;
}

std::size_t SparseMatrix::nonzeros() const
{
  std::size_t n = 0;
  for (auto const &r : _rows)
    n += r.size();
  return n;
}

StateVector SparseMatrix::left_multiply(StateVector const &v) const
{
  StateVector result;
  for (auto const &[i, c] : v)
    for (auto const &[j, w] : _rows.at(i))
      result.add(j, c * w);
  return result;
}

SparseMatrix SparseMatrix::transposed() const
{
  SparseMatrix t(_rows.size());
  for (std::size_t i = 0; i < _rows.size(); ++i)
    for (auto const &[j, w] : _rows[i])
      t._rows[j].emplace(i, w);
  return t;
}

FiniteWeightedAutomaton::FiniteWeightedAutomaton(std::size_t states, std::size_t letters)
: _states(states), _transitions(letters, SparseMatrix(states))
{}

void FiniteWeightedAutomaton::check_state(std::size_t state) const
{
  if (state >= _states)
    throw InvalidInput("state " + std::to_string(state) + " out of range");
}

void FiniteWeightedAutomaton::set_initial(std::size_t state, Rational const &weight)
{
  check_state(state);
  _initial.add(state, weight - _initial.coeff(state));
}

void FiniteWeightedAutomaton::set_final(std::size_t state, Rational const &weight)
{
  check_state(state);
  _final.add(state, weight - _final.coeff(state));
}

void FiniteWeightedAutomaton::add_transition(std::size_t from, std::size_t letter, std::size_t to,
                                             Rational const &weight)
{
  if (letter >= _transitions.size())
    throw InvalidInput("letter " + std::to_string(letter) + " out of range");
  _transitions[letter].add(from, to, weight);
}

void FiniteWeightedAutomaton::set_initial(StateVector v)
{
  for (auto const &entry : v)
    check_state(entry.first);
  _initial = std::move(v);
}

void FiniteWeightedAutomaton::set_final(StateVector v)
{
  for (auto const &entry : v)
    check_state(entry.first);
  _final = std::move(v);
}

void FiniteWeightedAutomaton::set_transition(std::size_t letter, SparseMatrix m)
{
  if (m.dimension() != _states)
    throw InvalidInput("transition matrix has the wrong dimension");
  _transitions.at(letter) = std::move(m);
}

namespace finite
{

namespace
{

std::vector<std::size_t> all_letters(FiniteWeightedAutomaton const &automaton)
{
  std::vector<std::size_t> letters(automaton.letter_count());
  std::iota(letters.begin(), letters.end(), std::size_t{0});
  return letters;
}

ForwardSpace<std::size_t, std::size_t> explore(FiniteWeightedAutomaton const &automaton)
{
  auto letters = all_letters(automaton);
  return explore_forward<std::size_t, std::size_t>(
    automaton.initial(), std::span<std::size_t const>(letters),
    [&](StateVector const &v, std::size_t letter) {
      return automaton.transition(letter).left_multiply(v);
    });
}

} // anonymous namespace

Rational weight(FiniteWeightedAutomaton const &automaton, std::span<std::size_t const> word)
{
  StateVector v = automaton.initial();
  for (auto letter : word) {
    if (letter >= automaton.letter_count())
      throw InvalidInput("unknown letter " + std::to_string(letter));
    v = automaton.transition(letter).left_multiply(v);
  }
  return dot(v, automaton.final());
}

ZeronessResult zeroness(FiniteWeightedAutomaton const &automaton)
{
  auto space = explore(automaton);

  ZeronessResult result;
  result.forward_dimension = space.basis.dimension();
  result.rounds = space.dimensions.size() - 1;
  for (std::size_t i = 0; i < space.vectors.size(); ++i) {
    if (dot(space.vectors[i], automaton.final()) != 0) {
      result.zero = false;
      result.witness = space.words[i];
      break;
    }
  }
  return result;
}

FiniteWeightedAutomaton difference(FiniteWeightedAutomaton const &lhs, FiniteWeightedAutomaton const &rhs)
{
  if (lhs.letter_count() != rhs.letter_count())
    throw InvalidInput("automata have different letter counts");

  auto const offset = lhs.state_count();
  FiniteWeightedAutomaton sum(lhs.state_count() + rhs.state_count(), lhs.letter_count());

  StateVector initial = lhs.initial(), final = lhs.final();
  for (auto const &[s, w] : rhs.initial())
    initial.add(offset + s, w);
  for (auto const &[s, w] : rhs.final())
    final.add(offset + s, -w);
  sum.set_initial(std::move(initial));
  sum.set_final(std::move(final));

  for (std::size_t letter = 0; letter < lhs.letter_count(); ++letter) {
    for (std::size_t i = 0; i < lhs.state_count(); ++i)
      for (auto const &[j, w] : lhs.transition(letter).row(i))
        sum.add_transition(i, letter, j, w);
    for (std::size_t i = 0; i < rhs.state_count(); ++i)
      for (auto const &[j, w] : rhs.transition(letter).row(i))
        sum.add_transition(offset + i, letter, offset + j, w);
  }
  return sum;
}

ZeronessResult equivalence(FiniteWeightedAutomaton const &lhs, FiniteWeightedAutomaton const &rhs)
{
  return zeroness(difference(lhs, rhs));
}

FiniteWeightedAutomaton forward_reduce(FiniteWeightedAutomaton const &automaton)
{
  auto space = explore(automaton);
  auto const &basis = space.basis;
  auto const d = basis.dimension();

  auto to_vector = [](std::vector<Rational> const &coords) {
    StateVector v;
    for (std::size_t i = 0; i < coords.size(); ++i)
      v.add(i, coords[i]);
    return v;
  };

  FiniteWeightedAutomaton reduced(d, automaton.letter_count());
  reduced.set_initial(to_vector(basis.coordinates(automaton.initial())));

  StateVector final;
  for (std::size_t j = 0; j < d; ++j)
    final.add(j, dot(basis.rows()[j], automaton.final()));
  reduced.set_final(std::move(final));

  for (std::size_t letter = 0; letter < automaton.letter_count(); ++letter) {
    for (std::size_t j = 0; j < d; ++j) {
      auto image = automaton.transition(letter).left_multiply(basis.rows()[j]);
      auto coords = basis.coordinates(image);
      for (std::size_t l = 0; l < d; ++l)
        reduced.add_transition(j, letter, l, coords[l]);
    }
  }
  return reduced;
}

FiniteWeightedAutomaton reverse(FiniteWeightedAutomaton const &automaton)
{
  FiniteWeightedAutomaton r(automaton.state_count(), automaton.letter_count());
  r.set_initial(automaton.final());
  r.set_final(automaton.initial());
  for (std::size_t letter = 0; letter < automaton.letter_count(); ++letter)
    r.set_transition(letter, automaton.transition(letter).transposed());
  return r;
}

FiniteWeightedAutomaton minimize(FiniteWeightedAutomaton const &automaton)
{
  return reverse(forward_reduce(reverse(forward_reduce(automaton))));
}

} // namespace finite

} // namespace orbitwa

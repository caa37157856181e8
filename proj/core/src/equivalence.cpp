#include "orbitwa/equivalence.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "orbitwa/error.hpp"
#include "orbitwa/finite_weighted.hpp"
#include "orbitwa/forward_space.hpp"

namespace orbitwa
{

namespace
{

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("length bound exceeds 64 bits");
  return r;
}

std::uint64_t factorial(std::uint64_t n)
{
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i)
    r = checked_mul(r, i);
  return r;
}

/// The restriction to a support, with the transitions of a concrete state
/// computed the first time a forward vector mentions it. Edges store a
/// target and an index into a table of distinct weights.
class LazyRestriction
{
public:
  LazyRestriction(WeightedRegisterAutomaton const &automaton, std::span<Atom const> support, std::size_t states)
  : _automaton(automaton), _id(states, unseen)
  {
    _dense.registers = automaton.registers;
    _dense.support.assign(support.begin(), support.end());
    for (std::size_t i = 0; i < support.size(); ++i)
      if (!_dense.support_position.emplace(support[i], i).second)
        throw InvalidInput("duplicate support atom " + to_string(support[i]));
    for (std::size_t tag = 0; tag < automaton.tags.size(); ++tag)
      for (auto const &atom : support)
        _letters.push_back({tag, atom});
  }

  std::vector<Letter> const &letters() const { return _letters; }
  std::size_t discovered() const { return _states.size(); }

  StateVector initial()
  {
    StateVector v;
    for (std::size_t c = 0; c < _automaton.controls.size(); ++c)
      if (_automaton.initial[c] != 0)
        v.add(discover(initial_state(_automaton, c)), _automaton.initial[c]);
    return v;
  }

  StateVector next(StateVector const &v, std::size_t letter)
  {
    StateVector out;
    for (auto const &[s, c] : v) {
      expand(s);
      auto const &row = _rows[s];
      for (auto e = row.offsets[letter]; e < row.offsets[letter + 1]; ++e)
        out.add(row.edges[e].first, c * _weights[row.edges[e].second]);
    }
    return out;
  }

  Rational output(StateVector const &v)
  {
    Rational sum(0);
    for (auto const &[s, c] : v)
      sum += c * _final[s];
    return sum;
  }

private:
  static constexpr auto unseen = static_cast<std::uint32_t>(-1);

  struct Row
  {
    bool expanded = false;
    std::vector<std::uint32_t> offsets;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  };

  std::size_t discover(ConcreteState const &state)
  {
    auto &slot = _id[_dense.state_index(state)];
    if (slot == unseen) {
      slot = static_cast<std::uint32_t>(_states.size());
      _final.push_back(final_weight(_automaton, state));
      _states.push_back(state);
      _rows.emplace_back();
    }
    return slot;
  }

  std::uint32_t weight_id(Rational const &w)
  {
    auto [it, inserted] = _weight_ids.try_emplace(w, static_cast<std::uint32_t>(_weights.size()));
    if (inserted)
      _weights.push_back(w);
    return it->second;
  }

  void expand(std::size_t s)
  {
    if (_rows[s].expanded)
      return;
    Row row;
    row.expanded = true;
    row.offsets.push_back(0);
    for (auto const &letter : _letters) {
      // discover() may grow _states, so copy the state first
      auto successors = step(_automaton, ConcreteState(_states[s]), letter);
      for (auto const &[succ, w] : successors) {
        auto to = static_cast<std::uint32_t>(discover(succ));
        row.edges.emplace_back(to, weight_id(w));
      }
      row.offsets.push_back(static_cast<std::uint32_t>(row.edges.size()));
    }
    _rows[s] = std::move(row);
  }

  WeightedRegisterAutomaton const &_automaton;
  RestrictedAutomaton _dense;
  std::vector<Letter> _letters;
  std::vector<std::uint32_t> _id;
  std::vector<ConcreteState> _states;
  std::vector<Rational> _final;
  std::vector<Row> _rows;
  std::vector<Rational> _weights;
  std::map<Rational, std::uint32_t> _weight_ids;
};

} // anonymous namespace

LengthBoundReport length_bound(AtomKind kind, std::uint64_t n, std::size_t k)
{
  LengthBoundReport report;
  report.kind = kind;
  report.orbit_count = n;
  report.atom_dimension = k;

  auto const ks = std::to_string(k);
  auto const ns = std::to_string(n);
  if (kind == AtomKind::Ordered) {
    report.bound = checked_mul(n, factorial(k + 1));
    report.formula = "n*(1+k)! = " + ns + "*(1+" + ks + ")!";
  } else {
    report.bound = checked_mul(n, checked_mul(factorial(k), factorial(k + 1)));
    report.formula = "n*k!*(1+k)! = " + ns + "*" + ks + "!*(1+" + ks + ")!";
  }
  report.formula += " = " + std::to_string(report.bound);
  return report;
}

std::uint64_t state_orbit_count(WeightedRegisterAutomaton const &automaton)
{
  return automaton.controls.size() * count_register_types(automaton.kind, automaton.registers);
}

ZeronessDecision decide_zeroness(WeightedRegisterAutomaton const &automaton, DecisionOptions const &options)
{
  require_valid(automaton);

  ZeronessDecision decision;
  decision.bound = length_bound(automaton.kind, state_orbit_count(automaton), automaton.registers);
  decision.atoms_used = options.atom_budget ? *options.atom_budget
                                            : static_cast<std::size_t>(decision.bound.bound);

  auto const states = restricted_state_count(automaton, decision.atoms_used);
  if (states > options.state_ceiling)
    throw ResourceLimitExceeded("restriction to " + std::to_string(decision.atoms_used) +
                                  " atoms needs " +
                                  (states == SIZE_MAX ? std::string("more than 2^64") : std::to_string(states)) +
                                  " states, above the ceiling of " + std::to_string(options.state_ceiling),
                                states, options.state_ceiling);

  decision.support = canonical_pool(decision.atoms_used);
  LazyRestriction restriction(automaton, decision.support, states);
  decision.restricted_states = states;
  decision.restricted_letters = restriction.letters().size();

  // Forward-space check on the restricted automaton; vectors are visited in
  // breadth-first order, so the first one with nonzero output gives a
  // shortest witness.
  std::vector<std::size_t> letter_indices(decision.restricted_letters);
  for (std::size_t i = 0; i < letter_indices.size(); ++i)
    letter_indices[i] = i;
  auto space = explore_forward<std::size_t, std::size_t>(
    restriction.initial(), std::span<std::size_t const>(letter_indices),
    [&](StateVector const &v, std::size_t letter) { return restriction.next(v, letter); });

  decision.explored_states = restriction.discovered();
  decision.forward_dimension = space.basis.dimension();
  for (std::size_t i = 0; i < space.vectors.size(); ++i)
    if (restriction.output(space.vectors[i]) != 0) {
      decision.zero = false;
      Word word;
      for (auto index : space.words[i])
        word.push_back(restriction.letters()[index]);
      decision.witness = std::move(word);
      break;
    }
  return decision;
}

EquivalenceDecision decide_equivalence(WeightedRegisterAutomaton const &lhs,
                                       WeightedRegisterAutomaton const &rhs,
                                       DecisionOptions const &options)
{
  require_valid(lhs);
  require_valid(rhs);
  return decide_zeroness(difference(lhs, rhs), options);
}

} // namespace orbitwa

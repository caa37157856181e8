#include "orbitwa/automaton.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "orbitwa/error.hpp"

namespace orbitwa
{

std::string to_string(Variable const &v)
{
  switch (v.role) {
  case Variable::Role::Source: return "r" + std::to_string(v.index + 1);
  case Variable::Role::Target: return "r" + std::to_string(v.index + 1) + "'";
  case Variable::Role::Input: break;
  }
  return "a";
}

namespace
{

Slot const *lookup(Variable const &v, Binding const &b)
{
  static Slot const bottom;
  switch (v.role) {
  case Variable::Role::Source:
    return v.index < b.source.size() ? &b.source[v.index] : &bottom;
  case Variable::Role::Target:
    return v.index < b.target.size() ? &b.target[v.index] : &bottom;
  case Variable::Role::Input:
    break;
  }
  return nullptr;
}

// Input atom is bound through a pointer rather than a Slot; normalize here.
std::optional<Atom const *> value_of(Variable const &v, Binding const &b)
{
  if (v.role == Variable::Role::Input) {
    if (!b.input)
      return std::nullopt;
    return b.input;
  }
  Slot const *slot = lookup(v, b);
  if (!*slot)
    return std::nullopt;
  return &**slot;
}

} // anonymous namespace

bool holds(Guard const &guard, Binding const &binding)
{
  for (auto const &lit : guard) {
    auto x = value_of(lit.lhs, binding);
    switch (lit.predicate) {
    case Predicate::IsBot:
      if (x)
        return false;
      continue;
    case Predicate::NotBot:
      if (!x)
        return false;
      continue;
    default:
      break;
    }
    auto y = value_of(lit.rhs, binding);
    if (!x || !y)
      return false;
    bool ok = false;
    switch (lit.predicate) {
    case Predicate::Eq: ok = **x == **y; break;
    case Predicate::Neq: ok = **x != **y; break;
    case Predicate::Lt: ok = **x < **y; break;
    default: break;
    }
    if (!ok)
      return false;
  }
  return true;
}

Guard orbit_guard(AtomKind kind, std::span<Variable const> vars, std::span<Slot const> values)
{
  Guard guard;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].role == Variable::Role::Input)
      continue;
    guard.push_back(values[i] ? not_bot(vars[i]) : is_bot(vars[i]));
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (!values[i] || !values[j])
        continue;
      auto const &x = *values[i];
      auto const &y = *values[j];
      if (x == y)
        guard.push_back(eq(vars[i], vars[j]));
      else if (kind == AtomKind::Equality)
        guard.push_back(neq(vars[i], vars[j]));
      else if (x < y)
        guard.push_back(lt(vars[i], vars[j]));
      else
        guard.push_back(lt(vars[j], vars[i]));
    }
  }
  return guard;
}

Update keep_all(std::size_t k)
{
  Update u;
  for (std::size_t i = 1; i <= k; ++i)
    u.push_back(keep(i));
  return u;
}

std::size_t WeightedRegisterAutomaton::add_control(std::string name, Rational initial_weight)
{
  controls.push_back(std::move(name));
  initial.push_back(std::move(initial_weight));
  return controls.size() - 1;
}

std::size_t WeightedRegisterAutomaton::add_tag(std::string name)
{
  tags.push_back(std::move(name));
  return tags.size() - 1;
}

void WeightedRegisterAutomaton::add_transition(std::size_t from, std::size_t tag, std::size_t to,
                                               Guard guard, Update update, Rational weight)
{
  transitions.push_back({from, tag, to, std::move(guard), std::move(update), std::move(weight)});
}

void WeightedRegisterAutomaton::add_final(std::size_t control, Guard guard, Rational weight)
{
  finals.push_back({control, std::move(guard), std::move(weight)});
}

std::optional<std::size_t> WeightedRegisterAutomaton::find_control(std::string_view name) const
{
  auto it = std::find(controls.begin(), controls.end(), name);
  if (it == controls.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - controls.begin());
}

std::optional<std::size_t> WeightedRegisterAutomaton::find_tag(std::string_view name) const
{
  auto it = std::find(tags.begin(), tags.end(), name);
  if (it == tags.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - tags.begin());
}

namespace
{

void check_guard(WeightedRegisterAutomaton const &a, Guard const &guard, bool allow_transition_vars,
                 std::string const &where, std::vector<std::string> &out)
{
  auto check_var = [&](Variable const &v) {
    if (v.role == Variable::Role::Input || v.role == Variable::Role::Target) {
      if (!allow_transition_vars) {
        out.push_back(where + ": final guards may only mention source registers, found " + to_string(v));
        return;
      }
      if (v.role == Variable::Role::Input)
        return;
    }
    if (v.index >= a.registers)
      out.push_back(where + ": register " + to_string(v) + " exceeds register count " +
                    std::to_string(a.registers));
  };
  for (auto const &lit : guard) {
    if (lit.predicate == Predicate::Lt && a.kind == AtomKind::Equality)
      out.push_back(where + ": 'lt' is not available over equality atoms");
    check_var(lit.lhs);
    if (lit.binary())
      check_var(lit.rhs);
  }
}

} // anonymous namespace

std::vector<std::string> validate(WeightedRegisterAutomaton const &a)
{
  std::vector<std::string> out;

  if (a.initial.size() != a.controls.size())
    out.push_back("initial weights do not match the number of controls");
  if (std::set<std::string>(a.controls.begin(), a.controls.end()).size() != a.controls.size())
    out.push_back("duplicate control names");
  if (std::set<std::string>(a.tags.begin(), a.tags.end()).size() != a.tags.size())
    out.push_back("duplicate tag names");

  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    auto const &t = a.transitions[i];
    std::string where = "transition " + std::to_string(i);
    if (t.from >= a.controls.size() || t.to >= a.controls.size())
      out.push_back(where + ": unknown control");
    if (t.tag >= a.tags.size())
      out.push_back(where + ": unknown tag");
    if (t.weight == 0)
      out.push_back(where + ": weight is zero");
    if (t.update.size() != a.registers)
      out.push_back(where + ": update assigns " + std::to_string(t.update.size()) +
                    " registers, expected " + std::to_string(a.registers));
    for (auto const &src : t.update) {
      if (src.kind == RegisterSource::Kind::Guess)
        out.push_back(where + ": guessing update (a register receives an atom not read from the input)");
      else if (src.kind == RegisterSource::Kind::Register && src.index >= a.registers)
        out.push_back(where + ": update reads register r" + std::to_string(src.index + 1) +
                      " beyond register count");
    }
    check_guard(a, t.guard, true, where, out);
  }

  for (std::size_t i = 0; i < a.finals.size(); ++i) {
    auto const &f = a.finals[i];
    std::string where = "final rule " + std::to_string(i);
    if (f.control >= a.controls.size())
      out.push_back(where + ": unknown control");
    check_guard(a, f.guard, false, where, out);
  }
  return out;
}

void require_valid(WeightedRegisterAutomaton const &a)
{
  auto diagnostics = validate(a);
  if (diagnostics.empty())
    return;
  std::string message = "invalid automaton:";
  for (auto const &d : diagnostics)
    message += "\n  " + d;
  throw InvalidInput(message);
}

ConcreteState initial_state(WeightedRegisterAutomaton const &a, std::size_t control)
{
  return {control, Tuple(a.registers)};
}

namespace
{

Tuple apply_update(Update const &update, Tuple const &registers, Atom const &input)
{
  Tuple next;
  next.reserve(update.size());
  for (auto const &src : update) {
    switch (src.kind) {
    case RegisterSource::Kind::Register: next.push_back(registers[src.index]); break;
    case RegisterSource::Kind::Input: next.emplace_back(input); break;
    case RegisterSource::Kind::Bot:
    case RegisterSource::Kind::Guess: next.emplace_back(); break;
    }
  }
  return next;
}

} // anonymous namespace

std::vector<std::pair<ConcreteState, Rational>>
step(WeightedRegisterAutomaton const &a, ConcreteState const &state, Letter const &letter)
{
  std::map<ConcreteState, Rational> successors;
  for (auto const &rule : a.transitions) {
    if (rule.from != state.control || rule.tag != letter.tag)
      continue;
    Tuple next = apply_update(rule.update, state.registers, letter.atom);
    if (!holds(rule.guard, Binding{state.registers, &letter.atom, next}))
      continue;
    successors[ConcreteState{rule.to, std::move(next)}] += rule.weight;
  }

  std::vector<std::pair<ConcreteState, Rational>> result;
  for (auto &[s, w] : successors)
    if (w != 0)
      result.emplace_back(s, w);
  return result;
}

Rational final_weight(WeightedRegisterAutomaton const &a, ConcreteState const &state)
{
  Rational sum(0);
  for (auto const &rule : a.finals)
    if (rule.control == state.control && holds(rule.guard, Binding{state.registers, nullptr, {}}))
      sum += rule.weight;
  return sum;
}

Rational oracle_weight(WeightedRegisterAutomaton const &a, std::span<Letter const> word)
{
  Rational total(0);
  std::function<void(ConcreteState const &, std::size_t, Rational const &)> run =
    [&](ConcreteState const &state, std::size_t pos, Rational const &weight) {
      if (pos == word.size()) {
        total += weight * final_weight(a, state);
        return;
      }
      for (auto const &[next, w] : step(a, state, word[pos]))
        run(next, pos + 1, weight * w);
    };

  for (std::size_t c = 0; c < a.controls.size(); ++c)
    if (a.initial[c] != 0)
      run(initial_state(a, c), 0, a.initial[c]);
  return total;
}

Configuration initial_configuration(WeightedRegisterAutomaton const &a)
{
  Configuration v;
  for (std::size_t c = 0; c < a.controls.size(); ++c)
    v.add(initial_state(a, c), a.initial[c]);
  return v;
}

Configuration advance(WeightedRegisterAutomaton const &a, Configuration const &configuration,
                      Letter const &letter)
{
  Configuration next;
  for (auto const &[state, c] : configuration)
    for (auto const &[succ, w] : step(a, state, letter))
      next.add(succ, c * w);
  return next;
}

Configuration configuration(WeightedRegisterAutomaton const &a, std::span<Letter const> word,
                            std::span<Atom const> pool)
{
  for (auto const &letter : word)
    if (std::find(pool.begin(), pool.end(), letter.atom) == pool.end())
      throw InvalidInput("word atom " + to_string(letter.atom) + " is not in the pool");

  Configuration v = initial_configuration(a);
  for (auto const &letter : word)
    v = advance(a, v, letter);
  return v;
}

Rational final_weight(WeightedRegisterAutomaton const &a, Configuration const &configuration)
{
  Rational sum(0);
  for (auto const &[state, c] : configuration)
    sum += c * final_weight(a, state);
  return sum;
}

std::size_t RestrictedAutomaton::state_index(ConcreteState const &state) const
{
  std::size_t const base = support.size() + 1;
  std::size_t index = state.control;
  for (auto const &slot : state.registers) {
    std::size_t digit = 0;
    if (slot) {
      auto it = support_position.find(*slot);
      if (it == support_position.end())
        throw InvalidInput("state mentions an atom outside the support");
      digit = it->second + 1;
    }
    index = index * base + digit;
  }
  return index;
}

std::size_t RestrictedAutomaton::letter_index(Letter const &letter) const
{
  auto it = support_position.find(letter.atom);
  if (it == support_position.end())
    throw InvalidInput("letter atom " + to_string(letter.atom) + " outside the support");
  return letter.tag * support.size() + it->second;
}

std::size_t restricted_state_count(WeightedRegisterAutomaton const &a, std::size_t support_size)
{
  std::size_t count = a.controls.size();
  for (std::size_t i = 0; i < a.registers; ++i)
    if (__builtin_mul_overflow(count, support_size + 1, &count))
      return SIZE_MAX;
  return count;
}

std::pair<FiniteWeightedAutomaton, RestrictedAutomaton>
restrict_to(WeightedRegisterAutomaton const &a, std::span<Atom const> support)
{
  require_valid(a);

  RestrictedAutomaton labels;
  labels.registers = a.registers;
  labels.support.assign(support.begin(), support.end());
  for (std::size_t i = 0; i < support.size(); ++i)
    if (!labels.support_position.emplace(support[i], i).second)
      throw InvalidInput("duplicate support atom " + to_string(support[i]));

  // State index = control * (s+1)^k + register digits, matching state_index().
  auto valuations = enumerate_valuations(a.kind, a.registers, support, true);
  for (std::size_t c = 0; c < a.controls.size(); ++c)
    for (auto const &regs : valuations)
      labels.states.push_back({c, regs});
  for (std::size_t tag = 0; tag < a.tags.size(); ++tag)
    for (auto const &atom : support)
      labels.letters.push_back({tag, atom});

  FiniteWeightedAutomaton finite(labels.states.size(), labels.letters.size());
  for (std::size_t c = 0; c < a.controls.size(); ++c)
    if (a.initial[c] != 0)
      finite.set_initial(labels.state_index(initial_state(a, c)), a.initial[c]);

  for (std::size_t s = 0; s < labels.states.size(); ++s) {
    auto const &state = labels.states[s];
    if (auto w = final_weight(a, state); w != 0)
      finite.set_final(s, w);
    for (std::size_t l = 0; l < labels.letters.size(); ++l)
      for (auto const &[succ, w] : step(a, state, labels.letters[l]))
        finite.add_transition(s, l, labels.state_index(succ), w);
  }
  return {std::move(finite), std::move(labels)};
}

WeightedRegisterAutomaton pad_registers(WeightedRegisterAutomaton a, std::size_t registers)
{
  if (registers < a.registers)
    throw InvalidInput("cannot pad to fewer registers");
  for (auto &t : a.transitions)
    t.update.resize(registers, clear());
  a.registers = registers;
  return a;
}

WeightedRegisterAutomaton difference(WeightedRegisterAutomaton const &lhs_in,
                                     WeightedRegisterAutomaton const &rhs_in)
{
  if (lhs_in.kind != rhs_in.kind)
    throw InvalidInput("automata use different atom kinds");

  auto const k = std::max(lhs_in.registers, rhs_in.registers);
  auto lhs = pad_registers(lhs_in, k);
  auto rhs = pad_registers(rhs_in, k);

  WeightedRegisterAutomaton out;
  out.kind = lhs.kind;
  out.registers = k;
  out.tags = lhs.tags;

  std::vector<std::size_t> rhs_tag(rhs.tags.size());
  for (std::size_t t = 0; t < rhs.tags.size(); ++t) {
    auto existing = out.find_tag(rhs.tags[t]);
    rhs_tag[t] = existing ? *existing : out.add_tag(rhs.tags[t]);
  }

  for (std::size_t c = 0; c < lhs.controls.size(); ++c)
    out.add_control("1." + lhs.controls[c], lhs.initial[c]);
  auto const offset = lhs.controls.size();
  for (std::size_t c = 0; c < rhs.controls.size(); ++c)
    out.add_control("2." + rhs.controls[c], rhs.initial[c]);

  out.transitions = lhs.transitions;
  for (auto t : rhs.transitions) {
    t.from += offset;
    t.to += offset;
    t.tag = rhs_tag.at(t.tag);
    out.transitions.push_back(std::move(t));
  }

  out.finals = lhs.finals;
  for (auto f : rhs.finals) {
    f.control += offset;
    f.weight = -f.weight;
    out.finals.push_back(std::move(f));
  }
  return out;
}

std::string to_string(WeightedRegisterAutomaton const &a, std::span<Letter const> word)
{
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i)
      out += ",";
    out += (word[i].tag < a.tags.size() ? a.tags[word[i].tag] : "?") + ":" + to_string(word[i].atom);
  }
  return out;
}

} // namespace orbitwa

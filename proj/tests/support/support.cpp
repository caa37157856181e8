#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "orbitwa/atoms.hpp"

namespace testing
{

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi)
{
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng &rng, double p)
{
  return std::bernoulli_distribution(p)(rng);
}

Rational small_rational(Rng &rng)
{
  long num = 0;
  while (num == 0)
    num = static_cast<long>(uniform(rng, 0, 6)) - 3;
  long den = static_cast<long>(uniform(rng, 1, 3));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

WeightedRegisterAutomaton count_letters(Rational final_weight)
{
  WeightedRegisterAutomaton a;
  a.kind = AtomKind::Equality;
  a.registers = 1;
  auto wait = a.add_control("wait", 1);
  auto hold = a.add_control("hold");
  auto x = a.add_tag("x");
  a.add_transition(wait, x, wait, {}, {clear()}, 1);
  a.add_transition(wait, x, hold, {}, {store_input()}, 1);
  a.add_transition(hold, x, hold, {neq(source(1), input())}, {keep(1)}, 1);
  if (final_weight != 0)
    a.add_final(hold, {}, final_weight);
  return a;
}

WeightedRegisterAutomaton does_not_minimize()
{
  WeightedRegisterAutomaton a;
  a.kind = AtomKind::Equality;
  a.registers = 2;
  auto start = a.add_control("start", 1);
  auto one = a.add_control("one");
  auto two = a.add_control("two");
  auto top = a.add_control("top");
  auto x = a.add_tag("x");
  a.add_transition(start, x, one, {}, {store_input(), clear()}, 1);
  a.add_transition(one, x, two, {neq(source(1), input())}, {keep(1), store_input()}, 1);
  a.add_transition(two, x, top, {eq(input(), source(1))}, {clear(), clear()}, 1);
  a.add_transition(two, x, top, {eq(input(), source(2))}, {clear(), clear()}, -1);
  a.add_final(top, {}, 1);
  return a;
}

Word word_of(std::initializer_list<long> atoms, std::size_t tag)
{
  Word w;
  for (long a : atoms)
    w.push_back({tag, Atom(a)});
  return w;
}

namespace
{

Variable random_variable(Rng &rng, std::size_t registers, bool transition)
{
  std::size_t choices = transition ? 2 * registers + 1 : registers;
  std::size_t pick = uniform(rng, 0, choices - 1);
  if (pick < registers)
    return source(pick + 1);
  if (pick == registers)
    return input();
  return target(pick - registers);
}

} // anonymous namespace

Guard random_guard(Rng &rng, AtomKind kind, std::size_t registers, bool transition)
{
  Guard guard;
  if (!transition && registers == 0)
    return guard;
  std::size_t literals = uniform(rng, 0, 2);
  for (std::size_t i = 0; i < literals; ++i) {
    auto x = random_variable(rng, registers, transition);
    auto y = random_variable(rng, registers, transition);
    std::size_t p = uniform(rng, 0, 4);
    if (p == 2 && kind == AtomKind::Equality)
      p = 1;
    if ((p == 3 || p == 4) && x.role == Variable::Role::Input)
      p = 0;
    switch (p) {
    case 0: guard.push_back(eq(x, y)); break;
    case 1: guard.push_back(neq(x, y)); break;
    case 2: guard.push_back(lt(x, y)); break;
    case 3: guard.push_back(is_bot(x)); break;
    default: guard.push_back(not_bot(x)); break;
    }
  }
  return guard;
}

Update random_update(Rng &rng, std::size_t registers)
{
  Update update;
  for (std::size_t i = 0; i < registers; ++i) {
    std::size_t pick = uniform(rng, 0, registers + 1);
    if (pick < registers)
      update.push_back(keep(pick + 1));
    else if (pick == registers)
      update.push_back(store_input());
    else
      update.push_back(clear());
  }
  return update;
}

WeightedRegisterAutomaton random_weighted(Rng &rng, AutomatonShape const &shape)
{
  WeightedRegisterAutomaton a;
  a.kind = shape.kind;
  a.registers = shape.registers;
  for (std::size_t c = 0; c < shape.controls; ++c)
    a.add_control("c" + std::to_string(c), coin(rng, 0.5) ? small_rational(rng) : Rational(0));
  if (std::all_of(a.initial.begin(), a.initial.end(), [](Rational const &w) { return w == 0; }))
    a.initial[0] = 1;
  for (std::size_t t = 0; t < shape.tags; ++t)
    a.add_tag("t" + std::to_string(t));
  for (std::size_t i = 0; i < shape.rules; ++i)
    a.add_transition(uniform(rng, 0, shape.controls - 1), uniform(rng, 0, shape.tags - 1),
                     uniform(rng, 0, shape.controls - 1), random_guard(rng, a.kind, a.registers, true),
                     random_update(rng, a.registers), small_rational(rng));
  for (std::size_t i = 0; i < shape.finals; ++i)
    a.add_final(uniform(rng, 0, shape.controls - 1), random_guard(rng, a.kind, a.registers, false),
                small_rational(rng));
  return a;
}

namespace
{

template<typename Automaton>
void permute_controls(Rng &rng, Automaton &a)
{
  std::vector<std::size_t> perm(a.controls.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto controls = a.controls;
  auto initial = a.initial;
  for (std::size_t c = 0; c < perm.size(); ++c) {
    a.controls[perm[c]] = controls[c];
    a.initial[perm[c]] = initial[c];
  }
  for (auto &t : a.transitions) {
    t.from = perm[t.from];
    t.to = perm[t.to];
  }
  if constexpr (requires { a.finals; }) {
    for (auto &f : a.finals)
      f.control = perm[f.control];
  } else {
    for (auto &f : a.accepting)
      f.control = perm[f.control];
  }
}

} // anonymous namespace

WeightedRegisterAutomaton equivalent_variant(Rng &rng, WeightedRegisterAutomaton a, std::size_t steps)
{
  for (std::size_t step = 0; step < steps; ++step) {
    switch (uniform(rng, 0, 5)) {
    case 0: // split a weight
      if (!a.transitions.empty()) {
        auto i = uniform(rng, 0, a.transitions.size() - 1);
        Rational part = small_rational(rng);
        Rational rest = a.transitions[i].weight - part;
        if (rest != 0) {
          auto copy = a.transitions[i];
          copy.weight = rest;
          a.transitions[i].weight = part;
          a.transitions.push_back(copy);
        }
      }
      break;
    case 1: // split a guard on whether a register is empty
      if (!a.transitions.empty() && a.registers > 0) {
        auto i = uniform(rng, 0, a.transitions.size() - 1);
        auto r = uniform(rng, 1, a.registers);
        auto copy = a.transitions[i];
        a.transitions[i].guard.push_back(is_bot(source(r)));
        copy.guard.push_back(not_bot(source(r)));
        a.transitions.push_back(copy);
      }
      break;
    case 2: { // rescale one control
      auto c = uniform(rng, 0, a.controls.size() - 1);
      Rational lambda = small_rational(rng);
      a.initial[c] *= lambda;
      for (auto &t : a.transitions) {
        if (t.to == c)
          t.weight *= lambda;
        if (t.from == c)
          t.weight /= lambda;
      }
      for (auto &f : a.finals)
        if (f.control == c)
          f.weight /= lambda;
      break;
    }
    case 3: { // unreachable control
      auto u = a.add_control("u" + std::to_string(a.controls.size()), 0);
      for (int i = 0; i < 2; ++i)
        a.add_transition(u, uniform(rng, 0, a.tags.size() - 1), uniform(rng, 0, a.controls.size() - 1),
                         random_guard(rng, a.kind, a.registers, true), random_update(rng, a.registers),
                         small_rational(rng));
      a.add_final(u, {}, small_rational(rng));
      break;
    }
    case 4:
      permute_controls(rng, a);
      break;
    default:
      std::shuffle(a.transitions.begin(), a.transitions.end(), rng);
      break;
    }
  }
  return a;
}

WeightedRegisterAutomaton perturb(Rng &rng, WeightedRegisterAutomaton a)
{
  switch (uniform(rng, 0, 3)) {
  case 0:
    if (!a.transitions.empty()) {
      auto &w = a.transitions[uniform(rng, 0, a.transitions.size() - 1)].weight;
      w += small_rational(rng);
      if (w == 0)
        w = 1;
      break;
    }
    [[fallthrough]];
  case 1:
    a.add_transition(uniform(rng, 0, a.controls.size() - 1), uniform(rng, 0, a.tags.size() - 1),
                     uniform(rng, 0, a.controls.size() - 1), random_guard(rng, a.kind, a.registers, true),
                     random_update(rng, a.registers), small_rational(rng));
    break;
  case 2:
    a.add_final(uniform(rng, 0, a.controls.size() - 1), random_guard(rng, a.kind, a.registers, false),
                small_rational(rng));
    break;
  default: {
    auto &w = a.initial[uniform(rng, 0, a.controls.size() - 1)];
    w += small_rational(rng);
    break;
  }
  }
  return a;
}

NondetRegisterAutomaton random_deterministic(Rng &rng, AtomKind kind, std::size_t registers,
                                             std::size_t controls, std::size_t tags)
{
  NondetRegisterAutomaton n;
  n.kind = kind;
  n.registers = registers;
  for (std::size_t c = 0; c < controls; ++c)
    n.add_control("q" + std::to_string(c), c == 0);
  for (std::size_t t = 0; t < tags; ++t)
    n.add_tag("t" + std::to_string(t));

  std::vector<Variable> step_vars, source_vars;
  for (std::size_t r = 1; r <= registers; ++r) {
    step_vars.push_back(source(r));
    source_vars.push_back(source(r));
  }
  step_vars.push_back(input());

  std::vector<bool> step_bot(registers, true);
  step_bot.push_back(false);
  auto const step_types = orbit_representatives(kind, step_bot);
  auto const register_types = orbit_representatives(kind, std::vector<bool>(registers, true));

  for (std::size_t c = 0; c < controls; ++c) {
    for (std::size_t t = 0; t < tags; ++t)
      for (auto const &type : step_types)
        if (coin(rng, 0.7))
          n.add_transition(c, t, uniform(rng, 0, controls - 1), orbit_guard(kind, step_vars, type),
                           random_update(rng, registers));
    for (auto const &type : register_types)
      if (coin(rng, 0.4))
        n.add_accepting(c, orbit_guard(kind, source_vars, type));
  }
  return n;
}

NondetRegisterAutomaton unambiguous_variant(Rng &rng, NondetRegisterAutomaton n)
{
  for (int step = 0; step < 2; ++step) {
    switch (uniform(rng, 0, 3)) {
    case 0: { // a branch that never accepts
      auto dead = n.add_control("dead" + std::to_string(n.controls.size()));
      n.add_transition(uniform(rng, 0, n.controls.size() - 1), uniform(rng, 0, n.tags.size() - 1), dead,
                       random_guard(rng, n.kind, n.registers, true), random_update(rng, n.registers));
      n.add_transition(dead, 0, dead, {}, keep_all(n.registers));
      break;
    }
    case 1: // one rule stated twice
      if (!n.transitions.empty()) {
        auto copy = n.transitions[uniform(rng, 0, n.transitions.size() - 1)];
        n.transitions.push_back(copy);
      }
      break;
    case 2: // one acceptance condition stated twice
      if (!n.accepting.empty())
        n.accepting.push_back(n.accepting[uniform(rng, 0, n.accepting.size() - 1)]);
      break;
    default:
      permute_controls(rng, n);
      break;
    }
  }
  return n;
}

NondetRegisterAutomaton perturb(Rng &rng, NondetRegisterAutomaton n)
{
  if (coin(rng) && !n.transitions.empty()) {
    n.transitions[uniform(rng, 0, n.transitions.size() - 1)].to = uniform(rng, 0, n.controls.size() - 1);
    return n;
  }
  if (coin(rng) && !n.accepting.empty()) {
    n.accepting.erase(n.accepting.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, n.accepting.size() - 1)));
    return n;
  }
  // Accept a register type that may not have been accepted before.
  std::vector<Variable> vars;
  for (std::size_t r = 1; r <= n.registers; ++r)
    vars.push_back(source(r));
  auto types = orbit_representatives(n.kind, std::vector<bool>(n.registers, true));
  auto guard = orbit_guard(n.kind, vars, types[uniform(rng, 0, types.size() - 1)]);
  auto c = uniform(rng, 0, n.controls.size() - 1);
  bool present = std::any_of(n.accepting.begin(), n.accepting.end(),
                             [&](AcceptRule const &r) { return r.control == c && r.guard == guard; });
  if (!present)
    n.add_accepting(c, guard);
  return n;
}

FiniteWeightedAutomaton random_finite(Rng &rng, std::size_t states, std::size_t letters, double density)
{
  FiniteWeightedAutomaton m(states, letters);
  for (std::size_t s = 0; s < states; ++s) {
    if (coin(rng, 0.4))
      m.set_initial(s, small_rational(rng));
    if (coin(rng, 0.4))
      m.set_final(s, small_rational(rng));
    for (std::size_t l = 0; l < letters; ++l)
      for (std::size_t t = 0; t < states; ++t)
        if (coin(rng, density))
          m.add_transition(s, l, t, small_rational(rng));
  }
  return m;
}

SubsetVector random_subset_vector(Rng &rng, std::span<Atom const> atoms, std::size_t k, std::size_t terms)
{
  auto subsets = k_subsets(atoms, k);
  SubsetVector v;
  while (v.empty())
    for (std::size_t i = 0; i < terms; ++i)
      v.add(subsets[uniform(rng, 0, subsets.size() - 1)], small_rational(rng));
  return v;
}

FormSpec random_form(Rng &rng, AtomKind kind)
{
  auto value = [&] { return coin(rng, 0.3) ? Rational(0) : small_rational(rng); };
  if (kind == AtomKind::Equality) {
    EqualityForm f;
    f.otherwise = value();
    for (std::size_t i = uniform(rng, 0, 4); i > 0; --i)
      f.exceptions[Atom(static_cast<long>(uniform(rng, 0, 9)))] = value();
    return f;
  }
  OrderedForm f;
  std::set<Atom> points;
  for (std::size_t i = uniform(rng, 0, 4); i > 0; --i) {
    Rational q(static_cast<long>(uniform(rng, 0, 20)) - 10, static_cast<long>(uniform(rng, 1, 3)));
    q.canonicalize();
    points.insert(Atom(q));
  }
  for (auto const &p : points)
    f.points.emplace_back(p, value());
  for (std::size_t i = 0; i <= f.points.size(); ++i)
    f.intervals.push_back(value());
  return f;
}

void for_each_word(std::size_t tags, std::span<Atom const> pool, std::size_t max_length,
                   std::function<bool(Word const &)> const &visit)
{
  Word word;
  std::function<void()> go = [&] {
    if (!visit(word) || word.size() == max_length)
      return;
    for (std::size_t t = 0; t < tags; ++t) {
      for (auto const &a : pool) {
        word.push_back({t, a});
        go();
        word.pop_back();
      }
    }
  };
  go();
}

std::vector<Word> all_words(std::size_t tags, std::span<Atom const> pool, std::size_t max_length)
{
  std::vector<Word> words;
  for_each_word(tags, pool, max_length, [&](Word const &w) {
    words.push_back(w);
    return true;
  });
  std::stable_sort(words.begin(), words.end(), [](Word const &x, Word const &y) { return x.size() < y.size(); });
  return words;
}

Rational dense_weight(FiniteWeightedAutomaton const &m, std::span<std::size_t const> word)
{
  auto const n = m.state_count();
  std::vector<Rational> row(n);
  for (std::size_t s = 0; s < n; ++s)
    row[s] = m.initial().coeff(s);
  for (auto letter : word) {
    std::vector<Rational> next(n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        next[t] += row[s] * m.transition(letter).at(s, t);
    row = std::move(next);
  }
  Rational sum(0);
  for (std::size_t s = 0; s < n; ++s)
    sum += row[s] * m.final().coeff(s);
  return sum;
}

namespace reference
{

namespace
{

Value lookup(Variable const &v, std::vector<Value> const &source_regs, Value const &in,
             std::vector<Value> const &target_regs)
{
  switch (v.role) {
  case Variable::Role::Source: return v.index < source_regs.size() ? source_regs[v.index] : Value{};
  case Variable::Role::Input: return in;
  case Variable::Role::Target: return v.index < target_regs.size() ? target_regs[v.index] : Value{};
  }
  return {};
}

std::vector<Value> apply(Update const &update, std::vector<Value> const &regs, Rational const &in)
{
  std::vector<Value> out;
  for (auto const &src : update) {
    if (src.kind == RegisterSource::Kind::Register)
      out.push_back(regs.at(src.index));
    else if (src.kind == RegisterSource::Kind::Input)
      out.push_back(in);
    else
      out.push_back(std::nullopt);
  }
  return out;
}

void prune(Config &config)
{
  std::erase_if(config, [](auto const &entry) { return entry.second == 0; });
}

} // anonymous namespace

bool satisfied(Guard const &guard, std::vector<Value> const &source_regs, Value const &in,
               std::vector<Value> const &target_regs)
{
  for (auto const &lit : guard) {
    Value x = lookup(lit.lhs, source_regs, in, target_regs);
    Value y = lookup(lit.rhs, source_regs, in, target_regs);
    bool ok = false;
    switch (lit.predicate) {
    case Predicate::Eq: ok = x && y && *x == *y; break;
    case Predicate::Neq: ok = x && y && *x != *y; break;
    case Predicate::Lt: ok = x && y && *x < *y; break;
    case Predicate::IsBot: ok = !x; break;
    case Predicate::NotBot: ok = x.has_value(); break;
    }
    if (!ok)
      return false;
  }
  return true;
}

Config start(WeightedRegisterAutomaton const &a)
{
  Config c;
  for (std::size_t q = 0; q < a.controls.size(); ++q)
    if (a.initial[q] != 0)
      c[State{q, std::vector<Value>(a.registers)}] += a.initial[q];
  return c;
}

Config next(WeightedRegisterAutomaton const &a, Config const &config, Letter const &letter)
{
  Config out;
  Value in = letter.atom.value();
  for (auto const &[state, w] : config) {
    for (auto const &rule : a.transitions) {
      if (rule.from != state.control || rule.tag != letter.tag)
        continue;
      auto regs = apply(rule.update, state.registers, letter.atom.value());
      if (satisfied(rule.guard, state.registers, in, regs))
        out[State{rule.to, regs}] += w * rule.weight;
    }
  }
  prune(out);
  return out;
}

Rational output(WeightedRegisterAutomaton const &a, Config const &config)
{
  Rational sum(0);
  for (auto const &[state, w] : config)
    for (auto const &f : a.finals)
      if (f.control == state.control && satisfied(f.guard, state.registers, std::nullopt, {}))
        sum += w * f.weight;
  return sum;
}

Rational weight(WeightedRegisterAutomaton const &a, std::span<Letter const> word)
{
  auto c = start(a);
  for (auto const &l : word)
    c = next(a, c, l);
  return output(a, c);
}

Config start(NondetRegisterAutomaton const &n)
{
  Config c;
  for (std::size_t q = 0; q < n.controls.size(); ++q)
    if (n.initial[q])
      c[State{q, std::vector<Value>(n.registers)}] = 1;
  return c;
}

Config next(NondetRegisterAutomaton const &n, Config const &config, Letter const &letter)
{
  Config out;
  Value in = letter.atom.value();
  for (auto const &[state, w] : config) {
    std::set<State> targets;
    for (auto const &rule : n.transitions) {
      if (rule.from != state.control || rule.tag != letter.tag)
        continue;
      auto regs = apply(rule.update, state.registers, letter.atom.value());
      if (satisfied(rule.guard, state.registers, in, regs))
        targets.insert(State{rule.to, regs});
    }
    for (auto const &t : targets)
      out[t] += w;
  }
  return out;
}

Rational accepting_runs(NondetRegisterAutomaton const &n, Config const &config)
{
  Rational sum(0);
  for (auto const &[state, w] : config)
    if (std::any_of(n.accepting.begin(), n.accepting.end(), [&](AcceptRule const &r) {
          return r.control == state.control && satisfied(r.guard, state.registers, std::nullopt, {});
        }))
      sum += w;
  return sum;
}

Rational accepting_runs(NondetRegisterAutomaton const &n, std::span<Letter const> word)
{
  auto c = start(n);
  for (auto const &l : word)
    c = next(n, c, l);
  return accepting_runs(n, c);
}

bool accepts(NondetRegisterAutomaton const &n, std::span<Letter const> word)
{
  return accepting_runs(n, word) > 0;
}

} // namespace reference

namespace
{

template<typename Automaton, typename Output>
std::optional<Word> first_difference(Automaton const &lhs, Automaton const &rhs, std::span<Atom const> pool,
                                     std::size_t max_length, Output output)
{
  std::vector<reference::Config> left{reference::start(lhs)}, right{reference::start(rhs)};
  std::optional<Word> found;
  for_each_word(lhs.tags.size(), pool, max_length, [&](Word const &word) {
    if (found)
      return false;
    left.resize(word.size() + 1);
    right.resize(word.size() + 1);
    if (!word.empty()) {
      left[word.size()] = reference::next(lhs, left[word.size() - 1], word.back());
      right[word.size()] = reference::next(rhs, right[word.size() - 1], word.back());
    }
    if (output(lhs, left[word.size()]) != output(rhs, right[word.size()]))
      found = word;
    return !found;
  });
  return found;
}

} // anonymous namespace

std::optional<Word> brute_force_difference(WeightedRegisterAutomaton const &lhs,
                                           WeightedRegisterAutomaton const &rhs,
                                           std::span<Atom const> pool,
                                           std::size_t max_length)
{
  return first_difference(lhs, rhs, pool, max_length,
                          [](WeightedRegisterAutomaton const &a, reference::Config const &c) {
                            return reference::output(a, c);
                          });
}

std::optional<Word> brute_force_language_difference(NondetRegisterAutomaton const &lhs,
                                                    NondetRegisterAutomaton const &rhs,
                                                    std::span<Atom const> pool,
                                                    std::size_t max_length)
{
  return first_difference(lhs, rhs, pool, max_length,
                          [](NondetRegisterAutomaton const &n, reference::Config const &c) {
                            return reference::accepting_runs(n, c) > 0;
                          });
}

} // namespace testing

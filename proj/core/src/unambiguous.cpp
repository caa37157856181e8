#include "orbitwa/unambiguous.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "orbitwa/error.hpp"

namespace orbitwa
{

std::size_t NondetRegisterAutomaton::add_control(std::string name, bool is_initial)
{
  controls.push_back(std::move(name));
  initial.push_back(is_initial);
  return controls.size() - 1;
}

std::size_t NondetRegisterAutomaton::add_tag(std::string name)
{
  tags.push_back(std::move(name));
  return tags.size() - 1;
}

void NondetRegisterAutomaton::add_transition(std::size_t from, std::size_t tag, std::size_t to,
                                             Guard guard, Update update)
{
  transitions.push_back({from, tag, to, std::move(guard), std::move(update)});
}

void NondetRegisterAutomaton::add_accepting(std::size_t control, Guard guard)
{
  accepting.push_back({control, std::move(guard)});
}

namespace
{

// Rule-for-rule weighted image with weight 1; validates everything except
// the multiplicity of overlapping rules.
WeightedRegisterAutomaton literal_image(NondetRegisterAutomaton const &n)
{
  WeightedRegisterAutomaton w;
  w.kind = n.kind;
  w.registers = n.registers;
  w.controls = n.controls;
  w.tags = n.tags;
  for (std::size_t c = 0; c < n.controls.size(); ++c)
    w.initial.emplace_back(c < n.initial.size() && n.initial[c] ? 1 : 0);
  for (auto const &t : n.transitions)
    w.add_transition(t.from, t.tag, t.to, t.guard, t.update, 1);
  for (auto const &f : n.accepting)
    w.add_final(f.control, f.guard, 1);
  return w;
}

} // anonymous namespace

std::vector<std::string> validate(NondetRegisterAutomaton const &n)
{
  auto diagnostics = validate(literal_image(n));
  if (n.initial.size() != n.controls.size())
    diagnostics.push_back("initial flags do not match the number of controls");
  return diagnostics;
}

WeightedRegisterAutomaton to_counting_weighted(NondetRegisterAutomaton const &n)
{
  if (auto diagnostics = validate(n); !diagnostics.empty()) {
    std::string message = "invalid nondeterministic automaton:";
    for (auto const &d : diagnostics)
      message += "\n  " + d;
    throw InvalidInput(message);
  }

  auto const k = n.registers;
  WeightedRegisterAutomaton w = literal_image(n);
  w.transitions.clear();
  w.finals.clear();

  std::vector<Variable> transition_vars;
  for (std::size_t i = 1; i <= k; ++i)
    transition_vars.push_back(source(i));
  transition_vars.push_back(input());
  std::vector<bool> allow_bot(k, true);
  allow_bot.push_back(false);
  auto const transition_types = orbit_representatives(n.kind, allow_bot);

  for (std::size_t c = 0; c < n.controls.size(); ++c) {
    for (std::size_t tag = 0; tag < n.tags.size(); ++tag) {
      std::vector<NondetRule const *> rules;
      for (auto const &t : n.transitions)
        if (t.from == c && t.tag == tag)
          rules.push_back(&t);
      if (rules.empty())
        continue;

      for (auto const &rep : transition_types) {
        std::span<Slot const> regs(rep.data(), k);
        Atom const &atom = *rep[k];

        std::set<ConcreteState> seen;
        for (auto const *rule : rules) {
          Tuple next;
          for (auto const &src : rule->update) {
            if (src.kind == RegisterSource::Kind::Register)
              next.push_back(regs[src.index]);
            else if (src.kind == RegisterSource::Kind::Input)
              next.emplace_back(atom);
            else
              next.emplace_back();
          }
          if (!holds(rule->guard, Binding{regs, &atom, next}))
            continue;
          if (seen.insert(ConcreteState{rule->to, next}).second)
            w.add_transition(c, tag, rule->to, orbit_guard(n.kind, transition_vars, rep), rule->update, 1);
        }
      }
    }
  }

  std::vector<Variable> register_vars;
  for (std::size_t i = 1; i <= k; ++i)
    register_vars.push_back(source(i));
  auto const register_types = orbit_representatives(n.kind, std::vector<bool>(k, true));

  for (std::size_t c = 0; c < n.controls.size(); ++c) {
    for (auto const &rep : register_types) {
      bool accepted = std::any_of(n.accepting.begin(), n.accepting.end(), [&](AcceptRule const &f) {
        return f.control == c && holds(f.guard, Binding{rep, nullptr, {}});
      });
      if (accepted)
        w.add_final(c, orbit_guard(n.kind, register_vars, rep), 1);
    }
  }
  return w;
}

std::vector<Word> check_ambiguity_sampled(NondetRegisterAutomaton const &n,
                                          std::span<Atom const> pool,
                                          std::size_t max_length)
{
  auto const counting = to_counting_weighted(n);

  std::vector<Letter> letters;
  for (std::size_t tag = 0; tag < n.tags.size(); ++tag)
    for (auto const &atom : pool)
      letters.push_back({tag, atom});

  std::vector<Word> ambiguous;
  Word word;
  std::function<void(Configuration const &)> visit = [&](Configuration const &config) {
    if (final_weight(counting, config) >= 2)
      ambiguous.push_back(word);
    if (word.size() == max_length || config.empty())
      return;
    for (auto const &letter : letters) {
      word.push_back(letter);
      visit(advance(counting, config, letter));
      word.pop_back();
    }
  };
  visit(initial_configuration(counting));

  std::stable_sort(ambiguous.begin(), ambiguous.end(),
                   [](Word const &a, Word const &b) { return a.size() < b.size(); });
  return ambiguous;
}

UnambiguousDecision unambiguous_equivalence(NondetRegisterAutomaton const &lhs,
                                            NondetRegisterAutomaton const &rhs,
                                            UnambiguousOptions const &options)
{
  auto const lhs_counting = to_counting_weighted(lhs);
  auto const rhs_counting = to_counting_weighted(rhs);

  UnambiguousDecision result;
  result.decision = decide_equivalence(lhs_counting, rhs_counting, options.decision);

  auto pool = canonical_pool(options.sample_atoms);
  auto warn = [&](NondetRegisterAutomaton const &n, char const *side) {
    auto words = check_ambiguity_sampled(n, pool, options.sample_length);
    if (words.empty())
      return;
    result.warnings.push_back(std::string(side) + " automaton is ambiguous, e.g. on '" +
                              to_string(literal_image(n), words.front()) +
                              "' (" + std::to_string(words.size()) +
                              " sampled words with several accepting runs); the verdict compares run counts");
  };
  warn(lhs, "left");
  warn(rhs, "right");
  return result;
}

} // namespace orbitwa

#include "orbitwa_tools/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitwa/document.hpp"
#include "orbitwa/equivalence.hpp"
#include "orbitwa/error.hpp"
#include "orbitwa/length_lab.hpp"
#include "orbitwa/unambiguous.hpp"

namespace orbitwa::cli
{

namespace
{

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json atoms_json(std::span<Atom const> atoms)
{
  json out = json::array();
  for (auto const &a : atoms)
    out.push_back(to_string(a));
  return out;
}

json bound_json(LengthBoundReport const &b)
{
  return {{"kind", std::string(to_string(b.kind))},
          {"orbit_count", b.orbit_count},
          {"registers", b.atom_dimension},
          {"bound", b.bound},
          {"formula", b.formula}};
}

json decision_json(ZeronessDecision const &d)
{
  return {{"length_bound", bound_json(d.bound)},
          {"atoms_used", d.atoms_used},
          {"support", atoms_json(d.support)},
          {"restricted_states", d.restricted_states},
          {"explored_states", d.explored_states},
          {"restricted_letters", d.restricted_letters},
          {"forward_dimension", d.forward_dimension}};
}

struct Loaded
{
  DocumentKind kind;
  std::optional<WeightedRegisterAutomaton> weighted;
  std::optional<NondetRegisterAutomaton> nondet;
};

Loaded load(std::string const &path)
{
  auto text = read_text_file(path);
  Loaded l{detect_document_kind(text, path), {}, {}};
  if (l.kind == DocumentKind::Weighted)
    l.weighted = parse_weighted_document(text, path);
  else
    l.nondet = parse_nondet_document(text, path);
  return l;
}

WeightedRegisterAutomaton load_weighted(std::string const &path)
{
  auto l = load(path);
  if (!l.weighted)
    throw InvalidInput(path + ": expected a weighted automaton (found \"accepting\"); use --mode unambiguous");
  return *l.weighted;
}

// Weighted view of any document: nondeterministic ones count accepting runs.
WeightedRegisterAutomaton load_as_weighted(std::string const &path)
{
  auto l = load(path);
  return l.weighted ? *l.weighted : to_counting_weighted(*l.nondet);
}

json witness_json(WeightedRegisterAutomaton const &alphabet, std::optional<Word> const &witness)
{
  if (!witness)
    return nullptr;
  return to_string(alphabet, *witness);
}

// The witness refers to the tags of difference(lhs, rhs); translate it into each side by name.
std::optional<Word> translate(Word const &word, std::vector<std::string> const &from,
                              WeightedRegisterAutomaton const &to)
{
  Word out;
  for (auto const &letter : word) {
    auto tag = to.find_tag(from.at(letter.tag));
    if (!tag)
      return std::nullopt;
    out.push_back({*tag, letter.atom});
  }
  return out;
}

json side_weight(Word const &word, std::vector<std::string> const &tags, WeightedRegisterAutomaton const &side)
{
  auto translated = translate(word, tags, side);
  return to_string(translated ? oracle_weight(side, *translated) : Rational(0));
}

struct Settings
{
  std::string file_a;
  std::string file_b;
  std::string mode = "weighted";
  std::optional<std::size_t> atoms;
  std::size_t cap = default_state_ceiling;
  std::string word;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string atom_list;
  std::size_t max_len = 0;
  std::string kind;
  std::string form_file;
};

DecisionOptions decision_options(Settings const &s)
{
  DecisionOptions options;
  options.atom_budget = s.atoms;
  options.state_ceiling = s.cap;
  return options;
}

int cmd_equiv(Settings const &s, std::ostream &out)
{
  auto start = Clock::now();
  json report = {{"command", "equiv"}, {"mode", s.mode}};

  WeightedRegisterAutomaton lhs, rhs;
  EquivalenceDecision decision;
  if (s.mode == "unambiguous") {
    auto a = load(s.file_a), b = load(s.file_b);
    if (!a.nondet || !b.nondet)
      throw InvalidInput("--mode unambiguous expects two nondeterministic documents");
    UnambiguousOptions options;
    options.decision = decision_options(s);
    auto result = unambiguous_equivalence(*a.nondet, *b.nondet, options);
    decision = result.decision;
    report["warnings"] = result.warnings;
    lhs = to_counting_weighted(*a.nondet);
    rhs = to_counting_weighted(*b.nondet);
  } else {
    lhs = load_weighted(s.file_a);
    rhs = load_weighted(s.file_b);
    decision = decide_equivalence(lhs, rhs, decision_options(s));
  }

  auto diff = difference(lhs, rhs);
  report["equivalent"] = decision.equivalent();
  report["witness"] = witness_json(diff, decision.witness);
  if (decision.witness) {
    report["witness_length"] = decision.witness->size();
    report["weights"] = {{"lhs", side_weight(*decision.witness, diff.tags, lhs)},
                         {"rhs", side_weight(*decision.witness, diff.tags, rhs)}};
  }
  report.update(decision_json(decision));
  report["wall_time_ms"] = elapsed_ms(start);
  out << report.dump() << "\n";
  return decision.equivalent() ? Positive : Negative;
}

int cmd_zeroness(Settings const &s, std::ostream &out)
{
  auto start = Clock::now();
  auto a = load_as_weighted(s.file_a);
  auto decision = decide_zeroness(a, decision_options(s));
  json report = {{"command", "zeroness"}, {"zero", decision.zero}, {"witness", witness_json(a, decision.witness)}};
  if (decision.witness)
    report["weight"] = to_string(oracle_weight(a, *decision.witness));
  report.update(decision_json(decision));
  report["wall_time_ms"] = elapsed_ms(start);
  out << report.dump() << "\n";
  return decision.zero ? Positive : Negative;
}

int cmd_weight(Settings const &s, std::ostream &out)
{
  auto a = load_as_weighted(s.file_a);
  auto word = parse_word(a.kind, a.tags, s.word);
  json report = {{"command", "weight"}, {"word", to_string(a, word)}, {"weight", to_string(oracle_weight(a, word))}};
  out << report.dump() << "\n";
  return Positive;
}

int cmd_rank(Settings const &s, std::ostream &out)
{
  if (s.k < 1 || s.n < s.k)
    throw InvalidInput("rank needs n >= k >= 1");
  auto m = build_balance_matrix(s.n, s.k);
  auto rank = matrix_rank(m.rows);
  json report = {{"command", "rank"},
                 {"n", s.n},
                 {"k", s.k},
                 {"rows", m.rows.size()},
                 {"columns", m.columns.size()},
                 {"rank", rank},
                 {"nullity", m.columns.size() - rank}};
  out << report.dump() << "\n";
  return Positive;
}

json subset_vector_json(SubsetVector const &v)
{
  json out = json::array();
  for (auto const &[set, c] : v)
    out.push_back({{"set", atoms_json(set)}, {"coefficient", to_string(c)}});
  return out;
}

int cmd_cogs(Settings const &s, std::ostream &out)
{
  auto atoms = parse_atom_list(AtomKind::Ordered, s.atom_list);
  std::sort(atoms.begin(), atoms.end());
  if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end())
    throw InvalidInput("--t lists an atom twice");
  if (s.k < 1 || atoms.size() < 2 * s.k)
    throw InvalidInput("cogs needs k >= 1 and at least 2k atoms");

  auto cogs = narrow_cogs(atoms, s.k);
  auto m = build_balance_matrix(atoms, s.k);
  std::vector<SubsetVector> vectors;
  json list = json::array();
  for (auto const &cog : cogs) {
    vectors.push_back(cog.vector);
    list.push_back({{"alpha", atoms_json(cog.alpha)},
                    {"vector", subset_vector_json(cog.vector)},
                    {"balanced", is_balanced(cog.vector, atoms, s.k)}});
  }
  json report = {{"command", "cogs"},
                 {"atoms", atoms_json(atoms)},
                 {"k", s.k},
                 {"count", cogs.size()},
                 {"rank", matrix_rank(vectors)},
                 {"null_dimension", null_space_dimension(m.rows, m.columns)},
                 {"cogs", list}};
  out << report.dump() << "\n";
  return Positive;
}

int cmd_chain(Settings const &s, std::ostream &out)
{
  auto a = load_as_weighted(s.file_a);
  auto pool = parse_atom_list(a.kind, s.atom_list);
  auto count = restricted_state_count(a, pool.size());
  if (count > s.cap)
    throw ResourceLimitExceeded("chain would track " + std::to_string(count) + " concrete states", count, s.cap);

  auto chain = chain_stabilization(a, pool, s.max_len);
  auto bound = length_bound(a.kind, state_orbit_count(a), a.registers);
  json report = {{"command", "chain"},
                 {"pool", atoms_json(pool)},
                 {"max_len", s.max_len},
                 {"dimensions", chain.dimensions},
                 {"stabilization_index", chain.stabilization_index ? json(*chain.stabilization_index) : json(nullptr)},
                 {"concrete_states", chain.concrete_states},
                 {"length_bound", bound_json(bound)}};
  out << report.dump() << "\n";
  return Positive;
}

std::string generator_name(FormGenerator const &g)
{
  switch (g.kind) {
  case FormGenerator::Kind::All: return "f_A";
  case FormGenerator::Kind::Point: return "f_" + to_string(g.atom);
  case FormGenerator::Kind::Above: return "f_>" + to_string(g.atom);
  }
  return "";
}

int cmd_decompose(Settings const &s, std::ostream &out)
{
  auto kind = parse_atom_kind(s.kind);
  if (!kind)
    throw InvalidInput("--kind must be equality or ordered");
  auto form = parse_form_document(*kind, read_text_file(s.form_file), s.form_file);
  auto combination = decompose_form(*kind, form);

  json terms = json::array();
  for (auto const &[g, c] : combination)
    terms.push_back({{"generator", generator_name(g)}, {"coefficient", to_string(c)}});
  auto probes = probe_atoms(form);
  bool round_trip = std::all_of(probes.begin(), probes.end(),
                                [&](Atom const &a) { return evaluate(combination, a) == evaluate(form, a); });
  json report = {{"command", "decompose"},
                 {"kind", s.kind},
                 {"combination", terms},
                 {"probes", atoms_json(probes)},
                 {"round_trip", round_trip}};
  out << report.dump() << "\n";
  return Positive;
}

} // anonymous namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Equivalence and zeroness of weighted register automata", "orbitwa"};
  app.require_subcommand(1);
  Settings s;

  auto add_decision_flags = [&](CLI::App *cmd) {
    cmd->add_option("--l", s.atoms, "Number of atoms to restrict to (default: the length bound)");
    cmd->add_option("--cap", s.cap, "Largest restricted automaton to build, in states");
  };

  auto *equiv = app.add_subcommand("equiv", "Decide equivalence of two automata");
  equiv->add_option("file_a", s.file_a)->required()->check(CLI::ExistingFile);
  equiv->add_option("file_b", s.file_b)->required()->check(CLI::ExistingFile);
  equiv->add_option("--mode", s.mode)->check(CLI::IsMember({"weighted", "unambiguous"}));
  add_decision_flags(equiv);

  auto *zero = app.add_subcommand("zeroness", "Decide whether an automaton maps every word to 0");
  zero->add_option("file", s.file_a)->required()->check(CLI::ExistingFile);
  add_decision_flags(zero);

  auto *weight = app.add_subcommand("weight", "Weight of one word, by run enumeration");
  weight->add_option("file", s.file_a)->required()->check(CLI::ExistingFile);
  weight->add_option("--word", s.word, "Word as tag:atom,tag:atom")->required();

  auto *rank = app.add_subcommand("rank", "Rank of the balance matrix over n atoms");
  rank->add_option("--n", s.n)->required();
  rank->add_option("--k", s.k)->required();

  auto *cogs = app.add_subcommand("cogs", "Narrow cogs over a set of ordered atoms");
  cogs->add_option("--t", s.atom_list, "Comma-separated atoms")->required();
  cogs->add_option("--k", s.k)->required();

  auto *chain = app.add_subcommand("chain", "Dimensions of the configuration spans per word length");
  chain->add_option("file", s.file_a)->required()->check(CLI::ExistingFile);
  chain->add_option("--pool", s.atom_list, "Comma-separated atoms")->required();
  chain->add_option("--max-len", s.max_len)->required();
  chain->add_option("--cap", s.cap, "Largest number of concrete states to track");

  auto *decompose = app.add_subcommand("decompose", "Decompose a finitely supported form on atoms");
  decompose->add_option("--kind", s.kind)->required()->check(CLI::IsMember({"equality", "ordered"}));
  decompose->add_option("--form", s.form_file)->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const &e) {
    out << app.help();
    return Positive;
  } catch (CLI::CallForAllHelp const &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return Positive;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }

  try {
    if (*equiv)
      return cmd_equiv(s, out);
    if (*zero)
      return cmd_zeroness(s, out);
    if (*weight)
      return cmd_weight(s, out);
    if (*rank)
      return cmd_rank(s, out);
    if (*cogs)
      return cmd_cogs(s, out);
    if (*chain)
      return cmd_chain(s, out);
    return cmd_decompose(s, out);
  } catch (ResourceLimitExceeded const &e) {
    err << "resource ceiling: " << e.what() << " (required " << e.required() << ", limit " << e.limit()
        << "; raise --cap or lower --l)\n";
    return ResourceCeiling;
  } catch (std::overflow_error const &e) {
    err << "resource ceiling: " << e.what() << "\n";
    return ResourceCeiling;
  } catch (std::exception const &e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }
}

} // namespace orbitwa::cli

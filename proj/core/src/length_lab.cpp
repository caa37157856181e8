#include "orbitwa/length_lab.hpp"

#include <algorithm>
#include <set>

#include "orbitwa/error.hpp"
#include "orbitwa/forward_space.hpp"

namespace orbitwa
{

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

std::vector<AtomSet> k_subsets(std::span<Atom const> atoms_in, std::size_t k)
{
  std::vector<Atom> atoms(atoms_in.begin(), atoms_in.end());
  std::sort(atoms.begin(), atoms.end());

  std::vector<AtomSet> result;
  if (k > atoms.size())
    return result;

  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i)
    idx[i] = i;
  for (;;) {
    AtomSet s;
    s.reserve(k);
    for (auto i : idx)
      s.push_back(atoms[i]);
    result.push_back(std::move(s));

    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == atoms.size() - k + pos - 1)
      --pos;
    if (pos == 0)
      return result;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

SubsetVector make_cog(std::span<Atom const> alpha)
{
  if (alpha.size() % 2 != 0)
    throw InvalidInput("cog needs an even number of atoms");
  for (std::size_t i = 1; i < alpha.size(); ++i)
    if (!(alpha[i - 1] < alpha[i]))
      throw InvalidInput("cog atoms must be strictly increasing");

  auto const k = alpha.size() / 2;
  SubsetVector cog;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    AtomSet s;
    for (std::size_t i = 0; i < k; ++i)
      s.push_back(alpha[2 * i + ((mask >> i) & 1)]);
    cog.add(s, __builtin_popcountll(mask) % 2 ? Rational(-1) : Rational(1));
  }
  return cog;
}

namespace
{

void check_support(SubsetVector const &v, std::span<Atom const> atoms, std::size_t k)
{
  std::set<Atom> allowed(atoms.begin(), atoms.end());
  for (auto const &[key, c] : v) {
    if (key.size() != k)
      throw InvalidInput("vector key is not a " + std::to_string(k) + "-subset");
    for (auto const &a : key)
      if (!allowed.count(a))
        throw InvalidInput("vector support escapes the atom set (" + to_string(a) + ")");
  }
}

std::size_t interval_of(AtomSet const &base, Atom const &a)
{
  return static_cast<std::size_t>(std::count_if(base.begin(), base.end(), [&](Atom const &s) { return s < a; }));
}

AtomSet with(AtomSet s, Atom const &a)
{
  s.insert(std::upper_bound(s.begin(), s.end(), a), a);
  return s;
}

} // anonymous namespace

bool is_balanced(SubsetVector const &v, std::span<Atom const> atoms, std::size_t k)
{
  check_support(v, atoms, k);
  if (k == 0)
    return v.empty();

  // Each key R contributes to the condition (R \ {a}, interval of a) for each a ∈ R.
  std::map<std::pair<AtomSet, std::size_t>, Rational> sums;
  for (auto const &[key, c] : v) {
    for (std::size_t drop = 0; drop < key.size(); ++drop) {
      AtomSet base = key;
      base.erase(base.begin() + static_cast<std::ptrdiff_t>(drop));
      sums[{base, drop}] += c;
    }
  }
  return std::all_of(sums.begin(), sums.end(), [](auto const &entry) { return entry.second == 0; });
}

BalanceMatrix build_balance_matrix(std::span<Atom const> atoms_in, std::size_t k)
{
  std::vector<Atom> atoms(atoms_in.begin(), atoms_in.end());
  std::sort(atoms.begin(), atoms.end());
  if (k < 1 || atoms.size() < k)
    throw InvalidInput("balance matrix needs n >= k >= 1");

  BalanceMatrix m;
  m.k = k;
  m.atoms = atoms;
  m.columns = k_subsets(atoms, k);

  auto const bases = k_subsets(atoms, k - 1);
  for (std::size_t interval = 0; interval < k; ++interval) {
    for (auto const &base : bases) {
      SubsetVector row;
      for (auto const &a : atoms)
        if (!std::binary_search(base.begin(), base.end(), a) && interval_of(base, a) == interval)
          row.add(with(base, a), Rational(1));
      m.conditions.push_back({base, interval});
      m.rows.push_back(std::move(row));
    }
  }
  return m;
}

BalanceMatrix build_balance_matrix(std::size_t n, std::size_t k)
{
  auto atoms = canonical_pool(n);
  return build_balance_matrix(atoms, k);
}

std::size_t balance_rank(std::size_t n, std::size_t k)
{
  return matrix_rank(build_balance_matrix(n, k).rows);
}

std::size_t balance_nullity(std::size_t n, std::size_t k)
{
  auto m = build_balance_matrix(n, k);
  return null_space_dimension(m.rows, m.columns);
}

std::vector<Cog> narrow_cogs(std::span<Atom const> atoms_in, std::size_t k)
{
  std::vector<Atom> atoms(atoms_in.begin(), atoms_in.end());
  std::sort(atoms.begin(), atoms.end());
  if (atoms.size() < 2 * k)
    throw InvalidInput("narrow cogs need |T| >= 2k");

  // Narrow α ↔ k pair-starts j_1 < ... < j_k in T with j_{i+1} ≥ j_i + 2.
  // Shifting j_i by -i turns these into arbitrary k-subsets of n-k positions.
  std::vector<Cog> cogs;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i)
    idx[i] = i;
  auto const slots = atoms.size() - k;
  for (;;) {
    Cog cog;
    for (std::size_t i = 0; i < k; ++i) {
      cog.alpha.push_back(atoms[idx[i] + i]);
      cog.alpha.push_back(atoms[idx[i] + i + 1]);
    }
    cog.vector = make_cog(cog.alpha);
    cogs.push_back(std::move(cog));

    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == slots - k + pos - 1)
      --pos;
    if (pos == 0)
      break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
  return cogs;
}

CogExtraction extract_cog(SubsetVector const &v, std::span<Atom const> atoms_in, std::size_t k)
{
  if (v.empty())
    throw InvalidInput("cannot extract a cog from the zero vector");
  check_support(v, atoms_in, k);

  std::vector<Atom> atoms(atoms_in.begin(), atoms_in.end());
  std::sort(atoms.begin(), atoms.end());

  AtomSet const chosen = v.begin()->first;
  Rational const pivot = v.begin()->second;

  CogExtraction out;
  std::vector<Atom> fresh;
  for (auto const &a : chosen) {
    auto next = std::upper_bound(atoms.begin(), atoms.end(), a);
    Rational b = next == atoms.end() ? Rational(a.value() + 1) : Rational((a.value() + next->value()) / 2);
    fresh.emplace_back(b);
    out.alpha.push_back(a);
    out.alpha.push_back(fresh.back());
  }

  // b_i sits in the gap right above a_i, so renaming a_i to b_i is an
  // order automorphism on the current support.
  SubsetVector current = v;
  out.alpha_coefficients.push_back(current.coeff(chosen));
  for (std::size_t i = 0; i < k; ++i) {
    SubsetVector image;
    for (auto const &[key, c] : current) {
      AtomSet moved = key;
      for (auto &x : moved)
        if (x == chosen[i])
          x = fresh[i];
      image.add(moved, c);
    }
    current -= image;
    out.alpha_coefficients.push_back(current.coeff(chosen));
  }

  out.cog = (Rational(1) / pivot) * std::move(current);
  return out;
}

ChainReport chain_stabilization(WeightedRegisterAutomaton const &automaton,
                                std::span<Atom const> pool,
                                std::size_t max_length)
{
  require_valid(automaton);

  std::vector<Letter> letters;
  for (std::size_t tag = 0; tag < automaton.tags.size(); ++tag)
    for (auto const &atom : pool)
      letters.push_back({tag, atom});

  auto space = explore_forward<ConcreteState, Letter>(
    initial_configuration(automaton), std::span<Letter const>(letters),
    [&](Configuration const &config, Letter const &letter) { return advance(automaton, config, letter); },
    max_length);

  ChainReport report;
  report.concrete_states = restricted_state_count(automaton, pool.size());
  report.dimensions = space.dimensions;
  report.dimensions.resize(max_length + 1, report.dimensions.back());

  if (report.dimensions[0] == 0) {
    report.stabilization_index = 0;
  } else {
    for (std::size_t i = 1; i <= max_length; ++i) {
      if (report.dimensions[i] == report.dimensions[i - 1]) {
        report.stabilization_index = i;
        break;
      }
    }
  }
  return report;
}

Rational evaluate(FormSpec const &form, Atom const &atom)
{
  if (auto const *eq = std::get_if<EqualityForm>(&form)) {
    auto it = eq->exceptions.find(atom);
    return it == eq->exceptions.end() ? eq->otherwise : it->second;
  }
  auto const &ord = std::get<OrderedForm>(form);
  std::size_t interval = 0;
  for (auto const &[point, value] : ord.points) {
    if (atom == point)
      return value;
    if (point < atom)
      ++interval;
  }
  return ord.intervals.at(interval);
}

Rational evaluate(FormCombination const &combination, Atom const &atom)
{
  Rational sum(0);
  for (auto const &[gen, c] : combination) {
    bool hit = false;
    switch (gen.kind) {
    case FormGenerator::Kind::All: hit = true; break;
    case FormGenerator::Kind::Point: hit = atom == gen.atom; break;
    case FormGenerator::Kind::Above: hit = gen.atom < atom; break;
    }
    if (hit)
      sum += c;
  }
  return sum;
}

namespace
{

void check_ordered_form(OrderedForm const &form)
{
  if (form.intervals.size() != form.points.size() + 1)
    throw InvalidInput("ordered form needs one interval value more than breakpoints");
  for (std::size_t i = 1; i < form.points.size(); ++i)
    if (!(form.points[i - 1].first < form.points[i].first))
      throw InvalidInput("ordered form breakpoints must be strictly increasing");
}

} // anonymous namespace

FormCombination decompose_form(AtomKind kind, FormSpec const &form)
{
  FormCombination out;
  if (kind == AtomKind::Equality) {
    auto const *eq = std::get_if<EqualityForm>(&form);
    if (!eq)
      throw InvalidInput("equality atoms need an exception/default form");
    out.add({FormGenerator::Kind::All, Atom()}, eq->otherwise);
    for (auto const &[a, value] : eq->exceptions)
      out.add({FormGenerator::Kind::Point, a}, value - eq->otherwise);
    return out;
  }

  auto const *ord = std::get_if<OrderedForm>(&form);
  if (!ord)
    throw InvalidInput("ordered atoms need a breakpoint form");
  check_ordered_form(*ord);

  out.add({FormGenerator::Kind::All, Atom()}, ord->intervals[0]);
  for (std::size_t j = 0; j < ord->points.size(); ++j) {
    auto const &[point, value] = ord->points[j];
    // Just left of the breakpoint the combination so far equals intervals[j].
    out.add({FormGenerator::Kind::Point, point}, value - ord->intervals[j]);
    out.add({FormGenerator::Kind::Above, point}, ord->intervals[j + 1] - ord->intervals[j]);
  }
  return out;
}

std::vector<Atom> probe_atoms(FormSpec const &form)
{
  std::vector<Atom> probes;
  if (auto const *eq = std::get_if<EqualityForm>(&form)) {
    Rational top(0);
    for (auto const &[a, value] : eq->exceptions) {
      probes.push_back(a);
      top = std::max(top, a.value());
    }
    probes.emplace_back(Rational(top + 1));
    probes.emplace_back(Rational(top + 2));
    return probes;
  }

  auto const &ord = std::get<OrderedForm>(form);
  if (ord.points.empty()) {
    probes.emplace_back(0L);
    probes.emplace_back(1L);
    return probes;
  }
  for (std::size_t j = 0; j < ord.points.size(); ++j) {
    probes.push_back(ord.points[j].first);
    if (j + 1 < ord.points.size())
      probes.emplace_back(Rational((ord.points[j].first.value() + ord.points[j + 1].first.value()) / 2));
  }
  probes.emplace_back(Rational(ord.points.front().first.value() - 1));
  probes.emplace_back(Rational(ord.points.back().first.value() + 1));
  return probes;
}

} // namespace orbitwa

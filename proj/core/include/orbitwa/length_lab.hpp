#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "orbitwa/atoms.hpp"
#include "orbitwa/automaton.hpp"
#include "orbitwa/vectors.hpp"

namespace orbitwa
{

/// A k-element set of atoms, kept sorted.
using AtomSet = std::vector<Atom>;
/// Vectors in Lin(T choose k).
using SubsetVector = FinVec<AtomSet>;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All k-subsets of `atoms` (sorted first), in lexicographic order.
std::vector<AtomSet> k_subsets(std::span<Atom const> atoms, std::size_t k);

// Cogs ----------------------------------------------------------------------

/// Cog on α = (a1 < b1 < ... < ak < bk): Σ_{I ⊆ {1..k}} (-1)^|I| · (a_i for i ∉ I, b_i for i ∈ I).
/// Throws InvalidInput unless α is strictly increasing of even length.
SubsetVector make_cog(std::span<Atom const> alpha);

/// Whether every interval sum Σ_{a ∈ I} v(S ∪ {a}) vanishes, for S ∈ (T choose k-1)
/// and I one of the k open intervals cut out by S. Throws InvalidInput if
/// some key of v is not a k-subset of T.
bool is_balanced(SubsetVector const &v, std::span<Atom const> atoms, std::size_t k);

struct BalanceCondition
{
  AtomSet base;         // S, of size k-1
  std::size_t interval; // 0 ..= k-1, counted from -∞
};

/// 0-1 matrix whose null space is the set of balanced vectors over T. Rows
/// are grouped by interval index, then ordered lexicographically by S.
struct BalanceMatrix
{
  std::size_t k = 0;
  std::vector<Atom> atoms;
  std::vector<BalanceCondition> conditions;
  std::vector<AtomSet> columns;
  std::vector<SubsetVector> rows;

  std::size_t n() const { return atoms.size(); }
  int entry(std::size_t row, std::size_t column) const
  { return rows[row].coeff(columns[column]) == 0 ? 0 : 1; }
};

/// Requires |T| ≥ k ≥ 1.
BalanceMatrix build_balance_matrix(std::span<Atom const> atoms, std::size_t k);
BalanceMatrix build_balance_matrix(std::size_t n, std::size_t k);

std::size_t balance_rank(std::size_t n, std::size_t k);
std::size_t balance_nullity(std::size_t n, std::size_t k);

struct Cog
{
  std::vector<Atom> alpha;
  SubsetVector vector;
};

/// Cogs over T whose pairs (a_i, b_i) are adjacent in T. There are C(n-k, k) of them.
std::vector<Cog> narrow_cogs(std::span<Atom const> atoms, std::size_t k);

struct CogExtraction
{
  /// a1 < b1 < ... < ak < bk, where {a_i} is the chosen key of v and each b_i
  /// is fresh, placed halfway between a_i and its successor in T.
  std::vector<Atom> alpha;
  SubsetVector cog;
  /// v_i({a_1..a_k}) for i = 0..k; all equal to v({a_1..a_k}).
  std::vector<Rational> alpha_coefficients;
};

/// Turns a nonzero v into the cog on α by k differencing steps
/// v_i = v_{i-1} - π_i(v_{i-1}), where π_i moves a_i to b_i and fixes every
/// other atom in the support. Throws InvalidInput on v = 0.
CogExtraction extract_cog(SubsetVector const &v, std::span<Atom const> atoms, std::size_t k);

// Chains --------------------------------------------------------------------

struct ChainReport
{
  /// dimensions[i] = dim of the span of configurations of words of length ≤ i over the pool.
  std::vector<std::size_t> dimensions;
  /// First i ≥ 1 with no growth from i-1 to i (0 when the chain is zero).
  /// Absent if the chain was still growing at max_length.
  std::optional<std::size_t> stabilization_index;
  /// Bound on every dimension: controls · (|pool|+1)^k.
  std::size_t concrete_states = 0;
};

ChainReport chain_stabilization(WeightedRegisterAutomaton const &automaton,
                                std::span<Atom const> pool,
                                std::size_t max_length);

// Finitely supported forms on atoms -----------------------------------------

/// f(a) = exceptions[a] if present, `otherwise` elsewhere.
struct EqualityForm
{
  std::map<Atom, Rational> exceptions;
  Rational otherwise;
};

/// Piecewise constant: value at each breakpoint, and on each of the
/// breakpoints+1 open intervals between them (from -∞).
struct OrderedForm
{
  std::vector<std::pair<Atom, Rational>> points; // increasing atoms
  std::vector<Rational> intervals;
};

using FormSpec = std::variant<EqualityForm, OrderedForm>;

Rational evaluate(FormSpec const &form, Atom const &atom);

/// f_A (constant 1), f_a (indicator of a) and f_{>a} (indicator of (a, ∞)).
struct FormGenerator
{
  enum class Kind { All, Point, Above };

  Kind kind = Kind::All;
  Atom atom;

  friend bool operator==(FormGenerator const &, FormGenerator const &) = default;
  friend auto operator<=>(FormGenerator const &, FormGenerator const &) = default;
};

using FormCombination = FinVec<FormGenerator>;

Rational evaluate(FormCombination const &combination, Atom const &atom);

/// Decomposition over {f_A} ∪ {f_a} (equality) or {f_A} ∪ {f_a} ∪ {f_{>a}} (ordered).
/// Throws InvalidInput if the form does not match `kind` or is malformed.
FormCombination decompose_form(AtomKind kind, FormSpec const &form);

/// Exceptions / breakpoints, midpoints between consecutive ones, and two fresh atoms.
std::vector<Atom> probe_atoms(FormSpec const &form);

} // namespace orbitwa

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "orbitwa/error.hpp"
#include "orbitwa/rational.hpp"

namespace orbitwa
{

/// A finitely supported map from basis keys to exact rationals. Zero
/// coefficients are never stored, so equality is coefficient-wise.
template<typename Key>
class FinVec
{
public:
  using key_type = Key;
  using container = std::map<Key, Rational>;
  using const_iterator = typename container::const_iterator;

  FinVec() = default;

  FinVec(std::initializer_list<std::pair<Key const, Rational>> entries)
  {
    for (auto const &[key, c] : entries)
      add(key, c);
  }

  static FinVec unit(Key key)
  {
    FinVec v;
    v._entries.emplace(std::move(key), Rational(1));
    return v;
  }

  Rational coeff(Key const &key) const
  {
    auto it = _entries.find(key);
    return it == _entries.end() ? Rational(0) : it->second;
  }

  void add(Key const &key, Rational const &c)
  {
    if (c == 0)
      return;
    auto [it, inserted] = _entries.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        _entries.erase(it);
    }
  }

  /// this += c * other
  void add_scaled(FinVec const &other, Rational const &c)
  {
    if (c == 0)
      return;
    Rational term;
    auto hint = _entries.begin();
    for (auto const &[key, value] : other._entries) {
      mpq_mul(term.get_mpq_t(), c.get_mpq_t(), value.get_mpq_t());
      hint = _entries.lower_bound(key);
      if (hint == _entries.end() || key < hint->first) {
        hint = _entries.emplace_hint(hint, key, term);
        continue;
      }
      hint->second += term;
      if (hint->second == 0)
        hint = _entries.erase(hint);
    }
  }

  bool empty() const { return _entries.empty(); }
  std::size_t size() const { return _entries.size(); }
  const_iterator begin() const { return _entries.begin(); }
  const_iterator end() const { return _entries.end(); }
  container const &entries() const { return _entries; }

  FinVec &operator+=(FinVec const &other) { add_scaled(other, Rational(1)); return *this; }
  FinVec &operator-=(FinVec const &other) { add_scaled(other, Rational(-1)); return *this; }

  FinVec &operator*=(Rational const &c)
  {
    if (c == 0) {
      _entries.clear();
      return *this;
    }
    for (auto &entry : _entries)
      entry.second *= c;
    return *this;
  }

  friend FinVec operator+(FinVec lhs, FinVec const &rhs) { return lhs += rhs; }
  friend FinVec operator-(FinVec lhs, FinVec const &rhs) { return lhs -= rhs; }
  friend FinVec operator*(Rational const &c, FinVec v) { return v *= c; }
  friend FinVec operator-(FinVec v) { return v *= Rational(-1); }

  friend bool operator==(FinVec const &lhs, FinVec const &rhs) { return lhs._entries == rhs._entries; }

private:
  container _entries;
};

/// Σ_key lhs(key) * rhs(key)
template<typename Key>
Rational dot(FinVec<Key> const &lhs, FinVec<Key> const &rhs)
{
  auto const &small = lhs.size() <= rhs.size() ? lhs : rhs;
  auto const &large = lhs.size() <= rhs.size() ? rhs : lhs;
  Rational sum(0);
  for (auto const &[key, c] : small)
    sum += c * large.coeff(key);
  return sum;
}

/// Reduced row-echelon basis of a subspace, grown one vector at a time.
///
/// Every row has coefficient 1 at its pivot key and the pivot key of a row
/// occurs in no other row. Pivots are the smallest key of the residual.
template<typename Key>
class SpanBasis
{
public:
  std::size_t dimension() const { return _rows.size(); }
  std::vector<FinVec<Key>> const &rows() const { return _rows; }
  Key const &pivot(std::size_t row) const { return _pivot_of_row[row]; }

  /// v minus its projection onto the span along the pivot coordinates.
  FinVec<Key> reduce(FinVec<Key> v) const
  {
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (auto const &[key, c] : v) {
      auto it = _row_of_pivot.find(key);
      if (it != _row_of_pivot.end())
        hits.emplace_back(it->second, c);
    }
    // Rows never contain foreign pivots, so the coefficients collected above
    // are unaffected by the subtractions below.
    for (auto const &[row, c] : hits)
      v.add_scaled(_rows[row], -c);
    return v;
  }

  bool contains(FinVec<Key> const &v) const { return reduce(v).empty(); }

  /// Returns true iff the dimension grew.
  bool insert(FinVec<Key> const &v)
  {
    auto residual = reduce(v);
    if (residual.empty())
      return false;

    auto const pivot_key = residual.begin()->first;
    Rational const lead = residual.begin()->second;
    if (lead != 1)
      residual *= Rational(1) / lead;

    for (auto &row : _rows) {
      // A row's keys lie between its pivot and its last key.
      if (row.entries().rbegin()->first < pivot_key || pivot_key < row.begin()->first)
        continue;
      Rational c = row.coeff(pivot_key);
      if (c != 0)
        row.add_scaled(residual, -c);
    }

    _row_of_pivot.emplace(pivot_key, _rows.size());
    _pivot_of_row.push_back(pivot_key);
    _rows.push_back(std::move(residual));
    return true;
  }

  /// Coordinates of v with respect to rows(). Requires contains(v).
  std::vector<Rational> coordinates(FinVec<Key> const &v) const
  {
    std::vector<Rational> coords(_rows.size());
    for (std::size_t i = 0; i < _rows.size(); ++i)
      coords[i] = v.coeff(_pivot_of_row[i]);
    return coords;
  }

private:
  std::vector<FinVec<Key>> _rows;
  std::vector<Key> _pivot_of_row;
  std::map<Key, std::size_t> _row_of_pivot;
};

template<typename Key>
std::size_t matrix_rank(std::span<FinVec<Key> const> rows)
{
  SpanBasis<Key> basis;
  for (auto const &row : rows)
    basis.insert(row);
  return basis.dimension();
}

template<typename Key>
std::size_t matrix_rank(std::vector<FinVec<Key>> const &rows)
{
  return matrix_rank(std::span<FinVec<Key> const>(rows));
}

/// |column_keys| - rank(rows). Throws InvalidInput if a row uses a key outside column_keys.
template<typename Key>
std::size_t null_space_dimension(std::span<FinVec<Key> const> rows, std::span<Key const> column_keys)
{
  std::map<Key, bool> columns;
  for (auto const &key : column_keys)
    columns.emplace(key, true);
  for (auto const &row : rows)
    for (auto const &entry : row)
      if (!columns.count(entry.first))
        throw InvalidInput("row uses a key outside the declared columns");
  return columns.size() - matrix_rank(rows);
}

template<typename Key>
std::size_t null_space_dimension(std::vector<FinVec<Key>> const &rows, std::vector<Key> const &column_keys)
{
  return null_space_dimension(std::span<FinVec<Key> const>(rows), std::span<Key const>(column_keys));
}

} // namespace orbitwa

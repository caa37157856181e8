#include "orbitwa/atoms.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "orbitwa/error.hpp"

namespace orbitwa
{

std::string_view to_string(AtomKind kind)
{
  return kind == AtomKind::Equality ? "equality" : "ordered";
}

std::optional<AtomKind> parse_atom_kind(std::string_view text)
{
  if (text == "equality")
    return AtomKind::Equality;
  if (text == "ordered")
    return AtomKind::Ordered;
  return std::nullopt;
}

std::string to_string(Atom const &atom)
{
  return to_decimal_string(atom.value());
}

std::string to_string(Slot const &slot)
{
  return slot ? to_string(*slot) : std::string("bot");
}

std::vector<Atom> canonical_pool(std::size_t m)
{
  std::vector<Atom> pool;
  pool.reserve(m);
  for (std::size_t i = 1; i <= m; ++i)
    pool.emplace_back(static_cast<long>(i));
  return pool;
}

std::vector<std::vector<std::size_t>> OrbitType::blocks() const
{
  std::vector<std::vector<std::size_t>> result(_classes.size());
  for (std::size_t pos = 0; pos < _positions.size(); ++pos)
    if (_positions[pos])
      result[*_positions[pos]].push_back(pos);
  return result;
}

std::string OrbitType::describe() const
{
  auto blocks_ = blocks();
  std::string out;

  auto bottoms = [&] {
    std::string s;
    for (std::size_t pos = 0; pos < _positions.size(); ++pos)
      if (!_positions[pos])
        s += (s.empty() ? "" : ", ") + ("pos" + std::to_string(pos + 1)) + " = bot";
    return s;
  };

  if (_kind == AtomKind::Equality) {
    for (std::size_t c = 0; c < blocks_.size(); ++c) {
      if (c > 0)
        out += ",";
      out += "{";
      for (std::size_t i = 0; i < blocks_[c].size(); ++i)
        out += (i ? "," : "") + std::to_string(blocks_[c][i] + 1);
      out += "}";
      if (_classes[c].pin)
        out += "=support-atom-" + std::to_string(*_classes[c].pin + 1);
    }
  } else {
    // Merge fresh classes with support atoms into one increasing chain.
    std::vector<std::string> groups;
    std::size_t next_support = 0;
    auto flush_support_below = [&](std::size_t gap) {
      while (next_support < gap)
        groups.push_back("support-atom-" + std::to_string(++next_support));
    };
    for (std::size_t c = 0; c < blocks_.size(); ++c) {
      std::string group;
      for (std::size_t pos : blocks_[c])
        group += (group.empty() ? "" : " = ") + ("pos" + std::to_string(pos + 1));
      if (auto pin = _classes[c].pin) {
        flush_support_below(*pin);
        group += " = support-atom-" + std::to_string(*pin + 1);
        next_support = *pin + 1;
      } else {
        flush_support_below(_classes[c].gap);
      }
      groups.push_back(group);
    }
    flush_support_below(_support_size);
    for (std::size_t i = 0; i < groups.size(); ++i)
      out += (i ? " < " : "") + groups[i];
  }

  if (auto b = bottoms(); !b.empty())
    out += (out.empty() ? "" : "; ") + b;
  return out;
}

OrbitType orbit_type(AtomKind kind, std::span<Slot const> tuple, std::span<Atom const> support)
{
  std::map<Atom, std::size_t> support_index;
  for (std::size_t i = 0; i < support.size(); ++i)
    if (!support_index.emplace(support[i], i).second)
      throw InvalidInput("duplicate support atom " + to_string(support[i]));

  std::vector<Atom> distinct;
  for (auto const &slot : tuple)
    if (slot && std::find(distinct.begin(), distinct.end(), *slot) == distinct.end())
      distinct.push_back(*slot);
  if (kind == AtomKind::Ordered)
    std::sort(distinct.begin(), distinct.end());

  std::vector<OrbitType::ValueClass> classes;
  classes.reserve(distinct.size());
  for (auto const &value : distinct) {
    OrbitType::ValueClass cls;
    if (auto it = support_index.find(value); it != support_index.end()) {
      cls.pin = it->second;
    } else if (kind == AtomKind::Ordered) {
      cls.gap = static_cast<std::size_t>(
        std::count_if(support.begin(), support.end(), [&](Atom const &s) { return s < value; }));
    }
    classes.push_back(cls);
  }

  std::vector<std::optional<std::size_t>> positions;
  positions.reserve(tuple.size());
  for (auto const &slot : tuple) {
    if (!slot) {
      positions.emplace_back();
      continue;
    }
    auto it = std::find(distinct.begin(), distinct.end(), *slot);
    positions.emplace_back(static_cast<std::size_t>(it - distinct.begin()));
  }

  return OrbitType(kind, support.size(), std::move(positions), std::move(classes));
}

bool same_orbit(AtomKind kind,
                std::span<Slot const> lhs,
                std::span<Slot const> rhs,
                std::span<Atom const> support)
{
  if (lhs.size() != rhs.size())
    return false;
  return orbit_type(kind, lhs, support) == orbit_type(kind, rhs, support);
}

std::vector<Tuple> enumerate_valuations(AtomKind,
                                        std::size_t k,
                                        std::span<Atom const> pool,
                                        bool allow_bot)
{
  std::vector<Slot> alphabet;
  if (allow_bot)
    alphabet.emplace_back();
  for (auto const &atom : pool)
    alphabet.emplace_back(atom);

  std::vector<Tuple> result;
  if (alphabet.empty() && k > 0)
    return result;

  std::vector<std::size_t> digits(k, 0);
  for (;;) {
    Tuple t;
    t.reserve(k);
    for (auto d : digits)
      t.push_back(alphabet[d]);
    result.push_back(std::move(t));

    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < alphabet.size())
        break;
      digits[pos] = 0;
      if (pos == 0)
        return result;
    }
    if (k == 0)
      return result;
  }
}

std::vector<Tuple> orbit_representatives(AtomKind kind, std::vector<bool> const &allow_bot)
{
  auto const arity = allow_bot.size();
  auto pool = canonical_pool(arity);

  std::set<OrbitType> seen;
  std::vector<Tuple> representatives;
  for (auto &t : enumerate_valuations(kind, arity, pool, true)) {
    bool ok = true;
    for (std::size_t i = 0; i < arity; ++i)
      if (!t[i] && !allow_bot[i])
        ok = false;
    if (ok && seen.insert(orbit_type(kind, t, {})).second)
      representatives.push_back(std::move(t));
  }
  return representatives;
}

std::uint64_t count_register_types(AtomKind kind, std::size_t k)
{
  return orbit_representatives(kind, std::vector<bool>(k, true)).size();
}

} // namespace orbitwa

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "orbitwa/vectors.hpp"

namespace orbitwa
{

/// Result of a breadth-first exploration of the span of reachable vectors.
template<typename Key, typename Letter>
struct ForwardSpace
{
  SpanBasis<Key> basis;
  /// Words whose vectors grew the span, in discovery (BFS) order.
  std::vector<std::vector<Letter>> words;
  /// The vector reached by each word in `words` (not reduced).
  std::vector<FinVec<Key>> vectors;
  /// dimensions[i] is the dimension of the span of all vectors reached by
  /// words of length at most i. The last entry repeats the previous one when
  /// exploration stopped because the span stabilized.
  std::vector<std::size_t> dimensions;
  bool stabilized = false;
};

/// Layer-synchronous Tzeng-style exploration: only words whose vector grew
/// the span are extended, which yields exactly the per-length spans since
/// successor maps are linear.
///
/// `next(vector, letter)` must be linear in `vector`.
template<typename Key, typename Letter, typename Next>
ForwardSpace<Key, Letter> explore_forward(FinVec<Key> const &initial,
                                          std::span<Letter const> letters,
                                          Next &&next,
                                          std::optional<std::size_t> max_length = std::nullopt)
{
  ForwardSpace<Key, Letter> space;
  std::vector<std::size_t> frontier;

  if (space.basis.insert(initial)) {
    space.words.emplace_back();
    space.vectors.push_back(initial);
    frontier.push_back(0);
  }
  space.dimensions.push_back(space.basis.dimension());

  for (std::size_t length = 1; !max_length || length <= *max_length; ++length) {
    if (frontier.empty()) {
      space.stabilized = true;
      break;
    }
    std::vector<std::size_t> grown;
    for (auto parent : frontier) {
      for (auto const &letter : letters) {
        auto v = next(space.vectors[parent], letter);
        if (space.basis.insert(v)) {
          auto word = space.words[parent];
          word.push_back(letter);
          grown.push_back(space.words.size());
          space.words.push_back(std::move(word));
          space.vectors.push_back(std::move(v));
        }
      }
    }
    space.dimensions.push_back(space.basis.dimension());
    frontier = std::move(grown);
  }
  if (frontier.empty())
    space.stabilized = true;
  return space;
}

} // namespace orbitwa

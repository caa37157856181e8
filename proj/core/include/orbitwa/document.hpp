#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbitwa/automaton.hpp"
#include "orbitwa/length_lab.hpp"
#include "orbitwa/unambiguous.hpp"

namespace orbitwa
{

// JSON automaton documents.
//
// Weighted documents:
//
//   { "atoms": "equality" | "ordered", "registers": k,
//     "tags": [...], "controls": [...],
//     "initial": [{"control": c, "weight": "p/q"}],
//     "transitions": [{"from": c, "tag": t, "to": c,
//                      "guard": [["eq", "r1", "a"], ["is_bot", "r2'"]],
//                      "update": {"r1": "a", "r2": "r1"}, "weight": "p/q"}],
//     "final": [{"control": c, "guard": [...], "weight": "p/q"}] }
//
// Nondeterministic documents drop the weights, list initial controls by name
// and replace "final" by "accepting": [c | {"control": c, "guard": [...]}].
// Registers missing from an update keep their value. Every error message
// starts with "<source>:<line>:".

enum class DocumentKind { Weighted, Nondeterministic };

/// Nondeterministic iff the top-level object has an "accepting" member.
DocumentKind detect_document_kind(std::string_view text, std::string_view source = "<input>");

WeightedRegisterAutomaton parse_weighted_document(std::string_view text, std::string_view source = "<input>");
NondetRegisterAutomaton parse_nondet_document(std::string_view text, std::string_view source = "<input>");

std::string serialize(WeightedRegisterAutomaton const &automaton);
std::string serialize(NondetRegisterAutomaton const &automaton);

/// Whole file as a string; throws InvalidInput if it cannot be read.
std::string read_text_file(std::filesystem::path const &path);

/// Equality atoms are naturals; ordered atoms are rationals ("3", "-1/2", "2.5").
Atom parse_atom(AtomKind kind, std::string_view text);

/// Comma-separated atoms, e.g. "1,2,3".
std::vector<Atom> parse_atom_list(AtomKind kind, std::string_view text);

/// "tag:atom,tag:atom"; the empty string is the empty word.
Word parse_word(AtomKind kind, std::span<std::string const> tags, std::string_view text);

/// Equality: {"default": v, "exceptions": [{"atom": a, "value": v}]}.
/// Ordered:  {"points": [{"atom": a, "value": v}], "intervals": [v0, ..., vm]}.
FormSpec parse_form_document(AtomKind kind, std::string_view text, std::string_view source = "<input>");

} // namespace orbitwa

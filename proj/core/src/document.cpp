#include "orbitwa/document.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "orbitwa/error.hpp"

namespace orbitwa
{

namespace
{

using nlohmann::json;

// Maps JSON pointers ("/transitions/3/guard") to the line where the value
// starts. Runs on text that already parsed successfully.
class LineIndex
{
public:
  explicit LineIndex(std::string_view text) : _text(text) { scan_value(""); }

  std::size_t line_of(std::string const &pointer) const
  {
    for (std::string p = pointer;; p = p.substr(0, p.rfind('/'))) {
      if (auto it = _lines.find(p); it != _lines.end())
        return it->second;
      if (p.empty())
        return 1;
    }
  }

private:
  void skip_ws()
  {
    while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
      if (_text[_pos] == '\n')
        ++_line;
      ++_pos;
    }
  }

  std::string scan_string()
  {
    std::string out;
    ++_pos; // opening quote
    while (_pos < _text.size() && _text[_pos] != '"') {
      if (_text[_pos] == '\\' && _pos + 1 < _text.size()) {
        ++_pos;
        out += _text[_pos] == 'n' ? '\n' : _text[_pos] == 't' ? '\t' : _text[_pos];
      } else {
        out += _text[_pos];
      }
      ++_pos;
    }
    ++_pos; // closing quote
    return out;
  }

  static std::string escape(std::string const &key)
  {
    std::string out;
    for (char c : key) {
      if (c == '~')
        out += "~0";
      else if (c == '/')
        out += "~1";
      else
        out += c;
    }
    return out;
  }

  void scan_value(std::string const &pointer)
  {
    skip_ws();
    if (_pos >= _text.size())
      return;
    _lines.emplace(pointer, _line);
    char c = _text[_pos];
    if (c == '{') {
      ++_pos;
      skip_ws();
      while (_pos < _text.size() && _text[_pos] != '}') {
        std::string key = scan_string();
        skip_ws();
        ++_pos; // ':'
        scan_value(pointer + "/" + escape(key));
        skip_ws();
        if (_pos < _text.size() && _text[_pos] == ',')
          ++_pos;
        skip_ws();
      }
      ++_pos;
    } else if (c == '[') {
      ++_pos;
      skip_ws();
      for (std::size_t i = 0; _pos < _text.size() && _text[_pos] != ']'; ++i) {
        scan_value(pointer + "/" + std::to_string(i));
        skip_ws();
        if (_pos < _text.size() && _text[_pos] == ',')
          ++_pos;
        skip_ws();
      }
      ++_pos;
    } else if (c == '"') {
      scan_string();
    } else {
      while (_pos < _text.size() && !std::isspace(static_cast<unsigned char>(_text[_pos])) &&
             _text[_pos] != ',' && _text[_pos] != ']' && _text[_pos] != '}')
        ++_pos;
    }
  }

  std::string_view _text;
  std::size_t _pos = 0;
  std::size_t _line = 1;
  std::map<std::string, std::size_t> _lines;
};

class Reader
{
public:
  Reader(std::string_view text, std::string_view source) : _source(source)
  {
    try {
      _root = json::parse(text.begin(), text.end());
    } catch (json::parse_error const &e) {
      auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
      std::string what = e.what();
      if (auto colon = what.find(": "); colon != std::string::npos)
        what = what.substr(colon + 2);
      throw InvalidInput(std::string(_source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": malformed JSON: " + what);
    }
    _index.emplace(text);
  }

  json const &root() const { return _root; }

  [[noreturn]] void fail(std::string const &pointer, std::string const &message) const
  {
    throw InvalidInput(std::string(_source) + ":" + std::to_string(_index->line_of(pointer)) + ": " +
                       (pointer.empty() ? "" : pointer + ": ") + message);
  }

  json const &member(json const &object, std::string const &pointer, char const *key) const
  {
    if (!object.is_object())
      fail(pointer, "expected an object");
    auto it = object.find(key);
    if (it == object.end())
      fail(pointer, std::string("missing \"") + key + "\"");
    return *it;
  }

  json const *optional_member(json const &object, std::string const &pointer, char const *key) const
  {
    if (!object.is_object())
      fail(pointer, "expected an object");
    auto it = object.find(key);
    return it == object.end() ? nullptr : &*it;
  }

  std::string const &string(json const &value, std::string const &pointer) const
  {
    if (!value.is_string())
      fail(pointer, "expected a string");
    return value.get_ref<std::string const &>();
  }

  json const &array(json const &value, std::string const &pointer) const
  {
    if (!value.is_array())
      fail(pointer, "expected an array");
    return value;
  }

  Rational rational(json const &value, std::string const &pointer) const
  {
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else if (value.is_number_integer())
      text = value.dump();
    else
      fail(pointer, "expected a rational such as \"3/4\"");
    try {
      return parse_rational(text);
    } catch (InvalidInput const &e) {
      fail(pointer, e.what());
    }
  }

  Atom atom(AtomKind kind, json const &value, std::string const &pointer) const
  {
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else if (value.is_number_integer())
      text = value.dump();
    else
      fail(pointer, "expected an atom");
    try {
      return parse_atom(kind, text);
    } catch (InvalidInput const &e) {
      fail(pointer, e.what());
    }
  }

  // Rewrites "transition 3: ..." / "final rule 0: ..." diagnostics with the line of that rule.
  [[noreturn]] void fail_validation(std::vector<std::string> const &diagnostics, char const *final_key) const
  {
    std::string message;
    for (auto const &d : diagnostics) {
      std::string pointer;
      auto anchor = [&](std::string_view prefix, std::string const &array) {
        if (d.rfind(prefix, 0) != 0)
          return;
        auto end = d.find(':', prefix.size());
        pointer = "/" + array + "/" + d.substr(prefix.size(), end - prefix.size());
      };
      anchor("transition ", "transitions");
      anchor("final rule ", final_key);
      if (!message.empty())
        message += "\n";
      message += std::string(_source) + ":" + std::to_string(_index->line_of(pointer)) + ": " + d;
    }
    throw InvalidInput(message);
  }

private:
  static std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte)
  {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return {line, column};
  }

  std::string_view _source;
  json _root;
  std::optional<LineIndex> _index;
};

// Fields shared by both document kinds.
struct Skeleton
{
  AtomKind kind = AtomKind::Equality;
  std::size_t registers = 0;
  std::vector<std::string> tags;
  std::vector<std::string> controls;
};

Skeleton read_skeleton(Reader const &r)
{
  auto const &root = r.root();
  if (!root.is_object())
    r.fail("", "expected a JSON object at top level");

  Skeleton s;
  auto const &atoms = r.member(root, "", "atoms");
  auto kind = parse_atom_kind(r.string(atoms, "/atoms"));
  if (!kind)
    r.fail("/atoms", "atoms must be \"equality\" or \"ordered\"");
  s.kind = *kind;

  auto const &registers = r.member(root, "", "registers");
  if (!registers.is_number_unsigned())
    r.fail("/registers", "expected a non-negative register count");
  s.registers = registers.get<std::size_t>();

  auto names = [&](char const *key, std::vector<std::string> &out) {
    std::string pointer = std::string("/") + key;
    auto const &list = r.array(r.member(root, "", key), pointer);
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto const &name = r.string(list[i], pointer + "/" + std::to_string(i));
      if (std::find(out.begin(), out.end(), name) != out.end())
        r.fail(pointer + "/" + std::to_string(i), "duplicate name \"" + name + "\"");
      out.push_back(name);
    }
  };
  names("tags", s.tags);
  names("controls", s.controls);
  return s;
}

std::size_t lookup(Reader const &r, std::vector<std::string> const &names, json const &value,
                   std::string const &pointer, char const *what)
{
  auto const &name = r.string(value, pointer);
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    r.fail(pointer, std::string("unknown ") + what + " \"" + name + "\"");
  return static_cast<std::size_t>(it - names.begin());
}

std::optional<std::size_t> register_number(std::string_view text)
{
  if (text.size() < 2 || text[0] != 'r')
    return std::nullopt;
  std::size_t n = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (n == 0)
    return std::nullopt;
  return n;
}

Variable parse_variable(Reader const &r, json const &value, std::string const &pointer)
{
  std::string_view text = r.string(value, pointer);
  if (text == "a")
    return input();
  bool primed = !text.empty() && text.back() == '\'';
  if (primed)
    text.remove_suffix(1);
  auto n = register_number(text);
  if (!n)
    r.fail(pointer, "unknown variable \"" + value.get<std::string>() + "\" (use r1, a or r1')");
  return primed ? target(*n) : source(*n);
}

Guard parse_guard(Reader const &r, json const *value, std::string const &pointer)
{
  Guard guard;
  if (!value)
    return guard;
  auto const &list = r.array(*value, pointer);
  static std::map<std::string, std::pair<Predicate, bool>, std::less<>> const ops = {
    {"eq", {Predicate::Eq, true}},         {"neq", {Predicate::Neq, true}},
    {"lt", {Predicate::Lt, true}},         {"is_bot", {Predicate::IsBot, false}},
    {"not_bot", {Predicate::NotBot, false}},
  };
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string lp = pointer + "/" + std::to_string(i);
    auto const &lit = r.array(list[i], lp);
    if (lit.empty())
      r.fail(lp, "empty literal");
    auto const &op = r.string(lit[0], lp + "/0");
    auto it = ops.find(op);
    if (it == ops.end())
      r.fail(lp + "/0", "unknown predicate \"" + op + "\"");
    auto [predicate, binary] = it->second;
    if (lit.size() != (binary ? 3u : 2u))
      r.fail(lp, "\"" + op + "\" takes " + (binary ? "two arguments" : "one argument"));
    Literal l;
    l.predicate = predicate;
    l.lhs = parse_variable(r, lit[1], lp + "/1");
    l.rhs = binary ? parse_variable(r, lit[2], lp + "/2") : l.lhs;
    guard.push_back(l);
  }
  return guard;
}

Update parse_update(Reader const &r, json const *value, std::string const &pointer, std::size_t registers)
{
  Update update = keep_all(registers);
  if (!value)
    return update;
  if (!value->is_object())
    r.fail(pointer, "expected an object such as {\"r1\": \"a\"}");
  for (auto const &[key, source_value] : value->items()) {
    std::string kp = pointer + "/" + key;
    auto n = register_number(key);
    if (!n || *n > registers)
      r.fail(kp, "update target \"" + key + "\" is not one of r1..r" + std::to_string(registers));
    auto const &text = r.string(source_value, kp);
    RegisterSource src;
    if (text == "a")
      src = store_input();
    else if (text == "bot")
      src = clear();
    else if (text == "guess")
      src = {RegisterSource::Kind::Guess, 0};
    else if (auto m = register_number(text))
      src = keep(*m);
    else
      r.fail(kp, "update source \"" + text + "\" must be a register, \"a\" or \"bot\"");
    update[*n - 1] = src;
  }
  return update;
}

json guard_json(Guard const &guard)
{
  json out = json::array();
  for (auto const &lit : guard) {
    static char const *const names[] = {"eq", "neq", "lt", "is_bot", "not_bot"};
    json entry = json::array({names[static_cast<int>(lit.predicate)], to_string(lit.lhs)});
    if (lit.binary())
      entry.push_back(to_string(lit.rhs));
    out.push_back(std::move(entry));
  }
  return out;
}

json update_json(Update const &update)
{
  json out = json::object();
  for (std::size_t i = 0; i < update.size(); ++i) {
    std::string target_name = "r" + std::to_string(i + 1);
    switch (update[i].kind) {
    case RegisterSource::Kind::Register: out[target_name] = "r" + std::to_string(update[i].index + 1); break;
    case RegisterSource::Kind::Input: out[target_name] = "a"; break;
    case RegisterSource::Kind::Bot: out[target_name] = "bot"; break;
    case RegisterSource::Kind::Guess: out[target_name] = "guess"; break;
    }
  }
  return out;
}

json skeleton_json(AtomKind kind, std::size_t registers, std::vector<std::string> const &tags,
                   std::vector<std::string> const &controls)
{
  json out = json::object();
  out["atoms"] = std::string(to_string(kind));
  out["registers"] = registers;
  out["tags"] = tags;
  out["controls"] = controls;
  return out;
}

} // anonymous namespace

DocumentKind detect_document_kind(std::string_view text, std::string_view source)
{
  Reader r(text, source);
  if (r.root().is_object() && r.root().contains("accepting"))
    return DocumentKind::Nondeterministic;
  return DocumentKind::Weighted;
}

WeightedRegisterAutomaton parse_weighted_document(std::string_view text, std::string_view source)
{
  Reader r(text, source);
  auto s = read_skeleton(r);
  auto const &root = r.root();

  WeightedRegisterAutomaton a;
  a.kind = s.kind;
  a.registers = s.registers;
  a.tags = s.tags;
  a.controls = s.controls;
  a.initial.assign(a.controls.size(), Rational(0));

  std::vector<bool> seen(a.controls.size());
  auto const &initial = r.array(r.member(root, "", "initial"), "/initial");
  for (std::size_t i = 0; i < initial.size(); ++i) {
    std::string p = "/initial/" + std::to_string(i);
    auto c = lookup(r, a.controls, r.member(initial[i], p, "control"), p + "/control", "control");
    if (seen[c])
      r.fail(p, "control \"" + a.controls[c] + "\" has two initial weights");
    seen[c] = true;
    a.initial[c] = r.rational(r.member(initial[i], p, "weight"), p + "/weight");
  }

  if (auto const *transitions = r.optional_member(root, "", "transitions")) {
    r.array(*transitions, "/transitions");
    for (std::size_t i = 0; i < transitions->size(); ++i) {
      std::string p = "/transitions/" + std::to_string(i);
      auto const &t = (*transitions)[i];
      auto from = lookup(r, a.controls, r.member(t, p, "from"), p + "/from", "control");
      auto tag = lookup(r, a.tags, r.member(t, p, "tag"), p + "/tag", "tag");
      auto to = lookup(r, a.controls, r.member(t, p, "to"), p + "/to", "control");
      auto guard = parse_guard(r, r.optional_member(t, p, "guard"), p + "/guard");
      auto update = parse_update(r, r.optional_member(t, p, "update"), p + "/update", a.registers);
      auto weight = r.rational(r.member(t, p, "weight"), p + "/weight");
      a.add_transition(from, tag, to, std::move(guard), std::move(update), std::move(weight));
    }
  }

  if (auto const *finals = r.optional_member(root, "", "final")) {
    r.array(*finals, "/final");
    for (std::size_t i = 0; i < finals->size(); ++i) {
      std::string p = "/final/" + std::to_string(i);
      auto const &f = (*finals)[i];
      auto c = lookup(r, a.controls, r.member(f, p, "control"), p + "/control", "control");
      auto guard = parse_guard(r, r.optional_member(f, p, "guard"), p + "/guard");
      auto weight = r.rational(r.member(f, p, "weight"), p + "/weight");
      a.add_final(c, std::move(guard), std::move(weight));
    }
  }

  if (auto diagnostics = validate(a); !diagnostics.empty())
    r.fail_validation(diagnostics, "final");
  return a;
}

NondetRegisterAutomaton parse_nondet_document(std::string_view text, std::string_view source)
{
  Reader r(text, source);
  auto s = read_skeleton(r);
  auto const &root = r.root();

  NondetRegisterAutomaton n;
  n.kind = s.kind;
  n.registers = s.registers;
  n.tags = s.tags;
  n.controls = s.controls;
  n.initial.assign(n.controls.size(), false);

  auto control_of = [&](json const &entry, std::string const &p) {
    if (entry.is_object())
      return lookup(r, n.controls, r.member(entry, p, "control"), p + "/control", "control");
    return lookup(r, n.controls, entry, p, "control");
  };

  auto const &initial = r.array(r.member(root, "", "initial"), "/initial");
  for (std::size_t i = 0; i < initial.size(); ++i)
    n.initial[control_of(initial[i], "/initial/" + std::to_string(i))] = true;

  if (auto const *transitions = r.optional_member(root, "", "transitions")) {
    r.array(*transitions, "/transitions");
    for (std::size_t i = 0; i < transitions->size(); ++i) {
      std::string p = "/transitions/" + std::to_string(i);
      auto const &t = (*transitions)[i];
      if (t.is_object() && t.contains("weight"))
        r.fail(p + "/weight", "nondeterministic documents carry no weights");
      auto from = lookup(r, n.controls, r.member(t, p, "from"), p + "/from", "control");
      auto tag = lookup(r, n.tags, r.member(t, p, "tag"), p + "/tag", "tag");
      auto to = lookup(r, n.controls, r.member(t, p, "to"), p + "/to", "control");
      auto guard = parse_guard(r, r.optional_member(t, p, "guard"), p + "/guard");
      auto update = parse_update(r, r.optional_member(t, p, "update"), p + "/update", n.registers);
      n.add_transition(from, tag, to, std::move(guard), std::move(update));
    }
  }

  auto const &accepting = r.array(r.member(root, "", "accepting"), "/accepting");
  for (std::size_t i = 0; i < accepting.size(); ++i) {
    std::string p = "/accepting/" + std::to_string(i);
    auto c = control_of(accepting[i], p);
    Guard guard = accepting[i].is_object() ? parse_guard(r, r.optional_member(accepting[i], p, "guard"), p + "/guard")
                                           : Guard{};
    n.add_accepting(c, std::move(guard));
  }

  if (auto diagnostics = validate(n); !diagnostics.empty())
    r.fail_validation(diagnostics, "accepting");
  return n;
}

std::string serialize(WeightedRegisterAutomaton const &a)
{
  json out = skeleton_json(a.kind, a.registers, a.tags, a.controls);
  out["initial"] = json::array();
  for (std::size_t c = 0; c < a.controls.size() && c < a.initial.size(); ++c)
    if (a.initial[c] != 0)
      out["initial"].push_back({{"control", a.controls[c]}, {"weight", to_string(a.initial[c])}});
  out["transitions"] = json::array();
  for (auto const &t : a.transitions)
    out["transitions"].push_back({{"from", a.controls.at(t.from)},
                                  {"tag", a.tags.at(t.tag)},
                                  {"to", a.controls.at(t.to)},
                                  {"guard", guard_json(t.guard)},
                                  {"update", update_json(t.update)},
                                  {"weight", to_string(t.weight)}});
  out["final"] = json::array();
  for (auto const &f : a.finals)
    out["final"].push_back(
      {{"control", a.controls.at(f.control)}, {"guard", guard_json(f.guard)}, {"weight", to_string(f.weight)}});
  return out.dump(2) + "\n";
}

std::string serialize(NondetRegisterAutomaton const &n)
{
  json out = skeleton_json(n.kind, n.registers, n.tags, n.controls);
  out["initial"] = json::array();
  for (std::size_t c = 0; c < n.controls.size() && c < n.initial.size(); ++c)
    if (n.initial[c])
      out["initial"].push_back(n.controls[c]);
  out["transitions"] = json::array();
  for (auto const &t : n.transitions)
    out["transitions"].push_back({{"from", n.controls.at(t.from)},
                                  {"tag", n.tags.at(t.tag)},
                                  {"to", n.controls.at(t.to)},
                                  {"guard", guard_json(t.guard)},
                                  {"update", update_json(t.update)}});
  out["accepting"] = json::array();
  for (auto const &f : n.accepting)
    out["accepting"].push_back({{"control", n.controls.at(f.control)}, {"guard", guard_json(f.guard)}});
  return out.dump(2) + "\n";
}

std::string read_text_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidInput("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Atom parse_atom(AtomKind kind, std::string_view text)
{
  auto value = parse_rational(text);
  if (kind == AtomKind::Equality && (!is_integer(value) || value < 0))
    throw InvalidInput("equality atoms are naturals, got \"" + std::string(text) + "\"");
  return Atom(std::move(value));
}

std::vector<Atom> parse_atom_list(AtomKind kind, std::string_view text)
{
  std::vector<Atom> atoms;
  while (!text.empty()) {
    auto comma = text.find(',');
    atoms.push_back(parse_atom(kind, text.substr(0, comma)));
    if (comma == std::string_view::npos)
      break;
    text.remove_prefix(comma + 1);
    if (text.empty())
      throw InvalidInput("trailing comma in atom list");
  }
  return atoms;
}

Word parse_word(AtomKind kind, std::span<std::string const> tags, std::string_view text)
{
  Word word;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    auto colon = item.rfind(':');
    if (colon == std::string_view::npos)
      throw InvalidInput("letter \"" + std::string(item) + "\" is not of the form tag:atom");
    auto tag_name = item.substr(0, colon);
    auto it = std::find(tags.begin(), tags.end(), tag_name);
    if (it == tags.end())
      throw InvalidInput("unknown tag \"" + std::string(tag_name) + "\"");
    word.push_back({static_cast<std::size_t>(it - tags.begin()), parse_atom(kind, item.substr(colon + 1))});
    if (comma == std::string_view::npos)
      break;
    text.remove_prefix(comma + 1);
    if (text.empty())
      throw InvalidInput("trailing comma in word");
  }
  return word;
}

FormSpec parse_form_document(AtomKind kind, std::string_view text, std::string_view source)
{
  Reader r(text, source);
  auto const &root = r.root();
  if (!root.is_object())
    r.fail("", "expected a JSON object at top level");

  auto point_list = [&](json const &list, std::string const &pointer) {
    std::vector<std::pair<Atom, Rational>> out;
    r.array(list, pointer);
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string p = pointer + "/" + std::to_string(i);
      out.emplace_back(r.atom(kind, r.member(list[i], p, "atom"), p + "/atom"),
                       r.rational(r.member(list[i], p, "value"), p + "/value"));
    }
    return out;
  };

  if (kind == AtomKind::Equality) {
    EqualityForm form;
    form.otherwise = r.rational(r.member(root, "", "default"), "/default");
    if (auto const *exceptions = r.optional_member(root, "", "exceptions")) {
      auto points = point_list(*exceptions, "/exceptions");
      for (std::size_t i = 0; i < points.size(); ++i)
        if (!form.exceptions.emplace(points[i].first, points[i].second).second)
          r.fail("/exceptions/" + std::to_string(i), "atom listed twice");
    }
    return form;
  }

  OrderedForm form;
  if (auto const *points = r.optional_member(root, "", "points"))
    form.points = point_list(*points, "/points");
  for (std::size_t i = 1; i < form.points.size(); ++i)
    if (!(form.points[i - 1].first < form.points[i].first))
      r.fail("/points/" + std::to_string(i), "breakpoints must be strictly increasing");
  auto const &intervals = r.array(r.member(root, "", "intervals"), "/intervals");
  for (std::size_t i = 0; i < intervals.size(); ++i)
    form.intervals.push_back(r.rational(intervals[i], "/intervals/" + std::to_string(i)));
  if (form.intervals.size() != form.points.size() + 1)
    r.fail("/intervals", "expected " + std::to_string(form.points.size() + 1) + " interval values");
  return form;
}

} // namespace orbitwa

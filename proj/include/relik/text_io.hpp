#pragma once

// Line-oriented text formats.
//
// Structure file:
//   props: p q
//   worlds: w1 w2 w3
//   val w1: p=1 q=0
//   order: w1 >= w3
//
// Relation file:
//   ground: a b c
//   family: powerset        (optional; otherwise list members with `set:` lines)
//   set: a b                (0-based index is the order of appearance; `set:` alone is the empty set)
//   pair: 0 1               (indices into the family list)
//
// `#` starts a comment. Order lines are generators; the loader closes them reflexively and transitively.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relik/algebra.hpp"
#include "relik/error.hpp"
#include "relik/preorder.hpp"
#include "relik/structure.hpp"

namespace relik {

namespace io_detail {

struct Line {
  std::size_t number;
  std::string key;
  std::string rest;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] inline void fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::invalid_argument, "line " + std::to_string(line) + ": " + msg);
}

/// Splits "key rest: value" style lines; the key is everything before the first ':'.
inline std::vector<Line> lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto t = trim(raw);
    if (t.empty()) continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) fail(number, "missing ':'");
    out.push_back({number, trim(std::string_view(t).substr(0, colon)), trim(std::string_view(t).substr(colon + 1))});
  }
  return out;
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace io_detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline PreferentialStructure parse_structure(std::string_view text) {
  using namespace io_detail;
  std::optional<std::vector<std::string>> props, worlds;
  std::vector<std::pair<std::size_t, std::string>> vals, orders;
  std::vector<std::size_t> val_lines;
  for (const auto& l : lines(text)) {
    if (l.key == "props") {
      if (props) fail(l.number, "duplicate 'props'");
      props = words(l.rest);
    } else if (l.key == "worlds") {
      if (worlds) fail(l.number, "duplicate 'worlds'");
      worlds = words(l.rest);
    } else if (l.key.rfind("val", 0) == 0) {
      auto w = words(l.key);
      if (w.size() != 2 || w[0] != "val") fail(l.number, "expected 'val WORLD:'");
      vals.emplace_back(l.number, w[1] + " " + l.rest);
    } else if (l.key == "order") {
      orders.emplace_back(l.number, l.rest);
    } else {
      fail(l.number, "unknown key '" + l.key + "'");
    }
  }
  if (!props) throw Error(Errc::invalid_argument, "missing 'props' line");
  if (!worlds) throw Error(Errc::invalid_argument, "missing 'worlds' line");
  for (const auto& n : *props)
    if (!valid_name(n) || !std::islower(static_cast<unsigned char>(n[0])))
      throw Error(Errc::invalid_argument, "bad proposition name '" + n + "'");
  for (const auto& n : *worlds)
    if (!valid_name(n)) throw Error(Errc::invalid_argument, "bad world name '" + n + "'");

  Vocabulary vocab(*props);
  Carrier carrier(*worlds);
  std::vector<Assignment> valuation(carrier.size(), 0);
  std::vector<bool> seen(carrier.size(), false);
  for (const auto& [number, body] : vals) {
    auto w = words(body);
    const auto id = carrier.id(w[0]);
    if (seen[id.index]) fail(number, "world '" + w[0] + "' has two valuations");
    seen[id.index] = true;
    std::vector<bool> assigned(vocab.size(), false);
    for (std::size_t i = 1; i < w.size(); ++i) {
      auto eq = w[i].find('=');
      if (eq == std::string::npos) fail(number, "expected PROP=0|1");
      const auto name = w[i].substr(0, eq);
      const auto value = w[i].substr(eq + 1);
      if (value != "0" && value != "1") fail(number, "truth value must be 0 or 1");
      const auto p = vocab.index(name);
      if (assigned[p]) fail(number, "proposition '" + name + "' assigned twice");
      assigned[p] = true;
      if (value == "1") valuation[id.index] |= Assignment{1} << p;
    }
    for (std::size_t p = 0; p < vocab.size(); ++p)
      if (!assigned[p]) fail(number, "proposition '" + vocab.names()[p] + "' has no value");
  }
  for (std::size_t w = 0; w < carrier.size(); ++w)
    if (!seen[w]) throw Error(Errc::invalid_argument, "world '" + carrier.names()[w] + "' has no valuation");

  std::vector<std::pair<WorldId, WorldId>> gens;
  for (const auto& [number, body] : orders) {
    auto w = words(body);
    if (w.size() != 3 || w[1] != ">=") fail(number, "expected 'order: U >= V'");
    gens.emplace_back(carrier.id(w[0]), carrier.id(w[2]));
  }
  return PreferentialStructure(std::move(vocab), Preorder::from_generators(carrier, gens), std::move(valuation));
}

/// Lists every non-reflexive pair of the preorder, so the output reloads to the same structure.
inline std::string write_structure(const PreferentialStructure& m, const std::vector<std::string>& comments = {}) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "props:";
  for (const auto& p : m.vocabulary().names()) out << " " << p;
  out << "\nworlds:";
  const auto& carrier = m.order().carrier();
  for (const auto& w : carrier.names()) out << " " << w;
  out << "\n";
  for (std::size_t w = 0; w < m.size(); ++w) {
    out << "val " << carrier.names()[w] << ":";
    for (std::size_t p = 0; p < m.vocabulary().size(); ++p)
      out << " " << m.vocabulary().names()[p] << "=" << ((m.valuation()[w] >> p) & 1u);
    out << "\n";
  }
  const auto& rel = m.order().relation();
  for (std::size_t u = 0; u < m.size(); ++u)
    for (std::size_t v = 0; v < m.size(); ++v)
      if (u != v && rel(u, v)) out << "order: " << carrier.names()[u] << " >= " << carrier.names()[v] << "\n";
  return out.str();
}

inline PreferentialStructure load_structure(const std::string& path) { return parse_structure(read_file(path)); }

/// A relation file together with the member masks of its `set:` lines, in file order.
struct RelationDocument {
  SetRelation relation;
  std::vector<AtomMask> listed;
};

inline RelationDocument parse_relation_document(std::string_view text, AlgebraLimits limits = {}) {
  using namespace io_detail;
  std::optional<std::vector<std::string>> ground;
  bool powerset = false;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> sets;
  std::vector<std::pair<std::size_t, std::string>> pairs;
  for (const auto& l : lines(text)) {
    if (l.key == "ground") {
      if (ground) fail(l.number, "duplicate 'ground'");
      ground = words(l.rest);
    } else if (l.key == "family") {
      if (l.rest != "powerset") fail(l.number, "only 'family: powerset' is supported");
      powerset = true;
    } else if (l.key == "set") {
      sets.emplace_back(l.number, words(l.rest));
    } else if (l.key == "pair") {
      pairs.emplace_back(l.number, l.rest);
    } else {
      fail(l.number, "unknown key '" + l.key + "'");
    }
  }
  if (!ground) throw Error(Errc::invalid_argument, "missing 'ground' line");
  for (const auto& n : *ground)
    if (!valid_name(n)) throw Error(Errc::invalid_argument, "bad element name '" + n + "'");
  Carrier carrier(*ground);
  if (powerset && !sets.empty()) throw Error(Errc::invalid_argument, "'family: powerset' excludes 'set:' lines");

  std::vector<Bits> family;
  if (powerset) {
    if (carrier.size() >= 31) throw Error(Errc::resource_limit, "ground set too large for a powerset family");
    for (std::size_t m = 0; m < (std::size_t{1} << carrier.size()); ++m) {
      Bits b(carrier.size(), m);
      family.push_back(b);
    }
  } else {
    for (const auto& [number, names] : sets) family.push_back(carrier.set_of(names).bits());
  }
  auto algebra = powerset ? FiniteAlgebra::powerset(carrier, limits) : FiniteAlgebra::from_family(carrier, family, limits);
  RelationDocument doc{SetRelation(algebra), {}};
  for (const auto& b : family) doc.listed.push_back(*algebra.mask_of(b));
  for (const auto& [number, body] : pairs) {
    auto w = words(body);
    if (w.size() != 2) fail(number, "expected 'pair: I J'");
    std::size_t i = 0, j = 0;
    try {
      i = std::stoul(w[0]);
      j = std::stoul(w[1]);
    } catch (const std::exception&) {
      fail(number, "pair indices must be numbers");
    }
    if (i >= family.size() || j >= family.size()) throw Error(Errc::invalid_relation, "line " + std::to_string(number) + ": pair index outside the family");
    doc.relation.insert(doc.listed[i], doc.listed[j]);
  }
  return doc;
}

inline SetRelation parse_relation(std::string_view text, AlgebraLimits limits = {}) {
  return parse_relation_document(text, limits).relation;
}

inline SetRelation load_relation(const std::string& path, AlgebraLimits limits = {}) {
  return parse_relation(read_file(path), limits);
}

/// Lists every family member in atom-mask order, then the pairs by those indices.
inline std::string write_relation(const SetRelation& r) {
  std::ostringstream out;
  const auto& alg = r.algebra();
  out << "ground:";
  for (const auto& n : alg.ground().names()) out << " " << n;
  out << "\n";
  for (AtomMask m = 0; m < r.family_size(); ++m) {
    out << "set:";
    for (const auto& n : alg.element_names(m)) out << " " << n;
    out << "  # " << m << "\n";
  }
  for (auto [u, v] : r.pairs()) out << "pair: " << u << " " << v << "\n";
  return out.str();
}

/// "{a,b}" for the elements of a member.
inline std::string set_text(const FiniteAlgebra& alg, AtomMask m) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : alg.element_names(m)) {
    if (!first) out += ",";
    out += n;
    first = false;
  }
  return out + "}";
}

}  // namespace relik

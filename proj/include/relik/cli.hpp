#pragma once

// Command-line front end. `run` is the whole program so it can be driven in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relik/conditional.hpp"
#include "relik/error.hpp"
#include "relik/parser.hpp"
#include "relik/prover.hpp"
#include "relik/realization.hpp"
#include "relik/relation_properties.hpp"
#include "relik/set_lifting.hpp"
#include "relik/structure.hpp"
#include "relik/text_io.hpp"

namespace relik::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { ok_true = 0, ok_false = 1, failure = 2 };

namespace detail {

inline Json names_json(const std::vector<std::string>& names) { return Json(names); }

inline Json world_set_json(const Carrier& c, const WorldSet& s) { return names_json(c.names_of(s)); }

inline Json strict_pairs_json(const StrictOrder& s) {
  Json out = Json::array();
  for (std::size_t u = 0; u < s.size(); ++u)
    for (std::size_t v = 0; v < s.size(); ++v)
      if (s.relation()(u, v)) out.push_back({s.carrier().names()[u], s.carrier().names()[v]});
  return out;
}

inline Json model_json(const PreferentialStructure& m) {
  Json worlds = Json::array();
  for (std::size_t w = 0; w < m.size(); ++w) {
    Json val = Json::object();
    for (std::size_t p = 0; p < m.vocabulary().size(); ++p)
      val[m.vocabulary().names()[p]] = ((m.valuation()[w] >> p) & 1u) != 0;
    worlds.push_back({{"name", m.order().carrier().names()[w]}, {"val", val}});
  }
  return {{"props", m.vocabulary().names()}, {"worlds", worlds}, {"strict_pairs", strict_pairs_json(m.strict())}};
}

inline Json mask_json(const FiniteAlgebra& alg, AtomMask m) { return names_json(alg.element_names(m)); }

inline Json witness_json(const FiniteAlgebra& alg, const Witness& w) {
  Json out = Json::array();
  for (auto m : w) out.push_back(mask_json(alg, m));
  return out;
}

inline Json audit_json(const SetRelation& r) {
  Json props = Json::object();
  for (const auto& c : audit(r).checks) {
    Json entry = {{"holds", c.holds}};
    if (c.witness) entry["witness"] = witness_json(r.algebra(), *c.witness);
    props[c.name] = entry;
  }
  return props;
}

inline Json atoms_json(const FiniteAlgebra& alg) {
  Json out = Json::array();
  for (std::size_t a = 0; a < alg.atom_count(); ++a) out.push_back(mask_json(alg, AtomMask{1} << a));
  return out;
}

inline Json agreement_json(const FiniteAlgebra& alg, const AgreementResult& a) {
  Json out = {{"agrees", a.agrees}};
  if (a.counterexample) {
    out["counterexample"] = {mask_json(alg, a.counterexample->first), mask_json(alg, a.counterexample->second)};
    out["relation_holds"] = a.relation_side;
  }
  return out;
}

/// Comma-separated world names; "{}" or "" is the empty set.
inline WorldSet parse_world_list(const Carrier& c, std::string text) {
  if (!text.empty() && text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
  std::vector<std::string> names;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto t = io_detail::trim(item);
    if (!t.empty()) names.push_back(t);
  }
  return c.set_of(names);
}

inline std::string formula_arg(const std::string& formula, const std::string& file) {
  if (!file.empty()) return io_detail::trim(read_file(file));
  if (formula.empty()) throw Error(Errc::invalid_argument, "a formula or --formula-file is required");
  return formula;
}

/// Structure whose propositions at0..at{k-1} mark the atom of each realized world.
inline PreferentialStructure realization_structure(const FiniteAlgebra& alg, const Realization& real) {
  std::vector<std::string> props;
  for (std::size_t a = 0; a < alg.atom_count(); ++a) props.push_back("at" + std::to_string(a));
  std::vector<Assignment> val;
  for (auto a : real.atom_of_world) val.push_back(Assignment{1} << a);
  return PreferentialStructure(Vocabulary(props), real.preorder, val);
}

struct Report {
  Json json;
  std::string text;
  int code = ok_true;
};

inline Report check_sat(const std::string& text, bool total, int brute_copies, std::size_t brute_worlds) {
  const auto f = parse_l(text);
  SatResult r;
  std::string mode = "partial";
  if (brute_copies > 0) {
    BruteForceOptions o;
    o.max_copies = static_cast<std::size_t>(brute_copies);
    o.max_worlds = brute_worlds;
    o.total_only = total;
    r = brute_force_sat(f, o);
    mode = total ? "brute-force-total" : "brute-force";
  } else if (total) {
    r = check_satisfiable_total(f);
    mode = "total";
  } else {
    r = check_satisfiable(f);
  }
  Json basics = Json::array();
  for (const auto& b : r.basics) basics.push_back(to_string(LFormula::atom(b)));
  Json j = {{"command", "check-sat"}, {"formula", to_string(f)}, {"mode", mode}, {"verdict", to_string(r.verdict)},
            {"basics", basics}};
  Json cert = {{"sigma", r.certificate.sigma}, {"branches", r.certificate.branches},
               {"rejected_reflexive", r.certificate.rejected_reflexive},
               {"rejected_negative", r.certificate.rejected_negative},
               {"closure_pairs", r.certificate.closure_pairs}, {"structures", r.certificate.structures}};
  Json populated = Json::array();
  const auto vocab = prover_detail::vocabulary_of(f);
  for (auto a : r.certificate.populated) populated.push_back(prover_detail::assignment_name(vocab, a));
  cert["populated"] = populated;
  j["certificate"] = cert;
  if (!r.message.empty()) j["message"] = r.message;
  std::string out = std::string(to_string(r.verdict)) + "\n";
  if (r.model) {
    j["model"] = model_json(*r.model);
    j["structure"] = write_structure(*r.model);
    out += write_structure(*r.model, {"witness for " + to_string(f)});
  } else if (!r.message.empty()) {
    out += r.message + "\n";
  }
  const int code = r.verdict == Verdict::sat ? ok_true : r.verdict == Verdict::unsat ? ok_false : failure;
  return {j, out, code};
}

inline Report model_check(const std::string& path, const std::string& text, bool arrow_language) {
  const auto m = load_structure(path);
  const auto& c = m.order().carrier();
  Json atoms = Json::array();
  bool holds = false;
  std::string canonical;
  if (arrow_language) {
    const auto f = parse_cond(text);
    canonical = to_string(f);
    for (const auto& a : basic_subformulas(f)) {
      const auto ante = truth_set(m, a.antecedent);
      atoms.push_back({{"formula", to_string(CondFormula::atom(a))},
                       {"holds", sat_arrow(m, a.antecedent, a.consequent)},
                       {"holds_best", sat_arrow_best(m, a.antecedent, a.consequent)},
                       {"antecedent", world_set_json(c, ante)},
                       {"consequent", world_set_json(c, truth_set(m, a.consequent))},
                       {"best", world_set_json(c, best(m.strict(), ante))}});
    }
    holds = sat_cond(m, f);
  } else {
    const auto f = parse_l(text);
    canonical = to_string(f);
    for (const auto& a : basic_subformulas(f))
      atoms.push_back({{"formula", to_string(LFormula::atom(a))},
                       {"holds", sat(m, a)},
                       {"more", world_set_json(c, truth_set(m, a.more))},
                       {"less", world_set_json(c, truth_set(m, a.less))}});
    holds = sat(m, f);
  }
  Json j = {{"command", "model-check"}, {"language", arrow_language ? "conditional" : "likelihood"},
            {"formula", canonical}, {"holds", holds}, {"basics", atoms}};
  return {j, std::string(holds ? "true" : "false") + "\n", holds ? ok_true : ok_false};
}

inline Report eval_order(const std::string& path, const std::string& rel, const std::string& u_text,
                         const std::string& v_text) {
  const auto m = load_structure(path);
  const auto& p = m.order();
  const auto& c = p.carrier();
  const auto U = parse_world_list(c, u_text);
  const auto V = parse_world_list(c, v_text);
  bool holds = false;
  if (rel == "geq_s") holds = geq_s(p, U, V);
  else if (rel == "succ_s") holds = succ_s(m.strict(), U, V);
  else if (rel == "succ_s_naive") holds = succ_s_naive(m.strict(), U, V);
  else if (rel == "succ_prime") holds = succ_prime(p, U, V);
  else if (rel == "dominates") {
    if (U.size() != 1) throw Error(Errc::invalid_argument, "dominates takes a single world as U");
    holds = dominates(m.strict(), *U.begin(), V);
  } else if (rel.size() == 5 && rel.rfind("lift", 0) == 0 && rel[4] >= '1' && rel[4] <= '6') {
    holds = lifting_variants::lift_k(rel[4] - '0', p, U, V);
  } else {
    throw Error(Errc::invalid_argument, "unknown relation '" + rel + "'");
  }
  Json order = {{"total", is_total(p)}, {"modular", is_modular(m.strict())},
                {"strict_pairs", strict_pairs_json(m.strict())}};
  Json j = {{"command", "eval-order"}, {"relation", rel}, {"U", world_set_json(c, U)},
            {"V", world_set_json(c, V)}, {"holds", holds}, {"order", order}};
  return {j, std::string(holds ? "true" : "false") + "\n", holds ? ok_true : ok_false};
}

inline Report props(const std::string& path, const std::string& agreement_struct, bool total) {
  const auto r = load_relation(path);
  const auto& alg = r.algebra();
  Json j = {{"command", "props"}, {"atoms", atoms_json(alg)}, {"family_size", r.family_size()},
            {"pair_count", r.pair_count()}, {"properties", audit_json(r)}};
  std::string out;
  for (const auto& c : audit(r).checks) {
    out += c.name + ": " + (c.holds ? "true" : "false");
    if (c.witness) {
      out += " witness";
      for (auto m : *c.witness) out += " " + set_text(alg, m);
    }
    out += "\n";
  }
  if (!agreement_struct.empty()) {
    const auto m = load_structure(agreement_struct);
    auto real = realization_on_ground(alg, m.order(), total ? Lifting::weak : Lifting::strict);
    const auto a = agreement(r, real);
    j["agreement"] = agreement_json(alg, a);
    out += std::string("agreement: ") + (a.agrees ? "true" : "false");
    if (a.counterexample)
      out += " at " + set_text(alg, a.counterexample->first) + " " + set_text(alg, a.counterexample->second);
    out += "\n";
  }
  return {j, out, ok_true};
}

inline Report realize(const std::string& path, bool total) {
  const auto r = load_relation(path);
  const auto& alg = r.algebra();
  const auto real = total ? realize_total(r) : realize_partial(r);
  const auto m = realization_structure(alg, real);
  Json worlds = Json::array();
  for (std::size_t w = 0; w < real.preorder.size(); ++w) {
    Json entry = {{"name", real.preorder.carrier().names()[w]},
                  {"atom", mask_json(alg, AtomMask{1} << real.atom_of_world[w])}};
    if (real.tree_of_world)
      entry["tree"] = to_string((*real.tree_of_world)[w], [&](std::size_t a) { return "at" + std::to_string(a); });
    worlds.push_back(entry);
  }
  std::vector<std::string> comments;
  for (std::size_t a = 0; a < alg.atom_count(); ++a)
    comments.push_back("at" + std::to_string(a) + " = " + set_text(alg, AtomMask{1} << a));
  const auto text = write_structure(m, comments);
  Json j = {{"command", "realize"}, {"kind", total ? "total" : "partial"}, {"atoms", atoms_json(alg)},
            {"worlds", worlds}, {"strict_pairs", strict_pairs_json(m.strict())},
            {"agreement", agreement_json(alg, agreement(r, real))}, {"structure", text}};
  return {j, text, ok_true};
}

inline Report translate(const std::string& to, const std::string& text, const std::string& variant) {
  std::string output;
  if (to == "arrow") output = to_string(to_conditional(parse_l(text), parse_variant(variant)));
  else if (to == "gg") output = to_string(to_likelihood(parse_cond(text)));
  else throw Error(Errc::invalid_argument, "--to must be arrow or gg");
  Json j = {{"command", "translate"}, {"to", to}, {"variant", variant}, {"input", text}, {"output", output}};
  return {j, output + "\n", ok_true};
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relative likelihood on partially preordered worlds"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Emit a JSON report");

  std::string formula, formula_file;
  bool total = false, arrow = false;
  int brute = 0;
  std::size_t brute_worlds = 6;
  auto* sat_cmd = app.add_subcommand("check-sat", "Decide satisfiability of a likelihood formula");
  sat_cmd->add_option("formula", formula, "Formula text");
  sat_cmd->add_option("--formula-file", formula_file, "Read the formula from a file");
  sat_cmd->add_flag("--total", total, "Only totally preordered structures");
  sat_cmd->add_option("--brute-force", brute, "Exhaustive search with at most N worlds per assignment");
  sat_cmd->add_option("--max-worlds", brute_worlds, "World cap for --brute-force");

  std::string structure;
  auto* mc_cmd = app.add_subcommand("model-check", "Evaluate a formula in a structure file");
  mc_cmd->add_option("structure", structure, "Structure file")->required();
  mc_cmd->add_option("formula", formula, "Formula text");
  mc_cmd->add_option("--formula-file", formula_file, "Read the formula from a file");
  mc_cmd->add_flag("--arrow", arrow, "Formula uses => instead of >>");

  std::string rel, u_text, v_text;
  auto* eo_cmd = app.add_subcommand("eval-order", "Compare two world sets under a lifted ordering");
  eo_cmd->add_option("structure", structure, "Structure file")->required();
  eo_cmd->add_option("--rel", rel, "geq_s, succ_s, succ_s_naive, succ_prime, dominates or lift1..lift6")->required();
  eo_cmd->add_option("U", u_text, "Comma-separated worlds, {} for empty")->required();
  eo_cmd->add_option("V", v_text, "Comma-separated worlds, {} for empty")->required();

  std::string relation, agreement_struct;
  auto* props_cmd = app.add_subcommand("props", "Audit a relation file");
  props_cmd->add_option("relation", relation, "Relation file")->required();
  props_cmd->add_option("--agreement", agreement_struct, "Structure over the ground set to compare against");
  props_cmd->add_flag("--total", total, "Compare the agreement structure through >=s instead of >s");

  auto* real_cmd = app.add_subcommand("realize", "Build a world order realizing a relation file");
  real_cmd->add_option("relation", relation, "Relation file")->required();
  real_cmd->add_flag("--total", total, "Total preorder case");

  std::string to, variant = "prime";
  auto* tr_cmd = app.add_subcommand("translate", "Rewrite between >> and =>");
  tr_cmd->add_option("--to", to, "arrow or gg")->required();
  tr_cmd->add_option("formula", formula, "Formula text")->required();
  tr_cmd->add_option("--variant", variant, "prime, dprime or tprime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : failure;
  }

  try {
    detail::Report r;
    if (*sat_cmd) r = detail::check_sat(detail::formula_arg(formula, formula_file), total, brute, brute_worlds);
    else if (*mc_cmd) r = detail::model_check(structure, detail::formula_arg(formula, formula_file), arrow);
    else if (*eo_cmd) r = detail::eval_order(structure, rel, u_text, v_text);
    else if (*props_cmd) r = detail::props(relation, agreement_struct, total);
    else if (*real_cmd) r = detail::realize(relation, total);
    else r = detail::translate(to, formula, variant);
    if (json) out << r.json.dump(2) << "\n";
    else out << r.text;
    return r.code;
  } catch (const ParseError& e) {
    if (json) {
      Json j = {{"error", std::string(to_string(e.code()))}, {"message", e.what()},
                {"position", e.position()}, {"expected", e.expected()}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return failure;
  } catch (const Error& e) {
    if (json) out << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return failure;
  }
}

}  // namespace relik::cli

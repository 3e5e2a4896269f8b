#include "tilinv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tilinv/matrix.hpp"

namespace tilinv {

namespace {

using json = nlohmann::ordered_json;

Word parse_word(const json& j, const Alphabet& a, const std::string& where) {
  if (!j.is_array())
    throw ParseError(where + ": expected an array of letter names");
  Word w;
  for (const auto& x : j) {
    if (!x.is_string())
      throw ParseError(where + ": letters must be strings");
    const std::string s = x.get<std::string>();
    if (!a.has(s)) throw ParseError(where + ": unknown letter \"" + s + "\"");
    w.push_back(a.index(s));
  }
  return w;
}

json word_json(const Word& w, const Alphabet& a) {
  json out = json::array();
  for (Letter x : w) out.push_back(a.name(x));
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Substitution parse_substitution_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  for (const auto& [key, val] : j.items())
    if (key != "name" && key != "letters" && key != "rules")
      throw ParseError("unknown key \"" + key + "\"");
  if (!j.contains("letters") || !j["letters"].is_array())
    throw ParseError("\"letters\" must be an array of strings");
  Alphabet a;
  for (const auto& x : j["letters"]) {
    if (!x.is_string()) throw ParseError("letter names must be strings");
    try {
      a.add(x.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (a.size() == 0) throw ParseError("alphabet is empty");
  if (!j.contains("rules") || !j["rules"].is_object())
    throw ParseError("\"rules\" must be an object");
  for (const auto& [key, val] : j["rules"].items())
    if (!a.has(key)) throw ParseError("rule for unknown letter \"" + key + "\"");
  std::vector<Word> rules;
  for (Letter x = 0; x < a.size(); ++x) {
    const std::string& n = a.name(x);
    if (!j["rules"].contains(n))
      throw ParseError("missing rule for letter \"" + n + "\"");
    Word w = parse_word(j["rules"][n], a, "rules." + n);
    if (w.empty()) throw ParseError("rules." + n + ": image must be non-empty");
    rules.push_back(std::move(w));
  }
  std::string name = j.contains("name") ? j["name"].get<std::string>() : "";
  return Substitution(a, rules, name);
}

std::string substitution_to_json(const Substitution& sigma) {
  const Alphabet& a = sigma.alphabet();
  json j;
  j["name"] = sigma.name();
  j["letters"] = json::array();
  for (Letter x = 0; x < a.size(); ++x) j["letters"].push_back(a.name(x));
  j["rules"] = json::object();
  for (Letter x = 0; x < a.size(); ++x)
    j["rules"][a.name(x)] = word_json(sigma.image(x), a);
  return j.dump(2) + "\n";
}

std::vector<BalancedPair> parse_pairs_json(const std::string& text,
                                           const Alphabet& a) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_array()) throw ParseError("top level must be an array of pairs");
  std::vector<BalancedPair> out;
  for (const auto& p : j) {
    if (!p.is_object() || !p.contains("u") || !p.contains("v"))
      throw ParseError("each pair needs \"u\" and \"v\" arrays");
    for (const auto& [key, val] : p.items())
      if (key != "u" && key != "v" && key != "dual")
        throw ParseError("unknown key \"" + key + "\" in pair");
    out.emplace_back(parse_word(p["u"], a, "u"), parse_word(p["v"], a, "v"));
  }
  return out;
}

std::string pairs_to_json(const std::vector<BalancedPair>& pairs,
                          const Alphabet& a) {
  json j = json::array();
  for (const auto& p : pairs) {
    json e;
    e["u"] = word_json(p.u, a);
    e["v"] = word_json(p.v, a);
    e["dual"] = p.v < p.u;
    j.push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string render_report_text(const AnalysisReport& r,
                               const Substitution& sigma) {
  const Alphabet& a = sigma.alphabet();
  std::ostringstream os;
  os << "substitution: " << (r.name.empty() ? "(unnamed)" : r.name) << "\n";
  os << "rules:";
  for (Letter x = 0; x < a.size(); ++x)
    os << " " << a.name(x) << "->" << a.spell(sigma.image(x), "");
  os << "\n";
  os << "char poly: " << poly_str(r.spectral.char_poly) << "\n";
  os << "pisot class: " << to_string(r.spectral.pisot_class) << " ("
     << r.spectral.class_reason << ")\n";
  os << "primitive: " << (r.spectral.primitive ? "yes" : "no")
     << "  proper: "
     << (r.properness.kind == Properness::Proper
             ? "yes (power " + std::to_string(r.properness.power) + ")"
             : (r.properness.kind == Properness::NotProper ? "no" : "unknown"))
     << "\n";
  os << "pair table (m=" << r.table.power << "):";
  for (auto [x, y] : r.table.pairs)
    os << " (" << a.name(x) << "," << a.name(y) << ")";
  os << "\n";
  os << "no cycles: " << (r.cycles.no_cycles ? "yes" : "no");
  if (!r.cycles.no_cycles) {
    os << "  witness:";
    for (auto [x, y] : r.cycles.witness)
      os << " (" << a.name(x) << "," << a.name(y) << ")";
  }
  os << "  equivalence classes: " << r.equivalence_classes << "\n";
  if (r.gcc_ok) {
    os << "gcc: " << to_string(r.gcc.verdict);
    if (r.gcc.verdict == Verdict::Yes)
      os << " (witness " << a.name(r.gcc.a) << "," << a.name(r.gcc.b) << ")";
    if (!r.gcc.note.empty()) os << " [" << r.gcc.note << "]";
    os << "\n";
  } else {
    os << "gcc: not computed\n";
  }
  if (r.asym_ok)
    os << "asymptotic members: forward " << forward_member_count(r.asym)
       << " backward " << backward_member_count(r.asym) << " (depth "
       << r.asym.depth << (r.asym.heuristic ? ", at margin" : "") << ")\n";
  if (r.abp_ok) {
    os << "abp nontrivial:";
    for (const auto& p : r.abp_nontrivial) os << " " << pair_str(a, p);
    os << "\n";
  }
  if (r.essential_ok) {
    os << "essential nontrivial:";
    for (const auto& p : r.essential.nontrivial()) os << " " << pair_str(a, p);
    os << "\n";
    os << "essential certificates: forward_closed="
       << (r.essential.forward_closed ? "yes" : "no")
       << " backward_covered=" << (r.essential.backward_covered ? "yes" : "no")
       << " contains_abp_closure="
       << (r.essential.contains_abp_closure ? "yes" : "no")
       << " (max_len " << r.essential.max_len_used << ")\n";
  }
  if (r.ebp_ok) {
    os << "ebp: lambda " << fmt(r.ebp_lambda) << " beta " << fmt(r.ebp_beta);
    if (r.ebp_asym_ok)
      os << " backward-asymptotic " << r.ebp_backward << " forward-asymptotic "
         << r.ebp_forward;
    os << "\n";
  }
  if (r.phi_a_ok)
    os << "phi_A: letters " << r.phi_a_letters << " primitive "
       << (r.phi_a_primitive ? "yes" : "no") << " eventual rank "
       << r.phi_a_rank << " poly " << poly_str(r.phi_a_poly) << "\n";
  for (const auto& f : r.flags) os << "bounded: " << f << "\n";
  return os.str();
}

std::string render_report_json(const AnalysisReport& r,
                               const Substitution& sigma) {
  const Alphabet& a = sigma.alphabet();
  json j;
  j["name"] = r.name;
  j["char_poly"] = poly_str(r.spectral.char_poly);
  j["pisot_class"] = to_string(r.spectral.pisot_class);
  j["primitive"] = r.spectral.primitive;
  j["proper"] = r.properness.kind == Properness::Proper;
  j["pair_table"] = json::array();
  for (auto [x, y] : r.table.pairs)
    j["pair_table"].push_back(json::array({a.name(x), a.name(y)}));
  j["pair_table_power"] = r.table.power;
  j["no_cycles"] = r.cycles.no_cycles;
  j["equivalence_classes"] = r.equivalence_classes;
  j["gcc"] = {{"value", r.gcc_ok ? to_string(r.gcc.verdict) : "NotComputed"},
              {"exact", r.gcc_ok && r.gcc.verdict != Verdict::Unknown}};
  j["asymptotic"] = {
      {"value",
       r.asym_ok ? json({{"forward", forward_member_count(r.asym)},
                         {"backward", backward_member_count(r.asym)}})
                 : json(nullptr)},
      {"bounds", {{"depth", r.asym_ok ? r.asym.depth : 0}}},
      {"exact", r.asym_ok && !r.asym.heuristic}};
  json ess = json(nullptr);
  if (r.essential_ok) {
    ess = json::object();
    ess["nontrivial"] = json::array();
    for (const auto& p : r.essential.nontrivial()) {
      json e;
      e["u"] = word_json(p.u, a);
      e["v"] = word_json(p.v, a);
      e["dual"] = p.v < p.u;
      ess["nontrivial"].push_back(e);
    }
    ess["forward_closed"] = r.essential.forward_closed;
    ess["backward_covered"] = r.essential.backward_covered;
    ess["contains_abp_closure"] = r.essential.contains_abp_closure;
  }
  j["essential"] = {{"value", ess},
                    {"bounds", {{"max_len", r.essential.max_len_used}}},
                    {"exact", r.essential_ok && r.essential.forward_closed}};
  j["ebp"] = r.ebp_ok
                 ? json({{"lambda", r.ebp_lambda},
                         {"beta", r.ebp_beta},
                         {"backward_asymptotic",
                          r.ebp_asym_ok ? json(r.ebp_backward) : json(nullptr)},
                         {"forward_asymptotic",
                          r.ebp_asym_ok ? json(r.ebp_forward) : json(nullptr)},
                         {"exact", r.ebp_asym_ok && !r.ebp_heuristic}})
                 : json(nullptr);
  j["phi_a"] = r.phi_a_ok ? json({{"letters", r.phi_a_letters},
                                  {"primitive", r.phi_a_primitive},
                                  {"eventual_rank", r.phi_a_rank},
                                  {"poly", poly_str(r.phi_a_poly)}})
                          : json(nullptr);
  j["bounded_flags"] = r.flags;
  return j.dump(2) + "\n";
}

std::string render_compare_text(const CompareResult& c) {
  std::ostringstream os;
  os << "verdict: " << (c.distinguished ? "DISTINGUISHED" : "INCONCLUSIVE")
     << "\n";
  for (const auto& s : c.reasons) os << "reason: " << s << "\n";
  if (!c.distinguished) {
    os << "compared:";
    for (const auto& s : c.compared) os << " " << s << ";";
    os << "\n";
  }
  return os.str();
}

std::string render_compare_json(const CompareResult& c) {
  json j;
  j["verdict"] = c.distinguished ? "DISTINGUISHED" : "INCONCLUSIVE";
  j["reasons"] = c.reasons;
  j["compared"] = c.compared;
  return j.dump(2) + "\n";
}

}  // namespace tilinv

#include "jetcalc/system_file.hpp"

#include <fstream>
#include <sstream>

namespace jetcalc {

namespace {

std::string as_text(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw FileError("'" + key + "' must be a string or an integer");
}

std::string get_string(const Json& obj, const std::string& key, const std::string& where, bool required = true,
                       const std::string& fallback = "") {
  if (!obj.contains(key)) {
    if (required) throw FileError(where + ": missing key '" + key + "'");
    return fallback;
  }
  return as_text(obj.at(key), where + "." + key);
}

std::vector<std::string> get_strings(const Json& obj, const std::string& key, const std::string& where,
                                     bool required = true) {
  std::vector<std::string> out;
  if (!obj.contains(key)) {
    if (required) throw FileError(where + ": missing key '" + key + "'");
    return out;
  }
  const Json& v = obj.at(key);
  if (v.is_array()) {
    for (auto& x : v) out.push_back(as_text(x, where + "." + key));
    return out;
  }
  std::string s = as_text(v, where + "." + key);
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) out.push_back(part);
  return out;
}

const Json& table(const Json& doc, const std::string& key) {
  static const Json empty = Json::object();
  if (!doc.contains(key)) return empty;
  if (!doc.at(key).is_object()) throw FileError("'" + key + "' must be a table");
  return doc.at(key);
}

const Json& array_of_tables(const Json& doc, const std::string& key) {
  static const Json empty = Json::array();
  if (!doc.contains(key)) return empty;
  if (!doc.at(key).is_array()) throw FileError("'" + key + "' must be an array of tables ([[" + key + "]])");
  return doc.at(key);
}

ParamOverrides entry_params(const Json& entry, const std::string& where) {
  ParamOverrides out;
  if (!entry.contains("params")) return out;
  if (!entry.at("params").is_object()) throw FileError(where + ".params must be an inline table");
  for (auto& [k, v] : entry.at("params").items()) out.emplace_back(k, as_text(v, where + ".params." + k));
  return out;
}

Expr parse_in(const std::string& text, const JetSpace& space, const std::string& where,
              const ParseOptions& opts = {}) {
  try {
    return parse_expr(text, space, opts);
  } catch (const ParseError& e) {
    throw FileError(where + ": " + e.what() + " in \"" + text + "\"");
  } catch (const std::domain_error& e) {
    throw FileError(where + ": " + e.what() + " in \"" + text + "\"");
  }
}

std::vector<int> parse_counts(const std::string& s, int arity, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw FileError(where + ": bad derivative count '" + part + "'");
    }
  }
  if (static_cast<int>(out.size()) != arity) throw FileError(where + ": derivative counts do not match the arity");
  return out;
}

ScalingAction read_action(const std::string& name, const Json& obj, const JetSpace& space, const std::string& where) {
  ScalingAction a;
  a.name = name;
  a.indep.assign(space.indep.size(), Coeff());
  a.dep.assign(space.dep.size(), Coeff());
  for (auto& [k, v] : obj.items()) {
    if (v.is_object()) continue;
    std::string text = as_text(v, where + "." + k);
    Expr e = parse_in(text, space, where + "." + k);
    auto c = e.constant_value();
    if (!c) throw FileError(where + "." + k + ": weight must be a constant, got \"" + text + "\"");
    if (int i = space.find_indep(k); i >= 0)
      a.indep[i] = *c;
    else if (int d = space.find_dep(k); d >= 0)
      a.dep[d] = *c;
    else
      throw FileError(where + ": '" + k + "' is neither an independent nor a dependent variable");
  }
  return a;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw FileError("empty rational");
  if (s[0] == '+') s.erase(0, 1);
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && i == 0) || c == '/';
    if (!ok) throw FileError("not a rational: '" + text + "'");
  }
  Rational r;
  try {
    r = Rational(s);
  } catch (const std::exception&) {
    throw FileError("not a rational: '" + text + "'");
  }
  if (r.get_den() == 0) throw FileError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::pair<std::string, std::string> parse_override(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw FileError("expected name=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

PdeSystem system_from_json(const Json& doc, const ParamOverrides& overrides) {
  PdeSystem sys;
  const Json& head = table(doc, "system");
  sys.name = get_string(head, "name", "system", false, "unnamed");
  sys.space.indep = get_strings(head, "independent", "system");
  sys.space.dep = get_strings(head, "dependent", "system");
  if (sys.space.indep.empty() || sys.space.indep.size() > static_cast<size_t>(kMaxIndep))
    throw FileError("system.independent must list 1 to " + std::to_string(kMaxIndep) + " variables");
  for (auto& v : sys.space.indep)
    if (v.size() != 1 || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw FileError("independent variable names must be single letters, got '" + v + "'");
  if (sys.space.dep.empty()) throw FileError("system.dependent is empty");

  std::map<std::string, std::string> ov(overrides.begin(), overrides.end());
  const Json& params = table(doc, "params");
  for (auto& [k, _] : ov)
    if (!params.contains(k)) throw FileError("--param " + k + ": no such parameter in [params]");
  for (auto& [k, v] : params.items()) {
    std::string text = as_text(v, "params." + k);
    if (auto it = ov.find(k); it != ov.end()) text = it->second;
    if (text == "free")
      sys.space.params.push_back(k);
    else
      sys.space.bound.emplace_back(k, parse_rational(text));
  }

  for (auto& f : array_of_tables(doc, "function")) {
    auto decl = std::make_shared<FunctionDecl>();
    decl->name = get_string(f, "name", "function");
    std::string where = "function " + decl->name;
    decl->arg_names = get_strings(f, "args", where);
    if (decl->arg_names.empty()) throw FileError(where + ": needs at least one argument");
    sys.space.functions.push_back(decl);
    // Registered first so rules may mention the function itself.
    ParseOptions opts{decl->arg_names};
    if (f.contains("derivative")) {
      if (decl->arity() != 1) throw FileError(where + ": 'derivative' is for one-argument functions; use rules");
      decl->rules.push_back({{1}, parse_in(get_string(f, "derivative", where), sys.space, where, opts)});
    }
    if (f.contains("rules")) {
      if (!f.at("rules").is_array()) throw FileError(where + ".rules must be an array");
      for (auto& r : f.at("rules")) {
        if (!r.is_array() || r.size() != 2) throw FileError(where + ": each rule is [\"counts\", \"expr\"]");
        auto counts = parse_counts(as_text(r[0], where), decl->arity(), where);
        decl->rules.push_back({counts, parse_in(as_text(r[1], where), sys.space, where, opts)});
      }
    }
  }

  for (auto& e : array_of_tables(doc, "equation")) {
    Equation eq;
    eq.name = get_string(e, "name", "equation", false, "eq" + std::to_string(sys.equations.size() + 1));
    std::string where = "equation " + eq.name;
    try {
      eq.lead = parse_jet_var(get_string(e, "lead", where), sys.space);
    } catch (const ParseError& err) {
      throw FileError(where + ".lead: " + err.what());
    }
    eq.rhs = parse_in(get_string(e, "rhs", where), sys.space, where + ".rhs");
    if (e.contains("G")) {
      eq.G = parse_in(get_string(e, "G", where), sys.space, where + ".G");
      eq.custom_g = true;
    } else {
      eq.G = Expr::jet(eq.lead) - eq.rhs;
    }
    sys.equations.push_back(eq);
  }
  if (sys.equations.empty()) throw FileError("no [[equation]] blocks");

  for (auto& i : array_of_tables(doc, "identity")) {
    Identity id;
    id.name = get_string(i, "name", "identity", false, "id" + std::to_string(sys.identities.size() + 1));
    std::string where = "identity " + id.name;
    if (!i.contains("terms") || !i.at("terms").is_array()) throw FileError(where + ": missing terms array");
    for (auto& t : i.at("terms")) {
      if (!t.is_array() || t.size() < 2 || t.size() > 3)
        throw FileError(where + ": each term is [\"equation\", \"coeff\", \"derivative letters\"]");
      std::string eqname = as_text(t[0], where);
      int idx = -1;
      for (size_t k = 0; k < sys.equations.size(); ++k)
        if (sys.equations[k].name == eqname) idx = static_cast<int>(k);
      if (idx < 0) throw FileError(where + ": unknown equation '" + eqname + "'");
      IdentityTerm term;
      term.eq = idx;
      term.coeff = parse_in(as_text(t[1], where), sys.space, where);
      std::string letters = t.size() == 3 ? as_text(t[2], where) : "";
      auto mi = sys.space.parse_letters(letters);
      if (!mi) throw FileError(where + ": bad derivative letters '" + letters + "'");
      term.deriv = *mi;
      id.terms.push_back(term);
    }
    sys.identities.push_back(id);
  }

  if (doc.contains("scaling")) {
    const Json& sc = table(doc, "scaling");
    bool has_scalar = false;
    for (auto& [k, v] : sc.items())
      if (!v.is_object()) has_scalar = true;
    if (has_scalar) sys.scalings.push_back(read_action("default", sc, sys.space, "scaling"));
    for (auto& [k, v] : sc.items())
      if (v.is_object()) sys.scalings.push_back(read_action(k, v, sys.space, "scaling." + k));
  }

  try {
    sys.validate();
  } catch (const SystemError& e) {
    throw FileError(e.what());
  }
  return sys;
}

SystemDoc read_system_doc(const Json& doc, const ParamOverrides& overrides) {
  SystemDoc out;
  out.raw = doc;
  out.overrides = overrides;
  out.system = system_from_json(doc, overrides);
  for (auto& m : array_of_tables(doc, "multiplier")) {
    MultiplierEntry e;
    e.name = get_string(m, "name", "multiplier", false, "Q" + std::to_string(out.multipliers.size() + 1));
    std::string where = "multiplier " + e.name;
    e.Q = get_strings(m, "Q", where);
    e.expect = get_string(m, "expect", where, false, "pass");
    e.params = entry_params(m, where);
    out.multipliers.push_back(e);
  }
  for (auto& c : array_of_tables(doc, "current")) {
    CurrentEntry e;
    e.name = get_string(c, "name", "current", false, "C" + std::to_string(out.currents.size() + 1));
    std::string where = "current " + e.name;
    e.T = get_string(c, "T", where);
    e.X = get_strings(c, "X", where);
    e.multiplier = get_strings(c, "multiplier", where, false);
    e.method = get_string(c, "method", where, false, "verify");
    e.scaling = get_string(c, "scaling", where, false, "");
    e.expect = get_string(c, "expect", where, false, "pass");
    e.params = entry_params(c, where);
    if (e.method != "verify" && e.method != "homotopy" && e.method != "scaling" && e.method != "direct")
      throw FileError(where + ": unknown method '" + e.method + "'");
    if (e.method != "verify" && e.multiplier.empty()) throw FileError(where + ": method " + e.method + " needs a multiplier");
    out.currents.push_back(e);
  }
  for (auto& s : array_of_tables(doc, "solve")) {
    SolveEntry e;
    e.target = get_string(s, "target", "solve", false, "multipliers");
    if (s.contains("degree")) e.degree = s.at("degree").get<int>();
    if (s.contains("expect_dim")) e.expect_dim = s.at("expect_dim").get<int>();
    e.params = entry_params(s, "solve");
    out.solves.push_back(e);
  }
  return out;
}

SystemDoc load_system_file(const std::string& path, const ParamOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc;
  try {
    doc = parse_toml(ss.str());
  } catch (const TomlError& e) {
    throw FileError(path + ": " + e.what());
  }
  try {
    SystemDoc d = read_system_doc(doc, overrides);
    d.path = path;
    return d;
  } catch (const FileError& e) {
    throw FileError(path + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw FileError(path + ": " + e.what());
  }
}

VectorExpr parse_vector(const std::vector<std::string>& parts, const JetSpace& space) {
  VectorExpr out;
  for (auto& p : parts) out.push_back(parse_in(p, space, "expression"));
  return out;
}

VectorExpr parse_vector(const std::string& text, const JetSpace& space) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) parts.push_back(part);
  return parse_vector(parts, space);
}

std::string current_block(const ConservedCurrent& c, const JetSpace& space, const std::string& name) {
  std::string s = "[[current]]\n";
  if (!name.empty()) s += "name = " + toml_quote(name) + "\n";
  s += "method = " + toml_quote(c.method) + "\n";
  s += "T = " + toml_quote(to_string(c.current.T(), space)) + "\n";
  s += "X = [";
  for (int i = 1; i < c.current.size(); ++i)
    s += (i > 1 ? ", " : "") + toml_quote(to_string(c.current.comp[i], space));
  s += "]\n";
  if (!c.multiplier.empty()) {
    s += "multiplier = [";
    for (size_t i = 0; i < c.multiplier.size(); ++i)
      s += (i ? ", " : "") + toml_quote(to_string(c.multiplier[i], space));
    s += "]\n";
  }
  if (c.omega) s += "omega = " + toml_quote(to_string(*c.omega, space)) + "\n";
  return s;
}

Json current_json(const ConservedCurrent& c, const JetSpace& space) {
  Json j;
  j["method"] = c.method;
  j["T"] = to_string(c.current.T(), space);
  j["X"] = Json::array();
  for (int i = 1; i < c.current.size(); ++i) j["X"].push_back(to_string(c.current.comp[i], space));
  j["multiplier"] = Json::array();
  for (auto& q : c.multiplier) j["multiplier"].push_back(to_string(q, space));
  if (c.omega) j["omega"] = to_string(*c.omega, space);
  if (c.method == "direct") j["trivial_freedom"] = c.trivial_freedom;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

}  // namespace jetcalc

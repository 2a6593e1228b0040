#include "frontlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& invariant, const std::string& msg) {
  fail(ErrorKind::configuration, invariant, msg);
}

double to_number(const std::string& s, const std::string& what) {
  std::string t = trim(s);
  if (t == "inf") return INFINITY;
  try {
    std::size_t used = 0;
    double v = std::stod(t, &used);
    if (used == t.size()) return v;
  } catch (const std::exception&) {
  }
  bad("numeric value", what + ": expected a number, got '" + s + "'");
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

RawConfig parse_config(const std::string& text, const std::string& origin) {
  RawConfig raw;
  raw.origin = origin;
  std::istringstream in(text);
  std::string line, section = "run";
  int lineno = 0;
  bool skip = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') bad("section header", where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_name(section)) bad("section header", where + ": bad section name '" + section + "'");
      skip = section == "result";
      continue;
    }
    if (skip) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) bad("key = value", where + ": expected key = value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    if (!valid_name(key)) bad("key = value", where + ": bad key '" + key + "'");
    for (const auto& e : raw.entries)
      if (e.section == section && e.key == key) bad("duplicate key", where + ": duplicate key '" + section + "." + key + "'");
    raw.entries.push_back({section, key, trim(line.substr(eq + 1))});
  }
  return raw;
}

RawConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("readable config", "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

ResolvedConfig::ResolvedConfig(const RawConfig& raw, const std::vector<KeySpec>& schema) : origin_(raw.origin) {
  for (const auto& k : schema) {
    auto dot = k.qualified.find('.');
    entries_.push_back({k.qualified.substr(0, dot), k.qualified.substr(dot + 1), k.fallback});
    given_.push_back(false);
  }
  for (const auto& e : raw.entries) {
    std::size_t i = find(e.qualified());
    if (i == entries_.size()) bad("unknown key", "unknown key '" + e.qualified() + "' in " + raw.origin);
    entries_[i].value = e.value;
    given_[i] = true;
  }
}

std::size_t ResolvedConfig::find(const std::string& qualified) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].qualified() == qualified) return i;
  return entries_.size();
}

const std::string& ResolvedConfig::str(const std::string& qualified) const {
  std::size_t i = find(qualified);
  if (i == entries_.size()) fail(ErrorKind::invalid_argument, "schema key", "no key '" + qualified + "' in the schema");
  return entries_[i].value;
}

bool ResolvedConfig::given(const std::string& qualified) const {
  std::size_t i = find(qualified);
  return i < entries_.size() && given_[i];
}

double ResolvedConfig::num(const std::string& qualified) const { return to_number(str(qualified), qualified); }

long ResolvedConfig::integer(const std::string& qualified) const {
  double v = num(qualified);
  if (v != std::floor(v)) bad("integer value", qualified + ": expected an integer, got '" + str(qualified) + "'");
  return static_cast<long>(v);
}

bool ResolvedConfig::flag(const std::string& qualified) const {
  const std::string& v = str(qualified);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad("boolean value", qualified + ": expected true or false, got '" + v + "'");
}

std::vector<double> ResolvedConfig::list(const std::string& qualified) const {
  std::vector<double> out;
  std::istringstream in(str(qualified));
  std::string item;
  while (std::getline(in, item, ','))
    if (!trim(item).empty()) out.push_back(to_number(item, qualified));
  return out;
}

Reaction ResolvedConfig::reaction(const std::string& qualified) const {
  try {
    return parse_reaction(str(qualified));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::configuration) bad(e.invariant(), qualified + ": " + e.what());
    bad("reaction spec", qualified + ": " + e.what());
  }
}

Boundary ResolvedConfig::boundary(const std::string& qualified) const {
  try {
    return parse_boundary(str(qualified));
  } catch (const Error& e) {
    bad("boundary spec", qualified + ": " + e.what());
  }
}

std::string ResolvedConfig::text() const {
  std::ostringstream out;
  std::string section;
  for (const auto& e : entries_) {
    if (e.section != section) {
      if (!section.empty()) out << '\n';
      section = e.section;
      out << '[' << section << "]\n";
    }
    out << e.key << " = " << e.value << '\n';
  }
  return out.str();
}

Reaction parse_reaction(const std::string& spec) {
  std::string s = trim(spec);
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') bad("reaction spec", "expected name(args), got '" + spec + "'");
  std::string name = trim(s.substr(0, open));
  std::map<std::string, std::string> args;
  std::istringstream in(s.substr(open + 1, s.size() - open - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    if (trim(item).empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) bad("reaction spec", "argument '" + trim(item) + "' needs name=value");
    args[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  auto only = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : args)
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
        bad("unknown key", "unknown reaction argument '" + k + "' for " + name);
  };
  auto theta = [&] {
    if (!args.count("theta")) bad("reaction spec", name + " needs theta=");
    return to_number(args["theta"], name + ".theta");
  };
  if (name == "kpp") {
    only({});
    return Reaction::kpp();
  }
  if (name == "cubic_bistable") {
    only({"theta"});
    return Reaction::cubic_bistable(theta());
  }
  if (name == "cubic_formula") {
    only({"theta"});
    return Reaction::cubic_formula(theta());
  }
  if (name == "ignition") {
    only({"theta"});
    return Reaction::ignition(theta());
  }
  if (name == "table") {
    only({"path"});
    if (!args.count("path")) bad("reaction spec", "table needs path=");
    return Reaction::table_csv(args["path"]);
  }
  bad("reaction spec", "unknown reaction '" + name + "'");
}

Boundary parse_boundary(const std::string& spec) {
  std::string s = trim(spec);
  if (s == "neumann" || s == "inf") return Boundary::neumann();
  double rho = to_number(s, "rho");
  if (rho < 0.0) bad("rho >= 0", "Robin parameter must be nonnegative");
  return rho == 0.0 ? Boundary::dirichlet() : Boundary::robin(rho);
}

}  // namespace frontlab

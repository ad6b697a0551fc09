#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "mhdlab/classifier.hpp"
#include "mhdlab/errors.hpp"

namespace mhdlab::cli {
namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"",
       {"model", "rho_hat", "c_hat", "H_plasma_2", "H_plasma_3", "H_vacuum_2", "H_vacuum_3",
        "a_hat", "a0_hat", "a1_hat"}},
      {"classify", {"numeric", "rel_tol", "n_grid"}},
      {"roots", {"n", "omega"}},
      {"sweep", {"grid", "max_points", "numeric", "rel_tol"}},
      {"hadamard", {"n_list", "t", "omega", "points_per_wavelength", "fields", "out"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::string qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

}  // namespace

double parse_number(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError(what + ": expected a finite number, got '" + s + "'");
  }
  return v;
}

std::vector<long> parse_integer_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  for (const std::string& tok : split_list(text)) {
    // accept 1e5 as well as 100000
    const double v = parse_number(tok, what);
    if (v < 1.0 || v > 1e15 || v != std::floor(v)) {
      throw ConfigError(what + ": expected a positive integer, got '" + tok + "'");
    }
    out.push_back(static_cast<long>(v));
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

Config Config::parse(std::istream& in, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::string section;
  std::string raw;
  int line = 0;
  auto error = [&](const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty() || body[0] == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']') error("malformed section header '" + body + "'");
      section = trim(body.substr(1, body.size() - 2));
      if (!allowed_keys().count(section) || section.empty()) {
        error("unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) error("expected key = value, got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const auto& keys = allowed_keys().at(section);
    if (!keys.count(key)) error("unknown key '" + qualified(section, key) + "'");
    auto& entries = cfg.sections_[section];
    const bool repeatable = section == "sweep" && key == "grid";
    if (!repeatable && entries.count(key)) {
      error("duplicate key '" + qualified(section, key) + "' (first set on line " +
            std::to_string(entries.find(key)->second.line) + ")");
    }
    entries.emplace(key, ConfigValue{value, line});
  }
  cfg.check_types();
  return cfg;
}

void Config::check_types() const {
  for (const std::string& name : state_field_names()) number("", name);
  if (has("", "model")) model();
  flag("classify", "numeric");
  number("classify", "rel_tol");
  integers("classify", "n_grid");
  integers("roots", "n");
  wavevector("roots", "omega");
  integer("sweep", "max_points");
  flag("sweep", "numeric");
  number("sweep", "rel_tol");
  integers("hadamard", "n_list");
  number("hadamard", "t");
  wavevector("hadamard", "omega");
  integer("hadamard", "points_per_wavelength");
  flag("hadamard", "fields");
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

const ConfigValue* Config::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto it = s->second.find(key);
  return it == s->second.end() ? nullptr : &it->second;
}

void Config::fail(const ConfigValue& v, const std::string& key, const std::string& what) const {
  throw ConfigError(source_ + ":" + std::to_string(v.line) + ": " + key + ": " + what);
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::optional<std::string> Config::text(const std::string& section, const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v) return std::nullopt;
  return v->text;
}

std::optional<double> Config::number(const std::string& section, const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v) return std::nullopt;
  try {
    return parse_number(v->text, qualified(section, key));
  } catch (const ConfigError&) {
    fail(*v, qualified(section, key), "expected a finite number, got '" + v->text + "'");
  }
}

std::optional<long> Config::integer(const std::string& section, const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v) return std::nullopt;
  try {
    const auto list = parse_integer_list(v->text, qualified(section, key));
    if (list.size() != 1) throw ConfigError("");
    return list.front();
  } catch (const ConfigError&) {
    fail(*v, qualified(section, key), "expected one positive integer, got '" + v->text + "'");
  }
}

std::optional<bool> Config::flag(const std::string& section, const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v) return std::nullopt;
  if (v->text == "true" || v->text == "1" || v->text == "yes") return true;
  if (v->text == "false" || v->text == "0" || v->text == "no") return false;
  fail(*v, qualified(section, key), "expected true or false, got '" + v->text + "'");
}

std::optional<std::vector<long>> Config::integers(const std::string& section,
                                                  const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v) return std::nullopt;
  try {
    return parse_integer_list(v->text, qualified(section, key));
  } catch (const ConfigError&) {
    fail(*v, qualified(section, key), "expected positive integers, got '" + v->text + "'");
  }
}

std::optional<Wavevector> Config::wavevector(const std::string& section,
                                             const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v) return std::nullopt;
  const auto parts = split_list(v->text);
  if (parts.size() != 2) fail(*v, qualified(section, key), "expected two numbers 'w2 w3'");
  try {
    return Wavevector{parse_number(parts[0], key), parse_number(parts[1], key)};
  } catch (const ConfigError&) {
    fail(*v, qualified(section, key), "expected two numbers, got '" + v->text + "'");
  }
}

std::vector<std::string> Config::all(const std::string& section, const std::string& key) const {
  std::vector<std::string> out;
  const auto s = sections_.find(section);
  if (s == sections_.end()) return out;
  const auto [b, e] = s->second.equal_range(key);
  for (auto it = b; it != e; ++it) out.push_back(it->second.text);
  return out;
}

ModelKind Config::model() const {
  const ConfigValue* v = find("", "model");
  if (!v) throw ConfigError(source_ + ": missing required key 'model'");
  const auto m = parse_model(v->text);
  if (!m) fail(*v, "model", "unknown model '" + v->text + "'");
  return *m;
}

BasicState Config::state() const {
  BasicState st;
  for (const std::string& name : state_field_names()) {
    if (const auto x = number("", name)) state_field(st, name) = *x;
  }
  const ModelKind m = model();
  try {
    validate(m, st);
  } catch (const DomainError& e) {
    throw ConfigError(source_ + ": invalid basic state: " + e.what());
  }
  return st;
}

}  // namespace mhdlab::cli

#pragma once

// Strict INI-like run configuration.
//
//   # comment
//   model = CompressibleMHD
//   rho_hat = 1.0
//   [roots]
//   n = 100, 1000
//
// Top-level keys describe the basic state; [classify], [roots], [sweep] and
// [hadamard] hold per-command settings. Unknown sections or keys, repeated
// keys (except sweep.grid) and ill-typed values are errors naming the file
// and line, raised at parse time whichever command reads the file.

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhdlab/domain.hpp"

namespace mhdlab::cli {

struct ConfigValue {
  std::string text;
  int line = 0;
};

class Config {
 public:
  static Config parse(std::istream& in, const std::string& source);
  /// Throws ConfigError if the file cannot be opened.
  static Config load(const std::string& path);

  const std::string& source() const { return source_; }

  ModelKind model() const;
  /// Unset fields keep BasicState defaults; the result is validated for model().
  BasicState state() const;

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> text(const std::string& section, const std::string& key) const;
  std::optional<double> number(const std::string& section, const std::string& key) const;
  std::optional<long> integer(const std::string& section, const std::string& key) const;
  std::optional<bool> flag(const std::string& section, const std::string& key) const;
  /// Comma- or space-separated positive integers.
  std::optional<std::vector<long>> integers(const std::string& section, const std::string& key) const;
  /// Two numbers, "w2 w3" or "w2, w3".
  std::optional<Wavevector> wavevector(const std::string& section, const std::string& key) const;
  /// Every value of a repeatable key, in file order.
  std::vector<std::string> all(const std::string& section, const std::string& key) const;

 private:
  void check_types() const;
  const ConfigValue* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const ConfigValue& v, const std::string& key, const std::string& what) const;

  std::string source_;
  std::map<std::string, std::multimap<std::string, ConfigValue>> sections_;
};

/// Parses "1e2, 1000 10000" style lists; throws ConfigError naming `what`.
std::vector<long> parse_integer_list(const std::string& text, const std::string& what);
double parse_number(const std::string& text, const std::string& what);

}  // namespace mhdlab::cli

#pragma once

#include <string>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/reaction.hpp"

namespace frontlab {

/// One `key = value` line; keys before the first `[section]` belong to `run`.
struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  std::string qualified() const { return section + "." + key; }
};

struct RawConfig {
  std::vector<ConfigEntry> entries;
  std::string origin;
};

/// `#` starts a comment. A `[result]` section is skipped so a manifest can be
/// fed back as a config.
RawConfig parse_config(const std::string& text, const std::string& origin = "<string>");
RawConfig load_config(const std::string& path);

struct KeySpec {
  std::string qualified;  // section.key
  std::string fallback;
  std::string help;
};

/// Schema defaults overridden by the raw entries; unknown keys throw a
/// configuration error naming the key.
class ResolvedConfig {
 public:
  ResolvedConfig(const RawConfig& raw, const std::vector<KeySpec>& schema);

  const std::string& str(const std::string& qualified) const;
  double num(const std::string& qualified) const;
  long integer(const std::string& qualified) const;
  bool flag(const std::string& qualified) const;
  std::vector<double> list(const std::string& qualified) const;
  bool given(const std::string& qualified) const;

  Reaction reaction(const std::string& qualified = "model.reaction") const;
  Boundary boundary(const std::string& qualified = "model.rho") const;

  /// Sectioned `key = value` text with every schema key, in schema order.
  std::string text() const;
  const std::vector<ConfigEntry>& entries() const { return entries_; }

 private:
  std::vector<ConfigEntry> entries_;
  std::vector<bool> given_;
  std::string origin_;
  std::size_t find(const std::string& qualified) const;
};

/// `cubic_bistable(theta=0.25)`, `kpp()`, `ignition(theta=0.3)`, `table(path=f.csv)`.
Reaction parse_reaction(const std::string& spec);
/// A number (0 is Dirichlet), or `neumann`.
Boundary parse_boundary(const std::string& spec);

}  // namespace frontlab

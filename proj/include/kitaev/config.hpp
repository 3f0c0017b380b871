#pragma once

#include <istream>
#include <map>
#include <stdexcept>
#include <string>

#include "kitaev/model.hpp"

namespace kitaev {

/// Parse or validation failure tied to one configuration key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat `key = value` document. Blank lines and `#` comments are skipped;
/// a repeated key is an error.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::string& path);

double parse_double(const std::string& key, const std::string& text);
long long parse_integer(const std::string& key, const std::string& text);
std::uint64_t parse_seed(const std::string& key, const std::string& text);
/// "inf" (or "nn") selects the nearest-neighbour limit.
PairingExponent parse_alpha(const std::string& key, const std::string& text);
/// "open", or "closed" / "antiperiodic".
Boundary parse_boundary(const std::string& key, const std::string& text);

/// Chain fields: L, J, Delta, alpha, boundary, potential.kind, potential.mu,
/// potential.V, potential.p, potential.q, potential.omega, potential.phi,
/// potential.seed. Missing keys keep the values of `base`. Keys outside this set
/// are left for the caller. Throws ConfigError naming the offending key.
ChainSpec chain_from_config(const KeyValues& kv, ChainSpec base = {});

/// Inverse of chain_from_config; round-trips exactly (17 significant digits).
std::string chain_to_config(const ChainSpec& chain);

std::string format_double(double v);
std::string format_alpha(PairingExponent a);

}  // namespace kitaev

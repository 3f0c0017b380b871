#include "kitaev/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace kitaev {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const KeyValues::mapped_type* find(const KeyValues& kv, const char* key) {
  const auto it = kv.find(key);
  return it == kv.end() ? nullptr : &it->second;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    if (!kv.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  return parse_key_values(in);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + text + "'");
  return v;
}

PairingExponent parse_alpha(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "nn" || t == "Inf" || t == "infinity") return PairingExponent::nearest_neighbor();
  const double a = parse_double(key, t);
  if (a < 0.0) throw ConfigError(key, "alpha must be >= 0 or 'inf'");
  return PairingExponent(a);
}

Boundary parse_boundary(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "open") return Boundary::Open;
  if (t == "closed" || t == "antiperiodic") return Boundary::ClosedAntiperiodic;
  throw ConfigError(key, "expected 'open' or 'closed', got '" + text + "'");
}

ChainSpec chain_from_config(const KeyValues& kv, ChainSpec base) {
  ChainSpec c = base;
  if (auto v = find(kv, "L")) {
    const long long L = parse_integer("L", *v);
    if (L < 2 || L > 1'000'000) throw ConfigError("L", "must be >= 2");
    c.L = static_cast<int>(L);
  }
  if (auto v = find(kv, "J")) c.J = parse_double("J", *v);
  if (auto v = find(kv, "Delta")) c.Delta = parse_double("Delta", *v);
  if (auto v = find(kv, "alpha")) c.alpha = parse_alpha("alpha", *v);
  if (auto v = find(kv, "boundary")) c.boundary = parse_boundary("boundary", *v);

  std::string kind = potential_kind(c.potential);
  if (auto v = find(kv, "potential.kind")) kind = trim(*v);
  double mu = potential_offset(c.potential);
  double V = potential_strength(c.potential);
  if (auto v = find(kv, "potential.mu")) mu = parse_double("potential.mu", *v);
  if (auto v = find(kv, "potential.V")) V = parse_double("potential.V", *v);

  // Keys that the selected potential does not have are mistakes, not no-ops.
  const std::map<std::string, std::vector<std::string>> used = {
      {"uniform", {}},
      {"harper", {"potential.V", "potential.p", "potential.q", "potential.phi"}},
      {"aubry-andre", {"potential.V", "potential.omega", "potential.phi"}},
      {"aa", {"potential.V", "potential.omega", "potential.phi"}},
      {"anderson", {"potential.V", "potential.seed"}}};
  if (const auto it = used.find(kind); it != used.end()) {
    for (const char* key : {"potential.V", "potential.p", "potential.q", "potential.omega",
                            "potential.phi", "potential.seed"}) {
      if (find(kv, key) && std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        throw ConfigError(key, "not a parameter of potential.kind = " + kind);
    }
  }

  if (kind == "uniform") {
    c.potential = UniformPotential{mu};
  } else if (kind == "harper") {
    HarperPotential h;
    if (auto* prev = std::get_if<HarperPotential>(&c.potential)) h = *prev;
    h.mu = mu;
    h.V = V;
    if (auto v = find(kv, "potential.p")) h.p = static_cast<int>(parse_integer("potential.p", *v));
    if (auto v = find(kv, "potential.q")) h.q = static_cast<int>(parse_integer("potential.q", *v));
    if (auto v = find(kv, "potential.phi")) h.phi = parse_double("potential.phi", *v);
    c.potential = h;
  } else if (kind == "aubry-andre" || kind == "aa") {
    AubryAndrePotential a;
    if (auto* prev = std::get_if<AubryAndrePotential>(&c.potential)) a = *prev;
    a.mu = mu;
    a.V = V;
    if (auto v = find(kv, "potential.omega")) a.omega = parse_double("potential.omega", *v);
    if (auto v = find(kv, "potential.phi")) a.phi = parse_double("potential.phi", *v);
    c.potential = a;
  } else if (kind == "anderson") {
    AndersonPotential a;
    if (auto* prev = std::get_if<AndersonPotential>(&c.potential)) a = *prev;
    a.mu = mu;
    a.V = V;
    if (auto v = find(kv, "potential.seed")) a.seed = parse_seed("potential.seed", *v);
    c.potential = a;
  } else {
    throw ConfigError("potential.kind",
                      "expected uniform, harper, aubry-andre or anderson, got '" + kind + "'");
  }

  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    std::string key = "potential";
    if (what.rfind("L ", 0) == 0) key = "L";
    else if (what.rfind("J ", 0) == 0) key = "J";
    else if (what.rfind("Delta", 0) == 0) key = "Delta";
    else if (what.rfind("alpha", 0) == 0) key = "alpha";
    else if (what.find("gcd") != std::string::npos || what.find("<= p") != std::string::npos)
      key = "potential.p";
    throw ConfigError(key, what);
  }
  return c;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_alpha(PairingExponent a) {
  return a.is_nearest_neighbor() ? "inf" : format_double(a.value());
}

std::string chain_to_config(const ChainSpec& c) {
  std::ostringstream out;
  out << "L = " << c.L << "\n";
  out << "J = " << format_double(c.J) << "\n";
  out << "Delta = " << format_double(c.Delta) << "\n";
  out << "alpha = " << format_alpha(c.alpha) << "\n";
  out << "boundary = " << boundary_name(c.boundary) << "\n";
  out << "potential.kind = " << potential_kind(c.potential) << "\n";
  out << "potential.mu = " << format_double(potential_offset(c.potential)) << "\n";
  if (auto* h = std::get_if<HarperPotential>(&c.potential)) {
    out << "potential.V = " << format_double(h->V) << "\n";
    out << "potential.p = " << h->p << "\n";
    out << "potential.q = " << h->q << "\n";
    out << "potential.phi = " << format_double(h->phi) << "\n";
  } else if (auto* a = std::get_if<AubryAndrePotential>(&c.potential)) {
    out << "potential.V = " << format_double(a->V) << "\n";
    out << "potential.omega = " << format_double(a->omega) << "\n";
    out << "potential.phi = " << format_double(a->phi) << "\n";
  } else if (auto* r = std::get_if<AndersonPotential>(&c.potential)) {
    out << "potential.V = " << format_double(r->V) << "\n";
    out << "potential.seed = " << r->seed << "\n";
  }
  return out.str();
}

}  // namespace kitaev

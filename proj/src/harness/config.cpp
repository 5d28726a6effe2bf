#include "dnsphere/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dnsphere/error.hpp"

namespace dnsphere {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// shortest representation that round-trips
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>)
      out += fmt(v[i]);
    else
      out += std::to_string(v[i]);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string choice(const std::string& key, const std::string& v,
                   const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string msg = "key '" + key + "': '" + v + "' is not one of";
    for (const auto& a : allowed) msg += " " + a;
    throw ConfigError(msg);
  }
  return v;
}

}  // namespace

std::vector<std::string> command_names() {
  return {"apply", "derivative_check", "radius", "tame", "norms", "witness"};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  return {{"command", command},
          {"dim", std::to_string(dim)},
          {"L", std::to_string(L)},
          {"N_r", std::to_string(N_r > 0 ? N_r : L + 8)},
          {"M", std::to_string(M)},
          {"M_cap", std::to_string(M_cap)},
          {"tol", fmt(tol)},
          {"method", method},
          {"s_grid", join(s_grid)},
          {"s0", fmt(s0)},
          {"delta", fmt(delta)},
          {"n_tan", std::to_string(n_tan)},
          {"box_factor", fmt(box_factor)},
          {"convention", convention},
          {"x_levels", join(x_levels)},
          {"samples", std::to_string(samples)},
          {"seed", std::to_string(seed)},
          {"h_family", h_family},
          {"h_amp", fmt(h_amp)},
          {"h_L", std::to_string(h_L)},
          {"h_norm_s", fmt(h_norm_s >= 0 ? h_norm_s : s0 + 1)},
          {"psi_family", psi_family},
          {"psi_mode", std::to_string(psi_mode)},
          {"psi_L", std::to_string(psi_L)},
          {"oracle", oracle},
          {"t_grid", join(t_grid)},
          {"amplitudes", join(amplitudes)},
          {"witness_samples", std::to_string(witness_samples)},
          {"seminorm_samples", std::to_string(seminorm_samples)}};
}

std::string RunConfig::resolved_text() const {
  std::string out;
  for (const auto& [k, v] : resolved()) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const { return fnv1a64(resolved_text()); }

std::string RunConfig::hash_hex() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

void apply_config_value(RunConfig& c, const std::string& key, const std::string& v) {
  auto dlist = [&] {
    std::vector<double> out;
    for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
  };
  auto i32 = [&] { return static_cast<int>(to_int(key, v)); };
  if (key == "command") c.command = choice(key, v, command_names());
  else if (key == "dim") c.dim = i32();
  else if (key == "L") c.L = i32();
  else if (key == "N_r") c.N_r = i32();
  else if (key == "M") c.M = i32();
  else if (key == "M_cap") c.M_cap = i32();
  else if (key == "tol") c.tol = to_double(key, v);
  else if (key == "method") c.method = choice(key, v, {"series", "fixed_point"});
  else if (key == "s_grid") c.s_grid = dlist();
  else if (key == "s0") c.s0 = to_double(key, v);
  else if (key == "delta") c.delta = to_double(key, v);
  else if (key == "n_tan") c.n_tan = i32();
  else if (key == "box_factor") c.box_factor = to_double(key, v);
  else if (key == "convention") c.convention = choice(key, v, {"ordinary", "angular"});
  else if (key == "x_levels") {
    c.x_levels.clear();
    for (const auto& s : split_list(v)) c.x_levels.push_back(static_cast<int>(to_int(key, s)));
  } else if (key == "samples") c.samples = i32();
  else if (key == "seed") {
    const long long s = to_int(key, v);
    if (s < 0) throw ConfigError("key 'seed': must be nonnegative");
    c.seed = static_cast<unsigned long long>(s);
  } else if (key == "threads") c.threads = i32();
  else if (key == "h_family")
    c.h_family = choice(key, v, {"zero", "constant", "cosine", "random", "translated"});
  else if (key == "h_amp") c.h_amp = to_double(key, v);
  else if (key == "h_L") c.h_L = i32();
  else if (key == "h_norm_s") c.h_norm_s = to_double(key, v);
  else if (key == "psi_family") c.psi_family = choice(key, v, {"random", "mode"});
  else if (key == "psi_mode") c.psi_mode = i32();
  else if (key == "psi_L") c.psi_L = i32();
  else if (key == "oracle")
    c.oracle = choice(key, v, {"none", "scaled_sphere", "translated_ball", "direct_galerkin"});
  else if (key == "t_grid") c.t_grid = dlist();
  else if (key == "amplitudes") c.amplitudes = dlist();
  else if (key == "witness_samples") c.witness_samples = i32();
  else if (key == "seminorm_samples") c.seminorm_samples = i32();
  else if (key == "out") c.out = v;
  else throw ConfigError("unknown key '" + key + "'");
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    apply_config_value(cfg, key, value);
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg;
  apply_config_text(cfg, ss.str());
  return cfg;
}

void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(c.dim == 2 || c.dim == 3, "dim must be 2 or 3");
  need(c.L >= 0, "L must be nonnegative");
  need(c.N_r == 0 || c.N_r >= c.L + 2, "N_r must be 0 or at least L + 2");
  need(c.M >= 0 && c.M_cap >= 1, "M must be >= 0 and M_cap >= 1");
  need(c.tol > 0, "tol must be positive");
  need(c.delta > 0 && c.delta < 0.125, "delta must lie in (0, 1/8)");
  need(c.n_tan >= 8 && c.n_tan % 2 == 0, "n_tan must be even and >= 8");
  need(c.box_factor > 1.0, "box_factor must exceed 1");
  need(c.samples >= 1, "samples must be >= 1");
  need(c.threads >= 1, "threads must be >= 1");
  need(c.h_amp >= 0, "h_amp must be nonnegative");
  need(c.h_L >= 0 && c.h_L <= c.L, "h_L must lie in [0, L]");
  need(c.psi_L >= 0 && c.psi_L <= c.L, "psi_L must lie in [0, L]");
  need(c.psi_mode >= 0, "psi_mode must be nonnegative");
  for (double t : c.t_grid) need(t > 0, "t_grid entries must be positive");
  for (double a : c.amplitudes) need(a >= 0, "amplitudes must be nonnegative");
  for (double s : c.s_grid) need(s >= 0, "s_grid entries must be nonnegative");
  for (int k : c.x_levels) need(k >= 0 && k < 30, "x_levels entries must lie in [0, 30)");
  need(c.witness_samples >= 2 && c.seminorm_samples >= 1, "witness sample counts too small");
  need(!c.out.empty(), "out must be nonempty");
}

}  // namespace dnsphere

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dnsphere {

// Flat key = value configuration. Unknown keys and malformed values raise
// ConfigError. Every field has a default so an empty file is a valid run.
struct RunConfig {
  std::string command = "apply";
  int dim = 2;
  int L = 16;
  int N_r = 0;  // 0: L + 8
  int M = 16;
  int M_cap = 16;
  double tol = 1e-12;
  std::string method = "series";  // series | fixed_point

  std::vector<double> s_grid{0.5, 1.0, 2.0, 3.0, 4.0};
  double s0 = 1.5;

  double delta = 0.1;
  int n_tan = 64;
  double box_factor = 1.5;
  std::string convention = "ordinary";  // ordinary | angular
  std::vector<int> x_levels{0, 1, 2};

  int samples = 1;
  unsigned long long seed = 1;
  int threads = 1;
  // zero | constant | cosine | random | translated
  std::string h_family = "random";
  double h_amp = 0.03;
  int h_L = 6;
  double h_norm_s = -1.0;  // Sobolev index of the amplitude; < 0: s0 + 1
  std::string psi_family = "random";  // random | mode
  int psi_mode = 2;
  int psi_L = 8;
  std::string oracle = "none";  // none | scaled_sphere | translated_ball | direct_galerkin

  std::vector<double> t_grid{1e-2, 1e-3};
  std::vector<double> amplitudes{0.04, 0.02};

  int witness_samples = 24;
  int seminorm_samples = 6;

  std::string out = "out";

  // Canonical key/value pairs in a fixed order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
  std::string resolved_text() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

std::vector<std::string> command_names();

// Applies key = value pairs to cfg. Lines starting with '#' are comments.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace dnsphere

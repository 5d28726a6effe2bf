#include "dnsphere/harness/random_fields.hpp"

#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/oracles/oracles.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 sample_rng(unsigned long long seed, int sample, int role) {
  const std::uint64_t k = splitmix(splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(sample)) ^
                                   static_cast<std::uint64_t>(role));
  return std::mt19937_64(k);
}

BoundaryField random_boundary_field(int dim, int L, double amp, double s, std::mt19937_64& rng,
                                    bool skip_constant) {
  std::normal_distribution<double> n01;
  BoundaryField f(dim, L);
  for (int i = skip_constant ? 1 : 0; i < f.size(); ++i)
    f[i] = n01(rng) / (1.0 + mode_eigenvalue(dim, i));
  const double nrm = sobolev_norm(f, s);
  if (nrm == 0.0) return f;
  f *= amp / nrm;
  return f;
}

BoundaryField constant_field(int dim, int L, double a) {
  BoundaryField f(dim, L);
  f[0] = a * std::sqrt(dim == 2 ? 2 * M_PI : 4 * M_PI);
  return f;
}

BoundaryField cosine_field(int dim, double a) {
  BoundaryField f(dim, 1);
  if (dim == 2)
    f[circle_index(1)] = a * std::sqrt(M_PI);
  else
    f[sphere_index(1, 0)] = a * std::sqrt(4 * M_PI / 3);
  return f;
}

BoundaryField single_mode(int dim, int L, int index) {
  BoundaryField f(dim, L);
  if (index < 0 || index >= f.size())
    throw ConfigError("mode index " + std::to_string(index) + " outside the band " +
                      std::to_string(L));
  f[index] = 1.0;
  return f;
}

SampleFields make_sample(const RunConfig& c, int i) {
  SampleFields f;
  const double hs = c.h_norm_s >= 0 ? c.h_norm_s : c.s0 + 1;
  auto rh = sample_rng(c.seed, i, 0);
  if (c.h_family == "zero")
    f.h = BoundaryField(c.dim, c.h_L);
  else if (c.h_family == "constant")
    f.h = constant_field(c.dim, c.h_L, c.h_amp);
  else if (c.h_family == "cosine")
    f.h = cosine_field(c.dim, c.h_amp).resized(std::max(1, c.h_L));
  else if (c.h_family == "translated")
    f.h = project_function(c.dim, c.h_L, [&](const Eigen::VectorXd& x) {
      return translated_ball_elevation(c.h_amp, x);
    });
  else
    f.h = random_boundary_field(c.dim, c.h_L, c.h_amp, hs, rh);
  auto re = sample_rng(c.seed, i, 1);
  f.eta = random_boundary_field(c.dim, f.h.L(), 1.0, 0.0, re);
  f.eta2 = random_boundary_field(c.dim, f.h.L(), 1.0, 0.0, re);
  if (c.psi_family == "mode") {
    f.psi = single_mode(c.dim, c.psi_L, c.psi_mode);
  } else {
    auto rp = sample_rng(c.seed, i, 2);
    f.psi = random_boundary_field(c.dim, c.psi_L, 1.0, 0.0, rp, false);
  }
  return f;
}

}  // namespace dnsphere

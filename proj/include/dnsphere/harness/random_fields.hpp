#pragma once

#include <cstdint>
#include <random>

#include "dnsphere/harness/config.hpp"
#include "dnsphere/spectral/boundary_field.hpp"

namespace dnsphere {

// Independent stream for (seed, sample, role); results do not depend on the
// order in which samples are evaluated.
std::mt19937_64 sample_rng(unsigned long long seed, int sample, int role);

// Gaussian coefficients damped by (1 + lambda)^{-1}, rescaled so that the
// H^s norm equals amp. The constant mode is left out when skip_constant.
BoundaryField random_boundary_field(int dim, int L, double amp, double s, std::mt19937_64& rng,
                                    bool skip_constant = true);

BoundaryField constant_field(int dim, int L, double a);
// a cos(theta) with theta the polar angle from e_1 (n = 2) or e_n (n = 3).
BoundaryField cosine_field(int dim, double a);
BoundaryField single_mode(int dim, int L, int index);

struct SampleFields {
  BoundaryField h, eta, eta2, psi;
};

// The configured h / psi families for sample i. eta and eta2 are random
// directions of unit H^{s} norm on the band of h.
SampleFields make_sample(const RunConfig& cfg, int i);

}  // namespace dnsphere

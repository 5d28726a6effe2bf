#pragma once

#include <string>
#include <vector>

namespace dnsphere {

struct WitnessRow {
  std::string inequality;
  std::string params;
  int samples = 0;          // size of the doubled set
  double max_ratio = 0.0;   // over all samples
  double max_ratio_half = 0.0;  // over the first half
  double bound = 0.0;       // exact bound when one is known, NaN otherwise
  bool finite = true;
  bool stable = true;
  bool pass = true;
};

struct WitnessOptions {
  int dim = 2;
  int samples = 24;           // N; each ratio is taken over N and 2N samples
  int seminorm_samples = 6;
  unsigned long long seed = 7;
  double stability = 0.25;
  double delta = 0.1;
  bool include_seminorm = true;
  // Evaluations spent refining the best start of each sample set, per row.
  int refine_budget = 40;
};

// Empirical constants for the Sobolev tool inequalities on R^n, R^n_+ and
// S^{n-1}, and for |u|_{X^{s,0}_k} against ||u||_{H^s(B_1)}.
std::vector<WitnessRow> inequality_witness_suite(const WitnessOptions& opt = {});

}  // namespace dnsphere

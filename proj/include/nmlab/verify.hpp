#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nmlab/measures.hpp"

// Executable checks of the framework's structural properties: closure of the
// free set, convexity, monotonicity, the D_T >= g bound, the robustness
// eigenvalue identity, and optimizer-vs-oracle agreement.  Shared by the
// `verify` CLI subcommand and the acceptance suite.

namespace nmlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // worst margin or counterexample description
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::string to_json() const;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  int trials = 100;          // randomized instances per proposition check
  int theorem1_random = 200; // random Kossakowski instances for the bound
  double t_max = 5.0;
  double dt = 0.01;
  int oracle_instances = 50;
  int oracle_restarts = 1000;
};

VerifyReport verify_propositions(const VerifyOptions& opt = {});
VerifyReport verify_theorem1(const VerifyOptions& opt = {});
VerifyReport verify_optimizer_oracle(const VerifyOptions& opt = {});
VerifyReport verify_all(const VerifyOptions& opt = {});

// Random test-instance generators (deterministic in the rng state).
class InstanceSampler {
 public:
  explicit InstanceSampler(std::uint64_t seed) : rng_(seed) {}

  CMatrix random_hermitian(int n, double scale = 1.0);
  CMatrix random_psd(int n, double scale = 1.0);
  CMatrix random_density(int n);
  // Choi derivative of a random (generally non-Markovian) qubit instant
  ChoiDerivative random_choi_derivative(int d, double scale = 1.0);
  // propagator of a random Markovian (PSD Kossakowski) generator
  Propagator random_markovian_propagator(int d, double duration = 0.3);
  // finite-eps Choi state of a random Markovian increment (exactly free)
  ChoiMatrix random_free_choi(int d, double eps = 1e-3);
  double uniform(double lo = 0.0, double hi = 1.0);

 private:
  std::mt19937_64 rng_;
};

}  // namespace nmlab

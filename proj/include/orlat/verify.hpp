#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orlat/kernel.hpp"

namespace orlat {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured quantity
  double bound = 0.0;  // tolerance / threshold it was held against
  std::string note;
};

struct VerifyParams {
  std::uint64_t seed = 1;
  std::int64_t arbitration_horizon = 4096;
  std::int64_t mc_paths = 100000;
  double abs_tol = 1e-9;
  // Testing hook: shifts the closed-form phi values the spectral suite
  // checks, to demonstrate the suite actually bites.
  double phi_perturbation = 0.0;
};

std::vector<CheckResult> verify_kernel(const VerifyParams& p);
std::vector<CheckResult> verify_oracle(const VerifyParams& p);
std::vector<CheckResult> verify_spectral(const VerifyParams& p);
std::vector<CheckResult> verify_mc(const VerifyParams& p);
std::vector<CheckResult> verify_martin(const VerifyParams& p);
std::vector<CheckResult> verify_all(const VerifyParams& p);

}  // namespace orlat

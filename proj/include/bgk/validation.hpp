#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bgk/spectral_function.hpp"

namespace bgk {

enum class ValidationLevel { Quick, Full };

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::Quick;
    // seeded-fault injection: perturb one Gamma coefficient by a relative
    // amount; the factorization and critical-number checks must then fail
    std::optional<int> mutateCoeff;
    double mutateRel = 1e-3;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool allPassed;
    std::string json() const;
};

ValidationReport run_validation(const ValidationOptions& opt = {});

/// The two mutation-sensitive checks in isolation (shared with the
/// acceptance suite's mutation criterion).
bool check_critical_numbers(const GammaCoeffs& coeffs, std::string& detail);
bool check_factorization(const GammaCoeffs& coeffs, int pointsPerCombo,
                         bool allCombos, std::string& detail);

}  // namespace bgk

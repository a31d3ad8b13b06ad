#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vortexsphere::checks {

struct CheckResult {
  std::string name;
  std::string section;
  bool pass = false;
  std::string detail;  // measured residual summary, e.g. "max |entry| 3.2e-16"
};

// Section names in report order: tables, roots, residuals, lemmas, conjugacy,
// momentum, regularization, families, completeness, symmetry.
const std::vector<std::string>& section_names();

// Height tables for n = 2..5 against their closed forms and decimal entries.
std::vector<CheckResult> check_tables();
// alpha, alpha-hat, and the derived edge distances.
std::vector<CheckResult> check_tetrahedral_roots();
// Full-space vector field at every embedded non-collision catalog record, and
// at the five platonic solids.
std::vector<CheckResult> check_equilibrium_residuals();
// Group element sums, the prism angle identity, and the symplectic pullback.
std::vector<CheckResult> check_lemmas(std::uint64_t seed);
// Full trajectory from an embedded point vs the embedded reduced trajectory.
std::vector<CheckResult> check_conjugacy(std::uint64_t seed);
// Momentum of embedded configurations vanishes.
std::vector<CheckResult> check_momentum(std::uint64_t seed);
// Time rescaling between the reduced and regularized flows, exp(-2h)
// consistency, and exact vanishing on the collision set.
std::vector<CheckResult> check_regularization();
// Energy families around stable centers close; collision families have
// strictly decreasing periods; lifted orbits conserve H and J.
std::vector<CheckResult> check_families();
// Dense grid search finds no critical point beyond the catalog.
std::vector<CheckResult> check_completeness();
// Trajectory sets are equivariant under the observed supergroups.
std::vector<CheckResult> check_symmetry();

// Every section in order.  jobs > 1 runs sections on a worker pool; results
// are merged in section order regardless of completion order.
std::vector<CheckResult> run_all(std::uint64_t seed, int jobs = 1);
// One section by name; unknown names raise ConfigError.
std::vector<CheckResult> run_section(const std::string& section, std::uint64_t seed);

bool all_pass(const std::vector<CheckResult>& results);
// "name: PASS (detail)" lines.
std::string report_text(const std::vector<CheckResult>& results);
std::string report_json(const std::vector<CheckResult>& results);

}  // namespace vortexsphere::checks

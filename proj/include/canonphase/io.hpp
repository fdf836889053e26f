#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "canonphase/measurement.hpp"
#include "canonphase/multiport.hpp"
#include "canonphase/oracle.hpp"

namespace canonphase {

/// One line per row, each entry as `re,im` with shortest round-trip reals.
std::string matrix_csv(const UnitaryMatrix& u);

/// `m,theta_m,probability` rows, then `success_probability,<p>` and, when
/// given, `max_abs_diff,<d>`.
std::string distribution_csv(const RetainedDistribution& dist,
                             std::optional<double> max_abs_diff = std::nullopt);

/// `m,theta_m,count,frequency` rows, then `discarded,<count>` and `seed,<seed>`.
/// Frequencies are relative to retained shots.
std::string histogram_csv(const Histogram& hist);

/// `N,sup_distance` rows.
std::string convergence_csv(std::span<const ConvergenceRow> rows);

// Format checks used by `--check`; each throws InvalidFormat on violation.
void validate_matrix_csv(std::string_view text);
void validate_distribution_csv(std::string_view text);
void validate_histogram_csv(std::string_view text);
void validate_convergence_csv(std::string_view text);
void validate_netlist_text(std::string_view text);

std::string read_file(const std::string& path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace canonphase

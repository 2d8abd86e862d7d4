#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "diamond/bounds.hpp"
#include "diamond/core_model.hpp"

namespace diamond {

/// How the sweep ties the two link capacities together.
enum class SweepTie { C1equalsC2 };

/// A sweep over the common link capacity C: the base configuration's c1 and
/// c2 are both replaced by C = c_min, c_min + step, ..., <= c_max.
struct SweepSpec {
  ChannelConfig base;
  double c_min = 0.0;
  double c_max = 0.0;
  double step = 0.0;
  SweepTie tie = SweepTie::C1equalsC2;

  /// Throws std::invalid_argument unless base is valid, 0 <= c_min <= c_max,
  /// and step > 0.
  void validate() const;
};

/// One sweep result row.
struct SweepRow {
  double c = 0.0;
  double simple_cutset = 0.0;
  double cutset_102 = 0.0;
  double bound_101_a = 0.0;
  double bound_101_b = 0.0;
  double theorem1 = 0.0;
  double argmax_rho_102 = 0.0;
  double argmax_rho_101_a = 0.0;
  double argmax_rho_101_b = 0.0;
};

/// The exact CSV header line (no newline).
extern const char kCsvHeader[];

/// All bounds at one configuration. Deterministic; identical across runs.
BoundReport eval_point(const ChannelConfig& cfg,
                       const OptimizerOptions& opts = {});

/// Evaluate the sweep, reusing one sum-capacity cache across all rows (the
/// covariance subproblem does not depend on the link capacities). Rows are
/// ordered by C.
std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                const OptimizerOptions& opts = {});

/// Format one value exactly as the CSV writer does: fixed six decimals,
/// with negative values that would print as "-0.000000" normalized to zero.
std::string format_csv_value(double v);

/// One CSV data row (no newline) in the header's column order.
std::string format_csv_row(const SweepRow& row);

/// Write header plus rows. Each row's ordering invariant
/// (theorem1 <= cutset_102 <= simple_cutset, slack 1e-6) is re-checked at
/// emit time; a violation throws InvariantViolation since it would indicate
/// an optimizer bug. UTF-8, LF line endings. I/O failure throws
/// std::runtime_error.
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Parse rows from a CSV stream previously produced by write_csv. Throws
/// std::invalid_argument on a schema mismatch (wrong header or malformed
/// row).
std::vector<SweepRow> read_csv(std::istream& in);
std::vector<SweepRow> read_csv_file(const std::string& path);

/// Human-readable multi-line report of one configuration's bounds.
std::string format_report_text(const ChannelConfig& cfg,
                               const BoundReport& report);

/// Generate a self-contained gnuplot script that draws simple_cutset,
/// cutset_102 and theorem1 versus C from the CSV at csv_path, writing the
/// script to out_path and returning its text. The rendered image lands next
/// to the script (out_path with a .png extension). The CSV header is
/// validated against the documented schema and each data row must have the
/// right number of columns; a header-only CSV is accepted (the script then
/// plots nothing). Schema mismatch throws std::invalid_argument; I/O
/// failure throws std::runtime_error.
std::string emit_plot_script(const std::string& csv_path,
                             const std::string& out_path);

}  // namespace diamond

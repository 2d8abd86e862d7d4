#include "diamond/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "diamond/mimo_bc.hpp"

namespace diamond {

const char kCsvHeader[] =
    "C,simple_cutset,cutset_102,theorem1,bound_101_a,bound_101_b,"
    "argmax_rho_102,argmax_rho_101_a,argmax_rho_101_b";

void SweepSpec::validate() const {
  base.validate();
  if (!(c_min >= 0.0) || !(c_max >= c_min)) {
    throw std::invalid_argument("sweep requires 0 <= c_min <= c_max");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("sweep requires step > 0");
  }
}

BoundReport eval_point(const ChannelConfig& cfg, const OptimizerOptions& opts) {
  return theorem1_bound(cfg, opts);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                const OptimizerOptions& opts) {
  spec.validate();
  opts.validate();

  // The covariance subproblem depends only on the gains and powers, so one
  // cache serves every row of the sweep.
  SumCapacityCache cm(spec.base, opts);

  std::vector<SweepRow> rows;
  for (int k = 0;; ++k) {
    double c = spec.c_min + k * spec.step;
    if (c > spec.c_max + spec.step * 1e-9) break;
    if (c > spec.c_max) c = spec.c_max;

    ChannelConfig cfg = spec.base;
    cfg.c1 = c;
    cfg.c2 = c;
    const BoundReport rep = theorem1_bound(cfg, opts, cm);

    SweepRow row;
    row.c = c;
    row.simple_cutset = rep.simple_cutset;
    row.cutset_102 = rep.cutset_102;
    row.bound_101_a = rep.bound_101_a;
    row.bound_101_b = rep.bound_101_b;
    row.theorem1 = rep.theorem1;
    row.argmax_rho_102 = rep.argmax_rho_102;
    row.argmax_rho_101_a = rep.argmax_rho_101_a;
    row.argmax_rho_101_b = rep.argmax_rho_101_b;
    rows.push_back(row);
  }
  return rows;
}

std::string format_csv_value(double v) {
  // Values that would render as "-0.000000" are normalized to zero.
  if (v > -5e-7 && v <= 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string format_csv_row(const SweepRow& row) {
  std::string out = format_csv_value(row.c);
  for (double v : {row.simple_cutset, row.cutset_102, row.theorem1,
                   row.bound_101_a, row.bound_101_b, row.argmax_rho_102,
                   row.argmax_rho_101_a, row.argmax_rho_101_b}) {
    out += ',';
    out += format_csv_value(v);
  }
  return out;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    // Re-check the row ordering invariant at emit time; a violation here
    // indicates an optimizer bug, not bad user input.
    if (!(row.theorem1 <= row.cutset_102 + 1e-6) ||
        !(row.cutset_102 <= row.simple_cutset + 1e-6)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "row ordering violated at C=" << row.c
          << ": theorem1=" << row.theorem1 << " cutset_102=" << row.cutset_102
          << " simple_cutset=" << row.simple_cutset;
      throw InvariantViolation(msg.str());
    }
    out << format_csv_row(row) << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed to write CSV stream");
  }
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  write_csv(rows, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed to write CSV file: " + path);
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kCsvHeader) {
    throw std::invalid_argument("CSV schema mismatch: bad or missing header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 9) {
      throw std::invalid_argument(
          "CSV schema mismatch: expected 9 columns, got " +
          std::to_string(fields.size()));
    }
    double v[9];
    for (int i = 0; i < 9; ++i) {
      try {
        size_t pos = 0;
        v[i] = std::stod(fields[i], &pos);
        if (pos != fields[i].size()) {
          throw std::invalid_argument("trailing characters");
        }
      } catch (const std::exception&) {
        throw std::invalid_argument("CSV schema mismatch: bad number '" +
                                    fields[i] + "'");
      }
    }
    SweepRow row;
    row.c = v[0];
    row.simple_cutset = v[1];
    row.cutset_102 = v[2];
    row.theorem1 = v[3];
    row.bound_101_a = v[4];
    row.bound_101_b = v[5];
    row.argmax_rho_102 = v[6];
    row.argmax_rho_101_a = v[7];
    row.argmax_rho_101_b = v[8];
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  return read_csv(in);
}

std::string format_report_text(const ChannelConfig& cfg,
                               const BoundReport& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "channel: a=%g b=%g P1=%g P2=%g C1=%g C2=%g\n", cfg.a, cfg.b,
                cfg.p1, cfg.p2, cfg.c1, cfg.c2);
  out << buf;
  std::snprintf(buf, sizeof(buf), "simple_cutset: %.6f\n",
                report.simple_cutset);
  out << buf;
  std::snprintf(buf, sizeof(buf), "cutset_102:    %.6f  (argmax rho %+.6f)\n",
                report.cutset_102, static_cast<double>(report.argmax_rho_102));
  out << buf;
  std::snprintf(buf, sizeof(buf), "bound_101_a:   %.6f  (argmax rho %+.6f)\n",
                report.bound_101_a,
                static_cast<double>(report.argmax_rho_101_a));
  out << buf;
  std::snprintf(buf, sizeof(buf), "bound_101_b:   %.6f  (argmax rho %+.6f)\n",
                report.bound_101_b,
                static_cast<double>(report.argmax_rho_101_b));
  out << buf;
  std::snprintf(buf, sizeof(buf), "theorem1:      %.6f\n", report.theorem1);
  out << buf;
  return out.str();
}

std::string emit_plot_script(const std::string& csv_path,
                             const std::string& out_path) {
  // Validates the schema (header and row shape); a header-only file is fine.
  (void)read_csv_file(csv_path);

  const std::string png =
      std::filesystem::path(out_path).replace_extension(".png").string();

  std::ostringstream script;
  script << "# gnuplot script: sum-rate upper bounds versus the common link"
            " capacity C\n"
         << "# render with:  gnuplot " << out_path << "\n"
         << "set datafile separator ','\n"
         << "set terminal pngcairo size 900,600 noenhanced\n"
         << "set output '" << png << "'\n"
         << "set key left top\n"
         << "set xlabel 'C (bits)'\n"
         << "set ylabel 'sum-rate upper bound (bits)'\n"
         << "set grid\n"
         << "plot '" << csv_path
         << "' skip 1 using 1:2 with lines lw 2 title 'simple_cutset', \\\n"
         << "     '' skip 1 using 1:3 with lines lw 2 title 'cutset_102', \\\n"
         << "     '' skip 1 using 1:4 with lines lw 2 title 'theorem1'\n";
  const std::string text = script.str();

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + out_path);
  }
  out << text;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed to write plot script: " + out_path);
  }
  return text;
}

}  // namespace diamond

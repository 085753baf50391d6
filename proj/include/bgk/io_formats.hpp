#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgk/mode_tracer.hpp"

namespace bgk {

/// Full round-trip precision (17 significant digits), '.' decimal separator.
std::string format_number(double v);

/// RFC-4180 rows with a mandatory header; numbers already formatted.
std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

struct ArgGrid {
    double reMin, reMax, imMin, imMax;  // lambda-plane window
    int nx, ny;
};

/// arg(full_determinant(z(lambda))) over the grid, row-major with the top
/// row at max Im lambda. Rows are evaluated in parallel; values are
/// deterministic per pixel. With gammaOnly the shear factor is dropped.
std::vector<double> argplot_values(const SpectralParams& p, const ArgGrid& grid,
                                   bool gammaOnly = false);

/// 8-bit PGM "P5" (maxval 255) with arg mapped linearly from (-pi, pi] to
/// 0..255; byte-deterministic for a fixed configuration.
std::vector<std::uint8_t> pgm_bytes(const std::vector<double>& args, int nx, int ny);

/// CSV with columns lambda_re, lambda_im, arg.
std::string argplot_csv(const ArgGrid& grid, const std::vector<double>& args);

/// CSV for branch traces: mode,k,lambda_re,lambda_im,residual,k_crit_estimate
/// (the last column is filled only on the final row of a mode).
std::string trace_csv(const std::vector<ModeBranch>& branches);

std::string spectrum_json(const SpectrumResult& result);
std::string crit_json(double tau);

void write_file(const std::string& path, const std::string& text);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace bgk

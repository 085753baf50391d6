#include "bgk/io_formats.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bgk/errors.hpp"
#include "bgk/parallel.hpp"

namespace bgk {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << "\r\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << "\r\n";
    }
    return out.str();
}

std::vector<double> argplot_values(const SpectralParams& p, const ArgGrid& grid,
                                   bool gammaOnly) {
    if (grid.nx < 1 || grid.ny < 1 || grid.nx > 8192 || grid.ny > 8192)
        throw domain_error("argplot: grid dimensions must be in [1, 8192]");
    if (static_cast<long long>(grid.nx) * grid.ny > (1LL << 26))
        throw domain_error("argplot: nx*ny exceeds 2^26");
    std::vector<double> vals(static_cast<size_t>(grid.nx) * grid.ny);
    parallel_for(grid.ny, [&](int row) {
        // top row carries max Im lambda
        double im = grid.ny == 1 ? grid.imMax
                                 : grid.imMax - (grid.imMax - grid.imMin) * row / (grid.ny - 1.0);
        for (int col = 0; col < grid.nx; ++col) {
            double re = grid.nx == 1 ? grid.reMin
                                     : grid.reMin + (grid.reMax - grid.reMin) * col / (grid.nx - 1.0);
            cplx lambda(re, im);
            MappedPoint m = map_point(lambda, p);
            cplx v = gammaOnly ? gamma(m.zeta, p) : full_determinant(m.z, p);
            vals[static_cast<size_t>(row) * grid.nx + col] = std::arg(v);
        }
    });
    return vals;
}

std::vector<std::uint8_t> pgm_bytes(const std::vector<double>& args, int nx, int ny) {
    std::ostringstream head;
    head << "P5\n" << nx << " " << ny << "\n255\n";
    std::string h = head.str();
    std::vector<std::uint8_t> out(h.begin(), h.end());
    out.reserve(out.size() + args.size());
    for (double a : args) {
        // (-pi, pi] -> 0..255
        double u = (a + PI) / (2.0 * PI);
        int v = static_cast<int>(std::floor(u * 256.0));
        if (v > 255) v = 255;
        if (v < 0) v = 0;
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

std::string argplot_csv(const ArgGrid& grid, const std::vector<double>& args) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(args.size());
    for (int row = 0; row < grid.ny; ++row) {
        double im = grid.ny == 1 ? grid.imMax
                                 : grid.imMax - (grid.imMax - grid.imMin) * row / (grid.ny - 1.0);
        for (int col = 0; col < grid.nx; ++col) {
            double re = grid.nx == 1 ? grid.reMin
                                     : grid.reMin + (grid.reMax - grid.reMin) * col / (grid.nx - 1.0);
            rows.push_back({format_number(re), format_number(im),
                            format_number(args[static_cast<size_t>(row) * grid.nx + col])});
        }
    }
    return csv_document({"lambda_re", "lambda_im", "arg"}, rows);
}

std::string trace_csv(const std::vector<ModeBranch>& branches) {
    std::vector<std::vector<std::string>> rows;
    for (const ModeBranch& b : branches) {
        for (size_t i = 0; i < b.samples.size(); ++i) {
            const BranchSample& s = b.samples[i];
            std::string kc;
            if (i + 1 == b.samples.size() && b.kCritEstimate)
                kc = format_number(*b.kCritEstimate);
            rows.push_back({mode_name(b.kind), format_number(s.k),
                            format_number(s.lambda.real()), format_number(s.lambda.imag()),
                            format_number(s.residual), kc});
        }
    }
    return csv_document({"mode", "k", "lambda_re", "lambda_im", "residual", "k_crit_estimate"},
                        rows);
}

std::string spectrum_json(const SpectrumResult& result) {
    nlohmann::json j;
    j["tau"] = result.params.tau;
    j["k"] = result.params.k;
    j["essential_line_re"] = result.essentialLine;
    j["winding_total"] = result.windingTotal;
    j["eigenvalues"] = nlohmann::json::array();
    for (const EigenvalueEntry& e : result.eigenvalues) {
        nlohmann::json item;
        item["re"] = e.lambda.real();
        item["im"] = e.lambda.imag();
        item["multiplicity"] = e.multiplicity;
        item["kind"] = e.kind ? mode_name(*e.kind) : "degenerate";
        item["residual"] = e.residual;
        j["eigenvalues"].push_back(item);
    }
    return j.dump(2);
}

std::string crit_json(double tau) {
    AcousticCritical ac = crit_acoustic(tau);
    nlohmann::json j;
    j["tau"] = tau;
    j["shear"] = crit_shear(tau);
    j["diffusion"] = crit_diffusion(tau);
    j["acoustic"] = ac.kCrit;
    j["x_merge"] = ac.xMerge;
    return j.dump(2);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace bgk

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tvgs/sampling_planner.hpp"

namespace tvgs {

// ---------------------------------------------------------------------------
// Dense matrix containers
//
// CSV: optional "# key=value" header lines, then one matrix row per line,
// comma separated. Complex cells are written "re+imj" / "re-imj"; plain real
// cells are accepted on input.
//
// Binary (little-endian):
//   bytes 0-3   magic "TVGS"
//   u16         version (1)
//   u16         kind (MatrixKind)
//   u64 rows, u64 cols
//   rows*cols   (f64 re, f64 im) pairs, row-major
// ---------------------------------------------------------------------------

enum class MatrixKind : std::uint16_t { Signal = 0, Spectrum = 1, Weights = 2, Support = 3 };
enum class FileFormat { Csv, Binary };

std::string_view to_string(MatrixKind kind) noexcept;

struct StoredMatrix {
  ComplexMatrix values;
  MatrixKind kind = MatrixKind::Signal;
};

void write_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m, MatrixKind kind);
void write_matrix_binary(const std::filesystem::path& path, const ComplexMatrix& m, MatrixKind kind);
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m, MatrixKind kind,
                  FileFormat format);
/// Reads either container; the format is detected from the magic bytes.
StoredMatrix read_matrix(const std::filesystem::path& path);

/// One CSV cell, "re+imj" or plain real.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

/// Weight matrix (real part of a stored matrix) -> Graph.
Graph load_graph(const std::filesystem::path& path);

/// Support mask as a 0/1 CSV tagged kind=support. Reading also accepts a
/// spectrum file, whose support is computed with `eps_rel`.
void write_support(const std::filesystem::path& path, const SpectralSupport& supp);
SpectralSupport read_support(const std::filesystem::path& path,
                             double eps_rel = default_policy().support_eps_rel);

// ---------------------------------------------------------------------------
// Plans and sample sets, as JSON documents with 1-based indices.
// ---------------------------------------------------------------------------

inline constexpr int kPlanVersion = 1;

nlohmann::json plan_to_json(const SamplingPlan& p);
SamplingPlan plan_from_json(const nlohmann::json& doc);
void save_plan(const std::filesystem::path& path, const SamplingPlan& p);
SamplingPlan load_plan(const std::filesystem::path& path);

nlohmann::json samples_to_json(const SampleSet& s);
SampleSet samples_from_json(const nlohmann::json& doc);
void save_samples(const std::filesystem::path& path, const SampleSet& s);
SampleSet load_samples(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Dataset ingestion
// ---------------------------------------------------------------------------

struct CsvOptions {
  char delimiter = ',';
};

/// Rows are vertices, columns timesteps. A first row that does not parse as
/// numbers is treated as a header and skipped.
RealMatrix load_timeseries_csv(const std::filesystem::path& path, const CsvOptions& options = {});
RealMatrix parse_timeseries_csv(std::string_view text, const CsvOptions& options = {});

/// w(i, j) = |pearson(row_i, row_j)| when >= threshold, else 0. Zero-variance
/// rows get no edges.
Graph correlation_graph(const RealMatrix& data, double threshold = 0.0);

/// (A + A^T) / 2 with zero diagonal.
RealMatrix symmetrize_directed(const RealMatrix& a);

/// Windows data(:, s*stride : s*stride + t_len); a trailing partial window is dropped.
std::vector<RealMatrix> window(const RealMatrix& data, Index t_len, Index stride);

}  // namespace tvgs

#include "tvgs/signal_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tvgs/error.hpp"

namespace tvgs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'T', 'V', 'G', 'S'};
constexpr std::uint16_t kBinaryVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "binary container I/O assumes a little-endian host");

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find('\n', start);
    const auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                        : pos - start);
    lines.push_back(line);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return lines;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

MatrixKind kind_from_string(std::string_view s) {
  if (s == "signal") return MatrixKind::Signal;
  if (s == "spectrum") return MatrixKind::Spectrum;
  if (s == "weights") return MatrixKind::Weights;
  if (s == "support") return MatrixKind::Support;
  throw Error(ErrorCode::Parse, "unknown matrix kind '" + std::string(s) + "'");
}

StoredMatrix parse_matrix_csv(const std::string& text, const fs::path& path) {
  StoredMatrix out;
  std::vector<std::vector<Complex>> rows;
  for (auto raw : lines_of(text)) {
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.rfind("kind=", 0) == 0) out.kind = kind_from_string(trim(body.substr(5)));
      continue;
    }
    std::vector<Complex> row;
    for (auto cell : split(line, ',')) row.push_back(parse_complex(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::RaggedRows, path.string() + ": row " + std::to_string(rows.size() + 1) +
                                             " has " + std::to_string(row.size()) + " cells");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::Empty, path.string() + " holds no matrix rows");
  out.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      out.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
  }
  return out;
}

template <typename T>
void put(std::string& bytes, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  bytes.append(buf, sizeof(T));
}

template <typename T>
T take(const std::string& bytes, std::size_t& offset, const fs::path& path) {
  if (offset + sizeof(T) > bytes.size()) {
    throw Error(ErrorCode::Parse, path.string() + ": truncated binary container");
  }
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  offset += sizeof(T);
  return value;
}

StoredMatrix parse_matrix_binary(const std::string& bytes, const fs::path& path) {
  std::size_t offset = 4;
  const auto version = take<std::uint16_t>(bytes, offset, path);
  if (version != kBinaryVersion) {
    throw Error(ErrorCode::Parse, path.string() + ": unsupported container version " +
                                      std::to_string(version));
  }
  StoredMatrix out;
  const auto kind = take<std::uint16_t>(bytes, offset, path);
  if (kind > static_cast<std::uint16_t>(MatrixKind::Support)) {
    throw Error(ErrorCode::Parse, path.string() + ": unknown matrix kind");
  }
  out.kind = static_cast<MatrixKind>(kind);
  const auto rows = take<std::uint64_t>(bytes, offset, path);
  const auto cols = take<std::uint64_t>(bytes, offset, path);
  if (rows * cols * 16 != bytes.size() - offset) {
    throw Error(ErrorCode::Parse, path.string() + ": payload size does not match dimensions");
  }
  out.values.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index r = 0; r < out.values.rows(); ++r) {
    for (Index c = 0; c < out.values.cols(); ++c) {
      const double re = take<double>(bytes, offset, path);
      const double im = take<double>(bytes, offset, path);
      out.values(r, c) = Complex(re, im);
    }
  }
  return out;
}

json index_list(const IndexSet& s) {
  json out = json::array();
  for (Index v : s) out.push_back(v + 1);
  return out;
}

IndexSet index_list_from(const json& j, Index limit, const char* what) {
  IndexSet out;
  for (const auto& v : j) {
    const Index one_based = v.get<Index>();
    if (one_based < 1 || one_based > limit) {
      throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " index " +
                                                  std::to_string(one_based) + " out of range");
    }
    out.push_back(one_based - 1);
  }
  return sorted_unique(std::move(out));
}

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::Signal: return "signal";
    case MatrixKind::Spectrum: return "spectrum";
    case MatrixKind::Weights: return "weights";
    case MatrixKind::Support: return "support";
  }
  return "signal";
}

Complex parse_complex(std::string_view text) {
  const auto s = trim(text);
  double re = 0.0;
  if (parse_double(s, re)) {
    if (std::isnan(re)) throw Error(ErrorCode::NonNumeric, "NaN cell");
    return {re, 0.0};
  }
  if (!s.empty() && (s.back() == 'j' || s.back() == 'i')) {
    const auto body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading sign.
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        double im = 0.0;
        const auto im_text = body.substr(k);
        if (parse_double(body.substr(0, k), re) &&
            (parse_double(im_text, im) || im_text == "+" || im_text == "-")) {
          if (im_text == "+") im = 1.0;
          if (im_text == "-") im = -1.0;
          if (std::isnan(re) || std::isnan(im)) throw Error(ErrorCode::NonNumeric, "NaN cell");
          return {re, im};
        }
        break;
      }
    }
    double im = 0.0;
    if (parse_double(body, im)) return {0.0, im};
  }
  throw Error(ErrorCode::NonNumeric, "cannot parse '" + std::string(s) + "' as a number");
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  out += std::signbit(z.imag()) ? "-" : "+";
  out += format_double(std::abs(z.imag()));
  out += "j";
  return out;
}

void write_matrix_csv(const fs::path& path, const ComplexMatrix& m, MatrixKind kind) {
  std::string text = "# kind=" + std::string(to_string(kind)) + "\n";
  const bool real_cells = kind == MatrixKind::Weights || kind == MatrixKind::Support;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) text += ',';
      text += real_cells ? format_double(m(r, c).real()) : format_complex(m(r, c));
    }
    text += '\n';
  }
  write_file(path, text);
}

void write_matrix_binary(const fs::path& path, const ComplexMatrix& m, MatrixKind kind) {
  std::string bytes(kMagic, 4);
  put<std::uint16_t>(bytes, kBinaryVersion);
  put<std::uint16_t>(bytes, static_cast<std::uint16_t>(kind));
  put<std::uint64_t>(bytes, static_cast<std::uint64_t>(m.rows()));
  put<std::uint64_t>(bytes, static_cast<std::uint64_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      put<double>(bytes, m(r, c).real());
      put<double>(bytes, m(r, c).imag());
    }
  }
  write_file(path, bytes);
}

void write_matrix(const fs::path& path, const ComplexMatrix& m, MatrixKind kind, FileFormat format) {
  if (format == FileFormat::Binary) {
    write_matrix_binary(path, m, kind);
  } else {
    write_matrix_csv(path, m, kind);
  }
}

StoredMatrix read_matrix(const fs::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
    return parse_matrix_binary(bytes, path);
  }
  return parse_matrix_csv(bytes, path);
}

Graph load_graph(const fs::path& path) {
  const StoredMatrix m = read_matrix(path);
  return build_graph(m.values.real());
}

void write_support(const fs::path& path, const SpectralSupport& supp) {
  write_matrix_csv(path, supp.mask().cast<double>().cast<Complex>(), MatrixKind::Support);
}

SpectralSupport read_support(const fs::path& path, double eps_rel) {
  const StoredMatrix m = read_matrix(path);
  if (m.kind == MatrixKind::Spectrum) return support_of(JointSpectrum{m.values}, eps_rel);
  if (m.kind != MatrixKind::Support) {
    throw Error(ErrorCode::Parse, path.string() + ": expected a support mask or a spectrum");
  }
  BoolMatrix mask(m.values.rows(), m.values.cols());
  for (Index r = 0; r < mask.rows(); ++r) {
    for (Index c = 0; c < mask.cols(); ++c) {
      const Complex v = m.values(r, c);
      if (v != Complex(0.0) && v != Complex(1.0)) {
        throw Error(ErrorCode::Parse, path.string() + ": support cells must be 0 or 1");
      }
      mask(r, c) = v == Complex(1.0);
    }
  }
  return SpectralSupport(std::move(mask));
}

json plan_to_json(const SamplingPlan& p) {
  json bands = json::array();
  for (const auto& band : p.bands) {
    bands.push_back({{"rows", index_list(band.rows)},
                     {"cols", index_list(band.cols)},
                     {"vertices", index_list(band.vertices)},
                     {"times", index_list(band.times)}});
  }
  return {{"plan_version", kPlanVersion},
          {"N", p.n_vertices},
          {"T", p.period},
          {"vertex_candidates", index_list(p.vertex_candidates)},
          {"vertices_used", index_list(p.vertices_used)},
          {"bands", bands},
          {"total_samples", p.total_samples},
          {"ratio", format_ratio(p.ratio())}};
}

SamplingPlan plan_from_json(const json& doc) {
  try {
    if (doc.at("plan_version").get<int>() != kPlanVersion) {
      throw Error(ErrorCode::Parse, "unsupported plan_version");
    }
    SamplingPlan p;
    p.n_vertices = doc.at("N").get<Index>();
    p.period = doc.at("T").get<Index>();
    p.vertex_candidates = index_list_from(doc.at("vertex_candidates"), p.n_vertices, "vertex");
    p.vertices_used = index_list_from(doc.at("vertices_used"), p.n_vertices, "vertex");
    for (const auto& b : doc.at("bands")) {
      SubBand band;
      band.rows = index_list_from(b.at("rows"), p.n_vertices, "row");
      band.cols = index_list_from(b.at("cols"), p.period, "col");
      band.vertices = index_list_from(b.at("vertices"), p.n_vertices, "vertex");
      band.times = index_list_from(b.at("times"), p.period, "time");
      p.bands.push_back(std::move(band));
    }
    p.total_samples = doc.at("total_samples").get<Index>();
    Index counted = 0;
    for (const auto& band : p.bands) counted += band.sample_count();
    if (counted != p.total_samples) throw Error(ErrorCode::Parse, "total_samples disagrees with bands");
    if (doc.contains("ratio") && doc.at("ratio").get<std::string>() != format_ratio(p.ratio())) {
      throw Error(ErrorCode::Parse, "ratio disagrees with total_samples");
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("plan document: ") + e.what());
  }
}

void save_plan(const fs::path& path, const SamplingPlan& p) {
  write_file(path, plan_to_json(p).dump(2) + "\n");
}

SamplingPlan load_plan(const fs::path& path) { return plan_from_json(parse_json_file(path)); }

json samples_to_json(const SampleSet& s) {
  json bands = json::array();
  for (const auto& y : s.bands) {
    json re = json::array();
    json im = json::array();
    for (Index r = 0; r < y.rows(); ++r) {
      json re_row = json::array();
      json im_row = json::array();
      for (Index c = 0; c < y.cols(); ++c) {
        re_row.push_back(y(r, c).real());
        im_row.push_back(y(r, c).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    bands.push_back({{"rows", y.rows()}, {"cols", y.cols()}, {"re", re}, {"im", im}});
  }
  return {{"samples_version", 1}, {"bands", bands}};
}

SampleSet samples_from_json(const json& doc) {
  try {
    SampleSet s;
    for (const auto& b : doc.at("bands")) {
      const Index rows = b.at("rows").get<Index>();
      const Index cols = b.at("cols").get<Index>();
      const auto& re = b.at("re");
      const auto& im = b.at("im");
      if (static_cast<Index>(re.size()) != rows || static_cast<Index>(im.size()) != rows) {
        throw Error(ErrorCode::Parse, "sample band row count mismatch");
      }
      ComplexMatrix y(rows, cols);
      for (Index r = 0; r < rows; ++r) {
        if (static_cast<Index>(re[r].size()) != cols || static_cast<Index>(im[r].size()) != cols) {
          throw Error(ErrorCode::RaggedRows, "sample band rows are ragged");
        }
        for (Index c = 0; c < cols; ++c) y(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
      }
      s.bands.push_back(std::move(y));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("sample document: ") + e.what());
  }
}

void save_samples(const fs::path& path, const SampleSet& s) {
  write_file(path, samples_to_json(s).dump() + "\n");
}

SampleSet load_samples(const fs::path& path) { return samples_from_json(parse_json_file(path)); }

RealMatrix parse_timeseries_csv(std::string_view text, const CsvOptions& options) {
  std::vector<std::vector<double>> rows;
  bool first = true;
  for (auto raw : lines_of(text)) {
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto cells = split(line, options.delimiter);
    std::vector<double> row;
    row.reserve(cells.size());
    bool numeric = true;
    for (auto cell : cells) {
      double v = 0.0;
      if (!parse_double(cell, v)) {
        numeric = false;
        break;
      }
      if (std::isnan(v)) throw Error(ErrorCode::NonNumeric, "NaN cell in row " + std::to_string(rows.size() + 1));
      row.push_back(v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw Error(ErrorCode::NonNumeric, "non-numeric cell in data row " + std::to_string(rows.size() + 1));
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::RaggedRows, "data row " + std::to_string(rows.size() + 1) + " has " +
                                             std::to_string(row.size()) + " cells, expected " +
                                             std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::Empty, "no data rows");
  RealMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) out(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  }
  return out;
}

RealMatrix load_timeseries_csv(const fs::path& path, const CsvOptions& options) {
  return parse_timeseries_csv(read_file(path), options);
}

Graph correlation_graph(const RealMatrix& data, double threshold) {
  if (data.cols() < 2) throw Error(ErrorCode::TooFewSamples, "correlation needs at least 2 timesteps");
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0, 1)");
  }
  const Index n = data.rows();
  RealMatrix centered = data.colwise() - data.rowwise().mean();
  RealVector norms = centered.rowwise().norm();
  RealMatrix w = RealMatrix::Zero(n, n);
  const double tiny = 1e-12 * std::max(1.0, data.cwiseAbs().maxCoeff()) *
                      std::sqrt(static_cast<double>(data.cols()));
  for (Index i = 0; i < n; ++i) {
    if (norms(i) <= tiny) continue;
    for (Index j = i + 1; j < n; ++j) {
      if (norms(j) <= tiny) continue;
      double rho = centered.row(i).dot(centered.row(j)) / (norms(i) * norms(j));
      rho = std::min(1.0, std::abs(rho));
      if (rho >= threshold) w(i, j) = w(j, i) = rho;
    }
  }
  return build_graph(w);
}

RealMatrix symmetrize_directed(const RealMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NonSquare, "adjacency matrix must be square");
  RealMatrix w = 0.5 * (a + a.transpose());
  w.diagonal().setZero();
  return w;
}

std::vector<RealMatrix> window(const RealMatrix& data, Index t_len, Index stride) {
  if (t_len < 1 || stride < 1) throw Error(ErrorCode::InvalidArgument, "t_len and stride must be >= 1");
  if (t_len > data.cols()) {
    throw Error(ErrorCode::WindowTooLong, "window of " + std::to_string(t_len) +
                                              " exceeds recording length " + std::to_string(data.cols()));
  }
  std::vector<RealMatrix> out;
  for (Index start = 0; start + t_len <= data.cols(); start += stride) {
    out.emplace_back(data.middleCols(start, t_len));
  }
  return out;
}

}  // namespace tvgs

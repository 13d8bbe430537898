#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "tvgs/bandlimit.hpp"
#include "tvgs/bounds.hpp"
#include "tvgs/error.hpp"
#include "tvgs/reconstruction.hpp"
#include "tvgs/sampling_planner.hpp"
#include "tvgs/signal_io.hpp"
#include "tvgs/synth_oracle.hpp"

namespace tvgs::cli {

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kIo = 2;

struct Common {
  std::string format = "csv";
  std::string time_basis = "dft";
  unsigned threads = 1;
  double eps = 1e-9;

  FileFormat file_format() const { return format == "bin" ? FileFormat::Binary : FileFormat::Csv; }
  TemporalKind kind() const {
    return time_basis == "cycle" ? TemporalKind::LaplacianUndirectedCycle
                                 : TemporalKind::DftDirectedCycle;
  }
};

std::string one_based(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(s[k] + 1);
  }
  return out + "}";
}

std::string format_g(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Output sink that is either a file or the provided stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) throw Error(ErrorCode::Io, "cannot write " + path);
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void print_support(std::ostream& out, const SpectralSupport& supp) {
  out << "N=" << supp.rows() << " T=" << supp.cols() << "\n";
  const Ratio bound(static_cast<std::int64_t>(supp.b_joint()),
                    static_cast<std::int64_t>(supp.rows() * supp.cols()));
  out << "B=" << supp.b_joint() << " B_G=" << supp.b_graph() << " B_T=" << supp.b_time()
      << " ratio_bound=" << format_ratio(bound) << "\n";
  out << "I=" << one_based(supp.rows_active()) << "\n";
  out << "F=" << one_based(supp.cols_active()) << "\n";
  for (Index i : supp.rows_active()) {
    out << "row " << i + 1 << ": " << one_based(supp.cols_in_row(i)) << "\n";
  }
}

int cmd_analyze(const Common& c, const std::string& spectrum_path, const std::string& signal_path,
                const std::string& graph_path, std::ostream& out) {
  SpectralSupport supp;
  if (!spectrum_path.empty()) {
    supp = support_of(JointSpectrum{read_matrix(spectrum_path).values}, c.eps);
  } else {
    if (signal_path.empty() || graph_path.empty()) {
      throw Error(ErrorCode::InvalidArgument, "analyze needs --spectrum, or --signal with --graph");
    }
    const TvgSignal x{read_matrix(signal_path).values};
    const Graph g = load_graph(graph_path);
    const TemporalBasis t = make_temporal_basis(c.kind(), x.period());
    supp = support_of(jft(x, g, t), c.eps);
  }
  print_support(out, supp);
  return kOk;
}

int cmd_compress(const Common& c, const std::string& signal_path, const std::string& graph_path,
                 double energy_keep, Index bg, bool contiguous, const std::string& out_signal,
                 const std::string& out_support, const std::string& out_spectrum, std::ostream& out) {
  const TvgSignal x{read_matrix(signal_path).values};
  const Graph g = load_graph(graph_path);
  const TemporalBasis t = make_temporal_basis(c.kind(), x.period());
  CompressOptions options;
  options.energy_keep = energy_keep;
  options.b_graph_keep = bg;
  options.mode = contiguous ? LowpassMode::Contiguous : LowpassMode::Greedy;
  const CompressResult r = compress_to_jbl(x, g, t, options);
  write_matrix(out_signal, r.signal.data, MatrixKind::Signal, c.file_format());
  if (!out_support.empty()) write_support(out_support, r.support);
  if (!out_spectrum.empty()) {
    write_matrix(out_spectrum, r.spectrum.coeffs, MatrixKind::Spectrum, c.file_format());
  }
  out << "B=" << r.support.b_joint() << " B_G=" << r.support.b_graph()
      << " B_T=" << r.support.b_time() << " retained_energy="
      << format_g(r.input_energy > 0 ? r.output_energy / r.input_energy : 1.0, 12) << "\n";
  return kOk;
}

int cmd_plan(const Common& c, const std::string& support_path, const std::string& graph_path,
             const std::string& out_path, bool separate, std::ostream& out) {
  const SpectralSupport supp = read_support(support_path, c.eps);
  const Graph g = load_graph(graph_path);
  const TemporalBasis t = make_temporal_basis(c.kind(), supp.cols());
  const SamplingPlan p = separate ? separate_plan(supp, g, t) : plan(supp, g, t);
  if (out_path.empty()) {
    out << plan_to_json(p).dump(2) << "\n";
  } else {
    save_plan(out_path, p);
    out << "bands=" << p.bands.size() << " total_samples=" << p.total_samples
        << " ratio=" << format_ratio(p.ratio()) << "\n";
  }
  return kOk;
}

int cmd_sample(const Common& c, const std::string& signal_path, const std::string& plan_path,
               const std::string& graph_path, const std::string& out_path) {
  const TvgSignal x{read_matrix(signal_path).values};
  const SamplingPlan p = load_plan(plan_path);
  const Graph g = load_graph(graph_path);
  const TemporalBasis t = make_temporal_basis(c.kind(), p.period);
  save_samples(out_path, sample(x, p, g, t, c.threads));
  return kOk;
}

int cmd_reconstruct(const Common& c, const std::string& samples_path, const std::string& plan_path,
                    const std::string& graph_path, const std::string& out_path) {
  const SampleSet s = load_samples(samples_path);
  const SamplingPlan p = load_plan(plan_path);
  const Graph g = load_graph(graph_path);
  const TemporalBasis t = make_temporal_basis(c.kind(), p.period);
  write_matrix(out_path, reconstruct(s, p, g, t, c.threads).data, MatrixKind::Signal,
               c.file_format());
  return kOk;
}

int cmd_evaluate(const std::string& ref_path, const std::string& rec_path, std::ostream& out) {
  const TvgSignal a{read_matrix(ref_path).values};
  const TvgSignal b{read_matrix(rec_path).values};
  out << format_g(nrmse(a, b), 12) << "\n";
  return kOk;
}

int cmd_bounds(const Common& c, const std::string& support_path, const std::string& graph_path,
               const std::string& out_path, std::ostream& out) {
  const SpectralSupport supp = read_support(support_path, c.eps);
  const Graph g = load_graph(graph_path);
  const TemporalBasis t = make_temporal_basis(c.kind(), supp.cols());
  const IndexSet sg_prime = select_vertices(g, supp.rows_active());
  const auto bounds = per_vertex_bounds(g, t, supp, sg_prime);
  Sink sink(out_path, out);
  *sink << "vertex,bound\n";
  for (Index v : sg_prime) {
    *sink << v + 1 << "," << format_ratio(bounds[static_cast<std::size_t>(v)].ratio) << "\n";
  }
  const Ratio total(static_cast<std::int64_t>(supp.b_joint()),
                    static_cast<std::int64_t>(supp.rows() * supp.cols()));
  *sink << "total," << format_ratio(total) << "\n";
  return kOk;
}

int cmd_synth(const Common& c, Index n, Index period, Index bg, double fill, std::uint64_t seed,
              double edge_prob, const std::string& out_signal, const std::string& out_support,
              const std::string& out_graph, std::ostream& out) {
  const Graph g = random_graph(n, edge_prob, seed);
  const TemporalBasis t = make_temporal_basis(c.kind(), period);
  const JblInstance inst = random_jbl(g, t, bg, fill, seed + 1);
  write_matrix(out_signal, inst.signal.data, MatrixKind::Signal, c.file_format());
  write_support(out_support, inst.support);
  if (!out_graph.empty()) {
    write_matrix(out_graph, g.weights().cast<Complex>(), MatrixKind::Weights, c.file_format());
  }
  out << "B=" << inst.support.b_joint() << " B_G=" << inst.support.b_graph()
      << " B_T=" << inst.support.b_time() << "\n";
  return kOk;
}

int cmd_demo71(const Common& c, std::ostream& out) {
  const ExampleFixture fx = example_fixture();
  const SpectralSupport& supp = fx.support;
  bool ok = true;
  auto check = [&](bool cond, const std::string& what) {
    out << (cond ? "ok   " : "FAIL ") << what << "\n";
    ok = ok && cond;
  };
  print_support(out, supp);
  check(supp.b_joint() == 7 && supp.b_graph() == 3 && supp.b_time() == 3, "B=7 B_G=3 B_T=3");
  check(supp.cols_active() == IndexSet{1, 2, 3}, "F={2,3,4}");
  check(supp.rows_active() == IndexSet{0, 1, 2}, "I={1,2,3}");

  const auto bands = partition_bands(supp);
  check(bands.size() == 2 && bands[0].rows == IndexSet{0, 1, 2} && bands[0].cols == IndexSet{2} &&
            bands[1].rows == IndexSet{0, 1} && bands[1].cols == IndexSet{1, 3},
        "bands ({1,2,3} x {3}) and ({1,2} x {2,4})");

  // The example comes without a graph; a unit-weight path on four vertices
  // stands in for it.
  RealMatrix w = RealMatrix::Zero(4, 4);
  for (Index i = 0; i + 1 < 4; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
  const Graph g = build_graph(w);
  const TemporalBasis t = make_temporal_basis(c.kind(), 4);
  check(select_band_times(t, bands[0].cols) == IndexSet{0}, "S_T^1={1}");
  const IndexSet st2 = select_band_times(t, bands[1].cols);
  check(st2 == IndexSet{0, 2}, "S_T^2={1,3} (got " + one_based(st2) + ")");
  if (st2 != IndexSet{0, 2}) {
    const Index grid_rank = basis_block_rank(submatrix(t.basis(), IndexSet{0, 2}, bands[1].cols));
    out << "note the grid {1,3} has rank " << grid_rank
        << " on bins {2,4} in this basis, so it cannot recover that band\n";
  }

  const SamplingPlan p = plan(supp, g, t);
  check(p.total_samples == 7 && p.ratio() == Ratio(7, 16), "total_samples=7 ratio=7/16");
  check(static_cast<Index>(p.vertices_used.size()) <= 3, "|S_G| <= 3");
  for (std::size_t k = 0; k < p.bands.size(); ++k) {
    out << "band " << k + 1 << ": S_G=" << one_based(p.bands[k].vertices)
        << " S_T=" << one_based(p.bands[k].times) << "\n";
  }
  const SamplingPlan sep = separate_plan(supp, g, t);
  out << "separate ratio=" << format_ratio(sep.ratio()) << "\n";

  // Random coefficients on the example support, recovered from 7 samples.
  Rng rng(71);
  JointSpectrum s{ComplexMatrix::Zero(4, 4)};
  for (auto [i, f] : supp.entries()) s.coeffs(i, f) = Complex(rng.normal(), rng.normal());
  const TvgSignal x = ijft(s, g, t);
  const TvgSignal xr = reconstruct(sample(x, p, g, t), p, g, t);
  const double err = nrmse(x, xr);
  check(err <= 1e-9, "exact recovery from 7 samples (nrmse=" + format_g(err, 3) + ")");

  const auto singles = per_vertex_bounds(g, t, supp, p.vertex_candidates);
  for (Index v : p.vertex_candidates) {
    out << "R_F(S_" << v + 1 << ") >= " << format_ratio(singles[static_cast<std::size_t>(v)].ratio)
        << "\n";
  }
  return ok ? kOk : kValidation;
}

struct ExperimentArgs {
  Index n = 16;
  Index period = 128;
  std::string sweep = "1:16";
  std::uint64_t seed = 7;
  double energy_keep = 0.9;
  bool contiguous = false;
  std::string data_path;
  std::string graph_path;
  double corr_threshold = 0.0;
  Index stride = 0;
  std::string out_path;
};

std::pair<Index, Index> parse_sweep(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const Index v = std::stol(text);
      return {v, v};
    }
    return {std::stol(text.substr(0, colon)), std::stol(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "--bg-sweep must look like a:b");
  }
}

int cmd_experiment(const Common& c, const ExperimentArgs& a, std::ostream& out) {
  RealMatrix data;
  if (a.data_path.empty()) {
    data = correlated_series(a.n, a.period, a.seed);
  } else {
    data = load_timeseries_csv(a.data_path);
  }
  const Graph g = a.graph_path.empty() ? correlation_graph(data, a.corr_threshold)
                                       : load_graph(a.graph_path);
  if (g.n_vertices() != data.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "graph size does not match data rows");
  }
  const auto windows = window(data, a.period, a.stride > 0 ? a.stride : a.period);
  const TemporalBasis t = make_temporal_basis(c.kind(), a.period);
  auto [lo, hi] = parse_sweep(a.sweep);
  if (lo < 1 || hi > g.n_vertices() || lo > hi) {
    throw Error(ErrorCode::BadRowCount, "--bg-sweep must lie within 1:N");
  }

  Sink sink(a.out_path, out);
  *sink << "bg,ratio_multi,ratio_sep,nrmse_jbl,nrmse_orig\n";
  for (Index bg = lo; bg <= hi; ++bg) {
    double ratio_multi = 0.0, ratio_sep = 0.0, err_jbl = 0.0, err_orig = 0.0;
    for (const auto& w : windows) {
      const TvgSignal x{w.cast<Complex>()};
      CompressOptions options;
      options.energy_keep = a.energy_keep;
      options.b_graph_keep = bg;
      options.mode = a.contiguous ? LowpassMode::Contiguous : LowpassMode::Greedy;
      const CompressResult jbl = compress_to_jbl(x, g, t, options);
      const SamplingPlan p = plan(jbl.support, g, t);
      const SamplingPlan sep = separate_plan(jbl.support, g, t);
      const TvgSignal xr = reconstruct(sample(jbl.signal, p, g, t, c.threads), p, g, t, c.threads);
      ratio_multi += boost::rational_cast<double>(p.ratio());
      ratio_sep += boost::rational_cast<double>(sep.ratio());
      err_jbl += nrmse(jbl.signal, xr);
      err_orig += nrmse(x, xr);
    }
    const double count = static_cast<double>(windows.size());
    *sink << bg << "," << format_g(ratio_multi / count, 12) << "," << format_g(ratio_sep / count, 12)
          << "," << format_g(err_jbl / count, 12) << "," << format_g(err_orig / count, 12) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling and recovery of jointly bandlimited time-vertex graph signals", "tvgs"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Container for matrix outputs")
      ->check(CLI::IsMember({"csv", "bin"}));
  app.add_option("--time-basis", common.time_basis, "Temporal basis: dft or cycle")
      ->check(CLI::IsMember({"dft", "cycle"}));
  app.add_option("--threads", common.threads, "Worker threads for per-band work")
      ->check(CLI::PositiveNumber);
  app.add_option("--eps", common.eps, "Relative threshold for numerically-zero coefficients")
      ->check(CLI::NonNegativeNumber);

  std::function<int()> action;

  std::string spectrum_path, signal_path, graph_path, support_path, plan_path, samples_path;
  std::string out_path, out_signal, out_support, out_spectrum, out_graph, ref_path, rec_path;

  auto* analyze = app.add_subcommand("analyze", "Print bandwidths and per-row supports");
  analyze->add_option("--spectrum", spectrum_path, "Joint spectrum file");
  analyze->add_option("--signal", signal_path, "Signal file (with --graph)");
  analyze->add_option("--graph", graph_path, "Weight matrix file");
  analyze->callback([&] {
    action = [&] { return cmd_analyze(common, spectrum_path, signal_path, graph_path, out); };
  });

  double energy_keep = 0.9;
  Index bg = 1;
  bool contiguous = false;
  auto* compress = app.add_subcommand("compress", "Project a signal to a jointly bandlimited one");
  compress->add_option("--signal", signal_path)->required();
  compress->add_option("--graph", graph_path)->required();
  compress->add_option("--energy-keep", energy_keep, "Per-row energy fraction to keep");
  compress->add_option("--bg", bg, "Number of graph-frequency rows to keep")->required();
  compress->add_flag("--lowpass-contiguous", contiguous, "Keep a contiguous low-frequency window");
  compress->add_option("--out-signal", out_signal)->required();
  compress->add_option("--out-support", out_support);
  compress->add_option("--out-spectrum", out_spectrum);
  compress->callback([&] {
    action = [&] {
      return cmd_compress(common, signal_path, graph_path, energy_keep, bg, contiguous, out_signal,
                          out_support, out_spectrum, out);
    };
  });

  bool separate = false;
  auto* plan_cmd = app.add_subcommand("plan", "Build a critical multi-band sampling plan");
  plan_cmd->add_option("--support", support_path, "Support mask or spectrum file")->required();
  plan_cmd->add_option("--graph", graph_path)->required();
  plan_cmd->add_option("--out", out_path, "Plan document (stdout when omitted)");
  plan_cmd->add_flag("--separate", separate, "Separate-sampling baseline instead");
  plan_cmd->callback([&] {
    action = [&] { return cmd_plan(common, support_path, graph_path, out_path, separate, out); };
  });

  auto* sample_cmd = app.add_subcommand("sample", "Sample a signal according to a plan");
  sample_cmd->add_option("--signal", signal_path)->required();
  sample_cmd->add_option("--plan", plan_path)->required();
  sample_cmd->add_option("--graph", graph_path)->required();
  sample_cmd->add_option("--out", out_path)->required();
  sample_cmd->callback([&] {
    action = [&] { return cmd_sample(common, signal_path, plan_path, graph_path, out_path); };
  });

  auto* rec_cmd = app.add_subcommand("reconstruct", "Recover a signal from samples");
  rec_cmd->add_option("--samples", samples_path)->required();
  rec_cmd->add_option("--plan", plan_path)->required();
  rec_cmd->add_option("--graph", graph_path)->required();
  rec_cmd->add_option("--out", out_path)->required();
  rec_cmd->callback([&] {
    action = [&] { return cmd_reconstruct(common, samples_path, plan_path, graph_path, out_path); };
  });

  auto* eval_cmd = app.add_subcommand("evaluate", "Print NRMSE between two signals");
  eval_cmd->add_option("--ref", ref_path)->required();
  eval_cmd->add_option("--rec", rec_path)->required();
  eval_cmd->callback([&] { action = [&] { return cmd_evaluate(ref_path, rec_path, out); }; });

  auto* bounds_cmd = app.add_subcommand("bounds", "Per-vertex lower bounds on sampling ratios");
  bounds_cmd->add_option("--support", support_path)->required();
  bounds_cmd->add_option("--graph", graph_path)->required();
  bounds_cmd->add_option("--out", out_path, "CSV output (stdout when omitted)");
  bounds_cmd->callback([&] {
    action = [&] { return cmd_bounds(common, support_path, graph_path, out_path, out); };
  });

  Index n = 8, period = 16;
  double fill = 0.5, edge_prob = 0.5;
  std::uint64_t seed = 1;
  auto* synth = app.add_subcommand("synth", "Generate a random graph and JBL signal");
  synth->add_option("--n", n)->check(CLI::PositiveNumber);
  synth->add_option("--t", period)->check(CLI::PositiveNumber);
  synth->add_option("--bg", bg)->required();
  synth->add_option("--fill", fill);
  synth->add_option("--seed", seed);
  synth->add_option("--edge-prob", edge_prob);
  synth->add_option("--out-signal", out_signal)->required();
  synth->add_option("--out-support", out_support)->required();
  synth->add_option("--out-graph", out_graph);
  synth->callback([&] {
    action = [&] {
      return cmd_synth(common, n, period, bg, fill, seed, edge_prob, out_signal, out_support,
                       out_graph, out);
    };
  });

  auto* demo = app.add_subcommand("demo71", "Run the 4x4 worked example and check its values");
  demo->callback([&] { action = [&] { return cmd_demo71(common, out); }; });

  ExperimentArgs ex;
  auto* exp = app.add_subcommand("experiment", "Compress, sample and recover over a B_G sweep");
  exp->add_option("--n", ex.n, "Vertices of the synthetic data")->check(CLI::PositiveNumber);
  exp->add_option("--t", ex.period, "Window length")->check(CLI::PositiveNumber);
  exp->add_option("--bg-sweep", ex.sweep, "Range a:b of B_G values");
  exp->add_option("--seed", ex.seed);
  exp->add_option("--energy-keep", ex.energy_keep);
  exp->add_flag("--lowpass-contiguous", ex.contiguous);
  exp->add_option("--data", ex.data_path, "Time-series CSV, rows = vertices");
  exp->add_option("--graph", ex.graph_path, "Weight matrix (default: correlation graph)");
  exp->add_option("--corr-threshold", ex.corr_threshold);
  exp->add_option("--stride", ex.stride, "Window stride (default: --t)");
  exp->add_option("--out", ex.out_path, "CSV output (stdout when omitted)");
  exp->callback([&] { action = [&] { return cmd_experiment(common, ex, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kValidation;
  }

  try {
    return action ? action() : kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io || e.code() == ErrorCode::Parse ? kIo : kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace tvgs::cli

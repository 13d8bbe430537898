#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tvgs/bandlimit.hpp"
#include "tvgs/bounds.hpp"
#include "tvgs/error.hpp"
#include "tvgs/reconstruction.hpp"
#include "tvgs/sampling_planner.hpp"
#include "tvgs/signal_io.hpp"
#include "tvgs/synth_oracle.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace tvgs;

namespace {

py::tuple ratio_tuple(const Ratio& r) { return py::make_tuple(r.numerator(), r.denominator()); }

TvgSignal as_signal(const ComplexMatrix& x) { return TvgSignal{x}; }

std::vector<ComplexMatrix> sample_arrays(const ComplexMatrix& x, const SamplingPlan& p,
                                         const Graph& g, const TemporalBasis& t, unsigned threads) {
  return sample(as_signal(x), p, g, t, threads).bands;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sampling and exact recovery of jointly bandlimited time-vertex graph signals";

  static py::exception<Error> error(m, "TvgsError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(),
                      py::make_tuple(std::string(to_string(e.code())), e.what()).ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](const RealMatrix& w) { return build_graph(w); }), "weights"_a)
      .def_property_readonly("n_vertices", &Graph::n_vertices)
      .def_property_readonly("weights", &Graph::weights)
      .def_property_readonly("laplacian", &Graph::laplacian)
      .def_property_readonly("eigvals", &Graph::eigvals)
      .def_property_readonly("basis", &Graph::eigvecs);

  py::enum_<TemporalKind>(m, "TemporalKind")
      .value("DFT", TemporalKind::DftDirectedCycle)
      .value("CYCLE", TemporalKind::LaplacianUndirectedCycle);

  py::class_<TemporalBasis>(m, "TemporalBasis")
      .def_property_readonly("period", &TemporalBasis::period)
      .def_property_readonly("kind", &TemporalBasis::kind)
      .def_property_readonly("basis", &TemporalBasis::basis)
      .def_property_readonly("eigvals", &TemporalBasis::eigvals);
  m.def("dft_basis", &dft_basis, "period"_a);
  m.def("cycle_laplacian_basis", [](Index t) { return cycle_laplacian_basis(t); }, "period"_a);

  m.def("jft", [](const ComplexMatrix& x, const Graph& g, const TemporalBasis& t) {
    return jft(as_signal(x), g, t).coeffs;
  }, "x"_a, "graph"_a, "time_basis"_a);
  m.def("ijft", [](const ComplexMatrix& s, const Graph& g, const TemporalBasis& t) {
    return ijft(JointSpectrum{s}, g, t).data;
  }, "spectrum"_a, "graph"_a, "time_basis"_a);

  py::class_<SpectralSupport>(m, "SpectralSupport")
      .def(py::init<BoolMatrix>(), "mask"_a)
      .def_property_readonly("mask", &SpectralSupport::mask)
      .def_property_readonly("b_joint", &SpectralSupport::b_joint)
      .def_property_readonly("b_graph", &SpectralSupport::b_graph)
      .def_property_readonly("b_time", &SpectralSupport::b_time)
      .def_property_readonly("rows_active", &SpectralSupport::rows_active)
      .def_property_readonly("cols_active", &SpectralSupport::cols_active)
      .def("rows_in_col", &SpectralSupport::rows_in_col, "f"_a)
      .def("cols_in_row", &SpectralSupport::cols_in_row, "i"_a)
      .def("__eq__", &SpectralSupport::operator==);
  m.def("support_of", [](const ComplexMatrix& s, double eps) { return support_of(JointSpectrum{s}, eps); },
        "spectrum"_a, "eps_rel"_a = 1e-9);

  py::class_<CompressResult>(m, "CompressResult")
      .def_property_readonly("signal", [](const CompressResult& r) { return r.signal.data; })
      .def_property_readonly("spectrum", [](const CompressResult& r) { return r.spectrum.coeffs; })
      .def_readonly("support", &CompressResult::support)
      .def_readonly("input_energy", &CompressResult::input_energy)
      .def_readonly("output_energy", &CompressResult::output_energy);
  m.def("compress_to_jbl",
        [](const ComplexMatrix& x, const Graph& g, const TemporalBasis& t, double keep, Index bg,
           bool contiguous) {
          CompressOptions o;
          o.energy_keep = keep;
          o.b_graph_keep = bg;
          o.mode = contiguous ? LowpassMode::Contiguous : LowpassMode::Greedy;
          return compress_to_jbl(as_signal(x), g, t, o);
        },
        "x"_a, "graph"_a, "time_basis"_a, "energy_keep"_a = 0.9, "b_graph"_a = 1,
        "lowpass_contiguous"_a = false);

  py::class_<SubBand>(m, "SubBand")
      .def_readonly("rows", &SubBand::rows)
      .def_readonly("cols", &SubBand::cols)
      .def_readonly("vertices", &SubBand::vertices)
      .def_readonly("times", &SubBand::times)
      .def_property_readonly("sample_count", &SubBand::sample_count);
  py::class_<SamplingPlan>(m, "SamplingPlan")
      .def_readonly("n_vertices", &SamplingPlan::n_vertices)
      .def_readonly("period", &SamplingPlan::period)
      .def_readonly("bands", &SamplingPlan::bands)
      .def_readonly("vertex_candidates", &SamplingPlan::vertex_candidates)
      .def_readonly("vertices_used", &SamplingPlan::vertices_used)
      .def_readonly("total_samples", &SamplingPlan::total_samples)
      .def_property_readonly("ratio", [](const SamplingPlan& p) { return ratio_tuple(p.ratio()); })
      .def("to_json", [](const SamplingPlan& p) { return plan_to_json(p).dump(); })
      .def_static("from_json", [](const std::string& s) {
        return plan_from_json(nlohmann::json::parse(s));
      });

  m.def("partition_bands", [](const SpectralSupport& s) {
    std::vector<std::pair<IndexSet, IndexSet>> out;
    for (auto& b : partition_bands(s)) out.emplace_back(b.rows, b.cols);
    return out;
  }, "support"_a);
  m.def("select_vertices", [](const Graph& g, const IndexSet& rows) { return select_vertices(g, rows); },
        "graph"_a, "rows"_a);
  m.def("select_band_times", [](const TemporalBasis& t, const IndexSet& cols) {
    return select_band_times(t, cols);
  }, "time_basis"_a, "cols"_a);
  m.def("plan", [](const SpectralSupport& s, const Graph& g, const TemporalBasis& t) {
    return plan(s, g, t);
  }, "support"_a, "graph"_a, "time_basis"_a);
  m.def("separate_plan", [](const SpectralSupport& s, const Graph& g, const TemporalBasis& t) {
    return separate_plan(s, g, t);
  }, "support"_a, "graph"_a, "time_basis"_a);
  m.def("sample", &sample_arrays, "x"_a, "plan"_a, "graph"_a, "time_basis"_a, "threads"_a = 1);
  m.def("reconstruct",
        [](const std::vector<ComplexMatrix>& bands, const SamplingPlan& p, const Graph& g,
           const TemporalBasis& t, unsigned threads) {
          return reconstruct(SampleSet{bands}, p, g, t, threads).data;
        },
        "samples"_a, "plan"_a, "graph"_a, "time_basis"_a, "threads"_a = 1);
  m.def("nrmse", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return nrmse(as_signal(a), as_signal(b));
  }, "reference"_a, "estimate"_a);

  m.def("subset_bound",
        [](const Graph& g, const TemporalBasis& t, const SpectralSupport& s, const IndexSet& sgp,
           const IndexSet& theta) {
          const SubsetBound b = ftvgs_subset_bound(g, t, s, sgp, theta);
          return py::make_tuple(b.samples, ratio_tuple(b.ratio));
        },
        "graph"_a, "time_basis"_a, "support"_a, "sg_prime"_a, "theta"_a);
  m.def("per_vertex_bounds",
        [](const Graph& g, const TemporalBasis& t, const SpectralSupport& s, const IndexSet& sgp) {
          std::vector<py::tuple> out;
          for (const auto& b : per_vertex_bounds(g, t, s, sgp)) out.push_back(ratio_tuple(b.ratio));
          return out;
        },
        "graph"_a, "time_basis"_a, "support"_a, "sg_prime"_a);

  m.def("random_graph", &random_graph, "n"_a, "edge_prob"_a, "seed"_a);
  m.def("random_jbl",
        [](const Graph& g, const TemporalBasis& t, Index bg, double fill, std::uint64_t seed) {
          const JblInstance inst = random_jbl(g, t, bg, fill, seed);
          return py::make_tuple(inst.signal.data, inst.spectrum.coeffs, inst.support);
        },
        "graph"_a, "time_basis"_a, "b_graph"_a, "fill"_a, "seed"_a);
  m.def("fixture_spectrum", [] { return example_fixture().spectrum.coeffs; });
  m.def("correlated_series", &correlated_series, "n"_a, "length"_a, "seed"_a);
  m.def("correlation_graph", &correlation_graph, "data"_a, "threshold"_a = 0.0);
}

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <memory>

#include "mlc/benchmark.hpp"
#include "mlc/candidates.hpp"
#include "mlc/constructors.hpp"
#include "mlc/exact.hpp"
#include "mlc/fixtures.hpp"
#include "mlc/render.hpp"
#include "mlc/resnet.hpp"
#include "mlc/tsplib.hpp"
#include "mlc/weights.hpp"

namespace py = pybind11;
using namespace mlc;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

py::array_t<float> image_array(const ContextImage& img) {
  py::array_t<float> out({kImageChannels, kImageSize, kImageSize});
  std::memcpy(out.mutable_data(), img.data.data(), img.data.size() * sizeof(float));
  return out;
}

std::vector<float> image_values(const FloatArray& a) {
  if (static_cast<std::size_t>(a.size()) != kImageValues) {
    throw py::value_error("expected " + std::to_string(kImageValues) + " float32 values");
  }
  return {a.data(), a.data() + a.size()};
}

std::vector<Edge> to_edges(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<Edge> out;
  for (auto [u, v] : pairs) out.emplace_back(u, v);
  return out;
}

py::dict prediction_dict(const Prediction& p) {
  py::dict d;
  d["logits"] = py::make_tuple(p.logit_not_optimal, p.logit_optimal);
  d["probabilities"] = py::make_tuple(p.p_not_optimal, p.p_optimal);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "TSP ML-Constructive core";
  m.attr("IMAGE_SIZE") = kImageSize;
  m.attr("IMAGE_CHANNELS") = kImageChannels;

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<WeightError>(m, "WeightError", PyExc_ValueError);
  py::register_exception<MissingInputError>(m, "MissingInputError", PyExc_LookupError);

  py::class_<Instance>(m, "Instance")
      .def_static("load", &parse_tsplib_file, py::arg("path"))
      .def_static(
          "from_points",
          [](const std::vector<std::pair<double, double>>& pts, std::string name) {
            std::vector<Point> coords;
            for (auto [x, y] : pts) coords.push_back({x, y});
            return Instance::from_points(std::move(name), std::move(coords), EdgeWeightType::kEuc2DReal);
          },
          py::arg("points"), py::arg("name") = "points")
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("n", &Instance::size)
      .def_property_readonly("coords",
                             [](const Instance& inst) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& p : inst.coords()) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def("cost", &Instance::cost)
      .def("tour_length", [](const Instance& inst, const std::vector<Vertex>& order) {
        return tour_length(inst, order);
      })
      .def("__len__", &Instance::size);

  m.def(
      "candidate_lists",
      [](const Instance& inst, int k) {
        const auto cls = build_candidate_lists(inst, k);
        std::vector<std::vector<Vertex>> out(inst.size());
        for (Vertex i = 0; i < inst.size(); ++i)
          for (const auto& nb : cls.of(i)) out[i].push_back(nb.vertex);
        return out;
      },
      py::arg("instance"), py::arg("k") = kDefaultCandidates);

  m.def(
      "promising_list",
      [](const Instance& inst, int k, int mm) {
        std::vector<std::tuple<Vertex, Vertex, int>> out;
        for (const auto& e : build_promising_list(build_candidate_lists(inst, k), mm))
          out.emplace_back(e.i, e.j, e.position);
        return out;
      },
      py::arg("instance"), py::arg("k") = kDefaultCandidates, py::arg("m") = kDefaultPromising);

  py::class_<WeightBundle, std::shared_ptr<WeightBundle>>(m, "Network")
      .def_static("load", [](const std::filesystem::path& p) { return std::make_shared<WeightBundle>(load_weights_file(p)); })
      .def_static(
          "random",
          [](std::uint64_t seed, int stem) {
            Architecture arch;
            arch.stem = stem;
            return std::make_shared<WeightBundle>(random_bundle(arch, seed));
          },
          py::arg("seed") = 1, py::arg("stem") = Architecture{}.stem)
      .def("save", [](const WeightBundle& wb, const std::filesystem::path& p) { save_weights_file(p, wb); })
      .def_property_readonly("parameter_count", &WeightBundle::parameter_count)
      .def_property_readonly("stem", [](const WeightBundle& wb) { return wb.arch.stem; })
      .def("predict", [](const WeightBundle& wb, const FloatArray& image) {
        return prediction_dict(forward(wb, image_values(image)));
      });

  m.def(
      "solve",
      [](const Instance& inst, const std::string& policy, int k, int mm, double threshold,
         std::uint64_t seed, int runs, std::shared_ptr<WeightBundle> net,
         std::optional<std::vector<Vertex>> optimal) {
        SolveContext ctx;
        ctx.k = k;
        ctx.m = mm;
        ctx.threshold = threshold;
        ctx.seed = seed;
        ctx.runs = runs;
        ctx.weights = std::move(net);
        ctx.optimal = std::move(optimal);
        PolicyRun run;
        {
          py::gil_scoped_release release;
          run = solve(inst, parse_policy(policy), ctx);
        }
        py::dict d;
        d["order"] = run.tour.order;
        d["length"] = run.tour.length;
        d["lengths"] = run.lengths;
        d["seconds"] = run.seconds;
        return d;
      },
      py::arg("instance"), py::arg("policy") = "cw", py::arg("k") = kDefaultCandidates,
      py::arg("m") = kDefaultPromising, py::arg("threshold") = kDefaultThreshold,
      py::arg("seed") = 1, py::arg("runs") = kEmpiricalRuns, py::arg("network") = nullptr,
      py::arg("optimal") = py::none());

  m.def("held_karp", [](const Instance& inst) {
    const auto t = held_karp(inst);
    return py::make_tuple(t.order, t.length);
  });
  m.def("read_tour", &parse_tour_file, py::arg("path"));

  m.def(
      "render",
      [](const Instance& inst, Vertex i, Vertex j,
         const std::vector<std::pair<Vertex, Vertex>>& drawn, int k) {
        const auto cls = build_candidate_lists(inst, k);
        return image_array(render_context(inst, cls, to_edges(drawn), i, j));
      },
      py::arg("instance"), py::arg("i"), py::arg("j"),
      py::arg("drawn") = std::vector<std::pair<Vertex, Vertex>>{}, py::arg("k") = kDefaultCandidates);

  m.def(
      "write_fixtures",
      [](const std::filesystem::path& dir, std::uint64_t seed) {
        const auto set = fixture_set(seed);
        write_fixture_set(dir, set);
        return set.size();
      },
      py::arg("directory"), py::arg("seed") = 2024);
}

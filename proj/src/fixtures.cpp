#include "mlc/fixtures.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

#include "mlc/candidates.hpp"
#include "mlc/constructors.hpp"
#include "mlc/error.hpp"
#include "mlc/generate.hpp"
#include "mlc/random.hpp"

namespace mlc {
namespace {

constexpr int kPerInstance = 4;

Fixture make_fixture(const Instance& inst, int k, std::size_t index, const std::vector<Vertex>& tour) {
  const auto cls = build_candidate_lists(inst, k);
  const auto lp = build_promising_list(cls, std::min(kDefaultPromising, cls.k()));
  index = std::min(index, lp.size() - 1);
  Fixture f{inst, cls.k(), lp[index].i, lp[index].j, offline_edges(lp, index, tour), {}};
  f.image = render_context(inst, cls, f.drawn, f.i, f.j);
  return f;
}

std::string blob_name(std::size_t idx) {
  return (idx < 10 ? "fixture_0" : "fixture_") + std::to_string(idx) + ".blob";
}

}  // namespace

std::vector<Fixture> fixture_set(std::uint64_t seed, int count) {
  if (count < 1) throw ContractError("fixture count must be positive");
  static constexpr int kSizes[] = {5, 10, 30};
  Rng rng(seed);
  std::vector<Fixture> out;
  const int regular = count > 1 ? count - 1 : count;
  const auto instances = generate_instances((regular + kPerInstance - 1) / kPerInstance, 12, 40, seed);
  for (std::size_t t = 0; t < instances.size() && static_cast<int>(out.size()) < regular; ++t) {
    Instance inst = instances[t];
    if (t % 4 == 3) {
      // Large coordinates push anchors through more floor() boundaries.
      auto pts = inst.coords();
      for (auto& p : pts) p = {p.x * 1e4 + 37.0, p.y * 1e4 - 5.0};
      inst = Instance::from_points(inst.name() + "s", std::move(pts), EdgeWeightType::kEuc2DReal);
    }
    const auto tour = multi_fragment(inst).order;
    const int k = kSizes[t % 3];
    const std::size_t lp_size = build_promising_list(build_candidate_lists(inst, k)).size();
    for (int c = 0; c < kPerInstance && static_cast<int>(out.size()) < regular; ++c) {
      const std::size_t index = c == 0 ? 0 : uniform_below(rng, lp_size);
      out.push_back(make_fixture(inst, k, index, tour));
    }
  }
  if (count > 1) {
    // Every point coincides: zero extent, everything lands on the centre.
    std::vector<Point> same(6, Point{0.25, 0.75});
    const auto inst = Instance::from_points("coincident", std::move(same), EdgeWeightType::kEuc2DReal);
    std::vector<Vertex> order{0, 1, 2, 3, 4, 5};
    out.push_back(make_fixture(inst, 3, 4, order));
  }
  return out;
}

void write_fixture_set(const std::filesystem::path& dir, const std::vector<Fixture>& fixtures) {
  std::filesystem::create_directories(dir);
  nlohmann::json doc;
  doc["version"] = 1;
  doc["image"] = {kImageChannels, kImageSize, kImageSize};
  doc["fixtures"] = nlohmann::json::array();
  for (std::size_t idx = 0; idx < fixtures.size(); ++idx) {
    const auto& f = fixtures[idx];
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& p : f.instance.coords()) coords.push_back({p.x, p.y});
    nlohmann::json drawn = nlohmann::json::array();
    for (const auto& e : f.drawn) drawn.push_back({e.u, e.v});
    doc["fixtures"].push_back({{"name", f.instance.name()},
                               {"coords", coords},
                               {"k", f.k},
                               {"edge", {f.i, f.j}},
                               {"drawn", drawn},
                               {"blob", blob_name(idx)}});
    write_blob_file(dir / blob_name(idx), f.image);
  }
  std::ofstream out(dir / "fixtures.json");
  if (!out) throw Error("cannot write " + (dir / "fixtures.json").string());
  out << doc.dump(1) << '\n';
}

std::vector<Fixture> read_fixture_set(const std::filesystem::path& dir) {
  std::ifstream in(dir / "fixtures.json");
  if (!in) throw ParseError(ParseErrorKind::kIo, "cannot open " + (dir / "fixtures.json").string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ParseErrorKind::kMalformed, std::string("fixtures.json: ") + e.what());
  }
  std::vector<Fixture> out;
  for (const auto& item : doc.at("fixtures")) {
    std::vector<Point> pts;
    for (const auto& c : item.at("coords")) pts.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    Fixture f{Instance::from_points(item.at("name").get<std::string>(), std::move(pts),
                                    EdgeWeightType::kEuc2DReal),
              item.at("k").get<int>(), item.at("edge").at(0).get<Vertex>(),
              item.at("edge").at(1).get<Vertex>(), {}, {}};
    for (const auto& e : item.at("drawn")) f.drawn.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    f.image = read_blob_file(dir / item.at("blob").get<std::string>());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace mlc

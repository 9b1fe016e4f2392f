#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mlc/error.hpp"
#include "mlc/generate.hpp"
#include "mlc/instance.hpp"
#include "mlc/random.hpp"
#include "mlc/tsplib.hpp"
#include "support/oracles.hpp"

using namespace mlc;

namespace {

Instance triangle() {
  return Instance::from_points("tri", {{0, 0}, {0, 3}, {4, 0}}, EdgeWeightType::kEuc2D);
}

// GEO from the TSPLIB reference text, written out independently.
double geo_reference(double x1, double y1, double x2, double y2) {
  const double pi = 3.141592;
  auto rad = [pi](double v) {
    const int deg = static_cast<int>(v);
    return pi * (deg + 5.0 * (v - deg) / 3.0) / 180.0;
  };
  const double lat1 = rad(x1), lon1 = rad(y1), lat2 = rad(x2), lon2 = rad(y2);
  const double q1 = std::cos(lon1 - lon2);
  const double q2 = std::cos(lat1 - lat2);
  const double q3 = std::cos(lat1 + lat2);
  return static_cast<int>(6378.388 * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

}  // namespace

TEST_CASE("euclidean 3-4-5") {
  CHECK(euc2d_distance({0, 0}, {3, 4}) == 5);
  CHECK(euc2d_distance({0, 0}, {1, 1}) == 1);      // 1.414 rounds down
  CHECK(euc2d_distance({0, 0}, {1.5, 1.5}) == 2);  // 2.121
  CHECK(euc2d_real_distance({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("att pseudo-euclidean ceiling rule") {
  CHECK(att_distance({0, 0}, {10, 0}) == 4);
  // r = sqrt(1000/10) = 10 exactly, no bump.
  CHECK(att_distance({0, 0}, {0, std::sqrt(1000.0)}) == 10);
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Point a{uniform01(rng) * 5000, uniform01(rng) * 5000};
    const Point b{uniform01(rng) * 5000, uniform01(rng) * 5000};
    const double r = std::sqrt(((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)) / 10.0);
    const double t0 = oracle::tsplib_nint(r);
    CHECK(att_distance(a, b) == (t0 < r ? t0 + 1 : t0));
  }
}

TEST_CASE("geo matches the reference formula") {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const Point a{uniform01(rng) * 140 - 70, uniform01(rng) * 340 - 170};
    const Point b{uniform01(rng) * 140 - 70, uniform01(rng) * 340 - 170};
    CHECK(geo_distance(a, b) == geo_reference(a.x, a.y, b.x, b.y));
  }
}

TEST_CASE("triangle tour length and reverse symmetry") {
  const auto inst = triangle();
  CHECK(inst.size() == 3);
  CHECK(tour_length(inst, std::vector<Vertex>{0, 1, 2}) == 12);
  CHECK(tour_length(inst, std::vector<Vertex>{2, 1, 0}) == 12);
  CHECK_THROWS_AS(tour_length(inst, std::vector<Vertex>{0, 0, 2}), ContractError);
  CHECK_THROWS_AS(tour_length(inst, std::vector<Vertex>{0, 1}), ContractError);
}

TEST_CASE("cost accessor contract") {
  const auto inst = triangle();
  CHECK(inst.cost(0, 1) == 3);
  CHECK(inst.cost(1, 0) == 3);
  CHECK_THROWS_AS(inst.cost(1, 1), ContractError);
  CHECK_THROWS_AS(inst.cost(0, 3), ContractError);
  CHECK_THROWS_AS(Instance::from_points("x", {{0, 0}, {1, 1}}, EdgeWeightType::kEuc2D), ContractError);
}

TEST_CASE("from_matrix validation") {
  CHECK_NOTHROW(Instance::from_matrix("m", {0, 1, 2, 1, 0, 3, 2, 3, 0}, 3));
  CHECK_THROWS_AS(Instance::from_matrix("m", {0, 1, 2, 9, 0, 3, 2, 3, 0}, 3), ContractError);
  CHECK_THROWS_AS(Instance::from_matrix("m", {1, 1, 2, 1, 0, 3, 2, 3, 0}, 3), ContractError);
  CHECK_THROWS_AS(Instance::from_matrix("m", {0, 1, 1, 0}, 2), ContractError);
}

TEST_CASE("percentage error") {
  CHECK(percentage_error(21282, 21282) == 0.0);
  CHECK(std::abs(percentage_error(23410.2, 21282) - 10.0) < 1e-9);
  CHECK_THROWS_AS(percentage_error(10, 0), ContractError);
  CHECK_THROWS_AS(percentage_error(10, -1), ContractError);
}

TEST_CASE("random euclidean instances: symmetry and triangle slack") {
  Rng rng(3);
  std::vector<Point> pts;
  for (int i = 0; i < 60; ++i) pts.push_back({uniform01(rng) * 1000, uniform01(rng) * 1000});
  const auto inst = Instance::from_points("r", pts, EdgeWeightType::kEuc2D);
  for (int t = 0; t < 1000; ++t) {
    const auto i = static_cast<Vertex>(uniform_below(rng, 60));
    const auto j = static_cast<Vertex>(uniform_below(rng, 60));
    const auto h = static_cast<Vertex>(uniform_below(rng, 60));
    CHECK(inst(i, j) == inst(j, i));
    CHECK(inst(j, h) <= inst(j, i) + inst(i, h) + 1);
  }
}

TEST_CASE("gap report") {
  const auto inst = triangle();
  const auto tour = make_tour(inst, {0, 1, 2});
  const auto r = gap_report(inst, tour, 10);
  CHECK(r.instance == "tri");
  CHECK(r.length == 12);
  CHECK(r.gap == doctest::Approx(20.0));
}

TEST_CASE("tour edges are normalised") {
  const std::vector<Vertex> order{2, 0, 1};
  const auto e = tour_edges(order);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == Edge(0, 2));
  CHECK(e[1] == Edge(0, 1));
  CHECK(e[2] == Edge(1, 2));
}

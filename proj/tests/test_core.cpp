#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "fhp/core.hpp"
#include "fhp/io.hpp"
#include "fhp/rng.hpp"
#include "support/oracles.hpp"

using namespace fhp;
using Catch::Approx;

namespace {
PointSet make(std::vector<Vec> rows) { return PointSet::from_rows(rows); }
}  // namespace

TEST_CASE("margin_of on direct inner products") {
  const PointSet two = make({{1, 0}, {0.5, 0}});
  CHECK(margin_of(Vec{1, 0}, two) == Approx(0.5));
  const PointSet one = make({{1, 0}});
  CHECK(margin_of(Vec{0, 1}, one) == Approx(0.0).margin(1e-15));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(margin_of(Vec{inv_sqrt2, inv_sqrt2}, one) == Approx(0.70710678118654752));
}

TEST_CASE("margin_of rejects non-unit normals") {
  const PointSet one = make({{1, 0}});
  CHECK_THROWS_AS(margin_of(Vec{1, 1}, one), input_error);
  CHECK_THROWS_AS(margin_of(Vec{0.5, 0}, one), input_error);
}

TEST_CASE("labeling_of sign patterns and the tie rule") {
  {
    const PointSet ps = make({{1, 0}, {-1, 0}});
    const Labeling l = labeling_of(Vec{1, 0}, ps);
    CHECK(l.labels == std::vector<std::int8_t>{+1, -1});
    CHECK(l.feasible);
  }
  {
    // Orthogonal point: <w,x> = 0 labels +1; the induced labeling is the
    // (feasible) all-plus labeling of a single point.
    const PointSet ps = make({{1, 0}});
    const Labeling l = labeling_of(Vec{0, 1}, ps);
    CHECK(l.labels == std::vector<std::int8_t>{+1});
    CHECK(l.feasible);
    CHECK(l.solved_margin == Approx(1.0));
  }
  {
    const PointSet ps = make({{1, 0}, {0, -1}});
    const Labeling l = labeling_of(Vec{0.6, 0.8}, ps);
    CHECK(l.labels == std::vector<std::int8_t>{+1, -1});
  }
}

TEST_CASE("solve_labeled on a single point") {
  const PointSet ps = make({{1, 0}});
  const Labeling l = solve_labeled({+1}, ps);
  REQUIRE(l.feasible);
  CHECK(l.solved_margin == Approx(1.0).epsilon(1e-12));
  REQUIRE(l.witness);
  CHECK(l.witness->normal[0] == Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(l.witness->normal[1]) < 1e-9);
}

TEST_CASE("solve_labeled matches the convex-combination grid on a segment") {
  // Independent oracle: distance from the origin to conv{(1,0),(0,1)} by a
  // dense grid over the combination weight.
  double grid_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 1'000'000; ++k) {
    const double lam = static_cast<double>(k) / 1'000'000.0;
    grid_min = std::min(grid_min, std::hypot(lam, 1.0 - lam));
  }
  CHECK(grid_min == Approx(0.70710678118654752).epsilon(1e-9));

  const PointSet ps = make({{1, 0}, {0, 1}});
  const Labeling l = solve_labeled({+1, +1}, ps);
  REQUIRE(l.feasible);
  CHECK(l.solved_margin == Approx(grid_min).epsilon(1e-9));
  REQUIRE(l.witness);
  CHECK(l.witness->normal[0] == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(l.witness->normal[1] == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("solve_labeled reports hull-through-origin as infeasible") {
  const PointSet ps = make({{1, 0}, {-1, 0}});
  const Labeling l = solve_labeled({+1, +1}, ps);
  CHECK_FALSE(l.feasible);
  CHECK(l.solved_margin == 0.0);
  CHECK_FALSE(l.witness.has_value());
}

TEST_CASE("zero points make every labeling infeasible but are not dropped") {
  const PointSet ps = make({{0.5, 0}, {0, 0}});
  CHECK(ps.size() == 2);
  const Labeling l = solve_labeled({+1, +1}, ps);
  CHECK_FALSE(l.feasible);
  const Labeling r = solve_labeled({+1, -1}, ps);
  CHECK_FALSE(r.feasible);
}

TEST_CASE("normalize_instance divides by the max norm and records it") {
  {
    const PointSet ps = normalize_instance({{2, 0}});
    CHECK(ps.scale() == Approx(2.0));
    CHECK(ps.point(0)[0] == Approx(1.0));
  }
  {
    const PointSet ps = normalize_instance({{1, 0}, {0, 0.5}});
    CHECK(ps.scale() == Approx(1.0));
    CHECK(ps.point(1)[1] == Approx(0.5));
  }
  {
    const PointSet ps = normalize_instance({{3, 4}});
    CHECK(ps.scale() == Approx(5.0));
    CHECK(ps.point(0)[0] == Approx(0.6));
    CHECK(ps.point(0)[1] == Approx(0.8));
  }
  CHECK_THROWS_AS(normalize_instance({{0, 0}, {0, 0}}), input_error);
}

TEST_CASE("PointSet validates its invariants") {
  CHECK_THROWS_AS(PointSet(1, 2, Vec{2.0, 0.0}), input_error);       // norm > 1
  CHECK_THROWS_AS(PointSet(2, 2, Vec{0.1, 0.1}), input_error);       // short data
  CHECK_THROWS_AS(PointSet(1, 2, Vec{0.1, NAN}), input_error);       // non-finite
  CHECK_NOTHROW(PointSet(1, 1, Vec{1.0 + 0.5e-9}));                  // inside tolerance
}

TEST_CASE("an exhausted iteration cap raises with the bound pair") {
  const PointSet ps = make({{1, 0}, {0, 1}, {-0.3, 0.7}});
  MinNormOptions opt;
  opt.iter_cap_factor = 0;  // force the cap before the first improvement
  try {
    solve_labeled({+1, +1, +1}, ps, opt);
    FAIL("expected convergence_error");
  } catch (const convergence_error& e) {
    CHECK(e.lower_bound >= 0.0);
    CHECK(e.lower_bound <= e.upper_bound + 1e-12);
    CHECK(e.upper_bound <= 1.0 + 1e-12);
  }
}

TEST_CASE("labeling_of rejects non-unit normals") {
  const PointSet ps = make({{1, 0}});
  CHECK_THROWS_AS(labeling_of(Vec{2, 0}, ps), input_error);
}

TEST_CASE("feasible witnesses satisfy their own labeling") {
  Rng rng(404);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const std::size_t d = 1 + rng.below(3);
    std::vector<Vec> rows(n);
    for (auto& r : rows) {
      r = rng.gaussian_vector(d);
      scale_in_place(r, 0.9 / std::max(1.0, norm(r)));
    }
    const PointSet ps = PointSet::from_rows(rows);
    std::vector<std::int8_t> labels(n);
    for (auto& s : labels) s = rng.uniform01() < 0.5 ? -1 : +1;
    const Labeling l = solve_labeled(labels, ps);
    CHECK(l.feasible == (l.solved_margin > tol_feas));
    if (!l.feasible) continue;
    REQUIRE(l.witness);
    CHECK(is_unit(l.witness->normal, 1e-12));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(static_cast<double>(l.labels[i]) * dot(l.witness->normal, ps.point(i)) >=
            l.solved_margin - tol_feas);
    // Where the witness is clear of the boundary its induced labeling agrees.
    const auto induced = signs_of(l.witness->normal, ps);
    for (std::size_t i = 0; i < n; ++i)
      if (std::fabs(dot(l.witness->normal, ps.point(i))) > tol_feas)
        CHECK(induced[i] == l.labels[i]);
  }
}

TEST_CASE("solve_labeled is symmetric under label negation") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const std::size_t d = 1 + rng.below(3);
    std::vector<Vec> rows(n);
    for (auto& r : rows) {
      r = rng.gaussian_vector(d);
      scale_in_place(r, 0.9 / std::max(1.0, norm(r)));
    }
    const PointSet ps = PointSet::from_rows(rows);
    std::vector<std::int8_t> labels(n), flipped(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = rng.uniform01() < 0.5 ? -1 : +1;
      flipped[i] = static_cast<std::int8_t>(-labels[i]);
    }
    const Labeling a = solve_labeled(labels, ps);
    const Labeling b = solve_labeled(flipped, ps);
    CHECK(a.feasible == b.feasible);
    CHECK(a.solved_margin == Approx(b.solved_margin).margin(1e-9));
  }
}

TEST_CASE("solve_labeled matches the sphere-sampling oracle at desk scale") {
  Rng rng(2024);
  int feasible_seen = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const std::size_t d = 2 + rng.below(2);
    std::vector<Vec> rows(n);
    for (auto& r : rows) {
      r = rng.gaussian_vector(d);
      scale_in_place(r, 0.95 / std::max(1.0, norm(r)));
    }
    const PointSet ps = PointSet::from_rows(rows);
    std::vector<std::int8_t> labels(n);
    for (auto& s : labels) s = rng.uniform01() < 0.5 ? -1 : +1;
    const Labeling l = solve_labeled(labels, ps);
    const double oracle = testing::oracle_labeled_margin(labels, ps, 100'000, 99 + trial);
    if (l.feasible) {
      ++feasible_seen;
      CHECK(l.solved_margin == Approx(oracle).margin(1e-4));
    } else {
      CHECK(oracle <= 1e-4);
    }
  }
  CHECK(feasible_seen > 0);
}

TEST_CASE("margin_of is invariant under simultaneous rotation") {
  Rng rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    const std::size_t d = 2 + rng.below(2);
    std::vector<Vec> rows(n);
    for (auto& r : rows) {
      r = rng.gaussian_vector(d);
      scale_in_place(r, 0.9 / std::max(1.0, norm(r)));
    }
    const PointSet ps = PointSet::from_rows(rows);
    const Vec w = sample_unit_vector(rng, d);
    const auto rot = testing::random_rotation(d, rng);
    std::vector<Vec> rotated(n);
    for (std::size_t i = 0; i < n; ++i)
      rotated[i] = testing::apply_rotation(rot, ps.point(i));
    const PointSet ps_rot = PointSet::from_rows(rotated);
    const Vec w_rot = normalized(testing::apply_rotation(rot, w));
    CHECK(margin_of(w, ps) == Approx(margin_of(w_rot, ps_rot)).margin(1e-9));
  }
}

TEST_CASE("point-set text format round-trips exactly") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const std::size_t d = 1 + rng.below(4);
    std::vector<Vec> rows(n);
    for (auto& r : rows) {
      r = rng.gaussian_vector(d);
      scale_in_place(r, rng.uniform01() / std::max(1.0, norm(r)));
    }
    const PointSet ps = normalize_instance(rows);
    std::stringstream ss;
    write_point_set(ss, ps);
    const PointSet back = read_point_set(ss);
    REQUIRE(back.size() == ps.size());
    REQUIRE(back.dim() == ps.dim());
    CHECK(back.scale() == ps.scale());
    CHECK(back.data() == ps.data());
    // Writing again yields identical bytes.
    std::stringstream ss2;
    write_point_set(ss2, back);
    std::stringstream ss3;
    write_point_set(ss3, ps);
    CHECK(ss2.str() == ss3.str());
  }
}

TEST_CASE("point-set parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_point_set(is);
  };
  CHECK_THROWS_AS(parse(""), input_error);
  CHECK_THROWS_AS(parse("fhp v2 n=1 d=1 scale=1\n1\n"), input_error);
  CHECK_THROWS_AS(parse("fhp v1 n=2 d=1 scale=1\n1\n"), input_error);
  CHECK_THROWS_AS(parse("fhp v1 n=1 d=2 scale=1\n0.5\n"), input_error);
  CHECK_THROWS_AS(parse("fhp v1 n=1 d=1 scale=1\n0.5 0.5\n"), input_error);
}

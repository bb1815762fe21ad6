#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "exz/error.hpp"
#include "exz/geometry/boundary.hpp"
#include "exz/geometry/corners.hpp"

using namespace exz;
using namespace exz::geom;

namespace {

Domain unit_square() { return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
Domain l_shape() { return make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::BadInput;
}

Real cells_area(const std::vector<num::Cell>& cells) {
  Real s(0);
  for (const auto& c : cells) s += num::cell_area(c);
  return s;
}

}  // namespace

TEST_CASE("scalar grammar") {
  CHECK(Scalar::parse("0.25").to_double() == 0.25);
  CHECK(Scalar::parse("-1/4").to_double() == -0.25);
  CHECK(abs(Scalar::parse("3pi/4").value() - Real(3) * pi() / Real(4)).to_double() < 1e-300);
  CHECK(abs(Scalar::parse("-0.75*pi").value() + Real(3) * pi() / Real(4)).to_double() < 1e-300);
  CHECK(abs(Scalar::parse("pi").value() - pi()).to_double() < 1e-300);
  CHECK(Scalar::from_double(0.1).to_double() == 0.1);
  CHECK_THROWS_AS(Scalar::parse("pie"), Error);
  CHECK_THROWS_AS(Scalar::parse(""), Error);
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
}

TEST_CASE("validate: unit square") {
  Domain d = validate(unit_square());
  CHECK(area(d).to_double() == 1.0);
}

TEST_CASE("validate: clockwise square is flipped") {
  std::vector<std::string> warnings;
  Domain d = validate(make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("ClockwiseInput") != std::string::npos);
  const auto& v = std::get<Polygon>(d.shape).vertices;
  CHECK(v[0].to_std() == cplx(0, 0));
  CHECK(v[1].to_std() == cplx(1, 0));
  CHECK(v[2].to_std() == cplx(1, 1));
  CHECK(area(d).to_double() == 1.0);
}

TEST_CASE("validate: overlapping disks") {
  CHECK(code_of([] { validate(make_union({make_disk(0, 0, 1), make_disk(1, 0, 1)})); }) == Errc::OverlappingUnionParts);
  CHECK(code_of([] { validate(make_union({make_disk(0, 0, 1), make_disk(2, 0, 1)})); }) == Errc::OverlappingUnionParts);
  CHECK_NOTHROW(validate(make_union({make_disk(0, 0, 1), make_disk(2.5, 0, 1)})));
}

TEST_CASE("validate: overlapping polygons and nesting") {
  Domain a = unit_square();
  Domain b = make_polygon({{0.5, 0.5}, {3, 0.5}, {3, 3}, {0.5, 3}});
  CHECK(code_of([&] { validate(make_union({a, b})); }) == Errc::OverlappingUnionParts);
  Domain inner = make_polygon({{0.2, 0.2}, {0.4, 0.2}, {0.4, 0.4}});
  CHECK(code_of([&] { validate(make_union({a, inner})); }) == Errc::OverlappingUnionParts);
  Domain far = make_polygon({{3, 0}, {4, 0}, {4, 1}});
  CHECK_NOTHROW(validate(make_union({a, far})));
}

TEST_CASE("validate: errors") {
  CHECK(code_of([] { validate(make_polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}})); }) == Errc::SelfIntersecting);
  CHECK(code_of([] { validate(make_sector(0, 0, 1, "0", "2pi")); }) == Errc::DegenerateSector);
  CHECK(code_of([] { validate(make_sector(0, 0, 1, "1", "1")); }) == Errc::DegenerateSector);
  CHECK(code_of([] { validate(make_sector(0, 0, 0, "0", "1")); }) == Errc::DegenerateSector);
  CHECK(code_of([] { validate(make_polygon({{0, 0}, {1, 0}, {2, 0}})); }) == Errc::InvalidShape);
}

TEST_CASE("validate: duplicate vertices merged") {
  std::vector<std::string> warnings;
  Domain d = validate(make_polygon({{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}), &warnings);
  CHECK(std::get<Polygon>(d.shape).vertices.size() == 4);
  CHECK(!warnings.empty());
}

TEST_CASE("corner_scan: unit square") {
  auto c = corner_scan(validate(unit_square()));
  REQUIRE(c.size() == 4);
  for (const auto& r : c) {
    CHECK(r.classification == CornerClass::convex);
    CHECK(abs(r.interior_angle - pi() / Real(2)).to_double() < 1e-300);
  }
}

TEST_CASE("corner_scan: L-shape") {
  auto c = corner_scan(validate(l_shape()));
  REQUIRE(c.size() == 6);
  int convex = 0, ic = 0;
  for (const auto& r : c) {
    if (r.classification == CornerClass::convex) ++convex;
    if (r.classification == CornerClass::inward_corner) {
      ++ic;
      CHECK(r.location.to_std() == cplx(1, 1));
      CHECK(abs(r.interior_angle - Real(3) * pi() / Real(2)).to_double() < 1e-300);
      REQUIRE(r.ic_sector);
      CHECK((r.ic_sector->beta - r.ic_sector->alpha) > 1.0);
      CHECK(r.ic_sector->r > 0.0);
    }
  }
  CHECK(convex == 5);
  CHECK(ic == 1);
}

TEST_CASE("corner_scan: 3pi/2 sector") {
  auto c = corner_scan(validate(make_sector(0, 0, 1, "-3pi/4", "3pi/4")));
  REQUIRE(c.size() == 3);
  CHECK(c[0].classification == CornerClass::inward_corner);
  CHECK(abs(c[0].interior_angle - Real(3) * pi() / Real(2)).to_double() < 1e-300);
  CHECK(c[1].classification == CornerClass::convex);
  CHECK(abs(c[1].interior_angle - pi() / Real(2)).to_double() < 1e-300);
  CHECK(corner_scan(validate(make_disk(0, 0, 1))).empty());
}

TEST_CASE("property: IC sector lies inside the domain") {
  Domain d = validate(l_shape());
  for (const auto& r : corner_scan(d)) {
    if (!r.ic_sector) continue;
    cplx z0 = r.location.to_std();
    double a = r.ic_sector->alpha.to_double() * M_PI, b = r.ic_sector->beta.to_double() * M_PI;
    double rr = r.ic_sector->r.to_double();
    for (int i = 0; i <= 20; ++i)
      for (int j = 1; j <= 10; ++j) {
        cplx z = z0 + std::polar(rr * j / 10.0, a + (b - a) * i / 20.0);
        CHECK(distance_to_boundary(d, z) > 0);
      }
  }
}

TEST_CASE("property: corner classification is invariant under similarity") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  Domain base = validate(l_shape());
  auto c0 = corner_scan(base);
  for (int t = 0; t < 5; ++t) {
    Complex a = polar(Real(0.5 + std::abs(U(rng))), Real(U(rng)));
    Domain moved = validate(similarity(base, a, Complex(U(rng), U(rng))));
    auto c1 = corner_scan(moved);
    REQUIRE(c1.size() == c0.size());
    for (std::size_t i = 0; i < c0.size(); ++i) {
      CHECK(c0[i].classification == c1[i].classification);
      CHECK(abs(c0[i].interior_angle - c1[i].interior_angle).to_double() < 1e-250);
      if (c0[i].ic_sector) CHECK(abs(c1[i].ic_sector->r - c0[i].ic_sector->r * abs(a)).to_double() < 1e-10);
    }
  }
}

TEST_CASE("theorem_verdict") {
  CHECK(theorem_verdict(validate(l_shape())).full_sequence_convergence_predicted);
  CHECK_FALSE(theorem_verdict(validate(unit_square())).full_sequence_convergence_predicted);
  Domain two = make_union({l_shape(), similarity(l_shape(), Complex(1), Complex(5, 0))});
  TheoremVerdict v = theorem_verdict(validate(two));
  CHECK(v.components.size() == 2);
  CHECK(v.full_sequence_convergence_predicted);
  Domain mixed = make_union({l_shape(), similarity(unit_square(), Complex(1), Complex(5, 0))});
  CHECK_FALSE(theorem_verdict(validate(mixed)).full_sequence_convergence_predicted);
  CHECK(theorem_verdict(validate(make_sector(0, 0, 1, "-3pi/4", "3pi/4"))).full_sequence_convergence_predicted);
  CHECK_FALSE(theorem_verdict(validate(make_sector(0, 0, 1, "-pi/4", "pi/4"))).full_sequence_convergence_predicted);
}

TEST_CASE("property: verdict on random convex and reentrant polygons") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(0, 2 * M_PI);
  for (int t = 0; t < 10; ++t) {
    // Convex: sorted angles on a circle.
    std::vector<double> ang;
    for (int i = 0; i < 7; ++i) ang.push_back(U(rng));
    std::sort(ang.begin(), ang.end());
    std::vector<std::pair<double, double>> pts;
    for (double a : ang) pts.emplace_back(std::cos(a), std::sin(a));
    CHECK_FALSE(theorem_verdict(validate(make_polygon(pts))).full_sequence_convergence_predicted);
    // Star-shaped with one dent pulled toward the center.
    std::vector<std::pair<double, double>> star;
    for (int i = 0; i < 8; ++i) {
      double a = 2 * M_PI * i / 8, r = i == 3 ? 0.3 : 1.0;
      star.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    CHECK(theorem_verdict(validate(make_polygon(star))).full_sequence_convergence_predicted);
  }
}

TEST_CASE("triangulate") {
  auto sq = triangulate(validate(unit_square()));
  CHECK(sq.size() == 2);
  CHECK(abs(cells_area(sq) - Real(1)).to_double() < 1e-300);
  auto disk = triangulate(validate(make_disk(0, 0, 1)));
  CHECK(abs(cells_area(disk) - pi()).to_double() < 1e-50);
  auto l = triangulate(validate(l_shape()));
  CHECK(l.size() == 4);
  CHECK(abs(cells_area(l) - Real(3)).to_double() < 1e-300);
  auto sec = triangulate(validate(make_sector(0, 0, 1, "-3pi/4", "3pi/4")));
  CHECK(sec.size() == 3);
  CHECK(abs(cells_area(sec) - Real(3) * pi() / Real(4)).to_double() < 1e-300);
}

TEST_CASE("property: triangulation partitions random polygons") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> U(0.3, 1.0);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::pair<double, double>> star;
    const int n = 12;
    for (int i = 0; i < n; ++i) {
      double a = 2 * M_PI * i / n, r = U(rng);
      star.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    Domain d = validate(make_polygon(star));
    auto cells = triangulate(d);
    CHECK(cells.size() == n - 2);
    Real rel = abs(cells_area(cells) - area(d)) / area(d);
    CHECK(rel <= pow(Real(10), -256L));
  }
}

TEST_CASE("distance_to_boundary") {
  CHECK(distance_to_boundary(validate(make_disk(0, 0, 1)), {0, 0}) == 1.0);
  CHECK(distance_to_boundary(validate(unit_square()), {0.5, 0.5}) == 0.5);
  CHECK(distance_to_boundary(validate(unit_square()), {2, 0.5}) == -1.0);
  CHECK(distance_to_boundary(validate(unit_square()), {1, 0.5}) == 0.0);
  Domain sec = validate(make_sector(0, 0, 1, "-3pi/4", "3pi/4"));
  CHECK(distance_to_boundary(sec, {-0.5, 0}) < 0);
  CHECK(distance_to_boundary(sec, {0.5, 0}) == doctest::Approx(0.5));
}

TEST_CASE("property: distance is 1-Lipschitz") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-2.5, 2.5);
  for (const Domain& d : {validate(l_shape()), validate(make_sector(0, 0, 1, "-3pi/4", "3pi/4")),
                          validate(make_union({make_disk(0, 0, 1), make_disk(3, 0, 1)}))}) {
    for (int t = 0; t < 500; ++t) {
      cplx a(U(rng), U(rng)), b(U(rng), U(rng));
      CHECK(std::abs(distance_to_boundary(d, a) - distance_to_boundary(d, b)) <= std::abs(a - b) + 1e-12);
    }
  }
}

TEST_CASE("hull excess") {
  Domain sec = validate(make_sector(0, 0, 1, "-3pi/4", "3pi/4"));
  CHECK(hull_excess(sec, {0, 0}) < 0);
  CHECK(hull_excess(sec, {-0.5, 0}) < 0);  // in the hull although outside the sector
  CHECK(hull_excess(sec, {2, 0}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hull_excess(sec, {-1, 0}) == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("geometry helpers") {
  Domain sq = validate(unit_square());
  CHECK(diameter(sq) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(centroid(sq) - cplx(0.5, 0.5)) < 1e-15);
  Domain fig3 = validate(make_sector(0, 0, 1, "-pi/4", "pi/4"));
  CHECK(std::abs(centroid(fig3) - cplx(4 * std::sqrt(2.0) / (3 * M_PI), 0)) < 1e-12);
  CHECK(boundary_length(fig3) == doctest::Approx(2 + M_PI / 2));
  auto mesh = boundary_mesh(validate(make_disk(0, 0, 1)), 8);
  CHECK(std::abs(mesh[2] - cplx(0, 1)) < 1e-12);
}

TEST_CASE("json round trip") {
  const std::string text = R"({"domain": {"kind": "union", "parts": [
      {"kind": "polygon", "vertices": [[0,0],[0,1],[1,1],[1,0]]},
      {"kind": "sector", "vertex": ["3", "0"], "radius": "0.5", "angle_start": "-3pi/4", "angle_end": "3pi/4"},
      {"kind": "disk", "center": [6, 0], "radius": 1.5}]}})";
  Domain d = validate(parse_domain_text(text));
  nlohmann::json j = domain_to_json(d);
  Domain again = validate(parse_domain_json(j));
  CHECK(domain_to_json(again) == j);
  CHECK(j["parts"][1]["angle_start"] == "-3pi/4");
  // Orientation normalized: (0,0),(1,0),(1,1),(0,1).
  CHECK(j["parts"][0]["vertices"][1][0] == "1");
  CHECK(code_of([] { parse_domain_text("{not json"); }) == Errc::BadInput);
  CHECK(code_of([] { parse_domain_text(R"({"domain": {"kind": "blob"}})"); }) == Errc::BadInput);
  CHECK(code_of([] { parse_domain_text(R"({"domain": {"kind": "disk", "center": [0]}})"); }) == Errc::BadInput);
}

#include "doctest.h"

#include "bispec/glyph.hpp"
#include "test_util.hpp"

using namespace bispec;
using test::kPi;

namespace {

Image blob(int size, double sigma, double cx, double cy) {
  Image img(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      const double x = 2.0 * (c + 0.5) / size - 1.0, y = 1.0 - 2.0 * (r + 0.5) / size;
      img.at(r, c) = std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (2 * sigma * sigma)) * (1.0 + 0.5 * x);
    }
  return img;
}

double max_difference(const SphereFunction& a, const SphereFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST_CASE("planar motion to rotation") {
  const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
  CHECK((planar_motion_to_rotation({}).rotation_matrix() - I).norm() < 1e-15);

  const double alpha = 0.9;
  const Eigen::Matrix3d Rz = Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  CHECK((planar_motion_to_rotation({alpha, 0, 0}).rotation_matrix() - Rz).norm() < 1e-14);

  const double theta0 = 0.4;
  const EulerAngles e = to_euler(planar_motion_to_rotation({0.0, std::sin(theta0), 0.0}));
  CHECK(e.beta == doctest::Approx(theta0).epsilon(1e-14));
  CHECK(std::abs(e.alpha) < 1e-14);
  CHECK(std::abs(e.gamma) < 1e-14);

  // The pole goes to (tx, ty, cos theta).
  const PlanarMotion m{1.3, 0.3, -0.4};
  const Eigen::Vector3d pole = planar_motion_to_rotation(m).rotation_matrix() * Eigen::Vector3d::UnitZ();
  CHECK((pole - Eigen::Vector3d(0.3, -0.4, std::sqrt(1 - 0.25))).norm() < 1e-14);

  CHECK_THROWS_AS(planar_motion_to_rotation({0.0, 0.8, 0.8}), DomainError);
  CHECK_NOTHROW(planar_motion_to_rotation({0.0, 1.0, 0.0}));
}

TEST_CASE("composing planar motions") {
  // Quarter turns about the centre compose to a half turn.
  const Image img = blob(48, 0.2, 0.1, 0.0);
  const Image once = apply_planar_motion(img, {kPi / 2, 0, 0});
  const Image twice = apply_planar_motion(once, {kPi / 2, 0, 0});
  const Image half_turn = apply_planar_motion(img, {kPi, 0, 0});
  double m = 0.0;
  for (std::size_t i = 0; i < twice.pixels.size(); ++i) m = std::max(m, std::abs(twice.pixels[i] - half_turn.pixels[i]));
  CHECK(m < 1e-12);

  // Translation moves the intensity peak.
  const Image moved = apply_planar_motion(blob(64, 0.1, 0.0, 0.0), {0.0, 0.25, 0.0});
  const auto peak = std::max_element(moved.pixels.begin(), moved.pixels.end()) - moved.pixels.begin();
  const int col = static_cast<int>(peak % 64);
  CHECK(2.0 * (col + 0.5) / 64 - 1.0 == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("lift of simple images") {
  Image ones(32, 32);
  std::fill(ones.pixels.begin(), ones.pixels.end(), 1.0);
  const SphereFunction s = lift_image(ones, 8);
  const SphereGrid g = s.grid();
  for (int j = 0; j < g.n_theta(); ++j)
    for (int k = 0; k < g.n_phi(); ++k) CHECK(s.at(j, k) == (g.theta(j) < kPi / 2 ? 1.0 : 0.0));

  const SphereFunction dot = lift_image(blob(64, 0.05, 0.0, 0.0), 16);
  double near_pole = 0.0, total = 0.0;
  for (int j = 0; j < dot.grid().n_theta(); ++j)
    for (int k = 0; k < dot.grid().n_phi(); ++k) {
      const double w = dot.grid().weight(j) * dot.at(j, k);
      total += w;
      if (dot.grid().theta(j) < 0.25) near_pole += w;
    }
  CHECK(near_pole > 0.95 * total);

  CHECK_THROWS_AS(lift_image(Image{}, 8), DomainError);
  CHECK_THROWS_AS(lift_image(ones, 1), DomainError);
}

TEST_CASE("lifting commutes with planar motion up to interpolation") {
  // Smooth image, small motions, B = 16.
  const Image img = blob(64, 0.25, 0.1, -0.05);
  const SphereFunction base = lift_image(img, 16);
  auto rng = test::rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    const double r = test::uniform(rng, 0.0, 0.1), dir = test::uniform(rng, 0.0, 2 * kPi);
    const PlanarMotion m{test::uniform(rng, 0.0, 2 * kPi), r * std::cos(dir), r * std::sin(dir)};
    const SphereFunction moved = lift_image(apply_planar_motion(img, m), 16);
    const SphereFunction rotated = rotate_sphere(base, planar_motion_to_rotation(m).inverse());
    CAPTURE(trial);
    CHECK(max_difference(moved, rotated) <= 5e-2);
  }
}

TEST_CASE("glyph rendering") {
  const auto labels = glyph_labels();
  CHECK(labels.size() >= 5);
  for (const std::string& l : demo_glyph_labels()) CHECK(std::find(labels.begin(), labels.end(), l) != labels.end());
  for (const std::string& l : labels) {
    const Image g = render_glyph(l, 64);
    int ink = 0, partial = 0;
    for (double v : g.pixels) {
      CHECK((v >= 0.0 && v <= 1.0));
      ink += v == 1.0;
      partial += v > 0.0 && v < 1.0;
    }
    CAPTURE(l);
    CHECK(ink > 100);
    CHECK(partial < ink);
    // Ink stays well inside the disk.
    for (int r = 0; r < 64; ++r)
      for (int c = 0; c < 64; ++c)
        if (g.at(r, c) > 0.0) CHECK(std::hypot(2.0 * (c + 0.5) / 64 - 1.0, 1.0 - 2.0 * (r + 0.5) / 64) < 0.6);
  }
  CHECK_THROWS_AS(render_glyph("?"), DomainError);
}

TEST_CASE("smoothing") {
  Image ones(20, 20);
  std::fill(ones.pixels.begin(), ones.pixels.end(), 1.0);
  const Image s = smooth_image(ones, 0.1);
  CHECK(s.at(10, 10) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.at(0, 0) < 0.5);
  CHECK(smooth_image(ones, 0.0).pixels == ones.pixels);
}

TEST_CASE("descriptor is unchanged by brightness") {
  const Image g = render_glyph("P", 48);
  Image dim = g;
  for (double& v : dim.pixels) v *= 0.3;
  CHECK(descriptor_relative_difference(glyph_descriptor(g, 12, 4), glyph_descriptor(dim, 12, 4)) < 1e-12);
  CHECK_THROWS_AS(glyph_descriptor(Image(16, 16), 8, 2), DomainError);
}

TEST_CASE("matching") {
  GlyphIndex index{12, 4, {}};
  for (const std::string& l : {"T", "L", "O"}) index.add(l, render_glyph(l, 48), "synthetic:" + l);
  index.validate();

  const auto self = match(render_glyph("O", 48), index);
  REQUIRE(self.size() == 3);
  CHECK(self[0].label == "O");
  CHECK(self[0].distance == 0.0);
  CHECK(self[1].distance <= self[2].distance);

  const auto rotated = match(apply_planar_motion(render_glyph("L", 48), {2.0, 0.04, -0.03}), index);
  CHECK(rotated[0].label == "L");

  const auto unseen = match(render_glyph("X", 48), index);
  CHECK(unseen.size() == 3);
  for (const MatchEntry& e : unseen) CHECK(e.distance > 0.0);

  // Equal distances fall back to label order.
  GlyphIndex twins{12, 4, {}};
  twins.add("b", render_glyph("E", 48), "");
  twins.add("a", render_glyph("E", 48), "");
  const auto tied = match(render_glyph("E", 48), twins);
  CHECK(tied[0].label == "a");
  CHECK(tied[1].label == "b");

  CHECK_THROWS_AS(match(render_glyph("E", 48), GlyphIndex{12, 4, {}}), PreconditionError);
  CHECK_THROWS_AS(match(glyph_descriptor(render_glyph("E", 48), 12, 3), index), DomainError);

  GlyphIndex mixed = index;
  mixed.records[0].descriptor = glyph_descriptor(render_glyph("E", 48), 12, 3);
  CHECK_THROWS_AS(mixed.validate(), DomainError);
}

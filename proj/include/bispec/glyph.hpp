#pragma once

#include <string>
#include <vector>

#include "bispec/bispectrum.hpp"
#include "bispec/image.hpp"
#include "bispec/sphere.hpp"

namespace bispec {

// Images live on the unit disk: pixel (row, col) of a W x H image sits at
// x = 2 (col + 0.5) / W - 1, y = 1 - 2 (row + 0.5) / H.

/// Rigid motion of the disk: p -> R(alpha) p + (tx, ty).
struct PlanarMotion {
  double alpha = 0.0;
  double tx = 0.0;
  double ty = 0.0;

  /// Throws DomainError unless ||(tx, ty)|| <= 1.
  void validate() const;
};

/// Rotation corresponding to a planar motion. The translation picks the
/// colatitude and longitude of the image of the pole, tx = sin(theta)
/// cos(phi), ty = sin(theta) sin(phi); the result is
/// R_z(phi) R_y(theta) R_z(alpha - phi), i.e. a tilt towards (tx, ty)
/// that carries the pole along the meridian at phi, after an in-plane
/// rotation by alpha.
GroupElement planar_motion_to_rotation(const PlanarMotion& m);

/// Image of the motion: I'(p) = I(R(alpha)^{-1} (p - t)), bilinear, zero
/// outside the source.
Image apply_planar_motion(const Image& image, const PlanarMotion& m);

/// Sphere samples with the disk spread over the upper hemisphere by
/// r = sin(theta), longitude = polar angle; the lower hemisphere is zero.
/// Throws DomainError for an empty image or B < 2.
SphereFunction lift_image(const Image& image, int resolution);

/// Separable Gaussian blur with standard deviation sigma in disk units,
/// zero outside the image.
Image smooth_image(const Image& image, double sigma);

inline constexpr double kGlyphSmoothing = 0.05;

/// Matching descriptor of an image: smooth_image(image, kGlyphSmoothing),
/// lift to the sphere, scale the coefficients to unit mean, then
/// build_descriptor. Throws DomainError for an image with no ink.
BispectrumDescriptor glyph_descriptor(const Image& image, int resolution, int bandlimit);

/// Labels of the built-in stroke glyphs.
std::vector<std::string> glyph_labels();
/// Five well-separated glyphs used by the matching demo.
std::vector<std::string> demo_glyph_labels();

/// Binary stroke glyph drawn at size x size (edge pixels antialiased).
/// Throws DomainError for an unknown label.
Image render_glyph(const std::string& label, int size = 64);

struct GlyphRecord {
  std::string label;
  BispectrumDescriptor descriptor;
  std::string source;
  int width = 0;
  int height = 0;
};

struct GlyphIndex {
  int resolution = 0;
  int bandlimit = 0;
  std::vector<GlyphRecord> records;

  /// Throws DomainError if a descriptor disagrees with the index bandlimit.
  void validate() const;
  void add(const std::string& label, const Image& image, const std::string& source);
};

struct MatchEntry {
  std::string label;
  double distance = 0.0;
};

/// Records sorted by descriptor_distance to the query, ties by label.
/// Throws PreconditionError for an empty index and DomainError when the
/// query bandlimit differs.
std::vector<MatchEntry> match(const BispectrumDescriptor& query, const GlyphIndex& index);
std::vector<MatchEntry> match(const Image& query, const GlyphIndex& index);

}  // namespace bispec

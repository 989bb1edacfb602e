#include "bispec/glyph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace bispec {

namespace {

using Point = Eigen::Vector2d;
using Stroke = std::vector<Point>;

double pixel_x(int col, int width) { return 2.0 * (col + 0.5) / width - 1.0; }
double pixel_y(int row, int height) { return 1.0 - 2.0 * (row + 0.5) / height; }

// Bilinear lookup at disk coordinates. Outside the pixel centres the image
// is either clamped to its border or zero.
double sample_image(const Image& image, double x, double y, bool clamp) {
  const double c = (x + 1.0) * image.width / 2.0 - 0.5;
  const double r = (1.0 - y) * image.height / 2.0 - 0.5;
  const int c0 = static_cast<int>(std::floor(c));
  const int r0 = static_cast<int>(std::floor(r));
  const double fc = c - c0, fr = r - r0;
  auto px = [&](int row, int col) {
    if (clamp) {
      row = std::clamp(row, 0, image.height - 1);
      col = std::clamp(col, 0, image.width - 1);
    } else if (row < 0 || col < 0 || row >= image.height || col >= image.width) {
      return 0.0;
    }
    return image.at(row, col);
  };
  return (1 - fr) * ((1 - fc) * px(r0, c0) + fc * px(r0, c0 + 1)) +
         fr * ((1 - fc) * px(r0 + 1, c0) + fc * px(r0 + 1, c0 + 1));
}

Stroke arc(double cx, double cy, double rx, double ry, double from, double to, int n = 48) {
  Stroke s;
  for (int i = 0; i <= n; ++i) {
    const double t = from + (to - from) * i / n;
    s.emplace_back(cx + rx * std::cos(t), cy + ry * std::sin(t));
  }
  return s;
}

const std::map<std::string, std::vector<Stroke>>& glyph_table() {
  static const std::map<std::string, std::vector<Stroke>> table = [] {
    const double pi = std::numbers::pi;
    std::map<std::string, std::vector<Stroke>> t;
    t["L"] = {{{-0.2, 0.35}, {-0.2, -0.35}, {0.25, -0.35}}};
    t["T"] = {{{-0.3, 0.35}, {0.3, 0.35}}, {{0.0, 0.35}, {0.0, -0.35}}};
    t["O"] = {arc(0.0, 0.0, 0.25, 0.33, 0.0, 2 * pi)};
    t["X"] = {{{-0.28, 0.35}, {0.28, -0.35}}, {{-0.28, -0.35}, {0.28, 0.35}}};
    t["E"] = {{{0.25, 0.35}, {-0.22, 0.35}, {-0.22, -0.35}, {0.25, -0.35}}, {{-0.22, 0.0}, {0.15, 0.0}}};
    t["C"] = {arc(0.05, 0.0, 0.28, 0.33, 0.25 * pi, 1.75 * pi)};
    t["Y"] = {{{-0.28, 0.35}, {0.0, 0.0}, {0.28, 0.35}}, {{0.0, 0.0}, {0.0, -0.35}}};
    t["P"] = {{{-0.2, -0.35}, {-0.2, 0.35}}, arc(-0.2, 0.17, 0.22, 0.18, 0.5 * pi, -0.5 * pi)};
    return t;
  }();
  return table;
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - a - t * ab).norm();
}

}  // namespace

void PlanarMotion::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(tx) || !std::isfinite(ty))
    throw DomainError("planar motion has non-finite parameters");
  if (std::hypot(tx, ty) > 1.0) throw DomainError("planar translation must have norm <= 1");
}

GroupElement planar_motion_to_rotation(const PlanarMotion& m) {
  m.validate();
  const double s = std::min(std::hypot(m.tx, m.ty), 1.0);
  const double theta = std::asin(s);
  const double phi = s > 0.0 ? std::atan2(m.ty, m.tx) : 0.0;
  return euler_element(phi, theta, m.alpha - phi, GroupTag::SO3);
}

Image apply_planar_motion(const Image& image, const PlanarMotion& m) {
  m.validate();
  if (image.empty()) throw DomainError("empty image");
  Image out(image.width, image.height);
  const double c = std::cos(m.alpha), s = std::sin(m.alpha);
  for (int row = 0; row < image.height; ++row) {
    for (int col = 0; col < image.width; ++col) {
      const double x = pixel_x(col, image.width) - m.tx;
      const double y = pixel_y(row, image.height) - m.ty;
      out.at(row, col) = sample_image(image, c * x + s * y, -s * x + c * y, false);
    }
  }
  return out;
}

SphereFunction lift_image(const Image& image, int resolution) {
  if (image.empty() || image.pixels.size() != static_cast<std::size_t>(image.width) * image.height)
    throw DomainError("empty image");
  if (resolution < 2) throw DomainError("sphere resolution must be at least 2");
  SphereFunction s(resolution);
  const SphereGrid grid = s.grid();
  for (int j = 0; j < grid.n_theta(); ++j) {
    const double theta = grid.theta(j);
    if (theta >= std::numbers::pi / 2) continue;
    const double r = std::sin(theta);
    for (int k = 0; k < grid.n_phi(); ++k) {
      const double phi = grid.phi(k);
      s.at(j, k) = sample_image(image, r * std::cos(phi), r * std::sin(phi), true);
    }
  }
  return s;
}

Image smooth_image(const Image& image, double sigma) {
  if (image.empty()) throw DomainError("empty image");
  if (!(sigma > 0.0)) return image;
  const double sx = sigma * image.width / 2.0, sy = sigma * image.height / 2.0;
  auto kernel = [](double s) {
    const int radius = static_cast<int>(std::ceil(3.0 * s));
    std::vector<double> k(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) total += k[i + radius] = std::exp(-0.5 * i * i / (s * s));
    for (double& v : k) v /= total;
    return k;
  };
  const std::vector<double> kx = kernel(sx), ky = kernel(sy);
  const int rx = static_cast<int>(kx.size() / 2), ry = static_cast<int>(ky.size() / 2);
  Image tmp(image.width, image.height), out(image.width, image.height);
  for (int row = 0; row < image.height; ++row)
    for (int col = 0; col < image.width; ++col) {
      double acc = 0.0;
      for (int i = -rx; i <= rx; ++i)
        if (col + i >= 0 && col + i < image.width) acc += kx[i + rx] * image.at(row, col + i);
      tmp.at(row, col) = acc;
    }
  for (int row = 0; row < image.height; ++row)
    for (int col = 0; col < image.width; ++col) {
      double acc = 0.0;
      for (int i = -ry; i <= ry; ++i)
        if (row + i >= 0 && row + i < image.height) acc += ky[i + ry] * tmp.at(row + i, col);
      out.at(row, col) = acc;
    }
  return out;
}

BispectrumDescriptor glyph_descriptor(const Image& image, int resolution, int bandlimit) {
  CoefficientSet F = sphere_lift(lift_image(smooth_image(image, kGlyphSmoothing), resolution), bandlimit);
  const double mean = F[0](0, 0).real();
  if (!(mean > 1e-12)) throw DomainError("image has no ink on the disk");
  for (CMatrix& M : F.matrices) M /= mean;
  return build_descriptor(F);
}

std::vector<std::string> glyph_labels() {
  std::vector<std::string> labels;
  for (const auto& [label, strokes] : glyph_table()) labels.push_back(label);
  return labels;
}

std::vector<std::string> demo_glyph_labels() { return {"E", "L", "O", "P", "Y"}; }

Image render_glyph(const std::string& label, int size) {
  const auto it = glyph_table().find(label);
  if (it == glyph_table().end()) throw DomainError("unknown glyph \"" + label + "\"");
  if (size < 8) throw DomainError("glyph size must be at least 8");
  const double half_width = 0.07;
  const double pixel = 2.0 / size;
  Image img(size, size);
  for (int row = 0; row < size; ++row) {
    for (int col = 0; col < size; ++col) {
      const Point p(pixel_x(col, size), pixel_y(row, size));
      double d = std::numeric_limits<double>::infinity();
      for (const Stroke& stroke : it->second)
        for (std::size_t i = 0; i + 1 < stroke.size(); ++i) d = std::min(d, segment_distance(p, stroke[i], stroke[i + 1]));
      img.at(row, col) = std::clamp((half_width - d) / pixel + 0.5, 0.0, 1.0);
    }
  }
  return img;
}

void GlyphIndex::validate() const {
  if (resolution < 2) throw DomainError("glyph index resolution must be at least 2");
  for (const GlyphRecord& r : records) {
    r.descriptor.validate();
    if (r.descriptor.bandlimit != bandlimit || r.descriptor.group != GroupTag::SO3)
      throw DomainError("glyph \"" + r.label + "\" has a descriptor inconsistent with the index");
  }
}

void GlyphIndex::add(const std::string& label, const Image& image, const std::string& source) {
  records.push_back({label, glyph_descriptor(image, resolution, bandlimit), source, image.width, image.height});
}

std::vector<MatchEntry> match(const BispectrumDescriptor& query, const GlyphIndex& index) {
  if (index.records.empty()) throw PreconditionError("glyph index is empty");
  if (query.bandlimit != index.bandlimit) throw DomainError("query bandlimit differs from the index");
  std::vector<MatchEntry> out;
  for (const GlyphRecord& r : index.records) out.push_back({r.label, descriptor_distance(query, r.descriptor)});
  std::stable_sort(out.begin(), out.end(), [](const MatchEntry& a, const MatchEntry& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.label < b.label;
  });
  return out;
}

std::vector<MatchEntry> match(const Image& query, const GlyphIndex& index) {
  if (index.records.empty()) throw PreconditionError("glyph index is empty");
  return match(glyph_descriptor(query, index.resolution, index.bandlimit), index);
}

}  // namespace bispec

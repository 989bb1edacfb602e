#pragma once

#include <cstddef>
#include <vector>

namespace bispec {

/// Grayscale image, row-major from the top row, intensities in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0.0) {}

  bool empty() const { return width <= 0 || height <= 0 || pixels.empty(); }
  double at(int row, int col) const { return pixels.at(static_cast<std::size_t>(row) * width + col); }
  double& at(int row, int col) { return pixels.at(static_cast<std::size_t>(row) * width + col); }
};

}  // namespace bispec

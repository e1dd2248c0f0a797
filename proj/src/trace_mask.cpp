#include <array>
#include <deque>
#include <string>

#include "shapeforge/ingest.hpp"

namespace shapeforge {

namespace {

struct Pixel {
  long x;
  long y;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Moore neighborhood, clockwise on screen (y down), starting west.
constexpr std::array<Pixel, 8> kRing{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int ring_index(const Pixel& center, const Pixel& p) {
  for (int d = 0; d < 8; ++d) {
    if (center.x + kRing[d].x == p.x && center.y + kRing[d].y == p.y) return d;
  }
  return -1;
}

std::vector<Pixel> moore_trace(const BinaryMask& mask, Pixel start) {
  // `start` is the first foreground pixel in raster order, so its west
  // neighbor is background and serves as the initial backtrack.
  const Pixel first_back{start.x - 1, start.y};
  std::vector<Pixel> boundary{start};
  Pixel p = start;
  Pixel back = first_back;
  const std::size_t limit = 4 * mask.width * mask.height + 16;
  for (std::size_t guard = 0; guard < limit; ++guard) {
    const int bi = ring_index(p, back);
    bool moved = false;
    for (int k = 1; k <= 8; ++k) {
      const int d = (bi + k) % 8;
      const Pixel q{p.x + kRing[d].x, p.y + kRing[d].y};
      if (mask.at(q.x, q.y)) {
        const int prev = (bi + k - 1) % 8;
        back = {p.x + kRing[prev].x, p.y + kRing[prev].y};
        p = q;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // isolated pixel
    // Jacob's criterion: back at the start, entered the same way as initially.
    if (p == start && back == first_back) break;
    boundary.push_back(p);
  }
  // Jacob's criterion can re-emit the start when it is entered differently
  // before the final closure; drop a trailing copy.
  while (boundary.size() > 1 && boundary.back() == start) boundary.pop_back();
  return boundary;
}

}  // namespace

std::vector<RawContour> trace_mask(const BinaryMask& mask, std::size_t min_area, std::string_view group) {
  std::vector<RawContour> out;
  const long w = static_cast<long>(mask.width);
  const long h = static_cast<long>(mask.height);
  std::vector<int> label(mask.cells.size(), 0);
  int next_label = 0;

  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      if (!mask.at(x, y) || label[y * w + x] != 0) continue;
      ++next_label;
      std::size_t area = 0;
      std::deque<Pixel> queue{{x, y}};
      label[y * w + x] = next_label;
      while (!queue.empty()) {
        const Pixel p = queue.front();
        queue.pop_front();
        ++area;
        for (const auto& d : kRing) {
          const Pixel q{p.x + d.x, p.y + d.y};
          if (mask.at(q.x, q.y) && label[q.y * w + q.x] == 0) {
            label[q.y * w + q.x] = next_label;
            queue.push_back(q);
          }
        }
      }
      if (area < min_area) continue;

      const std::vector<Pixel> boundary = moore_trace(mask, {x, y});
      if (boundary.size() < 3) continue;
      RawContour c;
      c.id = std::string(group) + "#" + std::to_string(out.size());
      c.group = std::string(group);
      c.points.reserve(boundary.size());
      for (const auto& b : boundary) {
        c.points.push_back({static_cast<double>(b.x), static_cast<double>(b.y)});
      }
      if (signed_area(c.points) < 0.0) {
        PointList r(c.points.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = c.points[(r.size() - i) % r.size()];
        c.points = std::move(r);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace shapeforge

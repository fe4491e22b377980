#pragma once

#include <functional>

#include "matgeo/matrix.hpp"

namespace matgeo {

// Total map src -> dst stored as one flat entry array indexed by source encoding.
class MapTable {
 public:
  static constexpr std::uint64_t kMaxDomain = std::uint64_t{1} << 20;

  MapTable(MatSpace src, MatSpace dst, std::vector<Elem> images);
  static MapTable tabulate(const MatSpace& src, const MatSpace& dst, const std::function<Mat(const Mat&)>& fn);
  static MapTable identity(const MatSpace& sp);

  const MatSpace& src() const { return src_; }
  const MatSpace& dst() const { return dst_; }
  std::uint64_t size() const { return size_; }
  Mat image(std::uint64_t code) const;
  Mat operator()(const Mat& x) const { return image(src_.encode(x)); }
  const Elem* image_data(std::uint64_t code) const { return images_.data() + code * dst_.entries(); }
  const std::vector<Elem>& data() const { return images_; }

  friend bool operator==(const MapTable& a, const MapTable& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.images_ == b.images_;
  }

 private:
  MatSpace src_;
  MatSpace dst_;
  std::uint64_t size_;
  std::vector<Elem> images_;
};

// g(X) = f(X)^T, as a map into the transposed target space
MapTable transpose_images(const MapTable& f);
// h(X) = f(X^T)^T on the transposed source
MapTable conjugate_by_transpose(const MapTable& f);

}  // namespace matgeo

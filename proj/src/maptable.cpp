#include "matgeo/maptable.hpp"

namespace matgeo {

MapTable::MapTable(MatSpace src, MatSpace dst, std::vector<Elem> images)
    : src_(src), dst_(dst), size_(0), images_(std::move(images)) {
  if (!src_.size_at_most(kMaxDomain)) throw Error(Errc::DomainTooLarge, src_.label() + " exceeds 2^20 points");
  size_ = src_.size();
  if (images_.size() != size_ * dst_.entries()) throw Error(Errc::IncompleteDomain, "image array has wrong length");
  for (auto e : images_)
    if (!dst_.field().contains(e)) throw Error(Errc::FormatError, "image entry outside the target field");
}

MapTable MapTable::tabulate(const MatSpace& src, const MatSpace& dst, const std::function<Mat(const Mat&)>& fn) {
  if (!src.size_at_most(kMaxDomain)) throw Error(Errc::DomainTooLarge, src.label() + " exceeds 2^20 points");
  std::uint64_t n = src.size();
  std::vector<Elem> images;
  images.reserve(n * dst.entries());
  for (std::uint64_t c = 0; c < n; ++c) {
    Mat y = fn(src.decode(c));
    if (!dst.contains(y)) throw Error(Errc::ShapeMismatch, "image outside " + dst.label());
    images.insert(images.end(), y.data().begin(), y.data().end());
  }
  return MapTable(src, dst, std::move(images));
}

MapTable MapTable::identity(const MatSpace& sp) {
  return tabulate(sp, sp, [](const Mat& x) { return x; });
}

Mat MapTable::image(std::uint64_t code) const {
  if (code >= size_) throw Error(Errc::ShapeMismatch, "code outside the domain");
  const Elem* p = image_data(code);
  return Mat(dst_.field(), dst_.rows(), dst_.cols(), std::vector<Elem>(p, p + dst_.entries()));
}

MapTable transpose_images(const MapTable& f) {
  MatSpace dst(f.dst().field(), f.dst().cols(), f.dst().rows());
  return MapTable::tabulate(f.src(), dst, [&](const Mat& x) { return transpose(f(x)); });
}

MapTable conjugate_by_transpose(const MapTable& f) {
  MatSpace src(f.src().field(), f.src().cols(), f.src().rows());
  MatSpace dst(f.dst().field(), f.dst().cols(), f.dst().rows());
  return MapTable::tabulate(src, dst, [&](const Mat& x) { return transpose(f(transpose(x))); });
}

}  // namespace matgeo

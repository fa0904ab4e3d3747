#include "galois/klein.hpp"

#include <algorithm>
#include <stdexcept>

namespace galois {

namespace {

constexpr std::size_t kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

}  // namespace

QuadraticForm klein_form(const FieldPtr& field) {
  Matrix c(6, 6);
  c.at(0, 5) = 1;
  c.at(1, 4) = field->neg(1);
  c.at(2, 3) = 1;
  return {field, std::move(c)};
}

KleinContext::KleinContext(FieldPtr field)
    : field_(std::move(field)),
      pg3_(std::make_shared<ProjectiveSpace>(field_, 3)),
      pg5_(std::make_shared<ProjectiveSpace>(field_, 5)),
      quadric_(std::make_unique<Quadric>(pg5_, klein_form(field_))) {
  const SubspaceList& lines = pg3_->subspaces(1);
  image_.resize(lines.size());
  preimage_.assign(pg5_->count(0), -1);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto e = lines.entries_of(i);
    const auto v = plucker_vector(e.subspan(0, 4), e.subspan(4, 4));
    const std::uint32_t pt = pg5_->point_index(v);
    if (preimage_[pt] != -1) throw std::logic_error("Pluecker map is not injective");
    image_[i] = pt;
    preimage_[pt] = static_cast<std::int64_t>(i);
  }
}

std::vector<std::uint32_t> KleinContext::plucker_vector(std::span<const std::uint32_t> x,
                                                        std::span<const std::uint32_t> y) const {
  if (x.size() != 4 || y.size() != 4) throw std::invalid_argument("points of PG(3,q) have 4 coordinates");
  const Field& f = *field_;
  std::vector<std::uint32_t> v(6);
  for (std::size_t t = 0; t < 6; ++t) {
    const auto [i, j] = kPairs[t];
    v[t] = f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i]));
  }
  if (!normalize(f, v)) throw std::invalid_argument("points do not span a line");
  return v;
}

std::uint32_t KleinContext::plucker(const Subspace& l) const {
  if (l.n() != 3 || l.dim() != 1) throw std::invalid_argument("not a line of PG(3,q)");
  return image_[pg3_->subspaces(1).index_of(l)];
}

std::size_t KleinContext::unplucker_index(std::uint32_t point) const {
  if (point >= preimage_.size() || preimage_[point] < 0)
    throw std::invalid_argument("point is not on the Klein quadric");
  return static_cast<std::size_t>(preimage_[point]);
}

Subspace KleinContext::unplucker(std::uint32_t point) const {
  return pg3_->subspaces(1).at(unplucker_index(point));
}

namespace {

Subspace span_of_points(const ProjectiveSpace& space, const std::vector<std::uint32_t>& pts) {
  Matrix m(0, static_cast<std::size_t>(space.n() + 1));
  for (std::uint32_t pt : pts) m.append_row(space.point_vector(pt));
  return Subspace::from_rows(space.field(), std::move(m));
}

}  // namespace

Subspace KleinContext::greek_plane(const Subspace& plane) const {
  if (plane.n() != 3 || plane.dim() != 2) throw std::invalid_argument("not a plane of PG(3,q)");
  std::vector<std::uint32_t> pts;
  for (std::uint32_t l : pg3_->subspaces_within(plane, 1)) pts.push_back(image_[l]);
  return span_of_points(*pg5_, pts);
}

Subspace KleinContext::latin_plane(std::uint32_t point) const {
  std::vector<std::uint32_t> pts;
  for (std::uint32_t l : pg3_->incidence(1).through_point.at(point)) pts.push_back(image_[l]);
  return span_of_points(*pg5_, pts);
}

std::vector<std::uint32_t> KleinContext::hyperplane_functional(const Subspace& h) const {
  if (h.n() != 5 || h.dim() != 4) throw std::invalid_argument("not a hyperplane of PG(5,q)");
  const Matrix ns = nullspace(*field_, h.matrix());
  return {ns.row(0).begin(), ns.row(0).end()};
}

Subspace KleinContext::hyperplane(std::span<const std::uint32_t> functional) const {
  if (functional.size() != 6) throw std::invalid_argument("functional needs 6 coordinates");
  Matrix m(0, 6);
  m.append_row(functional);
  if (rank(*field_, m) == 0) throw std::invalid_argument("zero functional");
  return Subspace::from_rows(*field_, nullspace(*field_, m));
}

std::vector<std::uint32_t> KleinContext::section_lines(const Subspace& h) const {
  const auto fn = hyperplane_functional(h);
  const Field& f = *field_;
  std::vector<std::uint32_t> out;
  for (std::size_t l = 0; l < image_.size(); ++l) {
    auto v = pg5_->point_vector(image_[l]);
    std::uint32_t s = 0;
    for (std::size_t t = 0; t < 6; ++t) s = f.add(s, f.mul(fn[t], v[t]));
    if (s == 0) out.push_back(static_cast<std::uint32_t>(l));
  }
  return out;
}

FpVector KleinContext::section_to_lineset(const Subspace& h) const {
  const auto lines = section_lines(h);
  return FpVector::indicator(field_->p(), image_.size(), lines, {3, q(), 1});
}

std::vector<std::uint32_t> KleinContext::section_points(const Subspace& h) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t l : section_lines(h)) out.push_back(image_[l]);
  std::sort(out.begin(), out.end());
  return out;
}

SectionInfo KleinContext::classify_section(const Subspace& h) const {
  SectionInfo info;
  info.type = classify_quadric(quadric_->form(), h);
  if (info.type.vertex_dim < 0) {
    info.kind = SectionKind::Parabolic;
    return info;
  }
  if (info.type.vertex_dim != 0) throw std::logic_error("hyperplane section with a large radical");
  info.kind = SectionKind::Tangent;
  // h = V^perp with V read off the polar form of the Grassmann relation
  const auto fn = hyperplane_functional(h);
  const Field& f = *field_;
  std::vector<std::uint32_t> v = {fn[5], f.neg(fn[4]), fn[3], fn[2], f.neg(fn[1]), fn[0]};
  info.vertex = pg5_->point_index(v);
  return info;
}

BilinearForm KleinContext::section_form(const Subspace& h) const {
  const auto fn = hyperplane_functional(h);
  Matrix g(4, 4);
  for (std::size_t t = 0; t < 6; ++t) {
    const auto [i, j] = kPairs[t];
    g.at(i, j) = fn[t];
    g.at(j, i) = field_->neg(fn[t]);
  }
  return BilinearForm(field_, std::move(g), FormKind::Alternating);
}

Matrix KleinContext::klein_to_standard() const {
  Matrix m(6, 6);
  m.at(0, 0) = 1;                 // x0 = p01
  m.at(1, 5) = 1;                 // x1 = p23
  m.at(2, 1) = 1;                 // x2 = p02
  m.at(3, 4) = field_->neg(1);    // x3 = -p13
  m.at(4, 2) = 1;                 // x4 = p03
  m.at(5, 3) = 1;                 // x5 = p12
  return m;
}

}  // namespace galois

#include "galois/forms.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace galois {

namespace {

// Enumerates normalized nonzero vectors of F_q^d, calling fn(vector) until it
// returns true. Returns whether fn accepted some vector.
template <class Fn>
bool for_each_point_vector(const Field& f, std::size_t d, Fn&& fn) {
  std::vector<std::uint32_t> v(d);
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    while (true) {
      if (fn(std::span<const std::uint32_t>(v))) return true;
      std::size_t t = lead + 1;
      while (t < d && ++v[t] == f.q()) v[t++] = 0;
      if (t >= d) break;
    }
  }
  return false;
}

Matrix times(const Field& f, std::span<const std::uint32_t> x, const Matrix& m) {
  Matrix out(1, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) out.at(0, j) = f.add(out.at(0, j), f.mul(x[i], m.at(i, j)));
  }
  return out;
}

std::uint32_t frobenius_root(const Field& f, std::uint32_t a) {
  // char 2: sqrt(a) = a^(q/2)
  return f.pow(a, f.q() / 2);
}

// Type of a quadratic form assumed non-degenerate (no singular isotropic
// vector). Splits off hyperbolic planes until at most two dimensions remain.
int witt_base_eps(const QuadraticForm& g) {
  const Field& f = g.field();
  const std::size_t d = static_cast<std::size_t>(g.n() + 1);
  if (d == 0) return 1;
  if (d == 1) return 0;
  std::vector<std::uint32_t> iso;
  for_each_point_vector(f, d, [&](std::span<const std::uint32_t> v) {
    if (g.eval(v) != 0) return false;
    iso.assign(v.begin(), v.end());
    return true;
  });
  if (iso.empty()) {
    if (d != 2) throw std::logic_error("anisotropic form of dimension > 2");
    return -1;
  }
  const BilinearForm b = g.polar();
  std::vector<std::uint32_t> partner;
  for (std::size_t i = 0; i < d && partner.empty(); ++i) {
    std::vector<std::uint32_t> e(d, 0);
    e[i] = 1;
    if (b.eval(iso, e) != 0) partner = e;
  }
  if (partner.empty()) throw std::logic_error("isotropic vector is singular in a non-degenerate form");
  Matrix conditions(0, d);
  conditions.append_row(times(f, iso, b.gram()).row(0));
  conditions.append_row(times(f, partner, b.gram()).row(0));
  const Matrix rest = nullspace(f, conditions);
  if (rest.rows == 0) return 1;
  return witt_base_eps(g.restrict_to(rest));
}

}  // namespace

BilinearForm::BilinearForm(FieldPtr field, Matrix gram, FormKind kind)
    : field_(std::move(field)), gram_(std::move(gram)), kind_(kind) {
  if (gram_.rows != gram_.cols || gram_.rows == 0) throw std::invalid_argument("gram matrix must be square");
  const Field& f = *field_;
  for (std::size_t i = 0; i < gram_.rows; ++i)
    for (std::size_t j = 0; j < gram_.cols; ++j) {
      if (kind_ == FormKind::Symmetric && gram_.at(i, j) != gram_.at(j, i))
        throw std::invalid_argument("symmetric form with non-symmetric gram matrix");
      if (kind_ == FormKind::Alternating) {
        if (i == j && gram_.at(i, i) != 0) throw std::invalid_argument("alternating form with nonzero diagonal");
        if (gram_.at(i, j) != f.neg(gram_.at(j, i)))
          throw std::invalid_argument("alternating form with non-skew gram matrix");
      }
    }
}

std::uint32_t BilinearForm::eval(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) const {
  const Field& f = *field_;
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < gram_.rows; ++i) {
    if (x[i] == 0) continue;
    std::uint32_t inner = 0;
    for (std::size_t j = 0; j < gram_.cols; ++j)
      if (y[j] != 0 && gram_.at(i, j) != 0) inner = f.add(inner, f.mul(gram_.at(i, j), y[j]));
    s = f.add(s, f.mul(x[i], inner));
  }
  return s;
}

bool BilinearForm::is_degenerate() const { return rank(*field_, gram_) < gram_.rows; }

QuadraticForm::QuadraticForm(FieldPtr field, Matrix coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows != coeffs_.cols || coeffs_.rows == 0)
    throw std::invalid_argument("quadratic form needs a square coefficient matrix");
  for (std::size_t i = 0; i < coeffs_.rows; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (coeffs_.at(i, j) != 0) throw std::invalid_argument("quadratic form coefficients must be upper triangular");
}

std::uint32_t QuadraticForm::eval(std::span<const std::uint32_t> x) const {
  const Field& f = *field_;
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < coeffs_.rows; ++i) {
    if (x[i] == 0) continue;
    std::uint32_t inner = 0;
    for (std::size_t j = i; j < coeffs_.cols; ++j)
      if (x[j] != 0 && coeffs_.at(i, j) != 0) inner = f.add(inner, f.mul(coeffs_.at(i, j), x[j]));
    s = f.add(s, f.mul(x[i], inner));
  }
  return s;
}

BilinearForm QuadraticForm::polar() const {
  const Field& f = *field_;
  Matrix g(coeffs_.rows, coeffs_.cols);
  for (std::size_t i = 0; i < coeffs_.rows; ++i) {
    g.at(i, i) = f.add(coeffs_.at(i, i), coeffs_.at(i, i));
    for (std::size_t j = i + 1; j < coeffs_.cols; ++j) g.at(i, j) = g.at(j, i) = coeffs_.at(i, j);
  }
  return {field_, std::move(g), f.p() == 2 ? FormKind::Alternating : FormKind::Symmetric};
}

QuadraticForm QuadraticForm::restrict_to(const Matrix& basis) const {
  if (basis.cols != coeffs_.rows) throw std::invalid_argument("basis does not live in the form's space");
  const BilinearForm b = polar();
  Matrix c(basis.rows, basis.rows);
  for (std::size_t i = 0; i < basis.rows; ++i) {
    c.at(i, i) = eval(basis.row(i));
    for (std::size_t j = i + 1; j < basis.rows; ++j) c.at(i, j) = b.eval(basis.row(i), basis.row(j));
  }
  return {field_, std::move(c)};
}

Polarity::Polarity(BilinearForm form) : form_(std::move(form)) {
  if (form_.is_degenerate()) throw std::invalid_argument("polarity of a degenerate form");
}

Subspace Polarity::perp(const Subspace& s) const {
  if (s.n() != form_.n()) throw std::invalid_argument("subspace from another ambient space");
  const Field& f = form_.field();
  const std::size_t len = static_cast<std::size_t>(s.n() + 1);
  if (s.is_empty()) {
    Matrix id(len, len);
    for (std::size_t i = 0; i < len; ++i) id.at(i, i) = 1;
    return Subspace::from_rows(f, std::move(id));
  }
  Matrix conditions(0, len);
  for (std::size_t i = 0; i < s.vector_dim(); ++i) conditions.append_row(times(f, s.row(i), form_.gram()).row(0));
  Matrix ns = nullspace(f, conditions);
  if (ns.rows == 0) return Subspace::empty(s.n());
  return Subspace::from_rows(f, std::move(ns));
}

BilinearForm symplectic_form(int n, const FieldPtr& field) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("symplectic form needs odd n");
  const std::size_t len = static_cast<std::size_t>(n + 1);
  Matrix g(len, len);
  for (std::size_t i = 0; i < len; i += 2) {
    g.at(i, i + 1) = 1;
    g.at(i + 1, i) = field->neg(1);
  }
  return {field, std::move(g), FormKind::Alternating};
}

std::vector<std::uint32_t> symplectic_absolute_lines(const ProjectiveSpace& pg3, const Polarity& pol) {
  if (pg3.n() != 3 || pol.form().n() != 3) throw std::invalid_argument("absolute lines are computed in PG(3,q)");
  if (pol.form().kind() != FormKind::Alternating) throw std::invalid_argument("polarity is not symplectic");
  const SubspaceList& lines = pg3.subspaces(1);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto e = lines.entries_of(i);
    if (pol.form().eval(e.subspan(0, 4), e.subspan(4, 4)) == 0) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<Polarity> enumerate_symplectic_polarities(const FieldPtr& field) {
  const Field& f = *field;
  const std::uint64_t q = f.q();
  if (q * q * q * q * q * q > 1'000'000) throw BudgetError("polarity enumeration exceeds the budget");
  std::vector<Polarity> out;
  // upper entries a01 a02 a03 a12 a13 a23; the first nonzero one is 1
  const std::size_t idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<std::uint32_t> a(6, 0);
  for_each_point_vector(f, 6, [&](std::span<const std::uint32_t> v) {
    const std::uint32_t pf =
        f.add(f.sub(f.mul(v[0], v[5]), f.mul(v[1], v[4])), f.mul(v[2], v[3]));  // Pfaffian
    if (pf == 0) return false;
    Matrix g(4, 4);
    for (std::size_t t = 0; t < 6; ++t) {
      g.at(idx[t][0], idx[t][1]) = v[t];
      g.at(idx[t][1], idx[t][0]) = f.neg(v[t]);
    }
    out.emplace_back(BilinearForm(field, std::move(g), FormKind::Alternating));
    return false;
  });
  std::sort(out.begin(), out.end(), [](const Polarity& x, const Polarity& y) {
    return x.form().gram().data < y.form().gram().data;
  });
  return out;
}

QuadricType classify_quadric(const QuadraticForm& form, const Subspace& s) {
  if (s.n() != form.n()) throw std::invalid_argument("subspace from another ambient space");
  QuadricType t;
  if (s.is_empty()) return t;
  const Field& f = form.field();
  const QuadraticForm g = form.restrict_to(s.matrix());
  const std::size_t m = s.vector_dim();
  const BilinearForm b = g.polar();

  // Radical of the polar form, then its isotropic part.
  Matrix rad = nullspace(f, b.gram());
  Matrix vertex(0, m);
  if (rad.rows > 0) {
    if (f.p() != 2) {
      vertex = rad;
    } else {
      // On the radical f is additive with f(a x) = a^2 f(x); its kernel is
      // {sum a_i r_i : sum a_i sqrt(f(r_i)) = 0}.
      Matrix cond(1, rad.rows);
      for (std::size_t i = 0; i < rad.rows; ++i) cond.at(0, i) = frobenius_root(f, g.eval(rad.row(i)));
      const Matrix coeffs = nullspace(f, cond);
      for (std::size_t r = 0; r < coeffs.rows; ++r) {
        std::vector<std::uint32_t> v(m, 0);
        for (std::size_t i = 0; i < rad.rows; ++i) {
          const std::uint32_t c = coeffs.at(r, i);
          if (c == 0) continue;
          for (std::size_t j = 0; j < m; ++j) v[j] = f.add(v[j], f.mul(c, rad.at(i, j)));
        }
        vertex.append_row(v);
      }
      vertex.cols = m;
    }
  }
  t.vertex_dim = static_cast<int>(vertex.rows) - 1;

  // Complement of the vertex by greedy extension with unit vectors.
  Matrix acc = vertex;
  acc.cols = m;
  Matrix complement(0, m);
  std::size_t r = vertex.rows;
  for (std::size_t i = 0; i < m && r < m; ++i) {
    std::vector<std::uint32_t> e(m, 0);
    e[i] = 1;
    Matrix trial = acc;
    trial.append_row(e);
    if (rank(f, trial) > r) {
      acc = std::move(trial);
      complement.append_row(e);
      ++r;
    }
  }
  complement.cols = m;
  t.base_dim = static_cast<int>(complement.rows) - 1;
  t.base_eps = complement.rows == 0 ? 1 : witt_base_eps(g.restrict_to(complement));
  return t;
}

QuadricType classify_quadric(const QuadraticForm& form) {
  const std::size_t len = static_cast<std::size_t>(form.n() + 1);
  Matrix id(len, len);
  for (std::size_t i = 0; i < len; ++i) id.at(i, i) = 1;
  return classify_quadric(form, Subspace::from_rows(form.field(), std::move(id)));
}

std::uint64_t quadric_point_count(int n, int eps, std::uint64_t q) {
  if (n < 0) return 0;
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  std::int64_t base = static_cast<std::int64_t>((qn - 1) / (q - 1));
  if (eps != 0) {
    std::int64_t h = 1;
    for (int i = 0; i < (n - 1) / 2; ++i) h *= static_cast<std::int64_t>(q);
    base += eps * h;
  }
  return static_cast<std::uint64_t>(base);
}

std::uint64_t cone_point_count(const QuadricType& t, std::uint64_t q) {
  std::uint64_t qv = 1;
  for (int i = 0; i <= t.vertex_dim; ++i) qv *= q;
  const std::uint64_t vertex_pts = (qv - 1) / (q - 1);
  std::uint64_t base = 0;
  if (t.base_dim >= 0) base = quadric_point_count(t.base_dim, t.base_eps, q);
  return vertex_pts + qv * base;
}

Quadric::Quadric(ProjectiveSpacePtr space, QuadraticForm form) : space_(std::move(space)), form_(std::move(form)) {
  if (form_.n() != space_->n()) throw std::invalid_argument("quadratic form dimension differs from the space");
  type_ = classify_quadric(form_);
  const SubspaceList& pts = space_->subspaces(0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (form_.eval(pts.entries_of(i)) == 0) points_.push_back(static_cast<std::uint32_t>(i));
}

bool Quadric::contains(std::uint32_t point) const { return std::binary_search(points_.begin(), points_.end(), point); }

QuadraticForm standard_quadratic_form(const FieldPtr& field, int n, int eps) {
  if (eps == 0 ? n % 2 != 0 : n % 2 == 0) throw std::invalid_argument("quadric type does not match parity of n");
  if (eps < -1 || eps > 1 || n < 1) throw std::invalid_argument("invalid quadric parameters");
  const Field& f = *field;
  const std::size_t len = static_cast<std::size_t>(n + 1);
  Matrix c(len, len);
  if (eps == 0) {
    for (std::size_t i = 0; i + 1 < len; i += 2) c.at(i, i + 1) = 1;
    c.at(len - 1, len - 1) = 1;
  } else {
    for (std::size_t i = 0; i + 3 < len; i += 2) c.at(i, i + 1) = 1;
    const std::size_t a = len - 2, b = len - 1;
    if (eps == 1) {
      c.at(a, b) = 1;
    } else {
      // least (x^2, xy, y^2) coefficient triple without nontrivial zeros
      bool found = false;
      for (std::uint32_t ca = 0; ca < f.q() && !found; ++ca)
        for (std::uint32_t cb = 0; cb < f.q() && !found; ++cb)
          for (std::uint32_t cc = 0; cc < f.q() && !found; ++cc) {
            bool anisotropic = true;
            for (std::uint32_t x = 0; x < f.q() && anisotropic; ++x)
              for (std::uint32_t y = 0; y < f.q() && anisotropic; ++y) {
                if (x == 0 && y == 0) continue;
                const std::uint32_t val = f.add(f.add(f.mul(ca, f.mul(x, x)), f.mul(cb, f.mul(x, y))),
                                                f.mul(cc, f.mul(y, y)));
                anisotropic = val != 0;
              }
            if (anisotropic) {
              c.at(a, a) = ca;
              c.at(a, b) = cb;
              c.at(b, b) = cc;
              found = true;
            }
          }
    }
  }
  return {field, std::move(c)};
}

Quadric standard_quadric(ProjectiveSpacePtr space, int eps) {
  QuadraticForm form = standard_quadratic_form(space->field_ptr(), space->n(), eps);
  return {std::move(space), std::move(form)};
}

std::vector<std::uint32_t> lines_on_quadric(const Quadric& quadric) {
  const SubspaceList& lines = quadric.space().subspaces(1);
  const std::size_t len = static_cast<std::size_t>(quadric.n() + 1);
  const BilinearForm b = quadric.form().polar();
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto e = lines.entries_of(i);
    auto x = e.subspan(0, len), y = e.subspan(len, len);
    if (quadric.form().eval(x) == 0 && quadric.form().eval(y) == 0 && b.eval(x, y) == 0)
      out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

GeneratorClasses generators(const Quadric& quadric) {
  const int n = quadric.n();
  if (n != 3 && n != 5) throw std::invalid_argument("generators are enumerated for n in {3, 5}");
  if (quadric.type().degenerate() || quadric.type().base_eps != 1)
    throw std::invalid_argument("generators need a non-degenerate hyperbolic quadric");
  const Field& f = quadric.space().field();
  GeneratorClasses out;
  out.dim = (n + 1) / 2 - 1;
  const SubspaceList& list = quadric.space().subspaces(out.dim);
  const std::size_t len = static_cast<std::size_t>(n + 1);
  const std::size_t rows = static_cast<std::size_t>(out.dim + 1);
  const BilinearForm b = quadric.form().polar();
  std::vector<Subspace> all;
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto e = list.entries_of(i);
    bool on = true;
    for (std::size_t r = 0; r < rows && on; ++r) {
      on = quadric.form().eval(e.subspan(r * len, len)) == 0;
      for (std::size_t s = r + 1; s < rows && on; ++s) on = b.eval(e.subspan(r * len, len), e.subspan(s * len, len)) == 0;
    }
    if (on) all.push_back(list.at(i));
  }
  if (all.empty()) return out;
  const int parity = ((n - 1) / 2) % 2;
  for (const Subspace& g : all) {
    const int d = meet(f, all.front(), g).dim();
    if (((d % 2) + 2) % 2 == parity)
      out.class_a.push_back(g);
    else
      out.class_b.push_back(g);
  }
  return out;
}

QuadraticForm regulus_quadric_form(const FieldPtr& field) {
  Matrix c(4, 4);
  c.at(0, 1) = 1;
  c.at(2, 3) = field->neg(1);
  return {field, std::move(c)};
}

std::pair<std::vector<Subspace>, std::vector<Subspace>> standard_reguli(const FieldPtr& field) {
  const Field& f = *field;
  std::vector<Subspace> plus, minus;
  for_each_point_vector(f, 2, [&](std::span<const std::uint32_t> ab) {
    const std::uint32_t a = ab[0], b = ab[1];
    plus.push_back(Subspace::from_vectors(f, 3, {{a, 0, b, 0}, {0, b, 0, a}}));
    minus.push_back(Subspace::from_vectors(f, 3, {{a, 0, 0, b}, {0, b, a, 0}}));
    return false;
  });
  return {std::move(plus), std::move(minus)};
}

Subspace tangent_hyperplane(const Quadric& quadric, std::uint32_t point) {
  if (!quadric.contains(point)) throw std::invalid_argument("point is not on the quadric");
  const Polarity pol(quadric.form().polar());
  auto v = quadric.space().point_vector(point);
  Matrix m(0, v.size());
  m.append_row(v);
  return pol.perp(Subspace::from_rows(quadric.space().field(), std::move(m)));
}

std::vector<std::uint32_t> cone(const ProjectiveSpace& space, const Subspace& vertex,
                                std::span<const std::uint32_t> base) {
  const Field& f = space.field();
  std::set<std::uint32_t> out;
  if (base.empty()) {
    auto pts = space.points_of(vertex);
    return pts;
  }
  if (!vertex.is_empty()) {
    Matrix m(0, static_cast<std::size_t>(space.n() + 1));
    for (std::uint32_t p : base) m.append_row(space.point_vector(p));
    const Subspace base_span = Subspace::from_rows(f, std::move(m));
    if (incident(f, base_span, vertex)) throw std::invalid_argument("cone vertex meets the span of the base");
  }
  for (std::uint32_t p : base) {
    Matrix m = vertex.is_empty() ? Matrix(0, static_cast<std::size_t>(space.n() + 1)) : vertex.matrix();
    m.append_row(space.point_vector(p));
    for (std::uint32_t x : space.points_of(Subspace::from_rows(f, std::move(m)))) out.insert(x);
  }
  return {out.begin(), out.end()};
}

}  // namespace galois

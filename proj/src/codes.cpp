#include "galois/codes.hpp"

#include <algorithm>
#include <stdexcept>

#include "galois/random.hpp"

namespace galois {

LinearCode::LinearCode(ProjectiveSpacePtr space, CodeParams params, RowEchelon basis)
    : space_(std::move(space)), params_(params), basis_(std::move(basis)), dual_(std::make_shared<DualCache>()) {}

FpVector LinearCode::basis_row(std::size_t i) const {
  FpVector v = zero();
  auto r = basis_.row(i);
  std::copy(r.begin(), r.end(), v.mutable_entries().begin());
  return v;
}

void LinearCode::check(const FpVector& v) const {
  if (v.p() != p() || v.size() != length()) throw std::invalid_argument("vector does not match the code's field or length");
}

bool LinearCode::contains(const FpVector& v) const {
  check(v);
  return basis_.reduces_to_zero(v.entries());
}

bool LinearCode::in_dual(const FpVector& v) const {
  check(v);
  for (std::size_t i = 0; i < basis_.rank(); ++i)
    if (basis_.dot_row(i, v.entries()) != 0) return false;
  return true;
}

const std::vector<FpVector>& LinearCode::dual_basis() const {
  std::call_once(dual_->once, [this] {
    for (auto& r : basis_.orthogonal_basis()) {
      FpVector v = zero();
      std::copy(r.begin(), r.end(), v.mutable_entries().begin());
      dual_->rows.push_back(std::move(v));
    }
  });
  return dual_->rows;
}

std::vector<std::uint32_t> meeting_indices(const ProjectiveSpace& space, const Subspace& kappa, int j) {
  if (kappa.n() != space.n()) throw std::invalid_argument("subspace from another ambient space");
  if (kappa.is_empty()) return {};
  const auto pts = space.points_of(kappa);
  if (j == 0) return pts;
  const Incidence& inc = space.incidence(j);
  std::vector<std::uint32_t> out;
  for (std::uint32_t pt : pts) out.insert(out.end(), inc.through_point[pt].begin(), inc.through_point[pt].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FpVector char_vector_set(const ProjectiveSpace& space, int j, std::span<const std::uint32_t> support) {
  return FpVector::indicator(space.field().p(), space.count(j), support, {space.n(), space.q(), j});
}

FpVector char_vector_incidence(const ProjectiveSpace& space, const Subspace& kappa, int j) {
  const auto idx = meeting_indices(space, kappa, j);
  return char_vector_set(space, j, idx);
}

LinearCode build_code(const ProjectiveSpacePtr& space, int j, int k, unsigned threads) {
  const int n = space->n();
  if (j < 0 || k < 0 || j >= n || k >= n) throw std::invalid_argument("code needs 0 <= j, k < n");
  const std::uint64_t gens = gaussian_count(n, k, space->q());
  const std::uint64_t len = gaussian_count(n, j, space->q());
  if (gens > kCodeBudget / len) throw BudgetError("generator matrix exceeds the budget");

  const std::uint32_t p = space->field().p();
  RowEchelon basis(p, static_cast<std::size_t>(len));
  const Incidence* inc_k = k > 0 ? &space->incidence(k) : nullptr;
  const Incidence* inc_j = j > 0 ? &space->incidence(j) : nullptr;
  basis.insert_generated(
      static_cast<std::size_t>(gens),
      [&](std::size_t g, std::span<std::uint8_t> out) {
        std::fill(out.begin(), out.end(), 0);
        const std::uint32_t self = static_cast<std::uint32_t>(g);
        std::span<const std::uint32_t> pts = inc_k ? std::span<const std::uint32_t>(inc_k->points_on[g])
                                                   : std::span<const std::uint32_t>(&self, 1);
        for (std::uint32_t pt : pts) {
          if (!inc_j) {
            out[pt] = 1;
            continue;
          }
          for (std::uint32_t s : inc_j->through_point[pt]) out[s] = 1;
        }
      },
      threads);
  return LinearCode(space, {n, j, k, false}, std::move(basis));
}

FpVector symplectic_vector(const ProjectiveSpace& pg3, const Polarity& pol) {
  const auto lines = symplectic_absolute_lines(pg3, pol);
  return char_vector_set(pg3, 1, lines);
}

LinearCode extend_with_symplectic(const LinearCode& base) {
  if (base.params() != CodeParams{3, 1, 1, false}) throw std::invalid_argument("extension starts from C_{1,1}(3,q)");
  RowEchelon basis = base.basis();
  const ProjectiveSpace& pg3 = base.space();
  for (const Polarity& pol : enumerate_symplectic_polarities(pg3.field_ptr())) {
    const FpVector v = symplectic_vector(pg3, pol);
    basis.insert(v.entries());
  }
  return LinearCode(base.space_ptr(), {3, 1, 1, true}, std::move(basis));
}

LinearCode build_extended_code(const ProjectiveSpacePtr& pg3, unsigned threads) {
  return extend_with_symplectic(build_code(pg3, 1, 1, threads));
}

std::uint64_t dimension_formula(std::uint32_t q) {
  if (!is_prime_power(q)) throw std::invalid_argument("q is not a prime power");
  std::uint32_t p = 2;
  while (q % p) ++p;
  std::uint32_t h = 0;
  for (std::uint32_t t = q; t > 1; t /= p) ++h;
  unsigned __int128 num = q, den = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    num *= 2ull * p * p + 1;
    den *= 3;
  }
  return static_cast<std::uint64_t>(num / den) + 1;
}

FpVector proj_map(const ProjectiveSpace& space, const FpVector& c, int i) {
  const int j = c.meta().j;
  if (c.meta().n != space.n() || c.size() != space.count(j)) throw std::invalid_argument("vector not on this space");
  if (i < 0 || i >= j) throw std::invalid_argument("proj map needs 0 <= i < j");
  const std::uint32_t p = c.p();
  FpVector out(p, space.count(i), {space.n(), space.q(), i});
  const SubspaceList& big = space.subspaces(j);
  const Incidence* inc = i == 0 ? &space.incidence(j) : nullptr;
  std::vector<std::uint32_t> acc(out.size(), 0);
  for (std::size_t l = 0; l < c.size(); ++l) {
    if (c[l] == 0) continue;
    const auto within = inc ? inc->points_on[l] : space.subspaces_within(big.at(l), i);
    for (std::uint32_t s : within) acc[s] = (acc[s] + c[l]) % p;
  }
  for (std::size_t s = 0; s < acc.size(); ++s) out.set(s, acc[s]);
  return out;
}

FpVector random_codeword(const LinearCode& code, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  FpVector v = code.zero();
  for (std::size_t r = 0; r < code.dimension(); ++r) {
    const auto c = static_cast<std::uint32_t>(rng.below(code.p()));
    if (c) v.add_scaled(code.basis_row(r), c);
  }
  return v;
}

namespace {
// spaces are canonical, so equal parameters mean equal enumeration
bool same_space(const ProjectiveSpace& a, const ProjectiveSpace& b) {
  return a.n() == b.n() && a.field().p() == b.field().p() && a.field().h() == b.field().h() &&
         a.field().modulus() == b.field().modulus();
}
}  // namespace

FpVector random_dual_codeword(const LinearCode& code, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  FpVector v = code.zero();
  for (const FpVector& d : code.dual_basis()) {
    const auto c = static_cast<std::uint32_t>(rng.below(code.p()));
    if (c) v.add_scaled(d, c);
  }
  return v;
}

DualityReport duality_transfer_check(const LinearCode& lines, const LinearCode& points, std::size_t samples,
                                     std::uint64_t seed) {
  if (lines.params().j != 1 || points.params().j != 0 || lines.params().k != points.params().k ||
      !same_space(lines.space(), points.space()))
    throw std::invalid_argument("duality transfer needs C_{1,k} and C_{0,k} on one space");
  const ProjectiveSpace& space = lines.space();
  DualityReport rep;
  for (std::size_t t = 0; t < samples; ++t) {
    const FpVector c = random_dual_codeword(lines, seed, 2 * t);
    ++rep.forward_samples;
    if (lines.in_dual(c) && points.in_dual(proj_map(space, c, 0))) ++rep.forward_pass;
  }
  for (std::size_t t = 0; t < samples; ++t) {
    Rng rng(seed, 2 * t + 1);
    FpVector c = lines.zero();
    do {
      for (std::size_t i = 0; i < c.size(); ++i) c.set(i, static_cast<std::uint32_t>(rng.below(c.p())));
    } while (lines.in_dual(c));
    ++rep.reverse_samples;
    if (!points.in_dual(proj_map(space, c, 0))) ++rep.reverse_pass;
  }
  return rep;
}

std::map<std::size_t, std::uint64_t> weight_distribution(const LinearCode& code) {
  const std::uint32_t p = code.p();
  const std::size_t dim = code.dimension();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= p;
    if (total > (1u << 24)) throw BudgetError("too many codewords to enumerate");
  }
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<std::vector<std::uint32_t>> supports;
  for (std::size_t i = 0; i < dim; ++i) {
    rows.push_back(code.basis().row(i));
    std::vector<std::uint32_t> s;
    for (std::size_t c = 0; c < rows.back().size(); ++c)
      if (rows.back()[c]) s.push_back(static_cast<std::uint32_t>(c));
    supports.push_back(std::move(s));
  }
  // modular Gray code: step t adds the row at the lowest digit of t-1 that is not p-1
  std::vector<std::uint8_t> word(code.length(), 0);
  std::vector<std::uint32_t> digits(dim, 0);
  std::size_t wt = 0;
  std::map<std::size_t, std::uint64_t> dist;
  dist[0] = 1;
  for (std::uint64_t t = 1; t < total; ++t) {
    std::size_t m = 0;
    while (digits[m] == p - 1) digits[m++] = 0;
    ++digits[m];
    for (std::uint32_t c : supports[m]) {
      const std::uint8_t old = word[c];
      word[c] = static_cast<std::uint8_t>((old + rows[m][c]) % p);
      wt += (word[c] != 0) - (old != 0);
    }
    ++dist[wt];
  }
  return dist;
}

namespace {

std::size_t first_nonzero(std::span<const std::uint32_t> v) {
  return static_cast<std::size_t>(std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; }) -
                                  v.begin());
}

}  // namespace

LocalCodes::LocalCodes(const ProjectiveSpacePtr& pg3)
    : pg3_(pg3),
      pg2_(std::make_shared<ProjectiveSpace>(pg3->field_ptr(), 2)),
      lines_code_(build_code(pg2_, 1, 0)),
      points_code_(build_code(pg2_, 0, 1)) {
  if (pg3->n() != 3) throw std::invalid_argument("local codes live on PG(3,q)");
  const Field& f = pg3->field();
  const SubspaceList& planes = pg3->subspaces(2);
  const SubspaceList& lines3 = pg3->subspaces(1);
  const SubspaceList& lines2 = pg2_->subspaces(1);
  const SubspaceList& points2 = pg2_->subspaces(0);

  plane_lines_.resize(planes.size());
  for (std::size_t pi = 0; pi < planes.size(); ++pi) {
    const Subspace plane = planes.at(pi);
    auto& out = plane_lines_[pi];
    out.reserve(lines2.size());
    for (std::size_t l = 0; l < lines2.size(); ++l) {
      auto y = lines2.entries_of(l);
      Matrix m(2, 4);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t c = 0; c < 4; ++c)
            m.at(r, c) = f.add(m.at(r, c), f.mul(y[r * 3 + i], plane.row(i)[c]));
      out.push_back(static_cast<std::uint32_t>(lines3.index_of(Subspace::from_rows(f, std::move(m)))));
    }
  }

  const std::size_t npts = pg3->count(0);
  star_lines_.resize(npts);
  for (std::uint32_t pt = 0; pt < npts; ++pt) {
    auto pv = pg3->point_vector(pt);
    const std::size_t pivot = first_nonzero(pv);
    auto& out = star_lines_[pt];
    out.reserve(points2.size());
    for (std::size_t s = 0; s < points2.size(); ++s) {
      auto y = points2.entries_of(s);
      Matrix m(2, 4);
      for (std::size_t c = 0; c < 4; ++c) m.at(0, c) = pv[c];
      for (std::size_t c = 0, i = 0; c < 4; ++c)
        if (c != pivot) m.at(1, c) = y[i++];
      out.push_back(static_cast<std::uint32_t>(lines3.index_of(Subspace::from_rows(f, std::move(m)))));
    }
  }
}

FpVector LocalCodes::restrict_to_plane(const FpVector& c, std::size_t plane) const {
  if (c.size() != pg3_->count(1)) throw std::invalid_argument("vector is not on the lines of PG(3,q)");
  const auto& idx = plane_lines_.at(plane);
  FpVector out = lines_code_.zero();
  for (std::size_t l = 0; l < idx.size(); ++l) out.set(l, c[idx[l]]);
  return out;
}

FpVector LocalCodes::restrict_to_point(const FpVector& c, std::uint32_t point) const {
  if (c.size() != pg3_->count(1)) throw std::invalid_argument("vector is not on the lines of PG(3,q)");
  const auto& idx = star_lines_.at(point);
  FpVector out = points_code_.zero();
  for (std::size_t s = 0; s < idx.size(); ++s) out.set(s, c[idx[s]]);
  return out;
}

RestrictionResult restriction_check_plane(const LocalCodes& local, const LinearCode& code, const FpVector& c,
                                          std::size_t plane) {
  RestrictionResult r;
  r.source_in_code = code.contains(c);
  r.restricted = local.restrict_to_plane(c, plane);
  r.restricted_in_code = local.lines_code().contains(r.restricted);
  return r;
}

RestrictionResult restriction_check_point(const LocalCodes& local, const LinearCode& code, const FpVector& c,
                                          std::uint32_t point) {
  RestrictionResult r;
  r.source_in_code = code.contains(c);
  r.restricted = local.restrict_to_point(c, point);
  r.restricted_in_code = local.points_code().contains(r.restricted);
  return r;
}

LineFamilies::LineFamilies(const ProjectiveSpace& pg3) {
  if (pg3.n() != 3) throw std::invalid_argument("line families live on PG(3,q)");
  const SubspaceList& planes = pg3.subspaces(2);
  through_point = pg3.incidence(1).through_point;
  in_plane.reserve(planes.size());
  for (std::size_t pi = 0; pi < planes.size(); ++pi) {
    const Subspace plane = planes.at(pi);
    in_plane.push_back(pg3.subspaces_within(plane, 1));
    for (std::uint32_t pt : pg3.points_of(plane)) {
      std::vector<std::uint32_t> pencil;
      std::set_intersection(in_plane.back().begin(), in_plane.back().end(), through_point[pt].begin(),
                            through_point[pt].end(), std::back_inserter(pencil));
      pencils.push_back(std::move(pencil));
    }
  }
}

AuditResult inner_product_audit(const LineFamilies& families, const FpVector& c) {
  const std::uint32_t p = c.p();
  auto sum = [&](const std::vector<std::uint32_t>& s) {
    std::uint64_t t = 0;
    for (std::uint32_t l : s) t += c[l];
    return static_cast<std::uint32_t>(t % p);
  };
  AuditResult r;
  std::uint64_t all = 0;
  for (std::size_t l = 0; l < c.size(); ++l) all += c[l];
  r.alpha = static_cast<std::uint32_t>(all % p);
  r.sets = 1;
  for (const auto* fam : {&families.in_plane, &families.through_point, &families.pencils})
    for (const auto& s : *fam) {
      ++r.sets;
      if (sum(s) != r.alpha) r.constant = false;
    }
  return r;
}

namespace {

std::vector<Subspace> embed_lines(const Field& f, int n, const std::vector<Subspace>& lines) {
  std::vector<Subspace> out;
  for (const Subspace& l : lines) {
    Matrix m(2, static_cast<std::size_t>(n + 1));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = l.row(r)[c];
    out.push_back(Subspace::from_rows(f, std::move(m)));
  }
  return out;
}

}  // namespace

SymplecticParityReport general_n_symplectic_check(int n, std::uint32_t q, unsigned threads,
                                                  const LinearCode* prebuilt) {
  if (n < 1 || n > 2) throw std::invalid_argument("supported for PG(3,q) and PG(5,q)");
  const FieldPtr field = make_field_of_order(q);
  const Field& f = *field;
  const std::uint32_t p = f.p();
  const int dim = 2 * n + 1;

  ProjectiveSpacePtr space;
  std::optional<LinearCode> built;
  if (prebuilt) {
    if (prebuilt->params() != CodeParams{dim, 1, n, false} || prebuilt->space().q() != q)
      throw std::invalid_argument("prebuilt code has the wrong parameters");
    space = prebuilt->space_ptr();
  } else {
    space = std::make_shared<ProjectiveSpace>(field, dim);
    built.emplace(build_code(space, 1, n, threads));
  }
  const LinearCode& code = prebuilt ? *prebuilt : *built;

  SymplecticParityReport rep;
  rep.n = n;
  rep.q = q;
  rep.code_dim = code.dimension();
  const SubspaceList& lines = space->subspaces(1);
  rep.lines = lines.size();

  const Quadric quadric = standard_quadric(space, +1);
  const GeneratorClasses gens = generators(quadric);
  const std::vector<Subspace>& cls = gens.class_a;

  // c(l) as an integer, and m2 over the class and over all generators
  std::vector<std::uint64_t> c_int(lines.size(), 0), m2_class(lines.size(), 0), m2_all(lines.size(), 0);
  for (const Subspace& g : cls) {
    for (std::uint32_t l : meeting_indices(*space, g, 1)) ++c_int[l];
    for (std::uint32_t l : space->subspaces_within(g, 1)) ++m2_class[l];
  }
  for (const auto* c : {&gens.class_a, &gens.class_b})
    for (const Subspace& g : *c)
      for (std::uint32_t l : space->subspaces_within(g, 1)) ++m2_all[l];

  std::int64_t prod = 1;
  for (int i = 1; i <= n - 1; ++i) {
    std::int64_t qi = 1;
    for (int t = 0; t < i; ++t) qi *= q;
    prod *= qi + 1;
  }
  const Incidence& inc = space->incidence(1);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    std::int64_t m1 = 0;
    for (std::uint32_t pt : inc.points_on[l]) m1 += quadric.contains(pt);
    const auto c = static_cast<std::int64_t>(c_int[l]);
    if (c % p == m1 % p) ++rep.congruence_holds;
    if (c == m1 * prod - static_cast<std::int64_t>(q) * static_cast<std::int64_t>(m2_class[l]))
      ++rep.class_identity_holds;
    if (c == m1 * prod - static_cast<std::int64_t>(q) * static_cast<std::int64_t>(m2_all[l]))
      ++rep.total_identity_holds;
    if (m1 == static_cast<std::int64_t>(q) + 1) ++rep.lines_on_quadric;
  }
  bool ok = rep.congruence_holds == rep.lines && rep.class_identity_holds == rep.lines;

  FpVector c_vec = code.zero();
  for (std::size_t l = 0; l < lines.size(); ++l) c_vec.set(l, static_cast<std::uint32_t>(c_int[l] % p));

  if (p == 2) {
    const BilinearForm b = quadric.form().polar();
    std::vector<std::uint32_t> absolute;
    const std::size_t len = static_cast<std::size_t>(dim + 1);
    for (std::size_t l = 0; l < lines.size(); ++l) {
      auto e = lines.entries_of(l);
      if (b.eval(e.subspan(0, len), e.subspan(len, len)) == 0) absolute.push_back(static_cast<std::uint32_t>(l));
    }
    rep.absolute_lines = absolute.size();
    const FpVector chi_s = char_vector_set(*space, 1, absolute);
    rep.sum_is_absolute = c_vec == chi_s;
    rep.sum_in_code = code.contains(c_vec);
    rep.symplectic_in_code = code.contains(chi_s);
    ok = ok && rep.sum_is_absolute && rep.sum_in_code && rep.symplectic_in_code;
  } else {
    const BilinearForm b = symplectic_form(dim, field);
    const std::size_t len = static_cast<std::size_t>(dim + 1);
    std::vector<std::uint32_t> absolute;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      auto e = lines.entries_of(l);
      if (b.eval(e.subspan(0, len), e.subspan(len, len)) == 0) absolute.push_back(static_cast<std::uint32_t>(l));
    }
    rep.absolute_lines = absolute.size();
    const FpVector chi_s = char_vector_set(*space, 1, absolute);

    auto [plus3, minus3] = standard_reguli(field);
    const auto plus = embed_lines(f, dim, plus3);
    const auto minus = embed_lines(f, dim, minus3);
    FpVector w = code.zero();
    for (const Subspace& l : plus) {
      const auto idx = lines.index_of(l);
      w.set(idx, w[idx] + 1);
      rep.absolute_in_plus += std::binary_search(absolute.begin(), absolute.end(), static_cast<std::uint32_t>(idx));
    }
    for (const Subspace& l : minus) {
      const auto idx = lines.index_of(l);
      w.set(idx, w[idx] + p - 1);
      rep.absolute_in_minus += std::binary_search(absolute.begin(), absolute.end(), static_cast<std::uint32_t>(idx));
    }
    rep.witness_orthogonal = code.in_dual(w);
    const FpVector pr = proj_map(*space, w, 0);
    rep.witness_proj_zero = pr.weight() == 0;
    rep.witness_product = chi_s.dot(w);
    rep.symplectic_in_code = code.contains(chi_s);
    const std::uint32_t expected = static_cast<std::uint32_t>(((2 + 2 * p - (q + 1) % p) % p));
    ok = ok && rep.witness_orthogonal && rep.witness_proj_zero && rep.witness_product == expected &&
         rep.witness_product != 0 && !rep.symplectic_in_code && rep.absolute_in_plus == 2 &&
         rep.absolute_in_minus == q + 1;
  }
  rep.passed = ok;
  return rep;
}

}  // namespace galois

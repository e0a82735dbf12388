#include "normtrace/conics.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "normtrace/minimal.hpp"
#include "normtrace/parallel.hpp"
#include "normtrace/projective.hpp"

namespace normtrace {

namespace {

constexpr std::array<std::string_view, 12> kPatternNames = {
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "conjugate_lines"};

enum Shape : unsigned {
  irreducible_shape,
  repeated_tangent,
  repeated_secant,
  two_tangents,
  tangent_secant,
  two_secants,
  conjugate_lines,
  shape_count
};

constexpr std::array<std::string_view, shape_count> kShapeNames = {
    "irreducible", "repeated_tangent", "repeated_secant", "two_tangents",
    "tangent_secant", "two_secants", "conjugate_lines"};

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

Elem eval_quadric(const Field& F, const ConicCoeffs& c, const Line& v) {
  const Elem mons[6] = {F.mul(v[0], v[0]), F.mul(v[1], v[1]), F.mul(v[2], v[2]),
                        F.mul(v[0], v[1]), F.mul(v[0], v[2]), F.mul(v[1], v[2])};
  Elem acc = Field::zero();
  for (int j = 0; j < 6; ++j) acc = F.add(acc, F.mul(c[j], mons[j]));
  return acc;
}

Line cross(const Field& F, const Line& a, const Line& b) {
  return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])), F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
          F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}

Line normalised(const Field& F, Line l) {
  if (!normalise(F, l)) throw std::logic_error("degenerate line");
  return l;
}

Shape shape_of(const HermitianPlane& ctx, const Conic& conic) {
  switch (conic.kind) {
    case ConicKind::irreducible:
      return irreducible_shape;
    case ConicKind::two_conjugate_lines:
      return conjugate_lines;
    case ConicKind::repeated_line:
      return line_type(ctx, conic.lines[0]) == LineType::tangent ? repeated_tangent : repeated_secant;
    case ConicKind::two_rational_lines: {
      const int secants = (line_type(ctx, conic.lines[0]) == LineType::secant) +
                          (line_type(ctx, conic.lines[1]) == LineType::secant);
      return secants == 0 ? two_tangents : secants == 1 ? tangent_secant : two_secants;
    }
  }
  throw std::logic_error("unknown conic kind");
}

/// Bit i set when catalog case kPatternNames[i] admits the data.
unsigned catalog_mask(std::uint64_t q, Shape shape, std::size_t s) {
  unsigned mask = 0;
  auto set = [&](int i) { mask |= 1u << i; };
  switch (shape) {
    case irreducible_shape: {
      if (s == 0) set(0);
      if (s == 1) set(1);
      if (s == 2) set(2);
      if (s == q + 1) set(3);
      if (s >= 2 * q && s <= 2 * q + 2) set(4);
      if (s >= q && s <= q + 2) set(5);
      // ceil(q - 2 sqrt q + 2) .. floor(q + 2 sqrt q + 2)
      const std::uint64_t root = isqrt(4 * q);
      const std::uint64_t lo = q + 2 - root;
      const std::uint64_t hi = q + 2 + root;
      if (s >= lo && s <= hi) set(6);
      break;
    }
    case repeated_tangent:
      if (s == 1) set(7);
      break;
    case repeated_secant:
      if (s == q + 1) set(7);
      break;
    case two_tangents:
      if (s == 2) set(8);
      break;
    case tangent_secant:
      if (s == q + 1 || s == q + 2) set(9);
      break;
    case two_secants:
      if (s == 2 * q + 1 || s == 2 * q + 2) set(10);
      break;
    case conjugate_lines:
      if (s <= 1) set(11);
      break;
    default:
      break;
  }
  return mask;
}

bool predicate(std::uint64_t q, Shape shape, std::size_t size) {
  if (q <= 7) throw std::invalid_argument("the minimality criterion for conics needs q > 7");
  return (shape == irreducible_shape && size > 4) || shape == two_secants;
}

}  // namespace

std::string_view to_string(ConicKind k) {
  switch (k) {
    case ConicKind::irreducible:
      return "irreducible";
    case ConicKind::repeated_line:
      return "repeated_line";
    case ConicKind::two_rational_lines:
      return "two_rational_lines";
    case ConicKind::two_conjugate_lines:
      return "two_conjugate_lines";
  }
  return "unknown";
}

std::string_view to_string(LineType t) { return t == LineType::tangent ? "tangent" : "secant"; }

HermitianPlane::HermitianPlane(std::shared_ptr<const Tower> tower) : tower_(std::move(tower)) {
  if (tower_->r() != 2) throw std::invalid_argument("conics live on the Hermitian curve, r = 2");
  if (tower_->q() % 2 == 0) throw std::invalid_argument("conic classification needs q odd");
  const Field& F = tower_->ext();
  curve_ = enumerate_affine(tower_);
  points_ = hermitian_projective_points(*tower_);
  affine_count_ = static_cast<std::size_t>(
      std::count_if(points_.begin(), points_.end(), [](const ProjectivePoint& pt) { return pt.z.v != 0; }));
  if (affine_count_ != curve_->size()) throw std::logic_error("affine Hermitian points disagree with the curve");
  for (std::size_t i = 0; i < affine_count_; ++i) {
    if (points_[i].x != curve_->points()[i].x || points_[i].y != curve_->points()[i].y) {
      throw std::logic_error("affine Hermitian points are not in curve order");
    }
  }

  monomials_.reserve(points_.size());
  for (const auto& pt : points_) {
    monomials_.push_back({F.mul(pt.x, pt.x), F.mul(pt.y, pt.y), F.mul(pt.z, pt.z), F.mul(pt.x, pt.y),
                          F.mul(pt.x, pt.z), F.mul(pt.y, pt.z)});
  }

  const std::uint64_t lines = *projective_count(3, F.order());
  line_sizes_.assign(lines, 0);
  Line l;
  for (std::uint64_t idx = 0; idx < lines; ++idx) {
    projective_unrank(idx, F.order(), l);
    for (const auto& pt : points_) {
      const Elem v = F.add(F.add(F.mul(l[0], pt.x), F.mul(l[1], pt.y)), F.mul(l[2], pt.z));
      if (v.v == 0) ++line_sizes_[idx];
    }
  }

  Matrix gen(6, affine_count_);
  for (std::size_t i = 0; i < affine_count_; ++i) {
    for (std::size_t j = 0; j < 6; ++j) gen(j, i) = monomials_[i][j];
  }
  basis_ = row_space_basis(F, std::move(gen));
}

std::size_t HermitianPlane::line_size(const Line& line) const {
  const Line l = normalised(field(), line);
  return line_sizes_[projective_rank(l, field().order())];
}

LineType line_type(const HermitianPlane& ctx, const Line& line) {
  const std::size_t s = ctx.line_size(line);
  if (s == 1) return LineType::tangent;
  if (s == ctx.q() + 1) return LineType::secant;
  throw std::logic_error("line meets the Hermitian curve in " + std::to_string(s) + " points");
}

Conic classify_conic(const HermitianPlane& ctx, const ConicCoeffs& coeffs) {
  const Field& F = ctx.field();
  if (std::all_of(coeffs.begin(), coeffs.end(), [](Elem e) { return e.v == 0; })) {
    throw std::invalid_argument("the zero polynomial is not a conic");
  }
  Conic out;
  out.coeffs = coeffs;
  const auto [a, b, c, d, e, f] = coeffs;
  // 4 abc + def - af^2 - be^2 - cd^2, a multiple of the Gram determinant.
  const Elem four = F.from_int(4);
  Elem det = F.mul(four, F.mul(a, F.mul(b, c)));
  det = F.add(det, F.mul(d, F.mul(e, f)));
  det = F.sub(det, F.mul(a, F.mul(f, f)));
  det = F.sub(det, F.mul(b, F.mul(e, e)));
  det = F.sub(det, F.mul(c, F.mul(d, d)));
  if (det.v != 0) return out;

  const Elem two = F.from_int(2);
  Matrix G(3, 3);
  G(0, 0) = F.mul(two, a);
  G(1, 1) = F.mul(two, b);
  G(2, 2) = F.mul(two, c);
  G(0, 1) = G(1, 0) = d;
  G(0, 2) = G(2, 0) = e;
  G(1, 2) = G(2, 1) = f;
  const std::size_t rk = rank(F, G);
  if (rk == 1) {
    out.kind = ConicKind::repeated_line;
    for (std::size_t i = 0; i < 3; ++i) {
      const Line row{G(i, 0), G(i, 1), G(i, 2)};
      if (row[0].v || row[1].v || row[2].v) {
        out.lines.push_back(normalised(F, row));
        break;
      }
    }
    return out;
  }

  const auto kernel = nullspace(F, G);
  const Line P{kernel[0][0], kernel[0][1], kernel[0][2]};
  std::size_t lead = 0;
  while (P[lead].v == 0) ++lead;
  Line u{}, w{};
  u[(lead + 1) % 3] = Field::one();
  w[(lead + 2) % 3] = Field::one();
  Line uw{};
  for (int i = 0; i < 3; ++i) uw[i] = F.add(u[i], w[i]);
  const Elem A = eval_quadric(F, coeffs, u);
  const Elem C = eval_quadric(F, coeffs, w);
  const Elem B = F.div(F.sub(F.sub(eval_quadric(F, coeffs, uw), A), C), two);
  const Elem disc = F.sub(F.mul(B, B), F.mul(A, C));
  bool ok = false;
  const Elem root = F.sqrt(disc, ok);
  if (!ok) {
    out.kind = ConicKind::two_conjugate_lines;
    return out;
  }
  out.kind = ConicKind::two_rational_lines;
  std::array<Line, 2> dirs;
  if (A.v != 0) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      const Elem s = sgn == 0 ? F.add(F.neg(B), root) : F.sub(F.neg(B), root);
      for (int i = 0; i < 3; ++i) dirs[sgn][i] = F.add(F.mul(s, u[i]), F.mul(A, w[i]));
    }
  } else {
    dirs[0] = u;
    for (int i = 0; i < 3; ++i) dirs[1][i] = F.add(F.mul(F.neg(C), u[i]), F.mul(F.mul(two, B), w[i]));
  }
  for (const auto& v : dirs) out.lines.push_back(normalised(F, cross(F, P, v)));
  return out;
}

IntersectionSizes intersection_sizes(const HermitianPlane& ctx, const Conic& conic) {
  const Field& F = ctx.field();
  IntersectionSizes s;
  for (std::size_t i = 0; i < ctx.points().size(); ++i) {
    const auto& m = ctx.monomials(i);
    Elem acc = Field::zero();
    for (int j = 0; j < 6; ++j) acc = F.add(acc, F.mul(conic.coeffs[j], m[j]));
    if (acc.v == 0) {
      ++s.projective;
      if (i < ctx.affine_count()) ++s.affine;
    }
  }
  return s;
}

PatternReport pattern_match(const HermitianPlane& ctx, const Conic& conic, const IntersectionSizes& sizes) {
  PatternReport rep;
  rep.sizes = sizes;
  const unsigned mask = catalog_mask(ctx.q(), shape_of(ctx, conic), sizes.projective);
  for (std::size_t i = 0; i < kPatternNames.size(); ++i) {
    if (mask & (1u << i)) rep.compatible.emplace_back(kPatternNames[i]);
  }
  rep.violation = rep.compatible.empty();
  return rep;
}

bool prop53_minimality_predicate(const HermitianPlane& ctx, const Conic& conic, const IntersectionSizes& sizes,
                                 bool affine) {
  return predicate(ctx.q(), shape_of(ctx, conic), affine ? sizes.affine : sizes.projective);
}

std::vector<Elem> conic_codeword(const HermitianPlane& ctx, const ConicCoeffs& coeffs) {
  const Field& F = ctx.field();
  std::vector<Elem> out(ctx.affine_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& m = ctx.monomials(i);
    Elem acc = Field::zero();
    for (int j = 0; j < 6; ++j) acc = F.add(acc, F.mul(coeffs[j], m[j]));
    out[i] = acc;
  }
  return out;
}

std::string shape_label(const HermitianPlane& ctx, const Conic& conic) {
  return std::string(kShapeNames[shape_of(ctx, conic)]);
}

namespace {

struct Tally {
  std::uint64_t conics = 0;
  std::vector<std::uint64_t> hist;         // shape * stride + projective size
  std::vector<std::uint64_t> affine_hist;  // shape * stride + affine size
  std::uint64_t violation_count = 0;
  std::vector<ConicRecord> violations;
  std::array<std::array<std::uint64_t, 2>, 2> agree_proj{};
  std::array<std::array<std::uint64_t, 2>, 2> agree_aff{};
  std::vector<ConicRecord> disagreements;
};

class SurveyWorker {
 public:
  SurveyWorker(const HermitianPlane& ctx, const SurveyOptions& options, Tally& tally)
      : ctx_(ctx), options_(options), tally_(tally), stride_(ctx.points().size() + 1) {
    tally_.hist.assign(shape_count * stride_, 0);
    tally_.affine_hist.assign(shape_count * stride_, 0);
  }

  void visit(const ConicCoeffs& coeffs, IntersectionSizes sizes) {
    const Conic conic = classify_conic(ctx_, coeffs);
    const Shape shape = shape_of(ctx_, conic);
    ++tally_.conics;
    ++tally_.hist[shape * stride_ + sizes.projective];
    ++tally_.affine_hist[shape * stride_ + sizes.affine];
    const unsigned mask = catalog_mask(ctx_.q(), shape, sizes.projective);
    const bool violation = mask == 0 || sizes.projective - sizes.affine > 1;
    if (violation) {
      ++tally_.violation_count;
      if (tally_.violations.size() < options_.max_recorded) tally_.violations.push_back(record(conic, sizes));
    }
    if (!options_.validate) return;
    const bool pp = predicate(ctx_.q(), shape, sizes.projective);
    const bool pa = predicate(ctx_.q(), shape, sizes.affine);
    const auto verdict =
        kernel_minimality(ctx_.field(), ctx_.validation_basis(), conic_codeword(ctx_, conic.coeffs));
    ++tally_.agree_proj[pp][verdict.is_minimal];
    ++tally_.agree_aff[pa][verdict.is_minimal];
    if (pp != verdict.is_minimal) tally_.disagreements.push_back(record(conic, sizes));
  }

  ConicRecord record(const Conic& conic, const IntersectionSizes& sizes) const {
    ConicRecord rec;
    rec.conic = conic;
    rec.shape = shape_label(ctx_, conic);
    rec.pattern = pattern_match(ctx_, conic, sizes);
    if (ctx_.q() > 7) {
      rec.predicate_projective = prop53_minimality_predicate(ctx_, conic, sizes, false);
      rec.predicate_affine = prop53_minimality_predicate(ctx_, conic, sizes, true);
    }
    if (options_.validate) {
      const auto verdict =
          kernel_minimality(ctx_.field(), ctx_.validation_basis(), conic_codeword(ctx_, conic.coeffs));
      rec.oracle_minimal = verdict.is_minimal;
      rec.kernel_dimension = verdict.kernel_dimension;
    }
    return rec;
  }

 private:
  const HermitianPlane& ctx_;
  const SurveyOptions& options_;
  Tally& tally_;
  std::size_t stride_;
};

}  // namespace

SurveyReport survey(const HermitianPlane& ctx, const SurveyOptions& options) {
  const Field& F = ctx.field();
  const std::uint64_t Q = F.order();
  const auto total = projective_count(6, Q);
  if (options.validate) {
    if (ctx.q() <= 7) throw std::invalid_argument("the minimality criterion for conics needs q > 7");
    if (ctx.validation_rank() != 6) throw std::logic_error("conic evaluation code does not have dimension 6");
  }

  std::vector<Tally> tallies;
  if (options.mode == SampleMode::exhaustive) {
    if (!total || *total > options.cap) throw std::invalid_argument("conic survey exceeds the enumeration cap");
    // Classes with a nonzero entry among the first five coefficients are
    // (prefix class, c6); for a fixed prefix every point with YZ != 0 lies on
    // exactly one of the Q conics.
    const std::uint64_t prefixes = *projective_count(5, Q);
    constexpr std::uint64_t kChunk = 64;
    const std::size_t chunks = chunk_count_for(prefixes, kChunk);
    tallies.resize(chunks + 1);
    for_each_chunk(chunks + 1, options.workers, [&](std::size_t c) {
      SurveyWorker worker(ctx, options, tallies[c]);
      if (c == chunks) {
        Conic last;
        last.coeffs = {Elem{0}, Elem{0}, Elem{0}, Elem{0}, Elem{0}, Elem{1}};
        worker.visit(last.coeffs, intersection_sizes(ctx, last));
        return;
      }
      const std::size_t npts = ctx.points().size();
      std::vector<std::uint32_t> proj(Q), aff(Q);
      std::array<Elem, 5> prefix;
      const auto range = chunk_range(prefixes, kChunk, c);
      for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
        projective_unrank(idx, Q, prefix);
        std::fill(proj.begin(), proj.end(), 0);
        std::fill(aff.begin(), aff.end(), 0);
        std::uint32_t all_proj = 0, all_aff = 0;
        for (std::size_t i = 0; i < npts; ++i) {
          const auto& m = ctx.monomials(i);
          Elem s = Field::zero();
          for (int j = 0; j < 5; ++j) s = F.add(s, F.mul(prefix[j], m[j]));
          const bool affine = i < ctx.affine_count();
          if (m[5].v == 0) {
            if (s.v == 0) {
              ++all_proj;
              all_aff += affine;
            }
            continue;
          }
          const Elem c6 = F.neg(F.div(s, m[5]));
          ++proj[c6.v];
          aff[c6.v] += affine;
        }
        ConicCoeffs coeffs{prefix[0], prefix[1], prefix[2], prefix[3], prefix[4], Elem{0}};
        for (std::uint32_t v = 0; v < Q; ++v) {
          coeffs[5] = Elem{v};
          worker.visit(coeffs, {all_proj + proj[v], all_aff + aff[v]});
        }
      }
    });
  } else {
    if (!total) throw std::invalid_argument("conic class count overflows");
    constexpr std::uint64_t kChunk = 1024;
    const std::size_t chunks = chunk_count_for(options.samples, kChunk);
    tallies.resize(chunks);
    for_each_chunk(chunks, options.workers, [&](std::size_t c) {
      SurveyWorker worker(ctx, options, tallies[c]);
      auto rng = chunk_rng(options.seed, c);
      std::uniform_int_distribution<std::uint64_t> draw(0, *total - 1);
      Conic conic;
      const auto range = chunk_range(options.samples, kChunk, c);
      for (std::uint64_t i = range.begin; i < range.end; ++i) {
        projective_unrank(draw(rng), Q, conic.coeffs);
        worker.visit(conic.coeffs, intersection_sizes(ctx, conic));
      }
    });
  }

  SurveyReport rep;
  rep.q = ctx.q();
  rep.validated = options.validate;
  const std::size_t stride = ctx.points().size() + 1;
  std::vector<std::uint64_t> hist(shape_count * stride, 0), affine_hist(shape_count * stride, 0);
  for (auto& t : tallies) {
    rep.conics += t.conics;
    for (std::size_t i = 0; i < hist.size(); ++i) {
      hist[i] += t.hist[i];
      affine_hist[i] += t.affine_hist[i];
    }
    rep.violation_count += t.violation_count;
    for (auto& v : t.violations) {
      if (rep.violations.size() < options.max_recorded) rep.violations.push_back(std::move(v));
    }
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        rep.agreement_projective[a][b] += t.agree_proj[a][b];
        rep.agreement_affine[a][b] += t.agree_aff[a][b];
      }
    }
    for (auto& d : t.disagreements) rep.disagreements.push_back(std::move(d));
  }
  for (unsigned s = 0; s < shape_count; ++s) {
    for (std::size_t size = 0; size < stride; ++size) {
      if (hist[s * stride + size]) rep.histogram[{std::string(kShapeNames[s]), size}] = hist[s * stride + size];
      if (affine_hist[s * stride + size]) {
        rep.affine_histogram[{std::string(kShapeNames[s]), size}] = affine_hist[s * stride + size];
      }
    }
  }
  return rep;
}

}  // namespace normtrace

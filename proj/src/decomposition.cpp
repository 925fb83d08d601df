#include "icr/decomposition.hpp"

#include "cover_internal.hpp"
#include "icr/errors.hpp"
#include "term_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>

namespace icr {

std::string to_string(const TraceStep& s) {
  switch (s.kind) {
    case TraceStep::Kind::Strip:
      return "Strip(" + std::to_string(s.i + 1) + ", " + s.value.get_str() + ")";
    case TraceStep::Kind::Project:
      return "Project(" + std::to_string(s.i + 1) + ", " + std::to_string(s.j + 1) + ", " + s.value.get_str() + ")";
    case TraceStep::Kind::Base:
      return "Base(" + std::to_string(s.dim) + ", " + s.method + ")";
    case TraceStep::Kind::Cover5:
      return "Cover5(" + std::to_string(s.subcone + 1) + ")";
  }
  return "?";
}

EngineOptions default_engine_options() {
  EngineOptions o;
  if (const char* env = std::getenv("ICR_NODE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw InvalidArgument("ICR_NODE_BUDGET must be a positive integer");
    o.node_budget = v;
  }
  return o;
}

namespace {

struct Context {
  const EngineOptions* options = nullptr;
  std::vector<TraceStep>* trace = nullptr;
  const std::vector<TraceStep>* replay = nullptr;
  std::size_t cursor = 0;
};

std::vector<Term> merge_terms(const std::vector<Term>& terms) {
  std::vector<Term> out;
  for (const Term& t : terms) {
    if (sgn(t.coeff) == 0) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const Term& o) { return o.vector == t.vector; });
    if (it == out.end()) out.push_back(t);
    else it->coeff += t.coeff;
  }
  return out;
}

TraceStep step(TraceStep::Kind kind, std::size_t dim) {
  TraceStep s;
  s.kind = kind;
  s.dim = dim;
  return s;
}

[[noreturn]] void replay_mismatch(const std::string& what) { throw InternalError("replay: " + what); }

}  // namespace

struct DecompositionEngine::Node {
  enum class Action { Search, Unimodular, Strip, Project, Cover5, Fallback };

  struct Facet {
    ConeFrame frame;
    std::unique_ptr<Node> node;
  };
  struct Projection {
    ConeProjection proj;
    std::unique_ptr<Node> node;
    std::map<IntVector, IntVector> lift;  // projected HB candidate -> preimage in par R ∪ {r^l}
  };

  explicit Node(IntMatrix gens)
      : r(std::move(gens)), k(r.cols()), delta(abs(det(r))), rinv(inverse(r)), profile(coset_profile(SimplicialCone(r))) {
    if (k <= 3) action = Action::Search;
    else if (delta == 1) action = Action::Unimodular;
    else {
      for (std::size_t i = 0; i < k && action == Action::Fallback; ++i)
        if (profile.integral_flags[i]) {
          action = Action::Strip;
          strip_index = i;
        }
      if (action == Action::Fallback && !profile.equal_pairs.empty()) action = Action::Project;
      if (action == Action::Fallback && cover_applies()) action = Action::Cover5;
    }
  }

  bool cover_applies() const {
    return k == 4 && delta == 5 && profile.nontrivial_class_count == 4 && profile.equal_pairs.empty();
  }

  const ParallelepipedSet& par() {
    if (!par_) par_ = enumerate_parallelepiped(SimplicialCone(r));
    return *par_;
  }

  const std::vector<IntVector>& hilbert() {
    if (!hb_) {
      hb_ = icr::hilbert_basis(SimplicialCone(r)).elements;
      for (const IntVector& h : *hb_) hb_scaled.push_back(scaled(h));
    }
    return *hb_;
  }

  // delta·R^{-1}·v, integral for every integer v.
  IntVector scaled(const IntVector& v) const {
    RatVector l = rinv * v;
    IntVector out(k);
    for (std::size_t i = 0; i < k; ++i) {
      Rat s = l[i] * Rat(delta);
      if (s.get_den() != 1) throw InternalError("scaled coefficients are not integral");
      out[i] = s.get_num();
    }
    return out;
  }

  Facet& facet(std::size_t i) {
    auto& slot = facets[i];
    if (!slot) {
      ConeFrame f = frame(SimplicialCone(r.without_column(i)));
      auto node = std::make_unique<Node>(f.coords);
      slot = std::make_unique<Facet>(Facet{std::move(f), std::move(node)});
    }
    return *slot;
  }

  Projection& projection(std::size_t i) {
    auto& slot = projections[i];
    if (!slot) {
      ConeProjection proj = project_cone(SimplicialCone(r), i);
      auto node = std::make_unique<Node>(proj.cone.generators());
      std::map<IntVector, IntVector> lift;
      std::map<IntVector, Rat> lift_lambda;
      for (const auto& y : par().points) {
        IntVector img = proj.project(y.vector);
        if (is_zero(img)) continue;
        auto it = lift_lambda.find(img);
        if (it == lift_lambda.end() || y.lambda[i] < it->second) {
          lift[img] = y.vector;
          lift_lambda[img] = y.lambda[i];
        }
      }
      for (std::size_t j = 0; j < proj.kept.size(); ++j) lift[proj.cone.generator(j)] = r.column(proj.kept[j]);
      slot = std::make_unique<Projection>(Projection{std::move(proj), std::move(node), std::move(lift)});
    }
    return *slot;
  }

  void ensure_cover() {
    if (cover) return;
    cover = std::make_unique<UnimodularCover>(detail::build_cover_in_coords(r));
    if (!cover->certified()) throw InternalError("cover5: certificate failed");
    for (const IntMatrix& sub : cover->subcones) cover_inv.push_back(inverse(sub));
  }

  void run(const IntVector& x, Context& ctx, std::vector<Term>& out) {
    if (is_zero(x)) return;
    const TraceStep* rec = nullptr;
    if (ctx.replay) {
      if (ctx.cursor >= ctx.replay->size()) replay_mismatch("trace ended early");
      rec = &(*ctx.replay)[ctx.cursor++];
      if (rec->dim != k) replay_mismatch("dimension mismatch at " + to_string(*rec));
    }

    Action act = action;
    if (rec) {
      switch (rec->kind) {
        case TraceStep::Kind::Strip: act = Action::Strip; break;
        case TraceStep::Kind::Project: act = Action::Project; break;
        case TraceStep::Kind::Cover5: act = Action::Cover5; break;
        case TraceStep::Kind::Base:
          if (rec->method == "search") act = Action::Search;
          else if (rec->method == "unimodular") act = Action::Unimodular;
          else if (rec->method == "fallback") act = Action::Fallback;
          else replay_mismatch("unknown base method " + rec->method);
          break;
      }
    }

    switch (act) {
      case Action::Search: return run_search(x, ctx, out, rec);
      case Action::Unimodular: return run_unimodular(x, ctx, out);
      case Action::Strip: return run_strip(x, ctx, out, rec);
      case Action::Project: return run_project(x, ctx, out, rec);
      case Action::Cover5: return run_cover(x, ctx, out, rec);
      case Action::Fallback: return run_fallback(x, ctx, out);
    }
  }

  void emit_picks(const detail::SearchOutcome& res, std::vector<Term>& out) {
    for (const auto& [idx, c] : res.picks) out.push_back({c, (*hb_)[idx]});
  }

  void run_search(const IntVector& x, Context& ctx, std::vector<Term>& out, const TraceStep* rec) {
    if (rec && k > 3) replay_mismatch("base search needs dimension <= 3");
    TraceStep s = step(TraceStep::Kind::Base, k);
    s.method = "search";
    ctx.trace->push_back(s);
    hilbert();
    auto res = detail::search_min_terms(hb_scaled, scaled(x), k, ctx.options->node_budget);
    if (res.status == detail::SearchOutcome::Status::BudgetExhausted)
      throw Unresolved("base search exceeded the node budget in dimension " + std::to_string(k));
    if (res.status != detail::SearchOutcome::Status::Found)
      throw InternalError("no decomposition with at most " + std::to_string(k) + " terms in dimension " + std::to_string(k));
    emit_picks(res, out);
  }

  void run_unimodular(const IntVector& x, Context& ctx, std::vector<Term>& out) {
    if (delta != 1) replay_mismatch("unimodular step on a cone of multiplicity " + delta.get_str());
    TraceStep s = step(TraceStep::Kind::Base, k);
    s.method = "unimodular";
    ctx.trace->push_back(s);
    RatVector l = rinv * x;
    for (std::size_t i = 0; i < k; ++i) {
      if (l[i].get_den() != 1 || sgn(l[i]) < 0) throw InternalError("unimodular coefficients are not natural numbers");
      if (sgn(l[i]) > 0) out.push_back({l[i].get_num(), r.column(i)});
    }
  }

  void run_strip(const IntVector& x, Context& ctx, std::vector<Term>& out, const TraceStep* rec) {
    const std::size_t i = rec ? rec->i : strip_index;
    if (i >= k || !profile.integral_flags[i]) replay_mismatch("strip index without integral dual vector");
    RatVector l = rinv * x;
    const Rat& mu = l[i];
    if (mu.get_den() != 1 || sgn(mu) < 0) throw InternalError("strip coefficient " + mu.get_str() + " is not a natural number");
    if (rec && rec->value != mu.get_num()) replay_mismatch("strip value differs");
    TraceStep s = step(TraceStep::Kind::Strip, k);
    s.i = i;
    s.value = mu.get_num();
    ctx.trace->push_back(s);

    IntVector gen = r.column(i);
    if (sgn(mu) > 0) out.push_back({mu.get_num(), gen});
    IntVector rem = x - mu.get_num() * gen;
    Facet& f = facet(i);
    std::vector<Term> sub;
    f.node->run(f.frame.to_coords(rem), ctx, sub);
    for (Term& t : sub) out.push_back({t.coeff, f.frame.from_coords(t.vector)});
  }

  void run_project(const IntVector& x, Context& ctx, std::vector<Term>& out, const TraceStep* rec) {
    RatVector mu = rinv * x;
    std::size_t pi = k, pj = k;
    if (rec) {
      pi = rec->i;
      pj = rec->j;
      if (pi >= k || pj >= k || pi == pj || profile.integral_flags[pi] || profile.class_of[pi] != profile.class_of[pj])
        replay_mismatch("projection pair is not an equal-coset pair");
      if (mu[pi] < mu[pj]) replay_mismatch("projection pair has mu_i < mu_j");
    } else {
      for (auto [a, b] : profile.equal_pairs) {
        if (profile.integral_flags[a]) continue;
        std::size_t i = a, j = b;
        if (mu[b] > mu[a]) std::swap(i, j);
        if (pi == k || std::make_pair(i, j) < std::make_pair(pi, pj)) {
          pi = i;
          pj = j;
        }
      }
      if (pi == k) throw InternalError("projection requested without an equal-coset pair");
    }
    const std::size_t slot = ctx.trace->size();
    TraceStep s = step(TraceStep::Kind::Project, k);
    s.i = pi;
    s.j = pj;
    ctx.trace->push_back(s);

    Projection& p = projection(pi);
    std::vector<Term> sub;
    p.node->run(p.proj.project(x), ctx, sub);

    std::vector<Term> lifted;
    IntVector rem = x;
    for (const Term& t : sub) {
      auto it = p.lift.find(t.vector);
      if (it == p.lift.end()) throw InternalError("projected term " + icr::to_string(t.vector) + " has no preimage");
      lifted.push_back({t.coeff, it->second});
      rem = rem - t.coeff * it->second;
    }
    RatVector rl = rinv * rem;
    for (std::size_t l = 0; l < k; ++l)
      if (l != pi && sgn(rl[l]) != 0) throw InternalError("projection remainder is not a multiple of r^i");
    const Rat& sigma = rl[pi];
    if (sigma.get_den() != 1 || sgn(sigma) < 0) throw InternalError("sigma = " + sigma.get_str() + " is not a natural number");
    if (rec && rec->value != sigma.get_num()) replay_mismatch("projection sigma differs");
    (*ctx.trace)[slot].value = sigma.get_num();

    if (sgn(sigma) > 0) out.push_back({sigma.get_num(), r.column(pi)});
    out.insert(out.end(), lifted.begin(), lifted.end());
  }

  void run_cover(const IntVector& x, Context& ctx, std::vector<Term>& out, const TraceStep* rec) {
    if (!cover_applies()) replay_mismatch("cover step on a cone without the det-5 premises");
    ensure_cover();
    std::optional<std::size_t> hit;
    std::vector<RatVector> coeffs(cover_inv.size());
    for (std::size_t c = 0; c < cover_inv.size(); ++c) {
      if (rec && c != rec->subcone) continue;
      coeffs[c] = cover_inv[c] * x;
      if (std::all_of(coeffs[c].begin(), coeffs[c].end(), [](const Rat& v) { return sgn(v) >= 0; })) {
        hit = c;
        break;
      }
    }
    if (!hit) {
      if (rec) replay_mismatch("recorded subcone does not contain the point");
      throw InternalError("no subcone of the det-5 cover contains " + icr::to_string(x));
    }
    TraceStep s = step(TraceStep::Kind::Cover5, k);
    s.subcone = *hit;
    ctx.trace->push_back(s);
    const IntMatrix& sub = cover->subcones[*hit];
    for (std::size_t j = 0; j < 4; ++j) {
      const Rat& c = coeffs[*hit][j];
      if (c.get_den() != 1) throw InternalError("non-integral coefficient in a unimodular subcone");
      if (sgn(c) > 0) out.push_back({c.get_num(), sub.column(j)});
    }
  }

  void run_fallback(const IntVector& x, Context& ctx, std::vector<Term>& out) {
    TraceStep s = step(TraceStep::Kind::Base, k);
    s.method = "fallback";
    ctx.trace->push_back(s);
    hilbert();
    const std::size_t limit = 2 * k - 2;
    auto res = detail::search_min_terms(hb_scaled, scaled(x), limit, ctx.options->node_budget);
    if (res.status == detail::SearchOutcome::Status::BudgetExhausted)
      throw Unresolved("fallback search exceeded the node budget (" + std::to_string(ctx.options->node_budget) +
                       ") in dimension " + std::to_string(k) + " with multiplicity " + delta.get_str());
    if (res.status != detail::SearchOutcome::Status::Found)
      throw InternalError("no decomposition with at most " + std::to_string(limit) + " terms");
    emit_picks(res, out);
  }

  IntMatrix r;
  std::size_t k;
  Int delta;
  RatMatrix rinv;
  CosetProfile profile;
  Action action = Action::Fallback;
  std::size_t strip_index = 0;
  std::unique_ptr<UnimodularCover> cover;
  std::vector<RatMatrix> cover_inv;
  std::vector<IntVector> hb_scaled;

 private:
  std::optional<ParallelepipedSet> par_;
  std::optional<std::vector<IntVector>> hb_;
  std::map<std::size_t, std::unique_ptr<Facet>> facets;
  std::map<std::size_t, std::unique_ptr<Projection>> projections;
};

DecompositionEngine::DecompositionEngine(SimplicialCone cone, EngineOptions options)
    : cone_(std::move(cone)), options_(options) {
  ConeFrame f = frame(cone_);
  basis_ = f.basis;
  transform_ = f.transform;
  root_ = std::make_unique<Node>(f.coords);
}

DecompositionEngine::~DecompositionEngine() = default;
DecompositionEngine::DecompositionEngine(DecompositionEngine&&) noexcept = default;
DecompositionEngine& DecompositionEngine::operator=(DecompositionEngine&&) noexcept = default;

const HilbertBasis& DecompositionEngine::hilbert_basis() const {
  if (!hb_) {
    hb_ = std::make_unique<HilbertBasis>();
    for (const IntVector& h : root_->hilbert()) hb_->elements.push_back(basis_ * h);
  }
  return *hb_;
}

const UnimodularCover* DecompositionEngine::root_cover() const {
  if (!root_->cover_applies()) return nullptr;
  if (!cover_) cover_ = std::make_unique<UnimodularCover>(build_cover_det5(cone_));
  return cover_.get();
}

namespace {

Decomposition assemble(const SimplicialCone& cone, const IntVector& z, const std::vector<Term>& coords_terms,
                       const IntMatrix& basis, ReductionTrace trace, const HilbertBasis& hb, bool check) {
  Decomposition d;
  d.target = z;
  std::vector<Term> terms;
  for (const Term& t : coords_terms) terms.push_back({t.coeff, basis * t.vector});
  d.terms = merge_terms(terms);
  d.raw_term_count = d.terms.size();
  d.trace = std::move(trace);
  d.all_hilbert = std::all_of(d.terms.begin(), d.terms.end(), [&](const Term& t) { return hb.contains(t.vector); });
  if (check) validate(cone, d);
  return d;
}

}  // namespace

Decomposition DecompositionEngine::decompose(const IntVector& z) const {
  require_in_cone(cone_, z);
  ReductionTrace trace;
  Context ctx;
  ctx.options = &options_;
  ctx.trace = &trace.steps;
  std::vector<Term> terms;
  root_->run(transform_.to_coords(z), ctx, terms);
  return assemble(cone_, z, terms, basis_, std::move(trace), hilbert_basis(), options_.validate);
}

Decomposition DecompositionEngine::replay(const IntVector& z, const ReductionTrace& recorded) const {
  require_in_cone(cone_, z);
  ReductionTrace trace;
  Context ctx;
  ctx.options = &options_;
  ctx.trace = &trace.steps;
  ctx.replay = &recorded.steps;
  std::vector<Term> terms;
  root_->run(transform_.to_coords(z), ctx, terms);
  if (ctx.cursor != recorded.steps.size()) replay_mismatch("trace has unused steps");
  if (trace != recorded) replay_mismatch("re-executed trace differs from the recorded one");
  return assemble(cone_, z, terms, basis_, std::move(trace), hilbert_basis(), true);
}

Decomposition DecompositionEngine::reduce_to_hilbert(const Decomposition& d) const {
  const HilbertBasis& hb = hilbert_basis();
  std::vector<Term> out;
  for (const Term& t : d.terms) {
    if (hb.contains(t.vector)) {
      out.push_back(t);
      continue;
    }
    root_->hilbert();
    auto res = detail::search_min_terms(root_->hb_scaled, root_->scaled(transform_.to_coords(t.vector)),
                                        root_->hb_scaled.size(), options_.node_budget);
    if (res.status == detail::SearchOutcome::Status::BudgetExhausted)
      throw Unresolved("reduce_to_hilbert exceeded the node budget");
    if (res.status != detail::SearchOutcome::Status::Found)
      throw InternalError("cone point " + icr::to_string(t.vector) + " is not generated by the Hilbert basis");
    for (const auto& [idx, c] : res.picks) out.push_back({t.coeff * c, hb.elements[idx]});
  }
  Decomposition r = d;
  r.terms = merge_terms(out);
  r.all_hilbert = true;
  validate(cone_, r);
  return r;
}

Decomposition decompose(const SimplicialCone& cone, const IntVector& z) { return DecompositionEngine(cone).decompose(z); }

Decomposition replay(const SimplicialCone& cone, const IntVector& z, const ReductionTrace& trace) {
  return DecompositionEngine(cone).replay(z, trace);
}

Decomposition reduce_to_hilbert(const SimplicialCone& cone, const Decomposition& d) {
  return DecompositionEngine(cone).reduce_to_hilbert(d);
}

Decomposition base_case_solve(const SimplicialCone& cone, const IntVector& z) {
  if (cone.dim() > 3) throw PreconditionFailed("base_case_solve: dimension " + std::to_string(cone.dim()) + " > 3");
  return DecompositionEngine(cone).decompose(z);
}

Decomposition decompose_det5(const SimplicialCone& cone, const IntVector& z) {
  DecompositionEngine e(cone);
  if (cone.dim() != 4) throw PreconditionFailed("cover5: the cone is not 4-dimensional");
  if (multiplicity(cone) != 5) throw PreconditionFailed("cover5: the multiplicity is not 5");
  if (!e.root_cover()) throw PreconditionFailed("cover5: the dual vectors are not in four distinct nontrivial cosets");
  return e.decompose(z);
}

void validate(const SimplicialCone& cone, const Decomposition& d) {
  IntVector sum(cone.ambient_dim(), Int(0));
  for (const Term& t : d.terms) {
    if (sgn(t.coeff) <= 0) throw InternalError("term with coefficient " + t.coeff.get_str());
    if (!contains(cone, t.vector)) throw InternalError("term " + to_string(t.vector) + " is outside the cone");
    sum = sum + t.coeff * t.vector;
  }
  if (sum != d.target) throw InternalError("terms sum to " + to_string(sum) + " instead of " + to_string(d.target));
}

void require_in_cone(const SimplicialCone& cone, const IntVector& z) {
  RatVector l;
  if (!cone.try_coefficients(z, l))
    throw NotInCone(to_string(z) + " is outside the linear hull of the cone", NotInCone::npos, "");
  for (std::size_t i = 0; i < l.size(); ++i)
    if (sgn(l[i]) < 0)
      throw NotInCone(to_string(z) + " has coefficient " + l[i].get_str() + " on generator " + std::to_string(i + 1), i,
                      l[i].get_str());
}

IcrBound icr_upper_bound(const SimplicialCone& cone) {
  const Int k = static_cast<long>(cone.dim());
  const Int delta = multiplicity(cone);
  if (k <= 3) return {k, "sebo-dim3"};
  if (delta <= 5) return {k, "theorem1"};
  if (coset_profile(cone).nontrivial_class_count <= 3) return {k, "corollary"};
  if (delta <= k) return {k + delta - 3, "theorem2"};
  return {2 * k - 2, "sebo-2n-2"};
}

}  // namespace icr

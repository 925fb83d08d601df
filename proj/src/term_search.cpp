#include "term_search.hpp"

#include "icr/exact_linalg.hpp"

#include <algorithm>

namespace icr::detail {

namespace {

// Incremental echelon basis; remembers which inputs were independent and the
// pivot coordinate each one contributed.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  bool add(const IntVector& v) {
    RatVector r = to_rational(v);
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const std::size_t p = pivots_[b];
      if (sgn(r[p]) == 0) continue;
      Rat f = r[p] / rows_[b][p];
      for (std::size_t c = 0; c < dim_; ++c) r[c] -= f * rows_[b][c];
    }
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(r[c]) != 0) {
        pivots_.push_back(c);
        rows_.push_back(std::move(r));
        return true;
      }
    return false;
  }

  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t dim_;
  std::vector<RatVector> rows_;
  std::vector<std::size_t> pivots_;
};

class Searcher {
 public:
  Searcher(const std::vector<IntVector>& elements, const IntVector& target, std::uint64_t budget)
      : elements_(elements), target_(target), budget_(budget), k_(target.size()) {}

  SearchOutcome run(std::size_t max_terms) {
    SearchOutcome out;
    if (is_zero(target_)) {
      out.status = SearchOutcome::Status::Found;
      return out;
    }
    for (std::size_t h = 0; h < elements_.size(); ++h) {
      const IntVector& a = elements_[h];
      if (is_zero(a)) continue;
      Int bound = -1;
      bool ok = true;
      for (std::size_t c = 0; c < k_ && ok; ++c) {
        if (sgn(a[c]) == 0) continue;
        if (a[c] > target_[c]) ok = false;
        else {
          Int q = target_[c] / a[c];
          if (bound < 0 || q < bound) bound = q;
        }
      }
      if (ok) {
        usable_.push_back(h);
        bounds_.push_back(bound);
      }
    }

    const std::size_t top = std::min(max_terms, usable_.size());
    for (std::size_t m = 1; m <= top; ++m) {
      std::vector<std::size_t> pick(m);
      for (std::size_t i = 0; i < m; ++i) pick[i] = i;
      for (;;) {
        if (++nodes_ > budget_) {
          out.status = SearchOutcome::Status::BudgetExhausted;
          out.nodes = nodes_;
          return out;
        }
        if (try_subset(pick, out)) {
          out.status = SearchOutcome::Status::Found;
          out.nodes = nodes_;
          return out;
        }
        if (exhausted_) {
          out.status = SearchOutcome::Status::BudgetExhausted;
          out.nodes = nodes_;
          return out;
        }
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == usable_.size() - m + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    out.status = SearchOutcome::Status::NotFound;
    out.nodes = nodes_;
    return out;
  }

 private:
  bool try_subset(const std::vector<std::size_t>& pick, SearchOutcome& out) {
    // Every coordinate of the target must be reachable.
    for (std::size_t c = 0; c < k_; ++c) {
      if (sgn(target_[c]) == 0) continue;
      bool covered = false;
      for (std::size_t p : pick) covered = covered || sgn(elements_[usable_[p]][c]) != 0;
      if (!covered) return false;
    }

    Echelon ech(k_);
    std::vector<std::size_t> indep, free;
    for (std::size_t p : pick) (ech.add(elements_[usable_[p]]) ? indep : free).push_back(p);
    const std::size_t q = indep.size();
    RatMatrix m(q, q);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) m(a, b) = elements_[usable_[indep[b]]][ech.pivots()[a]];
    RatMatrix solve = inverse(m);

    std::vector<Int> coeff(free.size());
    IntVector rem = target_;
    return dfs(0, free, indep, ech.pivots(), solve, coeff, rem, out);
  }

  bool dfs(std::size_t depth, const std::vector<std::size_t>& free, const std::vector<std::size_t>& indep,
           const std::vector<std::size_t>& rows, const RatMatrix& solve, std::vector<Int>& coeff, IntVector& rem,
           SearchOutcome& out) {
    if (depth == free.size()) return finish(free, indep, rows, solve, coeff, rem, out);
    const IntVector& a = elements_[usable_[free[depth]]];
    const Int& bound = bounds_[free[depth]];
    IntVector saved = rem;
    for (Int c = 1; c <= bound; ++c) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      bool nonneg = true;
      for (std::size_t i = 0; i < k_; ++i) {
        rem[i] -= a[i];
        if (sgn(rem[i]) < 0) nonneg = false;
      }
      if (!nonneg) break;
      coeff[depth] = c;
      if (dfs(depth + 1, free, indep, rows, solve, coeff, rem, out)) return true;
      if (exhausted_) return false;
    }
    rem = saved;
    return false;
  }

  bool finish(const std::vector<std::size_t>& free, const std::vector<std::size_t>& indep,
              const std::vector<std::size_t>& rows, const RatMatrix& solve, const std::vector<Int>& coeff,
              const IntVector& rem, SearchOutcome& out) {
    const std::size_t q = indep.size();
    RatVector rhs(q);
    for (std::size_t a = 0; a < q; ++a) rhs[a] = rem[rows[a]];
    RatVector c = solve * rhs;
    for (const Rat& x : c)
      if (x.get_den() != 1 || sgn(x) <= 0) return false;
    IntVector check(k_, Int(0));
    for (std::size_t b = 0; b < q; ++b) check = check + c[b].get_num() * elements_[usable_[indep[b]]];
    if (check != rem) return false;

    out.picks.clear();
    std::vector<std::pair<std::size_t, Int>> picks;
    for (std::size_t b = 0; b < q; ++b) picks.emplace_back(usable_[indep[b]], c[b].get_num());
    for (std::size_t f = 0; f < free.size(); ++f) picks.emplace_back(usable_[free[f]], coeff[f]);
    std::sort(picks.begin(), picks.end());
    out.picks = std::move(picks);
    return true;
  }

  const std::vector<IntVector>& elements_;
  const IntVector& target_;
  std::uint64_t budget_;
  std::size_t k_;
  std::vector<std::size_t> usable_;
  std::vector<Int> bounds_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

SearchOutcome search_min_terms(const std::vector<IntVector>& elements, const IntVector& target,
                               std::size_t max_terms, std::uint64_t budget) {
  return Searcher(elements, target, budget).run(max_terms);
}

}  // namespace icr::detail

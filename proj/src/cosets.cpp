#include "icr/cosets.hpp"

namespace icr {

std::vector<std::size_t> CosetProfile::class_sizes() const {
  std::vector<std::size_t> sizes(nontrivial_class_count, 0);
  for (std::size_t c : class_of)
    if (c > 0) ++sizes[c - 1];
  return sizes;
}

CosetProfile coset_profile(const SimplicialCone& cone) {
  const std::size_t k = cone.dim();
  CosetProfile p;
  p.duals = dual_basis(cone.generators());

  // With R = B·R', the pairing of (r^i)* with the basis B is row i of R'^{-1}.
  ConeFrame f = frame(cone);
  RatMatrix pairing = inverse(f.coords);
  std::vector<RatVector> labels;
  for (std::size_t i = 0; i < k; ++i) {
    RatVector rep = pairing.row(i);
    for (Rat& x : rep) x = frac(x);
    const bool integral = is_zero(rep);
    p.integral_flags.push_back(integral);
    std::size_t cls = 0;
    if (!integral) {
      std::size_t found = 0;
      for (std::size_t c = 0; c < labels.size(); ++c)
        if (labels[c] == rep) found = c + 1;
      if (found == 0) {
        labels.push_back(rep);
        found = labels.size();
      }
      cls = found;
    }
    p.class_of.push_back(cls);
    p.representatives.push_back(std::move(rep));
  }
  p.nontrivial_class_count = labels.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (p.class_of[i] == p.class_of[j]) p.equal_pairs.emplace_back(i, j);

  p.elementary_divisors = snf(f.coords).diagonal();
  std::size_t nontrivial_divisors = 0;
  for (const Int& d : p.elementary_divisors)
    if (d > 1) ++nontrivial_divisors;
  p.cyclic = nontrivial_divisors <= 1;
  return p;
}

bool check_lemma_coeff_equivalence(const SimplicialCone& cone) {
  const std::size_t k = cone.dim();
  CosetProfile p = coset_profile(cone);
  ParallelepipedSet par = enumerate_parallelepiped(cone);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      bool same_coefficients = true;
      for (const auto& y : par.points)
        if (y.lambda[i] != y.lambda[j]) same_coefficients = false;
      const bool same_class = p.representatives[i] == p.representatives[j];
      if (same_class != same_coefficients) return false;
    }
  return true;
}

}  // namespace icr

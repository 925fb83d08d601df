#include "icr/exact_linalg.hpp"

#include "icr/errors.hpp"

#include <algorithm>

namespace icr {

Int det(const IntMatrix& a) {
  if (!a.square()) throw InvalidArgument("det: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  Int prev = 1;
  Int t1, t2;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t1 = m(i, j) * m(k, k);
        t2 = m(i, k) * m(k, j);
        t1 -= t2;
        mpz_divexact(m(i, j).get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  Int d = m(n - 1, n - 1);
  return sign < 0 ? Int(-d) : d;
}

namespace {

// Reduces m to row echelon form in place; returns the pivot columns.
// `sign` flips with every row swap so the caller can recover a determinant.
std::vector<std::size_t> echelon(RatMatrix& m, int* sign = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rat factor, term;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      m.swap_rows(p, row);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (sgn(m(i, col)) == 0) continue;
      factor = m(i, col) / m(row, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        term = factor * m(row, j);
        m(i, j) -= term;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rat det(const RatMatrix& a) {
  if (!a.square()) throw InvalidArgument("det: matrix is not square");
  RatMatrix m = a;
  int sign = 1;
  auto pivots = echelon(m, &sign);
  if (pivots.size() < m.rows()) return 0;
  Rat d = sign;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return echelon(m).size();
}

std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

RatMatrix inverse(const RatMatrix& a) {
  if (!a.square()) throw InvalidArgument("inverse: matrix is not square");
  const std::size_t n = a.rows();
  RatMatrix m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = 1;
  }
  Rat factor, term;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(m(p, col)) == 0) ++p;
    if (p == n) throw InvalidArgument("inverse: matrix is singular");
    m.swap_rows(p, col);
    const Rat pivot = m(col, col);
    for (std::size_t j = col; j < 2 * n; ++j) m(col, j) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(m(i, col)) == 0) continue;
      factor = m(i, col);
      for (std::size_t j = col; j < 2 * n; ++j) {
        term = factor * m(col, j);
        m(i, j) -= term;
      }
    }
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
  return inv;
}

RatMatrix inverse(const IntMatrix& a) { return inverse(to_rational(a)); }

bool solve_full_column_rank(const RatMatrix& a, const RatVector& b, RatVector& x) {
  if (b.size() != a.rows()) throw InvalidArgument("solve: right-hand side length mismatch");
  const std::size_t n = a.cols();
  RatMatrix m(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  auto pivots = echelon(m);
  if (!pivots.empty() && pivots.back() == n) return false;
  if (pivots.size() != n) throw InvalidArgument("solve: matrix lacks full column rank");
  x.assign(n, Rat(0));
  Rat term;
  for (std::size_t r = n; r-- > 0;) {
    Rat s = m(r, n);
    for (std::size_t j = r + 1; j < n; ++j) {
      term = m(r, j) * x[j];
      s -= term;
    }
    x[r] = s / m(r, r);
  }
  return true;
}

IntVector SnfResult::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
  return d;
}

namespace {

// row[dst] -= q * row[src]
void row_sub(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  Int term;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (sgn(m(src, j)) == 0) continue;
    term = q * m(src, j);
    m(dst, j) -= term;
  }
}

void col_sub(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  Int term;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(m(i, src)) == 0) continue;
    term = q * m(i, src);
    m(i, dst) -= term;
  }
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Rows p and i replaced by (s·p + t·i, -b/g·p + a/g·i); determinant one.
void row_combine(IntMatrix& m, std::size_t p, std::size_t i, const Int& s, const Int& t,
                 const Int& bg, const Int& ag) {
  Int np, ni;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    np = s * m(p, j) + t * m(i, j);
    ni = ag * m(i, j) - bg * m(p, j);
    m(p, j) = np;
    m(i, j) = ni;
  }
}

}  // namespace

SnfResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfResult r{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& s = r.s;
  Int q;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot on the smallest nonzero magnitude in the trailing block.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (sgn(s(i, j)) == 0) continue;
          if (pi == m || mpz_cmpabs(s(i, j).get_mpz_t(), s(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return r;
      s.swap_rows(t, pi);
      r.u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      r.v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(s(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        row_sub(s, i, t, q);
        row_sub(r.u, i, t, q);
        if (sgn(s(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(s(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        col_sub(s, j, t, q);
        col_sub(r.v, j, t, q);
        if (sgn(s(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            row_sub(s, t, i, Int(-1));
            row_sub(r.u, t, i, Int(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (sgn(s(t, t)) < 0) {
      negate_row(s, t);
      negate_row(r.u, t);
    }
  }
  return r;
}

HnfResult hnf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  HnfResult r{a, IntMatrix::identity(m)};
  IntMatrix& h = r.h;
  Int g, s, t, ag, bg, q;
  std::size_t p = 0;
  for (std::size_t j = 0; j < a.cols() && p < m; ++j) {
    for (std::size_t i = p + 1; i < m; ++i) {
      if (sgn(h(i, j)) == 0) continue;
      if (sgn(h(p, j)) == 0) {
        h.swap_rows(p, i);
        r.u.swap_rows(p, i);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(p, j).get_mpz_t(),
                 h(i, j).get_mpz_t());
      mpz_divexact(ag.get_mpz_t(), h(p, j).get_mpz_t(), g.get_mpz_t());
      mpz_divexact(bg.get_mpz_t(), h(i, j).get_mpz_t(), g.get_mpz_t());
      row_combine(h, p, i, s, t, bg, ag);
      row_combine(r.u, p, i, s, t, bg, ag);
    }
    if (sgn(h(p, j)) == 0) continue;
    if (sgn(h(p, j)) < 0) {
      negate_row(h, p);
      negate_row(r.u, p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(p, j).get_mpz_t());
      if (sgn(q) == 0) continue;
      row_sub(h, i, p, q);
      row_sub(r.u, i, p, q);
    }
    ++p;
  }
  return r;
}

RatMatrix dual_basis(const RatMatrix& r) {
  RatMatrix rt = r.transposed();
  RatMatrix gram = rt * r;
  if (sgn(det(gram)) == 0) throw InvalidArgument("dual_basis: generators are linearly dependent");
  return r * inverse(gram);
}

RatMatrix dual_basis(const IntMatrix& r) { return dual_basis(to_rational(r)); }

Rat gram_determinant(const RatMatrix& basis) { return det(basis.transposed() * basis); }

namespace {

// Canonical integer basis of the lattice spanned by the columns of b
// (full column rank): nonzero rows of the row HNF of b^T, transposed.
IntMatrix canonical_basis(const IntMatrix& b) {
  IntMatrix h = hnf(b.transposed()).h;
  IntMatrix out(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < b.rows(); ++i) out(i, j) = h(j, i);
  return out;
}

// Same for a rational basis: clear denominators, canonicalise, rescale.
RatMatrix canonical_basis(const RatMatrix& b) {
  Int den = 1;
  for (const Rat& x : b.data()) den = lcm(den, Int(x.get_den()));
  IntMatrix scaled(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rat v = b(i, j) * den;
      scaled(i, j) = v.get_num();
    }
  IntMatrix c = canonical_basis(scaled);
  RatMatrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      out(i, j) = Rat(c(i, j), den);
      out(i, j).canonicalize();
    }
  return out;
}

}  // namespace

LatticeBasis sublattice_basis(const IntMatrix& r) {
  const std::size_t k = r.cols();
  if (rank(r) != k) throw InvalidArgument("sublattice_basis: generators are linearly dependent");
  SnfResult d = snf(r);
  IntMatrix u_inv = to_integral(inverse(d.u));
  std::vector<std::size_t> first(k);
  for (std::size_t j = 0; j < k; ++j) first[j] = j;
  return LatticeBasis{to_rational(canonical_basis(u_inv.select_columns(first)))};
}

LatticeBasis project_lattice(const LatticeBasis& lattice, const RatVector& r) {
  if (is_zero(r)) throw InvalidArgument("project_lattice: zero direction");
  RatVector c;
  if (!solve_full_column_rank(lattice.basis, r, c) || !is_integral(c))
    throw InvalidArgument("project_lattice: direction is not a lattice vector");
  IntVector coords = primitive(to_integral(c));
  const std::size_t k = coords.size();

  IntMatrix column(k, 1);
  column.set_column(0, coords);
  IntMatrix ext = to_integral(inverse(hnf(column).u));  // first column == coords

  RatMatrix full = lattice.basis * to_rational(ext);
  const Rat rr = dot(r, r);
  RatMatrix projected(lattice.ambient_dim(), k - 1);
  for (std::size_t j = 1; j < k; ++j) {
    RatVector w = full.column(j);
    Rat t = dot(w, r) / rr;
    for (std::size_t i = 0; i < w.size(); ++i) projected(i, j - 1) = w[i] - t * r[i];
  }
  if (k == 1) return LatticeBasis{projected};
  return LatticeBasis{canonical_basis(projected)};
}

LatticeBasis project_lattice(const LatticeBasis& lattice, const IntVector& r) {
  return project_lattice(lattice, to_rational(r));
}

IntVector Integerized::to_coords(const RatVector& v) const {
  RatVector c = forward * v;
  if (backward * c != v) throw InvalidArgument("integerize: vector outside the lattice span");
  if (!is_integral(c)) throw InvalidArgument("integerize: vector outside the lattice");
  return to_integral(c);
}

IntVector Integerized::to_coords(const IntVector& v) const { return to_coords(to_rational(v)); }

RatVector Integerized::from_coords(const IntVector& c) const { return backward * c; }

Integerized integerize(const RatMatrix& vectors, const RatMatrix& basis) {
  if (vectors.rows() != basis.rows()) throw InvalidArgument("integerize: dimension mismatch");
  RatMatrix bt = basis.transposed();
  RatMatrix gram = bt * basis;
  if (sgn(det(gram)) == 0) throw InvalidArgument("integerize: basis is linearly dependent");
  Integerized out;
  out.forward = inverse(gram) * bt;
  out.backward = basis;
  out.coords = IntMatrix(basis.cols(), vectors.cols());
  for (std::size_t j = 0; j < vectors.cols(); ++j) out.coords.set_column(j, out.to_coords(vectors.column(j)));
  return out;
}

IntVector primitive(const IntVector& v) {
  Int g = gcd_of(v);
  if (sgn(g) == 0) throw InvalidArgument("primitive: zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace icr

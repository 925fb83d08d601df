#include "icr/matrix.hpp"

#include "icr/errors.hpp"

#include <sstream>

namespace icr {

IntVector int_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

bool is_integral(const RatVector& v) {
  for (const Rat& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

bool is_integral(const RatMatrix& m) {
  for (const Rat& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

IntVector to_integral(const RatVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw InvalidArgument("non-integral entry " + v[i].get_str());
    out[i] = v[i].get_num();
  }
  return out;
}

IntMatrix to_integral(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rat& x = m(i, j);
      if (x.get_den() != 1) throw InvalidArgument("non-integral entry " + x.get_str());
      out(i, j) = x.get_num();
    }
  return out;
}

namespace {

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  T term;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        term = aik * b(k, j);
        c(i, j) += term;
      }
    }
  return c;
}

template <class T, class U>
std::vector<T> apply(const Matrix<T>& a, const std::vector<U>& v) {
  if (a.cols() != v.size()) throw InvalidArgument("matrix-vector shape mismatch");
  std::vector<T> out(a.rows());
  T term;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(v[j]) == 0) continue;
      term = a(i, j) * v[j];
      out[i] += term;
    }
  return out;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
IntVector operator*(const IntMatrix& a, const IntVector& v) { return apply(a, v); }
RatVector operator*(const RatMatrix& a, const RatVector& v) { return apply(a, v); }
RatVector operator*(const RatMatrix& a, const IntVector& v) { return apply(a, v); }

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector operator*(const Int& c, const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVector& v) {
  for (const Int& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

bool is_zero(const RatVector& v) {
  for (const Rat& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Int floor_of(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rat frac(const Rat& x) {
  Rat f = x - Rat(floor_of(x));
  return f;
}

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

namespace {

template <class T>
std::ostream& print(std::ostream& os, const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << "]\n";
  }
  return os;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return print(os, m); }
std::ostream& operator<<(std::ostream& os, const RatMatrix& m) { return print(os, m); }

}  // namespace icr

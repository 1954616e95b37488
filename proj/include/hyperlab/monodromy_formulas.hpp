#pragma once

#include <array>
#include <complex>
#include <string>

#include "hyperlab/eisenstein.hpp"
#include "hyperlab/error.hpp"
#include "hyperlab/matrix.hpp"

// Intersection matrix, circuit matrices and their duals as functions of the
// five mu values, written once for both complex doubles and exact Q(omega).
namespace hyperlab::formulas {

inline bool negligible(const std::complex<double>& z) { return std::abs(z) < 1e-12; }
inline bool negligible(const std::complex<long double>& z) { return std::abs(z) < 1e-12L; }
inline bool negligible(const Eisenstein& z) { return z.is_zero(); }

template <class T>
struct Mu {
  std::array<T, 5> v;

  const T& operator[](int i) const { return v[i - 1]; }  // 1-based, as mu_1..mu_5
  T prod(std::initializer_list<int> idx) const {
    T r(1);
    for (int i : idx) r = r * (*this)[i];
    return r;
  }
};

template <class T>
T checked_inverse(const T& x, const char* what) {
  if (negligible(x)) throw Error(ErrorCode::DegenerateMu, std::string("vanishing denominator: ") + what);
  return T(1) / x;
}

template <class T>
Matrix<T> intersection_matrix(const Mu<T>& m) {
  const T one(1);
  const T i1 = checked_inverse(m[1] - one, "mu1 - 1");
  const T i2 = checked_inverse(m[2] - one, "mu2 - 1");
  const T i3 = checked_inverse(m[3] - one, "mu3 - 1");
  const T i4 = checked_inverse(m[4] - one, "mu4 - 1");
  const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
  const T m12 = m.prod({1, 2}), m34 = m.prod({3, 4});
  const T m125 = m.prod({1, 2, 5}), m345 = m.prod({3, 4, 5});
  const T m245 = m.prod({2, 4, 5}), m25 = m.prod({2, 5}), m45 = m.prod({4, 5});
  Matrix<T> h(4, 4);
  h(0, 0) = (m12 - one) * (m34 - one) * i1 * i2 * i3 * i4;
  h(0, 1) = i2 * i4;
  h(0, 2) = T(0) - m[1] * (m34 - one) * (m125 - one) * i1 * i3 * i4;
  h(0, 3) = T(0) - m[3] * (m12 - one) * (m345 - one) * i1 * i2 * i3;
  h(1, 0) = m[2] * m[4] * i2 * i4;
  h(1, 1) = (m245 - one) * i2 * i4 * i5;
  h(2, 0) = T(0) - (m34 - one) * i1 * i3 * i4;
  h(2, 2) = m[1] * (m34 - one) * (m25 - one) * i1 * i3 * i4;
  h(2, 3) = m[3] * (m345 - one) * i1 * i3;
  h(3, 0) = T(0) - (m12 - one) * i1 * i2 * i3;
  h(3, 2) = m[1] * (m125 - one) * i1 * i3;
  h(3, 3) = m[3] * (m12 - one) * (m45 - one) * i1 * i2 * i3;
  return h;
}

template <class T>
T lambda(int i, const Mu<T>& m) {
  switch (i) {
    case 1: return T(1) / m.prod({1, 2});
    case 2: return T(1) / m.prod({3, 4});
    case 3: return m.prod({2, 4, 5});
    case 4: return m.prod({1, 4, 5});
    case 5: return m.prod({2, 3, 5});
  }
  throw Error(ErrorCode::InvalidArgument, "circuit index must be 1..5");
}

template <class T>
Matrix<T> selector_big(int i) {
  if (i == 1) return {{T(1), T(0), T(0), T(0)}, {T(0), T(0), T(0), T(1)}};
  return {{T(1), T(0), T(0), T(0)}, {T(0), T(0), T(1), T(0)}};
}

template <class T>
Matrix<T> selector_row(int j, const Mu<T>& m) {
  const T one(1), zero(0);
  if (j == 3) return {{zero, one, zero, zero}};
  const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
  if (j == 4) {
    return {{zero - (m.prod({4, 5}) - one) * i5, one, zero, zero - (m.prod({3, 4, 5}) - one) * i5}};
  }
  return {{zero - (m.prod({2, 5}) - one) * i5, one, zero - (m.prod({1, 2, 5}) - one) * i5, zero}};
}

template <class T>
Matrix<T> selector_column(int j, const Mu<T>& m) {
  const T one(1), zero(0);
  if (j == 3) return selector_row(3, m).transpose();
  const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
  if (j == 4) {
    return Matrix<T>{{zero - (m.prod({4, 5}) - one) * i5 / m[4], one, zero,
                      zero - i5 / m.prod({3, 4})}}
        .transpose();
  }
  return Matrix<T>{{zero - (m.prod({2, 5}) - one) * i5 / m[2], one,
                    zero - i5 / m.prod({1, 2}), zero}}
      .transpose();
}

// K_i with (R_i H R~_i)^{-1} = (mu_a - 1)(mu_b - 1)/(mu_ab - 1) * K_i.
template <class T>
Matrix<T> pivot_kernel(int i, const Mu<T>& m) {
  const T one(1);
  const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
  if (i == 1) {
    const T u = m[4] - one;
    const T d = i5 / m[4], e = i5 / m.prod({3, 4});
    return {{u * (m.prod({4, 5}) - one) * d, u * (m.prod({3, 4, 5}) - one) * d},
            {u * e, (m.prod({3, 4}) - one) * e}};
  }
  const T u = m[2] - one;
  const T d = i5 / m[2], e = i5 / m.prod({1, 2});
  return {{u * (m.prod({2, 5}) - one) * d, u * (m.prod({1, 2, 5}) - one) * d},
          {u * e, (m.prod({1, 2}) - one) * e}};
}

template <class T>
Matrix<T> inverse2(const Matrix<T>& p, const T& det) {
  const T inv = T(1) / det;
  return {{p(1, 1) * inv, T(0) - p(0, 1) * inv}, {T(0) - p(1, 0) * inv, p(0, 0) * inv}};
}

template <class T>
bool near_one(const T& x) {
  return negligible(x - T(1));
}

// Pair (a, b) with r_j H r~_j = (lambda_j - 1) / ((mu_a-1)(mu_b-1)(mu_5-1)).
inline std::array<int, 2> rank_one_pair(int j) {
  if (j == 3) return {2, 4};
  if (j == 4) return {1, 4};
  return {2, 3};
}

enum class Side { Circuit, Dual };

// Factor multiplying the projector: (lambda-1) P^{-1} (circuit) or
// (1/lambda - 1) P^{-1} (dual) for i = 1, 2, with the cancelled closed form
// when the pivot is singular.
template <class T>
Matrix<T> big_factor(int i, const Mu<T>& m, const Matrix<T>& h, Side side) {
  const Matrix<T> r = selector_big<T>(i);
  const Matrix<T> piv = r * h * r.transpose();
  const T det = piv(0, 0) * piv(1, 1) - piv(0, 1) * piv(1, 0);
  const T lam = lambda(i, m);
  if (!negligible(det)) {
    const T f = side == Side::Circuit ? lam - T(1) : T(1) / lam - T(1);
    return f * inverse2(piv, det);
  }
  const T mab = i == 1 ? m.prod({1, 2}) : m.prod({3, 4});
  if (!near_one(mab)) throw Error(ErrorCode::SingularPivot, "2x2 pivot is singular");
  const T pre = i == 1 ? (m[1] - T(1)) * (m[2] - T(1)) : (m[3] - T(1)) * (m[4] - T(1));
  const Matrix<T> k = pivot_kernel(i, m);
  if (side == Side::Circuit) return (T(0) - pre / mab) * k;
  return pre * k;
}

template <class T>
T small_factor(int j, const Mu<T>& m, const Matrix<T>& h, Side side) {
  const T s = (selector_row(j, m) * h * selector_column(j, m))(0, 0);
  const T lam = lambda(j, m);
  if (!negligible(s)) return side == Side::Circuit ? (T(1) - lam) / s : (T(1) - T(1) / lam) / s;
  if (!near_one(lam)) throw Error(ErrorCode::SingularPivot, "rank-one pivot vanishes");
  const auto [a, b] = rank_one_pair(j);
  const T c = (m[a] - T(1)) * (m[b] - T(1)) * (m[5] - T(1));
  return side == Side::Circuit ? T(0) - c : c / lam;
}

template <class T>
Matrix<T> circuit_structured(int i, const Mu<T>& m) {
  const Matrix<T> h = intersection_matrix(m);
  const Matrix<T> id = Matrix<T>::identity(4);
  if (i == 1 || i == 2) {
    const Matrix<T> r = selector_big<T>(i);
    return lambda(i, m) * id - h * r.transpose() * big_factor(i, m, h, Side::Circuit) * r;
  }
  if (i < 1 || i > 5) throw Error(ErrorCode::InvalidArgument, "circuit index must be 1..5");
  return id - small_factor(i, m, h, Side::Circuit) * (h * selector_column(i, m) * selector_row(i, m));
}

template <class T>
Matrix<T> dual_structured(int i, const Mu<T>& m) {
  const Matrix<T> h = intersection_matrix(m);
  const Matrix<T> id = Matrix<T>::identity(4);
  if (i == 1 || i == 2) {
    const Matrix<T> r = selector_big<T>(i);
    return (T(1) / lambda(i, m)) * id - r.transpose() * big_factor(i, m, h, Side::Dual) * r * h;
  }
  if (i < 1 || i > 5) throw Error(ErrorCode::InvalidArgument, "circuit index must be 1..5");
  return id - small_factor(i, m, h, Side::Dual) * (selector_column(i, m) * selector_row(i, m) * h);
}

template <class T>
Matrix<T> circuit_explicit(int i, const Mu<T>& m) {
  const T one(1), zero(0);
  auto p = [&](std::initializer_list<int> idx) { return m.prod(idx); };
  switch (i) {
    case 1: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      const T il = one / p({1, 2});
      return {{one, zero, zero, zero},
              {(m[1] - one) * (p({4, 5}) - one) * i5 / m[1], il, zero,
               (m[1] - one) * (p({3, 4, 5}) - one) * i5 / m[1]},
              {zero - (m[2] - one) * il, zero, il, zero},
              {zero, zero, zero, one}};
    }
    case 2: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      const T il = one / p({3, 4});
      return {{one, zero, zero, zero},
              {(m[3] - one) * (p({2, 5}) - one) * i5 / m[3], il,
               (m[3] - one) * (p({1, 2, 5}) - one) * i5 / m[3], zero},
              {zero, zero, one, zero},
              {zero - (m[4] - one) * il, zero, zero, il}};
    }
    case 3:
      return {{one, m[5] - one, zero, zero},
              {zero, p({2, 4, 5}), zero, zero},
              {zero, zero, one, zero},
              {zero, zero, zero, one}};
    case 4: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      return {{one - m[1] + p({1, 4, 5}), zero - m[1] * (m[5] - one), zero,
               m[1] * (p({3, 4, 5}) - one)},
              {zero - (m[1] - one) * (p({4, 5}) - one) * i5, m[1], zero,
               zero - (m[1] - one) * (p({3, 4, 5}) - one) * i5},
              {zero - (p({4, 5}) - one), m[5] - one, one, zero - (p({3, 4, 5}) - one)},
              {zero, zero, zero, one}};
    }
    case 5: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      return {{one - m[3] + p({2, 3, 5}), zero - m[3] * (m[5] - one),
               m[3] * (p({1, 2, 5}) - one), zero},
              {zero - (m[3] - one) * (p({2, 5}) - one) * i5, m[3],
               zero - (m[3] - one) * (p({1, 2, 5}) - one) * i5, zero},
              {zero, zero, one, zero},
              {zero - (p({2, 5}) - one), m[5] - one, zero - (p({1, 2, 5}) - one), one}};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "circuit index must be 1..5");
}

template <class T>
Matrix<T> dual_explicit(int i, const Mu<T>& m) {
  const T one(1), zero(0);
  auto p = [&](std::initializer_list<int> idx) { return m.prod(idx); };
  switch (i) {
    case 1: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      return {{one, zero - (m[1] - one) * (p({4, 5}) - one) * i5 / m[4],
               m[1] * (m[2] - one) * (p({1, 2, 5}) - one), zero},
              {zero, p({1, 2}), zero, zero},
              {zero, zero, p({1, 2}), zero},
              {zero, zero - (m[1] - one) * i5 / p({3, 4}), zero, one}};
    }
    case 2: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      return {{one, zero - (m[3] - one) * (p({2, 5}) - one) * i5 / m[2], zero,
               m[3] * (m[4] - one) * (p({3, 4, 5}) - one)},
              {zero, p({3, 4}), zero, zero},
              {zero, zero - (m[3] - one) * i5 / p({1, 2}), one, zero},
              {zero, zero, zero, p({3, 4})}};
    }
    case 3:
      return {{one, zero, zero, zero},
              {zero - (m[5] - one) / m[5], one / p({2, 4, 5}), zero, zero},
              {zero, zero, one, zero},
              {zero, zero, zero, one}};
    case 4: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      return {{(one - p({4, 5}) + p({1, 4, 5})) / p({1, 4, 5}),
               (m[1] - one) * (p({4, 5}) - one) * i5 / p({1, 4}),
               (p({4, 5}) - one) * (p({1, 2, 5}) - one) / p({4, 5}), zero},
              {(m[5] - one) / p({1, 5}), one / m[1],
               zero - (m[5] - one) * (p({1, 2, 5}) - one) / m[5], zero},
              {zero, zero, one, zero},
              {zero - one / p({1, 3, 4, 5}), (m[1] - one) * i5 / p({1, 3, 4}),
               (p({1, 2, 5}) - one) / p({3, 4, 5}), one}};
    }
    case 5: {
      const T i5 = checked_inverse(m[5] - one, "mu5 - 1");
      return {{(one - p({2, 5}) + p({2, 3, 5})) / p({2, 3, 5}),
               (m[3] - one) * (p({2, 5}) - one) * i5 / p({2, 3}), zero,
               (p({2, 5}) - one) * (p({3, 4, 5}) - one) / p({2, 5})},
              {(m[5] - one) / p({3, 5}), one / m[3], zero,
               zero - (m[5] - one) * (p({3, 4, 5}) - one) / m[5]},
              {zero - one / p({1, 2, 3, 5}), (m[3] - one) * i5 / p({1, 2, 3}), one,
               (p({3, 4, 5}) - one) / p({1, 2, 5})},
              {zero, zero, zero, one}};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "circuit index must be 1..5");
}

}  // namespace hyperlab::formulas

#include "hyperlab/covers.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "hyperlab/error.hpp"

namespace hyperlab {

namespace {

Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace

std::string CoverSignature::to_string() const {
  return "(" + std::to_string(n) + ";" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," +
         std::to_string(k[2]) + "," + std::to_string(k[3]) + ")";
}

CoverSignature make_signature(int n, std::array<int, 4> k) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "cover degree must be at least 2");
  for (int v : k) {
    if (v < 2) throw Error(ErrorCode::InvalidArgument, "branching indices must be at least 2");
  }
  std::sort(k.begin(), k.end());
  return {n, k};
}

Rational euler_characteristic(const CoverSignature& sig) {
  Rational chi = 2 * sig.n;
  for (int k : sig.k) chi -= ratio(sig.n, k) * (k - 1);
  return chi;
}

namespace {

bool index_equation(const CoverSignature& sig) {
  Rational s = ratio(2, sig.n);
  for (int k : sig.k) s += ratio(1, k);
  return s == 2;
}

// Some choice of branch exponents m_i with gcd(m_i, n) = n / k_i sums to 0 mod n.
bool realizable(const CoverSignature& sig) {
  std::vector<int> sums = {0};
  for (int k : sig.k) {
    std::vector<int> next;
    for (int m = 1; m < sig.n; ++m) {
      if (std::gcd(m, sig.n) != sig.n / k) continue;
      for (int s : sums) next.push_back((s + m) % sig.n);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    sums = std::move(next);
  }
  return std::binary_search(sums.begin(), sums.end(), 0);
}

}  // namespace

std::vector<CoverSignature> classify_covers(int max_n, const Rational& target_chi,
                                            CoverCriterion criterion) {
  if (max_n < 2) throw Error(ErrorCode::InvalidArgument, "max_n must be at least 2");
  if (criterion == CoverCriterion::IndexEquation && target_chi != -2) {
    throw Error(ErrorCode::InvalidArgument, "the index equation encodes chi = -2 only");
  }
  std::vector<CoverSignature> out;
  for (int n = 2; n <= max_n; ++n) {
    // lcm(k) = n forces every k_i to divide n
    std::vector<int> divs;
    for (int d = 2; d <= n; ++d)
      if (n % d == 0) divs.push_back(d);
    const size_t m = divs.size();
    for (size_t i1 = 0; i1 < m; ++i1)
      for (size_t i2 = i1; i2 < m; ++i2)
        for (size_t i3 = i2; i3 < m; ++i3)
          for (size_t i4 = i3; i4 < m; ++i4) {
            const CoverSignature sig{n, {divs[i1], divs[i2], divs[i3], divs[i4]}};
            const auto& k = sig.k;
            if (std::lcm(std::lcm(k[0], k[1]), std::lcm(k[2], k[3])) != n) continue;
            const bool ok = criterion == CoverCriterion::EulerCharacteristic
                                ? euler_characteristic(sig) == target_chi
                                : index_equation(sig);
            if (ok && realizable(sig)) out.push_back(sig);
          }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CoverSignature> classify_genus2(int max_n) {
  const auto by_chi = classify_covers(max_n, -2, CoverCriterion::EulerCharacteristic);
  const auto by_eq = classify_covers(max_n, -2, CoverCriterion::IndexEquation);
  std::vector<CoverSignature> both;
  std::set_intersection(by_chi.begin(), by_chi.end(), by_eq.begin(), by_eq.end(),
                        std::back_inserter(both));
  return both;
}

std::optional<std::string> curve_annotation(const CoverSignature& sig) {
  using K = std::array<int, 4>;
  if (sig.n == 3 && sig.k == K{3, 3, 3, 3}) return "C_t^{(3)}: S^3=s^2(1-s)(t-s)^2";
  if (sig.n == 6 && sig.k == K{2, 2, 3, 3}) return "C_t^{(6)}: S^6=s^2(1-s)^4(t-s)^3";
  if (sig.n == 4 && sig.k == K{2, 2, 4, 4}) return "C_t^{(4)}: S^4=s^2(1-s)^2(s-t)";
  return std::nullopt;
}

}  // namespace hyperlab

#pragma once

// Dimension bookkeeping in the long exact sequence of the cofibre sequence
// C_k(M - 0) -> C_k(M) -> S^n(C_{k-1}(M - 0)_+), specialised to spheres.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>

#include "confstab/conf_algebra.hpp"
#include "confstab/loop_homology.hpp"
#include "confstab/padic.hpp"

namespace confstab::sphere {

/// The connecting map T_{k,*} : H_{*-n+1}(C_{k-1}(M - 0)) -> H_*(C_k(M - 0)).
struct ConnectingData {
    std::int64_t k = 0;
    std::int64_t degree = 0;
    std::uint64_t dim_domain = 0;
    std::uint64_t dim_codomain = 0;
    std::uint64_t rank = 0;
};

inline void check(const ConnectingData& t) {
    if (t.rank > std::min(t.dim_domain, t.dim_codomain)) {
        throw InvalidArgument("rank exceeds the dimension of domain or codomain");
    }
}

/// dim of reduced H_* (C_k(M)) from T_{k,*} and T_{k,*-1}.
inline std::uint64_t dim_from_les(const ConnectingData& at, const ConnectingData& below) {
    check(at);
    check(below);
    if (at.k != below.k) throw InvalidArgument("connecting maps must share k");
    if (at.degree != below.degree + 1) throw InvalidArgument("degrees must differ by one");
    const std::uint64_t total = at.dim_codomain + below.dim_domain;
    const std::uint64_t lost = at.rank + below.rank;
    if (lost > total) throw InvalidArgument("ranks exceed the available dimensions");
    return total - lost;
}

/// Image of the fundamental class under t_{k-1}: one point circling the
/// other k - 1. Evaluated by the winding evaluator; memoised per (k, N).
inline loops::ClassCoords connecting_class_s2(int k, int N = 256) {
    if (k < 2) throw InvalidArgument("connecting class needs k >= 2");
    static std::mutex lock;
    static std::map<std::pair<int, int>, loops::ClassCoords> cache;
    {
        std::lock_guard<std::mutex> g(lock);
        auto it = cache.find({k, N});
        if (it != cache.end()) return it->second;
    }
    loops::ClassCoords c = loops::evaluate(loops::build_encircle(k, N));
    std::lock_guard<std::mutex> g(lock);
    cache.emplace(std::make_pair(k, N), c);
    return c;
}

/// Order of the cyclic group H_1(C_k(S^2); Z).
inline Integer h1_s2(const Integer& k) {
    if (k < 1) throw InvalidArgument("k must be positive");
    if (k == 1) return 1;
    return 2 * k - 2;
}

/// T_{k,1} and T_{k,0} for S^2 over F_p.
inline std::pair<ConnectingData, ConnectingData> connecting_data_s2(int k, int p) {
    if (k < 2) throw InvalidArgument("k must be at least 2");
    require_prime(p);
    ConnectingData at{k, 1, 0, 0, 0};
    at.dim_domain = algebra::dims(2, p, k - 1, 0)[0];
    at.dim_codomain = algebra::dims(2, p, k, 1)[1];
    const Integer b = connecting_class_s2(k).b;
    at.rank = mod(b, p) != 0 ? 1 : 0;
    ConnectingData below{k, 0, 0, 0, 0};  // domain is H_{-1} = 0, codomain reduced H_0 = 0
    return {at, below};
}

/// dim H_1(C_k(S^2); F_p) through the exact sequence.
inline std::uint64_t h1_s2_dim_mod_p(int k, int p) {
    const auto [at, below] = connecting_data_s2(k, p);
    return dim_from_les(at, below);
}

/// Whether dim H_{n-1}(C_k(S^n); F_p) = dim H_{n-1}(C_j(S^n); F_p), both k
/// and j in the stable range for degree n - 1.
inline bool hn1_dichotomy(int n, const Integer& p, const Integer& k, const Integer& j,
                          const algebra::RangeFn& range) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("n must be even");
    require_prime(p);
    if (k < 1 || j < 1) throw InvalidArgument("k and j must be positive");
    if (n - 1 > range(to_int64(k)) || n - 1 > range(to_int64(j))) {
        throw RangeError("degree n-1 is outside the supplied stable range");
    }
    return (mod(2 * k - 2, p) == 0) == (mod(2 * j - 2, p) == 0);
}

}  // namespace confstab::sphere

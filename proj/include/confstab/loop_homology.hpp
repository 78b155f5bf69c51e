#pragma once

// First homology classes of loops in C_k(R^2) and C_k(R^2 - 0), evaluated
// exactly from polyline trajectories with rational vertices.
//
// A loop is recorded as k trajectories. Trajectory i with m_i segments is at
// its vertex s at time s/m_i. The class is read off as
//   a = winding of all strands around the origin (punctured loops only),
//   b = sum over ordered pairs (i, j) of the winding of z_i - z_j,
// where strands that end at another strand's start are followed around their
// permutation cycle. Both are counted exactly as signed crossings of the
// positive x-axis.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "confstab/integer.hpp"

namespace confstab::loops {

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point&, const Point&) = default;
    friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

struct LoopSpec {
    int k = 0;
    bool punctured = false;
    std::vector<std::vector<Point>> trajectories;
};

struct ClassCoords {
    std::optional<Integer> a;  // coefficient of Delta_0, punctured loops only
    Integer b;                 // coefficient of pi

    friend bool operator==(const ClassCoords&, const ClassCoords&) = default;

    ClassCoords operator+(const ClassCoords& o) const {
        ClassCoords c;
        if (a && o.a) c.a = *a + *o.a;
        c.b = b + o.b;
        return c;
    }
    ClassCoords operator-(const ClassCoords& o) const {
        ClassCoords c;
        if (a && o.a) c.a = *a - *o.a;
        c.b = b - o.b;
        return c;
    }
    ClassCoords scaled(const Integer& s) const {
        ClassCoords c;
        if (a) c.a = *a * s;
        c.b = b * s;
        return c;
    }
};

class CollisionError : public Error {
public:
    CollisionError(Rational time, int i, int j, const std::string& what)
        : Error("collision", what), time_(std::move(time)), i_(i), j_(j) {}
    const Rational& time() const { return time_; }
    int first() const { return i_; }
    int second() const { return j_; }  // -1 for the puncture

private:
    Rational time_;
    int i_;
    int j_;
};

class NotClosedError : public Error {
public:
    explicit NotClosedError(const std::string& what) : Error("not-closed", what) {}
};

class BuilderFailure : public Error {
public:
    explicit BuilderFailure(const std::string& what) : Error("builder-failure", what) {}
};

// ---------------------------------------------------------------------------
// Normal form: every strand refined to a common number of segments.

struct NormalizedLoop {
    int k = 0;
    bool punctured = false;
    std::size_t segments = 0;
    std::vector<std::vector<Point>> vertices;  // k x (segments + 1)
};

inline void validate(const LoopSpec& loop) {
    if (loop.k < 1) throw InvalidArgument("a loop needs at least one point");
    if (static_cast<std::size_t>(loop.k) != loop.trajectories.size()) {
        throw InvalidArgument("k does not match the number of trajectories");
    }
    for (const auto& t : loop.trajectories) {
        if (t.empty()) throw InvalidArgument("empty trajectory");
    }
}

inline NormalizedLoop normalize(const LoopSpec& loop, std::size_t max_segments = 1u << 22) {
    validate(loop);
    std::size_t L = 1;
    for (const auto& t : loop.trajectories) {
        const std::size_t m = std::max<std::size_t>(1, t.size() - 1);
        L = std::lcm(L, m);
        if (L > max_segments) throw InvalidArgument("common refinement is too fine");
    }
    NormalizedLoop out;
    out.k = loop.k;
    out.punctured = loop.punctured;
    out.segments = L;
    for (const auto& t : loop.trajectories) {
        std::vector<Point> v;
        v.reserve(L + 1);
        if (t.size() == 1) {
            v.assign(L + 1, t[0]);
        } else {
            const std::size_t m = t.size() - 1, c = L / m;
            for (std::size_t s = 0; s <= L; ++s) {
                const std::size_t q = s / c, r = s % c;
                if (r == 0) {
                    v.push_back(t[q]);
                } else {
                    const Rational f(static_cast<long long>(r), static_cast<long long>(c));
                    v.push_back({t[q].x + f * (t[q + 1].x - t[q].x), t[q].y + f * (t[q + 1].y - t[q].y)});
                }
            }
        }
        out.vertices.push_back(std::move(v));
    }
    return out;
}

inline LoopSpec to_spec(const NormalizedLoop& n) { return LoopSpec{n.k, n.punctured, n.vertices}; }

/// Inserts factor - 1 evenly spaced points into every segment.
inline LoopSpec refine(const LoopSpec& loop, std::size_t factor) {
    if (factor < 1) throw InvalidArgument("refinement factor must be positive");
    validate(loop);
    LoopSpec out{loop.k, loop.punctured, {}};
    for (const auto& t : loop.trajectories) {
        std::vector<Point> v;
        for (std::size_t q = 0; q + 1 < t.size(); ++q) {
            for (std::size_t r = 0; r < factor; ++r) {
                const Rational f(static_cast<long long>(r), static_cast<long long>(factor));
                v.push_back({t[q].x + f * (t[q + 1].x - t[q].x), t[q].y + f * (t[q + 1].y - t[q].y)});
            }
        }
        v.push_back(t.back());
        out.trajectories.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

struct Evaluation {
    ClassCoords coords;
    std::vector<int> permutation;  // z_i(1) = z_{permutation[i]}(0)
};

namespace detail {

template <class T>
using Path = std::vector<std::array<T, 2>>;

template <class T, class W>
W cross(const T& ax, const T& ay, const T& bx, const T& by) {
    return W(ax) * W(by) - W(ay) * W(bx);
}

// Time in [0, 1] of the zero on segment A -> B (which passes through 0).
template <class T>
Rational zero_time(const T& ax, const T& ay, const T& bx, const T& by) {
    const Integer x0(ax), x1(bx), y0(ay), y1(by);
    if (x0 != x1) return make_rational(x0, x0 - x1);
    if (y0 != y1) return make_rational(y0, y0 - y1);
    return Rational(0);
}

struct Segment {
    bool hits_origin;
    int crossing;
    Rational hit_time;
};

template <class T, class W>
Segment segment(const T& ax, const T& ay, const T& bx, const T& by) {
    const W c = cross<T, W>(ax, ay, bx, by);
    if (c == 0) {
        const W dot = W(ax) * W(bx) + W(ay) * W(by);
        if (dot <= 0) return {true, 0, zero_time(ax, ay, bx, by)};
    }
    if (ay <= 0 && by > 0 && c > 0) return {false, 1, {}};
    if (by <= 0 && ay > 0 && c < 0) return {false, -1, {}};
    return {false, 0, {}};
}

// Paths of length 1 are stationary strands.
template <class T, class W>
ClassCoords evaluate_paths(const std::vector<Path<T>>& P, bool punctured, std::size_t L) {
    const int k = static_cast<int>(P.size());
    auto fail = [&](std::size_t s, const Rational& frac, int i, int j) {
        const Rational t = (Rational(static_cast<long long>(s)) + frac) / Rational(static_cast<long long>(L));
        const std::string who = j < 0 ? "strand " + std::to_string(i) + " meets the puncture"
                                      : "strands " + std::to_string(i) + " and " + std::to_string(j) + " collide";
        throw CollisionError(t, i, j, who + " at t = " + to_string(t));
    };
    auto at = [&](int i, std::size_t s) -> const std::array<T, 2>& { return P[i].size() == 1 ? P[i][0] : P[i][s]; };

    ClassCoords out;
    if (punctured) {
        Integer a = 0;
        for (int i = 0; i < k; ++i) {
            std::int64_t c = 0;
            if (P[i].size() == 1) {
                if (P[i][0][0] == 0 && P[i][0][1] == 0) fail(0, Rational(0), i, -1);
                continue;
            }
            for (std::size_t s = 0; s < L; ++s) {
                const auto& A = P[i][s];
                const auto& B = P[i][s + 1];
                const Segment g = segment<T, W>(A[0], A[1], B[0], B[1]);
                if (g.hits_origin) fail(s, g.hit_time, i, -1);
                c += g.crossing;
            }
            a += c;
        }
        out.a = a;
    }
    Integer b = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            if (P[i].size() == 1 && P[j].size() == 1) {
                if (i < j && P[i][0] == P[j][0]) fail(0, Rational(0), i, j);
                continue;
            }
            std::int64_t c = 0;
            for (std::size_t s = 0; s < L; ++s) {
                const auto &A0 = at(i, s), &A1 = at(j, s), &B0 = at(i, s + 1), &B1 = at(j, s + 1);
                const T ax = A0[0] - A1[0], ay = A0[1] - A1[1];
                const T bx = B0[0] - B1[0], by = B0[1] - B1[1];
                const Segment g = segment<T, W>(ax, ay, bx, by);
                if (g.hits_origin) fail(s, g.hit_time, std::min(i, j), std::max(i, j));
                c += g.crossing;
            }
            b += c;
        }
    }
    out.b = b;
    return out;
}

}  // namespace detail

/// Exact class of a closed loop; throws CollisionError or NotClosedError.
inline Evaluation evaluate_full(const LoopSpec& loop) {
    validate(loop);
    // Stationary strands stay a single point; the others share a refinement.
    const int k = loop.k;
    std::vector<char> fixed(k, 1);
    LoopSpec moving{0, loop.punctured, {}};
    for (int i = 0; i < k; ++i) {
        const auto& t = loop.trajectories[i];
        for (const auto& p : t) {
            if (!(p == t[0])) {
                fixed[i] = 0;
                break;
            }
        }
        if (!fixed[i]) {
            moving.trajectories.push_back(t);
            ++moving.k;
        }
    }
    std::vector<std::vector<Point>> verts(k);
    std::size_t L = 1;
    if (moving.k > 0) {
        NormalizedLoop n = normalize(moving);
        L = n.segments;
        for (int i = 0, m = 0; i < k; ++i) {
            if (!fixed[i]) verts[i] = std::move(n.vertices[m++]);
        }
    }
    for (int i = 0; i < k; ++i) {
        if (fixed[i]) verts[i] = {loop.trajectories[i][0]};
    }

    // Integer coordinates over a common denominator.
    namespace mp = boost::multiprecision;
    Integer D = 1;
    for (const auto& v : verts) {
        for (const auto& p : v) {
            if (D % mp::denominator(p.x) != 0) D = mp::lcm(D, mp::denominator(p.x));
            if (D % mp::denominator(p.y) != 0) D = mp::lcm(D, mp::denominator(p.y));
        }
    }
    std::vector<detail::Path<Integer>> big(k);
    bool small = true;
    const Integer bound = Integer(1) << 59;
    for (int i = 0; i < k; ++i) {
        big[i].reserve(verts[i].size());
        for (const auto& p : verts[i]) {
            Integer x = mp::numerator(p.x) * (D / mp::denominator(p.x));
            Integer y = mp::numerator(p.y) * (D / mp::denominator(p.y));
            if (abs(x) >= bound || abs(y) >= bound) small = false;
            big[i].push_back({std::move(x), std::move(y)});
        }
    }

    // Closure: end points are a permutation of start points.
    std::map<std::array<Integer, 2>, int> start;
    for (int i = 0; i < k; ++i) {
        const auto ins = start.emplace(big[i].front(), i);
        if (!ins.second) throw CollisionError(Rational(0), ins.first->second, i, "two strands start at the same point");
    }
    Evaluation ev;
    ev.permutation.resize(k);
    std::vector<char> used(k, 0);
    for (int i = 0; i < k; ++i) {
        auto it = start.find(big[i].back());
        if (it == start.end() || used[it->second]) {
            throw NotClosedError("strand " + std::to_string(i) + " does not end at a starting point");
        }
        used[it->second] = 1;
        ev.permutation[i] = it->second;
    }

    if (small) {
        std::vector<detail::Path<std::int64_t>> P(k);
        for (int i = 0; i < k; ++i) {
            P[i].reserve(big[i].size());
            for (const auto& q : big[i]) P[i].push_back({static_cast<std::int64_t>(q[0]), static_cast<std::int64_t>(q[1])});
        }
        ev.coords = detail::evaluate_paths<std::int64_t, __int128>(P, loop.punctured, L);
    } else {
        ev.coords = detail::evaluate_paths<Integer, Integer>(big, loop.punctured, L);
    }
    return ev;
}

inline ClassCoords evaluate(const LoopSpec& loop) { return evaluate_full(loop).coords; }

/// L1 followed by L2: strand i continues along the L2 strand starting where
/// it ended.
inline LoopSpec concat(const LoopSpec& first, const LoopSpec& second) {
    if (first.k != second.k || first.punctured != second.punctured) {
        throw InvalidArgument("loops to concatenate must have the same k and puncture");
    }
    const NormalizedLoop a = normalize(first), b = normalize(second);
    std::map<Point, int> start;
    for (int i = 0; i < b.k; ++i) start.emplace(b.vertices[i][0], i);
    LoopSpec out{a.k, a.punctured, {}};
    for (int i = 0; i < a.k; ++i) {
        auto it = start.find(a.vertices[i].back());
        if (it == start.end()) throw NotClosedError("end of the first loop is not a start of the second");
        std::vector<Point> v = a.vertices[i];
        const auto& w = b.vertices[it->second];
        v.insert(v.end(), w.begin() + 1, w.end());
        out.trajectories.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Builders. Vertices are rounded to a 2^-20 grid; the last vertex of every
// strand is snapped onto the start vertex it approximates, so loops close
// exactly.

namespace detail {

constexpr double kGrid = 1048576.0;  // 2^20

inline Rational grid(double v) { return Rational(Integer(std::llround(v * kGrid)), Integer(1 << 20)); }

inline Point grid_point(double x, double y) { return {grid(x), grid(y)}; }

using Sampler = std::function<std::array<double, 2>(int strand, double t)>;

// Strands with moves(i) false are sampled once.
inline LoopSpec sample(int k, bool punctured, int N, const Sampler& f,
                       const std::function<bool(int)>& moves = [](int) { return true; }) {
    LoopSpec loop{k, punctured, {}};
    loop.trajectories.resize(k);
    for (int i = 0; i < k; ++i) {
        const int count = moves(i) ? N : 1;
        for (int s = 0; s < count; ++s) {
            const auto p = f(i, static_cast<double>(s) / N);
            loop.trajectories[i].push_back(grid_point(p[0], p[1]));
        }
    }
    for (int i = 0; i < k; ++i) {
        if (!moves(i)) continue;
        const auto p = f(i, 1.0);
        int best = -1;
        double best_d = 1e-6;
        for (int j = 0; j < k; ++j) {
            const auto q = f(j, 0.0);
            const double d = std::hypot(p[0] - q[0], p[1] - q[1]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best < 0) throw BuilderFailure("sampled loop does not close");
        loop.trajectories[i].push_back(loop.trajectories[best][0]);
    }
    return loop;
}

inline void require_samples(int N) {
    if (N < 4) throw InvalidArgument("at least 4 samples are required");
}

// j points on the segment y = 0.25, |x| <= 0.5, shifted by (cx, 0).
inline std::array<double, 2> inner_point(int idx, int j, double cx) {
    const double x = j == 1 ? 0.0 : -0.5 + static_cast<double>(idx) / (j - 1);
    return {cx + x, 0.25};
}

// Parked points far below the action.
inline std::array<double, 2> outer_point(int idx) { return {0.0, -2.0 - 0.5 * idx}; }

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace detail

/// Delta_j: one point circles the puncture once, enclosing j fixed points.
inline LoopSpec build_delta(int k, int j, int N = 256) {
    if (k < 1 || j < 0 || j > k - 1) throw InvalidArgument("build_delta needs 0 <= j <= k-1");
    detail::require_samples(N);
    return detail::sample(k, true, N, [=](int i, double t) -> std::array<double, 2> {
        if (i == 0) return {std::cos(detail::kTwoPi * t), std::sin(detail::kTwoPi * t)};
        if (i <= j) return detail::inner_point(i - 1, j, 0.0);
        return detail::outer_point(i - 1 - j);
    }, [](int i) { return i == 0; });
}

/// pi: two points near (2,0) exchange by a half turn; the puncture is not enclosed.
inline LoopSpec build_pi(int k, int N = 256) {
    if (k < 2) throw InvalidArgument("build_pi needs k >= 2");
    detail::require_samples(N);
    return detail::sample(k, true, N, [=](int i, double t) -> std::array<double, 2> {
        const double th = std::numbers::pi * t;
        if (i == 0) return {2.0 + 0.5 * std::cos(th), 0.5 * std::sin(th)};
        if (i == 1) return {2.0 - 0.5 * std::cos(th), -0.5 * std::sin(th)};
        return detail::outer_point(i - 2);
    }, [](int i) { return i < 2; });
}

/// tau_j: one point circles j fixed points away from the puncture. j = 0
/// gives the constant loop.
inline LoopSpec build_tau(int k, int j, int N = 256) {
    if (k < 1 || j < 0 || j > k - 1) throw InvalidArgument("build_tau needs 0 <= j <= k-1");
    detail::require_samples(N);
    return detail::sample(k, true, N, [=](int i, double t) -> std::array<double, 2> {
        if (i == 0) {
            if (j == 0) return {3.0, 1.0};
            return {3.0 + std::cos(detail::kTwoPi * t), std::sin(detail::kTwoPi * t)};
        }
        if (i <= j) return detail::inner_point(i - 1, j, 3.0);
        return detail::outer_point(i - 1 - j);
    }, [j](int i) { return i == 0 && j > 0; });
}

/// Delta-hat: {v, 2v, ..., kv} as v runs once around the unit circle.
inline LoopSpec build_delta_hat(int k, int N = 256) {
    if (k < 1) throw InvalidArgument("build_delta_hat needs k >= 1");
    detail::require_samples(N);
    return detail::sample(k, true, N, [=](int i, double t) -> std::array<double, 2> {
        const double r = i + 1.0;
        return {r * std::cos(detail::kTwoPi * t), r * std::sin(detail::kTwoPi * t)};
    });
}

/// tau-hat: (k,0) + {0, v, ..., (k-1)v}.
inline LoopSpec build_tau_hat(int k, int N = 256) {
    if (k < 1) throw InvalidArgument("build_tau_hat needs k >= 1");
    detail::require_samples(N);
    return detail::sample(k, true, N, [=](int i, double t) -> std::array<double, 2> {
        const double r = i;
        return {k + r * std::cos(detail::kTwoPi * t), r * std::sin(detail::kTwoPi * t)};
    });
}

/// sigma_f for f(theta) = (cos d theta, sin d theta): v + (i/k) f(v). The
/// sample count is doubled on collision up to max_doublings times.
inline LoopSpec build_sigma(int k, int d, int N = 256, int max_doublings = 4) {
    if (k < 1) throw InvalidArgument("build_sigma needs k >= 1");
    detail::require_samples(N);
    for (int attempt = 0; attempt <= max_doublings; ++attempt, N *= 2) {
        LoopSpec loop = detail::sample(k, true, N, [=](int i, double t) -> std::array<double, 2> {
            const double th = detail::kTwoPi * t, c = static_cast<double>(i) / k;
            return {std::cos(th) + c * std::cos(d * th), std::sin(th) + c * std::sin(d * th)};
        });
        try {
            evaluate(loop);
            return loop;
        } catch (const CollisionError&) {
        }
    }
    throw BuilderFailure("sigma loop still collides after refining");
}

/// k points on the unit circle turning rigidly once; unpunctured.
inline LoopSpec build_full_twist(int k, int N = 256) {
    if (k < 1) throw InvalidArgument("build_full_twist needs k >= 1");
    detail::require_samples(N);
    return detail::sample(k, false, N, [=](int i, double t) -> std::array<double, 2> {
        const double th = detail::kTwoPi * (t + static_cast<double>(i) / k);
        return {std::cos(th), std::sin(th)};
    });
}

/// One point on a circle of radius 2 around the other k-1 points; unpunctured.
inline LoopSpec build_encircle(int k, int N = 256) {
    if (k < 2) throw InvalidArgument("build_encircle needs k >= 2");
    detail::require_samples(N);
    return detail::sample(k, false, N, [=](int i, double t) -> std::array<double, 2> {
        if (i == 0) return {2.0 * std::cos(detail::kTwoPi * t), 2.0 * std::sin(detail::kTwoPi * t)};
        return detail::inner_point(i - 1, k - 1, 0.0);
    }, [](int i) { return i == 0; });
}

inline LoopSpec constant_loop(int k, bool punctured) {
    if (k < 1) throw InvalidArgument("constant loop needs k >= 1");
    LoopSpec loop{k, punctured, {}};
    for (int i = 0; i < k; ++i) loop.trajectories.push_back({detail::grid_point(1.0 + i, 1.0)});
    return loop;
}

struct PantsRecord {
    int k = 0;
    int j = 0;
    ClassCoords delta_defect;  // Delta_{j+1} - Delta_j - tau_1
    ClassCoords tau_defect;    // tau_{j+1} - tau_j - tau_1
    bool delta_holds = false;
    bool tau_holds = false;
};

inline PantsRecord pants_check(int k, int j, int N = 256) {
    if (k < 2 || j < 0 || j > k - 2) throw InvalidArgument("pants_check needs 0 <= j <= k-2");
    PantsRecord r;
    r.k = k;
    r.j = j;
    const ClassCoords tau1 = evaluate(build_tau(k, 1, N));
    r.delta_defect = evaluate(build_delta(k, j + 1, N)) - evaluate(build_delta(k, j, N)) - tau1;
    r.tau_defect = evaluate(build_tau(k, j + 1, N)) - evaluate(build_tau(k, j, N)) - tau1;
    const ClassCoords zero{Integer(0), Integer(0)};
    r.delta_holds = r.delta_defect == zero;
    r.tau_holds = r.tau_defect == zero;
    return r;
}

/// Coefficient of pi in the failure of replication to commute with the
/// degree action: (chi - 1) r (r - 1).
inline Integer obstruction(const Integer& chi, const Integer& r) {
    if (r < 2) throw InvalidArgument("replication factor must be at least 2");
    return (chi - 1) * r * (r - 1);
}

inline bool commutes_mod(const Integer& chi, const Integer& r, const Integer& p) {
    if (p < 2) throw InvalidArgument("modulus must be at least 2");
    return mod(obstruction(chi, r), p) == 0;
}

}  // namespace confstab::loops

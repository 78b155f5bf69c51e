#pragma once

// JSON encodings. Integers that fit in 64 bits are numbers, larger ones are
// decimal strings; both forms are accepted on input.

#include <string>

#include <json.hpp>

#include "confstab/conf_algebra.hpp"
#include "confstab/degree_calculus.hpp"
#include "confstab/loop_homology.hpp"
#include "confstab/stability_oracle.hpp"

namespace confstab::io {

using Json = nlohmann::ordered_json;

/// Malformed JSON input (wrong shape or type), as opposed to a domain error.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error("format", what) {}
};

inline Json to_json(const Integer& x) {
    if (fits_int64(x)) return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

inline Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        try {
            return parse_integer(j.get<std::string>());
        } catch (const InvalidArgument& e) {
            throw FormatError(e.what());
        }
    }
    throw FormatError("expected an integer");
}

inline Json to_json(const Rational& q) {
    return Json::array({to_json(Integer(boost::multiprecision::numerator(q))),
                        to_json(Integer(boost::multiprecision::denominator(q)))});
}

inline Rational rational_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("a coordinate is a [numerator, denominator] pair");
    const Integer num = integer_from_json(j[0]), den = integer_from_json(j[1]);
    if (den == 0) throw FormatError("zero denominator");
    return make_rational(num, den);
}

inline Json to_json(const PrimeSet& ell) {
    if (ell.is_finite()) {
        Json a = Json::array();
        for (const auto& p : ell.listed()) a.push_back(to_json(p));
        return a;
    }
    return Json(ell.str());
}

// ---------------------------------------------------------------------------

inline Json to_json(const loops::LoopSpec& loop) {
    Json t = Json::array();
    for (const auto& traj : loop.trajectories) {
        Json pts = Json::array();
        for (const auto& p : traj) pts.push_back(Json::array({to_json(p.x), to_json(p.y)}));
        t.push_back(std::move(pts));
    }
    return Json{{"k", loop.k}, {"punctured", loop.punctured}, {"trajectories", std::move(t)}};
}

inline loops::LoopSpec loop_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("loop must be a JSON object");
    if (!j.contains("k") || !j["k"].is_number_integer()) throw FormatError("loop needs an integer k");
    if (!j.contains("trajectories") || !j["trajectories"].is_array()) throw FormatError("loop needs trajectories");
    loops::LoopSpec loop;
    const auto k = j["k"].get<std::int64_t>();
    if (k < 1 || k > 100000) throw FormatError("k out of range");
    loop.k = static_cast<int>(k);
    if (j.contains("punctured")) {
        if (!j["punctured"].is_boolean()) throw FormatError("punctured must be a boolean");
        loop.punctured = j["punctured"].get<bool>();
    }
    for (const auto& traj : j["trajectories"]) {
        if (!traj.is_array()) throw FormatError("a trajectory is a list of points");
        std::vector<loops::Point> pts;
        for (const auto& p : traj) {
            if (!p.is_array() || p.size() != 2) throw FormatError("a point is a pair of coordinates");
            pts.push_back({rational_from_json(p[0]), rational_from_json(p[1])});
        }
        loop.trajectories.push_back(std::move(pts));
    }
    loops::validate(loop);
    return loop;
}

inline Json to_json(const loops::ClassCoords& c) {
    Json j = Json::object();
    if (c.a) j["a"] = to_json(*c.a);
    j["b"] = to_json(c.b);
    return j;
}

// ---------------------------------------------------------------------------

inline Json dims_table(int n, int p, std::int64_t k_lo, std::int64_t k_hi, std::int64_t i_max) {
    Json rows = Json::array();
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        rows.push_back(Json{{"k", k}, {"dims", algebra::dims(n, p, k, i_max)}});
    }
    return Json{{"n", n}, {"p", p}, {"rows", std::move(rows)}};
}

inline Json to_json(const algebra::Monomial& m) { return Json(m.name()); }

inline Json to_json(const std::optional<algebra::InceptiveClasses>& c) {
    if (!c) return Json(nullptr);
    Json w = Json::array();
    for (const auto& m : c->witnesses) w.push_back(to_json(m));
    return Json{{"degree", c->degree}, {"witnesses", std::move(w)}};
}

inline Json to_json(const algebra::AuditRecord& r) {
    const auto& t = r.prediction;
    Json pred = Json::object();
    pred["row"] = t.row;
    pred["predicts_class"] = t.predicts_class;
    if (t.predicts_class) {
        pred["witness"] = t.witness;
        pred["degree"] = t.degree;
        pred["monomial"] = t.monomial ? Json(t.monomial->name()) : Json(nullptr);
        if (!t.not_applicable_reason.empty()) pred["reason"] = t.not_applicable_reason;
    }
    return Json{{"p", r.p},           {"n", r.n},
                {"k", r.k},           {"status", algebra::to_string(r.status)},
                {"detail", r.detail}, {"table_prediction", std::move(pred)},
                {"computed", to_json(r.computed)}};
}

inline Json to_json(const degree::ZigzagWitness& w) {
    Json moves = Json::array();
    for (const auto& m : w.moves) {
        moves.push_back(Json{{"side", degree::to_string(m.side)},
                             {"r", to_json(m.action.r())},
                             {"d", to_string(m.action.d())}});
    }
    return Json{{"k", to_json(w.k)},   {"j", to_json(w.j)}, {"chi", to_json(w.chi)},
                {"primes", to_json(w.ell)}, {"h", to_json(w.h)}, {"moves", std::move(moves)}};
}

inline Json to_json(const oracle::Verdict& v) {
    Json j{{"iso_guaranteed", v.iso_guaranteed},
           {"invariant_k", v.invariant_k},
           {"invariant_j", v.invariant_j},
           {"range", v.range}};
    if (v.range_bound) j["range_bound"] = *v.range_bound;
    j["basis"] = v.basis;
    j["sharp"] = v.sharp;
    j["footnote"] = v.footnote;
    return j;
}

inline Json to_json(const std::vector<oracle::ChainMove>& chain) {
    Json a = Json::array();
    for (const auto& m : chain) {
        if (m.kind == oracle::MoveKind::EMove) {
            a.push_back(Json{{"kind", "E_MOVE"}, {"r", to_json(m.r)}, {"from", to_json(m.from)}, {"to", to_json(m.to)}});
        } else {
            a.push_back(Json{{"kind", "A_MOVE"},
                             {"from", to_json(m.from)},
                             {"to", to_json(m.to)},
                             {"zigzag", to_json(*m.zigzag)}});
        }
    }
    return a;
}

}  // namespace confstab::io

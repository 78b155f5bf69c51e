#pragma once

// Command-line front end. run() is the whole program; main() only forwards
// argv. Exit status: 0 success, 1 domain error, 2 unparsable input.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "confstab/confstab.hpp"
#include "confstab/json.hpp"

namespace confstab::cli {

using io::Json;

/// Input that cannot be interpreted at all; reported with exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer int_arg(const std::string& name, const std::string& text) {
    try {
        return parse_integer(text);
    } catch (const InvalidArgument&) {
        throw UsageError("--" + name + " expects an integer, got '" + text + "'");
    }
}

inline std::vector<Integer> int_list(const std::string& name, const std::string& text) {
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(int_arg(name, item));
    if (out.empty()) throw UsageError("--" + name + " expects a comma-separated list");
    return out;
}

/// EMPTY, ALL, ALL-2,3 (all primes but 2 and 3) or a list such as 3,5.
inline PrimeSet parse_primes(const std::string& text) {
    if (text == "EMPTY" || text == "{}") return PrimeSet::empty();
    if (text == "ALL") return PrimeSet::all();
    if (text.rfind("ALL-", 0) == 0) return PrimeSet::all_except(int_list("primes", text.substr(4)));
    return PrimeSet::of(int_list("primes", text));
}

/// Z, Z[1/2], Q, F_p (or Fp), Z_(list) with list as in parse_primes.
inline CoefficientSpec parse_coeff(const std::string& text) {
    if (text == "Z") return CoefficientSpec::integers();
    if (text == "Z[1/2]") return CoefficientSpec::half_inverted();
    if (text == "Q") return CoefficientSpec::rationals();
    if (text.size() >= 2 && text[0] == 'F') {
        const std::string p = text[1] == '_' ? text.substr(2) : text.substr(1);
        return CoefficientSpec::prime_field(int_arg("coeff", p));
    }
    if (text.rfind("Z_(", 0) == 0 && text.back() == ')') {
        return CoefficientSpec::localised(parse_primes(text.substr(3, text.size() - 4)));
    }
    throw UsageError("unknown coefficient ring '" + text + "'");
}

/// linear:A:B is Ak+B, half:B is floor(k/2)+B, proven:COEFF is the proven bound.
inline algebra::RangeFn parse_range(const std::string& spec, int n, bool orientable, bool labels) {
    auto fields = [&](const std::string& rest) {
        std::vector<std::string> f;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ':')) f.push_back(item);
        return f;
    };
    if (spec.rfind("linear:", 0) == 0) {
        const auto f = fields(spec.substr(7));
        if (f.size() != 2) throw UsageError("range spec linear:A:B needs two integers");
        return algebra::linear_range(to_int64(int_arg("mu", f[0])), to_int64(int_arg("mu", f[1])));
    }
    if (spec.rfind("half:", 0) == 0) return algebra::half_range(to_int64(int_arg("mu", spec.substr(5))));
    if (spec.rfind("proven:", 0) == 0) {
        auto r = algebra::mu(parse_coeff(spec.substr(7)), {n, orientable}, labels);
        if (!r) throw NotAvailable("no proven stable range for " + spec.substr(7));
        return *r;
    }
    throw UsageError("unknown range spec '" + spec + "'");
}

inline std::string render_human(const Json& j) {
    std::ostringstream os;
    if (j.is_object()) {
        for (const auto& [key, v] : j.items()) os << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
        os << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
    return os.str();
}

struct Result {
    Json json;
    std::string human;  // empty: derived from json
};

inline Json error_json(const std::string& kind, const std::string& detail) {
    return Json{{"error", kind}, {"detail", detail}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
    CLI::App app{"Homology of configuration spaces: dimensions, stability verdicts and loop classes"};
    app.name("confstab");
    app.require_subcommand(1);
    bool json = false;
    std::function<Result()> action;

    auto sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->add_flag("--json", json, "machine-readable output");
        return s;
    };

    // dims
    int n = 0, p = 0, r_small = 0;
    std::string k_s, j_s, chi_s, p_s, r_s;
    std::int64_t k64 = 0, kmin64 = -1, imax = 0;
    {
        auto* s = sub("dims", "mod-p homology dimensions of C_k(R^n)");
        s->add_option("--n", n, "ambient dimension")->required();
        s->add_option("--p", p, "prime")->required();
        s->add_option("--k", k64, "weight (last row when --kmin is given)")->required();
        s->add_option("--kmin", kmin64, "first weight of a range of rows");
        s->add_option("--imax", imax, "largest homological degree")->required();
        s->callback([&] {
            action = [&]() -> Result {
                const std::int64_t lo = kmin64 < 0 ? k64 : kmin64;
                if (lo > k64) throw InvalidArgument("--kmin exceeds --k");
                Json t = io::dims_table(n, p, lo, k64, imax);
                std::ostringstream os;
                for (const auto& row : t["rows"]) {
                    os << "k=" << row["k"].get<std::int64_t>() << ":";
                    for (const auto& d : row["dims"]) os << " " << d.get<std::uint64_t>();
                    os << "\n";
                }
                return {t, os.str()};
            };
        });
    }
    {
        auto* s = sub("inceptive", "first p-inceptive degree and witnesses");
        s->add_option("--n", n)->required();
        s->add_option("--p", p)->required();
        s->add_option("--k", k64)->required();
        s->callback([&] {
            action = [&]() -> Result {
                Json j{{"n", n}, {"p", p}, {"k", k64}, {"first_inceptive", io::to_json(algebra::first_inceptive(n, p, k64))}};
                return {j, ""};
            };
        });
    }
    {
        auto* s = sub("table-audit", "compare the tabulated first inceptive class with the computed one");
        s->add_option("--p", p)->required();
        s->add_option("--n", n)->required();
        s->add_option("--k", k64)->required();
        s->callback([&] { action = [&]() -> Result { return {io::to_json(algebra::table_audit(p, n, k64)), ""}; }; });
    }

    std::string coeff_s, mu_s;
    bool non_orientable = false, labels = false, open = false;
    {
        auto* s = sub("mu", "proven stable range mu(k)");
        s->add_option("--coeff", coeff_s, "Z, Z[1/2], Q, F_p")->required();
        s->add_option("--dim", n)->required();
        s->add_flag("--non-orientable", non_orientable);
        s->add_flag("--labels", labels);
        s->add_option("--k", k64)->required();
        s->callback([&] {
            action = [&]() -> Result {
                const auto m = algebra::mu(parse_coeff(coeff_s), {n, !non_orientable}, labels);
                Json j{{"coeff", coeff_s}, {"dim", n}, {"orientable", !non_orientable}, {"labels", labels}};
                if (m) {
                    j["bound"] = m->description();
                    j["value"] = (*m)(k64);
                } else {
                    j["bound"] = "NO_BOUND";
                }
                return {j, ""};
            };
        });
    }
    {
        auto* s = sub("lambda", "replication range lambda(k)");
        s->add_option("--mu", mu_s, "linear:A:B, half:B or proven:COEFF")->required();
        s->add_option("--dim", n)->required();
        s->add_option("--r", r_small)->required();
        s->add_option("--k", k64)->required();
        s->add_flag("--non-orientable", non_orientable);
        s->add_flag("--labels", labels);
        s->callback([&] {
            action = [&]() -> Result {
                const auto m = parse_range(mu_s, n, !non_orientable, labels);
                return {Json{{"mu", m.description()}, {"dim", n}, {"r", r_small}, {"k", k64},
                             {"lambda", algebra::lambda_range(m, n, r_small, k64)}},
                        ""};
            };
        });
    }

    std::string char_s, primes_s;
    auto manifold = [&]() {
        if (chi_s.empty() && n % 2 == 0) throw UsageError("--chi is required in even dimension");
        const Integer chi = chi_s.empty() ? Integer(0) : int_arg("chi", chi_s);
        return ManifoldDescriptor(n, chi, !open, !non_orientable);
    };
    {
        auto* s = sub("oracle", "is H_*(C_k(M)) = H_*(C_j(M)) guaranteed in a range");
        s->add_option("--dim", n)->required();
        s->add_option("--chi", chi_s);
        auto* c1 = s->add_option("--char", char_s, "0 for Q, a prime for F_p");
        auto* c2 = s->add_option("--coeff", coeff_s, "Z, Z[1/2], Q, F_p, Z_(primes)");
        c1->excludes(c2);
        s->add_option("--k", k_s)->required();
        s->add_option("--j", j_s)->required();
        s->add_flag("--open", open);
        s->add_flag("--non-orientable", non_orientable);
        s->add_option("--mu", mu_s, "range spec for an explicit bound");
        s->callback([&] {
            action = [&]() -> Result {
                CoefficientSpec c = CoefficientSpec::rationals();
                if (!char_s.empty()) {
                    const Integer ch = int_arg("char", char_s);
                    if (ch != 0) c = CoefficientSpec::prime_field(ch);
                } else if (!coeff_s.empty()) {
                    c = parse_coeff(coeff_s);
                } else {
                    throw UsageError("one of --char or --coeff is required");
                }
                const ManifoldDescriptor m = manifold();
                std::optional<algebra::RangeFn> range;
                if (!mu_s.empty()) range = parse_range(mu_s, n, !non_orientable, false);
                return {io::to_json(oracle::oracle(m, c, int_arg("k", k_s), int_arg("j", j_s), range)), ""};
            };
        });
    }
    {
        auto* s = sub("zigzag", "single meeting-point zigzag between degrees k and j");
        s->add_option("--k", k_s)->required();
        s->add_option("--j", j_s)->required();
        s->add_option("--chi", chi_s)->required();
        s->add_option("--primes", primes_s, "EMPTY, ALL, ALL-2 or a list like 3,5")->required();
        s->callback([&] {
            action = [&]() -> Result {
                const auto w = degree::zigzag(int_arg("k", k_s), int_arg("j", j_s), int_arg("chi", chi_s),
                                              parse_primes(primes_s));
                if (!w) return {Json{{"witness", nullptr}}, "no witness: valuations differ\n"};
                return {Json{{"witness", io::to_json(*w)}, {"verified", degree::verify(*w)}}, ""};
            };
        });
    }
    {
        auto* s = sub("witness", "chain of replications and zigzags over F_p");
        s->add_option("--dim", n)->required();
        s->add_option("--chi", chi_s)->required();
        s->add_option("--p", p_s)->required();
        s->add_option("--k", k_s)->required();
        s->add_option("--j", j_s)->required();
        s->callback([&] {
            action = [&]() -> Result {
                const ManifoldDescriptor m = manifold();
                const Integer pp = int_arg("p", p_s), k = int_arg("k", k_s), j = int_arg("j", j_s);
                const auto chain = oracle::witness_chain(m, pp, k, j);
                if (!chain) return {Json{{"chain", nullptr}}, "no chain: isomorphism not guaranteed\n"};
                return {Json{{"chain", io::to_json(*chain)}, {"valid", oracle::validate_chain(m, pp, k, j, *chain)}}, ""};
            };
        });
    }
    {
        auto* s = sub("period", "period of the stable invariant in k");
        s->add_option("--chi", chi_s)->required();
        s->add_option("--p", p_s)->required();
        s->callback([&] {
            action = [&]() -> Result {
                const Integer per = period(int_arg("chi", chi_s), int_arg("p", p_s));
                return {Json{{"period", io::to_json(per)}}, per.str() + "\n"};
            };
        });
    }
    std::int64_t kmax64 = -1;
    {
        auto* s = sub("nsh", "bound on the number of stable homologies");
        s->add_option("--chi", chi_s)->required();
        s->add_option("--p", p_s)->required();
        s->add_option("--kmin", kmin64, "first k for the observed class count");
        s->add_option("--kmax", kmax64, "last k for the observed class count");
        s->callback([&] {
            action = [&]() -> Result {
                const Integer chi = int_arg("chi", chi_s), pp = int_arg("p", p_s);
                const auto bound = nsh_bound(chi, pp);
                Json j{{"chi", io::to_json(chi)}, {"p", io::to_json(pp)}};
                j["bound"] = bound ? io::to_json(*bound) : Json("UNBOUNDED");
                if (pp != 2) {
                    const std::int64_t lo = kmin64 < 1 ? 1 : kmin64;
                    std::int64_t hi = kmax64;
                    if (hi < 0) hi = lo - 1 + (chi == 0 ? 100 : 10 * to_int64(period(chi, pp)));
                    if (hi < lo) throw InvalidArgument("--kmax is below --kmin");
                    if (hi - lo > 10000000) throw InvalidArgument("k window is too large");
                    j["kmin"] = lo;
                    j["kmax"] = hi;
                    j["classes"] = oracle::class_count(chi, pp, lo, hi);
                }
                return {j, ""};
            };
        });
    }
    std::string file_s;
    {
        auto* s = sub("loop-class", "class (a, b) of a loop read as JSON from --file or stdin");
        s->add_option("--file", file_s);
        s->callback([&] {
            action = [&]() -> Result {
                std::string text;
                if (file_s.empty()) {
                    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
                } else {
                    std::ifstream f(file_s);
                    if (!f) throw UsageError("cannot open " + file_s);
                    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
                }
                const Json parsed = Json::parse(text);
                const auto ev = loops::evaluate_full(io::loop_from_json(parsed));
                Json j = io::to_json(ev.coords);
                j["permutation"] = ev.permutation;
                return {j, ""};
            };
        });
    }
    std::string kind_s;
    int d_small = 1, samples = 256, j_small = 0, k_small = 0;
    {
        auto* s = sub("loop-build", "emit a named loop as JSON");
        s->add_option("--kind", kind_s, "delta, pi, tau, delta-hat, tau-hat, sigma, full-twist, encircle, constant")
            ->required();
        s->add_option("--k", k_small)->required();
        s->add_option("--j", j_small);
        s->add_option("--d", d_small);
        s->add_option("--samples", samples);
        s->callback([&] {
            action = [&]() -> Result {
                if (k_small > 10000) throw InvalidArgument("k is too large for a loop");
                if (samples > (1 << 16)) throw InvalidArgument("too many samples");
                loops::LoopSpec loop;
                if (kind_s == "delta") loop = loops::build_delta(k_small, j_small, samples);
                else if (kind_s == "pi") loop = loops::build_pi(k_small, samples);
                else if (kind_s == "tau") loop = loops::build_tau(k_small, j_small, samples);
                else if (kind_s == "delta-hat") loop = loops::build_delta_hat(k_small, samples);
                else if (kind_s == "tau-hat") loop = loops::build_tau_hat(k_small, samples);
                else if (kind_s == "sigma") loop = loops::build_sigma(k_small, d_small, samples);
                else if (kind_s == "full-twist") loop = loops::build_full_twist(k_small, samples);
                else if (kind_s == "encircle") loop = loops::build_encircle(k_small, samples);
                else if (kind_s == "constant") loop = loops::constant_loop(k_small, true);
                else throw UsageError("unknown loop kind '" + kind_s + "'");
                Json j = io::to_json(loop);
                return {j, j.dump() + "\n"};
            };
        });
    }
    {
        auto* s = sub("pants", "check Delta_{j+1} - Delta_j = tau_1 and tau_{j+1} - tau_j = tau_1");
        s->add_option("--k", k_small)->required();
        s->add_option("--j", j_small)->required();
        s->add_option("--samples", samples);
        s->callback([&] {
            action = [&]() -> Result {
                if (k_small > 10000) throw InvalidArgument("k is too large for a loop");
                const auto rec = loops::pants_check(k_small, j_small, samples);
                return {Json{{"k", rec.k},
                             {"j", rec.j},
                             {"delta_defect", io::to_json(rec.delta_defect)},
                             {"tau_defect", io::to_json(rec.tau_defect)},
                             {"delta_holds", rec.delta_holds},
                             {"tau_holds", rec.tau_holds}},
                        ""};
            };
        });
    }
    {
        auto* s = sub("obstruction", "coefficient (chi-1) r (r-1) of pi");
        s->add_option("--chi", chi_s)->required();
        s->add_option("--r", r_s)->required();
        s->add_option("--p", p_s, "check divisibility by p");
        s->callback([&] {
            action = [&]() -> Result {
                const Integer chi = int_arg("chi", chi_s), r = int_arg("r", r_s);
                Json j{{"chi", io::to_json(chi)}, {"r", io::to_json(r)}, {"obstruction", io::to_json(loops::obstruction(chi, r))}};
                if (!p_s.empty()) {
                    const Integer pp = int_arg("p", p_s);
                    j["p"] = io::to_json(pp);
                    j["commutes"] = loops::commutes_mod(chi, r, pp);
                    if (is_prime(pp)) j["theorem_e_applicable"] = oracle::theorem_e_applicable(chi, pp, r);
                }
                return {j, ""};
            };
        });
    }
    {
        auto* s = sub("s2-h1", "order of H_1(C_k(S^2); Z)");
        s->add_option("--k", k_s)->required();
        s->callback([&] {
            action = [&]() -> Result {
                const Integer order = sphere::h1_s2(int_arg("k", k_s));
                return {Json{{"k", io::to_json(int_arg("k", k_s))}, {"order", io::to_json(order)}}, order.str() + "\n"};
            };
        });
    }
    {
        auto* s = sub("s2-modp", "dim H_1(C_k(S^2); F_p) through the exact sequence");
        s->add_option("--k", k_small)->required();
        s->add_option("--p", p)->required();
        s->callback([&] {
            action = [&]() -> Result {
                if (k_small > 10000) throw InvalidArgument("k is too large for a loop");
                const auto d = sphere::h1_s2_dim_mod_p(k_small, p);
                return {Json{{"k", k_small}, {"p", p}, {"dim", d}}, std::to_string(d) + "\n"};
            };
        });
    }
    {
        auto* s = sub("dichotomy", "whether dim H_{n-1}(C_k(S^n); F_p) = dim H_{n-1}(C_j(S^n); F_p)");
        s->add_option("--n", n)->required();
        s->add_option("--p", p_s)->required();
        s->add_option("--k", k_s)->required();
        s->add_option("--j", j_s)->required();
        s->add_option("--mu", mu_s, "range spec; defaults to the proven F_p range");
        s->callback([&] {
            action = [&]() -> Result {
                const Integer pp = int_arg("p", p_s);
                const std::string spec = mu_s.empty() ? "proven:F_" + pp.str() : mu_s;
                const auto range = parse_range(spec, n, true, false);
                const bool eq = sphere::hn1_dichotomy(n, pp, int_arg("k", k_s), int_arg("j", j_s), range);
                return {Json{{"n", n}, {"p", io::to_json(pp)}, {"k", io::to_json(int_arg("k", k_s))}, {"j", io::to_json(int_arg("j", j_s))}, {"equal", eq}}, ""};
            };
        });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        out << error_json("parse", e.what()).dump() << "\n";
        return 2;
    }

    try {
        const Result r = action();
        if (json) {
            out << r.json.dump() << "\n";
        } else {
            out << (r.human.empty() ? render_human(r.json) : r.human);
        }
        return 0;
    } catch (const UsageError& e) {
        out << error_json("parse", e.what()).dump() << "\n";
        return 2;
    } catch (const io::FormatError& e) {
        out << error_json("parse", e.what()).dump() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        out << error_json("parse", e.what()).dump() << "\n";
        return 2;
    } catch (const Error& e) {
        out << error_json(e.kind(), e.what()).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        out << error_json("internal", e.what()).dump() << "\n";
        return 1;
    }
}

}  // namespace confstab::cli

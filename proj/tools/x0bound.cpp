#include "siegel/bounds.hpp"
#include "siegel/errors.hpp"
#include "siegel/heights.hpp"
#include "siegel/modgroup.hpp"
#include "siegel/modpoly.hpp"
#include "siegel/numfield.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;
using namespace siegel;

namespace {

constexpr unsigned kPrecCap = 4096;

unsigned default_precision() {
    if (const char* env = std::getenv("SIEGEL_PRECISION_BITS")) {
        long v = std::atol(env);
        if (v >= 64 && v <= static_cast<long>(kPrecCap)) return static_cast<unsigned>(v);
    }
    return 256;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json lm_json(const LogMagnitude& x) {
    return json{{"lo", x.lo.get_str()},
                {"hi", x.hi.get_str()},
                {"lo_decimal", rational_to_decimal(x.lo)},
                {"hi_decimal", rational_to_decimal(x.hi)}};
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("cannot parse rational: " + s);
    if (q.get_den() == 0) throw ZeroDenominator("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
}

mpz_class parse_integer(const std::string& s) {
    mpz_class z;
    if (z.set_str(s, 10) != 0) throw Error("cannot parse integer: " + s);
    return z;
}

// "x^2+1", "x^3 - 2x + 5", "2*x^2-3" -> ascending coefficient vector
IntPoly parse_poly_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error("empty polynomial");
    std::vector<std::pair<mpz_class, int>> terms;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= s.size()) throw Error("dangling sign in polynomial: " + text);
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        if (i < s.size() && s[i] == '*') ++i;
        mpz_class coef = digits.empty() ? mpz_class(1) : mpz_class(digits);
        int exp = 0;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
                if (e.empty()) throw Error("missing exponent in polynomial: " + text);
                exp = std::stoi(e);
            }
        } else if (digits.empty()) {
            throw Error("cannot parse polynomial near position " + std::to_string(i) + ": " + text);
        }
        terms.emplace_back(sign * coef, exp);
    }
    int deg = 0;
    for (const auto& [c, e] : terms) deg = std::max(deg, e);
    IntPoly f(static_cast<size_t>(deg) + 1, mpz_class(0));
    for (const auto& [c, e] : terms) f[static_cast<size_t>(e)] += c;
    return ip_normalize(f);
}

// Field spec: JSON object {"minpoly":[1,0,1],"disc":-4} or a polynomial
// string like "x^2+1"; --disc overrides/augments the claimed discriminant.
NumberField parse_field(const std::string& spec, const std::string& disc_flag) {
    IntPoly f;
    std::optional<mpz_class> claimed;
    size_t start = spec.find_first_not_of(" \t");
    if (start != std::string::npos && spec[start] == '{') {
        json j = json::parse(spec);
        if (!j.contains("minpoly") || !j["minpoly"].is_array())
            throw Error("field spec JSON needs a \"minpoly\" array");
        for (const auto& c : j["minpoly"]) {
            if (c.is_number_integer())
                f.push_back(mpz_class(static_cast<long>(c.get<long long>())));
            else
                f.push_back(parse_integer(c.get<std::string>()));
        }
        f = ip_normalize(f);
        if (j.contains("disc")) {
            if (j["disc"].is_number_integer())
                claimed = mpz_class(static_cast<long>(j["disc"].get<long long>()));
            else
                claimed = parse_integer(j["disc"].get<std::string>());
        }
    } else {
        f = parse_poly_string(spec);
    }
    if (!disc_flag.empty()) claimed = parse_integer(disc_flag);
    return make_number_field(f, claimed);
}

PlaceSet make_places(const NumberField& field, const std::vector<std::string>& primes) {
    std::vector<mpz_class> qs;
    qs.reserve(primes.size());
    for (const auto& s : primes) qs.push_back(parse_integer(s));
    return build_place_set(field, qs);
}

const char* verdict_str(Tri t) { return tri_name(t); }

void emit(const json& j, bool with_timestamp, const std::string& format) {
    json out = j;
    if (with_timestamp) out["timestamp"] = iso_timestamp();
    if (format == "text") {
        for (auto it = out.begin(); it != out.end(); ++it)
            std::cout << it.key() << ": " << it.value().dump() << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
}

struct CommonOpts {
    std::string field_spec = "x";
    std::string disc;
    std::vector<std::string> primes;
    std::string C_str = "32768";
    unsigned precision = default_precision();
    unsigned precision_cap = kPrecCap;
    bool no_timestamp = false;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_field = true) {
    if (with_field) {
        cmd->add_option("--field", o.field_spec, "number field (poly string or JSON spec)");
        cmd->add_option("--disc", o.disc, "claimed field discriminant");
        cmd->add_option("--primes", o.primes, "rational primes under the finite places of S");
        cmd->add_option("--C", o.C_str, "explicit constant C");
    }
    cmd->add_option("--precision", o.precision, "working precision in bits")
        ->check(CLI::Range(64u, kPrecCap));
    cmd->add_option("--precision-cap", o.precision_cap, "precision doubling cap")
        ->check(CLI::Range(64u, kPrecCap));
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
}

int run_bound(long p, const CommonOpts& o) {
    NumberField field = parse_field(o.field_spec, o.disc);
    PlaceSet places = make_places(field, o.primes);
    BoundInput in;
    in.p = p;
    in.d = field.degree;
    in.absD = abs(field.disc);
    in.s = places.s;
    in.ell = places.ell;
    in.finite_norms = places.finite_norms();
    in.C_const = parse_integer(o.C_str);
    BoundBreakdown bb = chain_check(in, o.precision, o.precision_cap);
    json j{{"p", p},
           {"d", in.d},
           {"s", in.s},
           {"abs_disc", in.absD.get_str()},
           {"ell", in.ell.get_str()},
           {"C", in.C_const.get_str()},
           {"precision_bits", bb.precision_bits},
           {"log_delta0", lm_json(bb.log_delta0)},
           {"log_Dstar", lm_json(bb.log_Dstar)},
           {"log_delta_p", lm_json(bb.log_delta_p)},
           {"log_delta0_tilde_bound", lm_json(bb.log_delta0_tilde_bound)},
           {"log_C_KS", lm_json(bb.log_C_KS)},
           {"log_precise", lm_json(bb.log_precise)},
           {"log_simplified", lm_json(bb.log_simplified)},
           {"tilde_matches_delta_p", verdict_str(bb.tilde_matches_delta_p)},
           {"precise_le_simplified", verdict_str(bb.precise_le_simplified)},
           {"dstar_ge_dedekind", verdict_str(bb.dstar_ge_dedekind)}};
    emit(j, !o.no_timestamp, o.format);
    Tri v[] = {bb.tilde_matches_delta_p, bb.precise_le_simplified, bb.dstar_ge_dedekind};
    for (Tri t : v)
        if (t == Tri::False) return 2;
    for (Tri t : v)
        if (t == Tri::Unknown) return 3;
    return 0;
}

int run_cusps(const std::string& kind, long level, const CommonOpts& o) {
    GroupKind gk;
    if (kind == "gamma0")
        gk = GroupKind::Gamma0;
    else if (kind == "gamma1")
        gk = GroupKind::Gamma1;
    else if (kind == "gamma")
        gk = GroupKind::GammaFull;
    else if (kind == "gamma-tilde")
        gk = GroupKind::GammaTilde;
    else
        throw Error("unknown subgroup kind: " + kind);
    CongruenceSubgroup G = make_subgroup(gk, level);
    CosetTable table = coset_enumeration(G);
    CuspData cd = cusps(G, table);
    json widths = json::array();
    long width_sum = 0;
    for (const auto& c : cd.classes) {
        widths.push_back(c.width);
        width_sum += c.width;
    }
    json j{{"level", level},
           {"kind", kind},
           {"name", G.name},
           {"index", table.index},
           {"v_infinity", cd.v_infinity},
           {"widths", widths},
           {"width_sum", width_sum}};
    if (gk == GroupKind::GammaTilde) {
        EtaleReport er = etale_check(level);
        j["etale"] = er.pass;
        j["covering_degree"] =
            covering_degree(G, make_subgroup(GroupKind::Gamma0, level));
    }
    emit(j, !o.no_timestamp, o.format);
    return 0;
}

int run_compare(long pmin, long pmax, const CommonOpts& o) {
    NumberField field = parse_field(o.field_spec, o.disc);
    PlaceSet places = make_places(field, o.primes);
    mpz_class C = parse_integer(o.C_str);
    long d = field.degree, s = places.s;
    mpz_class absD = abs(field.disc), ell = places.ell;
    auto norms = places.finite_norms();
    std::cout << "p,log_precise,log_simplified,log_composite_reference\n";
    for (long p = pmin; p <= pmax; ++p) {
        if (!is_prime_i64(p) || is_excluded_prime(p)) continue;
        unsigned prec = o.precision;
        LogMagnitude precise = log_main_precise(p, d, s, absD, ell, norms, C, prec);
        LogMagnitude simplified = log_main_simplified(p, d, s, absD, ell, norms, prec);
        LogMagnitude d0t = log_delta0_tilde_bound(p, d, s, absD, norms, prec);
        LogMagnitude composite = log_composite_bound_given_delta0(aux_level_M(p), d, s, ell, C, d0t, prec);
        std::cout << p << "," << rational_to_decimal(precise.hi) << ","
                  << rational_to_decimal(simplified.hi) << "," << rational_to_decimal(composite.hi)
                  << "\n";
    }
    return 0;
}

int run_height(const std::string& rational, const std::string& minpoly, const std::string& tol_str,
               const CommonOpts& o) {
    json j;
    LogMagnitude h;
    if (!rational.empty()) {
        mpq_class x = parse_rational(rational);
        h = height_rational(x);
        j["rational"] = x.get_str();
    } else if (!minpoly.empty()) {
        AlgebraicNumber a = make_algebraic_number(parse_poly_string(minpoly));
        mpq_class tol = parse_rational(tol_str);
        if (tol <= 0) throw Error("tolerance must be positive");
        h = height_algebraic(a, tol);
        json mp = json::array();
        for (const auto& c : a.minpoly) mp.push_back(c.get_str());
        j["minpoly"] = mp;
    } else {
        throw Error("height: give --rational or --minpoly");
    }
    j["height"] = lm_json(h);
    emit(j, !o.no_timestamp, o.format);
    return 0;
}

int run_modpoly(long p, const std::string& out_path, long cap, const CommonOpts& o) {
    (void)o;
    ModularPolynomial phi = modular_polynomial(p, cap);
    std::string text = modpoly_to_json(phi);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open output file: " + out_path);
        out << text << "\n";
    }
    return 0;
}

int run_scan(long p, bool use_cm, const std::vector<std::string>& j_list, long cap,
             const CommonOpts& o) {
    NumberField field = parse_field(o.field_spec, o.disc);
    PlaceSet places = make_places(field, o.primes);
    mpz_class C = parse_integer(o.C_str);
    std::vector<std::pair<mpq_class, long>> inputs; // (j0, CM disc or 0)
    if (use_cm) {
        for (const auto& cv : cm_j_invariants()) inputs.emplace_back(mpq_class(cv.j), cv.disc);
    }
    for (const auto& s : j_list) inputs.emplace_back(parse_rational(s), 0);
    if (inputs.empty()) throw Error("scan: give --cm or --j values");
    ModularPolynomial phi = modular_polynomial(p, cap);
    json rows = json::array();
    bool all_true = true;
    for (const auto& [j0, disc] : inputs) {
        json row{{"j", j0.get_str()}};
        if (disc != 0) row["cm_disc"] = disc;
        auto roots = rational_points_above_j(phi, j0);
        json rj = json::array();
        for (const auto& r : roots) rj.push_back(r.get_str());
        row["rational_points_above"] = rj;
        if (!roots.empty()) {
            PointBoundReport rep =
                verify_point_bound(p, j0, places, C, o.precision, o.precision_cap);
            row["height"] = lm_json(rep.height);
            row["bound"] = lm_json(rep.bound);
            row["verdict"] = verdict_str(rep.verdict);
            if (rep.verdict != Tri::True) all_true = false;
        }
        rows.push_back(row);
    }
    json j{{"p", p}, {"entries", rows}};
    emit(j, !o.no_timestamp, o.format);
    return all_true ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact height-bound calculator for S-integral points on X0(p)"};
    app.require_subcommand(1);

    CommonOpts ob, oc, ocmp, oh, om, os;
    long p_bound = 0, p_cusps = 0, p_modpoly = 0, p_scan = 0;
    long pmin = 11, pmax = 97;
    std::string kind = "gamma0";
    std::string rational, minpoly, tol = "1/1000000000";
    std::string out_path;
    long cap_modpoly = 13, cap_scan = 13;
    bool use_cm = false;
    std::vector<std::string> j_list;

    auto* bound = app.add_subcommand("bound", "full bound report with chain verdicts");
    bound->add_option("--p", p_bound, "prime level")->required();
    add_common(bound, ob);

    auto* cusps_cmd = app.add_subcommand("cusps", "cusp report for a congruence subgroup");
    cusps_cmd->add_option("--kind", kind, "gamma0|gamma1|gamma|gamma-tilde")
        ->check(CLI::IsMember({"gamma0", "gamma1", "gamma", "gamma-tilde"}));
    cusps_cmd->add_option("--p,--N", p_cusps, "level")->required();
    add_common(cusps_cmd, oc, false);

    auto* compare = app.add_subcommand("compare", "CSV sweep of bounds over a prime range");
    compare->add_option("--p-min", pmin, "first prime");
    compare->add_option("--p-max", pmax, "last prime");
    add_common(compare, ocmp);

    auto* height = app.add_subcommand("height", "absolute logarithmic height");
    height->add_option("--rational", rational, "rational number a/b");
    height->add_option("--minpoly", minpoly, "integer minimal polynomial");
    height->add_option("--tol", tol, "target interval width (rational)");
    add_common(height, oh, false);

    auto* modpoly_cmd = app.add_subcommand("modpoly", "classical modular polynomial as JSON");
    modpoly_cmd->add_option("--p", p_modpoly, "prime")->required();
    modpoly_cmd->add_option("--out", out_path, "output file (default stdout)");
    modpoly_cmd->add_option("--cap", cap_modpoly, "largest supported prime");
    add_common(modpoly_cmd, om, false);

    auto* scan = app.add_subcommand("scan", "scan j-invariants for points and bound verdicts");
    scan->add_option("--p", p_scan, "prime level")->required();
    scan->add_flag("--cm", use_cm, "use the class-number-one CM j-list");
    scan->add_option("--j", j_list, "explicit rational j-values");
    scan->add_option("--cap", cap_scan, "largest supported prime for the modular polynomial");
    add_common(scan, os);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (bound->parsed()) return run_bound(p_bound, ob);
        if (cusps_cmd->parsed()) return run_cusps(kind, p_cusps, oc);
        if (compare->parsed()) return run_compare(pmin, pmax, ocmp);
        if (height->parsed()) return run_height(rational, minpoly, tol, oh);
        if (modpoly_cmd->parsed()) return run_modpoly(p_modpoly, out_path, cap_modpoly, om);
        if (scan->parsed()) return run_scan(p_scan, use_cm, j_list, cap_scan, os);
    } catch (const RootIsolationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

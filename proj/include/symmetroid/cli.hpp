#ifndef SYMMETROID_CLI_HPP
#define SYMMETROID_CLI_HPP

#include "report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace symmetroid {

/// Everything one CLI invocation needs. Unset optionals fall back to the
/// per-subcommand defaults in dispatch().
struct RunConfig
{
    std::string subcommand;
    std::string input;                 // pencil file, when the subcommand takes one
    std::vector<std::string> places;   // "inf", a prime, or a field spec such as "F4"
    std::optional<std::uint64_t> prime;
    std::optional<std::uint64_t> cutoff;
    std::optional<unsigned> dmax;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> samples;
    std::optional<long> height;
    unsigned workers = 1;
    std::string strategy = "real";
    std::string t;                     // comma-separated member parameter
    std::string v;                     // comma-separated kernel vector (x-point)
    std::string quadric;               // classify a single form instead of a pencil member
    std::string method = "auto";       // sp-scan
    std::string out;
    bool pretty = false;
    int verbosity = 0;
};

/// SYMMETROID_WORKERS, or 1 when unset or malformed.
inline unsigned default_workers()
{
    const char* env = std::getenv("SYMMETROID_WORKERS");
    if (!env || !*env)
        return 1;
    try {
        std::size_t used = 0;
        unsigned long w = std::stoul(env, &used);
        if (used == std::string(env).size() && w > 0 && w <= 1024)
            return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
    return 1;
}

inline Pencil parse_pencil_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open pencil file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_pencil(text.str());
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

/// "1,-2,3/4" -> rationals.
inline std::vector<BigRat> parse_rational_list(const std::string& s)
{
    std::vector<BigRat> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw Error("empty entry in list '" + s + "'");
        item = item.substr(b, e - b + 1);
        if (!item.empty() && item[0] == '+')
            item.erase(0, 1);
        BigRat x;
        if (x.set_str(item, 10) != 0)
            throw Error("cannot parse rational '" + item + "'");
        if (x.get_den() == 0)
            throw Error("zero denominator in '" + item + "'");
        x.canonicalize();
        out.push_back(x);
    }
    return out;
}

struct DispatchResult
{
    int exit_code = 0;
    Json report;
};

namespace detail {

inline void require_input(const RunConfig& c)
{
    if (c.input.empty())
        throw Error(c.subcommand + " needs a pencil file");
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t cutoff)
{
    return primes_below(cutoff + 1);
}

/// Odd primes up to the cutoff: regularity is never tested at 2.
inline std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t cutoff)
{
    auto primes = primes_up_to(cutoff);
    if (!primes.empty() && primes.front() == 2)
        primes.erase(primes.begin());
    return primes;
}

inline std::vector<BigRat> member_parameter(const RunConfig& c)
{
    if (c.t.empty())
        throw Error(c.subcommand + " needs --t t0,t1,t2,t3,t4");
    auto t = parse_rational_list(c.t);
    if (t.size() != 5)
        throw Error("--t needs five entries");
    return t;
}

inline FieldSpec field_of(const std::string& s)
{
    if (s == "inf" || s == "oo" || s == "real")
        return FieldSpec::reals();
    if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0])))
        return FieldSpec::padic(Place::parse(s).p());
    return FieldSpec::parse(s);
}

inline DispatchResult run_classify(const RunConfig& c)
{
    QuadricForm q;
    Json head;
    if (!c.quadric.empty()) {
        q = parse_quadric(c.quadric);
    } else {
        require_input(c);
        auto pen = parse_pencil_file(c.input);
        q = member_at(pen, member_parameter(c));
        head["t"] = c.t;
    }
    head["form"] = q.str();
    Json rows = Json::array();
    std::vector<std::string> fields = c.places.empty() ? std::vector<std::string>{"Q", "inf"} : c.places;
    for (const auto& f : fields)
        rows.push_back(to_json(classify(q, field_of(f))));
    head["classifications"] = rows;
    return {0, make_report("classify", "ok", head)};
}

inline DispatchResult run_alpha_symbol(const RunConfig& c)
{
    require_input(c);
    auto pen = parse_pencil_file(c.input);
    auto s = alpha_symbol(pen, c.seed);
    Json r = to_json(s);
    r["pencil"] = pen.str();
    return {0, make_report("alpha-symbol", "ok", r)};
}

inline DispatchResult run_evaluate(const RunConfig& c)
{
    require_input(c);
    auto pen = parse_pencil_file(c.input);
    auto t = member_parameter(c);
    std::vector<std::string> places = c.places.empty() ? std::vector<std::string>{"inf"} : c.places;
    Json rows = Json::array();
    for (const auto& ps : places) {
        Place v = Place::parse(ps);
        auto ys = lift_to_y(pen, t, v);
        Json entry{{"place", v.str()}};
        Json pts = Json::array();
        for (const auto& y : ys) {
            Json p = to_json(y);
            p["evaluation"] = to_json(evaluate_invariant_detailed(pen, y));
            pts.push_back(p);
        }
        entry["points"] = pts;
        if (ys.empty())
            entry["reason"] = "the member has no smooth local point, so no Y-point lies over it";
        rows.push_back(entry);
    }
    return {0, make_report("evaluate", "ok", Json{{"t", to_json_list(t)}, {"places", rows}})};
}

inline DispatchResult run_certify_wa(const RunConfig& c)
{
    require_input(c);
    auto pen = parse_pencil_file(c.input);
    auto strategy = Strategy::parse(c.strategy);
    auto cert = certify_wa_failure(pen, strategy, c.seed, odd_primes_up_to(c.cutoff.value_or(11)));
    std::string why;
    bool ok = validate_certificate(pen, cert, &why);
    Json r = to_json(cert, pen);
    r["validated"] = ok;
    if (!ok) {
        r["validation_failure"] = why;
        return {1, make_report("certify-wa", "error", r)};
    }
    return {0, make_report("certify-wa", "ok", r)};
}

inline DispatchResult run_regularity(const RunConfig& c)
{
    require_input(c);
    auto pen = parse_pencil_file(c.input);
    auto primes = c.prime ? std::vector<std::uint64_t>{*c.prime} : odd_primes_up_to(c.cutoff.value_or(11));
    Json attempts = Json::array();
    std::optional<RegularityCertificate> found;
    for (auto p : primes) {
        if (c.verbosity)
            std::cerr << "regularity: trying p = " << p << "\n";
        auto cert = regularity_certificate(pen, p, c.dmax.value_or(6));
        attempts.push_back(to_json(cert));
        if (cert.verdict == RegularityCertificate::Verdict::certified) {
            found = cert;
            break;
        }
    }
    Json r{{"pencil", pen.str()}, {"regular", found.has_value()}, {"attempts", attempts}};
    if (found)
        r["certificate_prime"] = found->prime;
    return {found ? 0 : 2, make_report("regularity", found ? "ok" : "inconclusive", r)};
}

inline DispatchResult run_v3(const RunConfig& c)
{
    require_input(c);
    auto pen = parse_pencil_file(c.input);
    auto cert = v3_avoidance(pen, c.dmax.value_or(12));
    Json r = to_json(cert);
    // The all-primes test strips powers of 2, so p = 2 is settled by a direct scan.
    auto at2 = sp_member(pen, 2);
    r["p2_scan"] = to_json(at2);
    bool avoids = cert.certified && cert.exceptional_primes.empty();
    r["avoids_v3"] = avoids;
    return {avoids ? 0 : 2, make_report("v3-test", avoids ? "ok" : "inconclusive", r)};
}

inline DispatchResult run_sp_scan(const RunConfig& c)
{
    require_input(c);
    auto pen = parse_pencil_file(c.input);
    std::vector<std::uint64_t> primes = c.prime ? std::vector<std::uint64_t>{*c.prime} : primes_up_to(c.cutoff.value_or(13));
    Json rows = Json::array();
    Json members = Json::array();
    for (auto p : primes) {
        auto s = sp_member(pen, p, c.method);
        rows.push_back(to_json(s));
        if (s.member)
            members.push_back(p);
    }
    return {0, make_report("sp-scan", "ok", Json{{"pencil", pen.str()}, {"results", rows}, {"primes_in_S_p", members}})};
}

inline DispatchResult run_density_bound(const RunConfig& c)
{
    std::uint64_t m = c.cutoff.value_or(100);
    if (m >= 100)
        return {0, make_report("density-bound", "ok", to_json(product_lower_bound(m)))};
    // Below 100 the tail estimate is not certified; report the partial product
    // over p < M only.
    BigRat pp = partial_product(m == 0 ? 0 : m - 1);
    Json r{{"cutoff", m},
           {"partial_product", to_json(pp)},
           {"partial_product_decimal", decimal_string(pp)},
           {"final_bound", nullptr},
           {"note", "tail bound needs a cutoff of at least 100"}};
    return {0, make_report("density-bound", "ok", r)};
}

inline DispatchResult run_monte_carlo(const RunConfig& c)
{
    auto rep = monte_carlo_density(c.height.value_or(10), c.cutoff.value_or(20), c.samples.value_or(10000), c.seed,
                                   c.workers);
    bool ok = rep.within_band;
    return {ok ? 0 : 2, make_report("monte-carlo", ok ? "ok" : "inconclusive", to_json(rep))};
}

inline DispatchResult run_census(const RunConfig& c)
{
    if (!c.prime || (*c.prime != 2 && *c.prime != 3))
        throw Error("census only accepts --p 2 or --p 3");
    std::uint64_t p = *c.prime;
    BigInt n = census_bp(p, c.workers);
    BigInt formula = count_bp(p);
    Json r{{"p", p}, {"count", to_json(n)}, {"formula", to_json(formula)}, {"agrees", n == formula}};
    return {n == formula ? 0 : 1, make_report("census", n == formula ? "ok" : "error", r)};
}

inline DispatchResult run_x_point(const RunConfig& c)
{
    require_input(c);
    auto pen = parse_pencil_file(c.input);
    auto t = member_parameter(c);
    if (c.v.empty())
        throw Error("x-point needs --v with five entries");
    auto v = parse_rational_list(c.v);
    auto x = x_point_from_singular_member(pen, t, v);
    bool ok = !x.degenerate && x.bilinear_vanishing;
    return {ok ? 0 : 2, make_report("x-point", ok ? "ok" : "inconclusive", to_json(x))};
}

} // namespace detail

/// Runs one subcommand. Engine errors become exit code 1 with the message in
/// the report; the caller decides where the report goes.
inline DispatchResult dispatch(const RunConfig& c)
{
    try {
        const std::string& s = c.subcommand;
        if (s == "classify")
            return detail::run_classify(c);
        if (s == "alpha-symbol")
            return detail::run_alpha_symbol(c);
        if (s == "evaluate")
            return detail::run_evaluate(c);
        if (s == "certify-wa")
            return detail::run_certify_wa(c);
        if (s == "regularity")
            return detail::run_regularity(c);
        if (s == "v3-test")
            return detail::run_v3(c);
        if (s == "sp-scan")
            return detail::run_sp_scan(c);
        if (s == "density-bound")
            return detail::run_density_bound(c);
        if (s == "monte-carlo")
            return detail::run_monte_carlo(c);
        if (s == "census")
            return detail::run_census(c);
        if (s == "x-point")
            return detail::run_x_point(c);
        throw Error("unknown subcommand '" + s + "'");
    } catch (const std::exception& e) {
        return {1, make_report(c.subcommand, "error", Json{{"error", std::string(c.subcommand) + ": " + e.what()}})};
    }
}

} // namespace symmetroid

#endif // SYMMETROID_CLI_HPP

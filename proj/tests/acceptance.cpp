// Acceptance harness: one PASS/FAIL line per criterion. Usage: acceptance [N ...]
// (all criteria when no number is given). The exit status is nonzero when any
// selected criterion fails.

#include "expected_symbol.hpp"
#include "fixtures.hpp"
#include "oracles/oracles.hpp"

#include <symmetroid/brauer_eval.hpp>
#include <symmetroid/cli.hpp>
#include <symmetroid/density.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace symmetroid;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

struct Criterion
{
    int id;
    std::string title;
    std::string tolerance;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::string join(const std::vector<std::string>& parts)
{
    std::string s;
    for (const auto& p : parts)
        s += (s.empty() ? "" : "; ") + p;
    return s;
}

Outcome alpha_symbol_exact()
{
    auto s = alpha_symbol(fixtures::real_obstruction_pencil());
    std::vector<std::string> bad;
    if (to_string(s.minors[1]) != expected::a1 || to_string(s.a1) != expected::a1)
        bad.push_back("M2 != a1");
    if (to_string(s.minors[0] * s.minors[0]) != expected::a2 || to_string(s.a2) != expected::a2)
        bad.push_back("M1^2 != a2");
    if (to_string(s.minors[2]) != expected::b1 || to_string(s.b1) != expected::b1)
        bad.push_back("M3 - printed b1 = " + to_string(s.minors[2] - parse_polynomial(expected::b1, "t", 5)) +
                      " (M3(e2) = -2 by the 3x3 block of Q2; the printed b1 vanishes there)");
    if (to_string(s.minors[1] * s.minors[0]) != expected::b2 || to_string(s.b2) != expected::b2)
        bad.push_back("M2*M1 != b2");
    if (s.attempts != 0)
        bad.push_back("needed a change of basis");
    return {bad.empty(), bad.empty() ? "a1, a2, b1, b2 identical to the printed polynomials" : join(bad)};
}

Outcome v3_avoidance_all_primes()
{
    auto c = empty_all_primes(v3_minor_ideal(fixtures::real_obstruction_pencil()), true, 12);
    bool ok = c.certified && c.scope == EmptinessCertificate::Scope::all_primes && c.exceptional_primes.empty();
    std::ostringstream d;
    if (c.certified)
        d << "1 in the 2-saturated minor ideal over Z, degree " << detail::degree_string(c.degree) << ", " << c.rows_used
          << " rows";
    else
        d << "inconclusive up to d_max = 12";
    return {ok, d.str()};
}

Outcome prop_local_invariants()
{
    auto prop = fixtures::padic_obstruction_pencil();
    std::vector<std::string> bad;
    auto y0 = lift_to_y(prop, {1, 0, 0, 0, 0}, Place::prime(3));
    auto y1 = lift_to_y(prop, {0, 1, 0, 0, 0}, Place::prime(3));
    if (y0.empty() || y1.empty())
        bad.push_back("missing Y-points over Q0 or Q1 at 3");
    for (auto& y : y0)
        if (evaluate_invariant(prop, y) != LocalInvariant::one_half())
            bad.push_back("inv_3 over Q0 is not 1/2");
    for (auto& y : y1)
        if (evaluate_invariant(prop, y) != LocalInvariant::zero())
            bad.push_back("inv_3 over Q1 is not 0");
    auto cert = certify_wa_failure(prop, Strategy::finite(3));
    std::string why;
    if (!validate_certificate(prop, cert, &why))
        bad.push_back("finite(3) certificate invalid: " + why);
    return {bad.empty(), bad.empty() ? "inv_3 = 1/2 over Q0, 0 over Q1; finite(3) certificate validates" : join(bad)};
}

Outcome real_obstruction()
{
    auto thm = fixtures::real_obstruction_pencil();
    std::vector<std::string> bad;
    auto y1 = lift_to_y(thm, {0, 1, 0, 0, 0}, Place::infinity());
    if (y1.empty())
        bad.push_back("no real Y-point over Q1");
    for (auto& y : y1) {
        if (!y.signature || *y.signature != std::array<int, 2>{4, 0} || y.rank != 4)
            bad.push_back("Q1 is not of signature (4,0) with a one-dimensional kernel");
        if (evaluate_invariant(thm, y) != LocalInvariant::one_half())
            bad.push_back("inv_inf over Q1 is not 1/2");
    }
    auto zero = find_real_point_with_invariant(thm, LocalInvariant::zero());
    if (!zero)
        bad.push_back("no real point with invariant 0 found");
    else if (!zero->signature || *zero->signature != std::array<int, 2>{2, 2} || !validate_y_point(thm, *zero))
        bad.push_back("the invariant-0 point is not a certified (2,2) root");
    auto cert = certify_wa_failure(thm, Strategy::real());
    std::string why;
    if (!validate_certificate(thm, cert, &why))
        bad.push_back("real certificate invalid: " + why);
    std::string where = zero && zero->real_root ? " on the line a + s b, s in [" + zero->real_root->s.lo().get_str() +
                                                      ", " + zero->real_root->s.hi().get_str() + "]"
                                                : "";
    return {bad.empty(), bad.empty() ? "inv 1/2 at Q1 (4,0); certified (2,2) root with inv 0" + where +
                                           "; real certificate validates"
                                     : join(bad)};
}

Outcome density_bound()
{
    auto r = product_lower_bound(100);
    bool ok = r.partial_product >= BigRat(737, 1000) && r.partial_product <= BigRat(740, 1000) &&
              r.final_bound >= BigRat(73, 100);
    return {ok, "partial product " + decimal_string(r.partial_product) + ", final bound " +
                    decimal_string(r.final_bound) + " (tail constant " + decimal_string(r.tail_constant, 8) + ")"};
}

Outcome census_oracle()
{
    unsigned w = default_workers();
    auto t0 = std::chrono::steady_clock::now();
    BigInt c2 = census_bp(2, w);
    double s2 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    BigInt c3 = census_bp(3, w);
    double s3 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() - s2;
    bool ok = c2 == 186 && c2 == count_bp(2) && c3 == count_bp(3) && s2 < 120 && s3 < 1800;
    std::ostringstream d;
    d << "census(2) = " << c2 << " vs formula " << count_bp(2) << " (" << s2 << " s); census(3) = " << c3
      << " vs formula " << count_bp(3) << " (" << s3 << " s)";
    return {ok, d.str()};
}

Outcome hilbert_suite()
{
    int violations = 0;
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<long> d(-1000000, 1000000);
    for (int trial = 0; trial < 1000; ++trial) {
        long a = 0, b = 0;
        while (a == 0)
            a = d(rng);
        while (b == 0)
            b = d(rng);
        int prod = hilbert_symbol(a, b, Place::infinity());
        BigInt n = abs(BigInt(a) * BigInt(b) * 2);
        for (unsigned long p = 2; n > 1; ++p) {
            if (!mpz_divisible_ui_p(n.get_mpz_t(), p))
                continue;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                n /= p;
            prod *= hilbert_symbol(a, b, Place::prime(p));
        }
        violations += prod != 1;
    }
    int product_violations = violations;
    int brute = 0;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        std::map<std::pair<std::int64_t, std::int64_t>, int> cache;
        for (std::int64_t a = -30; a <= 30; ++a)
            for (std::int64_t b = -30; b <= 30; ++b) {
                if (a == 0 || b == 0)
                    continue;
                auto key = std::make_pair(oracle::reduce_square_part(a, p), oracle::reduce_square_part(b, p));
                auto it = cache.find(key);
                int want = it != cache.end() ? it->second : (cache[key] = oracle::hilbert_brute(key.first, key.second, p));
                ++brute;
                violations += hilbert_symbol(a, b, Place::prime(static_cast<std::uint64_t>(p))) != want;
            }
    }
    for (std::int64_t a = -30; a <= 30; ++a)
        for (std::int64_t b = -30; b <= 30; ++b)
            if (a != 0 && b != 0)
                violations += hilbert_symbol(a, b, Place::infinity()) != oracle::hilbert_real(a, b);
    std::ostringstream s;
    s << "product formula on 1000 pairs: " << product_violations << " violations; brute force on " << brute
      << " (a, b, p) triples plus the real place: " << violations - product_violations << " violations";
    return {violations == 0, s.str()};
}

Outcome regularity()
{
    std::vector<std::string> parts;
    bool ok = true;
    for (auto name : {"real_obstruction.pencil", "smooth_mod5.pencil"}) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<RegularityCertificate> attempts;
        auto c = find_regularity_certificate(fixtures::load(name), {3, 5, 7, 11}, &attempts);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool good = c.verdict == RegularityCertificate::Verdict::certified && s < 600;
        ok = ok && good;
        std::ostringstream d;
        d << name << ": " << (good ? "certified at p = " + std::to_string(c.prime) : "no certificate");
        for (const auto& a : attempts)
            if (a.verdict != RegularityCertificate::Verdict::certified)
                d << " (p = " << a.prime << " " << RegularityCertificate::verdict_name(a.verdict) << ")";
        d << " in " << s << " s";
        parts.push_back(d.str());
    }
    return {ok, join(parts)};
}

Outcome x_point()
{
    auto thm = fixtures::real_obstruction_pencil();
    auto x = x_point_from_singular_member(thm, {1, 0, 0, 0, 0}, {0, 0, 0, 0, 1});
    std::vector<BigInt> target{1, -3, 2, 4, 1};
    bool proportional = !x.w.empty();
    for (std::size_t i = 0; i < 5 && proportional; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (x.w[i] * target[j] != x.w[j] * target[i])
                proportional = false;
    // Is (1,-3,2,4,1) itself in the solution space?
    std::ostringstream d;
    d << "bilinear vanishing " << (x.bilinear_vanishing ? "holds" : "fails") << " for w = (";
    for (std::size_t i = 0; i < x.w.size(); ++i)
        d << (i ? "," : "") << x.w[i];
    d << "); solution space has dimension " << x.solution_basis.size() << "; ";
    std::vector<BigInt> vals;
    for (std::size_t i = 0; i < 5; ++i) {
        BigInt acc = 0;
        for (std::size_t r = 0; r < 5; ++r)
            acc += target[r] * thm.gram(i)(r, 4);
        vals.push_back(acc);
    }
    d << "w^T B_i e4 for w = (1,-3,2,4,1) is (";
    for (std::size_t i = 0; i < 5; ++i)
        d << (i ? "," : "") << vals[i];
    d << "), so the stated w is not proportional to any solution";
    return {proportional && x.bilinear_vanishing, d.str()};
}

Outcome albert()
{
    auto a2 = albert_check(2);
    auto a4 = albert_check(4);
    bool ok = a2.counterexamples == 0 && a4.counterexamples == 0 && a2.forms_with_nonzero_generator > 0 &&
              a4.forms_with_nonzero_generator > 0;
    std::ostringstream d;
    d << "F_2: " << a2.forms_with_nonzero_generator << " forms with a nonzero generator, " << a2.counterexamples
      << " counterexamples; F_4: " << a4.forms_with_nonzero_generator << ", " << a4.counterexamples;
    return {ok, d.str()};
}

Outcome monte_carlo()
{
    auto r = monte_carlo_density(10, 20, 10000, 20240601, default_workers());
    std::ostringstream d;
    d.precision(6);
    d << "estimate " << r.estimate << " (" << r.passes << "/" << r.samples << "), product "
      << decimal_string(r.product, 6) << ", lower band " << r.product.get_d() - 3 * r.product_sigma;
    return {r.within_band, d.str()};
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<Criterion> all = {
        {1, "bit-exact alpha symbol", "exact", 10, alpha_symbol_exact},
        {2, "V3 avoidance, all primes", "exact, d_max = 12", 600, v3_avoidance_all_primes},
        {3, "local invariants at 3", "exact", 60, prop_local_invariants},
        {4, "real obstruction", "exact", 300, real_obstruction},
        {5, "density bound", "partial in [0.737, 0.740], bound >= 0.73", 30, density_bound},
        {6, "census oracle", "exact", 1920, census_oracle},
        {7, "Hilbert symbol suite", "zero violations", 600, hilbert_suite},
        {8, "regularity", "certificate at some p <= 11", 1200, regularity},
        {9, "x-point", "exact", 1, x_point},
        {10, "Albert-form check", "zero counterexamples", 60, albert},
        {11, "Monte Carlo sanity", "estimate >= product - 3 sigma", 600, monte_carlo},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : all) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass && s < c.limit_seconds;
        if (o.pass && !pass)
            o.detail += "; over the time limit";
        failures += !pass;
        std::printf("criterion %2d %s: %s [tolerance: %s; %.2f s of %.0f s] %s\n", c.id, pass ? "PASS" : "FAIL",
                    c.title.c_str(), c.tolerance.c_str(), s, c.limit_seconds, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

#ifndef SYMMETROID_REPORT_HPP
#define SYMMETROID_REPORT_HPP

#include "brauer_eval.hpp"
#include "density.hpp"
#include "nullstellensatz.hpp"
#include "pencil.hpp"
#include "quadform.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace symmetroid {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "symmetroid.report/1";

// Exact numbers are strings ("-3/7"); floating values appear only where noted.

inline Json to_json(const BigInt& x) { return x.get_str(); }
inline Json to_json(const BigRat& x) { return x.get_str(); }

template <typename T>
Json to_json_list(const std::vector<T>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

inline Json to_json(const Place& v) { return v.str(); }

inline Json to_json(const SquareClass& c)
{
    return Json{{"place", c.place.str()},
                {"valuation_parity", c.valuation_parity},
                {"unit", c.unit},
                {"is_square", c.is_square()}};
}

inline Json to_json(const FormClassification& c)
{
    Json j{{"field", c.field.str()}, {"rank", c.rank}, {"smooth_point", c.smooth_point}};
    if (c.signature)
        j["signature"] = {(*c.signature)[0], (*c.signature)[1], (*c.signature)[2]};
    if (!c.kernel.empty()) {
        Json k = Json::array();
        for (const auto& v : c.kernel)
            k.push_back(to_json_list(v));
        j["kernel"] = k;
    }
    if (!c.kernel_fq.empty())
        j["kernel_fq"] = c.kernel_fq;
    if (c.diagonalization)
        j["diagonal"] = to_json_list(c.diagonalization->diagonal);
    if (c.diagonalization_fq)
        j["diagonal_fq"] = c.diagonalization_fq->diagonal;
    switch (c.rank_two) {
    case FormClassification::RankTwoType::split:
        j["rank_two"] = "split";
        break;
    case FormClassification::RankTwoType::nonsplit:
        j["rank_two"] = "nonsplit";
        break;
    default:
        break;
    }
    if (c.base_discriminant)
        j["base_discriminant"] = to_json(*c.base_discriminant);
    return j;
}

inline Json to_json(const EmptinessCertificate& c)
{
    Json j{{"certified", c.certified},
           {"scope", c.scope == EmptinessCertificate::Scope::all_primes ? "all_primes" : "single_prime"},
           {"log", c.log}};
    if (c.scope == EmptinessCertificate::Scope::single_prime)
        j["prime"] = c.prime;
    if (c.certified) {
        j["degree"] = c.degree;
        j["monomial_count"] = c.monomial_count;
        j["rows_used"] = c.rows_used;
    }
    if (c.scope == EmptinessCertificate::Scope::all_primes) {
        j["saturated_at_2"] = c.saturated_at_2;
        j["nontrivial_divisors"] = to_json_list(c.divisors);
        j["exceptional_primes"] = to_json_list(c.exceptional_primes);
    }
    return j;
}

inline Json to_json(const RegularityCertificate& c)
{
    Json j{{"prime", c.prime},
           {"verdict", RegularityCertificate::verdict_name(c.verdict)},
           {"coefficient_rank_mod_p", c.coefficient_rank_mod_p},
           {"diagonal_empty", c.diagonal_empty},
           {"singular_locus_empty", c.singular_locus_empty},
           {"diagonal", to_json(c.diagonal)},
           {"reasoning", c.reasoning}};
    if (c.diagonal_empty)
        j["singular_locus"] = to_json(c.singular_locus);
    if (!c.witness.empty())
        j["witness"] = c.witness;
    return j;
}

inline Json to_json(const AlphaSymbol& s)
{
    Json j{{"M1", to_string(s.minors[0])}, {"M2", to_string(s.minors[1])}, {"M3", to_string(s.minors[2])},
           {"M4", to_string(s.minors[3])}, {"a1", to_string(s.a1)},        {"a2", to_string(s.a2)},
           {"b1", to_string(s.b1)},        {"b2", to_string(s.b2)},        {"basis_change_attempts", s.attempts}};
    Json t = Json::array();
    for (std::size_t r = 0; r < s.basis_change.rows(); ++r)
        t.push_back(to_json_list(s.basis_change.row(r)));
    j["basis_change"] = t;
    return j;
}

inline Json to_json(const LocalYPoint& y)
{
    Json j{{"place", y.place.str()},
           {"t", to_json_list(y.t)},
           {"exact", y.exact},
           {"rank", y.rank},
           {"ruling", ruling_name(y.ruling)}};
    if (y.signature)
        j["signature"] = {(*y.signature)[0], (*y.signature)[1]};
    if (y.base_disc)
        j["base_disc"] = to_json(*y.base_disc);
    if (!y.base_diagonal.empty())
        j["base_diagonal"] = to_json_list(y.base_diagonal);
    if (y.real_root) {
        const auto& r = *y.real_root;
        j["real_root"] = Json{{"a", to_json_list(r.a)},
                              {"b", to_json_list(r.b)},
                              {"restricted_det", r.restricted.str()},
                              {"s_interval", {to_json(r.s.lo()), to_json(r.s.hi())}}};
    }
    if (y.padic) {
        const auto& a = *y.padic;
        j["padic"] = Json{{"t", to_json_list(a.t)},
                          {"precision", a.precision},
                          {"hensel_loss", a.hensel_loss},
                          {"dropped_coordinate", a.dropped},
                          {"minor_valuation", a.minor_valuation}};
    }
    return j;
}

inline Json to_json(const InvariantEvaluation& e)
{
    Json j{{"invariant", e.invariant.str()}, {"notes", e.notes}};
    j["conic_cross_check"] = e.conic ? Json(e.conic->str()) : Json(nullptr);
    j["literal_symbol"] = e.formal_symbol ? Json(e.formal_symbol->str()) : Json(nullptr);
    return j;
}

inline Json to_json(const WACertificate& c, const Pencil& pen)
{
    Json j{{"pencil", pen.str()},
           {"strategy", c.strategy.str()},
           {"place", c.place.str()},
           {"regularity", to_json(c.regularity)}};
    Json pts = Json::array();
    for (const auto* y : {&c.trivial_point, &c.nontrivial_point}) {
        Json p = to_json(*y);
        p["invariant"] = evaluate_invariant(pen, *y).str();
        pts.push_back(p);
    }
    j["points"] = pts;
    j["global_point"] = c.global_point ? to_json_list(*c.global_point) : Json(nullptr);
    j["locally_soluble_everywhere"] = c.locally_soluble_everywhere;
    Json w = Json::array();
    for (const auto& s : c.witnesses) {
        Json x{{"place", s.point ? s.point->place.str() : (c.global_point ? "all" : "rest")}, {"reasoning", s.reasoning}};
        if (s.point)
            x["point"] = to_json(*s.point);
        w.push_back(x);
    }
    j["witnesses"] = w;
    j["reasoning"] = c.reasoning;
    return j;
}

inline Json to_json(const XPoint& x)
{
    Json basis = Json::array();
    for (const auto& v : x.solution_basis)
        basis.push_back(to_json_list(v));
    return Json{{"v", to_json_list(x.v)},
                {"w", to_json_list(x.w)},
                {"solution_basis", basis},
                {"degenerate", x.degenerate},
                {"bilinear_vanishing", x.bilinear_vanishing}};
}

inline Json to_json(const DensityReport& r)
{
    Json table = Json::array();
    for (const auto& [p, b] : r.table)
        table.push_back(Json{{"p", p}, {"b", to_json(b)}});
    return Json{{"cutoff", r.cutoff},
                {"partial_product", to_json(r.partial_product)},
                {"partial_product_decimal", decimal_string(r.partial_product)},
                {"tail_constant", to_json(r.tail_constant)},
                {"tail_factor", to_json(r.tail_factor)},
                {"final_bound", to_json(r.final_bound)},
                {"final_bound_decimal", decimal_string(r.final_bound)},
                {"monotonicity_certified", r.monotonicity_certified},
                {"table", table}};
}

inline Json to_json(const SpResult& r)
{
    Json j{{"p", r.p}, {"member", r.member}, {"degenerate_frame", r.degenerate_frame}, {"method", r.method}};
    j["witness"] = r.witness.empty() ? Json(nullptr) : Json(r.witness);
    return j;
}

inline Json to_json(const MonteCarloReport& r)
{
    Json fails = Json::array();
    for (const auto& [p, c] : r.failures_by_prime)
        fails.push_back(Json{{"p", p}, {"failures", c}});
    return Json{{"height", r.height},
                {"cutoff", r.cutoff},
                {"samples", r.samples},
                {"seed", r.seed},
                {"passes", r.passes},
                {"rank_deficient_over_Q", r.rank_deficient},
                {"failures_by_prime", fails},
                {"estimate", r.estimate},
                {"radius95", r.radius95},
                {"product", to_json(r.product)},
                {"product_decimal", decimal_string(r.product)},
                {"product_sigma", r.product_sigma},
                {"within_band", r.within_band}};
}

/// Envelope shared by every CLI report.
inline Json make_report(const std::string& command, const std::string& status, Json result)
{
    return Json{{"schema", kReportSchema}, {"command", command}, {"status", status}, {"result", std::move(result)}};
}

} // namespace symmetroid

#endif // SYMMETROID_REPORT_HPP

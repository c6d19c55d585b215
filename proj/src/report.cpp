#include "binrec/report.hpp"

#include <algorithm>
#include <sstream>

namespace binrec {

namespace {

std::string s(const Integer& v) { return v.get_str(); }
std::string s(const Rational& v) { return v.get_str(); }

void flatten_into(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Cell>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten_into(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    if (j.is_array()) {
        std::string joined;
        for (const auto& v : j) {
            if (!joined.empty()) joined += ';';
            joined += v.is_string() ? v.get<std::string>() : v.dump();
        }
        out.emplace_back(prefix, str(joined));
        return;
    }
    if (j.is_string()) {
        out.emplace_back(prefix, str(j.get<std::string>()));
    } else if (j.is_null()) {
        out.emplace_back(prefix, str(std::string()));
    } else {
        out.emplace_back(prefix, Cell{j.dump(), true});
    }
}

}  // namespace

Json to_json(const Interval& x) { return Json{{"lo", x.lower_string()}, {"hi", x.upper_string()}}; }

Json to_json(const RecurrenceSpec& spec) { return spec.to_string(); }

Json to_json(const RankRecord& r) {
    return Json{{"p", s(r.p)}, {"rank", r.l}, {"ord_t_rank", r.ord_t_l}, {"ord_t_2rank", r.ord_t_2l}};
}

Json to_json(const PhiPrimeReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back(Json{{"p", s(e.p)}, {"exponent", e.exponent}, {"class", to_string(e.cls)}});
    Json unf = Json::array();
    for (const auto& c : r.unfactored) unf.push_back(s(c));
    return Json{{"n", r.n},           {"value", s(r.value)}, {"special", s(r.special)},
                {"entries", entries}, {"unfactored", unf},   {"exhaustive", r.exhaustive()}};
}

Json to_json(const OrdpMargin& m) {
    return Json{{"kind", to_string(m.kind)}, {"p", s(m.p)},          {"n", m.n},
                {"observed", s(m.observed)}, {"bound", to_json(m.bound)}, {"ratio", m.ratio}};
}

Json to_json(const DependenceWitness& w) {
    return Json{{"k", w.k},   {"l", w.l},  {"l1", w.l1},       {"k1", w.k1},
                {"x", w.x},   {"y", w.y},  {"rho", w.rho.to_string()}, {"zeta", w.zeta.to_string()},
                {"case", to_string(w.kase)}};
}

Json to_json(const ThetaData& th) {
    Json j{{"theta1", th.theta1.to_string()}, {"theta2", th.theta2.to_string()}, {"trace", s(th.trace)},
                {"N", s(th.N)},                    {"g", s(th.g)},                    {"field_tag", th.field_tag},
                {"conjugate_branch", th.conjugate_branch}};
    if (th.field_tag != 0) {
        j["theta1_ring"] = th.cyclo1(th.field_tag).to_string();
        j["theta2_ring"] = th.cyclo2(th.field_tag).to_string();
    }
    return j;
}

Json to_json(const DivisibilityResult& d) {
    return Json{{"index", d.index},       {"unit_case", to_string(d.unit_case)},
                {"e", d.e},               {"i", d.i},
                {"divisor", d.divisor},   {"twisted", d.twisted},
                {"quotient", d.quotient}, {"divides_sequence_multiple", d.divides_sequence_multiple}};
}

Json to_json(const LogGapMargin& m) {
    return Json{{"n", m.n},
                {"observed", to_json(m.observed)},
                {"upper", to_json(m.upper)},
                {"upper_holds", m.upper_holds},
                {"near_equality", m.near_equality},
                {"c1", m.c1}};
}

Json to_json(const PartialPhiMargin& m) {
    Json c = m.c ? Json(*m.c) : Json(nullptr);
    return Json{{"n", m.n},
                {"degree", m.degree},
                {"value", m.value.to_string()},
                {"lambda_norm", s(m.lambda_norm)},
                {"observed", to_json(m.observed)},
                {"main_term", to_json(m.main_term)},
                {"c", c},
                {"half_degree_exceeded", m.half_degree_exceeded}};
}

Json to_json(const CycloFactorization& f) {
    Json factors = Json::array();
    for (const auto& pf : f.factors) {
        const char* kind = pf.kind == PrimeKind::Inert ? "inert" : pf.kind == PrimeKind::Split ? "split" : "ramified";
        factors.push_back(Json{{"pi", pf.pi.to_string()},
                               {"exponent", pf.exponent},
                               {"p", s(pf.rational_prime)},
                               {"kind", kind}});
    }
    return Json{{"unit", f.unit.to_string()}, {"factors", factors}};
}

Json to_json(const PrimitiveResult& r) {
    return Json{{"m", r.m},
                {"e", r.e},
                {"i", r.i},
                {"value", r.value.to_string()},
                {"factorization", to_json(r.factorization)},
                {"p", r.p ? Json(s(*r.p)) : Json(nullptr)},
                {"pi", r.pi ? Json(r.pi->to_string()) : Json(nullptr)},
                {"split", r.split},
                {"bound", to_json(r.bound)},
                {"exceeds_bound", r.exceeds_bound},
                {"in_window", r.in_window}};
}

Json to_json(const EvenOddSplit& sp) {
    return Json{{"g", s(sp.g)},
                {"even", to_json(sp.v)},
                {"odd", to_json(sp.w)},
                {"scale_even", s(sp.scale_v)},
                {"scale_odd", s(sp.scale_w)}};
}

Json to_json(const SweepRecord& r) {
    return Json{{"n", r.n},
                {"digits", r.digits},
                {"P", s(r.P)},
                {"bound", to_json(r.bound)},
                {"satisfied", r.satisfied},
                {"zero_term", r.zero_term},
                {"budget_exceeded", r.budget_exceeded},
                {"indeterminate", r.indeterminate}};
}

Table flatten(const std::vector<Json>& rows) {
    std::vector<std::vector<std::pair<std::string, Cell>>> flat(rows.size());
    Table t;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        flatten_into(rows[r], "", flat[r]);
        for (const auto& [k, _] : flat[r]) {
            // A null parent is superseded by its flattened children.
            if (std::find(t.columns.begin(), t.columns.end(), k) == t.columns.end()) t.columns.push_back(k);
        }
    }
    std::erase_if(t.columns, [&](const std::string& col) {
        return std::any_of(t.columns.begin(), t.columns.end(),
                           [&](const std::string& other) { return other.rfind(col + ".", 0) == 0; });
    });
    for (const auto& cells : flat) {
        std::vector<Cell> out;
        for (const auto& col : t.columns) {
            Cell c = str(std::string());
            for (const auto& [k, v] : cells)
                if (k == col) c = v;
            out.push_back(c);
        }
        t.add(std::move(out));
    }
    return t;
}

std::string render(const std::vector<Json>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) return flatten(rows).render(OutputFormat::Csv);
    std::ostringstream out;
    for (const auto& r : rows) out << r.dump() << '\n';
    return out.str();
}

}  // namespace binrec

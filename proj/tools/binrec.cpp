// Command-line front end. Exit codes: 0 success, 2 precondition violation,
// 3 resource budget exceeded, 4 identity failure.

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "binrec/cyclotomic.hpp"
#include "binrec/harness.hpp"
#include "binrec/muldep.hpp"
#include "binrec/padic.hpp"
#include "binrec/primitive.hpp"
#include "binrec/report.hpp"

using namespace binrec;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitResource = 3;
constexpr int kExitIdentity = 4;

/// Reads a flat JSON object whose keys are long flag names; nested objects address
/// subcommand options.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        throw CLI::ConversionError("writing JSON configuration is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        Json j;
        try {
            j = Json::parse(input);
        } catch (const Json::exception& ex) {
            throw CLI::ConversionError(std::string("invalid JSON configuration: ") + ex.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("JSON configuration must be an object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static void collect(const Json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                auto sub = parents;
                sub.push_back(key);
                collect(value, sub, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }

    static std::string scalar(const Json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }
};

struct Globals {
    std::string spec;
    std::optional<std::uint64_t> limit;
    std::string constant = "104";
    std::optional<std::uint64_t> budget;
    std::string format = "json";
    unsigned jobs = 1;
    std::string hints_path;
    long dependence_bound = kDefaultDependenceBound;
    unsigned precision = 128;

    // Resolved after parsing.
    FactorHints hints;

    RecurrenceSpec recurrence() const {
        require(!spec.empty(), "--spec r,s,u0,u1 is required");
        return RecurrenceSpec::parse(spec);
    }
    std::uint64_t limit_or(std::uint64_t fallback) const { return limit.value_or(fallback); }
    OutputFormat output() const { return parse_output_format(format); }
    FactorOptions factor_options() const {
        FactorOptions o;
        if (budget) o.rho_budget = *budget;
        if (!hints.empty()) o.hints = &hints;
        return o;
    }
    SweepOptions sweep_options() const {
        SweepOptions o;
        o.constant = parse_bound_constant(constant);
        o.jobs = jobs;
        if (budget) o.rho_budget = *budget;
        if (!hints.empty()) o.hints = &hints;
        o.precision_bits = precision;
        return o;
    }
};

void emit(const std::vector<Json>& rows, const Globals& g) { std::cout << render(rows, g.output()); }

void emit(const Table& t, const Globals& g) { std::cout << t.render(g.output()); }

int ring_tag_of(const std::string& text) {
    if (text.find('w') != std::string::npos) return 3;
    return 4;
}

// A theta pair from "u+v*i" / "u+v*w"; the second element is the complex conjugate.
ThetaData theta_from_text(const std::string& text) {
    const int tag = ring_tag_of(text);
    const CycloInt z = CycloInt::parse(text, tag);
    const Integer delta = tag == 4 ? -4 : -3;
    return make_theta(to_quad(z, delta), to_quad(z.conj(), delta));
}

ThetaData theta_from_spec(const RecurrenceSpec& spec, long bound) {
    const ClosedForm cf = closed_form(spec);
    const auto w = find_dependence(cf, bound);
    require(w.has_value(), "no multiplicative dependence within the search bound (inconclusive)");
    return build_theta(*w, cf);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for prime factors of binary recurrence sequences"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file whose keys mirror the flag names");
    app.require_subcommand(1);

    Globals g;
    app.add_option("--spec", g.spec, "Recurrence r,s,u0,u1");
    app.add_option("--limit", g.limit, "Upper index for ranges and sweeps");
    app.add_option("--constant", g.constant, "Bound constant: 104 or 103.95")->capture_default_str();
    app.add_option("--budget", g.budget, "Pollard-rho iteration budget");
    app.add_option("--format", g.format, "Output format: json or csv")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Worker threads for sweeps")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--hints", g.hints_path, "JSON file {\"primes\": [...]} of known large primes");
    app.add_option("--dep-bound", g.dependence_bound, "Height bound for the dependence search")->capture_default_str();
    app.add_option("--precision", g.precision, "Working precision in bits")->capture_default_str();

    std::optional<std::uint64_t> n_opt, m_opt, m_min;
    std::optional<std::string> p_opt, x_opt, y_opt, theta_opt;
    int e = 4;
    long i_class = 1;
    bool report_only = false;
    std::string kind = "lucas";

    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    CLI::App* c_term = sub("term", "Terms u_n (one n, or 0..limit)");
    c_term->add_option("--n", n_opt, "Index");
    CLI::App* c_lucas = sub("lucas", "Companion Lucas terms t_n (one n, or 0..limit)");
    c_lucas->add_option("--n", n_opt, "Index");
    CLI::App* c_sweep = sub("gpf-sweep", "Greatest prime factor of u_n against the bound for 3 <= n <= limit");
    CLI::App* c_rank = sub("rank", "Rank of apparition of p (or of every prime up to limit)");
    c_rank->add_option("--p", p_opt, "Prime");
    CLI::App* c_val = sub("valuation", "ord_p of t_n by the valuation law, with the direct order and margin");
    c_val->add_option("--n", n_opt, "Index")->required();
    c_val->add_option("--p", p_opt, "Prime")->required();
    c_val->add_option("--kind", kind, "Margin kind: lucas or general")->capture_default_str();
    CLI::App* c_phi = sub("phi", "Phi_n(x, y) for integers, or Phi_n(alpha, beta) with its prime structure");
    c_phi->add_option("--n", n_opt, "Index")->required();
    c_phi->add_option("--x", x_opt, "Integer x");
    c_phi->add_option("--y", y_opt, "Integer y");
    c_phi->add_flag("--report-only", report_only, "Report misclassified primes instead of failing");
    CLI::App* c_phi_ie = sub("phi-ie", "Partial cyclotomic value Phi_{n,e}^{(i)}(x, y) and its cofactor");
    c_phi_ie->add_option("--n", n_opt, "Index")->required();
    c_phi_ie->add_option("--e", e, "Ring tag 3, 4 or 6")->capture_default_str();
    c_phi_ie->add_option("--i", i_class, "Residue class")->capture_default_str();
    c_phi_ie->add_option("--x", x_opt, "Ring element u+v*i or u+v*w")->required();
    c_phi_ie->add_option("--y", y_opt, "Ring element u+v*i or u+v*w")->required();
    CLI::App* c_muldep = sub("muldep", "Multiplicative dependence witness and theta pair");
    CLI::App* c_theta = sub("theta-verify", "Theta identities and divisibility consequences for n <= limit");
    CLI::App* c_prim = sub("primitive-search", "Largest prime under Phi_{m,e}^{(i)}(theta1, theta2)");
    c_prim->add_option("--theta", theta_opt, "theta1 as u+v*i or u+v*w (theta2 is its conjugate); default from --spec");
    c_prim->add_option("--e", e, "Ring tag 3, 4 or 6")->capture_default_str();
    c_prim->add_option("--i", i_class, "Residue class 1 or -1")->capture_default_str();
    c_prim->add_option("--m", m_opt, "Single m (otherwise m-min..limit)");
    c_prim->add_option("--m-min", m_min, "First m of the range (default 3)");
    CLI::App* c_split = sub("split", "Even and odd subsequences");
    CLI::App* c_density = sub("density", "Violation density per dyadic block");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex);
        return code == 0 ? 0 : kExitPrecondition;
    }

    try {
        if (!g.hints_path.empty()) g.hints = FactorHints::load(g.hints_path);
        const OutputFormat fmt = g.output();
        (void)fmt;
        std::vector<Json> rows;

        if (c_term->parsed() || c_lucas->parsed()) {
            const RecurrenceSpec spec = c_lucas->parsed() ? g.recurrence().lucas() : g.recurrence();
            if (n_opt) {
                rows.push_back(Json{{"n", *n_opt}, {"value", term(spec, *n_opt).get_str()}});
            } else {
                const auto t = terms(spec, g.limit_or(20) + 1);
                for (std::size_t k = 0; k < t.size(); ++k) rows.push_back(Json{{"n", k}, {"value", t[k].get_str()}});
            }
            emit(rows, g);
        } else if (c_sweep->parsed()) {
            require(g.limit.has_value(), "--limit is required");
            emit(sweep_table(sweep_gpf(g.recurrence(), *g.limit, g.sweep_options())), g);
        } else if (c_density->parsed()) {
            require(g.limit.has_value(), "--limit is required");
            emit(density_table(density_report(sweep_gpf(g.recurrence(), *g.limit, g.sweep_options()))), g);
        } else if (c_rank->parsed()) {
            const RecurrenceSpec spec = g.recurrence();
            if (p_opt) {
                rows.push_back(to_json(rank_of_apparition(spec, parse_integer(*p_opt))));
            } else {
                require(g.limit.has_value() && *g.limit <= 100'000'000, "--p or --limit up to 10^8 is required");
                for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(*g.limit))) {
                    if (spec.s % p == 0) continue;
                    rows.push_back(to_json(rank_of_apparition(spec, p)));
                }
            }
            emit(rows, g);
        } else if (c_val->parsed()) {
            const RecurrenceSpec spec = g.recurrence();
            const Integer p = parse_integer(*p_opt);
            Json row{{"n", *n_opt},
                     {"p", p.get_str()},
                     {"law", lucas_valuation(spec, *n_opt, p)},
                     {"direct", lucas_term_ord(spec, *n_opt, p)}};
            if (p > 2 && *n_opt >= 2) {
                require(kind == "lucas" || kind == "general", "--kind must be lucas or general");
                const MarginKind mk = kind == "lucas" ? MarginKind::LucasTerm : MarginKind::GeneralTerm;
                row["margin"] = to_json(ordp_bound_margin(mk, spec, *n_opt, p, g.precision));
            }
            rows.push_back(row);
            emit(rows, g);
        } else if (c_phi->parsed()) {
            if (x_opt || y_opt) {
                require(x_opt && y_opt, "--x and --y go together");
                const Integer v = phi_eval<Integer>(*n_opt, parse_integer(*x_opt), parse_integer(*y_opt));
                rows.push_back(Json{{"n", *n_opt}, {"x", *x_opt}, {"y", *y_opt}, {"value", v.get_str()}});
            } else {
                const PhiPrimeReport r = phi_prime_structure(g.recurrence(), *n_opt, g.factor_options(), report_only);
                rows.push_back(to_json(r));
                if (!r.exhaustive()) {
                    emit(rows, g);
                    std::cerr << "resource: factorization budget exhausted; report is partial\n";
                    return kExitResource;
                }
            }
            emit(rows, g);
        } else if (c_phi_ie->parsed()) {
            const CycloInt x = CycloInt::parse(*x_opt, e), y = CycloInt::parse(*y_opt, e);
            const CycloInt phi = phi_ie_eval(*n_opt, e, i_class, x, y);
            const CycloInt psi = psi_ie_eval(*n_opt, e, i_class, x, y);
            rows.push_back(Json{{"n", *n_opt},
                                {"e", e},
                                {"i", i_class},
                                {"degree", partial_cyclotomic_degree(*n_opt, e)},
                                {"phi", phi.to_string()},
                                {"psi", psi.to_string()},
                                {"norm", phi.norm().get_str()}});
            emit(rows, g);
        } else if (c_muldep->parsed()) {
            const RecurrenceSpec spec = g.recurrence();
            const ClosedForm cf = closed_form(spec);
            const auto w = find_dependence(cf, g.dependence_bound);
            Json row{{"spec", to_json(spec)}, {"dependent", w.has_value()}};
            if (w) {
                const ThetaData th = build_theta(*w, cf);
                row["witness"] = to_json(*w);
                row["theta"] = to_json(th);
                if (th.conjugate_branch) row["mahler_lambda"] = mahler_lambda(th).get_str();
            } else {
                row["note"] = "no dependence within the search bound; inconclusive";
            }
            rows.push_back(row);
            emit(rows, g);
        } else if (c_theta->parsed()) {
            const RecurrenceSpec spec = g.recurrence();
            const ClosedForm cf = closed_form(spec);
            const auto w = find_dependence(cf, g.dependence_bound);
            require(w.has_value(), "no multiplicative dependence within the search bound (inconclusive)");
            check_identity(witness_invariants_hold(*w, cf), "witness invariants");
            const ThetaData th = build_theta(*w, cf);
            for (std::uint64_t n = 0; n <= g.limit_or(100); ++n) {
                check_identity(verify_theta_identity(th, *w, cf, spec, n), "theta identity at n=" + std::to_string(n));
                Json row{{"n", n}, {"identity", true}};
                const long M = w->kase == DependenceCase::LZero ? static_cast<long>(n)
                                                                 : w->k1 * static_cast<long>(n) + w->l1;
                row["divisibility"] = n >= 1 && M >= 1 ? to_json(divisibility_consequence(th, *w, cf, spec, n)) : Json(nullptr);
                rows.push_back(row);
            }
            emit(rows, g);
        } else if (c_prim->parsed()) {
            const ThetaData th = theta_opt ? theta_from_text(*theta_opt) : theta_from_spec(g.recurrence(), g.dependence_bound);
            const FactorOptions fo = g.factor_options();
            if (m_opt) {
                rows.push_back(to_json(primitive_prime_search(th, e, i_class, *m_opt, fo, g.precision)));
            } else {
                require(g.limit.has_value(), "--m or --limit is required");
                for (std::uint64_t m = m_min.value_or(3); m <= *g.limit; ++m)
                    rows.push_back(to_json(primitive_prime_search(th, e, i_class, m, fo, g.precision)));
            }
            emit(rows, g);
        } else if (c_split->parsed()) {
            rows.push_back(to_json(split_even_odd(g.recurrence())));
            emit(rows, g);
        }
        return 0;
    } catch (const PreconditionError& ex) {
        std::cerr << "precondition: " << ex.what() << '\n';
        return kExitPrecondition;
    } catch (const ResourceError& ex) {
        std::cerr << "resource: " << ex.what() << '\n';
        return kExitResource;
    } catch (const IdentityError& ex) {
        std::cerr << "identity failure: " << ex.what() << '\n';
        return kExitIdentity;
    }
}
